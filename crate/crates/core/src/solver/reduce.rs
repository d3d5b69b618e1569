//! Forward pass: strip edges around pivots until the graph is subcubic,
//! then strip the remaining edges largest first. The replay undoes these
//! reductions in reverse order.

use std::collections::BTreeSet;

use crate::graph::{EdgeId, Graph, Vertex, LOW_DEGREE};

/// One removal, with the support pairs it dropped and added.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Reduction {
    Subcubic {
        edge: EdgeId,
        dropped: Vec<(Vertex, Vertex)>,
    },
    SmallPivot {
        u: Vertex,
        v: Vertex,
        dropped: Vec<(Vertex, Vertex)>,
    },
    PairPivot {
        u: Vertex,
        v1: Vertex,
        v2: Vertex,
        dropped: Vec<(Vertex, Vertex)>,
        added: Option<(Vertex, Vertex)>,
    },
}

/// Dynamic graph with an index of high-degree vertices keyed by their number
/// of high neighbours.
pub(crate) struct Peeler<'g> {
    g: &'g Graph,
    adj: Vec<BTreeSet<Vertex>>,
    deg: Vec<usize>,
    high_count: Vec<usize>,
    // (|N>3(u)|, u) for every u with degree > 3.
    pivots: BTreeSet<(usize, Vertex)>,
    pub partner: Vec<Option<Vertex>>,
}

impl<'g> Peeler<'g> {
    pub fn new(g: &'g Graph, partner: Vec<Option<Vertex>>) -> Self {
        let adj: Vec<BTreeSet<Vertex>> = g.vertices().map(|u| g.neighbors(u).collect()).collect();
        let deg: Vec<usize> = g.vertices().map(|u| g.degree(u)).collect();
        let high_count: Vec<usize> = g
            .vertices()
            .map(|u| g.neighbors(u).filter(|&w| deg[w] > LOW_DEGREE).count())
            .collect();
        let pivots = g
            .vertices()
            .filter(|&u| deg[u] > LOW_DEGREE)
            .map(|u| (high_count[u], u))
            .collect();
        Peeler {
            g,
            adj,
            deg,
            high_count,
            pivots,
            partner,
        }
    }

    fn is_high(&self, u: Vertex) -> bool {
        self.deg[u] > LOW_DEGREE
    }

    fn bump_high_count(&mut self, u: Vertex) {
        if self.is_high(u) {
            self.pivots.remove(&(self.high_count[u], u));
            self.high_count[u] -= 1;
            self.pivots.insert((self.high_count[u], u));
        } else {
            self.high_count[u] -= 1;
        }
    }

    fn remove_edge(&mut self, a: Vertex, b: Vertex) {
        self.adj[a].remove(&b);
        self.adj[b].remove(&a);
        if self.is_high(b) {
            self.bump_high_count(a);
        }
        if self.is_high(a) {
            self.bump_high_count(b);
        }
        for w in [a, b] {
            let was_high = self.is_high(w);
            if was_high {
                self.pivots.remove(&(self.high_count[w], w));
            }
            self.deg[w] -= 1;
            if was_high && !self.is_high(w) {
                let nbrs: Vec<Vertex> = self.adj[w].iter().copied().collect();
                for x in nbrs {
                    self.bump_high_count(x);
                }
            } else if was_high {
                self.pivots.insert((self.high_count[w], w));
            }
        }
    }

    fn drop_pairs(&mut self, touched: &[Vertex]) -> Vec<(Vertex, Vertex)> {
        let mut dropped = Vec::new();
        for &v in touched {
            if let Some(w) = self.partner[v].take() {
                self.partner[w] = None;
                dropped.push((v.min(w), v.max(w)));
            }
        }
        dropped
    }

    /// `Ok(None)` once the graph is subcubic; `Err(u)` when the best
    /// candidate `u` has more than 3 high neighbours.
    fn pivot(&self) -> Result<Option<Vertex>, Vertex> {
        match self.pivots.first() {
            None => Ok(None),
            Some(&(count, u)) if count <= LOW_DEGREE => Ok(Some(u)),
            Some(&(_, u)) => Err(u),
        }
    }

    /// Runs the whole forward pass, in removal order.
    pub fn reduce(mut self) -> Result<Vec<Reduction>, Vertex> {
        let mut out = Vec::new();
        while let Some(u) = self.pivot()? {
            let low: Vec<Vertex> = self.adj[u]
                .iter()
                .copied()
                .filter(|&w| !self.is_high(w))
                .take(2)
                .collect();
            if low.len() == 1 {
                let v = low[0];
                let dropped = self.drop_pairs(&[v]);
                self.remove_edge(u, v);
                out.push(Reduction::SmallPivot { u, v, dropped });
                continue;
            }
            let (v1, v2) = (low[0], low[1]);
            let primed = |v: Vertex| match self.partner[v] {
                Some(w) if self.deg[v] == 2 => w,
                _ => v,
            };
            let (p1, p2) = (primed(v1), primed(v2));
            let dropped = self.drop_pairs(&[v1, v2]);
            self.remove_edge(u, v1);
            self.remove_edge(u, v2);
            let added = (self.deg[p1] == 2 && self.deg[p2] == 2 && !self.adj[p1].contains(&p2))
                .then_some((p1.min(p2), p1.max(p2)));
            if let Some((a, b)) = added {
                self.partner[a] = Some(b);
                self.partner[b] = Some(a);
            }
            out.push(Reduction::PairPivot {
                u,
                v1,
                v2,
                dropped,
                added,
            });
        }
        let mut edges: Vec<EdgeId> = (0..self.g.m())
            .filter(|&e| {
                let (a, b) = self.g.endpoints(e);
                self.adj[a].contains(&b)
            })
            .collect();
        edges.reverse();
        for edge in edges {
            let (a, b) = self.g.endpoints(edge);
            let dropped = self.drop_pairs(&[a, b]);
            self.remove_edge(a, b);
            out.push(Reduction::Subcubic { edge, dropped });
        }
        Ok(out)
    }
}
