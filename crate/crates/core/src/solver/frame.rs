//! Replay state: the current subgraph, its support and coloring, and the
//! extension steps that re-insert removed edges.
//!
//! The frame always refers to the full input graph; `present` selects the
//! edges of the current subgraph `G'`. A step sees `partner` already set to
//! the support of the graph obtained after re-inserting its edges.

use std::collections::BTreeSet;

use crate::coloring::PartialColoring;
use crate::colorset::{Color, ColorSet};
use crate::graph::{EdgeId, Graph, Vertex, LOW_DEGREE};
use crate::support::Support;

use super::extension::{claim2_color, pick_claim1, zeta, ExtensionCandidate};
use super::trace::{Branch, Resolution, StepRecord};

/// A step hit a branch the construction guarantees to be unreachable.
#[derive(Debug)]
pub(crate) struct Broken(pub String);

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(Broken(format!($($arg)+)));
        }
    };
}

pub(crate) struct Frame<'g> {
    pub g: &'g Graph,
    pub present: Vec<bool>,
    pub deg: Vec<usize>,
    pub partner: Vec<Option<Vertex>>,
    pub col: PartialColoring,
    // Colored vertices of degree <= 3 in the current subgraph.
    colored_low: BTreeSet<Vertex>,
}

impl<'g> Frame<'g> {
    pub fn new(
        g: &'g Graph,
        present: Vec<bool>,
        partner: Vec<Option<Vertex>>,
        col: PartialColoring,
    ) -> Self {
        let mut deg = vec![0; g.n()];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if present[e] {
                deg[u] += 1;
                deg[v] += 1;
            }
        }
        let colored_low = g
            .vertices()
            .filter(|&u| deg[u] <= LOW_DEGREE && col.vertex(u).is_some())
            .collect();
        Frame {
            g,
            present,
            deg,
            partner,
            col,
            colored_low,
        }
    }

    pub fn universe(&self) -> u32 {
        self.col.universe()
    }

    fn is_low(&self, u: Vertex) -> bool {
        self.deg[u] <= LOW_DEGREE
    }

    fn incident(&self, u: Vertex) -> impl Iterator<Item = (Vertex, EdgeId)> + '_ {
        self.g
            .incident(u)
            .iter()
            .copied()
            .filter(|&(_, e)| self.present[e])
    }

    /// `φ(∂(u))` in the current subgraph.
    fn edge_colors(&self, u: Vertex) -> ColorSet {
        self.incident(u).filter_map(|(_, e)| self.col.edge(e)).collect()
    }

    /// `φ(∂*(u))` in the current subgraph.
    fn palette(&self, u: Vertex) -> ColorSet {
        let mut p = self.edge_colors(u);
        p.extend(self.col.vertex(u));
        p
    }

    fn high_neighbors(&self, u: Vertex) -> Vec<Vertex> {
        self.incident(u)
            .map(|(w, _)| w)
            .filter(|&w| !self.is_low(w))
            .collect()
    }

    fn set_vertex(&mut self, u: Vertex, c: Option<Color>) {
        self.col.set_vertex(u, c);
        if c.is_some() && self.is_low(u) {
            self.colored_low.insert(u);
        } else {
            self.colored_low.remove(&u);
        }
    }

    /// Uncolors every vertex of degree at most 3.
    fn uncolor_low(&mut self) {
        for u in std::mem::take(&mut self.colored_low) {
            self.col.set_vertex(u, None);
        }
    }

    fn insert_edge(&mut self, e: EdgeId) {
        debug_assert!(!self.present[e]);
        self.present[e] = true;
        let (a, b) = self.g.endpoints(e);
        for w in [a, b] {
            self.deg[w] += 1;
            if self.deg[w] == LOW_DEGREE + 1 {
                self.colored_low.remove(&w);
            }
        }
    }

    /// Support partner of `v` when `v` has degree 2 once the step's edges
    /// are back (`deg_after`), else `v` itself.
    pub fn primed(&self, v: Vertex, deg_after: usize) -> Vertex {
        match self.partner[v] {
            Some(w) if deg_after == 2 => w,
            _ => v,
        }
    }

    /// Smallest color avoiding `u`'s edges and its high neighbours' colors.
    fn color_pivot(&mut self, u: Vertex) -> Result<(), Broken> {
        let mut forbidden = self.edge_colors(u);
        for x in self.high_neighbors(u) {
            forbidden.extend(self.col.vertex(x));
        }
        let c = forbidden.first_missing(self.universe());
        ensure!(c.is_some(), "no color left for pivot {u}");
        self.set_vertex(u, c);
        Ok(())
    }

    /// The current subgraph, the coloring re-indexed to it, and the current
    /// support.
    pub fn snapshot(&self) -> (Graph, PartialColoring, Support) {
        let sub = self.g.edge_subgraph(|e| self.present[e]);
        let mut col = PartialColoring::new(&sub, self.universe());
        for u in sub.vertices() {
            col.set_vertex(u, self.col.vertex(u));
        }
        for (e, &(u, v)) in sub.edges().iter().enumerate() {
            let orig = self.g.edge_id(u, v).expect("subgraph edge");
            col.set_edge(e, self.col.edge(orig));
        }
        let pairs = self
            .g
            .vertices()
            .filter_map(|u| self.partner[u].filter(|&w| u < w).map(|w| (u, w)));
        (sub, col, Support::new(pairs))
    }

    /// Re-inserts edge `e` into a graph of maximum degree at most 3.
    pub fn subcubic_step(&mut self, e: EdgeId) -> Result<StepRecord, Broken> {
        let (v1, v2) = self.g.endpoints(e);
        let mut rec = StepRecord::new(Branch::Subcubic, None, vec![(v1, v2)]);
        self.uncolor_low();
        let p1 = self.primed(v1, self.deg[v1] + 1);
        let p2 = self.primed(v2, self.deg[v2] + 1);
        rec.v_primed = vec![p1, p2];
        let mut forbidden = ColorSet::new();
        for w in [v1, v2, p1, p2] {
            forbidden = forbidden.union(&self.edge_colors(w));
        }
        let c = forbidden.first_missing(self.universe());
        ensure!(c.is_some(), "no free color for edge {{{v1}, {v2}}}");
        self.col.set_edge(e, c);
        self.insert_edge(e);
        Ok(rec)
    }

    /// Re-inserts the edge `uv` where `u` will have degree 4 and `v` is its
    /// only neighbour of degree at most 3.
    pub fn small_pivot_step(&mut self, u: Vertex, v: Vertex) -> Result<StepRecord, Broken> {
        let e = self.g.edge_id(u, v).expect("pivot edge exists");
        let universe = self.universe();
        let mut rec = StepRecord::new(Branch::SmallPivot, Some(u), vec![(u, v)]);

        self.uncolor_low();
        self.color_pivot(u)?;

        let vp = self.primed(v, self.deg[v] + 1);
        rec.v_primed = vec![vp];
        let ev = self.edge_colors(v);
        let y = if v == vp {
            ev.clone()
        } else {
            let evp = self.edge_colors(vp);
            if ev.is_subset(&evp) {
                evp
            } else {
                ev.clone()
            }
        };
        ensure!(y.len() <= 2 && ev.is_subset(&y), "Y = {y:?} breaks |Y| <= 2 or misses {ev:?}");

        let u_palette = self.palette(u);
        let x = u_palette.complement(universe);
        ensure!(x.len() >= 4, "|X| = {} < 4 at pivot {u}", x.len());
        let free: Vec<Color> = x.difference(&y).iter().take(2).collect();
        ensure!(free.len() == 2, "X \\ Y has fewer than two colors");
        let (c1, c2) = (free[0], free[1]);
        rec.x = Some(x.clone());
        rec.y = Some(y);

        let xs = self.high_neighbors(u);
        let x_palettes: Vec<ColorSet> = xs.iter().map(|&w| self.palette(w)).collect();
        let conflict = |c: Color| {
            let mut p = u_palette.clone();
            p.insert(c);
            x_palettes.iter().position(|q| *q == p)
        };

        let (k1, k2) = (conflict(c1), conflict(c2));
        let (edge_color, resolution) = match (k1, k2) {
            (None, _) => (c1, Resolution::FirstColor),
            (Some(_), None) => (c2, Resolution::SecondColor),
            (Some(i1), Some(i2)) => {
                ensure!(i1 != i2 && xs.len() == 3, "conflict witnesses {i1}, {i2} of {xs:?}");
                let co1 = x_palettes[i1].complement(universe);
                let co2 = x_palettes[i2].complement(universe);
                let common = co1.intersection(&co2);
                let expected = x.difference(&ColorSet::from([c1, c2]));
                ensure!(common == expected, "co-palette intersection {common:?} != {expected:?}");
                let spare: Vec<Color> = common.iter().take(2).collect();
                ensure!(spare.len() == 2, "fewer than two spare colors");
                let i3 = 3 - i1 - i2;
                let p3 = &x_palettes[i3];
                let recolor = if let Some(&c) = spare.iter().find(|&&c| !p3.contains(c)) {
                    (c, Resolution::RecolorUncovered)
                } else {
                    let x3_color = self.col.vertex(xs[i3]);
                    let c = spare.iter().copied().find(|&c| Some(c) != x3_color);
                    ensure!(c.is_some(), "both spare colors equal the color of {}", xs[i3]);
                    (c.unwrap(), Resolution::RecolorCovered)
                };
                self.set_vertex(u, Some(recolor.0));
                (c1, recolor.1)
            }
        };
        rec.resolution = resolution;
        self.col.set_edge(e, Some(edge_color));
        self.insert_edge(e);
        self.check_pivot(u)?;
        self.check_edges_at(v)?;
        Ok(rec)
    }

    /// Re-inserts the edges `uv1`, `uv2` where `v1`, `v2` have degree at most
    /// 3 and `u` has at most three neighbours of degree > 3.
    pub fn pair_pivot_step(&mut self, u: Vertex, v1: Vertex, v2: Vertex) -> Result<StepRecord, Broken> {
        let g = self.g;
        let e1 = g.edge_id(u, v1).expect("pivot edge exists");
        let e2 = g.edge_id(u, v2).expect("pivot edge exists");
        let universe = self.universe();
        let case_a = self.partner[v1] == Some(v2);
        let p1 = self.primed(v1, self.deg[v1] + 1);
        let p2 = self.primed(v2, self.deg[v2] + 1);
        let branch = if case_a { Branch::CaseAEq } else { Branch::CaseB };
        let mut rec = StepRecord::new(branch, Some(u), vec![(u, v1), (u, v2)]);
        rec.v_primed = vec![p1, p2];

        self.uncolor_low();
        if self.is_low(u) {
            self.color_pivot(u)?;
        }
        let x = self.palette(u).complement(universe);
        ensure!(x.len() >= 4, "|X| = {} < 4 at pivot {u}", x.len());
        rec.x = Some(x.clone());

        // Keep the edge between the primed vertices out of X when X is tight.
        if x.len() == 4 && self.deg[p1] == 2 && self.deg[p2] == 2 {
            if let Some(e) = g.edge_id(p1, p2).filter(|&e| self.present[e]) {
                if self.col.edge(e).is_some_and(|c| x.contains(c)) {
                    let forbidden = x.union(&self.edge_colors(p1)).union(&self.edge_colors(p2));
                    let c = forbidden.first_missing(universe);
                    ensure!(c.is_some(), "no color for edge {{{p1}, {p2}}} outside X");
                    self.col.set_edge(e, c);
                    rec.star_recolor = true;
                }
            }
        }

        let mut candidates = Vec::new();
        let three_classes;
        if case_a {
            ensure!(self.deg[v1] == 1 && self.deg[v2] == 1, "support pair {v1}, {v2} not pendant in G'");
            let c1 = self.edge_colors(v1).min().expect("one edge");
            let c2 = self.edge_colors(v2).min().expect("one edge");
            if c1 == c2 {
                let rest = x.difference(&ColorSet::from([c1]));
                for (a, b) in zeta(&rest, &rest) {
                    candidates.push(ExtensionCandidate::new([(e1, a), (e2, b)], &x));
                }
                three_classes = candidates.len() == 3;
            } else {
                rec.branch = Branch::CaseANeq;
                let a1 = x.difference(&ColorSet::from([c1]));
                let a2 = x.difference(&ColorSet::from([c2]));
                for (lo, hi) in zeta(&a1, &a2) {
                    let ok = |p: Color, q: Color| a1.contains(p) && a2.contains(q) && (p, q) != (c2, c1);
                    if ok(lo, hi) {
                        candidates.push(ExtensionCandidate::new([(e1, lo), (e2, hi)], &x));
                    } else if ok(hi, lo) {
                        candidates.push(ExtensionCandidate::new([(e1, hi), (e2, lo)], &x));
                    }
                }
                three_classes = false;
            }
        } else {
            let restrict = |v: Vertex, vp: Vertex| {
                let ev = self.edge_colors(v);
                if v != vp {
                    let evp = self.edge_colors(vp);
                    if ev.is_subset(&evp) {
                        return x.difference(&evp);
                    }
                }
                x.difference(&ev)
            };
            let x1 = restrict(v1, p1);
            let x2 = restrict(v2, p2);
            let union = x1.union(&x2);
            ensure!(
                x1.len() >= 2 && x2.len() >= 2 && union.len() >= 3,
                "X1 = {x1:?}, X2 = {x2:?} too small"
            );
            for (lo, hi) in zeta(&x1, &x2) {
                let assignment = if x1.contains(lo) && x2.contains(hi) {
                    [(e1, lo), (e2, hi)]
                } else {
                    [(e1, hi), (e2, lo)]
                };
                candidates.push(ExtensionCandidate::new(assignment, &x));
            }
            three_classes = union.len() == 3;
            rec.x1 = Some(x1);
            rec.x2 = Some(x2);
        }
        rec.classes = Some(candidates.len());

        let copalettes: Vec<ColorSet> = self
            .high_neighbors(u)
            .into_iter()
            .map(|w| self.palette(w).complement(universe))
            .collect();
        if three_classes {
            ensure!(candidates.len() == 3, "expected three classes, found {}", candidates.len());
            if let Some(c) = candidates.iter().find(|c| c.distinguishes(&copalettes)) {
                c.apply(&mut self.col);
                rec.resolution = Resolution::Claim2Direct;
            } else {
                let c = claim2_color(&candidates, &x, &copalettes).map_err(|e| Broken(e.to_string()))?;
                candidates[0].apply(&mut self.col);
                self.set_vertex(u, Some(c));
                rec.resolution = Resolution::Claim2Recolor;
            }
        } else {
            ensure!(candidates.len() >= 4, "only {} extensions available", candidates.len());
            let i = pick_claim1(&candidates, &copalettes);
            ensure!(i.is_some(), "no extension distinguishes pivot {u}");
            candidates[i.unwrap()].apply(&mut self.col);
            rec.resolution = Resolution::Claim1;
        }
        self.insert_edge(e1);
        self.insert_edge(e2);
        self.check_pivot(u)?;
        self.check_edges_at(v1)?;
        self.check_edges_at(v2)?;
        Ok(rec)
    }

    fn check_edges_at(&self, v: Vertex) -> Result<(), Broken> {
        let mut seen = ColorSet::new();
        for (_, e) in self.incident(v) {
            let c = self.col.edge(e);
            ensure!(c.is_some_and(|c| seen.insert(c)), "edges at {v} are not properly colored");
        }
        Ok(())
    }

    /// Local check after a pivot step: `u` is properly colored and its
    /// palette differs from each high neighbour's.
    fn check_pivot(&self, u: Vertex) -> Result<(), Broken> {
        let c = self.col.vertex(u);
        ensure!(c.is_some(), "pivot {u} left uncolored");
        let mut seen = ColorSet::new();
        for (w, e) in self.incident(u) {
            let ce = self.col.edge(e);
            ensure!(ce.is_some() && ce != c, "edge at pivot {u} clashes with its color");
            ensure!(seen.insert(ce.unwrap()), "two edges at pivot {u} share a color");
            ensure!(self.col.vertex(w) != c, "pivot {u} shares its color with {w}");
        }
        let p = self.palette(u);
        for x in self.high_neighbors(u) {
            ensure!(self.palette(x) != p, "pivot {u} and {x} have equal palettes");
        }
        Ok(())
    }
}
