//! Exhaustive ground truth for tiny graphs: the minimum number of colors of
//! an AVD total coloring, labeled graph enumeration, and a stand-alone
//! validity checker that shares no code with [`crate::coloring`].

use std::collections::BTreeSet;

use thiserror::Error;

use crate::coloring::PartialColoring;
use crate::graph::Graph;

/// Largest `|V| + |E|` the backtracking search accepts.
pub const MAX_ELEMENTS: usize = 40;
/// Largest color limit the backtracking search accepts.
pub const MAX_LIMIT: u32 = 12;
/// Largest vertex count for [`enumerate_small_graphs`].
pub const MAX_ENUM_VERTICES: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance too large for the exhaustive oracle: {0}")]
    TooLarge(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// `None` when no coloring with at most `limit` colors exists.
    pub min_colors: Option<u32>,
    pub witness: Option<PartialColoring>,
    /// Search nodes visited over all tried color counts.
    pub nodes_explored: u64,
}

/// Smallest `c <= limit` such that `g` has an AVD total coloring with colors
/// in `1..=c`.
///
/// Elements are assigned in a fixed order (vertices by id, then edges by
/// id). A new color may exceed the largest color used so far by at most one,
/// which removes color permutations from the search.
pub fn exact_min_avd(g: &Graph, limit: u32) -> Result<OracleResult, OracleError> {
    if g.n() + g.m() > MAX_ELEMENTS {
        return Err(OracleError::TooLarge(format!(
            "{} vertices and {} edges exceed {MAX_ELEMENTS} elements",
            g.n(),
            g.m()
        )));
    }
    if limit > MAX_LIMIT {
        return Err(OracleError::TooLarge(format!("limit {limit} exceeds {MAX_LIMIT}")));
    }
    if g.n() == 0 {
        return Ok(OracleResult {
            min_colors: Some(0),
            witness: Some(PartialColoring::new(g, 0)),
            nodes_explored: 0,
        });
    }
    let mut search = Search::new(g);
    for c in 1..=limit {
        search.colors = c;
        if search.descend(0, 0) {
            let mut w = PartialColoring::new(g, c);
            for u in g.vertices() {
                w.set_vertex(u, Some(search.value[u]));
            }
            for e in 0..g.m() {
                w.set_edge(e, Some(search.value[g.n() + e]));
            }
            return Ok(OracleResult {
                min_colors: Some(c),
                witness: Some(w),
                nodes_explored: search.nodes,
            });
        }
    }
    Ok(OracleResult {
        min_colors: None,
        witness: None,
        nodes_explored: search.nodes,
    })
}

struct Search<'g> {
    g: &'g Graph,
    colors: u32,
    /// Color of element `i`: vertex `i` for `i < n`, edge `i - n` otherwise.
    value: Vec<u32>,
    /// Vertices whose palette is complete once element `i` is assigned.
    completes: Vec<Vec<usize>>,
    /// Position at which each vertex's palette becomes complete.
    done_at: Vec<usize>,
    nodes: u64,
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph) -> Self {
        let n = g.n();
        let mut done_at: Vec<usize> = (0..n).collect();
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            done_at[a] = n + e;
            done_at[b] = n + e;
        }
        let mut completes = vec![Vec::new(); n + g.m()];
        for (u, &i) in done_at.iter().enumerate() {
            completes[i].push(u);
        }
        Search {
            g,
            colors: 0,
            value: vec![0; n + g.m()],
            completes,
            done_at,
            nodes: 0,
        }
    }

    fn palette_mask(&self, u: usize) -> u32 {
        let n = self.g.n();
        let mut mask = 1 << self.value[u];
        for &(_, e) in self.g.incident(u) {
            mask |= 1 << self.value[n + e];
        }
        mask
    }

    fn allowed(&self, i: usize, c: u32) -> bool {
        let n = self.g.n();
        if i < n {
            // Earlier vertices are exactly the smaller ids.
            return self.g.neighbors(i).all(|w| w >= i || self.value[w] != c);
        }
        let (a, b) = self.g.endpoints(i - n);
        if self.value[a] == c || self.value[b] == c {
            return false;
        }
        [a, b].iter().all(|&x| {
            self.g
                .incident(x)
                .iter()
                .all(|&(_, f)| n + f >= i || self.value[n + f] != c)
        })
    }

    fn palettes_ok(&self, i: usize) -> bool {
        self.completes[i].iter().all(|&u| {
            let pu = self.palette_mask(u);
            self.g
                .neighbors(u)
                .all(|w| self.done_at[w] > i || self.palette_mask(w) != pu)
        })
    }

    fn descend(&mut self, i: usize, max_used: u32) -> bool {
        self.nodes += 1;
        if i == self.value.len() {
            return true;
        }
        let top = (max_used + 1).min(self.colors);
        for c in 1..=top {
            if !self.allowed(i, c) {
                continue;
            }
            self.value[i] = c;
            if self.palettes_ok(i) && self.descend(i + 1, max_used.max(c)) {
                return true;
            }
        }
        self.value[i] = 0;
        false
    }
}

/// Every labeled graph on `n` vertices. Graph number `mask` contains the
/// `j`-th pair of `(0,1), (0,2), ..., (n-2,n-1)` when bit `j` of `mask` is set.
pub fn enumerate_small_graphs(n: usize) -> Result<impl Iterator<Item = Graph>, OracleError> {
    if n > MAX_ENUM_VERTICES {
        return Err(OracleError::TooLarge(format!("{n} vertices exceed {MAX_ENUM_VERTICES}")));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let total = 1u32 << pairs.len();
    Ok((0..total).map(move |mask| {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|&(j, _)| mask >> j & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        Graph::new(n, &edges).expect("pairs are distinct and in range")
    }))
}

/// Is `col` a complete AVD total coloring of `g` with colors in
/// `1..=col.universe()`?
pub fn check_coloring(g: &Graph, col: &PartialColoring) -> bool {
    let vc = col.vertex_colors();
    let ec = col.edge_colors();
    if vc.len() != g.n() || ec.len() != g.m() {
        return false;
    }
    let in_range = |c: &Option<u32>| matches!(c, Some(x) if *x >= 1 && *x <= col.universe());
    if !vc.iter().all(in_range) || !ec.iter().all(in_range) {
        return false;
    }
    let mut palettes: Vec<BTreeSet<u32>> = vc.iter().map(|c| BTreeSet::from([c.unwrap()])).collect();
    let mut count = vec![1usize; g.n()];
    for (&(a, b), c) in g.edges().iter().zip(ec) {
        let c = c.unwrap();
        if vc[a] == vc[b] || vc[a] == Some(c) || vc[b] == Some(c) {
            return false;
        }
        for x in [a, b] {
            palettes[x].insert(c);
            count[x] += 1;
        }
    }
    // A palette with fewer colors than elements means two edges at a vertex
    // share a color (vertex clashes were ruled out above).
    if (0..g.n()).any(|u| palettes[u].len() != count[u]) {
        return false;
    }
    g.edges().iter().all(|&(a, b)| palettes[a] != palettes[b])
}
