//! Simple undirected graphs with dense vertex ids, degeneracy ordering and
//! pivot discovery.

use std::collections::BTreeSet;

use thiserror::Error;

/// Vertex id, dense in `0..n`.
pub type Vertex = usize;
/// Index into [`Graph::edges`].
pub type EdgeId = usize;

/// Degree threshold separating "low" from "high" vertices throughout the
/// crate.
pub const LOW_DEGREE: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PivotError {
    #[error("no vertex of degree greater than 3 exists (max degree {0})")]
    MaxDegreeTooSmall(usize),
    #[error("graph is not 3-degenerate: every high vertex has more than 3 high neighbours")]
    NotThreeDegenerate,
}

/// An immutable simple undirected graph.
///
/// Edges are stored canonically as `(u, v)` with `u < v`, sorted
/// lexicographically; an edge's id is its position in that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    // Per vertex: (neighbour, edge id), sorted by neighbour.
    adjacency: Vec<Vec<(Vertex, EdgeId)>>,
    max_degree: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge list.
    ///
    /// Pairs may be given in either orientation; `(u, v)` and `(v, u)` in the
    /// same list count as a duplicate.
    pub fn new(n: usize, edge_list: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(u, v) in edge_list {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_canonical(n, edges))
    }

    /// `edges` must already be canonical, sorted and duplicate free.
    pub(crate) fn from_canonical(n: usize, edges: Vec<(Vertex, Vertex)>) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            adjacency[u].push((v, id));
            adjacency[v].push((u, id));
        }
        // Edges are sorted by (min, max), so each list is already sorted for
        // the larger endpoint; the smaller-endpoint entries need a sort.
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let max_degree = adjacency.iter().map(Vec::len).max().unwrap_or(0);
        Graph {
            n,
            edges,
            adjacency,
            max_degree,
        }
    }

    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Self::from_canonical(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n
    }

    /// Canonical edge list; `edges()[id]` is edge `id`.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e]
    }

    pub fn degree(&self, u: Vertex) -> usize {
        self.adjacency[u].len()
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn neighbors(&self, u: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adjacency[u].iter().map(|&(v, _)| v)
    }

    /// `(neighbour, edge id)` pairs for the edges at `u`, by neighbour id.
    pub fn incident(&self, u: Vertex) -> &[(Vertex, EdgeId)] {
        &self.adjacency[u]
    }

    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        let list = self.adjacency.get(u)?;
        list.binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| list[i].1)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_id(u, v).is_some()
    }

    /// `u` is in `V≤3(G)`.
    pub fn is_low(&self, u: Vertex) -> bool {
        self.degree(u) <= LOW_DEGREE
    }

    /// The subgraph on the same vertex set with only the edges for which
    /// `keep` returns true.
    pub fn edge_subgraph(&self, mut keep: impl FnMut(EdgeId) -> bool) -> Graph {
        let edges = (0..self.m())
            .filter(|&e| keep(e))
            .map(|e| self.edges[e])
            .collect();
        Self::from_canonical(self.n, edges)
    }
}

/// Split of the vertex set into `V≤3(G)` and `V>3(G)`, with per-vertex
/// neighbour counts on each side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreePartition {
    pub low: Vec<Vertex>,
    pub high: Vec<Vertex>,
    /// `|N>3(u)|` for every vertex.
    pub high_neighbors: Vec<usize>,
    /// `|N≤3(u)|` for every vertex.
    pub low_neighbors: Vec<usize>,
}

impl DegreePartition {
    pub fn new(g: &Graph) -> Self {
        let (low, high): (Vec<_>, Vec<_>) = g.vertices().partition(|&u| g.is_low(u));
        let mut high_neighbors = vec![0; g.n()];
        let mut low_neighbors = vec![0; g.n()];
        for u in g.vertices() {
            for w in g.neighbors(u) {
                if g.is_low(w) {
                    low_neighbors[u] += 1;
                } else {
                    high_neighbors[u] += 1;
                }
            }
        }
        DegreePartition {
            low,
            high,
            high_neighbors,
            low_neighbors,
        }
    }
}

/// Result of minimum-degree peeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Degeneracy {
    /// Largest residual degree seen at removal time.
    pub degeneracy: usize,
    /// Removal order witnessing `degeneracy`.
    pub order: Vec<Vertex>,
}

/// Repeatedly removes a vertex of minimum residual degree (smallest id on
/// ties).
pub fn degeneracy(g: &Graph) -> Degeneracy {
    let mut residual: Vec<usize> = g.vertices().map(|u| g.degree(u)).collect();
    let mut queue: BTreeSet<(usize, Vertex)> = g.vertices().map(|u| (residual[u], u)).collect();
    let mut removed = vec![false; g.n()];
    let mut order = Vec::with_capacity(g.n());
    let mut d = 0;
    while let Some((deg, u)) = queue.pop_first() {
        d = d.max(deg);
        removed[u] = true;
        order.push(u);
        for w in g.neighbors(u) {
            if !removed[w] {
                queue.remove(&(residual[w], w));
                residual[w] -= 1;
                queue.insert((residual[w], w));
            }
        }
    }
    Degeneracy {
        degeneracy: d,
        order,
    }
}

/// Finds a vertex of degree at least 4 with at most 3 neighbours of degree
/// greater than 3.
///
/// Candidates are the minimum-degree vertices of `G - V≤3(G)`; the smallest
/// id among them is returned.
pub fn find_pivot(g: &Graph) -> Result<Vertex, PivotError> {
    if g.max_degree() <= LOW_DEGREE {
        return Err(PivotError::MaxDegreeTooSmall(g.max_degree()));
    }
    let part = DegreePartition::new(g);
    let (count, u) = part
        .high
        .iter()
        .map(|&u| (part.high_neighbors[u], u))
        .min()
        .expect("a vertex of degree > 3 exists");
    if count > LOW_DEGREE {
        return Err(PivotError::NotThreeDegenerate);
    }
    Ok(u)
}
