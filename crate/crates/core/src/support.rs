//! Supports: disjoint pairs of nonadjacent degree-2 vertices whose
//! incident-edge color sets must differ.

use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SupportError {
    #[error("vertex {vertex} has degree {degree}, expected 2")]
    DegreeNotTwo { vertex: Vertex, degree: usize },
    #[error("pair {{{0}, {1}}} is adjacent")]
    PairAdjacent(Vertex, Vertex),
    #[error("vertex {0} appears in more than one pair")]
    PairsOverlap(Vertex),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
}

/// A list of unordered vertex pairs, each stored as `(min, max)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Support {
    pairs: Vec<(Vertex, Vertex)>,
}

impl Support {
    pub fn new(pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        Support {
            pairs: pairs.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect(),
        }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn pairs(&self) -> &[(Vertex, Vertex)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Accepts iff every pair consists of nonadjacent degree-2 vertices and
    /// no vertex is in two pairs. A pair `{u, u}` reports `PairsOverlap`.
    pub fn validate(&self, g: &Graph) -> Result<(), SupportError> {
        let mut seen = vec![false; g.n()];
        for &(u, v) in &self.pairs {
            for w in [u, v] {
                if w >= g.n() {
                    return Err(SupportError::VertexOutOfRange { vertex: w, n: g.n() });
                }
                if g.degree(w) != 2 {
                    return Err(SupportError::DegreeNotTwo {
                        vertex: w,
                        degree: g.degree(w),
                    });
                }
            }
            if g.has_edge(u, v) {
                return Err(SupportError::PairAdjacent(u, v));
            }
            for w in [u, v] {
                if std::mem::replace(&mut seen[w], true) {
                    return Err(SupportError::PairsOverlap(w));
                }
            }
        }
        Ok(())
    }

    /// Partner lookup table, `partners()[u] == Some(v)` iff `{u, v}` is a
    /// pair. Assumes the pairs are disjoint.
    pub fn partners(&self, n: usize) -> Vec<Option<Vertex>> {
        let mut partner = vec![None; n];
        for &(u, v) in &self.pairs {
            partner[u] = Some(v);
            partner[v] = Some(u);
        }
        partner
    }
}

/// Free-function form of [`Support::validate`].
pub fn validate_support(g: &Graph, s: &Support) -> Result<(), SupportError> {
    s.validate(g)
}
