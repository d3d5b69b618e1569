//! Colorings of the two removed pivot edges and the two ways of picking one
//! that distinguishes the pivot from its high-degree neighbours.

use std::collections::BTreeSet;

use crate::coloring::PartialColoring;
use crate::colorset::{Color, ColorSet};
use crate::graph::{EdgeId, Graph, Vertex};

use super::SolveError;

/// All two-element sets `{a, b}` with `a ∈ a_set`, `b ∈ b_set`, `a ≠ b`, as
/// `(min, max)` in ascending order.
pub fn zeta(a_set: &ColorSet, b_set: &ColorSet) -> Vec<(Color, Color)> {
    let mut out = BTreeSet::new();
    for a in a_set {
        for b in b_set {
            if a != b {
                out.insert((a.min(b), a.max(b)));
            }
        }
    }
    out.into_iter().collect()
}

/// A coloring of the two removed pivot edges.
///
/// Two candidates are equivalent when they put the same set of colors on
/// the edges, i.e. when their `eq_class` agrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionCandidate {
    pub assignment: [(EdgeId, Color); 2],
    pub eq_class: ColorSet,
    /// `X` minus `eq_class`: what the pivot's co-palette becomes.
    pub y_class: ColorSet,
}

impl ExtensionCandidate {
    pub fn new(assignment: [(EdgeId, Color); 2], x: &ColorSet) -> Self {
        let eq_class: ColorSet = assignment.iter().map(|&(_, c)| c).collect();
        let y_class = x.difference(&eq_class);
        ExtensionCandidate {
            assignment,
            eq_class,
            y_class,
        }
    }

    pub(crate) fn apply(&self, col: &mut PartialColoring) {
        for &(e, c) in &self.assignment {
            col.set_edge(e, Some(c));
        }
    }

    /// Does this candidate separate the pivot from every listed neighbour?
    pub(crate) fn distinguishes(&self, neighbor_copalettes: &[ColorSet]) -> bool {
        neighbor_copalettes.iter().all(|co| *co != self.y_class)
    }
}

/// Index of the first candidate whose `y_class` differs from every listed
/// co-palette; `None` with fewer than four candidates.
pub(crate) fn pick_claim1(
    candidates: &[ExtensionCandidate],
    neighbor_copalettes: &[ColorSet],
) -> Option<usize> {
    if candidates.len() < 4 {
        return None;
    }
    candidates
        .iter()
        .position(|c| c.distinguishes(neighbor_copalettes))
}

fn pairwise_non_equivalent(candidates: &[ExtensionCandidate]) -> bool {
    candidates
        .iter()
        .enumerate()
        .all(|(i, a)| candidates[i + 1..].iter().all(|b| a.eq_class != b.eq_class))
}

/// The leftover color the pivot is recolored to when three non-equivalent
/// extensions all fail.
pub(crate) fn claim2_color(
    failing: &[ExtensionCandidate],
    x: &ColorSet,
    neighbor_copalettes: &[ColorSet],
) -> Result<Color, SolveError> {
    let pre = |msg: &str| Err(SolveError::PreconditionViolated(msg.to_string()));
    if failing.len() != 3 {
        return pre("exactly three extensions are required");
    }
    if !pairwise_non_equivalent(failing) {
        return pre("extensions are not pairwise non-equivalent");
    }
    if failing.iter().any(|c| c.distinguishes(neighbor_copalettes)) {
        return pre("one of the extensions already distinguishes the pivot");
    }
    let used = failing
        .iter()
        .fold(ColorSet::new(), |acc, c| acc.union(&c.eq_class));
    if used.len() >= x.len() {
        return pre("the extensions use every color of X");
    }
    Ok(x.difference(&used).min().expect("X has a color the extensions miss"))
}

fn high_neighbor_copalettes(g: &Graph, u: Vertex, inner: &PartialColoring) -> Vec<ColorSet> {
    g.neighbors(u)
        .filter(|&x| !g.is_low(x))
        .map(|x| inner.colors_around(g, x, true).complement(inner.universe()))
        .collect()
}

/// Picks an extension that distinguishes `u` from all of its neighbours of
/// degree > 3 in `g`, given `inner`, a coloring of `g` minus the removed
/// pivot edges.
///
/// Only fires with at least four candidates, where one always exists since
/// a pivot has at most three high neighbours. Returns the first in order.
pub fn select_claim1<'a>(
    g: &Graph,
    u: Vertex,
    candidates: &'a [ExtensionCandidate],
    inner: &PartialColoring,
) -> Option<&'a ExtensionCandidate> {
    let copalettes = high_neighbor_copalettes(g, u, inner);
    pick_claim1(candidates, &copalettes).map(|i| &candidates[i])
}

/// Three pairwise non-equivalent extensions, none distinguishing `u`, that
/// together leave a color of `x` unused: take the first one and recolor `u`
/// with the smallest unused color of `x`.
pub fn claim2_repair(
    g: &Graph,
    u: Vertex,
    failing: &[ExtensionCandidate],
    x: &ColorSet,
    inner: &PartialColoring,
) -> Result<PartialColoring, SolveError> {
    let copalettes = high_neighbor_copalettes(g, u, inner);
    let c = claim2_color(failing, x, &copalettes)?;
    let mut out = inner.clone();
    failing[0].apply(&mut out);
    out.set_vertex(u, Some(c));
    Ok(out)
}
