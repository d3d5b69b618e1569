//! Turning a partial AVD total coloring into a full one without touching
//! any edge color.

use std::collections::BTreeSet;

use crate::coloring::{is_partial_avd, satisfies_support, PartialColoring};
use crate::colorset::ColorSet;
use crate::graph::{Graph, Vertex};
use crate::support::Support;

use super::SolveError;

/// What the repair did.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RepairTrace {
    /// Vertices colored in the first phase, in order.
    pub colored: Vec<Vertex>,
    /// Number of violating edges before each recoloring, followed by the
    /// final count (always 0).
    pub violation_counts: Vec<usize>,
    /// Vertices recolored in the second phase, in order.
    pub recolored: Vec<Vertex>,
}

pub fn complete_and_repair(
    g: &Graph,
    sup: &Support,
    col: &PartialColoring,
) -> Result<PartialColoring, SolveError> {
    complete_and_repair_traced(g, sup, col).map(|(c, _)| c)
}

/// Colors every uncolored vertex, then removes violating edges one at a time
/// by recoloring a single endpoint.
pub fn complete_and_repair_traced(
    g: &Graph,
    sup: &Support,
    col: &PartialColoring,
) -> Result<(PartialColoring, RepairTrace), SolveError> {
    let universe = col.universe();
    let pre = |msg: String| Err(SolveError::PreconditionViolated(msg));
    if universe < 7 {
        return pre(format!("repair needs at least 7 colors, got {universe}"));
    }
    sup.validate(g)?;
    if !is_partial_avd(g, col) {
        return pre("input is not a partial AVD total coloring".into());
    }
    if !satisfies_support(g, sup, col).unwrap_or(false) {
        return pre("input does not satisfy the support".into());
    }

    let mut col = col.clone();
    let mut trace = RepairTrace::default();

    for u in g.vertices() {
        if col.vertex(u).is_some() {
            continue;
        }
        let mut seen = col.colors_around(g, u, false);
        seen.extend(g.neighbors(u).filter_map(|w| col.vertex(w)));
        let c = seen.first_missing(universe).ok_or_else(|| broken(format!("no color for {u}")))?;
        col.set_vertex(u, Some(c));
        trace.colored.push(u);
    }

    let mut palettes: Vec<ColorSet> = g.vertices().map(|u| col.colors_around(g, u, true)).collect();
    let mut violating: BTreeSet<(Vertex, Vertex)> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| palettes[u] == palettes[v])
        .collect();

    while let Some(&(u, _)) = violating.first() {
        trace.violation_counts.push(violating.len());
        let x = palettes[u].clone();
        let bad = |c| {
            g.neighbors(u).any(|w| {
                col.vertex(w) == Some(c) || palettes[w].difference(&x) == ColorSet::from([c])
            })
        };
        let c = x
            .complement(universe)
            .iter()
            .find(|&c| !bad(c))
            .ok_or_else(|| broken(format!("every color is bad for a neighbour of {u}")))?;
        let old = col.vertex(u).expect("phase one colored every vertex");
        col.set_vertex(u, Some(c));
        palettes[u].remove(old);
        palettes[u].insert(c);
        for w in g.neighbors(u) {
            let key = (u.min(w), u.max(w));
            if palettes[u] == palettes[w] {
                violating.insert(key);
            } else {
                violating.remove(&key);
            }
        }
        trace.recolored.push(u);
        if violating.len() >= *trace.violation_counts.last().unwrap() {
            return Err(broken(format!(
                "recoloring {u} did not reduce the violating edges ({} left)",
                violating.len()
            )));
        }
    }
    trace.violation_counts.push(0);
    Ok((col, trace))
}

fn broken(message: String) -> SolveError {
    SolveError::InternalInvariantBroken {
        step: None,
        message,
        trace: Vec::new(),
    }
}
