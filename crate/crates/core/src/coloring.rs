//! Partial total colorings and the validity predicates used throughout the
//! crate.
//!
//! A vertex's *palette* is the set made of its own color (when it has one)
//! and the colors of its incident edges. Palettes are compared as sets.

use thiserror::Error;

use crate::colorset::{Color, ColorSet};
use crate::graph::{EdgeId, Graph, Vertex};
use crate::support::Support;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("edge {edge} at vertex {vertex} is uncolored")]
    UncoloredEdge { vertex: Vertex, edge: EdgeId },
}

/// An assignment of optional colors from `1..=universe` to the vertices and
/// edges of a fixed graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialColoring {
    universe: u32,
    vertex: Vec<Option<Color>>,
    edge: Vec<Option<Color>>,
}

impl PartialColoring {
    /// Everything uncolored.
    pub fn new(g: &Graph, universe: u32) -> Self {
        Self::with_sizes(g.n(), g.m(), universe)
    }

    pub fn with_sizes(n: usize, m: usize, universe: u32) -> Self {
        PartialColoring {
            universe,
            vertex: vec![None; n],
            edge: vec![None; m],
        }
    }

    /// `|C|`.
    pub fn universe(&self) -> u32 {
        self.universe
    }

    pub fn vertex(&self, u: Vertex) -> Option<Color> {
        self.vertex[u]
    }

    pub fn edge(&self, e: EdgeId) -> Option<Color> {
        self.edge[e]
    }

    pub fn set_vertex(&mut self, u: Vertex, c: Option<Color>) {
        self.vertex[u] = c;
    }

    pub fn set_edge(&mut self, e: EdgeId, c: Option<Color>) {
        self.edge[e] = c;
    }

    pub fn vertex_colors(&self) -> &[Option<Color>] {
        &self.vertex
    }

    pub fn edge_colors(&self) -> &[Option<Color>] {
        &self.edge
    }

    pub fn colored_vertex_count(&self) -> usize {
        self.vertex.iter().flatten().count()
    }

    /// Largest color used anywhere, 0 when nothing is colored.
    pub fn max_color(&self) -> Color {
        self.vertex
            .iter()
            .chain(&self.edge)
            .flatten()
            .copied()
            .max()
            .unwrap_or(0)
    }

    /// Same colors over a different universe size.
    pub fn with_universe(mut self, universe: u32) -> Self {
        self.universe = universe;
        self
    }

    /// Colors of the colored incident edges of `u`, plus `u`'s color when
    /// `with_vertex` is set. Uncolored edges are skipped.
    pub(crate) fn colors_around(&self, g: &Graph, u: Vertex, with_vertex: bool) -> ColorSet {
        let mut s: ColorSet = g.incident(u).iter().filter_map(|&(_, e)| self.edge[e]).collect();
        if with_vertex {
            s.extend(self.vertex[u]);
        }
        s
    }

    fn first_uncolored_edge(&self, g: &Graph, u: Vertex) -> Option<EdgeId> {
        g.incident(u)
            .iter()
            .map(|&(_, e)| e)
            .find(|&e| self.edge[e].is_none())
    }
}

/// What is wrong with a coloring, with the witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Violation {
    ColorOutOfRange { color: Color },
    UncoloredEdge { edge: EdgeId },
    UncoloredVertex { vertex: Vertex },
    UncoloredHighVertex { vertex: Vertex },
    /// Adjacent colored vertices share a color.
    VertexProperness { u: Vertex, v: Vertex },
    /// Two edges at `vertex` share a color.
    EdgeProperness { vertex: Vertex, e1: EdgeId, e2: EdgeId },
    /// A colored vertex has the color of one of its edges.
    VertexEdgeClash { vertex: Vertex, edge: EdgeId },
    /// Adjacent vertices with equal palettes.
    PaletteClash { u: Vertex, v: Vertex },
    /// A supported pair with equal incident-edge color sets.
    SupportClash { u: Vertex, v: Vertex },
}

/// `φ(∂*(u))`. Requires every edge at `u`; the vertex term is omitted when
/// `u` is uncolored.
pub fn palette_of(g: &Graph, col: &PartialColoring, u: Vertex) -> Result<ColorSet, ModelError> {
    if let Some(edge) = col.first_uncolored_edge(g, u) {
        return Err(ModelError::UncoloredEdge { vertex: u, edge });
    }
    Ok(col.colors_around(g, u, true))
}

/// `C \ φ(∂*(u))`.
pub fn copalette_of(g: &Graph, col: &PartialColoring, u: Vertex) -> Result<ColorSet, ModelError> {
    palette_of(g, col, u).map(|p| p.complement(col.universe()))
}

// Range, edge completeness and the three properness conditions. Vertex
// conditions only apply to colored vertices.
fn properness_violations(g: &Graph, col: &PartialColoring, out: &mut Vec<Violation>) {
    let universe = col.universe();
    for c in col.vertex.iter().chain(&col.edge).flatten() {
        if *c == 0 || *c > universe {
            out.push(Violation::ColorOutOfRange { color: *c });
        }
    }
    for (e, c) in col.edge.iter().enumerate() {
        if c.is_none() {
            out.push(Violation::UncoloredEdge { edge: e });
        }
    }
    for &(u, v) in g.edges() {
        if let (Some(a), Some(b)) = (col.vertex[u], col.vertex[v]) {
            if a == b {
                out.push(Violation::VertexProperness { u, v });
            }
        }
    }
    for u in g.vertices() {
        let inc = g.incident(u);
        for (i, &(_, e1)) in inc.iter().enumerate() {
            let Some(c1) = col.edge[e1] else { continue };
            if col.vertex[u] == Some(c1) {
                out.push(Violation::VertexEdgeClash { vertex: u, edge: e1 });
            }
            for &(_, e2) in &inc[i + 1..] {
                if col.edge[e2] == Some(c1) {
                    out.push(Violation::EdgeProperness { vertex: u, e1, e2 });
                }
            }
        }
    }
}

fn palette_clashes(
    g: &Graph,
    col: &PartialColoring,
    only_high: bool,
    out: &mut Vec<Violation>,
) {
    // Only meaningful once edges are complete; callers check that first.
    let palettes: Vec<ColorSet> = g.vertices().map(|u| col.colors_around(g, u, true)).collect();
    for &(u, v) in g.edges() {
        if only_high && (g.is_low(u) || g.is_low(v)) {
            continue;
        }
        if palettes[u] == palettes[v] {
            out.push(Violation::PaletteClash { u, v });
        }
    }
}

/// Every reason `col` fails to be a partial AVD total coloring of `g`: all
/// edges and all vertices of degree > 3 colored, proper wherever colors are
/// present, and distinct palettes across edges joining two vertices of
/// degree > 3.
pub fn partial_avd_violations(g: &Graph, col: &PartialColoring) -> Vec<Violation> {
    let mut out = Vec::new();
    for u in g.vertices() {
        if !g.is_low(u) && col.vertex[u].is_none() {
            out.push(Violation::UncoloredHighVertex { vertex: u });
        }
    }
    properness_violations(g, col, &mut out);
    if col.edge.iter().all(Option::is_some) {
        palette_clashes(g, col, true, &mut out);
    }
    out
}

pub fn is_partial_avd(g: &Graph, col: &PartialColoring) -> bool {
    partial_avd_violations(g, col).is_empty()
}

/// Every reason `col` fails to be an AVD total coloring of `g`.
pub fn avd_total_violations(g: &Graph, col: &PartialColoring) -> Vec<Violation> {
    let mut out = Vec::new();
    for u in g.vertices() {
        if col.vertex[u].is_none() {
            out.push(Violation::UncoloredVertex { vertex: u });
        }
    }
    properness_violations(g, col, &mut out);
    if out.is_empty() {
        palette_clashes(g, col, false, &mut out);
    }
    out
}

pub fn is_avd_total(g: &Graph, col: &PartialColoring) -> bool {
    avd_total_violations(g, col).is_empty()
}

/// Pairs of `sup` whose incident-edge color sets coincide. Vertex colors
/// play no part.
pub fn support_violations(
    g: &Graph,
    sup: &Support,
    col: &PartialColoring,
) -> Result<Vec<Violation>, ModelError> {
    let mut out = Vec::new();
    for &(u, v) in sup.pairs() {
        for w in [u, v] {
            if let Some(edge) = col.first_uncolored_edge(g, w) {
                return Err(ModelError::UncoloredEdge { vertex: w, edge });
            }
        }
        if col.colors_around(g, u, false) == col.colors_around(g, v, false) {
            out.push(Violation::SupportClash { u, v });
        }
    }
    Ok(out)
}

pub fn satisfies_support(
    g: &Graph,
    sup: &Support,
    col: &PartialColoring,
) -> Result<bool, ModelError> {
    support_violations(g, sup, col).map(|v| v.is_empty())
}

/// Edges whose endpoints have equal palettes. Assumes all edges are colored.
pub fn violating_edges(g: &Graph, col: &PartialColoring) -> Vec<EdgeId> {
    let mut out = Vec::new();
    palette_clashes(g, col, false, &mut out);
    out.into_iter()
        .map(|v| match v {
            Violation::PaletteClash { u, v } => g.edge_id(u, v).expect("clash is on an edge"),
            _ => unreachable!(),
        })
        .collect()
}
