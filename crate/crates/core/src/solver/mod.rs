//! The constructive pipeline for AVD total colorings of 3-degenerate graphs.
//!
//! [`solve`] peels the graph down to nothing (see `reduce`), replays the
//! removals in reverse while extending a partial coloring (see `frame`),
//! and finally colors the remaining vertices with [`complete_and_repair`].
//!
//! Every choice the construction leaves open is resolved by taking the
//! smallest vertex id or the smallest color, so a given input always yields
//! the same coloring.

mod extension;
mod frame;
mod reduce;
mod repair;
mod trace;

pub use extension::{claim2_repair, select_claim1, zeta, ExtensionCandidate};
pub use repair::{complete_and_repair, complete_and_repair_traced, RepairTrace};
pub use trace::{Branch, BranchCounts, Resolution, StepRecord, TRACE_FORMAT_VERSION};

use thiserror::Error;

use crate::coloring::{is_partial_avd, satisfies_support, PartialColoring};
use crate::graph::{degeneracy, EdgeId, Graph, Vertex, LOW_DEGREE};
use crate::support::{Support, SupportError};

use frame::{Broken, Frame};
use reduce::{Peeler, Reduction};

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("graph is not 3-degenerate (degeneracy {0})")]
    NotThreeDegenerate(usize),
    #[error("maximum degree {delta} exceeds k = {k}")]
    DeltaExceedsK { delta: usize, k: usize },
    #[error("maximum degree {0} is below 5; pass the k = 5 fallback to color anyway")]
    DeltaTooSmall(usize),
    #[error("invalid support: {0}")]
    InvalidSupport(#[from] SupportError),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    /// A branch the construction proves unreachable was reached. `trace`
    /// holds every step replayed before the failure.
    #[error("internal invariant broken{}: {message}", step.map(|s| format!(" at step {s}")).unwrap_or_default())]
    InternalInvariantBroken {
        step: Option<usize>,
        message: String,
        trace: Vec<StepRecord>,
    },
}

/// Parameters of [`color_main_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    /// Colors are drawn from `1..=k + 3`.
    pub k: usize,
    /// Keep step records and check the whole partial coloring after every
    /// step instead of only around the re-inserted edges.
    pub trace: bool,
}

impl SolverConfig {
    pub fn new(k: usize) -> Self {
        SolverConfig { k, trace: false }
    }
}

#[derive(Debug, Clone)]
pub struct MainOutcome {
    pub coloring: PartialColoring,
    pub counts: BranchCounts,
    /// Step records in replay order; empty unless tracing.
    pub trace: Vec<StepRecord>,
}

/// Options of [`solve_with`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveOptions {
    /// Color graphs of maximum degree at most 4 with 8 colors instead of
    /// rejecting them. The result does not meet the `Δ + 3` bound.
    pub force_k5: bool,
    pub trace: bool,
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub coloring: PartialColoring,
    /// The `k` the main pipeline ran with.
    pub k: usize,
    pub counts: BranchCounts,
    pub trace: Vec<StepRecord>,
    pub repair: RepairTrace,
}

/// Full AVD total coloring of `g` with at most `Δ(g) + 3` colors that also
/// satisfies `sup`.
pub fn solve(g: &Graph, sup: &Support) -> Result<PartialColoring, SolveError> {
    solve_with(g, sup, &SolveOptions::default()).map(|s| s.coloring)
}

pub fn solve_with(g: &Graph, sup: &Support, opts: &SolveOptions) -> Result<Solution, SolveError> {
    sup.validate(g)?;
    check_degenerate(g)?;
    let delta = g.max_degree();
    let k = if delta >= 5 {
        delta
    } else if opts.force_k5 {
        5
    } else {
        return Err(SolveError::DeltaTooSmall(delta));
    };
    let main = color_main_with(g, sup, &SolverConfig { k, trace: opts.trace })?;
    let (coloring, repair) = complete_and_repair_traced(g, sup, &main.coloring)?;
    Ok(Solution {
        coloring,
        k,
        counts: main.counts,
        trace: main.trace,
        repair,
    })
}

fn check_degenerate(g: &Graph) -> Result<(), SolveError> {
    let d = degeneracy(g).degeneracy;
    if d > LOW_DEGREE {
        return Err(SolveError::NotThreeDegenerate(d));
    }
    Ok(())
}

/// Partial AVD total coloring over `[k + 3]` satisfying `sup`.
pub fn color_main(g: &Graph, sup: &Support, k: usize) -> Result<PartialColoring, SolveError> {
    color_main_with(g, sup, &SolverConfig::new(k)).map(|o| o.coloring)
}

pub fn color_main_with(
    g: &Graph,
    sup: &Support,
    cfg: &SolverConfig,
) -> Result<MainOutcome, SolveError> {
    if cfg.k < 5 {
        return Err(SolveError::PreconditionViolated(format!("k = {} is below 5", cfg.k)));
    }
    sup.validate(g)?;
    check_degenerate(g)?;
    let delta = g.max_degree();
    if delta > cfg.k {
        return Err(SolveError::DeltaExceedsK { delta, k: cfg.k });
    }
    run(g, sup, universe_of(cfg.k + 3)?, cfg.trace)
}

/// Colors every edge of a graph of maximum degree at most 3 and no vertex,
/// so that the result is a partial AVD total coloring satisfying `sup`.
pub fn color_subcubic(g: &Graph, sup: &Support, c_size: usize) -> Result<PartialColoring, SolveError> {
    let pre = |m: String| Err(SolveError::PreconditionViolated(m));
    if g.max_degree() > LOW_DEGREE {
        return pre(format!("maximum degree {} exceeds 3", g.max_degree()));
    }
    if c_size < 7 {
        return pre(format!("{c_size} colors are fewer than 7"));
    }
    sup.validate(g)?;
    run(g, sup, universe_of(c_size)?, false).map(|o| o.coloring)
}

/// Re-inserts the edge `uv` into a coloring of `g - uv`.
///
/// `u` must have degree 4 in `g` with `v` its only neighbour of degree at
/// most 3. `inner` is indexed by the edges of `g`, leaves `uv` uncolored,
/// and must be a partial AVD total coloring of `g - uv` satisfying `sup`
/// without the pairs containing `v`.
pub fn extend_small_pivot(
    g: &Graph,
    sup: &Support,
    u: Vertex,
    v: Vertex,
    inner: &PartialColoring,
    c_size: usize,
) -> Result<PartialColoring, SolveError> {
    let pre = |m: String| Err(SolveError::PreconditionViolated(m));
    sup.validate(g)?;
    let Some(e) = (u < g.n() && v < g.n()).then(|| g.edge_id(u, v)).flatten() else {
        return pre(format!("{{{u}, {v}}} is not an edge"));
    };
    if g.degree(u) != 4 {
        return pre(format!("pivot {u} has degree {}, not 4", g.degree(u)));
    }
    let low: Vec<Vertex> = g.neighbors(u).filter(|&w| g.is_low(w)).collect();
    if low != [v] {
        return pre(format!("low neighbours of {u} are {low:?}, not [{v}]"));
    }
    if c_size < 8 {
        return pre(format!("{c_size} colors are fewer than 8"));
    }
    if inner.universe() as usize != c_size {
        return pre(format!("coloring uses {} colors, expected {c_size}", inner.universe()));
    }
    if inner.vertex_colors().len() != g.n() || inner.edge_colors().len() != g.m() {
        return pre("coloring does not match the graph".into());
    }
    if inner.edge(e).is_some() {
        return pre(format!("edge {{{u}, {v}}} is already colored"));
    }
    let sub = g.edge_subgraph(|f| f != e);
    let sub_col = restrict(g, &sub, inner);
    let sub_sup = Support::new(sup.pairs().iter().copied().filter(|&(a, b)| a != v && b != v));
    if !is_partial_avd(&sub, &sub_col) {
        return pre("inner coloring is not a partial AVD total coloring of g - uv".into());
    }
    if !satisfies_support(&sub, &sub_sup, &sub_col).unwrap_or(false) {
        return pre("inner coloring does not satisfy the reduced support".into());
    }
    let present = (0..g.m()).map(|f| f != e).collect();
    let mut frame = Frame::new(g, present, sup.partners(g.n()), inner.clone());
    frame
        .small_pivot_step(u, v)
        .map_err(|Broken(message)| SolveError::InternalInvariantBroken {
            step: None,
            message,
            trace: Vec::new(),
        })?;
    Ok(frame.col)
}

fn universe_of(c: usize) -> Result<u32, SolveError> {
    u32::try_from(c).map_err(|_| SolveError::PreconditionViolated(format!("{c} colors is too many")))
}

/// `col`, a coloring indexed by the edges of `g`, re-indexed to the edge
/// subgraph `sub`.
pub(crate) fn restrict(g: &Graph, sub: &Graph, col: &PartialColoring) -> PartialColoring {
    let mut out = PartialColoring::new(sub, col.universe());
    for u in sub.vertices() {
        out.set_vertex(u, col.vertex(u));
    }
    for (e, &(a, b)) in sub.edges().iter().enumerate() {
        out.set_edge(e, col.edge(g.edge_id(a, b).expect("subgraph edge")));
    }
    out
}

fn run(g: &Graph, sup: &Support, universe: u32, tracing: bool) -> Result<MainOutcome, SolveError> {
    let steps = Peeler::new(g, sup.partners(g.n())).reduce().map_err(|u| {
        SolveError::PreconditionViolated(format!("no pivot: vertex {u} has more than 3 high neighbours"))
    })?;

    // Every support pair is dropped by the time its vertices lose an edge, so
    // the fully reduced graph carries no support.
    let empty = vec![None; g.n()];
    let mut frame = Frame::new(g, vec![false; g.m()], empty, PartialColoring::new(g, universe));
    let mut counts = BranchCounts::default();
    let mut records = Vec::new();

    for (i, step) in steps.iter().rev().enumerate() {
        let result = replay(&mut frame, step);
        let mut rec = match result {
            Ok(rec) => rec,
            Err(Broken(message)) => {
                return Err(SolveError::InternalInvariantBroken {
                    step: Some(i),
                    message,
                    trace: records,
                })
            }
        };
        rec.step = i;
        counts.record(&rec);
        if tracing {
            let (sub, col, s) = frame.snapshot();
            let problem = if !is_partial_avd(&sub, &col) {
                Some("partial coloring is not AVD")
            } else if !satisfies_support(&sub, &s, &col).unwrap_or(false) {
                Some("support is not satisfied")
            } else {
                None
            };
            records.push(rec);
            if let Some(message) = problem {
                return Err(SolveError::InternalInvariantBroken {
                    step: Some(i),
                    message: message.to_string(),
                    trace: records,
                });
            }
        }
    }
    Ok(MainOutcome {
        coloring: frame.col,
        counts,
        trace: records,
    })
}

fn replay(frame: &mut Frame<'_>, step: &Reduction) -> Result<StepRecord, Broken> {
    let (dropped, added) = match step {
        Reduction::Subcubic { dropped, .. } | Reduction::SmallPivot { dropped, .. } => (dropped, None),
        Reduction::PairPivot { dropped, added, .. } => (dropped, *added),
    };
    if let Some((a, b)) = added {
        frame.partner[a] = None;
        frame.partner[b] = None;
    }
    for &(a, b) in dropped {
        frame.partner[a] = Some(b);
        frame.partner[b] = Some(a);
    }
    match *step {
        Reduction::Subcubic { edge, .. } => frame.subcubic_step(edge as EdgeId),
        Reduction::SmallPivot { u, v, .. } => frame.small_pivot_step(u, v),
        Reduction::PairPivot { u, v1, v2, .. } => frame.pair_pivot_step(u, v1, v2),
    }
}
