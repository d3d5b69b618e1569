//! Adjacent-vertex-distinguishing total colorings of 3-degenerate graphs
//! with at most `Δ + 3` colors.
//!
//! ```
//! use avdtc::{generate, is_avd_total, solve, GenSpec, GraphKind, Support};
//!
//! let g = generate(&GenSpec::new(GraphKind::Wheel, 8, 0)).unwrap();
//! let col = solve(&g, &Support::empty()).unwrap();
//! assert!(is_avd_total(&g, &col));
//! assert!(col.max_color() as usize <= g.max_degree() + 3);
//! ```

pub mod coloring;
pub mod colorset;
pub mod generators;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod solver;
pub mod support;

pub use coloring::{
    avd_total_violations, copalette_of, is_avd_total, is_partial_avd, palette_of,
    partial_avd_violations, satisfies_support, support_violations, violating_edges, ModelError,
    PartialColoring, Violation,
};
pub use colorset::{Color, ColorSet};
pub use generators::{
    corpus_instance, generate, random_support, CorpusInstance, GenError, GenSpec, GraphKind,
};
pub use graph::{
    degeneracy, find_pivot, Degeneracy, DegreePartition, EdgeId, Graph, GraphError, PivotError,
    Vertex, LOW_DEGREE,
};
pub use io::ParseError;
pub use oracle::{check_coloring, enumerate_small_graphs, exact_min_avd, OracleError, OracleResult};
pub use solver::{
    color_main, color_main_with, color_subcubic, complete_and_repair, extend_small_pivot, solve,
    solve_with, zeta, Branch, BranchCounts, MainOutcome, Resolution, Solution, SolveError,
    SolveOptions, SolverConfig, StepRecord,
};
pub use support::{validate_support, Support, SupportError};
