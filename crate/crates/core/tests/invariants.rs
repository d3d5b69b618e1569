use proptest::prelude::*;

use avdtc::io::{parse_coloring, write_coloring};
use avdtc::solver::complete_and_repair_traced;
use avdtc::{
    check_coloring, color_main_with, degeneracy, enumerate_small_graphs, exact_min_avd, generate,
    is_avd_total, is_partial_avd, random_support, satisfies_support, solve_with, Branch, GenSpec,
    Graph, GraphKind, SolveOptions, SolverConfig, Support,
};

fn random_graph(n: usize, seed: u64, back: usize) -> Graph {
    let spec = GenSpec {
        kind: GraphKind::Random3d,
        n,
        seed,
        back_degree: back,
    };
    generate(&spec).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Every intermediate coloring is checked by the traced pipeline, so a
    /// successful traced run certifies the step-wise invariant.
    #[test]
    fn traced_pipeline_keeps_invariants(n in 1usize..80, seed: u64, back in 1usize..=3, sup_seed: u64) {
        let g = random_graph(n, seed, back);
        let sup = random_support(&g, sup_seed, usize::MAX);
        let k = g.max_degree().max(5);
        let out = color_main_with(&g, &sup, &SolverConfig { k, trace: true }).unwrap();
        prop_assert!(is_partial_avd(&g, &out.coloring));
        prop_assert!(satisfies_support(&g, &sup, &out.coloring).unwrap());
        prop_assert!(out.coloring.max_color() as usize <= k + 3);
        for rec in &out.trace {
            if let Some(x) = &rec.x {
                prop_assert!(x.len() >= 4);
            }
            if let Some(y) = &rec.y {
                prop_assert!(y.len() <= 2);
            }
            if let (Some(x1), Some(x2)) = (&rec.x1, &rec.x2) {
                prop_assert!(x1.len() >= 2 && x2.len() >= 2);
                prop_assert!(x1.union(x2).len() >= 3);
            }
            prop_assert_eq!(rec.branch == Branch::Subcubic, rec.pivot.is_none());
        }
    }

    #[test]
    fn solve_is_valid_and_deterministic(n in 7usize..120, seed: u64, sup_seed: u64) {
        let g = random_graph(n, seed, 3);
        prop_assume!(g.max_degree() >= 5);
        let sup = random_support(&g, sup_seed, usize::MAX);
        let a = solve_with(&g, &sup, &SolveOptions::default()).unwrap();
        let b = solve_with(&g, &sup, &SolveOptions::default()).unwrap();
        prop_assert!(is_avd_total(&g, &a.coloring));
        prop_assert!(check_coloring(&g, &a.coloring));
        prop_assert!(satisfies_support(&g, &sup, &a.coloring).unwrap());
        prop_assert!(a.coloring.max_color() as usize <= g.max_degree() + 3);
        prop_assert_eq!(write_coloring(&g, &a.coloring), write_coloring(&g, &b.coloring));
    }

    #[test]
    fn repair_keeps_edges_and_decreases_violations(n in 1usize..80, seed: u64, sup_seed: u64) {
        let g = random_graph(n, seed, 3);
        let sup = random_support(&g, sup_seed, usize::MAX);
        let k = g.max_degree().max(5);
        let partial = color_main_with(&g, &sup, &SolverConfig::new(k)).unwrap().coloring;
        let (full, trace) = complete_and_repair_traced(&g, &sup, &partial).unwrap();
        prop_assert_eq!(full.edge_colors(), partial.edge_colors());
        prop_assert!(trace.violation_counts.windows(2).all(|w| w[1] < w[0]));
        prop_assert_eq!(trace.violation_counts.last(), Some(&0));
        prop_assert!(trace.colored.len() <= g.n());
        prop_assert!(trace.recolored.len() <= g.m());
        prop_assert!(is_avd_total(&g, &full));
    }

    #[test]
    fn coloring_text_round_trip(n in 7usize..60, seed: u64) {
        let g = random_graph(n, seed, 3);
        prop_assume!(g.max_degree() >= 5);
        let col = solve_with(&g, &Support::empty(), &SolveOptions::default()).unwrap().coloring;
        let text = write_coloring(&g, &col);
        prop_assert!(text.is_ascii() && text.ends_with('\n'));
        prop_assert_eq!(parse_coloring(&text, &g).unwrap(), col);
    }

    #[test]
    fn random_support_is_valid(n in 1usize..80, seed: u64, back in 1usize..=3, max_pairs in 0usize..10) {
        let g = random_graph(n, seed, back);
        let sup = random_support(&g, seed, max_pairs);
        prop_assert!(sup.len() <= max_pairs);
        prop_assert!(sup.validate(&g).is_ok());
    }
}

#[test]
fn small_graphs_colored_with_k5_pass_the_oracle_checker() {
    let mut count = 0;
    for n in 1..=5 {
        for g in enumerate_small_graphs(n).unwrap() {
            if degeneracy(&g).degeneracy > 3 {
                continue;
            }
            let opts = SolveOptions { force_k5: true, trace: true };
            let sol = solve_with(&g, &Support::empty(), &opts).unwrap();
            assert!(check_coloring(&g, &sol.coloring), "{:?}", g.edges());
            count += 1;
        }
    }
    assert_eq!(count, 1 + 2 + 8 + 64 + 1023);
}

#[test]
fn oracle_lower_bounds_on_four_vertices() {
    for n in 1..=4 {
        for g in enumerate_small_graphs(n).unwrap() {
            let r = exact_min_avd(&g, 12).unwrap();
            let c = r.min_colors.unwrap() as usize;
            assert!(c > g.max_degree());
            let delta = g.max_degree();
            if g.edges().iter().any(|&(a, b)| g.degree(a) == delta && g.degree(b) == delta) {
                assert!(c >= delta + 2);
            }
            let w = r.witness.unwrap();
            assert!(check_coloring(&g, &w));
            assert!(is_avd_total(&g, &w));
        }
    }
}
