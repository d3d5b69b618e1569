//! The nine acceptance criteria. Runs without the libtest harness and prints
//! one `criterion N: PASS|FAIL` line per criterion; exits non-zero if any
//! criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use avdtc::solver::complete_and_repair_traced;
use avdtc::{
    check_coloring, color_main, color_subcubic, corpus_instance, degeneracy, enumerate_small_graphs,
    exact_min_avd, generate, is_avd_total, is_partial_avd, random_support, satisfies_support,
    solve_with, zeta, BranchCounts, Color, ColorSet, GenSpec, Graph, GraphKind, PartialColoring,
    SolveOptions, Support,
};

/// Master seed of the criterion 1 corpus.
const CORPUS_SEED: u64 = 2024;
const CORPUS_SIZE: u64 = 500;
/// Stress corpus of criterion 7.
const STRESS_SEED: u64 = 1;
const STRESS_ITERS: u64 = 1000;
const STRESS_NMAX: usize = 40;

/// Every full coloring produced by criteria 1 to 5, kept for criterion 9.
type Produced = Vec<(Graph, PartialColoring)>;

fn cycle(n: usize) -> Graph {
    generate(&GenSpec::new(GraphKind::Cycle, n, 0)).unwrap()
}

fn colors_used(col: &PartialColoring) -> Color {
    col.max_color()
}

fn criterion_1(produced: &mut Produced) -> Result<String, String> {
    let mut worst = 0.0f64;
    let mut pairs = 0;
    for i in 0..CORPUS_SIZE {
        let inst = corpus_instance(CORPUS_SEED, i, 7, 300).map_err(|e| e.to_string())?;
        let (g, sup) = (&inst.graph, &inst.support);
        let start = Instant::now();
        let sol = solve_with(g, sup, &SolveOptions::default()).map_err(|e| format!("instance {i}: {e}"))?;
        worst = worst.max(start.elapsed().as_secs_f64());
        let col = sol.coloring;
        if !is_avd_total(g, &col) {
            return Err(format!("instance {i}: not an AVD total coloring"));
        }
        if !satisfies_support(g, sup, &col).unwrap() {
            return Err(format!("instance {i}: support not satisfied"));
        }
        let bound = g.max_degree() + 3;
        if colors_used(&col) as usize > bound || col.universe() as usize != bound {
            return Err(format!("instance {i}: colors exceed {bound}"));
        }
        pairs += sup.len();
        produced.push((inst.graph, col));
    }
    if worst >= 2.0 {
        return Err(format!("slowest instance took {worst:.2}s"));
    }
    Ok(format!("{CORPUS_SIZE} instances, {pairs} support pairs, slowest {worst:.3}s"))
}

fn criterion_2(produced: &mut Produced) -> Result<String, String> {
    let mut problems = Vec::new();
    let mut cycles = Vec::new();
    for n in [3, 5, 7] {
        let g = cycle(n);
        let r = exact_min_avd(&g, 12).map_err(|e| e.to_string())?;
        cycles.push(format!("C{n}={:?}", r.min_colors));
        if r.min_colors != Some(5) {
            problems.push(format!("C{n} needs {:?} colors, expected 5", r.min_colors));
        }
        produced.extend(r.witness.map(|w| (g, w)));
    }
    let mut checked = 0;
    for n in 2..=5 {
        for g in enumerate_small_graphs(n).unwrap() {
            let delta = g.max_degree();
            let adjacent_max = g
                .edges()
                .iter()
                .any(|&(a, b)| g.degree(a) == delta && g.degree(b) == delta);
            if !adjacent_max {
                continue;
            }
            checked += 1;
            let r = exact_min_avd(&g, 12).map_err(|e| e.to_string())?;
            match r.min_colors {
                Some(c) if c as usize >= delta + 2 => {}
                other => problems.push(format!("{:?} needs {other:?} < delta + 2", g.edges())),
            }
            produced.extend(r.witness.map(|w| (g, w)));
        }
    }
    let summary = format!("{}; {checked} graphs with adjacent maximum-degree vertices", cycles.join(" "));
    if problems.is_empty() {
        Ok(summary)
    } else {
        Err(format!("{summary}; {}", problems.join("; ")))
    }
}

fn criterion_3(produced: &mut Produced) -> Result<String, String> {
    let mut tested = 0;
    for g in enumerate_small_graphs(5).unwrap() {
        if degeneracy(&g).degeneracy > 3 {
            continue;
        }
        tested += 1;
        let bound = g.max_degree() as u32 + 3;
        let r = exact_min_avd(&g, bound).map_err(|e| e.to_string())?;
        if r.min_colors.is_none() {
            return Err(format!("{:?} needs more than {bound} colors", g.edges()));
        }
        produced.extend(r.witness.map(|w| (g, w)));
    }
    Ok(format!("{tested} of 1024 graphs are 3-degenerate, all within delta + 3"))
}

/// A partial AVD coloring from the pipeline with some low-degree vertices
/// additionally given random proper colors.
fn repair_fixture(i: u64) -> (Graph, Support, PartialColoring) {
    let mut rng = ChaCha8Rng::seed_from_u64(i);
    let (g, sup, mut col) = if i % 2 == 0 {
        let inst = corpus_instance(77, i, 7, 60).unwrap();
        let k = inst.graph.max_degree();
        let col = color_main(&inst.graph, &inst.support, k).unwrap();
        (inst.graph, inst.support, col)
    } else {
        let g = subcubic_graph(i);
        let sup = random_support(&g, i, usize::MAX);
        let col = color_subcubic(&g, &sup, 7).unwrap();
        (g, sup, col)
    };
    for u in g.vertices() {
        if g.degree(u) > 3 || rng.random_bool(0.5) {
            continue;
        }
        let mut taken = ColorSet::new();
        for &(w, e) in g.incident(u) {
            taken.extend(col.vertex(w));
            taken.extend(col.edge(e));
        }
        let free: Vec<Color> = taken.complement(col.universe()).iter().collect();
        col.set_vertex(u, Some(free[rng.random_range(0..free.len())]));
    }
    (g, sup, col)
}

fn criterion_4(produced: &mut Produced) -> Result<String, String> {
    let mut recolorings = 0;
    let mut with_violations = 0;
    for i in 0..100 {
        let (g, sup, col) = repair_fixture(i);
        if !is_partial_avd(&g, &col) || !satisfies_support(&g, &sup, &col).unwrap() {
            return Err(format!("fixture {i} is not a valid partial coloring"));
        }
        let (out, trace) = complete_and_repair_traced(&g, &sup, &col).map_err(|e| format!("fixture {i}: {e}"))?;
        if out.edge_colors() != col.edge_colors() {
            return Err(format!("fixture {i}: an edge color changed"));
        }
        let counts = &trace.violation_counts;
        if counts.last() != Some(&0) || counts.windows(2).any(|w| w[1] >= w[0]) {
            return Err(format!("fixture {i}: violation counts {counts:?} do not strictly decrease"));
        }
        if !is_avd_total(&g, &out) || !satisfies_support(&g, &sup, &out).unwrap() {
            return Err(format!("fixture {i}: output is not a valid AVD total coloring"));
        }
        recolorings += trace.recolored.len();
        with_violations += (counts.len() > 1) as usize;
        produced.push((g, out));
    }
    Ok(format!("100 fixtures, {with_violations} needed repairs, {recolorings} recolorings"))
}

/// A seeded graph of maximum degree at most 3.
fn subcubic_graph(seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let n = rng.random_range(4..=60);
    let base = generate(&GenSpec::new(GraphKind::Random3d, n, seed)).unwrap();
    let mut deg = vec![0; n];
    let mut edges = Vec::new();
    for &(a, b) in base.edges() {
        if deg[a] < 3 && deg[b] < 3 {
            deg[a] += 1;
            deg[b] += 1;
            edges.push((a, b));
        }
    }
    Graph::new(n, &edges).unwrap()
}

fn criterion_5(produced: &mut Produced) -> Result<String, String> {
    let mut pairs = 0;
    for i in 0..100 {
        let g = subcubic_graph(1000 + i);
        let sup = random_support(&g, i, usize::MAX);
        let col = color_subcubic(&g, &sup, 7).map_err(|e| format!("graph {i}: {e}"))?;
        if !is_partial_avd(&g, &col) || col.colored_vertex_count() != 0 {
            return Err(format!("graph {i}: not a partial AVD coloring without vertex colors"));
        }
        if col.edge_colors().iter().any(Option::is_none) {
            return Err(format!("graph {i}: uncolored edge"));
        }
        if !satisfies_support(&g, &sup, &col).unwrap() {
            return Err(format!("graph {i}: support not satisfied"));
        }
        pairs += sup.len();
        produced.push((g, col));
    }
    Ok(format!("100 subcubic graphs, {pairs} support pairs"))
}

fn criterion_6() -> Result<String, String> {
    let subsets: Vec<ColorSet> = (0u32..64).map(|m| (1..=6).filter(|c| m >> (c - 1) & 1 == 1).collect()).collect();
    let mut tally = [0usize; 3];
    for a in &subsets {
        for b in &subsets {
            let union = a.union(b);
            if a.len() < 2 || b.len() < 2 || union.len() < 3 {
                continue;
            }
            let z = zeta(a, b);
            let mut brute = Vec::new();
            for x in 1..=6 {
                for y in x + 1..=6 {
                    if (a.contains(x) && b.contains(y)) || (a.contains(y) && b.contains(x)) {
                        brute.push((x, y));
                    }
                }
            }
            if z != brute {
                return Err(format!("zeta({a:?}, {b:?}) = {z:?}, expected {brute:?}"));
            }
            let expected_ok = if union.len() == 3 {
                tally[0] += 1;
                z.len() == 3
            } else if union.len() == 4 && a.len() == 2 && b.len() == 2 {
                tally[1] += 1;
                z.len() == 4
            } else {
                tally[2] += 1;
                z.len() >= 5
            };
            if !expected_ok {
                return Err(format!("|zeta({a:?}, {b:?})| = {}", z.len()));
            }
        }
    }
    Ok(format!("{} pairs: {} of size 3, {} of size 4, {} of size >= 5", tally.iter().sum::<usize>(), tally[0], tally[1], tally[2]))
}

fn criterion_7() -> Result<String, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut counts = BranchCounts::default();
    for i in 0..STRESS_ITERS {
        let r = avdtc_cli::stress_instance(STRESS_SEED, i, 7, STRESS_NMAX, dir.path());
        if !r.ok {
            return Err(r.line);
        }
        counts += r.counts;
    }
    for copies in 1..=10 {
        let g = generate(&GenSpec::new(GraphKind::SmallPivotGadget, copies, 0)).unwrap();
        let opts = SolveOptions { force_k5: true, trace: true };
        let sol = solve_with(&g, &Support::empty(), &opts).map_err(|e| e.to_string())?;
        let first = sol.trace.iter().rev().find(|r| r.pivot.is_some()).expect("gadget has pivots");
        if first.branch != avdtc::Branch::SmallPivot || first.pivot != Some(0) {
            return Err(format!("gadget with {copies} copies did not start with a small pivot at 0"));
        }
        counts += sol.counts;
    }
    let required = [
        ("subcubic", counts.subcubic),
        ("small-pivot", counts.small_pivot),
        ("case-a-eq", counts.case_a_eq),
        ("case-a-neq", counts.case_a_neq),
        ("case-b", counts.case_b),
        ("claim1", counts.claim1),
        ("claim2", counts.claim2),
        ("star-recolor", counts.star_recolor),
    ];
    let all: Vec<String> = counts.entries().iter().map(|(k, v)| format!("{k}={v}")).collect();
    let missing: Vec<&str> = required.iter().filter(|(_, c)| *c == 0).map(|(k, _)| *k).collect();
    if missing.is_empty() {
        Ok(all.join(" "))
    } else {
        Err(format!("never fired: {}; {}", missing.join(", "), all.join(" ")))
    }
}

fn run_bin(args: &[&str]) -> Result<(Vec<u8>, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_avdtc"))
        .args(args)
        .env_remove("AVDTC_TRACE")
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited with {}", out.status));
    }
    Ok((out.stdout, out.stderr))
}

fn criterion_8() -> Result<String, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let p = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let graph = p("g.col");
    run_bin(&["gen", "--kind", "random3d", "-n", "120", "--seed", "42", "-o", &graph])?;
    let (gen_again, _) = run_bin(&["gen", "--kind", "random3d", "-n", "120", "--seed", "42"])?;
    if gen_again != std::fs::read(&graph).unwrap() {
        return Err("gen output differs between runs".into());
    }
    let a = run_bin(&["color", "-i", &graph, "--trace"])?;
    let b = run_bin(&["color", "-i", &graph, "--trace"])?;
    if a != b {
        return Err("color output differs between runs".into());
    }
    let failures = p("failures");
    let stress = ["stress", "--iters", "64", "--seed", "3", "--nmin", "7", "--nmax", "80", "--failures", &failures];
    let s1 = run_bin(&stress)?;
    let s2 = run_bin(&stress)?;
    if s1.0 != s2.0 {
        return Err("stress output differs between runs".into());
    }
    if Path::new(&failures).exists() {
        return Err("stress saved failures".into());
    }
    Ok(format!("color {} bytes, trace {} bytes, stress {} bytes identical", a.0.len(), a.1.len(), s1.0.len()))
}

/// Changes one element of a complete coloring, so that roughly half of the
/// variants become invalid.
fn mutate(g: &Graph, col: &PartialColoring, rng: &mut ChaCha8Rng) -> PartialColoring {
    let mut m = col.clone();
    let c = rng.random_range(1..=col.universe().max(1));
    if g.m() > 0 && rng.random_bool(0.5) {
        m.set_edge(rng.random_range(0..g.m()), Some(c));
    } else if g.n() > 0 {
        m.set_vertex(rng.random_range(0..g.n()), Some(c));
    }
    m
}

fn criterion_9(produced: &Produced) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut valid, mut invalid) = (0, 0);
    for (i, (g, col)) in produced.iter().enumerate() {
        for variant in [col.clone(), mutate(g, col, &mut rng)] {
            let model = is_avd_total(g, &variant);
            if model != check_coloring(g, &variant) {
                return Err(format!("coloring {i}: verifiers disagree ({model})"));
            }
            if model {
                valid += 1;
            } else {
                invalid += 1;
            }
        }
    }
    Ok(format!("{} colorings and mutations: {valid} valid, {invalid} invalid, all agree", produced.len()))
}

fn main() {
    let mut produced = Produced::new();
    let mut failed = 0;
    let mut report = |n: usize, f: &mut dyn FnMut() -> Result<String, String>| {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(msg) => println!("criterion {n}: PASS ({secs:.1}s) {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n}: FAIL ({secs:.1}s) {msg}");
            }
        }
    };
    report(1, &mut || criterion_1(&mut produced));
    report(2, &mut || criterion_2(&mut produced));
    report(3, &mut || criterion_3(&mut produced));
    report(4, &mut || criterion_4(&mut produced));
    report(5, &mut || criterion_5(&mut produced));
    report(6, &mut criterion_6);
    report(7, &mut criterion_7);
    report(8, &mut criterion_8);
    report(9, &mut || criterion_9(&produced));
    if failed > 0 {
        println!("{failed} of 9 criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria passed");
}
