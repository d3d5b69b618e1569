//! Command-line front end for the `avdtc` library.
//!
//! [`run`] parses arguments, executes one subcommand and returns the process
//! exit code, writing to the given streams so that tests can drive it
//! in-process.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use avdtc::io::{parse_coloring, parse_graph, parse_support, write_coloring, write_graph, write_support};
use avdtc::{
    check_coloring, corpus_instance, degeneracy, exact_min_avd, generate, is_avd_total,
    satisfies_support, solve_with, avd_total_violations, BranchCounts, GenSpec, Graph, GraphKind,
    SolveError, SolveOptions, Support,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_BROKEN: i32 = 3;

/// Setting this variable to `1` has the same effect as `color --trace`.
pub const TRACE_ENV: &str = "AVDTC_TRACE";

#[derive(Debug, Parser)]
#[command(name = "avdtc", version, about = "AVD total coloring of 3-degenerate graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Color a graph with at most max-degree + 3 colors.
    Color {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        support: Option<PathBuf>,
        /// Write the coloring here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Accept maximum degree at most 4 and use 8 colors.
        #[arg(long)]
        force_k5: bool,
        /// Print one JSON line per replayed reduction step on stderr.
        #[arg(long)]
        trace: bool,
    },
    /// Check a coloring with two independent verifiers.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        coloring: PathBuf,
        #[arg(short, long)]
        support: Option<PathBuf>,
        /// Fail if any color exceeds this value.
        #[arg(long)]
        max_colors: Option<u32>,
    },
    /// Exact minimum number of colors for a tiny graph.
    Oracle {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value_t = 12)]
        limit: u32,
        /// Write a minimum coloring here.
        #[arg(short, long)]
        witness: Option<PathBuf>,
    },
    /// Generate a graph.
    Gen {
        #[arg(long)]
        kind: GraphKind,
        #[arg(short, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        back_degree: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the degeneracy and maximum degree of a graph.
    Degeneracy {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Generate, solve and verify seeded random instances.
    Stress {
        #[arg(long, default_value_t = 100)]
        iters: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 7)]
        nmin: usize,
        #[arg(long, default_value_t = 300)]
        nmax: usize,
        /// Where failing instances are saved.
        #[arg(long, default_value = "failures")]
        failures: PathBuf,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn bad_input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_BAD_INPUT,
            message: message.into(),
        }
    }
}

type Outcome = Result<i32, Failure>;

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_BAD_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Color {
            input,
            support,
            output,
            force_k5,
            trace,
        } => {
            let trace = trace || std::env::var(TRACE_ENV).is_ok_and(|v| v == "1");
            color(&input, support.as_deref(), output.as_deref(), force_k5, trace, out, err)
        }
        Command::Verify {
            input,
            coloring,
            support,
            max_colors,
        } => verify(&input, &coloring, support.as_deref(), max_colors, out),
        Command::Oracle { input, limit, witness } => oracle(&input, limit, witness.as_deref(), out),
        Command::Gen {
            kind,
            n,
            seed,
            back_degree,
            output,
        } => {
            let spec = GenSpec {
                kind,
                n,
                seed,
                back_degree,
            };
            let g = generate(&spec).map_err(|e| Failure::bad_input(e.to_string()))?;
            emit(output.as_deref(), &write_graph(&g), out)?;
            Ok(EXIT_OK)
        }
        Command::Degeneracy { input } => {
            let g = read_graph(&input)?;
            let d = degeneracy(&g);
            writeln!(out, "degeneracy {}", d.degeneracy).map_err(io_failure)?;
            writeln!(out, "max_degree {}", g.max_degree()).map_err(io_failure)?;
            Ok(EXIT_OK)
        }
        Command::Stress {
            iters,
            seed,
            nmin,
            nmax,
            failures,
        } => stress(iters, seed, nmin, nmax, &failures, out),
    }
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure::bad_input(format!("write failed: {e}"))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::bad_input(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    parse_graph(&read(path)?).map_err(|e| Failure::bad_input(format!("{}: {e}", path.display())))
}

fn read_support(path: Option<&Path>, g: &Graph) -> Result<Support, Failure> {
    let Some(path) = path else {
        return Ok(Support::empty());
    };
    let sup = parse_support(&read(path)?, g.n())
        .map_err(|e| Failure::bad_input(format!("{}: {e}", path.display())))?;
    sup.validate(g)
        .map_err(|e| Failure::bad_input(format!("{}: {e}", path.display())))?;
    Ok(sup)
}

fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::bad_input(format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(io_failure),
    }
}

fn solve_failure(e: SolveError, err: &mut dyn Write) -> Failure {
    if let SolveError::InternalInvariantBroken { trace, .. } = &e {
        for rec in trace {
            let _ = writeln!(err, "{}", serde_json::to_string(rec).expect("records serialize"));
        }
        return Failure {
            code: EXIT_BROKEN,
            message: e.to_string(),
        };
    }
    Failure::bad_input(e.to_string())
}

fn color(
    input: &Path,
    support: Option<&Path>,
    output: Option<&Path>,
    force_k5: bool,
    trace: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let g = read_graph(input)?;
    let sup = read_support(support, &g)?;
    let sol = solve_with(&g, &sup, &SolveOptions { force_k5, trace }).map_err(|e| solve_failure(e, err))?;
    for rec in &sol.trace {
        writeln!(err, "{}", serde_json::to_string(rec).expect("records serialize")).map_err(io_failure)?;
    }
    emit(output, &write_coloring(&g, &sol.coloring), out)?;
    Ok(EXIT_OK)
}

fn verify(
    input: &Path,
    coloring: &Path,
    support: Option<&Path>,
    max_colors: Option<u32>,
    out: &mut dyn Write,
) -> Outcome {
    let g = read_graph(input)?;
    let sup = read_support(support, &g)?;
    let col = parse_coloring(&read(coloring)?, &g)
        .map_err(|e| Failure::bad_input(format!("{}: {e}", coloring.display())))?;

    let mut problems = Vec::new();
    let model = is_avd_total(&g, &col);
    let independent = check_coloring(&g, &col);
    if model != independent {
        problems.push(format!("verifiers disagree (model {model}, independent {independent})"));
    }
    if !model {
        for v in avd_total_violations(&g, &col) {
            problems.push(format!("{v:?}"));
        }
    } else if !satisfies_support(&g, &sup, &col).unwrap_or(false) {
        problems.push("support not satisfied".into());
    }
    if let Some(m) = max_colors {
        if col.max_color() > m {
            problems.push(format!("uses color {} above the limit {m}", col.max_color()));
        }
    }
    let w = |out: &mut dyn Write, s: String| writeln!(out, "{s}").map_err(io_failure);
    if problems.is_empty() {
        w(out, format!("valid colors={}", col.max_color()))?;
        Ok(EXIT_OK)
    } else {
        w(out, "invalid".into())?;
        for p in problems {
            w(out, format!("  {p}"))?;
        }
        Ok(EXIT_INVALID)
    }
}

fn oracle(input: &Path, limit: u32, witness: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let g = read_graph(input)?;
    let r = exact_min_avd(&g, limit).map_err(|e| Failure::bad_input(e.to_string()))?;
    match r.min_colors {
        Some(c) => writeln!(out, "min_colors {c}"),
        None => writeln!(out, "min_colors >{limit}"),
    }
    .map_err(io_failure)?;
    writeln!(out, "nodes {}", r.nodes_explored).map_err(io_failure)?;
    if let (Some(path), Some(w)) = (witness, &r.witness) {
        emit(Some(path), &write_coloring(&g, w), out)?;
    }
    Ok(EXIT_OK)
}

/// Result of one stress instance.
#[derive(Debug, Clone)]
pub struct StressReport {
    pub index: u64,
    pub line: String,
    pub counts: BranchCounts,
    pub ok: bool,
    pub broken: bool,
}

/// Generates instance `index` of the stress corpus, solves it and checks the
/// result. On failure the instance is written to `failures`.
pub fn stress_instance(master: u64, index: u64, nmin: usize, nmax: usize, failures: &Path) -> StressReport {
    let inst = corpus_instance(master, index, nmin, nmax).expect("sizes were validated");
    let g = &inst.graph;
    let sup = &inst.support;
    let delta = g.max_degree();
    let head = format!(
        "#{index} n={} m={} delta={delta} pairs={}",
        g.n(),
        g.m(),
        sup.len()
    );
    let mut report = StressReport {
        index,
        line: String::new(),
        counts: BranchCounts::default(),
        ok: false,
        broken: false,
    };
    let problem = match solve_with(g, sup, &SolveOptions::default()) {
        Err(e) => {
            report.broken = matches!(e, SolveError::InternalInvariantBroken { .. });
            Some(e.to_string())
        }
        Ok(sol) => {
            report.counts = sol.counts;
            let col = &sol.coloring;
            let model = is_avd_total(g, col);
            if model != check_coloring(g, col) {
                Some("verifiers disagree".to_string())
            } else if !model {
                Some("not an AVD total coloring".into())
            } else if !satisfies_support(g, sup, col).unwrap_or(false) {
                Some("support not satisfied".into())
            } else if col.max_color() as usize > delta + 3 {
                Some(format!("uses {} colors", col.max_color()))
            } else {
                report.line = format!("{head} colors={} ok", col.max_color());
                None
            }
        }
    };
    match problem {
        None => report.ok = true,
        Some(p) => {
            let saved = save_failure(failures, master, inst.index, g, sup, &p);
            report.line = format!("{head} FAIL {p}{saved}");
        }
    }
    report
}

fn save_failure(dir: &Path, master: u64, index: u64, g: &Graph, sup: &Support, why: &str) -> String {
    let stem = dir.join(format!("stress-{master}-{index}"));
    let result = fs::create_dir_all(dir)
        .and_then(|_| fs::write(stem.with_extension("col"), write_graph(g)))
        .and_then(|_| fs::write(stem.with_extension("sup"), write_support(sup)))
        .and_then(|_| {
            fs::write(
                stem.with_extension("txt"),
                format!("master seed {master}\nindex {index}\nreason {why}\n"),
            )
        });
    match result {
        Ok(()) => format!(" (saved {})", stem.display()),
        Err(e) => format!(" (could not save: {e})"),
    }
}

fn stress(iters: u64, seed: u64, nmin: usize, nmax: usize, failures: &Path, out: &mut dyn Write) -> Outcome {
    // Validate the sizes once instead of per instance.
    corpus_instance(seed, 0, nmin, nmax).map_err(|e| Failure::bad_input(e.to_string()))?;
    let mut counts = BranchCounts::default();
    let (mut ok, mut failed, mut broken) = (0u64, 0u64, 0u64);
    const CHUNK: u64 = 256;
    let mut start = 0;
    while start < iters {
        let end = (start + CHUNK).min(iters);
        let reports: Vec<StressReport> = (start..end)
            .into_par_iter()
            .map(|i| stress_instance(seed, i, nmin, nmax, failures))
            .collect();
        for r in reports {
            writeln!(out, "{}", r.line).map_err(io_failure)?;
            counts += r.counts;
            if r.ok {
                ok += 1;
            } else {
                failed += 1;
                broken += r.broken as u64;
            }
        }
        start = end;
    }
    writeln!(out, "tally ok={ok} failed={failed} broken={broken}").map_err(io_failure)?;
    let branches: Vec<String> = counts.entries().iter().map(|(k, v)| format!("{k}={v}")).collect();
    writeln!(out, "branches {}", branches.join(" ")).map_err(io_failure)?;
    Ok(if broken > 0 {
        EXIT_BROKEN
    } else if failed > 0 {
        EXIT_INVALID
    } else {
        EXIT_OK
    })
}
