mod document;
mod output;
mod verify;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use overlap_bounds::{
    classical_chain, classical_lower_map, classicality_check, complete_and_tighten, dimension_witness, pair_key,
    DimensionVerdict, Infeasible64, Interval64, Model, OverlapGraph64, PropagationOptions,
};
use serde_json::{json, Value};

use document::GraphDocument;
use verify::Suite;

const EXIT_INPUT: u8 = 1;
const EXIT_INFEASIBLE: u8 = 2;
const EXIT_VIOLATION: u8 = 3;

#[derive(Parser)]
#[command(name = "obound", version, about = "Bounds on unknown pairwise overlaps of quantum states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Qudit,
    Qubit,
    Classical,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Qudit => Model::PureQudit,
            ModelArg::Qubit => Model::Qubit,
            ModelArg::Classical => Model::Classical,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Complete a graph and tighten every unknown overlap to an interval.
    Infer {
        /// Graph document, or `-` for stdin.
        input: PathBuf,
        #[arg(long, value_enum, default_value = "qudit")]
        model: ModelArg,
        /// Sweep limit (default 100·n²).
        #[arg(long)]
        max_iters: Option<usize>,
        /// Convergence tolerance on interval endpoints.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Also write the model's triangle bounds on a grid as CSV.
        #[arg(long, value_name = "PATH")]
        emit_plot_data: Option<PathBuf>,
        #[arg(long, default_value_t = 101, requires = "emit_plot_data")]
        plot_steps: usize,
    },
    /// Classical lower bounds for every pair and any classicality violations.
    Classical {
        input: PathBuf,
        /// Tolerance before a violation is reported.
        #[arg(long, default_value_t = 1e-9)]
        noise: f64,
    },
    /// Check whether a measured triangle of overlaps fits in a qubit.
    WitnessDim {
        #[arg(long, allow_negative_numbers = true)]
        r_ab: f64,
        #[arg(long, allow_negative_numbers = true)]
        r_ac: f64,
        #[arg(long, allow_negative_numbers = true)]
        r_bc: f64,
        #[arg(long, default_value_t = 1e-9)]
        noise: f64,
    },
    /// Run oracle cross-checks. Without `--suite`, runs all of them.
    Verify {
        #[arg(long, value_enum)]
        suite: Option<Suite>,
        #[arg(long, env = "OBOUND_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Proposition count for the polytope suite.
        #[arg(long, default_value_t = 8)]
        m: usize,
    },
    /// Check the conjunction polytope inequalities for `m` propositions.
    Polytope {
        #[arg(long)]
        m: usize,
    },
}

fn read_input(path: &Path) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load(path: &Path) -> anyhow::Result<(GraphDocument, OverlapGraph64)> {
    let (doc, warnings) = GraphDocument::parse(&read_input(path)?)?;
    for w in warnings {
        eprintln!("warning: {w}");
    }
    let g = doc.to_graph()?;
    if !g.is_connected() {
        eprintln!("warning: graph is disconnected; pairs across components stay [0, 1]");
    }
    Ok((doc, g))
}

fn print_json(v: &Value) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

fn interval_json(iv: Interval64) -> Value {
    json!([iv.lo(), iv.hi()])
}

fn infeasible_json(doc: &GraphDocument, err: &Infeasible64) -> Value {
    let w = &err.witness;
    json!({
        "status": "infeasible",
        "sweep": err.sweep,
        "witness": {
            "pair": [doc.label(w.pair.0), doc.label(w.pair.1)],
            "apex": doc.label(w.apex),
            "current": interval_json(w.current),
            "implied": interval_json(w.implied),
            "measured": w.measured,
        },
    })
}

fn cmd_infer(
    input: &Path,
    model: Model,
    max_iters: Option<usize>,
    tol: f64,
    format: Format,
    plot: Option<&Path>,
    plot_steps: usize,
) -> anyhow::Result<u8> {
    let (doc, g) = load(input)?;
    if tol.is_nan() || tol < 0.0 {
        anyhow::bail!("--tol must be non-negative");
    }
    if let Some(path) = plot {
        fs::write(path, output::plot_grid(model, plot_steps)).with_context(|| format!("writing {}", path.display()))?;
    }
    let mut opts = PropagationOptions::for_vertices(g.n());
    opts.change_tol = tol;
    if let Some(m) = max_iters {
        opts.max_iters = m;
    }
    let result = match complete_and_tighten(&g, model, opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            print_json(&infeasible_json(&doc, &e))?;
            return Ok(EXIT_INFEASIBLE);
        }
    };
    if !result.converged {
        eprintln!("warning: stopped after {} sweeps without converging", result.iterations);
    }
    let text = match format {
        Format::Json => {
            let mut metadata = doc.metadata.clone();
            metadata.insert("model".into(), model.to_string());
            metadata.insert("iterations".into(), result.iterations.to_string());
            metadata.insert("converged".into(), result.converged.to_string());
            metadata.insert("disconnected".into(), result.disconnected.to_string());
            let out = GraphDocument::from_graph(&result.complete, doc.labels.clone(), metadata);
            serde_json::to_string_pretty(&out)? + "\n"
        }
        Format::Csv => output::csv(&result.complete),
        Format::Dot => output::dot(&result.complete, &doc),
    };
    io::stdout().write_all(text.as_bytes())?;
    Ok(0)
}

fn cmd_classical(input: &Path, noise: f64) -> anyhow::Result<u8> {
    let (doc, g) = load(input)?;
    let map = classical_lower_map(&g);
    let bounds: Vec<Value> = overlap_bounds::all_pairs(g.n())
        .map(|(i, j)| {
            let bound = map.get(&pair_key(i, j)).copied().unwrap_or(0.0);
            let path = classical_chain(&g, i, j, false)
                .filter(|c| c.bound > 0.0)
                .map(|c| c.path.iter().map(|&v| doc.label(v)).collect::<Vec<_>>());
            json!({ "i": i, "j": j, "bound": bound, "path": path })
        })
        .collect();
    let verdict = classicality_check(&g, noise);
    let violations: Vec<Value> = verdict
        .violations()
        .iter()
        .map(|v| {
            json!({
                "inequality": v.inequality.to_string(),
                "target": [doc.label(v.target.0), doc.label(v.target.1)],
                "vertices": v.vertices.iter().map(|&x| doc.label(x)).collect::<Vec<_>>(),
                "bound": v.bound,
                "magnitude": v.magnitude,
            })
        })
        .collect();
    print_json(&json!({
        "classical": verdict.is_classical(),
        "lower_bounds": bounds,
        "violations": violations,
    }))?;
    Ok(if verdict.is_classical() { 0 } else { EXIT_VIOLATION })
}

fn cmd_witness_dim(r_ab: f64, r_ac: f64, r_bc: f64, noise: f64) -> anyhow::Result<u8> {
    let verdict = dimension_witness(r_ab, r_ac, r_bc, noise)?;
    println!("{verdict}");
    Ok(match verdict {
        DimensionVerdict::ConsistentWithQubits => 0,
        DimensionVerdict::RequiresDimensionAtLeast3 => EXIT_VIOLATION,
        DimensionVerdict::InfeasibleForPureStates => EXIT_INFEASIBLE,
    })
}

fn cmd_verify(suite: Option<Suite>, seed: u64, trials: usize, m: usize) -> anyhow::Result<u8> {
    let suites = match suite {
        Some(s) => vec![s],
        None => Suite::value_variants().to_vec(),
    };
    let mut all_passed = true;
    for s in suites {
        let report = verify::run(s, seed, trials, m)?;
        all_passed &= report.passed;
        eprintln!(
            "{} {} ({} cases, max error {:e})",
            if report.passed { "PASS" } else { "FAIL" },
            report.suite,
            report.cases,
            report.max_error
        );
        print_json(&serde_json::to_value(&report)?)?;
    }
    Ok(if all_passed { 0 } else { EXIT_VIOLATION })
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Infer {
            input,
            model,
            max_iters,
            tol,
            format,
            emit_plot_data,
            plot_steps,
        } => cmd_infer(&input, model.into(), max_iters, tol, format, emit_plot_data.as_deref(), plot_steps),
        Command::Classical { input, noise } => cmd_classical(&input, noise),
        Command::WitnessDim { r_ab, r_ac, r_bc, noise } => cmd_witness_dim(r_ab, r_ac, r_bc, noise),
        Command::Verify { suite, seed, trials, m } => cmd_verify(suite, seed, trials, m),
        Command::Polytope { m } => cmd_verify(Some(Suite::Polytope), 0, 0, m),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
