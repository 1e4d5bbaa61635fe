use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use bcsample::{brandes_bc, fixtures, Method, SamplerConfig};
use bcsample_bench::cost::{compare_cost, write_cost_csv};
use bcsample_bench::dataset::{exact_bc, load_graph, resolve_target};
use bcsample_bench::manifest::{replay, run_estimate, DatasetInfo, Manifest, SweepManifest, TOOL_VERSION};
use bcsample_bench::model_check::{run_model_check, write_check_csv, ClosedForms, Corrupted, Formula, Formulas, ModelCheckConfig};
use bcsample_bench::sweep::{c_grid, run_sweep, write_runs_csv, write_sweep_csv, SweepSpec};
use bcsample_bench::{AppError, AppResult};
use clap::{Args, Parser, Subcommand};

/// Exact and adaptive-sampling betweenness centrality experiments.
#[derive(Parser)]
#[command(name = "bcbench", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact BC of every vertex as `vertex_id,bc` CSV.
    Exact {
        #[arg(long)]
        dataset: PathBuf,
        /// Output CSV; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mean sample count and factor difference over a grid of c values.
    Sweep(SweepArgs),
    /// Compare quadrature, Monte Carlo and closed forms of the model.
    ModelCheck {
        /// Simulated runs per stopping-rule configuration.
        #[arg(long, default_value_t = 2000)]
        runs: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Draws per Kolmogorov–Smirnov and Monte Carlo moment row.
        #[arg(long, default_value_t = 1_000_000)]
        ks_samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Deliberately break one formula to exercise the failure path.
        #[arg(long, hide = true, value_enum)]
        corrupt: Option<Formula>,
    },
    /// Vertices settled per sample by both methods at the same c.
    CompareCost {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 2.0)]
        c: f64,
        #[arg(long, default_value_t = 10)]
        reps: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        max_samples: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One adaptive estimate, optionally recorded as a replayable manifest.
    Estimate {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "vertex")]
        method: Method,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        max_samples: Option<u64>,
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Re-execute a manifest and compare its outputs bit for bit.
    Replay { manifest: PathBuf },
}

#[derive(Args)]
struct InputArgs {
    /// SNAP edge list, plain or gzip.
    #[arg(long)]
    dataset: PathBuf,
    /// Original vertex ID; defaults to the vertex with the highest exact BC.
    #[arg(long)]
    target: Option<u64>,
    /// `vertex_id,bc` CSV from `bcbench exact`, used instead of recomputing.
    #[arg(long)]
    exact_csv: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value = "vertex")]
    method: Method,
    #[arg(long, default_value_t = 1.0)]
    c_min: f64,
    #[arg(long, default_value_t = 5.0)]
    c_max: f64,
    #[arg(long, default_value_t = 0.5)]
    c_step: f64,
    #[arg(long, default_value_t = 10)]
    reps: u64,
    /// Seed of replication 0; replication i uses seed + i.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    max_samples: Option<u64>,
    /// Sweep CSV; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Per-run CSV with the seed of every run.
    #[arg(long)]
    runs_out: Option<PathBuf>,
    /// Manifest path; defaults to `<out>.manifest.json` when --out is given.
    #[arg(long)]
    manifest: Option<PathBuf>,
}

fn output(path: Option<&Path>) -> AppResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| AppError::from(e).context(format!("creating {}", p.display())))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn exact(dataset: &Path, out: Option<&Path>) -> AppResult<()> {
    let g = load_graph(dataset)?;
    let start = Instant::now();
    let bc = brandes_bc(&g);
    let secs = start.elapsed().as_secs_f64();
    bc.write_csv(&g, output(out)?)?;
    eprintln!("n={} m={} wall_time={secs:.3}s", g.n(), g.m());
    Ok(())
}

fn sweep(args: SweepArgs) -> AppResult<()> {
    let grid = c_grid(args.c_min, args.c_max, args.c_step)?;
    let g = load_graph(&args.input.dataset)?;
    let bc = exact_bc(&g, args.input.exact_csv.as_deref())?;
    let t = resolve_target(&g, &bc, args.input.target)?;
    let info = DatasetInfo::new(&args.input.dataset, &g);
    let spec = SweepSpec {
        method: args.method,
        grid,
        replications: args.reps,
        seed_base: args.seed,
        max_samples: args.max_samples,
    };
    let start = Instant::now();
    let result = run_sweep(&g, t, bc.bc[t], &info.name, &spec)?;
    let secs = start.elapsed().as_secs_f64();

    write_sweep_csv(&result.records, output(args.out.as_deref())?)?;
    if let Some(p) = &args.runs_out {
        write_runs_csv(&result.runs, output(Some(p))?)?;
    }
    let manifest_path = args.manifest.or_else(|| args.out.as_ref().map(|o| o.with_extension("manifest.json")));
    if let Some(p) = manifest_path {
        let m = SweepManifest {
            tool_version: TOOL_VERSION.to_owned(),
            dataset: info,
            target: g.original_id(t),
            exact_bc: bc.bc[t],
            method: spec.method,
            grid: spec.grid,
            replications: spec.replications,
            seed_base: spec.seed_base,
            max_samples: spec.max_samples,
            records: result.records,
            wall_time_secs: secs,
        };
        Manifest::Sweep(m).save(&p)?;
    }
    eprintln!("target={} exact_bc={} wall_time={secs:.3}s", g.original_id(t), bc.bc[t]);
    Ok(())
}

fn model_check(cfg: ModelCheckConfig, out: Option<&Path>, corrupt: Option<Formula>) -> AppResult<()> {
    let formulas: Box<dyn Formulas> = match corrupt {
        Some(f) => Box::new(Corrupted(f)),
        None => Box::new(ClosedForms),
    };
    let start = Instant::now();
    let rows = run_model_check(formulas.as_ref(), &cfg)?;
    write_check_csv(&rows, output(out)?)?;
    let failed: Vec<_> = rows.iter().filter(|r| !r.pass).collect();
    eprintln!("{} rows, {} failed, wall_time={:.3}s", rows.len(), failed.len(), start.elapsed().as_secs_f64());
    if failed.is_empty() {
        Ok(())
    } else {
        let names: Vec<_> = failed.iter().take(5).map(|r| format!("{} ({})", r.formula, r.params)).collect();
        Err(AppError::model_check(format!("{} model checks failed: {}", failed.len(), names.join("; "))))
    }
}

fn run(cli: Cli) -> AppResult<()> {
    match cli.command {
        Command::Exact { dataset, out } => exact(&dataset, out.as_deref()),
        Command::Sweep(args) => sweep(args),
        Command::ModelCheck { runs, seed, ks_samples, out, corrupt } => {
            if runs == 0 || ks_samples == 0 {
                return Err(AppError::usage("--runs and --ks-samples must be positive"));
            }
            let fixture = fixtures::random32();
            let fixture_total = brandes_bc(&fixture).bc.into_iter().fold(0.0, f64::max);
            model_check(ModelCheckConfig { runs, seed, ks_samples, fixture_total }, out.as_deref(), corrupt)
        }
        Command::CompareCost { input, c, reps, seed, max_samples, out } => {
            let g = load_graph(&input.dataset)?;
            let bc = exact_bc(&g, input.exact_csv.as_deref())?;
            let t = resolve_target(&g, &bc, input.target)?;
            let report = compare_cost(&g, t, c, reps, seed, max_samples)?;
            write_cost_csv(&report, output(out.as_deref())?)?;
            eprintln!(
                "target={} vertex_wall_time={:.3}s pair_wall_time={:.3}s cheaper={}",
                g.original_id(t),
                report.wall_secs[0],
                report.wall_secs[1],
                report.cheaper_method()
            );
            Ok(())
        }
        Command::Estimate { input, method, c, seed, max_samples, manifest } => {
            let g = load_graph(&input.dataset)?;
            let target = match input.target {
                Some(id) => id,
                None => {
                    let bc = exact_bc(&g, input.exact_csv.as_deref())?;
                    g.original_id(resolve_target(&g, &bc, None)?)
                }
            };
            let cfg = SamplerConfig { c, seed, max_samples, record_trace: false };
            let (run, m) = run_estimate(&g, DatasetInfo::new(&input.dataset, &g), target, method, &cfg)?;
            println!("target={target} method={method} estimate={} k={} sum={} capped={}", run.estimate, run.k, run.sum, run.capped);
            if let Some(p) = manifest {
                Manifest::Estimate(m).save(&p)?;
            }
            Ok(())
        }
        Command::Replay { manifest } => {
            let m = Manifest::load(&manifest)?;
            let r = replay(&m)?;
            if r.identical {
                println!("identical");
                Ok(())
            } else {
                Err(AppError::data(format!("replay differs: {}", r.differences.join("; "))))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
