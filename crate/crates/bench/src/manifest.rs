//! Run manifests: every input of an estimator invocation plus its outputs,
//! stored as JSON so the run can be re-executed and compared bit for bit.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use bcsample::{EstimateRun, Graph, Method, SamplerConfig};
use serde::{Deserialize, Serialize};

use crate::dataset::{dataset_name, load_graph};
use crate::error::{AppError, AppResult};
use crate::sweep::{estimate, run_sweep, SweepRecord, SweepSpec};

pub const TOOL_VERSION: &str = concat!("bcbench ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetInfo {
    pub path: PathBuf,
    pub name: String,
    pub n: usize,
    pub m: usize,
}

impl DatasetInfo {
    pub fn new(path: &Path, g: &Graph) -> Self {
        Self { path: path.to_owned(), name: dataset_name(path), n: g.n(), m: g.m() }
    }

    fn check(&self, g: &Graph) -> AppResult<()> {
        if (g.n(), g.m()) != (self.n, self.m) {
            return Err(AppError::data(format!(
                "{} now has n={}, m={}; the manifest recorded n={}, m={}",
                self.path.display(),
                g.n(),
                g.m(),
                self.n,
                self.m
            )));
        }
        Ok(())
    }
}

/// One adaptive estimator run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub dataset: DatasetInfo,
    /// Original vertex ID.
    pub target: u64,
    #[serde(with = "crate::method_text")]
    pub method: Method,
    pub c: f64,
    pub seed: u64,
    pub max_samples: Option<u64>,
    pub estimate: f64,
    pub k: u64,
    pub sum: f64,
    pub capped: bool,
    pub settled: u64,
    pub wall_time_secs: f64,
}

/// One c-sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepManifest {
    pub tool_version: String,
    pub dataset: DatasetInfo,
    pub target: u64,
    pub exact_bc: f64,
    #[serde(with = "crate::method_text")]
    pub method: Method,
    pub grid: Vec<f64>,
    pub replications: u64,
    pub seed_base: u64,
    pub max_samples: Option<u64>,
    pub records: Vec<SweepRecord>,
    pub wall_time_secs: f64,
}

impl SweepManifest {
    pub fn spec(&self) -> SweepSpec {
        SweepSpec {
            method: self.method,
            grid: self.grid.clone(),
            replications: self.replications,
            seed_base: self.seed_base,
            max_samples: self.max_samples,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Manifest {
    Estimate(RunManifest),
    Sweep(SweepManifest),
}

impl Manifest {
    pub fn save(&self, path: &Path) -> AppResult<()> {
        let json = serde_json::to_string_pretty(self)?;
        fs::write(path, json + "\n").map_err(|e| AppError::from(e).context(format!("writing {}", path.display())))
    }

    pub fn load(path: &Path) -> AppResult<Self> {
        let text =
            fs::read_to_string(path).map_err(|e| AppError::from(e).context(format!("reading {}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| AppError::from(e).context(format!("parsing {}", path.display())))
    }

    pub fn dataset(&self) -> &DatasetInfo {
        match self {
            Manifest::Estimate(m) => &m.dataset,
            Manifest::Sweep(m) => &m.dataset,
        }
    }
}

/// Runs one estimate and records it.
pub fn run_estimate(
    g: &Graph,
    dataset: DatasetInfo,
    target: u64,
    method: Method,
    cfg: &SamplerConfig,
) -> AppResult<(EstimateRun, RunManifest)> {
    let v = g.index_of(target).ok_or_else(|| AppError::data(format!("target {target} is not in the graph")))?;
    let start = Instant::now();
    let run = estimate(g, v, method, cfg)?;
    let manifest = RunManifest {
        tool_version: TOOL_VERSION.to_owned(),
        dataset,
        target,
        method,
        c: cfg.c,
        seed: cfg.seed,
        max_samples: cfg.max_samples,
        estimate: run.estimate,
        k: run.k,
        sum: run.sum,
        capped: run.capped,
        settled: run.settled,
        wall_time_secs: start.elapsed().as_secs_f64(),
    };
    Ok((run, manifest))
}

/// Outcome of re-executing a manifest.
#[derive(Debug, Clone, PartialEq)]
pub struct Replay {
    pub identical: bool,
    /// Human-readable list of differing outputs, empty when identical.
    pub differences: Vec<String>,
}

fn same_bits(name: &str, recorded: f64, now: f64, diffs: &mut Vec<String>) {
    if recorded.to_bits() != now.to_bits() {
        diffs.push(format!("{name}: recorded {recorded:?}, replayed {now:?}"));
    }
}

/// Re-executes a manifest against an already loaded graph.
pub fn replay_with_graph(manifest: &Manifest, g: &Graph) -> AppResult<Replay> {
    manifest.dataset().check(g)?;
    let mut diffs = Vec::new();
    match manifest {
        Manifest::Estimate(m) => {
            let cfg = SamplerConfig { c: m.c, seed: m.seed, max_samples: m.max_samples, record_trace: false };
            let (run, _) = run_estimate(g, m.dataset.clone(), m.target, m.method, &cfg)?;
            same_bits("estimate", m.estimate, run.estimate, &mut diffs);
            same_bits("sum", m.sum, run.sum, &mut diffs);
            if (m.k, m.capped, m.settled) != (run.k, run.capped, run.settled) {
                diffs.push(format!(
                    "k/capped/settled: recorded {:?}, replayed {:?}",
                    (m.k, m.capped, m.settled),
                    (run.k, run.capped, run.settled)
                ));
            }
        }
        Manifest::Sweep(m) => {
            let v = g.index_of(m.target).ok_or_else(|| AppError::data(format!("target {} is not in the graph", m.target)))?;
            let sweep = run_sweep(g, v, m.exact_bc, &m.dataset.name, &m.spec())?;
            if sweep.records.len() != m.records.len() {
                diffs.push(format!("{} grid points recorded, {} replayed", m.records.len(), sweep.records.len()));
            }
            for (a, b) in m.records.iter().zip(&sweep.records) {
                same_bits(&format!("c={} mean_k", a.c), a.mean_k, b.mean_k, &mut diffs);
                same_bits(&format!("c={} mean_factor_diff", a.c), a.mean_factor_diff, b.mean_factor_diff, &mut diffs);
            }
        }
    }
    Ok(Replay { identical: diffs.is_empty(), differences: diffs })
}

/// Loads the manifest's dataset and re-executes it.
pub fn replay(manifest: &Manifest) -> AppResult<Replay> {
    let g = load_graph(&manifest.dataset().path)?;
    replay_with_graph(manifest, &g)
}
