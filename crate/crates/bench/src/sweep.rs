//! c-sweeps: repeated seeded estimator runs against the exact value.
//!
//! Replication `i` of every grid point uses seed `seed_base + i`. Runs are
//! spread over the rayon pool and collected in grid order, so the output does
//! not depend on the thread count.

use std::io::Write;

use bcsample::{EstimateRun, Graph, Method, PairSampler, SamplerConfig, Vertex, VertexSampler};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{AppError, AppResult};

/// Runs one adaptive estimate with the chosen method.
pub fn estimate(g: &Graph, target: Vertex, method: Method, cfg: &SamplerConfig) -> bcsample::Result<EstimateRun> {
    match method {
        Method::Vertex => VertexSampler::new(g, target)?.run(cfg),
        Method::Pair => PairSampler::new(g, target)?.run(cfg),
    }
}

/// `min, min + step, ...` up to and including `max` (with a little slack for
/// rounding in the step).
pub fn c_grid(min: f64, max: f64, step: f64) -> AppResult<Vec<f64>> {
    if !(min.is_finite() && max.is_finite() && step.is_finite()) || min < 1.0 || max < min || step <= 0.0 {
        return Err(AppError::usage(format!(
            "need 1 <= c-min <= c-max and c-step > 0, got {min}, {max}, {step}"
        )));
    }
    let count = ((max - min) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| min + i as f64 * step).collect())
}

/// `|estimate - exact| / exact`.
pub fn factor_diff(estimate: f64, exact: f64) -> f64 {
    (estimate - exact).abs() / exact
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    #[serde(with = "crate::method_text")]
    pub method: Method,
    pub grid: Vec<f64>,
    pub replications: u64,
    pub seed_base: u64,
    pub max_samples: Option<u64>,
}

/// One grid point, averaged over replications.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub dataset: String,
    /// Original vertex ID of the target.
    pub target: u64,
    pub c: f64,
    pub mean_k: f64,
    pub mean_factor_diff: f64,
    pub replications: u64,
    pub seed_base: u64,
}

impl SweepRecord {
    pub fn inv_factor_diff(&self) -> f64 {
        1.0 / self.mean_factor_diff
    }
}

/// One estimator run inside a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub c: f64,
    pub replication: u64,
    pub seed: u64,
    pub k: u64,
    pub sum: f64,
    pub estimate: f64,
    pub factor_diff: f64,
    pub capped: bool,
    pub settled: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub records: Vec<SweepRecord>,
    pub runs: Vec<RunRecord>,
}

pub fn run_sweep(g: &Graph, target: Vertex, exact: f64, dataset: &str, spec: &SweepSpec) -> AppResult<Sweep> {
    if !(exact > 0.0) {
        return Err(AppError::data(format!(
            "target {} has zero exact BC, so the factor difference is undefined",
            g.original_id(target)
        )));
    }
    if spec.replications == 0 {
        return Err(AppError::usage("replications must be at least 1"));
    }
    let tasks: Vec<(f64, u64)> =
        spec.grid.iter().flat_map(|&c| (0..spec.replications).map(move |i| (c, i))).collect();
    let runs = tasks
        .par_iter()
        .map(|&(c, i)| {
            let seed = spec.seed_base.wrapping_add(i);
            let mut cfg = SamplerConfig::new(c, seed);
            cfg.max_samples = spec.max_samples;
            let run = estimate(g, target, spec.method, &cfg)?;
            Ok(RunRecord {
                c,
                replication: i,
                seed,
                k: run.k,
                sum: run.sum,
                estimate: run.estimate,
                factor_diff: factor_diff(run.estimate, exact),
                capped: run.capped,
                settled: run.settled,
            })
        })
        .collect::<bcsample::Result<Vec<_>>>()?;

    let reps = spec.replications as usize;
    let records = spec
        .grid
        .iter()
        .zip(runs.chunks(reps))
        .map(|(&c, chunk)| SweepRecord {
            dataset: dataset.to_owned(),
            target: g.original_id(target),
            c,
            mean_k: chunk.iter().map(|r| r.k as f64).sum::<f64>() / reps as f64,
            mean_factor_diff: chunk.iter().map(|r| r.factor_diff).sum::<f64>() / reps as f64,
            replications: spec.replications,
            seed_base: spec.seed_base,
        })
        .collect();
    Ok(Sweep { records, runs })
}

pub const SWEEP_HEADER: [&str; 4] = ["c", "mean_k", "mean_factor_diff", "inv_factor_diff"];

/// The sweep table with the fixed header `c,mean_k,mean_factor_diff,inv_factor_diff`.
pub fn write_sweep_csv<W: Write>(records: &[SweepRecord], out: W) -> AppResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_HEADER)?;
    for r in records {
        w.write_record([
            r.c.to_string(),
            r.mean_k.to_string(),
            r.mean_factor_diff.to_string(),
            r.inv_factor_diff().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Per-run table; each row carries the seed that regenerates it.
pub fn write_runs_csv<W: Write>(runs: &[RunRecord], out: W) -> AppResult<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in runs {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use bcsample::{brandes_bc, fixtures};

    #[test]
    fn default_grid_has_nine_points() {
        let g = c_grid(1.0, 5.0, 0.5).unwrap();
        assert_eq!(g.len(), 9);
        assert_eq!(g[8], 5.0);
        assert_eq!(c_grid(1.0, 1.0, 0.5).unwrap(), vec![1.0]);
        assert_eq!(c_grid(1.0, 1.3, 0.1).unwrap().len(), 4);
        assert!(c_grid(0.5, 2.0, 0.5).is_err());
        assert!(c_grid(1.0, 2.0, 0.0).is_err());
        assert!(c_grid(3.0, 2.0, 0.5).is_err());
    }

    #[test]
    fn sweep_rows_follow_grid_and_seeds() {
        let g = fixtures::random32();
        let bc = brandes_bc(&g);
        let t = bc.argmax().unwrap();
        let spec = SweepSpec {
            method: Method::Vertex,
            grid: vec![1.0, 2.0],
            replications: 3,
            seed_base: 40,
            max_samples: None,
        };
        let s = run_sweep(&g, t, bc.bc[t], "random32", &spec).unwrap();
        assert_eq!(s.records.len(), 2);
        let seeds: Vec<_> = s.runs.iter().map(|r| (r.c, r.seed)).collect();
        assert_eq!(seeds, vec![(1.0, 40), (1.0, 41), (1.0, 42), (2.0, 40), (2.0, 41), (2.0, 42)]);
        let mean_k = s.runs[..3].iter().map(|r| r.k as f64).sum::<f64>() / 3.0;
        assert_eq!(s.records[0].mean_k, mean_k);
        assert_eq!(s, run_sweep(&g, t, bc.bc[t], "random32", &spec).unwrap());
    }

    #[test]
    fn zero_exact_refused() {
        let g = fixtures::path(3);
        let spec = SweepSpec { method: Method::Pair, grid: vec![1.0], replications: 1, seed_base: 0, max_samples: None };
        assert_eq!(run_sweep(&g, 0, 0.0, "p", &spec).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn csv_header_is_fixed() {
        let rec = SweepRecord {
            dataset: "d".into(),
            target: 1,
            c: 1.5,
            mean_k: 10.0,
            mean_factor_diff: 0.25,
            replications: 10,
            seed_base: 0,
        };
        let mut buf = Vec::new();
        write_sweep_csv(&[rec], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "c,mean_k,mean_factor_diff,inv_factor_diff\n1.5,10,0.25,4\n");
    }
}
