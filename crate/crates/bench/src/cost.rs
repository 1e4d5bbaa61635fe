//! Per-sample search cost of the two estimators at equal `c`.

use std::io::Write;
use std::time::Instant;

use bcsample::{Graph, Method, SamplerConfig, Vertex};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{AppError, AppResult};
use crate::sweep::estimate;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CostRow {
    #[serde(serialize_with = "crate::method_text::serialize")]
    pub method: Method,
    pub c: f64,
    pub replications: u64,
    pub seed_base: u64,
    pub mean_k: f64,
    pub total_settled: u64,
    /// Vertices discovered per sample, averaged over every sample of every
    /// replication.
    pub mean_settled_per_sample: f64,
    pub cheaper: bool,
}

#[derive(Debug, Clone)]
pub struct CostReport {
    /// Vertex row first, then pair.
    pub rows: [CostRow; 2],
    /// Wall time of each method's replications, in seconds. Kept out of the
    /// CSV so reruns produce identical files.
    pub wall_secs: [f64; 2],
}

impl CostReport {
    pub fn cheaper_method(&self) -> Method {
        if self.rows[1].cheaper {
            Method::Pair
        } else {
            Method::Vertex
        }
    }
}

pub fn compare_cost(
    g: &Graph,
    target: Vertex,
    c: f64,
    replications: u64,
    seed_base: u64,
    max_samples: Option<u64>,
) -> AppResult<CostReport> {
    if replications == 0 {
        return Err(AppError::usage("replications must be at least 1"));
    }
    let measure = |method: Method| -> AppResult<(CostRow, f64)> {
        let start = Instant::now();
        let runs = (0..replications)
            .into_par_iter()
            .map(|i| {
                let mut cfg = SamplerConfig::new(c, seed_base.wrapping_add(i));
                cfg.max_samples = max_samples;
                estimate(g, target, method, &cfg)
            })
            .collect::<bcsample::Result<Vec<_>>>()?;
        let wall = start.elapsed().as_secs_f64();
        let total_k: u64 = runs.iter().map(|r| r.k).sum();
        let total_settled: u64 = runs.iter().map(|r| r.settled).sum();
        let row = CostRow {
            method,
            c,
            replications,
            seed_base,
            mean_k: total_k as f64 / replications as f64,
            total_settled,
            mean_settled_per_sample: total_settled as f64 / total_k as f64,
            cheaper: false,
        };
        Ok((row, wall))
    };
    let (mut vertex, wv) = measure(Method::Vertex)?;
    let (mut pair, wp) = measure(Method::Pair)?;
    if pair.mean_settled_per_sample < vertex.mean_settled_per_sample {
        pair.cheaper = true;
    } else {
        vertex.cheaper = true;
    }
    Ok(CostReport { rows: [vertex, pair], wall_secs: [wv, wp] })
}

pub fn write_cost_csv<W: Write>(report: &CostReport, out: W) -> AppResult<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in &report.rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use bcsample::{brandes_bc, fixtures};

    #[test]
    fn path_pairs_settle_at_most_three() {
        let g = fixtures::path(3);
        let r = compare_cost(&g, 1, 1.0, 5, 0, None).unwrap();
        assert!(r.rows[1].mean_settled_per_sample <= 3.0);
        assert_eq!(r.rows[0].method, Method::Vertex);
        assert_eq!(r.rows.iter().filter(|r| r.cheaper).count(), 1);
    }

    #[test]
    fn pairs_cheaper_on_random32() {
        let g = fixtures::random32();
        let t = brandes_bc(&g).argmax().unwrap();
        let r = compare_cost(&g, t, 2.0, 10, 0, None).unwrap();
        assert_eq!(r.cheaper_method(), Method::Pair);
        assert!(r.rows[0].mean_settled_per_sample <= 32.0);
    }

    #[test]
    fn csv_is_deterministic() {
        let g = fixtures::random32();
        let csv = || {
            let mut buf = Vec::new();
            write_cost_csv(&compare_cost(&g, 3, 1.5, 4, 9, None).unwrap(), &mut buf).unwrap();
            String::from_utf8(buf).unwrap()
        };
        let a = csv();
        assert!(a.starts_with("method,c,replications,seed_base,mean_k,total_settled,mean_settled_per_sample,cheaper\n"));
        assert_eq!(a, csv());
    }
}
