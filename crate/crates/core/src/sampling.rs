//! Shared adaptive sampling loop and run records.
//!
//! Both estimators draw i.i.d. samples with nonnegative contributions and
//! accumulate their sum `S`. The adaptive rule keeps drawing while
//! `S <= c * n` and then reports `scale * S / k`, where `scale` is `n` for
//! source-vertex sampling and `n(n-1)` for ordered-pair sampling.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};
use crate::graph::Vertex;

/// Which estimator produced a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Vertex,
    Pair,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Vertex => "vertex",
            Method::Pair => "pair",
        })
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "vertex" => Ok(Method::Vertex),
            "pair" => Ok(Method::Pair),
            other => Err(format!("unknown method {other:?} (expected vertex or pair)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SamplerConfig {
    /// Threshold multiplier; sampling stops once `S > c * n`. Must be >= 1.
    pub c: f64,
    pub seed: u64,
    /// Sample cap. `None` means `n^2`.
    pub max_samples: Option<u64>,
    pub record_trace: bool,
}

impl SamplerConfig {
    pub fn new(c: f64, seed: u64) -> Self {
        Self { c, seed, max_samples: None, record_trace: false }
    }

    pub fn with_max_samples(mut self, max: u64) -> Self {
        self.max_samples = Some(max);
        self
    }

    pub fn with_trace(mut self) -> Self {
        self.record_trace = true;
        self
    }
}

/// A single sampled item.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Draw {
    Source(Vertex),
    Pair(Vertex, Vertex),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceEntry {
    pub draw: Draw,
    pub contribution: f64,
    /// Vertices discovered by the search(es) this sample needed.
    pub settled: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimateRun {
    pub method: Method,
    pub target: Vertex,
    pub n: usize,
    pub estimate: f64,
    pub k: u64,
    pub sum: f64,
    pub c: f64,
    pub seed: u64,
    pub max_samples: u64,
    /// True when the cap was reached before `S` exceeded `c * n`.
    pub capped: bool,
    /// Total vertices discovered by all searches of the run.
    pub settled: u64,
    pub trace: Option<Vec<TraceEntry>>,
}

/// Result of drawing a fixed number of samples with no stopping rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedRun {
    pub k: u64,
    pub sum: f64,
    pub estimate: f64,
    pub settled: u64,
}

/// Closed-form guarantee of an adaptive estimator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Guarantee {
    /// Lower bound on the probability of a successful estimate.
    pub success_prob_lb: f64,
    /// The estimate is within this factor of the true value.
    pub factor: f64,
    /// Number of samples the guarantee is stated for.
    pub samples: f64,
}

pub(crate) trait Sampler {
    fn n(&self) -> usize;
    fn target(&self) -> Vertex;
    /// Multiplier turning the sample mean into a BC estimate.
    fn scale(&self) -> f64;
    fn draw(&mut self, rng: &mut ChaCha8Rng) -> TraceEntry;
}

pub(crate) fn validate_c(c: f64) -> Result<()> {
    if c.is_finite() && c >= 1.0 {
        Ok(())
    } else {
        Err(invalid(format!("c must be a finite value >= 1, got {c}")))
    }
}

/// The generator behind every seeded run in this crate.
pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform index in `0..bound` drawn through `u64` so that the stream does
/// not depend on the platform word size.
#[inline]
pub(crate) fn uniform_index(rng: &mut ChaCha8Rng, bound: usize) -> usize {
    rng.gen_range(0..bound as u64) as usize
}

pub(crate) fn run_adaptive<S: Sampler>(
    sampler: &mut S,
    method: Method,
    cfg: &SamplerConfig,
) -> Result<EstimateRun> {
    validate_c(cfg.c)?;
    let n = sampler.n();
    let max_samples = cfg.max_samples.unwrap_or_else(|| (n as u64).saturating_mul(n as u64));
    if max_samples == 0 {
        return Err(invalid("max_samples must be at least 1"));
    }

    let threshold = cfg.c * n as f64;
    let mut rng = rng_for(cfg.seed);
    let mut trace = cfg.record_trace.then(Vec::new);
    let mut sum = 0.0;
    let mut k = 0u64;
    let mut settled = 0u64;
    let mut capped = false;
    while sum <= threshold {
        if k == max_samples {
            capped = true;
            break;
        }
        let entry = sampler.draw(&mut rng);
        sum += entry.contribution;
        k += 1;
        settled += entry.settled as u64;
        if let Some(t) = trace.as_mut() {
            t.push(entry);
        }
    }

    Ok(EstimateRun {
        method,
        target: sampler.target(),
        n,
        estimate: sampler.scale() * sum / k as f64,
        k,
        sum,
        c: cfg.c,
        seed: cfg.seed,
        max_samples,
        capped,
        settled,
        trace,
    })
}

pub(crate) fn run_fixed<S: Sampler>(sampler: &mut S, k: u64, seed: u64) -> Result<FixedRun> {
    if k == 0 {
        return Err(invalid("fixed sample count must be at least 1"));
    }
    let mut rng = rng_for(seed);
    let mut sum = 0.0;
    let mut settled = 0u64;
    for _ in 0..k {
        let entry = sampler.draw(&mut rng);
        sum += entry.contribution;
        settled += entry.settled as u64;
    }
    Ok(FixedRun { k, sum, estimate: sampler.scale() * sum / k as f64, settled })
}

pub(crate) fn validate_guarantee_inputs(epsilon: f64, t: f64, c: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(invalid(format!("epsilon must lie in (0, 1/2), got {epsilon}")));
    }
    if !(t.is_finite() && t >= 1.0) {
        return Err(invalid(format!("t must be a finite value >= 1, got {t}")));
    }
    validate_c(c)
}

/// `1 - (1 + 1/(2c-1)^2) * epsilon`, shared by both estimators.
pub(crate) fn success_lower_bound(epsilon: f64, c: f64) -> f64 {
    let m = 2.0 * c - 1.0;
    1.0 - (1.0 + 1.0 / (m * m)) * epsilon
}
