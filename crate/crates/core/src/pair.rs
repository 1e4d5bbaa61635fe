//! Adaptive ordered-pair sampling.
//!
//! One complete search from the target is done up front. Each sample then
//! draws an ordered pair `(u, v)`, `u != v`, uniformly from all `n(n-1)`
//! pairs and adds the fraction of shortest `u`-`v` paths through the target.
//! The search from `u` stops as soon as the level holding `v` is settled, so a
//! sample is usually much cheaper than a full single-source search. Pairs
//! with the target as an endpoint contribute zero but still count toward `k`.

use rand_chacha::ChaCha8Rng;

use crate::bfs::{bfs_sssp, BfsResult};
use crate::brandes::{pair_sample_with, PairSample};
use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, Vertex};
use crate::sampling::{
    run_adaptive, run_fixed, success_lower_bound, uniform_index, validate_guarantee_inputs, Draw,
    EstimateRun, FixedRun, Guarantee, Method, Sampler, SamplerConfig, TraceEntry,
};

pub struct PairSampler<'g> {
    g: &'g Graph,
    from_target: BfsResult,
    scratch: BfsResult,
}

impl<'g> PairSampler<'g> {
    pub fn new(g: &'g Graph, target: Vertex) -> Result<Self> {
        if g.n() < 2 {
            return Err(Error::TooFewVertices(g.n()));
        }
        g.check_vertex(target)?;
        Ok(Self {
            g,
            from_target: bfs_sssp(g, target),
            scratch: BfsResult::with_capacity(g.n()),
        })
    }

    pub fn target(&self) -> Vertex {
        self.from_target.source
    }

    /// Evaluates one ordered pair.
    pub fn sample(&mut self, u: Vertex, v: Vertex) -> Result<PairSample> {
        self.g.check_vertex(u)?;
        self.g.check_vertex(v)?;
        if u == v {
            return Err(Error::SameEndpoints(u));
        }
        Ok(pair_sample_with(self.g, u, v, &self.from_target, &mut self.scratch))
    }

    pub fn run(&mut self, cfg: &SamplerConfig) -> Result<EstimateRun> {
        run_adaptive(self, Method::Pair, cfg)
    }

    /// Draws exactly `k` samples with no stopping rule.
    pub fn run_fixed(&mut self, k: u64, seed: u64) -> Result<FixedRun> {
        run_fixed(self, k, seed)
    }
}

/// Maps an index in `0..n(n-1)` to the ordered pair it enumerates.
fn pair_from_index(index: usize, n: usize) -> (Vertex, Vertex) {
    let u = index / (n - 1);
    let r = index % (n - 1);
    (u, if r >= u { r + 1 } else { r })
}

impl Sampler for PairSampler<'_> {
    fn n(&self) -> usize {
        self.g.n()
    }

    fn target(&self) -> Vertex {
        self.from_target.source
    }

    fn scale(&self) -> f64 {
        let n = self.g.n() as f64;
        n * (n - 1.0)
    }

    fn draw(&mut self, rng: &mut ChaCha8Rng) -> TraceEntry {
        let n = self.g.n();
        let (u, v) = pair_from_index(uniform_index(rng, n * (n - 1)), n);
        let s = pair_sample_with(self.g, u, v, &self.from_target, &mut self.scratch);
        TraceEntry { draw: Draw::Pair(u, v), contribution: s.contribution, settled: s.bfs_cost }
    }
}

/// Adaptive estimate of the BC of `target` by ordered-pair sampling.
pub fn estimate_bc_pair(g: &Graph, target: Vertex, cfg: &SamplerConfig) -> Result<EstimateRun> {
    PairSampler::new(g, target)?.run(cfg)
}

/// Guarantee of the pair estimator when `BC(target) = n^2 / t`: with
/// probability above `1 - (1 + 1/(2c-1)^2) * epsilon` the estimate is within
/// a factor `(1/epsilon) * (1 / (t(n-1)))^(1/3)` after
/// `epsilon * t^(2/3) * (n-1)^(1/3)` samples.
///
/// That sample count is the stated one. It is smaller, by a factor
/// `(n-1)^(1/3)`, than the `epsilon * (n^2 (n-1) / A)^(2/3)` used by
/// [`crate::model::sample_counts`] for the pair model's tail bounds.
pub fn pair_guarantee(epsilon: f64, t: f64, n: u64, c: f64) -> Result<Guarantee> {
    validate_guarantee_inputs(epsilon, t, c)?;
    if n < 2 {
        return Err(invalid(format!("n must be at least 2, got {n}")));
    }
    let m = (n - 1) as f64;
    Ok(Guarantee {
        success_prob_lb: success_lower_bound(epsilon, c),
        factor: (1.0 / (t * m)).cbrt() / epsilon,
        samples: epsilon * t.cbrt().powi(2) * m.cbrt(),
    })
}
