//! Adaptive source-vertex sampling.
//!
//! Each sample picks a source uniformly from all `n` vertices (the target
//! included, where it contributes zero), runs a complete search from it and
//! adds the source's dependency on the target to `S`. Sampling continues while
//! `S <= c * n` and the estimate is `n * S / k`.

use rand_chacha::ChaCha8Rng;

use crate::bfs::{bfs_sssp_into, BfsResult};
use crate::brandes::accumulate_into;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::sampling::{
    run_adaptive, run_fixed, success_lower_bound, uniform_index, validate_guarantee_inputs, Draw,
    EstimateRun, FixedRun, Guarantee, Method, Sampler, SamplerConfig, TraceEntry,
};

pub struct VertexSampler<'g> {
    g: &'g Graph,
    target: Vertex,
    bfs: BfsResult,
    delta: Vec<f64>,
}

impl<'g> VertexSampler<'g> {
    pub fn new(g: &'g Graph, target: Vertex) -> Result<Self> {
        if g.n() < 2 {
            return Err(Error::TooFewVertices(g.n()));
        }
        g.check_vertex(target)?;
        Ok(Self {
            g,
            target,
            bfs: BfsResult::with_capacity(g.n()),
            delta: vec![0.0; g.n()],
        })
    }

    /// Dependency of `source` on the target, with the number of vertices the
    /// search discovered.
    pub fn contribution(&mut self, source: Vertex) -> (f64, usize) {
        if source == self.target {
            return (0.0, 0);
        }
        bfs_sssp_into(self.g, source, &mut self.bfs);
        accumulate_into(&self.bfs, &mut self.delta);
        let value = self.delta[self.target];
        for &v in &self.bfs.order {
            self.delta[v] = 0.0;
        }
        (value, self.bfs.settled())
    }

    pub fn run(&mut self, cfg: &SamplerConfig) -> Result<EstimateRun> {
        run_adaptive(self, Method::Vertex, cfg)
    }

    /// Draws exactly `k` samples with no stopping rule.
    pub fn run_fixed(&mut self, k: u64, seed: u64) -> Result<FixedRun> {
        run_fixed(self, k, seed)
    }
}

impl Sampler for VertexSampler<'_> {
    fn n(&self) -> usize {
        self.g.n()
    }

    fn target(&self) -> Vertex {
        self.target
    }

    fn scale(&self) -> f64 {
        self.g.n() as f64
    }

    fn draw(&mut self, rng: &mut ChaCha8Rng) -> TraceEntry {
        let source = uniform_index(rng, self.g.n());
        let (contribution, settled) = self.contribution(source);
        TraceEntry { draw: Draw::Source(source), contribution, settled }
    }
}

/// Adaptive estimate of the BC of `target` by source-vertex sampling.
pub fn estimate_bc_vertex(g: &Graph, target: Vertex, cfg: &SamplerConfig) -> Result<EstimateRun> {
    VertexSampler::new(g, target)?.run(cfg)
}

/// Guarantee of the vertex estimator when `BC(target) = n^2 / t`: with
/// probability above `1 - (1 + 1/(2c-1)^2) * epsilon` the estimate is within
/// a factor `1 / (epsilon * t^(1/3))` after `epsilon * t^(2/3)` samples.
pub fn vertex_guarantee(epsilon: f64, t: f64, c: f64) -> Result<Guarantee> {
    validate_guarantee_inputs(epsilon, t, c)?;
    let cbrt_t = t.cbrt();
    Ok(Guarantee {
        success_prob_lb: success_lower_bound(epsilon, c),
        factor: 1.0 / (epsilon * cbrt_t),
        samples: epsilon * cbrt_t * cbrt_t,
    })
}
