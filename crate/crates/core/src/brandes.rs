//! Exact betweenness centrality (Brandes) and the exact per-source and
//! per-pair quantities that the samplers estimate.

use std::io::Write;

use rayon::prelude::*;

use crate::bfs::{bfs_sssp_into, bfs_until_into, BfsResult};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Dependencies of one source on every vertex: `delta[v]` is the sum over
/// targets `t` of the fraction of shortest `source`-`t` paths through `v`.
#[derive(Debug, Clone, PartialEq)]
pub struct DependencyVector {
    pub source: Vertex,
    pub delta: Vec<f64>,
}

/// Exact BC of every vertex, summed over ordered pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct BcVector {
    pub bc: Vec<f64>,
}

impl BcVector {
    /// Vertex with the largest BC; ties go to the smallest index.
    pub fn argmax(&self) -> Option<Vertex> {
        let mut best: Option<(Vertex, f64)> = None;
        for (v, &x) in self.bc.iter().enumerate() {
            if best.is_none_or(|(_, b)| x > b) {
                best = Some((v, x));
            }
        }
        best.map(|(v, _)| v)
    }

    /// `vertex_id,bc` rows using original vertex IDs.
    pub fn write_csv<W: Write>(&self, g: &Graph, mut out: W) -> Result<()> {
        writeln!(out, "vertex_id,bc")?;
        for (v, x) in self.bc.iter().enumerate() {
            writeln!(out, "{},{}", g.original_id(v), x)?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Back-propagates dependencies over a complete search, visiting vertices in
/// decreasing distance from the source.
pub fn accumulate_dependencies(b: &BfsResult) -> Result<DependencyVector> {
    if b.is_truncated() {
        return Err(Error::TruncatedSearch);
    }
    let mut delta = vec![0.0; b.dist.len()];
    accumulate_into(b, &mut delta);
    Ok(DependencyVector { source: b.source, delta })
}

/// Adds the dependencies of `b.source` into `delta`, which must be zero on
/// every vertex reached by `b`. The source entry is left at zero.
pub(crate) fn accumulate_into(b: &BfsResult, delta: &mut [f64]) {
    for &w in b.order.iter().rev() {
        let coeff = (1.0 + delta[w]) / b.sigma[w];
        for &p in &b.preds[w] {
            delta[p] += b.sigma[p] * coeff;
        }
    }
    delta[b.source] = 0.0;
}

const SOURCES_PER_CHUNK: usize = 32;

/// Exact BC for all vertices in `O(nm)` time.
///
/// Sources are processed in parallel in fixed-size chunks whose partial sums
/// are added in chunk order, so the result does not depend on scheduling.
pub fn brandes_bc(g: &Graph) -> BcVector {
    let n = g.n();
    let sources: Vec<Vertex> = (0..n).collect();
    let partials: Vec<Vec<f64>> = sources
        .par_chunks(SOURCES_PER_CHUNK)
        .map(|chunk| {
            let mut bfs = BfsResult::with_capacity(n);
            let mut delta = vec![0.0; n];
            let mut acc = vec![0.0; n];
            for &s in chunk {
                bfs_sssp_into(g, s, &mut bfs);
                accumulate_into(&bfs, &mut delta);
                for &v in &bfs.order {
                    acc[v] += delta[v];
                    delta[v] = 0.0;
                }
            }
            acc
        })
        .collect();

    let mut bc = vec![0.0; n];
    for part in partials {
        for (total, x) in bc.iter_mut().zip(part) {
            *total += x;
        }
    }
    BcVector { bc }
}

/// Outcome of evaluating one ordered pair against the target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairSample {
    pub u: Vertex,
    pub v: Vertex,
    /// Fraction of shortest `u`-`v` paths that pass through the target.
    pub contribution: f64,
    /// Vertices discovered by the search from `u`.
    pub bfs_cost: usize,
}

/// Fraction of shortest `u`-`v` paths passing through `t = from_t.source`.
///
/// `from_t` must be a complete search from `t`. Zero when `t` is an endpoint,
/// when `u` and `v` are disconnected, or when `t` lies on no shortest path.
pub fn pair_dependency(g: &Graph, u: Vertex, v: Vertex, from_t: &BfsResult) -> Result<f64> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(Error::SameEndpoints(u));
    }
    if from_t.is_truncated() {
        return Err(Error::TruncatedSearch);
    }
    let mut scratch = BfsResult::with_capacity(g.n());
    Ok(pair_sample_with(g, u, v, from_t, &mut scratch).contribution)
}

/// Evaluates the pair with a search from `u` that stops once the level of
/// `v` is settled, never going deeper than `d(u,t) + d(t,v)`.
///
/// The undirected graph gives `sigma(u,t) = sigma(t,u)`, so every count
/// involving `t` comes from `from_t`; only `d(u,v)` and `sigma(u,v)` need the
/// search.
pub(crate) fn pair_sample_with(
    g: &Graph,
    u: Vertex,
    v: Vertex,
    from_t: &BfsResult,
    scratch: &mut BfsResult,
) -> PairSample {
    let t = from_t.source;
    let zero = PairSample { u, v, contribution: 0.0, bfs_cost: 0 };
    if t == u || t == v {
        return zero;
    }
    let (Some(dtu), Some(dtv)) = (from_t.dist[u], from_t.dist[v]) else {
        return zero;
    };
    let through_t = dtu + dtv;
    bfs_until_into(g, u, v, Some(through_t), scratch);
    let cost = scratch.settled();
    let duv = scratch.dist[v].expect("a path through t bounds d(u,v)");
    let contribution = if duv == through_t {
        from_t.sigma[u] * from_t.sigma[v] / scratch.sigma[v]
    } else {
        0.0
    };
    PairSample { u, v, contribution, bfs_cost: cost }
}
