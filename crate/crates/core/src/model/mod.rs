//! Stick-breaking model of per-sample dependencies.
//!
//! The model treats the total `A = BC(target)` as the interval `(0, A)` cut
//! at `pieces - 1` uniform points; one sample's contribution is the length of
//! one sub-interval. For source sampling there are `n` pieces, for ordered
//! pair sampling `n(n-1)`. This gives
//!
//! ```text
//! P[X <= x] = 1 - (1 - x/A)^(pieces-1),    0 < x < A
//! E[X]      = A / pieces
//! E[X^2]    = 2 A^2 / (pieces (pieces+1))
//! Var[X]    = (pieces-1) A^2 / (pieces^2 (pieces+1))
//! ```
//!
//! The model is an assumption about real graphs, not a property of them; the
//! functions here exist so the formulas and the tail bounds built on them can
//! be checked numerically.

pub mod quad;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::sampling::rng_for;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    Vertex,
    Pair,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelDist {
    pub kind: ModelKind,
    /// Vertex count of the modelled graph.
    pub n: u64,
    /// Total mass `A`, the BC value being estimated.
    pub total: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub mean: f64,
    pub second_moment: f64,
    pub variance: f64,
}

impl ModelDist {
    pub fn new(kind: ModelKind, n: u64, total: f64) -> Result<Self> {
        if !(total.is_finite() && total > 0.0) {
            return Err(invalid(format!("total mass must be positive, got {total}")));
        }
        let min_n = match kind {
            ModelKind::Vertex => 1,
            ModelKind::Pair => 2,
        };
        if n < min_n {
            return Err(invalid(format!("{kind:?} model needs n >= {min_n}, got {n}")));
        }
        Ok(Self { kind, n, total })
    }

    pub fn vertex(n: u64, total: f64) -> Result<Self> {
        Self::new(ModelKind::Vertex, n, total)
    }

    pub fn pair(n: u64, total: f64) -> Result<Self> {
        Self::new(ModelKind::Pair, n, total)
    }

    /// Number of sub-intervals: `n` or `n(n-1)`.
    pub fn pieces(&self) -> u64 {
        match self.kind {
            ModelKind::Vertex => self.n,
            ModelKind::Pair => self.n * (self.n - 1),
        }
    }

    /// `t`-style hardness ratio: `n^2 / A` for vertices, `n^2 (n-1) / A` for
    /// pairs.
    pub fn hardness(&self) -> f64 {
        let n = self.n as f64;
        match self.kind {
            ModelKind::Vertex => n * n / self.total,
            ModelKind::Pair => n * n * (n - 1.0) / self.total,
        }
    }

    /// `P[X > x]`, computed directly so it keeps full relative precision in
    /// the upper tail.
    pub fn sf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            1.0
        } else if x >= self.total {
            0.0
        } else {
            let e = (self.pieces() - 1) as f64;
            (e * (-x / self.total).ln_1p()).exp()
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else if x >= self.total {
            1.0
        } else {
            let e = (self.pieces() - 1) as f64;
            -(e * (-x / self.total).ln_1p()).exp_m1()
        }
    }

    pub fn pdf(&self, x: f64) -> f64 {
        if x <= 0.0 || x >= self.total {
            return 0.0;
        }
        let p = self.pieces() as f64;
        if p < 2.0 {
            return 0.0;
        }
        (p - 1.0) / self.total * ((p - 2.0) * (-x / self.total).ln_1p()).exp()
    }

    pub fn moments(&self) -> Moments {
        let p = self.pieces() as f64;
        let a = self.total;
        Moments {
            mean: a / p,
            second_moment: 2.0 * a * a / (p * (p + 1.0)),
            variance: (p - 1.0) * a * a / (p * p * (p + 1.0)),
        }
    }

    /// One variate: the first piece of a fresh stick-breaking draw, i.e. the
    /// smallest of `pieces - 1` uniform cut points on `(0, A)`.
    pub fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        first_piece(self.pieces(), self.total, rng)
    }
}

/// Cuts `(0, total)` at `pieces - 1` uniform points and returns the lengths
/// of the resulting sub-intervals in left-to-right order. The last length is
/// `total` minus the final cut point.
pub fn stick_breaking_sample(pieces: usize, total: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
    assert!(pieces >= 1, "at least one piece");
    let mut cuts: Vec<f64> = (1..pieces).map(|_| total * rng.gen::<f64>()).collect();
    cuts.sort_unstable_by(f64::total_cmp);
    let mut lengths = Vec::with_capacity(pieces);
    let mut prev = 0.0;
    for &c in &cuts {
        lengths.push(c - prev);
        prev = c;
    }
    lengths.push(total - prev);
    lengths
}

/// Length of the leftmost sub-interval of a stick-breaking draw, without
/// sorting the cut points.
pub fn first_piece(pieces: u64, total: f64, rng: &mut ChaCha8Rng) -> f64 {
    let mut lowest = 1.0f64;
    for _ in 1..pieces {
        lowest = lowest.min(rng.gen::<f64>());
    }
    total * lowest
}

/// Kolmogorov–Smirnov distance between the empirical distribution of
/// `samples` and `cdf`. Sorts `samples` in place.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &mut [f64], cdf: F) -> f64 {
    samples.sort_unstable_by(f64::total_cmp);
    let n = samples.len() as f64;
    samples
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (((i + 1) as f64 / n) - f).max(f - i as f64 / n)
        })
        .fold(0.0, f64::max)
}

/// Bound on the probability that `k = epsilon * hardness^(2/3)` samples
/// already sum to at least `c * n`: `epsilon^3 / (c - epsilon)^2`. The same
/// form holds for both sampling schemes.
pub fn termination_bound(epsilon: f64, c: f64) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon < c && c.is_finite()) {
        return Err(invalid(format!("need 0 < epsilon < c, got epsilon={epsilon}, c={c}")));
    }
    let gap = c - epsilon;
    Ok(epsilon.powi(3) / (gap * gap))
}

/// Bound on `P[|scale * mean - A| >= d A]` once `k >= epsilon *
/// hardness^(2/3)`: `(1 / (epsilon d^2)) * (A / n^2)^(2/3)` for vertices and
/// `(1 / (epsilon d^2)) * (A / (n^2 (n-1)))^(2/3)` for pairs. Values above 1
/// are returned as is.
pub fn deviation_bound(epsilon: f64, d: f64, total: f64, n: u64, kind: ModelKind) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(invalid(format!("epsilon must be positive, got {epsilon}")));
    }
    if !(d > 0.0 && d.is_finite()) {
        return Err(invalid(format!("d must be positive, got {d}")));
    }
    let nf = n as f64;
    if !(total > 0.0 && total <= nf * nf) {
        return Err(invalid(format!("need 0 < A <= n^2, got A={total}, n={n}")));
    }
    let denom = match kind {
        ModelKind::Vertex => nf * nf,
        ModelKind::Pair => {
            if n < 2 {
                return Err(invalid("pair bound needs n >= 2"));
            }
            nf * nf * (nf - 1.0)
        }
    };
    let r = (total / denom).cbrt();
    Ok(r * r / (epsilon * d * d))
}

/// Empirical frequency of a Bernoulli event.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frequency {
    pub hits: u64,
    pub trials: u64,
}

impl Frequency {
    pub fn rate(&self) -> f64 {
        self.hits as f64 / self.trials as f64
    }

    pub fn std_error(&self) -> f64 {
        let p = self.rate();
        (p * (1.0 - p) / self.trials as f64).sqrt()
    }

    /// True when the observed rate is at most `bound` plus `sigmas` standard
    /// errors.
    pub fn within(&self, bound: f64, sigmas: f64) -> bool {
        self.rate() <= bound + sigmas * self.std_error()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StoppingConfig {
    pub c: f64,
    pub epsilon: f64,
    pub d: f64,
    pub runs: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StoppingReport {
    /// `floor(epsilon * hardness^(2/3))`: "terminating within k samples" is
    /// only possible for whole sample counts.
    pub k_termination: u64,
    /// `max(1, ceil(epsilon * hardness^(2/3)))`, the smallest admissible fixed
    /// sample count for the deviation event.
    pub k_deviation: u64,
    /// Runs whose `S > c n` stopping rule fired within `k_termination`.
    pub termination: Frequency,
    /// Runs with `|pieces * S_k / k - A| >= d A` at `k = k_deviation`.
    pub deviation: Frequency,
    pub termination_bound: f64,
    pub deviation_bound: f64,
    pub variate_mean: f64,
    pub variate_std_error: f64,
    pub variates: u64,
}

const RUNS_PER_SHARD: u64 = 4096;

/// Whole-sample versions of `epsilon * hardness^(2/3)`: rounded down for the
/// termination event and up (at least 1) for the deviation event. A relative
/// slack of 1e-9 absorbs rounding in the power, so `0.25 * 8^(2/3)` is 1.
pub fn sample_counts(epsilon: f64, hardness: f64) -> (u64, u64) {
    let r = hardness.cbrt();
    let k = epsilon * r * r;
    let slack = 1e-9 * k.max(1.0);
    ((k + slack).floor() as u64, ((k - slack).ceil() as u64).max(1))
}

/// Monte Carlo check of the stopping and deviation bounds under the model.
///
/// Runs are split into fixed shards, each with its own ChaCha stream derived
/// from `seed`, so the report does not depend on the thread count.
pub fn simulate_stopping(dist: &ModelDist, cfg: &StoppingConfig) -> Result<StoppingReport> {
    if cfg.runs == 0 {
        return Err(invalid("runs must be at least 1"));
    }
    let termination_bound = termination_bound(cfg.epsilon, cfg.c)?;
    let deviation_bound = deviation_bound(cfg.epsilon, cfg.d, dist.total, dist.n, dist.kind)?;

    let (k_termination, k_deviation) = sample_counts(cfg.epsilon, dist.hardness());
    let draws = k_termination.max(k_deviation);
    let threshold = cfg.c * dist.n as f64;
    let scale = dist.pieces() as f64;
    let total = dist.total;

    let shards = cfg.runs.div_ceil(RUNS_PER_SHARD);
    let tallies: Vec<[f64; 4]> = (0..shards)
        .into_par_iter()
        .map(|shard| {
            let mut rng = rng_for(cfg.seed);
            rng.set_stream(shard);
            let runs = RUNS_PER_SHARD.min(cfg.runs - shard * RUNS_PER_SHARD);
            let mut acc = [0.0; 4];
            for _ in 0..runs {
                let mut sum = 0.0;
                let mut stopped = false;
                let mut at_dev = 0.0;
                for i in 1..=draws {
                    let x = dist.sample(&mut rng);
                    acc[2] += x;
                    acc[3] += x * x;
                    sum += x;
                    if i <= k_termination && sum > threshold {
                        stopped = true;
                    }
                    if i == k_deviation {
                        at_dev = sum;
                    }
                }
                if stopped {
                    acc[0] += 1.0;
                }
                let estimate = scale * at_dev / k_deviation as f64;
                if (estimate - total).abs() >= cfg.d * total {
                    acc[1] += 1.0;
                }
            }
            acc
        })
        .collect();

    let mut acc = [0.0; 4];
    for t in tallies {
        for (a, b) in acc.iter_mut().zip(t) {
            *a += b;
        }
    }
    let variates = cfg.runs * draws;
    let vn = variates as f64;
    let variate_mean = acc[2] / vn;
    let var = (acc[3] / vn - variate_mean * variate_mean).max(0.0);
    Ok(StoppingReport {
        k_termination,
        k_deviation,
        termination: Frequency { hits: acc[0] as u64, trials: cfg.runs },
        deviation: Frequency { hits: acc[1] as u64, trials: cfg.runs },
        termination_bound,
        deviation_bound,
        variate_mean,
        variate_std_error: (var / vn).sqrt(),
        variates,
    })
}
