//! Numerical checks of the stick-breaking model formulas.
//!
//! Every closed form is compared with an independent computation: adaptive
//! quadrature of the density, Monte Carlo draws from the stick-breaking
//! process, hand-computed bound values, or the simulated stopping rule. The
//! formulas are reached through [`Formulas`] so a deliberately wrong set can
//! be substituted to exercise the failure path.

use std::io::Write;

use bcsample::model::quad::integrate;
use bcsample::model::{
    first_piece, ks_statistic, simulate_stopping, stick_breaking_sample, ModelDist, ModelKind, Moments,
    StoppingConfig,
};
use bcsample::rng_for;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::AppResult;

/// The closed forms under test. Defaults are the library's formulas.
pub trait Formulas: Sync {
    fn cdf(&self, d: &ModelDist, x: f64) -> f64 {
        d.cdf(x)
    }

    fn pdf(&self, d: &ModelDist, x: f64) -> f64 {
        d.pdf(x)
    }

    fn moments(&self, d: &ModelDist) -> Moments {
        d.moments()
    }

    fn termination_bound(&self, epsilon: f64, c: f64) -> f64 {
        bcsample::model::termination_bound(epsilon, c).expect("grid parameters are valid")
    }

    fn deviation_bound(&self, epsilon: f64, d: f64, total: f64, n: u64, kind: ModelKind) -> f64 {
        bcsample::model::deviation_bound(epsilon, d, total, n, kind).expect("grid parameters are valid")
    }
}

pub struct ClosedForms;

impl Formulas for ClosedForms {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Formula {
    Cdf,
    Pdf,
    Mean,
    SecondMoment,
    TerminationBound,
    DeviationBound,
}

/// Scales one formula by 1%, leaving the others intact.
pub struct Corrupted(pub Formula);

const CORRUPTION: f64 = 1.01;

impl Formulas for Corrupted {
    fn cdf(&self, d: &ModelDist, x: f64) -> f64 {
        d.cdf(x) * if self.0 == Formula::Cdf { CORRUPTION } else { 1.0 }
    }

    fn pdf(&self, d: &ModelDist, x: f64) -> f64 {
        d.pdf(x) * if self.0 == Formula::Pdf { CORRUPTION } else { 1.0 }
    }

    fn moments(&self, d: &ModelDist) -> Moments {
        let mut m = d.moments();
        match self.0 {
            Formula::Mean => m.mean *= CORRUPTION,
            Formula::SecondMoment => m.second_moment *= CORRUPTION,
            _ => {}
        }
        m.variance = m.second_moment - m.mean * m.mean;
        m
    }

    fn termination_bound(&self, epsilon: f64, c: f64) -> f64 {
        ClosedForms.termination_bound(epsilon, c) * if self.0 == Formula::TerminationBound { CORRUPTION } else { 1.0 }
    }

    fn deviation_bound(&self, epsilon: f64, d: f64, total: f64, n: u64, kind: ModelKind) -> f64 {
        ClosedForms.deviation_bound(epsilon, d, total, n, kind)
            * if self.0 == Formula::DeviationBound { CORRUPTION } else { 1.0 }
    }
}

/// One line of the report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRow {
    pub formula: String,
    pub params: String,
    /// Seed of the random stream behind `empirical`; 0 for deterministic rows.
    pub seed: u64,
    pub analytic: f64,
    pub empirical: f64,
    pub std_error: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelCheckConfig {
    /// Simulated runs per stopping-rule configuration.
    pub runs: u64,
    pub seed: u64,
    /// Variates per Kolmogorov–Smirnov and moment row.
    pub ks_samples: usize,
    /// Total mass used for the 32-vertex stopping rows; typically the
    /// largest exact BC of the 32-vertex fixture.
    pub fixture_total: f64,
}

impl Default for ModelCheckConfig {
    fn default() -> Self {
        Self { runs: 2000, seed: 0, ks_samples: 1_000_000, fixture_total: 218.0 }
    }
}

pub const QUAD_REL_TOL: f64 = 1e-6;
pub const KS_TOL: f64 = 0.005;
pub const STICK_CDF_TOL: f64 = 0.002;

fn dist_label(d: &ModelDist) -> String {
    let kind = match d.kind {
        ModelKind::Vertex => "vertex",
        ModelKind::Pair => "pair",
    };
    format!("{kind} n={} A={}", d.n, d.total)
}

fn rel_row(formula: &str, params: String, analytic: f64, empirical: f64) -> CheckRow {
    CheckRow {
        formula: formula.to_owned(),
        params,
        seed: 0,
        analytic,
        empirical,
        std_error: 0.0,
        pass: (analytic - empirical).abs() <= QUAD_REL_TOL * analytic.abs(),
    }
}

fn quadrature_dists() -> Vec<ModelDist> {
    let mk = |kind, n, a| ModelDist::new(kind, n, a).expect("valid grid");
    vec![
        mk(ModelKind::Vertex, 2, 1.0),
        mk(ModelKind::Vertex, 3, 1.0),
        mk(ModelKind::Vertex, 10, 7.5),
        mk(ModelKind::Vertex, 100, 250.0),
        mk(ModelKind::Vertex, 4039, 1.0e5),
        mk(ModelKind::Vertex, 10670, 3.0e6),
        mk(ModelKind::Pair, 2, 1.0),
        mk(ModelKind::Pair, 5, 3.0),
        mk(ModelKind::Pair, 32, 218.0),
        mk(ModelKind::Pair, 200, 5000.0),
    ]
}

/// Integral of `g` over `(0, upper)` for a model density. With many pieces
/// nearly all mass sits within a few means of zero, a spike a single
/// quadrature panel over `(0, A)` can miss, so the range is split at `mean *
/// 2^j` and each segment integrated separately.
fn integrate_model<G: Fn(f64) -> f64>(g: G, d: &ModelDist, upper: f64) -> f64 {
    let mut total = 0.0_f64;
    let mut lo = 0.0;
    let mut hi = d.total / d.pieces() as f64;
    while lo < upper {
        let b = hi.min(upper);
        total += integrate(&g, lo, b, 1e-14 * total.abs(), 1e-12).value;
        lo = b;
        hi *= 2.0;
    }
    total
}

fn quadrature_rows(f: &dyn Formulas) -> Vec<CheckRow> {
    let mut rows = Vec::new();
    for d in quadrature_dists() {
        let a = d.total;
        let label = dist_label(&d);
        let pdf = |x: f64| f.pdf(&d, x);
        let m = f.moments(&d);

        let mass = integrate_model(pdf, &d, a);
        rows.push(rel_row("pdf_mass", label.clone(), 1.0, mass));
        let mean = integrate_model(|x| x * pdf(x), &d, a);
        rows.push(rel_row("mean", label.clone(), m.mean, mean));
        let second = integrate_model(|x| x * x * pdf(x), &d, a);
        rows.push(rel_row("second_moment", label.clone(), m.second_moment, second));
        rows.push(rel_row("variance", label.clone(), m.variance, second - mean * mean));

        // Quantiles 0.1, 0.5, 0.9 of the model, from the inverse cdf.
        let e = (d.pieces() - 1) as f64;
        for q in [0.1, 0.5, 0.9] {
            let x = -a * ((1.0_f64 - q).ln() / e).exp_m1();
            let integral = integrate_model(pdf, &d, x);
            rows.push(rel_row("cdf", format!("{label} x={x:.6e}"), f.cdf(&d, x), integral));
        }
    }
    rows
}

fn monte_carlo_rows(f: &dyn Formulas, cfg: &ModelCheckConfig) -> Vec<CheckRow> {
    let pieces = [2u64, 3, 10, 100];
    let mut rows: Vec<CheckRow> = pieces
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, &p)| {
            let seed = cfg.seed.wrapping_add(i as u64);
            let d = ModelDist::vertex(p, 1.0).expect("valid grid");
            let mut rng = rng_for(seed);
            let mut xs: Vec<f64> = (0..cfg.ks_samples).map(|_| first_piece(p, 1.0, &mut rng)).collect();
            let n = xs.len() as f64;
            let m1 = xs.iter().sum::<f64>() / n;
            let m2 = xs.iter().map(|x| x * x).sum::<f64>() / n;
            let se1 = ((m2 - m1 * m1) / n).sqrt();
            let m4 = xs.iter().map(|x| x.powi(4)).sum::<f64>() / n;
            let se2 = ((m4 - m2 * m2) / n).sqrt();
            let ks = ks_statistic(&mut xs, |x| f.cdf(&d, x));
            let m = f.moments(&d);
            let label = format!("pieces={p} A=1 draws={}", cfg.ks_samples);
            vec![
                CheckRow {
                    formula: "ks_first_piece".into(),
                    params: label.clone(),
                    seed,
                    analytic: 0.0,
                    empirical: ks,
                    std_error: 0.0,
                    pass: ks < KS_TOL,
                },
                CheckRow {
                    formula: "mc_mean".into(),
                    params: label.clone(),
                    seed,
                    analytic: m.mean,
                    empirical: m1,
                    std_error: se1,
                    pass: (m1 - m.mean).abs() <= 3.0 * se1,
                },
                CheckRow {
                    formula: "mc_second_moment".into(),
                    params: label,
                    seed,
                    analytic: m.second_moment,
                    empirical: m2,
                    std_error: se2,
                    pass: (m2 - m.second_moment).abs() <= 3.0 * se2,
                },
            ]
        })
        .collect();

    // Every piece of a stick-breaking draw has the same law: check the middle
    // one of three at x = A/2, where the cdf is 3/4.
    let seed = cfg.seed.wrapping_add(pieces.len() as u64);
    let mut rng = rng_for(seed);
    let d = ModelDist::vertex(3, 1.0).expect("valid grid");
    let draws = cfg.ks_samples;
    let hits = (0..draws).filter(|_| stick_breaking_sample(3, 1.0, &mut rng)[1] <= 0.5).count();
    let rate = hits as f64 / draws as f64;
    let analytic = f.cdf(&d, 0.5);
    rows.push(CheckRow {
        formula: "stick_cdf".into(),
        params: format!("pieces=3 A=1 x=0.5 piece=2 draws={draws}"),
        seed,
        analytic,
        empirical: rate,
        std_error: (rate * (1.0 - rate) / draws as f64).sqrt(),
        pass: (rate - analytic).abs() <= STICK_CDF_TOL,
    });
    rows
}

fn exact_row(formula: &str, params: &str, analytic: f64, expected: f64) -> CheckRow {
    CheckRow {
        formula: formula.to_owned(),
        params: params.to_owned(),
        seed: 0,
        analytic,
        empirical: expected,
        std_error: 0.0,
        pass: analytic == expected,
    }
}

fn hand_value_rows(f: &dyn Formulas) -> Vec<CheckRow> {
    vec![
        exact_row("termination_bound", "eps=0.25 c=1", f.termination_bound(0.25, 1.0), 1.0 / 36.0),
        exact_row("termination_bound", "eps=0.5 c=1", f.termination_bound(0.5, 1.0), 0.5),
        exact_row("termination_bound", "eps=0.25 c=2.25", f.termination_bound(0.25, 2.25), 1.0 / 256.0),
        exact_row(
            "deviation_bound",
            "vertex eps=0.5 d=1 A=8 n=8",
            f.deviation_bound(0.5, 1.0, 8.0, 8, ModelKind::Vertex),
            0.5,
        ),
        exact_row(
            "deviation_bound",
            "vertex eps=0.25 d=2 A=16 n=4",
            f.deviation_bound(0.25, 2.0, 16.0, 4, ModelKind::Vertex),
            1.0,
        ),
        exact_row(
            "deviation_bound",
            "pair eps=0.5 d=1 A=4 n=2",
            f.deviation_bound(0.5, 1.0, 4.0, 2, ModelKind::Pair),
            2.0,
        ),
        exact_row(
            "deviation_bound",
            "pair eps=0.5 d=2 A=0.5 n=2",
            f.deviation_bound(0.5, 2.0, 0.5, 2, ModelKind::Pair),
            0.125,
        ),
    ]
}

/// Distributions and parameters of the simulated stopping rows.
pub fn stopping_grid(fixture_total: f64) -> Vec<(ModelDist, f64, f64, f64)> {
    let mut grid = Vec::new();
    for dist in [
        ModelDist::vertex(32, fixture_total),
        ModelDist::pair(32, fixture_total),
        ModelDist::vertex(32, 60.0),
        ModelDist::pair(32, 60.0),
        ModelDist::vertex(1000, 2000.0),
    ] {
        let dist = dist.expect("valid grid");
        for c in [1.0, 2.0] {
            for epsilon in [0.1, 0.25, 0.4] {
                for d in [0.5, 1.0] {
                    grid.push((dist, c, epsilon, d));
                }
            }
        }
    }
    grid
}

fn stopping_rows(f: &dyn Formulas, cfg: &ModelCheckConfig) -> AppResult<Vec<CheckRow>> {
    let mut rows = Vec::new();
    for (i, (dist, c, epsilon, d)) in stopping_grid(cfg.fixture_total).into_iter().enumerate() {
        let seed = cfg.seed.wrapping_add(1000 + i as u64);
        let r = simulate_stopping(&dist, &StoppingConfig { c, epsilon, d, runs: cfg.runs, seed })?;
        let label = format!("{} c={c} eps={epsilon} d={d} runs={}", dist_label(&dist), cfg.runs);
        let tb = f.termination_bound(epsilon, c);
        rows.push(CheckRow {
            formula: "termination_freq".into(),
            params: format!("{label} k={}", r.k_termination),
            seed,
            analytic: tb,
            empirical: r.termination.rate(),
            std_error: r.termination.std_error(),
            pass: r.termination.within(tb, 3.0),
        });
        let db = f.deviation_bound(epsilon, d, dist.total, dist.n, dist.kind);
        rows.push(CheckRow {
            formula: "deviation_freq".into(),
            params: format!("{label} k={}", r.k_deviation),
            seed,
            analytic: db,
            empirical: r.deviation.rate(),
            std_error: r.deviation.std_error(),
            pass: r.deviation.within(db, 3.0),
        });
    }
    Ok(rows)
}

/// Runs every check. The caller decides what a failing row means.
pub fn run_model_check(f: &dyn Formulas, cfg: &ModelCheckConfig) -> AppResult<Vec<CheckRow>> {
    let mut rows = quadrature_rows(f);
    rows.extend(hand_value_rows(f));
    rows.extend(monte_carlo_rows(f, cfg));
    rows.extend(stopping_rows(f, cfg)?);
    Ok(rows)
}

pub fn write_check_csv<W: Write>(rows: &[CheckRow], out: W) -> AppResult<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
