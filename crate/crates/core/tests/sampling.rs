use bcsample::bfs::bfs_until;
use bcsample::model::{deviation_bound, sample_counts, termination_bound, ModelKind};
use bcsample::{
    bfs_sssp, brandes_bc, fixtures, oracle, Draw, Graph, PairSampler, SamplerConfig, VertexSampler,
};

fn small_graphs() -> Vec<Graph> {
    let mut out = vec![
        fixtures::path(3),
        fixtures::path(6),
        fixtures::star(3),
        fixtures::cycle(4),
        fixtures::cycle(7),
        fixtures::complete(5),
    ];
    for seed in 0..40 {
        out.push(fixtures::gnp(3 + seed % 6, 0.45, seed));
    }
    out
}

/// Every per-source contribution, in source order.
fn vertex_population(g: &Graph, t: usize) -> Vec<f64> {
    let mut s = VertexSampler::new(g, t).unwrap();
    (0..g.n()).map(|src| s.contribution(src).0).collect()
}

/// Every ordered-pair contribution.
fn pair_population(g: &Graph, t: usize) -> Vec<f64> {
    let mut s = PairSampler::new(g, t).unwrap();
    let mut out = Vec::new();
    for u in 0..g.n() {
        for v in 0..g.n() {
            if u != v {
                out.push(s.sample(u, v).unwrap().contribution);
            }
        }
    }
    out
}

fn mean_var(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    (mean, xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n)
}

#[test]
fn population_means_reproduce_exact_bc() {
    for g in small_graphs() {
        if g.n() < 2 {
            continue;
        }
        let n = g.n() as f64;
        let bc = brandes_bc(&g).bc;
        for t in 0..g.n() {
            let (mv, _) = mean_var(&vertex_population(&g, t));
            let (mp, _) = mean_var(&pair_population(&g, t));
            assert!((n * mv - bc[t]).abs() <= 1e-9 * bc[t].max(1.0), "vertex mean, t={t}");
            assert!((n * (n - 1.0) * mp - bc[t]).abs() <= 1e-9 * bc[t].max(1.0), "pair mean, t={t}");
        }
    }
}

#[test]
fn pair_contributions_match_enumeration() {
    for g in small_graphs().into_iter().filter(|g| g.n() <= 8) {
        for t in 0..g.n() {
            let mut s = PairSampler::new(&g, t).unwrap();
            for u in 0..g.n() {
                for v in 0..g.n() {
                    if u == v {
                        continue;
                    }
                    let got = s.sample(u, v).unwrap().contribution;
                    let want = if t == u || t == v { 0.0 } else { oracle::pair_dependency(&g, u, v, t) };
                    assert!((got - want).abs() < 1e-12, "t={t} ({u},{v}): {got} vs {want}");
                }
            }
        }
    }
}

#[test]
fn early_stopped_search_agrees_with_full_search() {
    for g in small_graphs() {
        for u in 0..g.n() {
            let full = bfs_sssp(&g, u);
            for v in 0..g.n() {
                let part = bfs_until(&g, u, v, None);
                assert_eq!(part.dist[v], full.dist[v]);
                if full.dist[v].is_some() {
                    assert_eq!(part.sigma[v], full.sigma[v]);
                }
                assert!(part.settled() <= full.settled());
            }
        }
    }
}

#[test]
fn contributions_lie_in_range() {
    let g = fixtures::random32();
    let n = g.n() as f64;
    let t = brandes_bc(&g).argmax().unwrap();
    for seed in 0..20 {
        let cfg = SamplerConfig::new(2.0, seed).with_trace();
        let run = VertexSampler::new(&g, t).unwrap().run(&cfg).unwrap();
        for e in run.trace.unwrap() {
            assert!((0.0..=n - 2.0).contains(&e.contribution));
            if e.draw == Draw::Source(t) {
                assert_eq!(e.contribution, 0.0);
            }
        }
        let run = PairSampler::new(&g, t).unwrap().run(&cfg).unwrap();
        for e in run.trace.unwrap() {
            assert!((0.0..=1.0).contains(&e.contribution));
            let Draw::Pair(u, v) = e.draw else { panic!("pair sampler drew a source") };
            assert_ne!(u, v);
        }
    }
}

#[test]
fn runs_are_deterministic_per_seed() {
    let g = fixtures::random32();
    let t = brandes_bc(&g).argmax().unwrap();
    for seed in [0, 1, 99, u64::MAX] {
        let cfg = SamplerConfig::new(1.5, seed).with_trace();
        let a = VertexSampler::new(&g, t).unwrap().run(&cfg).unwrap();
        let b = VertexSampler::new(&g, t).unwrap().run(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.estimate.to_bits(), b.estimate.to_bits());
        let a = PairSampler::new(&g, t).unwrap().run(&cfg).unwrap();
        let b = PairSampler::new(&g, t).unwrap().run(&cfg).unwrap();
        assert_eq!(a, b);
    }
    let a = VertexSampler::new(&g, t).unwrap().run(&SamplerConfig::new(1.5, 1)).unwrap();
    let b = VertexSampler::new(&g, t).unwrap().run(&SamplerConfig::new(1.5, 2)).unwrap();
    assert_ne!((a.k, a.sum.to_bits()), (b.k, b.sum.to_bits()));
}

#[test]
fn fixed_size_estimates_are_unbiased() {
    let g = fixtures::random32();
    let bc = brandes_bc(&g).bc;
    let n = g.n() as f64;
    let runs = 10_000u64;
    for t in [0, 3, 17] {
        let a = bc[t];
        for (scale, pop, k) in [
            (n, vertex_population(&g, t), 5u64),
            (n * (n - 1.0), pair_population(&g, t), 40u64),
        ] {
            let (_, var) = mean_var(&pop);
            let se = scale * (var / (k * runs) as f64).sqrt();
            let mean = if scale == n {
                let mut s = VertexSampler::new(&g, t).unwrap();
                (0..runs).map(|seed| s.run_fixed(k, seed).unwrap().estimate).sum::<f64>()
            } else {
                let mut s = PairSampler::new(&g, t).unwrap();
                (0..runs).map(|seed| s.run_fixed(k, seed).unwrap().estimate).sum::<f64>()
            } / runs as f64;
            assert!((mean - a).abs() <= 3.0 * se, "t={t} scale={scale}: {mean} vs {a} (se {se})");
        }
    }
}

fn frequency_ok(hits: u64, runs: u64, bound: f64) -> bool {
    let p = hits as f64 / runs as f64;
    p <= bound + 3.0 * (p * (1.0 - p) / runs as f64).sqrt()
}

const RUNS: u64 = 2_000;

/// Early termination: the adaptive run stops within `floor(eps * t^(2/3))`
/// samples no more often than `eps^3 / (c - eps)^2`.
#[test]
fn early_termination_is_rare() {
    let g = fixtures::random32();
    let bc = brandes_bc(&g).bc;
    let n = g.n() as f64;
    let t = brandes_bc(&g).argmax().unwrap();
    let a = bc[t];
    for &c in &[1.0, 1.5, 2.0] {
        for &eps in &[0.1, 0.25, 0.4] {
            let bound = termination_bound(eps, c).unwrap();
            let (kv, _) = sample_counts(eps, n * n / a);
            let (kp, _) = sample_counts(eps, n * n * (n - 1.0) / a);
            let mut vs = VertexSampler::new(&g, t).unwrap();
            let mut ps = PairSampler::new(&g, t).unwrap();
            let (mut hv, mut hp) = (0, 0);
            for seed in 0..RUNS {
                let run = vs.run(&SamplerConfig::new(c, seed)).unwrap();
                hv += u64::from(!run.capped && run.k <= kv);
                let run = ps.run(&SamplerConfig::new(c, seed)).unwrap();
                hp += u64::from(!run.capped && run.k <= kp);
            }
            assert!(frequency_ok(hv, RUNS, bound), "vertex c={c} eps={eps}: {hv}/{RUNS} vs {bound}");
            assert!(frequency_ok(hp, RUNS, bound), "pair c={c} eps={eps}: {hp}/{RUNS} vs {bound}");
        }
    }
}

/// Vertex sampling meets the closed-form deviation bound; both samplers meet
/// Chebyshev's inequality with the exact population variance.
#[test]
fn large_deviations_are_rare() {
    let g = fixtures::random32();
    let bc = brandes_bc(&g).bc;
    let n = g.n() as f64;
    let t = brandes_bc(&g).argmax().unwrap();
    let a = bc[t];
    let (_, var_v) = mean_var(&vertex_population(&g, t));
    let (_, var_p) = mean_var(&pair_population(&g, t));
    for &eps in &[0.1, 0.25, 0.4] {
        for &d in &[0.5, 1.0, 2.0] {
            let (_, kv) = sample_counts(eps, n * n / a);
            let (_, kp) = sample_counts(eps, n * n * (n - 1.0) / a);
            let mut vs = VertexSampler::new(&g, t).unwrap();
            let mut ps = PairSampler::new(&g, t).unwrap();
            let (mut hv, mut hp) = (0, 0);
            for seed in 0..RUNS {
                hv += u64::from((vs.run_fixed(kv, seed).unwrap().estimate - a).abs() >= d * a);
                hp += u64::from((ps.run_fixed(kp, seed).unwrap().estimate - a).abs() >= d * a);
            }
            let closed = deviation_bound(eps, d, a, g.n() as u64, ModelKind::Vertex).unwrap();
            assert!(frequency_ok(hv, RUNS, closed), "vertex eps={eps} d={d}: {hv}/{RUNS} vs {closed}");
            let cheb_v = n * n * var_v / (kv as f64 * (d * a).powi(2));
            assert!(frequency_ok(hv, RUNS, cheb_v));
            let cheb_p = (n * (n - 1.0)).powi(2) * var_p / (kp as f64 * (d * a).powi(2));
            assert!(frequency_ok(hp, RUNS, cheb_p), "pair eps={eps} d={d}: {hp}/{RUNS} vs {cheb_p}");
        }
    }
}
