use bcsample::bfs::{bfs_sssp, bfs_truncated, bfs_until};
use bcsample::{fixtures, oracle, parse_edge_list, Graph};
use proptest::prelude::*;

fn small_graphs() -> impl Iterator<Item = Graph> {
    (2..=8u64).flat_map(|n| {
        [0.2, 0.35, 0.5, 0.7]
            .into_iter()
            .flat_map(move |p| (0..6).map(move |seed| fixtures::gnp(n, p, seed * 131 + n)))
    })
}

#[test]
fn fixture_counts_match_enumeration() {
    // 4-cycle from 0: two shortest paths reach vertex 2.
    let c4 = fixtures::cycle(4);
    let brute = oracle::distances_and_counts(&c4, 0);
    assert_eq!(brute, vec![(Some(0), 1), (Some(1), 1), (Some(2), 2), (Some(1), 1)]);
    let b = bfs_sssp(&c4, 0);
    for v in 0..4 {
        assert_eq!(b.dist[v], brute[v].0);
        assert_eq!(b.sigma[v], brute[v].1 as f64);
    }
    assert_eq!(bfs_truncated(&c4, 0, 2).sigma[2], 2.0);
}

#[test]
fn sigma_matches_enumeration_on_small_graphs() {
    for g in small_graphs() {
        for s in 0..g.n() {
            let b = bfs_sssp(&g, s);
            let brute = oracle::distances_and_counts(&g, s);
            for v in 0..g.n() {
                assert_eq!(b.dist[v], brute[v].0, "dist s={s} v={v}");
                assert_eq!(b.sigma[v], brute[v].1 as f64, "sigma s={s} v={v}");
            }
        }
    }
}

#[test]
fn predecessor_structure() {
    for g in small_graphs() {
        for s in 0..g.n() {
            let b = bfs_sssp(&g, s);
            assert_eq!(b.dist[s], Some(0));
            assert_eq!(b.sigma[s], 1.0);
            assert!(b.order.windows(2).all(|w| b.dist[w[0]] <= b.dist[w[1]]));
            for v in 0..g.n() {
                for &t in &b.preds[v] {
                    assert!(g.has_edge(t, v));
                    assert_eq!(b.dist[t].map(|d| d + 1), b.dist[v]);
                }
                if v != s && b.dist[v].is_some() {
                    let resum: f64 = b.preds[v].iter().map(|&t| b.sigma[t]).sum();
                    assert_eq!(resum, b.sigma[v]);
                }
                if b.dist[v].is_none() {
                    assert_eq!(b.sigma[v], 0.0);
                    assert!(b.preds[v].is_empty());
                }
            }
        }
    }
}

#[test]
fn truncation_agrees_with_full_search() {
    for g in small_graphs() {
        for s in 0..g.n() {
            let full = bfs_sssp(&g, s);
            let ecc = full.order.iter().filter_map(|&v| full.dist[v]).max().unwrap();
            for depth in 0..=ecc + 1 {
                let cut = bfs_truncated(&g, s, depth);
                assert_eq!(cut.frontier_limit, Some(depth));
                for v in 0..g.n() {
                    match full.dist[v] {
                        Some(d) if d <= depth => {
                            assert_eq!(cut.dist[v], Some(d));
                            assert_eq!(cut.sigma[v], full.sigma[v]);
                            assert_eq!(cut.preds[v], full.preds[v]);
                        }
                        _ => assert_eq!(cut.dist[v], None),
                    }
                }
                if depth >= ecc {
                    assert_eq!(cut.order, full.order);
                    assert_eq!(cut.sigma, full.sigma);
                }
            }
            for goal in 0..g.n() {
                let until = bfs_until(&g, s, goal, None);
                if let Some(d) = full.dist[goal] {
                    assert_eq!(until.dist[goal], Some(d));
                    assert_eq!(until.sigma[goal], full.sigma[goal]);
                    assert!(until.order.iter().all(|&v| full.dist[v].unwrap() <= d));
                }
            }
        }
    }
}

#[test]
fn adjacency_invariants() {
    for g in small_graphs().chain([fixtures::random32()]) {
        let mut total = 0;
        for v in 0..g.n() {
            let nb = g.neighbors(v);
            assert!(nb.windows(2).all(|w| w[0] < w[1]), "sorted, no duplicates");
            assert!(!nb.contains(&(v as u32)), "no self loops");
            for &u in nb {
                assert!(g.has_edge(u as usize, v));
            }
            total += nb.len();
        }
        assert_eq!(total, 2 * g.m());
    }
}

#[test]
fn shipped_fixture_files_match_generators() {
    let root = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/");
    let cases = [
        ("path3.txt", fixtures::path(3)),
        ("star3.txt", fixtures::star(3)),
        ("cycle4.txt", fixtures::cycle(4)),
        ("random32.txt", fixtures::random32()),
    ];
    for (name, expected) in cases {
        let file = std::fs::File::open(format!("{root}{name}")).unwrap();
        let g = parse_edge_list(std::io::BufReader::new(file)).unwrap();
        assert_eq!(g, expected, "{name}");
    }
    assert_eq!(fixtures::random32().n(), 32);
}

proptest! {
    #[test]
    fn canonical_edge_list_round_trips(
        edges in prop::collection::vec((0u64..40, 0u64..40), 1..80),
        flip in any::<bool>(),
    ) {
        let text: String = edges
            .iter()
            .map(|&(a, b)| if flip { format!("{b}\t{a}\n") } else { format!("{a} {b}\n") })
            .collect();
        match parse_edge_list(format!("# generated\n{text}").as_bytes()) {
            Ok(g) => {
                let mut canon = Vec::new();
                g.write_edge_list(&mut canon).unwrap();
                let again = parse_edge_list(canon.as_slice()).unwrap();
                prop_assert_eq!(&again, &g);
                let mut twice = Vec::new();
                again.write_edge_list(&mut twice).unwrap();
                prop_assert_eq!(canon, twice);
            }
            Err(_) => prop_assert!(edges.iter().all(|(a, b)| a == b)),
        }
    }
}
