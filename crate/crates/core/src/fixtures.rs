//! Small graphs for tests, examples and the shipped fixture files.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

/// Path `0 - 1 - ... - (n-1)`.
pub fn path(n: u64) -> Graph {
    assert!(n >= 2);
    Graph::from_edges((1..n).map(|v| (v - 1, v))).expect("nonempty")
}

/// Star with centre 0 and leaves `1..=leaves`.
pub fn star(leaves: u64) -> Graph {
    assert!(leaves >= 1);
    Graph::from_edges((1..=leaves).map(|v| (0, v))).expect("nonempty")
}

/// Cycle `0 - 1 - ... - (n-1) - 0`.
pub fn cycle(n: u64) -> Graph {
    assert!(n >= 3);
    Graph::from_edges((0..n).map(|v| (v, (v + 1) % n))).expect("nonempty")
}

pub fn complete(n: u64) -> Graph {
    assert!(n >= 2);
    Graph::from_edges((0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("nonempty")
}

/// Erdős–Rényi `G(n, p)` on vertices `0..n`. Isolated vertices are kept, so
/// the result can be disconnected.
pub fn gnp(n: u64, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_parts(0..n, edges).expect("n > 0")
}

/// Connected random graph on `0..n`: a random recursive tree plus each
/// remaining pair independently with probability `p`.
pub fn random_connected(n: u64, p: f64, seed: u64) -> Graph {
    assert!(n >= 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(u64, u64)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(edges).expect("n >= 2")
}

/// The 32-vertex graph shipped as `fixtures/random32.txt`.
pub fn random32() -> Graph {
    random_connected(32, 0.06, 32)
}
