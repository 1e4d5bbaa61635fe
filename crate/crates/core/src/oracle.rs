//! Brute-force reference implementations for small graphs.
//!
//! Everything here enumerates simple paths explicitly and shares no code
//! with the breadth-first machinery, so it can serve as an independent check.
//! Cost is exponential; keep `n` at 8 or below.

use crate::graph::{Graph, Vertex};

/// All shortest `s`-`t` paths as vertex sequences, found by enumerating every
/// simple path and keeping the shortest. Empty when disconnected.
pub fn shortest_paths(g: &Graph, s: Vertex, t: Vertex) -> Vec<Vec<Vertex>> {
    fn walk(g: &Graph, t: Vertex, path: &mut Vec<Vertex>, on: &mut [bool], out: &mut Vec<Vec<Vertex>>) {
        let v = *path.last().unwrap();
        if v == t {
            out.push(path.clone());
            return;
        }
        for &w in g.neighbors(v) {
            let w = w as usize;
            if !on[w] {
                on[w] = true;
                path.push(w);
                walk(g, t, path, on, out);
                path.pop();
                on[w] = false;
            }
        }
    }

    let mut all = Vec::new();
    let mut on = vec![false; g.n()];
    on[s] = true;
    walk(g, t, &mut vec![s], &mut on, &mut all);
    let Some(best) = all.iter().map(Vec::len).min() else {
        return all;
    };
    all.retain(|p| p.len() == best);
    all
}

/// Hop distance and number of shortest paths from `s` to every vertex.
pub fn distances_and_counts(g: &Graph, s: Vertex) -> Vec<(Option<u32>, u64)> {
    (0..g.n())
        .map(|t| {
            let paths = shortest_paths(g, s, t);
            match paths.first() {
                Some(p) => (Some(p.len() as u32 - 1), paths.len() as u64),
                None => (None, 0),
            }
        })
        .collect()
}

/// Fraction of shortest `s`-`t` paths with `v` strictly inside them; zero
/// when `v` is an endpoint or `s`, `t` are disconnected.
pub fn pair_dependency(g: &Graph, s: Vertex, t: Vertex, v: Vertex) -> f64 {
    if v == s || v == t || s == t {
        return 0.0;
    }
    let paths = shortest_paths(g, s, t);
    if paths.is_empty() {
        return 0.0;
    }
    let through = paths.iter().filter(|p| p[1..p.len() - 1].contains(&v)).count();
    through as f64 / paths.len() as f64
}

/// `delta[v]` = sum over targets of the pair dependency of `v`, for source `s`.
pub fn dependencies(g: &Graph, s: Vertex) -> Vec<f64> {
    let n = g.n();
    let mut delta = vec![0.0; n];
    for t in (0..n).filter(|&t| t != s) {
        let paths = shortest_paths(g, s, t);
        if paths.is_empty() {
            continue;
        }
        let share = 1.0 / paths.len() as f64;
        for p in &paths {
            for &v in &p[1..p.len() - 1] {
                delta[v] += share;
            }
        }
    }
    delta
}

/// BC of every vertex summed over ordered pairs.
pub fn betweenness(g: &Graph) -> Vec<f64> {
    let n = g.n();
    let mut bc = vec![0.0; n];
    for s in 0..n {
        for (v, d) in dependencies(g, s).into_iter().enumerate() {
            bc[v] += d;
        }
    }
    bc
}
