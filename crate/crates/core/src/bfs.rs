//! Breadth-first shortest-path counting.
//!
//! A search records, for every vertex it reaches, the hop distance from the
//! source, the number of shortest paths `sigma`, and the predecessor list
//! (neighbours one level closer to the source). Truncated searches settle
//! whole levels: when a search stops at depth `d`, every vertex at distance
//! `d` has been discovered and its `sigma` already counts all shortest paths.

use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq)]
pub struct BfsResult {
    pub source: Vertex,
    /// Hop distance from `source`; `None` when not reached.
    pub dist: Vec<Option<u32>>,
    /// Number of shortest paths from `source`. Stored as `f64` since counts
    /// overflow 64-bit integers on large graphs.
    pub sigma: Vec<f64>,
    pub preds: Vec<Vec<Vertex>>,
    /// Reached vertices in nondecreasing distance order.
    pub order: Vec<Vertex>,
    /// Depth at which the search was cut off, if it was.
    pub frontier_limit: Option<u32>,
}

#[derive(Debug, Clone, Copy)]
enum Stop {
    Exhaust,
    Depth(u32),
    Goal { goal: Vertex, max_depth: Option<u32> },
}

impl BfsResult {
    /// An empty result sized for `n` vertices, for reuse with the `*_into`
    /// search variants.
    pub fn with_capacity(n: usize) -> Self {
        Self {
            source: 0,
            dist: vec![None; n],
            sigma: vec![0.0; n],
            preds: vec![Vec::new(); n],
            order: Vec::with_capacity(n),
            frontier_limit: None,
        }
    }

    pub fn is_truncated(&self) -> bool {
        self.frontier_limit.is_some()
    }

    /// Number of vertices the search discovered.
    pub fn settled(&self) -> usize {
        self.order.len()
    }

    fn reset(&mut self, n: usize) {
        if self.dist.len() != n {
            *self = Self::with_capacity(n);
            return;
        }
        for &v in &self.order {
            self.dist[v] = None;
            self.sigma[v] = 0.0;
            self.preds[v].clear();
        }
        self.order.clear();
        self.frontier_limit = None;
    }
}

/// Complete search from `source` over its connected component.
pub fn bfs_sssp(g: &Graph, source: Vertex) -> BfsResult {
    let mut out = BfsResult::with_capacity(g.n());
    search(g, source, Stop::Exhaust, &mut out);
    out
}

/// Search from `source` that settles every level up to `stop_dist` and
/// expands nothing beyond it.
pub fn bfs_truncated(g: &Graph, source: Vertex, stop_dist: u32) -> BfsResult {
    let mut out = BfsResult::with_capacity(g.n());
    search(g, source, Stop::Depth(stop_dist), &mut out);
    out
}

/// Search from `source` that stops once the level containing `goal` is
/// settled, or at `max_depth` if that comes first.
pub fn bfs_until(g: &Graph, source: Vertex, goal: Vertex, max_depth: Option<u32>) -> BfsResult {
    let mut out = BfsResult::with_capacity(g.n());
    bfs_until_into(g, source, goal, max_depth, &mut out);
    out
}

pub fn bfs_sssp_into(g: &Graph, source: Vertex, out: &mut BfsResult) {
    search(g, source, Stop::Exhaust, out);
}

pub fn bfs_until_into(
    g: &Graph,
    source: Vertex,
    goal: Vertex,
    max_depth: Option<u32>,
    out: &mut BfsResult,
) {
    search(g, source, Stop::Goal { goal, max_depth }, out);
}

fn search(g: &Graph, source: Vertex, stop: Stop, out: &mut BfsResult) {
    assert!(source < g.n(), "source {source} out of range");
    out.reset(g.n());
    out.source = source;
    out.dist[source] = Some(0);
    out.sigma[source] = 1.0;
    out.order.push(source);

    let (mut cap, goal) = match stop {
        Stop::Exhaust => (None, None),
        Stop::Depth(d) => (Some(d), None),
        Stop::Goal { goal, max_depth } => {
            if goal == source {
                (Some(0), None)
            } else {
                (max_depth, Some(goal))
            }
        }
    };

    let mut head = 0;
    let mut cut = false;
    while head < out.order.len() {
        let v = out.order[head];
        head += 1;
        let dv = out.dist[v].expect("queued vertices have a distance");
        if cap.is_some_and(|c| dv >= c) {
            // Remaining queue entries are all at depth >= cap.
            cut = true;
            break;
        }
        let sv = out.sigma[v];
        for &w in g.neighbors(v) {
            let w = w as usize;
            match out.dist[w] {
                None => {
                    out.dist[w] = Some(dv + 1);
                    out.order.push(w);
                    out.sigma[w] = sv;
                    out.preds[w].push(v);
                    if goal == Some(w) {
                        cap = Some(cap.map_or(dv + 1, |c| c.min(dv + 1)));
                    }
                }
                Some(dw) if dw == dv + 1 => {
                    out.sigma[w] += sv;
                    out.preds[w].push(v);
                }
                Some(_) => {}
            }
        }
    }

    out.frontier_limit = match stop {
        Stop::Exhaust => None,
        Stop::Depth(d) => Some(d),
        Stop::Goal { .. } => cap.filter(|_| cut),
    };
}
