//! Immutable undirected graph in compressed sparse row form.
//!
//! External vertex IDs (arbitrary `u64` values from an edge list) are mapped
//! to dense indices `0..n` in increasing ID order, so the dense order and the
//! ID order agree. Self-loops and repeated edges are dropped on construction
//! and an arc listed in both directions is stored as one undirected edge.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};

/// Dense vertex index in `0..n`.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    ids: Vec<u64>,
}

impl Graph {
    /// Builds a graph from edges given as pairs of external IDs. Only
    /// vertices that appear in at least one non-loop edge are kept.
    pub fn from_edges<I>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        Self::from_parts(std::iter::empty(), edges)
    }

    /// Like [`Graph::from_edges`], but every ID in `vertices` becomes a vertex
    /// even when it has no incident edge.
    pub fn from_parts<V, I>(vertices: V, edges: I) -> Result<Self>
    where
        V: IntoIterator<Item = u64>,
        I: IntoIterator<Item = (u64, u64)>,
    {
        let mut pairs: Vec<(u64, u64)> = edges
            .into_iter()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| if a < b { (a, b) } else { (b, a) })
            .collect();
        pairs.sort_unstable();
        pairs.dedup();

        let mut ids: Vec<u64> = vertices.into_iter().collect();
        ids.reserve(pairs.len() * 2);
        for &(a, b) in &pairs {
            ids.push(a);
            ids.push(b);
        }
        ids.sort_unstable();
        ids.dedup();
        if ids.is_empty() {
            return Err(Error::EmptyGraph);
        }
        if ids.len() > u32::MAX as usize {
            return Err(Error::InvalidParameter(format!(
                "{} vertices exceed the supported maximum",
                ids.len()
            )));
        }

        let dense = |id: u64| ids.binary_search(&id).expect("id registered above");
        let n = ids.len();
        let mut degree = vec![0usize; n];
        let indexed: Vec<(usize, usize)> = pairs
            .iter()
            .map(|&(a, b)| {
                let (u, v) = (dense(a), dense(b));
                degree[u] += 1;
                degree[v] += 1;
                (u, v)
            })
            .collect();

        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut neighbors = vec![0u32; offsets[n]];
        for (u, v) in indexed {
            neighbors[cursor[u]] = v as u32;
            cursor[u] += 1;
            neighbors[cursor[v]] = u as u32;
            cursor[v] += 1;
        }
        for v in 0..n {
            neighbors[offsets[v]..offsets[v + 1]].sort_unstable();
        }

        Ok(Self { offsets, neighbors, ids })
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.ids.len()
    }

    /// Number of undirected edges.
    pub fn m(&self) -> usize {
        self.neighbors.len() / 2
    }

    /// Sorted neighbour indices of `v`.
    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[u32] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn original_id(&self, v: Vertex) -> u64 {
        self.ids[v]
    }

    pub fn index_of(&self, id: u64) -> Option<Vertex> {
        self.ids.binary_search(&id).ok()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    /// Every undirected edge once, as `(u, v)` with `u < v`, in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .map(|&v| v as usize)
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { index: v, n: self.n() })
        }
    }

    /// Writes the canonical edge list: one `u v` line per edge with `u < v`,
    /// in sorted order, using original IDs and no comments.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> Result<()> {
        for (u, v) in self.edges() {
            writeln!(out, "{} {}", self.ids[u], self.ids[v])?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Reads a SNAP-style edge list. Lines starting with `#` are comments, blank
/// lines are skipped, and every other line must hold exactly two integer IDs
/// separated by whitespace.
pub fn parse_edge_list<R: BufRead>(mut reader: R) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut line = String::new();
    let mut number = 0;
    loop {
        line.clear();
        if reader.read_line(&mut line)? == 0 {
            break;
        }
        number += 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let mut next_id = || -> Result<u64> {
            let token = tokens.next().ok_or_else(|| Error::Parse {
                line: number,
                message: "expected two vertex IDs".into(),
            })?;
            token.parse().map_err(|_| Error::Parse {
                line: number,
                message: format!("invalid vertex ID {token:?}"),
            })
        };
        let a = next_id()?;
        let b = next_id()?;
        if let Some(extra) = tokens.next() {
            return Err(Error::Parse {
                line: number,
                message: format!("unexpected trailing token {extra:?}"),
            });
        }
        edges.push((a, b));
    }
    Graph::from_edges(edges)
}
