//! Undirected simple graphs and the path graph with right-to-left indexing.
//!
//! Every public interface speaks 1-based vertex indices. Storage is 0-based.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A finite simple undirected graph on vertices `1..=vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    vertex_count: usize,
    /// Normalised 1-based pairs with `u < v`.
    edges: BTreeSet<(usize, usize)>,
    /// 0-based adjacency, sorted.
    adjacency: Vec<Vec<usize>>,
}

impl SimpleGraph {
    /// Builds a graph from 1-based edge pairs, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut set = BTreeSet::new();
        for (line, (u, v)) in edges.into_iter().enumerate() {
            let line = line + 1;
            for index in [u, v] {
                if index == 0 || index > vertex_count {
                    return Err(Error::IndexOutOfRange {
                        line,
                        index,
                        max: vertex_count,
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { line, vertex: u });
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::DuplicateEdge { line, u, v });
            }
        }
        Ok(Self::from_normalised(vertex_count, set))
    }

    fn from_normalised(vertex_count: usize, edges: BTreeSet<(usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in &edges {
            adjacency[u - 1].push(v - 1);
            adjacency[v - 1].push(u - 1);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        SimpleGraph {
            vertex_count,
            edges,
            adjacency,
        }
    }

    /// The path `v_1 - v_2 - ... - v_n`.
    pub fn path(n: usize) -> Result<Self> {
        PathGraph::new(n).map(|p| p.to_graph())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as 1-based pairs `(u, v)` with `u < v`, in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// 0-based neighbour lists. Used by the engine's hot loops.
    pub(crate) fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    /// 1-based neighbours of a 1-based vertex.
    pub fn neighbours(&self, vertex: usize) -> Result<Vec<usize>> {
        if vertex == 0 || vertex > self.vertex_count {
            return Err(Error::VertexOutOfRange {
                index: vertex,
                n: self.vertex_count,
            });
        }
        Ok(self.adjacency[vertex - 1].iter().map(|&u| u + 1).collect())
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &w in &self.adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Returns the path view if the edge set is exactly `{v_i v_{i+1}}`.
    pub fn as_path(&self) -> Option<PathGraph> {
        let n = self.vertex_count;
        let is_path = self.edges.len() == n - 1 && self.edges.iter().all(|&(u, v)| v == u + 1);
        is_path.then_some(PathGraph { n })
    }

    /// Attaches a path of `k` new vertices to `base` through a bridge. The new
    /// vertices are numbered `m+1..=m+k` outward, so `m+k` is the far leaf.
    pub fn with_bridged_path(&self, base: usize, k: usize) -> Result<Self> {
        let m = self.vertex_count;
        if base == 0 || base > m {
            return Err(Error::VertexOutOfRange { index: base, n: m });
        }
        let mut edges = self.edges.clone();
        let mut prev = base;
        for v in m + 1..=m + k {
            edges.insert((prev.min(v), prev.max(v)));
            prev = v;
        }
        Ok(Self::from_normalised(m + k, edges))
    }

    /// Renders in the text format accepted by [`parse_graph`].
    pub fn render(&self) -> String {
        if let Some(path) = self.as_path() {
            return format!("path:{}", path.n());
        }
        let mut out = format!("vertices {}\n", self.vertex_count);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl fmt::Display for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G(n={}, m={})", self.vertex_count, self.edges.len())
    }
}

/// A path on `n` vertices. `v_1` is the rightmost vertex in drawings and edge
/// `e_i` joins `v_i` and `v_{i+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PathGraph {
    n: usize,
}

impl PathGraph {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(PathGraph { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.n - 1
    }

    /// The endpoints `(v_i, v_{i+1})` of edge `e_i`.
    pub fn edge(&self, i: usize) -> Result<(usize, usize)> {
        if i == 0 || i >= self.n {
            return Err(Error::EdgeOutOfRange {
                index: i,
                max: self.n - 1,
            });
        }
        Ok((i, i + 1))
    }

    pub fn to_graph(&self) -> SimpleGraph {
        SimpleGraph::from_normalised(self.n, (1..self.n).map(|i| (i, i + 1)).collect())
    }
}

/// Parses either `path:<n>` or an edge-list body.
///
/// The edge list holds one `u v` pair per line (1-based). Blank lines and
/// lines starting with `#` are ignored. An optional `vertices <N>` line fixes
/// the vertex count, otherwise it is the largest index mentioned.
pub fn parse_graph(text: &str) -> Result<SimpleGraph> {
    let trimmed = text.trim();
    if let Some(rest) = trimmed.strip_prefix("path:") {
        let n: usize = rest.trim().parse().map_err(|_| Error::MalformedLine {
            line: 1,
            text: trimmed.to_string(),
        })?;
        return SimpleGraph::path(n);
    }

    let mut declared: Option<usize> = None;
    let mut pairs: Vec<(usize, usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let malformed = || Error::MalformedLine {
            line,
            text: raw.to_string(),
        };
        let fields: Vec<&str> = body.split_whitespace().collect();
        match fields.as_slice() {
            ["vertices", count] if declared.is_none() && pairs.is_empty() => {
                declared = Some(count.parse().map_err(|_| malformed())?);
            }
            [u, v] => {
                let u: usize = u.parse().map_err(|_| malformed())?;
                let v: usize = v.parse().map_err(|_| malformed())?;
                pairs.push((line, u, v));
            }
            _ => return Err(malformed()),
        }
    }

    let max_index = pairs.iter().map(|&(_, u, v)| u.max(v)).max().unwrap_or(0);
    let vertex_count = declared.unwrap_or(max_index);
    if vertex_count == 0 && pairs.is_empty() {
        return Err(Error::EmptyGraph);
    }

    let mut edges = BTreeSet::new();
    for &(line, u, v) in &pairs {
        for index in [u, v] {
            if index == 0 || index > vertex_count {
                return Err(Error::IndexOutOfRange {
                    line,
                    index,
                    max: vertex_count,
                });
            }
        }
        if u == v {
            return Err(Error::SelfLoop { line, vertex: u });
        }
        if !edges.insert((u.min(v), u.max(v))) {
            return Err(Error::DuplicateEdge { line, u, v });
        }
    }
    Ok(SimpleGraph::from_normalised(vertex_count, edges))
}
