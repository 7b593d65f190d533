//! The parcel space: a simple undirected graph whose vertices are parcels
//! and whose edges are adjacency links.
//!
//! All distances are shortest-path edge counts. The graph remembers whether
//! it is a path or a row-major grid, since block shifting depends on that.

mod parse;
mod partition;
mod shift;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

pub(crate) use parse::GraphLines;
pub use parse::{parse_graph, write_graph};
pub use partition::{partition, Blocking, BlockingOrigin, SeedPolicy};
pub use shift::shift_blockings;

/// Parcel identifier.
pub type VertexId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("invalid radii: kprime ({kprime}) must exceed k ({k})")]
    InvalidRadii { k: usize, kprime: usize },
    #[error("the graph has no vertices")]
    EmptyGraph,
}

/// Recognized layouts. Positions refer to the sorted vertex list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    /// A single path; positions listed from the lower-id end.
    Path(Vec<usize>),
    /// Row-major grid: the vertex at position `r * cols + c` sits at row
    /// `r`, column `c`.
    Grid {
        rows: usize,
        cols: usize,
    },
    General,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceGraph {
    vertices: Vec<VertexId>,
    position: BTreeMap<VertexId, usize>,
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
    shape: Shape,
}

impl SpaceGraph {
    /// Builds a simple graph. Repeated vertex ids are merged; self-loops,
    /// duplicate edges and edges to undeclared vertices are rejected.
    pub fn new(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        let vertices: Vec<VertexId> = vertices
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let position: BTreeMap<VertexId, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adjacency = vec![Vec::new(); vertices.len()];
        let mut seen = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let pa = *position.get(&a).ok_or(GraphError::UnknownVertex(a))?;
            let pb = *position.get(&b).ok_or(GraphError::UnknownVertex(b))?;
            if !seen.insert((pa.min(pb), pa.max(pb))) {
                return Err(GraphError::DuplicateEdge(a, b));
            }
            adjacency[pa].push(pb);
            adjacency[pb].push(pa);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let mut graph = Self {
            vertices,
            position,
            adjacency,
            edge_count: seen.len(),
            shape: Shape::General,
        };
        graph.shape = graph.detect_shape();
        Ok(graph)
    }

    /// The path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        let n = n as VertexId;
        Self::new(0..n, (1..n).map(|v| (v - 1, v))).expect("path graph is simple")
    }

    /// A `rows x cols` grid with 4-adjacency and row-major ids.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let id = (r * cols + c) as VertexId;
                if c + 1 < cols {
                    edges.push((id, id + 1));
                }
                if r + 1 < rows {
                    edges.push((id, id + cols as VertexId));
                }
            }
        }
        Self::new(0..(rows * cols) as VertexId, edges).expect("grid graph is simple")
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.position.contains_key(&v)
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        match (self.position.get(&u), self.position.get(&v)) {
            (Some(&pu), Some(&pv)) => self.adjacency[pu].binary_search(&pv).is_ok(),
            _ => false,
        }
    }

    /// Edges as `(lower, higher)` id pairs, sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (pu, list) in self.adjacency.iter().enumerate() {
            for &pv in list {
                if pu < pv {
                    out.push((self.vertices[pu], self.vertices[pv]));
                }
            }
        }
        out
    }

    pub fn neighbors(
        &self,
        v: VertexId,
    ) -> Result<impl Iterator<Item = VertexId> + '_, GraphError> {
        let p = self.pos(v)?;
        Ok(self.adjacency[p].iter().map(move |&q| self.vertices[q]))
    }

    /// Shortest-path edge count, `None` when `v` is unreachable from `u`.
    pub fn distance(&self, u: VertexId, v: VertexId) -> Result<Option<usize>, GraphError> {
        let pu = self.pos(u)?;
        let pv = self.pos(v)?;
        Ok(self.bfs(pu, usize::MAX)[pv])
    }

    /// Every vertex within `k` edges of `v`, including `v`.
    pub fn k_neighborhood(&self, v: VertexId, k: usize) -> Result<BTreeSet<VertexId>, GraphError> {
        let p = self.pos(v)?;
        Ok(self
            .ball(p, k)
            .into_iter()
            .map(|q| self.vertices[q])
            .collect())
    }

    /// Distances from `v` to every vertex, indexed like [`Self::vertices`].
    pub fn distances_from(&self, v: VertexId) -> Result<Vec<Option<usize>>, GraphError> {
        Ok(self.bfs(self.pos(v)?, usize::MAX))
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.vertices.len()];
        let mut out = Vec::new();
        for start in 0..self.vertices.len() {
            if seen[start] {
                continue;
            }
            let mut comp: Vec<VertexId> = self
                .bfs(start, usize::MAX)
                .iter()
                .enumerate()
                .filter_map(|(q, d)| d.map(|_| q))
                .inspect(|&q| seen[q] = true)
                .map(|q| self.vertices[q])
                .collect();
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Minimum eccentricity; `None` for an empty or disconnected graph.
    pub fn radius(&self) -> Option<usize> {
        (0..self.vertices.len())
            .map(|p| {
                self.bfs(p, usize::MAX)
                    .into_iter()
                    .try_fold(0, |acc, d| d.map(|d| acc.max(d)))
            })
            .try_fold(usize::MAX, |acc, ecc| ecc.map(|e| acc.min(e)))
            .filter(|&r| r != usize::MAX)
    }

    pub(crate) fn pos(&self, v: VertexId) -> Result<usize, GraphError> {
        self.position
            .get(&v)
            .copied()
            .ok_or(GraphError::UnknownVertex(v))
    }

    pub(crate) fn id(&self, p: usize) -> VertexId {
        self.vertices[p]
    }

    /// Breadth-first distances by position, stopping at `limit`.
    pub(crate) fn bfs(&self, start: usize, limit: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertices.len()];
        dist[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            if du >= limit {
                continue;
            }
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Positions within `radius` of `start`, sorted.
    pub(crate) fn ball(&self, start: usize, radius: usize) -> Vec<usize> {
        let mut seen = BTreeSet::from([start]);
        let mut frontier = vec![start];
        for _ in 0..radius {
            let mut next = Vec::new();
            for u in frontier {
                for &w in &self.adjacency[u] {
                    if seen.insert(w) {
                        next.push(w);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        seen.into_iter().collect()
    }

    fn detect_shape(&self) -> Shape {
        let n = self.vertices.len();
        if n == 0 || self.edge_count + 1 != n {
            return self.detect_grid();
        }
        if self.adjacency.iter().any(|l| l.len() > 2) {
            return Shape::General;
        }
        let Some(start) = (0..n).find(|&p| self.adjacency[p].len() <= 1) else {
            return Shape::General;
        };
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(&next) = self.adjacency[cur].iter().find(|&&w| w != prev) {
            order.push(next);
            prev = cur;
            cur = next;
        }
        if order.len() == n {
            Shape::Path(order)
        } else {
            Shape::General
        }
    }

    fn detect_grid(&self) -> Shape {
        let n = self.vertices.len();
        for cols in 2..n {
            if !n.is_multiple_of(cols) {
                continue;
            }
            let rows = n / cols;
            if rows < 2 || rows * (cols - 1) + cols * (rows - 1) != self.edge_count {
                continue;
            }
            let matches = (0..n).all(|p| {
                let (r, c) = (p / cols, p % cols);
                let mut expected = Vec::with_capacity(4);
                if r > 0 {
                    expected.push(p - cols);
                }
                if c > 0 {
                    expected.push(p - 1);
                }
                if c + 1 < cols {
                    expected.push(p + 1);
                }
                if r + 1 < rows {
                    expected.push(p + cols);
                }
                expected == self.adjacency[p]
            });
            if matches {
                return Shape::Grid { rows, cols };
            }
        }
        Shape::General
    }
}
