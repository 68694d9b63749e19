// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Undirected simple graphs and all-pairs hop distances.

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// An undirected simple graph on vertices `0..vertex_count`.
///
/// Edges are stored normalized as `(min, max)` and sorted lexicographically,
/// which fixes the expansion order of every search in this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
    edges: Vec<(Vertex, Vertex)>,
}

impl Graph {
    pub fn new<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut normalized = Vec::new();
        for (u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{vertex_count}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in &normalized {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            adjacency,
            edges: normalized,
        })
    }

    pub fn path(vertex_count: usize) -> Self {
        Graph::new(vertex_count, (1..vertex_count).map(|v| (v - 1, v)))
            .expect("path edges are simple")
    }

    /// Cycle `0 - 1 - ... - (n-1) - 0`. Requires `n >= 3`.
    pub fn cycle(vertex_count: usize) -> Result<Self> {
        if vertex_count < 3 {
            return Err(Error::InvalidGraph(format!(
                "a simple cycle needs at least 3 vertices, got {vertex_count}"
            )));
        }
        Graph::new(
            vertex_count,
            (0..vertex_count).map(|v| (v, (v + 1) % vertex_count)),
        )
    }

    pub fn complete(vertex_count: usize) -> Self {
        let edges = (0..vertex_count).flat_map(|u| (u + 1..vertex_count).map(move |v| (u, v)));
        Graph::new(vertex_count, edges).expect("complete graph edges are simple")
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(min, max)` pairs in lexicographic order.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.vertex_count() && v < self.vertex_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Position of the edge in [`Graph::edges`].
    pub fn edge_index(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    /// Hop distances from `source`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, source: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Connected components of the subgraph induced by vertices with
    /// `keep[v] == true`. Each kept vertex maps to the smallest vertex of its
    /// component; dropped vertices map to `None`.
    pub fn induced_components(&self, keep: &[bool]) -> Vec<Option<Vertex>> {
        let mut label = vec![None; self.vertex_count()];
        let mut stack = Vec::new();
        for root in 0..self.vertex_count() {
            if !keep[root] || label[root].is_some() {
                continue;
            }
            label[root] = Some(root);
            stack.push(root);
            while let Some(u) = stack.pop() {
                for &w in &self.adjacency[u] {
                    if keep[w] && label[w].is_none() {
                        label[w] = Some(root);
                        stack.push(w);
                    }
                }
            }
        }
        label
    }
}

const UNREACHABLE: u32 = u32::MAX;

/// All-pairs hop distances, computed by one breadth-first traversal per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceTable {
    pub fn new(graph: &Graph) -> Self {
        let n = graph.vertex_count();
        let mut dist = vec![UNREACHABLE; n * n];
        for source in 0..n {
            for (target, d) in graph.bfs_distances(source).into_iter().enumerate() {
                if let Some(d) = d {
                    dist[source * n + target] = d as u32;
                }
            }
        }
        DistanceTable { n, dist }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: Vertex, v: Vertex) -> Option<usize> {
        match self.dist[u * self.n + v] {
            UNREACHABLE => None,
            d => Some(d as usize),
        }
    }

    /// Distance between two vertices known to be connected.
    ///
    /// Panics if they are not; instances guarantee connectivity for every
    /// token's start and target, so this is only used on such pairs.
    pub fn hops(&self, u: Vertex, v: Vertex) -> usize {
        self.get(u, v)
            .unwrap_or_else(|| panic!("vertices {u} and {v} are disconnected"))
    }

    /// The lexicographically smallest shortest path from `from` to `to`:
    /// each step moves to the smallest neighbor one hop closer to `to`.
    pub fn shortest_path(&self, graph: &Graph, from: Vertex, to: Vertex) -> Option<Vec<Vertex>> {
        let mut remaining = self.get(from, to)?;
        let mut path = Vec::with_capacity(remaining + 1);
        path.push(from);
        let mut current = from;
        while remaining > 0 {
            current = *graph
                .neighbors(current)
                .iter()
                .find(|&&w| self.get(w, to) == Some(remaining - 1))
                .expect("a neighbor one hop closer exists on any shortest path");
            path.push(current);
            remaining -= 1;
        }
        Some(path)
    }
}
