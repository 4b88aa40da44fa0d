//! Pseudographs with stable edge identities.
//!
//! Loops and parallel edges are first-class. Every edge keeps the id it was
//! created with, and the incidence list of a vertex holds one entry per edge
//! *end*, so a loop appears twice in its vertex's list and contributes two to
//! the degree.

mod contract;
mod cuts;
mod iso;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use contract::{contract_two_factor, ContractedGraph};
pub use cuts::{bridges, is_cyclically_k_edge_connected, three_edge_cuts};
pub use iso::{find_isomorphism, is_isomorphic, is_isomorphic_to_petersen};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// The endpoint opposite to `x`. For a loop this is `x` itself.
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            debug_assert_eq!(self.v, x);
            self.u
        }
    }

    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct Pseudograph {
    vertex_count: usize,
    edges: Vec<Edge>,
    incidence: Vec<Vec<EdgeId>>,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    vertex_count: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<RawGraph> for Pseudograph {
    type Error = Error;

    fn try_from(raw: RawGraph) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = raw.edges.iter().map(|e| (e[0], e[1])).collect();
        Pseudograph::new(raw.vertex_count, &pairs)
    }
}

impl From<Pseudograph> for RawGraph {
    fn from(g: Pseudograph) -> Self {
        RawGraph {
            vertex_count: g.vertex_count,
            edges: g.edges.iter().map(|e| [e.u, e.v]).collect(),
        }
    }
}

impl Pseudograph {
    /// Builds a graph; edge ids are assigned in list order.
    pub fn new(vertex_count: usize, edge_list: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut incidence = vec![Vec::new(); vertex_count];
        let mut edges = Vec::with_capacity(edge_list.len());
        for (id, &(u, v)) in edge_list.iter().enumerate() {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::input(format!(
                    "edge {id} = ({u}, {v}) has an endpoint outside 0..{vertex_count}"
                )));
            }
            edges.push(Edge { id, u, v });
            incidence[u].push(id);
            incidence[v].push(id);
        }
        Ok(Pseudograph {
            vertex_count,
            edges,
            incidence,
        })
    }

    pub fn empty(vertex_count: usize) -> Self {
        Pseudograph {
            vertex_count,
            edges: Vec::new(),
            incidence: vec![Vec::new(); vertex_count],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Edge {
        self.edges[id]
    }

    pub fn endpoints(&self, id: EdgeId) -> (VertexId, VertexId) {
        let e = self.edges[id];
        (e.u, e.v)
    }

    /// Edge ends at `v`, in increasing edge id order; loops appear twice.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence[v].len()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.vertex_count
    }

    /// Neighbours of `v`, one per edge end (so repeated for parallel edges).
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.incidence[v].iter().map(move |&e| self.edges[e].other(v))
    }

    pub fn edge_pairs(&self) -> Vec<(VertexId, VertexId)> {
        self.edges.iter().map(|e| (e.u, e.v)).collect()
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(Edge::is_loop)
    }

    pub fn is_simple(&self) -> bool {
        if self.has_loops() {
            return false;
        }
        let mut seen = std::collections::HashSet::new();
        self.edges
            .iter()
            .all(|e| seen.insert((e.u.min(e.v), e.u.max(e.v))))
    }

    /// Number of edges joining `u` and `v` (loops at `u` when `u == v`).
    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> usize {
        let mut count = self.incidence[u]
            .iter()
            .filter(|&&e| self.edges[e].other(u) == v)
            .count();
        if u == v {
            count /= 2;
        }
        count
    }

    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.incidence[u]
            .iter()
            .any(|&e| self.edges[e].other(u) == v)
    }

    /// Edges sharing an endpoint with `e`, excluding `e` itself.
    pub fn adjacent_edges(&self, e: EdgeId) -> Vec<EdgeId> {
        let Edge { u, v, .. } = self.edges[e];
        let mut out: Vec<EdgeId> = self.incidence[u]
            .iter()
            .chain(self.incidence[v].iter())
            .copied()
            .filter(|&f| f != e)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Connected component label per vertex, ignoring edges where `removed` is true.
    pub(crate) fn components_without(&self, removed: &[bool]) -> (usize, Vec<usize>) {
        let mut label = vec![usize::MAX; self.vertex_count];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in self.vertices() {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            queue.push_back(s);
            while let Some(x) = queue.pop_front() {
                for &e in &self.incidence[x] {
                    if removed.get(e).copied().unwrap_or(false) {
                        continue;
                    }
                    let y = self.edges[e].other(x);
                    if label[y] == usize::MAX {
                        label[y] = count;
                        queue.push_back(y);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count == 0 || self.components_without(&[]).0 == 1
    }

    /// Induced subgraph on `vertices` (in the given order); edge ids are
    /// reassigned in increasing order of the source ids.
    pub fn induced_subgraph(&self, vertices: &[VertexId]) -> Pseudograph {
        let mut index = vec![usize::MAX; self.vertex_count];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let pairs: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|e| index[e.u] != usize::MAX && index[e.v] != usize::MAX)
            .map(|e| (index[e.u], index[e.v]))
            .collect();
        Pseudograph::new(vertices.len(), &pairs).expect("indices in range")
    }

    /// Two-colouring of the vertices if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side = vec![None; self.vertex_count];
        for s in self.vertices() {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                let sx = side[x].unwrap();
                for y in self.neighbors(x) {
                    match side[y] {
                        None => {
                            side[y] = Some(!sx);
                            queue.push_back(y);
                        }
                        Some(sy) if sy == sx => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap()).collect())
    }
}

/// True iff every vertex has degree three (loops count twice).
pub fn is_cubic(g: &Pseudograph) -> bool {
    g.vertices().all(|v| g.degree(v) == 3)
}

/// Length of a shortest cycle; `None` for forests. A loop is a cycle of
/// length one and a pair of parallel edges one of length two.
pub fn girth(g: &Pseudograph) -> Option<usize> {
    if g.has_loops() {
        return Some(1);
    }
    let n = g.vertex_count();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent_edge = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for s in g.vertices() {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[s] = 0;
        parent_edge[s] = usize::MAX;
        queue.clear();
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            if 2 * dist[x] >= best {
                break;
            }
            for &e in g.incident(x) {
                if e == parent_edge[x] {
                    continue;
                }
                let y = g.edge(e).other(x);
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent_edge[y] = e;
                    queue.push_back(y);
                } else {
                    best = best.min(dist[x] + dist[y] + 1);
                }
            }
        }
    }
    (best != usize::MAX).then_some(best)
}

/// True iff no four vertices induce a `K_{1,3}`.
pub fn is_claw_free(g: &Pseudograph) -> bool {
    for v in g.vertices() {
        let mut nbrs: Vec<VertexId> = g.neighbors(v).filter(|&w| w != v).collect();
        nbrs.sort_unstable();
        nbrs.dedup();
        for (i, &a) in nbrs.iter().enumerate() {
            for (j, &b) in nbrs.iter().enumerate().skip(i + 1) {
                if g.adjacent(a, b) {
                    continue;
                }
                for &c in &nbrs[j + 1..] {
                    if !g.adjacent(a, c) && !g.adjacent(b, c) {
                        return false;
                    }
                }
            }
        }
    }
    true
}
