//! Exact edge-colouring search: proper colourings, optionally normal.

use std::collections::VecDeque;

use crate::error::Result;
use crate::flow::{SearchLimits, SearchStats};
use crate::graph::{EdgeId, Pseudograph};

pub(crate) struct ColoringSearch<'a> {
    g: &'a Pseudograph,
    k: u8,
    normal: bool,
    order: Vec<EdgeId>,
    colors: Vec<u8>,
    limits: SearchLimits,
    stats: SearchStats,
}

impl<'a> ColoringSearch<'a> {
    pub(crate) fn new(g: &'a Pseudograph, k: u8, normal: bool, limits: SearchLimits) -> Self {
        ColoringSearch {
            g,
            k,
            normal,
            order: bfs_edge_order(g),
            colors: vec![0; g.edge_count()],
            limits,
            stats: SearchStats::default(),
        }
    }

    pub(crate) fn stats(&self) -> SearchStats {
        self.stats
    }

    /// First colouring in search order, colours `1..=k`.
    pub(crate) fn run(&mut self) -> Result<Option<Vec<u8>>> {
        if self.g.has_loops() {
            return Ok(None);
        }
        if self.extend(0, 0)? {
            self.stats.solutions += 1;
            Ok(Some(self.colors.clone()))
        } else {
            Ok(None)
        }
    }

    fn extend(&mut self, depth: usize, max_used: u8) -> Result<bool> {
        if depth == self.order.len() {
            return Ok(true);
        }
        let e = self.order[depth];
        let (u, v) = self.g.endpoints(e);
        let mut blocked = 0u32;
        for &x in self.g.incident(u).iter().chain(self.g.incident(v)) {
            blocked |= 1 << self.colors[x];
        }
        // Colours above max_used + 1 are interchangeable with max_used + 1.
        let top = self.k.min(max_used + 1);
        for c in 1..=top {
            if blocked & (1 << c) != 0 {
                continue;
            }
            self.stats.nodes += 1;
            self.limits.check(self.stats.nodes)?;
            self.colors[e] = c;
            if (!self.normal || self.closed_edges_ok(e)) && self.extend(depth + 1, max_used.max(c))? {
                return Ok(true);
            }
            self.colors[e] = 0;
        }
        Ok(false)
    }

    /// Every edge at an endpoint of `e` whose surroundings just became fully
    /// coloured must not be abnormal.
    fn closed_edges_ok(&self, e: EdgeId) -> bool {
        let (u, v) = self.g.endpoints(e);
        for &x in self.g.incident(u).iter().chain(self.g.incident(v)) {
            let (a, b) = self.g.endpoints(x);
            let mut union = 0u32;
            let mut complete = true;
            for &y in self.g.incident(a).iter().chain(self.g.incident(b)) {
                if self.colors[y] == 0 {
                    complete = false;
                    break;
                }
                union |= 1 << self.colors[y];
            }
            if complete && union.count_ones() == 4 {
                return false;
            }
        }
        true
    }
}

/// Edges in breadth-first order from vertex 0, each vertex contributing its
/// unlisted edges in id order, so stars fill up early.
fn bfs_edge_order(g: &Pseudograph) -> Vec<EdgeId> {
    let mut listed = vec![false; g.edge_count()];
    let mut seen = vec![false; g.vertex_count()];
    let mut order = Vec::with_capacity(g.edge_count());
    let mut queue = VecDeque::new();
    for s in g.vertices() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            for &e in g.incident(x) {
                if !std::mem::replace(&mut listed[e], true) {
                    order.push(e);
                }
                let y = g.edge(e).other(x);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    order
}

/// A proper 3-edge-colouring with colours `1..=3`, if one exists.
pub fn three_edge_coloring(g: &Pseudograph) -> Option<Vec<u8>> {
    ColoringSearch::new(g, 3, false, SearchLimits::unlimited())
        .run()
        .expect("unlimited search cannot fail")
}
