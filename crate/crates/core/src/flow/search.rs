//! Backtracking search for nowhere-zero group-valued flows.
//!
//! Values are nonzero bit vectors (two bits for Z2×Z2, three for Z2³) and
//! addition is XOR. Edges are assigned in a fixed order; when an edge is the
//! last open edge end at a vertex its value is forced by conservation.
//! Optional conflict pairs let the caller bound the number of edge pairs
//! carrying `{α, β}`.

use std::collections::VecDeque;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Pseudograph};

/// Budget for a single search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_nodes: Option<u64>,
    pub deadline: Option<Instant>,
}

impl SearchLimits {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn with_timeout(timeout: Duration) -> Self {
        SearchLimits {
            max_nodes: None,
            deadline: Some(Instant::now() + timeout),
        }
    }

    pub(crate) fn check(&self, nodes: u64) -> Result<()> {
        if let Some(max) = self.max_nodes {
            if nodes > max {
                return Err(Error::Resource(format!("search exceeded {max} nodes")));
            }
        }
        if nodes % 4096 == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    return Err(Error::Resource(format!("search timed out after {nodes} nodes")));
                }
            }
        }
        Ok(())
    }
}

/// Counters reported with every search result.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub solutions: u64,
}

impl std::ops::AddAssign for SearchStats {
    fn add_assign(&mut self, rhs: Self) {
        self.nodes += rhs.nodes;
        self.solutions += rhs.solutions;
    }
}

pub(crate) const ALPHA: u8 = 0b10;
pub(crate) const BETA: u8 = 0b01;
pub(crate) const ALPHA_BETA: u8 = 0b11;

/// Klein candidates, most permissive value first.
pub(crate) const KLEIN_ORDER: [u8; 3] = [ALPHA_BETA, ALPHA, BETA];

#[inline]
pub(crate) fn is_conflict(a: u8, b: u8) -> bool {
    a != 0 && b != 0 && a & b == 0 && a | b == ALPHA_BETA
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    Enter,
    Try,
    Solution,
    Done,
}

pub(crate) struct FlowSearch<'a> {
    g: &'a Pseudograph,
    candidates: Vec<u8>,
    order: Vec<EdgeId>,
    pairs: Vec<(EdgeId, EdgeId)>,
    pairs_of: Vec<Vec<usize>>,
    bound: Option<usize>,
    limits: SearchLimits,
    value: Vec<u8>,
    sum: Vec<u8>,
    open_ends: Vec<u32>,
    conflicts: usize,
    options: Vec<([u8; 7], u8, u8)>,
    depth: usize,
    state: State,
    stats: SearchStats,
}

impl<'a> FlowSearch<'a> {
    /// `candidates` lists the allowed nonzero values in trial order.
    /// `pairs` are edge pairs that conflict when valued `{α, β}`.
    pub(crate) fn new(
        g: &'a Pseudograph,
        candidates: &[u8],
        pairs: Vec<(EdgeId, EdgeId)>,
        limits: SearchLimits,
    ) -> Self {
        let m = g.edge_count();
        let mut pairs_of = vec![Vec::new(); m];
        let pairs: Vec<_> = pairs.into_iter().filter(|(a, b)| a != b).collect();
        for (i, &(a, b)) in pairs.iter().enumerate() {
            pairs_of[a].push(i);
            pairs_of[b].push(i);
        }
        let open_ends = g
            .vertices()
            .map(|v| g.incident(v).iter().filter(|&&e| !g.edge(e).is_loop()).count() as u32)
            .collect();
        FlowSearch {
            g,
            candidates: candidates.to_vec(),
            order: edge_order(g),
            pairs,
            pairs_of,
            bound: None,
            limits,
            value: vec![0; m],
            sum: vec![0; g.vertex_count()],
            open_ends,
            conflicts: 0,
            options: vec![([0; 7], 0, 0); m],
            depth: 0,
            state: State::Enter,
            stats: SearchStats::default(),
        }
    }

    /// Prune every branch that reaches `bound` conflicts. `Some(1)` asks for
    /// conflict-free flows only.
    pub(crate) fn set_bound(&mut self, bound: Option<usize>) {
        self.bound = bound;
    }

    pub(crate) fn stats(&self) -> SearchStats {
        self.stats
    }

    /// Conflict count of the solution most recently returned.
    pub(crate) fn conflicts(&self) -> usize {
        self.conflicts
    }

    fn assign(&mut self, e: EdgeId, x: u8) {
        self.value[e] = x;
        let edge = self.g.edge(e);
        if !edge.is_loop() {
            self.sum[edge.u] ^= x;
            self.sum[edge.v] ^= x;
            self.open_ends[edge.u] -= 1;
            self.open_ends[edge.v] -= 1;
        }
        for &p in &self.pairs_of[e] {
            let (a, b) = self.pairs[p];
            let other = if a == e { b } else { a };
            if is_conflict(x, self.value[other]) {
                self.conflicts += 1;
            }
        }
    }

    fn unassign(&mut self, e: EdgeId) {
        let x = self.value[e];
        for &p in &self.pairs_of[e] {
            let (a, b) = self.pairs[p];
            let other = if a == e { b } else { a };
            if is_conflict(x, self.value[other]) {
                self.conflicts -= 1;
            }
        }
        let edge = self.g.edge(e);
        if !edge.is_loop() {
            self.sum[edge.u] ^= x;
            self.sum[edge.v] ^= x;
            self.open_ends[edge.u] += 1;
            self.open_ends[edge.v] += 1;
        }
        self.value[e] = 0;
    }

    fn prepare_options(&mut self, e: EdgeId) {
        let edge = self.g.edge(e);
        let mut opts = [0u8; 7];
        let mut len = 0u8;
        if edge.is_loop() {
            for &c in &self.candidates {
                opts[len as usize] = c;
                len += 1;
            }
        } else {
            let force = |v: usize| (self.open_ends[v] == 1).then_some(self.sum[v]);
            let forced = match (force(edge.u), force(edge.v)) {
                (Some(a), Some(b)) if a != b => Some(0),
                (Some(a), _) | (_, Some(a)) => Some(a),
                (None, None) => None,
            };
            match forced {
                Some(0) => {}
                Some(x) => {
                    if self.candidates.contains(&x) {
                        opts[0] = x;
                        len = 1;
                    }
                }
                None => {
                    for &c in &self.candidates {
                        opts[len as usize] = c;
                        len += 1;
                    }
                }
            }
        }
        self.options[self.depth] = (opts, len, 0);
    }

    /// Advances to the next solution, returning the full value vector.
    pub(crate) fn next_solution(&mut self) -> Result<Option<&[u8]>> {
        let m = self.order.len();
        loop {
            match self.state {
                State::Done => return Ok(None),
                State::Solution => {
                    if m == 0 {
                        self.state = State::Done;
                        return Ok(None);
                    }
                    self.depth = m - 1;
                    self.state = State::Try;
                }
                State::Enter => {
                    if self.depth == m {
                        self.state = State::Solution;
                        self.stats.solutions += 1;
                        return Ok(Some(&self.value));
                    }
                    let e = self.order[self.depth];
                    self.prepare_options(e);
                    self.state = State::Try;
                }
                State::Try => {
                    let e = self.order[self.depth];
                    if self.value[e] != 0 {
                        self.unassign(e);
                    }
                    let (opts, len, next) = self.options[self.depth];
                    if next == len {
                        if self.depth == 0 {
                            self.state = State::Done;
                            return Ok(None);
                        }
                        self.depth -= 1;
                        continue;
                    }
                    self.options[self.depth].2 += 1;
                    self.stats.nodes += 1;
                    self.limits.check(self.stats.nodes)?;
                    self.assign(e, opts[next as usize]);
                    if self.bound.is_some_and(|b| self.conflicts >= b) {
                        continue;
                    }
                    self.depth += 1;
                    self.state = State::Enter;
                }
            }
        }
    }
}

/// Breadth-first over vertices; each vertex contributes its not yet listed
/// edges in increasing id order. Vertices are then saturated early, which
/// makes conservation forcing kick in quickly.
fn edge_order(g: &Pseudograph) -> Vec<EdgeId> {
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
            let mut star: Vec<EdgeId> = g.incident(x).to_vec();
            star.sort_unstable();
            star.dedup();
            for e in star {
                if !listed[e] {
                    listed[e] = true;
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
