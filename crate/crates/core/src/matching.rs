//! Perfect matchings, their complementary 2-factors, and filtered matching
//! streams.

use crate::error::{Error, Result};
use crate::graph::{is_cubic, three_edge_cuts, EdgeId, Pseudograph, VertexId};

/// A perfect matching, stored as sorted edge ids plus the matched edge at
/// every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PerfectMatching {
    edges: Vec<EdgeId>,
    at_vertex: Vec<EdgeId>,
}

impl PerfectMatching {
    /// Validates that `edges` covers every vertex of `g` exactly once.
    pub fn new(g: &Pseudograph, mut edges: Vec<EdgeId>) -> Result<Self> {
        edges.sort_unstable();
        edges.dedup();
        let mut at_vertex = vec![usize::MAX; g.vertex_count()];
        for &e in &edges {
            if e >= g.edge_count() {
                return Err(Error::input(format!("matching edge {e} does not exist")));
            }
            let edge = g.edge(e);
            if edge.is_loop() {
                return Err(Error::input(format!("matching edge {e} is a loop")));
            }
            for x in [edge.u, edge.v] {
                if at_vertex[x] != usize::MAX {
                    return Err(Error::input(format!("vertex {x} is matched twice")));
                }
                at_vertex[x] = e;
            }
        }
        if let Some(v) = at_vertex.iter().position(|&e| e == usize::MAX) {
            return Err(Error::input(format!("vertex {v} is not matched")));
        }
        Ok(PerfectMatching { edges, at_vertex })
    }

    pub fn edge_ids(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// The unique matching edge at `v`.
    pub fn edge_at(&self, v: VertexId) -> EdgeId {
        self.at_vertex[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.at_vertex.len()
    }
}

/// One cycle of a 2-factor. `edges[i]` joins `vertices[i]` and
/// `vertices[(i + 1) % len]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_odd(&self) -> bool {
        self.len() % 2 == 1
    }
}

/// The complementary 2-factor of a perfect matching in a cubic graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoFactor {
    cycles: Vec<Cycle>,
    cycle_of_vertex: Vec<usize>,
    position: Vec<usize>,
    chord_ids: Vec<EdgeId>,
    matching: PerfectMatching,
}

impl TwoFactor {
    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn cycle_of_vertex(&self, v: VertexId) -> usize {
        self.cycle_of_vertex[v]
    }

    /// Index of `v` inside its cycle's vertex list.
    pub fn position(&self, v: VertexId) -> usize {
        self.position[v]
    }

    /// Matching edges with both ends on the same cycle, sorted.
    pub fn chord_ids(&self) -> &[EdgeId] {
        &self.chord_ids
    }

    pub fn matching(&self) -> &PerfectMatching {
        &self.matching
    }

    pub fn vertex_count(&self) -> usize {
        self.cycle_of_vertex.len()
    }

    /// Whether `e` is an edge of the 2-factor (as opposed to the matching).
    pub fn contains_edge(&self, e: EdgeId) -> bool {
        !self.matching.contains(e)
    }

    /// Builds the 2-factor whose edge set is `cycle_edges`; its complement
    /// must be a perfect matching.
    pub fn from_cycle_edges(g: &Pseudograph, cycle_edges: &[EdgeId]) -> Result<Self> {
        let mut in_factor = vec![false; g.edge_count()];
        for &e in cycle_edges {
            if e >= g.edge_count() {
                return Err(Error::Contract(format!("edge {e} does not exist")));
            }
            in_factor[e] = true;
        }
        let rest: Vec<EdgeId> = (0..g.edge_count()).filter(|&e| !in_factor[e]).collect();
        let matching = PerfectMatching::new(g, rest)
            .map_err(|e| Error::Contract(format!("complement is not a perfect matching: {e}")))?;
        complement_two_factor(g, &matching)
    }
}

/// Decomposes `G - F` into cycles.
///
/// Cycles are listed by their smallest vertex; each starts at that vertex
/// and leaves it along its lower-numbered 2-factor edge.
pub fn complement_two_factor(g: &Pseudograph, f: &PerfectMatching) -> Result<TwoFactor> {
    if !is_cubic(g) {
        return Err(Error::Unsupported("complementary 2-factors need a cubic graph".into()));
    }
    if g.has_loops() {
        return Err(Error::Unsupported("complementary 2-factors need a loopless graph".into()));
    }
    if f.vertex_count() != g.vertex_count() {
        return Err(Error::input("matching belongs to a different graph"));
    }
    let n = g.vertex_count();
    let factor_edges = |v: VertexId| -> [EdgeId; 2] {
        let mut it = g.incident(v).iter().copied().filter(|&e| e != f.edge_at(v));
        [it.next().unwrap(), it.next().unwrap()]
    };
    let mut cycle_of_vertex = vec![usize::MAX; n];
    let mut position = vec![0; n];
    let mut cycles = Vec::new();
    for start in g.vertices() {
        if cycle_of_vertex[start] != usize::MAX {
            continue;
        }
        let index = cycles.len();
        let mut cycle = Cycle {
            vertices: Vec::new(),
            edges: Vec::new(),
        };
        let mut x = start;
        let mut via = factor_edges(start)[1];
        loop {
            cycle_of_vertex[x] = index;
            position[x] = cycle.vertices.len();
            cycle.vertices.push(x);
            let [a, b] = factor_edges(x);
            let next_edge = if a == via { b } else { a };
            cycle.edges.push(next_edge);
            let y = g.edge(next_edge).other(x);
            if y == start {
                break;
            }
            x = y;
            via = next_edge;
        }
        cycles.push(cycle);
    }
    let chord_ids = f
        .edge_ids()
        .iter()
        .copied()
        .filter(|&e| {
            let (u, v) = g.endpoints(e);
            cycle_of_vertex[u] == cycle_of_vertex[v]
        })
        .collect();
    Ok(TwoFactor {
        cycles,
        cycle_of_vertex,
        position,
        chord_ids,
        matching: f.clone(),
    })
}

/// Number of odd cycles; always even for a cubic graph.
pub fn odd_cycle_count(tf: &TwoFactor) -> usize {
    let count = tf.cycles().iter().filter(|c| c.is_odd()).count();
    debug_assert!(count % 2 == 0, "odd number of odd cycles in a 2-factor of a cubic graph");
    count
}

/// Lazy stream of perfect matchings.
///
/// Depth-first: the lowest uncovered vertex is matched along each of its
/// incident edges in increasing id order. Each matching is produced once,
/// with sorted edge ids.
pub struct PerfectMatchings<'g> {
    g: &'g Pseudograph,
    covered: Vec<bool>,
    chosen: Vec<EdgeId>,
    fixed: usize,
    // (vertex, next incidence index, edge currently chosen for it)
    frames: Vec<(VertexId, usize, Option<EdgeId>)>,
    descend: bool,
    done: bool,
}

impl<'g> PerfectMatchings<'g> {
    fn new(g: &'g Pseudograph, forced: Option<EdgeId>) -> Self {
        let mut stream = PerfectMatchings {
            g,
            covered: vec![false; g.vertex_count()],
            chosen: Vec::new(),
            fixed: 0,
            frames: Vec::new(),
            descend: true,
            done: g.vertex_count() % 2 == 1,
        };
        if let Some(e) = forced {
            if e >= g.edge_count() || g.edge(e).is_loop() {
                stream.done = true;
            } else {
                let (u, v) = g.endpoints(e);
                stream.covered[u] = true;
                stream.covered[v] = true;
                stream.chosen.push(e);
                stream.fixed = 1;
            }
        }
        stream
    }

    fn undo(&mut self, e: EdgeId) {
        let (u, v) = self.g.endpoints(e);
        self.covered[u] = false;
        self.covered[v] = false;
        self.chosen.pop();
    }
}

impl Iterator for PerfectMatchings<'_> {
    type Item = PerfectMatching;

    fn next(&mut self) -> Option<PerfectMatching> {
        while !self.done {
            if self.descend {
                match self.covered.iter().position(|&c| !c) {
                    None => {
                        self.descend = false;
                        if self.frames.is_empty() {
                            // Nothing left to branch on: the single matching is final.
                            self.done = true;
                        }
                        let m = PerfectMatching::new(self.g, self.chosen.clone())
                            .expect("enumerated edge set is a perfect matching");
                        return Some(m);
                    }
                    Some(v) => {
                        self.frames.push((v, 0, None));
                        self.descend = false;
                    }
                }
                continue;
            }
            let Some(&mut (v, next, current)) = self.frames.last_mut() else {
                self.done = true;
                break;
            };
            if let Some(e) = current {
                self.undo(e);
            }
            let incident = self.g.incident(v);
            let mut idx = next;
            let mut pick = None;
            while idx < incident.len() {
                let e = incident[idx];
                idx += 1;
                let edge = self.g.edge(e);
                if !edge.is_loop() && !self.covered[edge.other(v)] {
                    pick = Some(e);
                    break;
                }
            }
            let top = self.frames.last_mut().unwrap();
            top.1 = idx;
            top.2 = pick;
            match pick {
                Some(e) => {
                    let (a, b) = self.g.endpoints(e);
                    self.covered[a] = true;
                    self.covered[b] = true;
                    self.chosen.push(e);
                    self.descend = true;
                }
                None => {
                    self.frames.pop();
                    if self.frames.is_empty() {
                        self.done = true;
                    }
                }
            }
        }
        debug_assert!(self.chosen.len() >= self.fixed);
        None
    }
}

/// Every perfect matching of `g`, lazily. Graphs of odd order yield nothing.
pub fn enumerate_perfect_matchings(g: &Pseudograph) -> PerfectMatchings<'_> {
    PerfectMatchings::new(g, None)
}

/// Perfect matchings containing edge `e`. Empty when `e` lies in none (for
/// instance when `e` is a loop).
pub fn matchings_through_edge(g: &Pseudograph, e: EdgeId) -> PerfectMatchings<'_> {
    PerfectMatchings::new(g, Some(e))
}

/// Whether `f` meets each of the given cuts in exactly one edge.
pub fn meets_cuts_once(f: &PerfectMatching, cuts: &[[EdgeId; 3]]) -> bool {
    cuts.iter()
        .all(|cut| cut.iter().filter(|&&e| f.contains(e)).count() == 1)
}

/// Perfect matchings through `e` that meet every 3-edge-cut in exactly one
/// edge.
pub fn matchings_meeting_all_3cuts_once(
    g: &Pseudograph,
    e: EdgeId,
) -> impl Iterator<Item = PerfectMatching> + '_ {
    let cuts = three_edge_cuts(g);
    matchings_through_edge(g, e).filter(move |f| meets_cuts_once(f, &cuts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    /// Oracle: all subsets of size n/2 that cover every vertex.
    fn brute_force_count(g: &Pseudograph) -> usize {
        let m = g.edge_count();
        assert!(m <= 20);
        (0u32..1 << m)
            .filter(|mask| mask.count_ones() as usize * 2 == g.vertex_count())
            .filter(|mask| {
                let edges: Vec<_> = (0..m).filter(|e| mask >> e & 1 == 1).collect();
                PerfectMatching::new(g, edges).is_ok()
            })
            .count()
    }

    #[test]
    fn matching_counts() {
        for (g, expected) in [
            (generators::petersen(), 6),
            (generators::k4(), 3),
            (generators::k23(), 3),
            (generators::k33(), 6),
        ] {
            let all: Vec<_> = enumerate_perfect_matchings(&g).collect();
            assert_eq!(all.len(), expected);
            assert_eq!(all.len(), brute_force_count(&g));
            let mut dedup = all.clone();
            dedup.sort_by(|a, b| a.edge_ids().cmp(b.edge_ids()));
            dedup.dedup();
            assert_eq!(dedup.len(), all.len());
        }
        assert_eq!(enumerate_perfect_matchings(&Pseudograph::empty(3)).count(), 0);
    }

    #[test]
    fn petersen_two_factors_are_two_pentagons() {
        let g = generators::petersen();
        for f in enumerate_perfect_matchings(&g) {
            let tf = complement_two_factor(&g, &f).unwrap();
            let lens: Vec<_> = tf.cycles().iter().map(Cycle::len).collect();
            assert_eq!(lens, vec![5, 5]);
            assert_eq!(odd_cycle_count(&tf), 2);
            assert!(tf.chord_ids().is_empty());
        }
    }

    #[test]
    fn k4_and_k33_complements() {
        let k4 = generators::k4();
        for f in enumerate_perfect_matchings(&k4) {
            let tf = complement_two_factor(&k4, &f).unwrap();
            assert_eq!(tf.cycles().len(), 1);
            assert_eq!(tf.cycles()[0].len(), 4);
            assert_eq!(tf.chord_ids(), f.edge_ids());
            assert_eq!(odd_cycle_count(&tf), 0);
        }
        let k33 = generators::k33();
        for f in enumerate_perfect_matchings(&k33) {
            let tf = complement_two_factor(&k33, &f).unwrap();
            assert_eq!(odd_cycle_count(&tf), 0);
        }
    }

    #[test]
    fn k23_two_cycle() {
        let g = generators::k23();
        let f = enumerate_perfect_matchings(&g).next().unwrap();
        let tf = complement_two_factor(&g, &f).unwrap();
        assert_eq!(tf.cycles().len(), 1);
        assert_eq!(tf.cycles()[0].len(), 2);
        assert_eq!(tf.chord_ids(), f.edge_ids());
    }

    #[test]
    fn through_edge() {
        let p = generators::petersen();
        for e in 0..15 {
            let through: Vec<_> = matchings_through_edge(&p, e).collect();
            assert_eq!(through.len(), 2);
            assert!(through.iter().all(|f| f.contains(e)));
            assert_eq!(matchings_meeting_all_3cuts_once(&p, e).count(), 2);
        }
        let k4 = generators::k4();
        for e in 0..6 {
            assert_eq!(matchings_through_edge(&k4, e).count(), 1);
            assert_eq!(matchings_meeting_all_3cuts_once(&k4, e).count(), 1);
        }
        let f3 = generators::fig3_graph();
        let total = enumerate_perfect_matchings(&f3).count();
        assert!(total > 0);
        assert_eq!(matchings_through_edge(&f3, generators::FIG3_BRIDGE).count(), total);
    }

    #[test]
    fn triangle_stars_are_met_once() {
        let g = generators::replace_vertex_with_triangle(&generators::k33(), 0).unwrap();
        let star: Vec<EdgeId> = generators::k33().incident(0).to_vec();
        for e in 0..g.edge_count() {
            let found: Vec<_> = matchings_meeting_all_3cuts_once(&g, e).collect();
            assert!(!found.is_empty());
            for f in found {
                assert_eq!(star.iter().filter(|&&s| f.contains(s)).count(), 1);
            }
        }
    }

    #[test]
    fn invalid_matchings_are_rejected() {
        let k4 = generators::k4();
        assert!(PerfectMatching::new(&k4, vec![0]).is_err());
        assert!(PerfectMatching::new(&k4, vec![0, 1]).is_err());
        assert!(TwoFactor::from_cycle_edges(&k4, &[0, 1, 2]).is_err());
    }
}
