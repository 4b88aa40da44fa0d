//! Constructive non-conflicting flows for cubic graphs with a 2-factor of at
//! most two cycles.
//!
//! The construction follows a case analysis on the matching edges joining
//! the two odd cycles. Every produced flow is verified; if a branch cannot
//! produce a verified flow the driver falls back to exhaustive search and
//! says so in the returned record.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{find_any_nonconflicting, FlowAssignment, FlowInstance, KleinValue, SearchOptions};
use crate::coloring::three_edge_coloring;
use crate::error::{Error, Result};
use crate::graph::{bridges, is_cubic, is_isomorphic_to_petersen, ContractedGraph, EdgeId, Pseudograph, VertexId};
use crate::matching::{complement_two_factor, PerfectMatching, TwoFactor};

/// Which branch of the construction produced a flow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProofCase {
    /// No odd cycles: the constant `α+β` flow.
    EvenCycles,
    /// A pair of cross edges non-adjacent on both cycles carries `α` and `β`.
    Case1,
    /// Five cross edges with no usable pair: the graph is 3-edge-colourable
    /// and a colour class is used as the matching.
    Case1ThreeColorable,
    /// Three cross edges with adjacent ends on both cycles: glued
    /// Hamiltonian colourings.
    Case2a,
    /// Triangle case, rerouted 2-factor with only even cycles (or one odd
    /// cycle pair merged).
    Case2bEven,
    /// Triangle case, flow rerouted along a cycle of the quotient.
    Case2bRewire,
    /// Triangle case, split at a 3-edge-cut and solved recursively.
    Case2bRecursion,
    /// No branch applied or verified; exhaustive search found the flow.
    ExhaustiveFallback,
}

/// Provenance of a constructed flow.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub case: ProofCase,
    /// Number of matching edges between the two cycles.
    pub n: usize,
    /// Adjacent pairs among the cross-edge ends on the first and second cycle.
    pub n1: usize,
    pub n2: usize,
    pub depth: usize,
    /// Record of the recursive call, for [`ProofCase::Case2bRecursion`].
    pub nested: Option<Box<CaseRecord>>,
}

impl CaseRecord {
    /// This case and all nested ones, outermost first.
    pub fn cases(&self) -> Vec<ProofCase> {
        let mut out = vec![self.case];
        let mut cur = self;
        while let Some(next) = &cur.nested {
            out.push(next.case);
            cur = next;
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct TwoCycleWitness {
    /// The matching the flow refers to; often different from the one the
    /// input 2-factor came from.
    pub matching: PerfectMatching,
    pub two_factor: TwoFactor,
    pub contracted: ContractedGraph,
    pub flow: FlowAssignment,
    pub provenance: CaseRecord,
}

#[derive(Debug, Clone)]
pub enum TwoCycleOutcome {
    Flow(Box<TwoCycleWitness>),
    /// The input is the Petersen graph, which has no non-conflicting flow
    /// for any perfect matching.
    Petersen,
}

/// Builds a non-conflicting flow for some perfect matching of `g`, starting
/// from a 2-factor `tf` with at most two cycles.
pub fn two_odd_cycle_flow(g: &Pseudograph, tf: &TwoFactor) -> Result<TwoCycleOutcome> {
    if !is_cubic(g) || g.has_loops() {
        return Err(Error::input("expected a loopless cubic graph"));
    }
    if !bridges(g).is_empty() {
        return Err(Error::input("graph has a bridge"));
    }
    if tf.cycles().len() > 2 {
        return Err(Error::precondition(format!(
            "2-factor has {} cycles, at most two are supported",
            tf.cycles().len()
        )));
    }
    // Validates that tf belongs to g.
    FlowInstance::from_two_factor(g, tf.clone())?;
    if is_isomorphic_to_petersen(g) {
        return Ok(TwoCycleOutcome::Petersen);
    }
    let solved = solve(g, tf, 0)?;
    let (matching, flow, provenance) = match solved {
        Some(s) => s,
        None => {
            let (f, flow) = find_any_nonconflicting(g, SearchOptions::sequential())?.ok_or_else(|| {
                Error::Discrepancy("no non-conflicting flow for any perfect matching".into())
            })?;
            let shape = Shape::of(g, tf);
            let record = CaseRecord {
                case: ProofCase::ExhaustiveFallback,
                n: shape.as_ref().map_or(0, |s| s.n()),
                n1: shape.as_ref().map_or(0, |s| s.n1),
                n2: shape.as_ref().map_or(0, |s| s.n2),
                depth: 0,
                nested: None,
            };
            (f, flow, record)
        }
    };
    let inst = FlowInstance::new(g, &matching)?;
    if !inst.is_nonconflicting(&flow)? {
        return Err(Error::Discrepancy("constructed flow failed verification".into()));
    }
    Ok(TwoCycleOutcome::Flow(Box::new(TwoCycleWitness {
        matching,
        two_factor: inst.two_factor,
        contracted: inst.contracted,
        flow,
        provenance,
    })))
}

type Solved = (PerfectMatching, FlowAssignment, CaseRecord);

/// Cross edges between two odd cycles and adjacency counts.
struct Shape {
    /// (edge, end on cycle 0, end on cycle 1), by increasing edge id.
    cross: Vec<(EdgeId, VertexId, VertexId)>,
    n1: usize,
    n2: usize,
}

impl Shape {
    fn of(g: &Pseudograph, tf: &TwoFactor) -> Option<Shape> {
        if tf.cycles().len() != 2 {
            return None;
        }
        let cross: Vec<_> = tf
            .matching()
            .edge_ids()
            .iter()
            .filter_map(|&e| {
                let (a, b) = g.endpoints(e);
                match (tf.cycle_of_vertex(a), tf.cycle_of_vertex(b)) {
                    (0, 1) => Some((e, a, b)),
                    (1, 0) => Some((e, b, a)),
                    _ => None,
                }
            })
            .collect();
        let count = |side: usize| {
            let ends: Vec<VertexId> = cross.iter().map(|c| if side == 0 { c.1 } else { c.2 }).collect();
            let mut k = 0;
            for i in 0..ends.len() {
                for j in i + 1..ends.len() {
                    k += cycle_adjacent(tf, ends[i], ends[j]) as usize;
                }
            }
            k
        };
        let (n1, n2) = (count(0), count(1));
        Some(Shape { cross, n1, n2 })
    }

    fn n(&self) -> usize {
        self.cross.len()
    }

    fn record(&self, case: ProofCase, depth: usize) -> CaseRecord {
        CaseRecord {
            case,
            n: self.n(),
            n1: self.n1,
            n2: self.n2,
            depth,
            nested: None,
        }
    }
}

fn cycle_adjacent(tf: &TwoFactor, a: VertexId, b: VertexId) -> bool {
    let c = tf.cycle_of_vertex(a);
    if c != tf.cycle_of_vertex(b) || a == b {
        return false;
    }
    let len = tf.cycles()[c].len();
    let (pa, pb) = (tf.position(a), tf.position(b));
    (pa + 1) % len == pb || (pb + 1) % len == pa
}

/// Builds the flow from per-edge values and keeps it only if it verifies.
fn verified(
    g: &Pseudograph,
    matching: Vec<EdgeId>,
    value: impl Fn(EdgeId) -> KleinValue,
) -> Result<Option<(PerfectMatching, FlowAssignment)>> {
    let Ok(f) = PerfectMatching::new(g, matching) else {
        return Ok(None);
    };
    let inst = FlowInstance::new(g, &f)?;
    let flow = FlowAssignment::new(f.edge_ids().iter().map(|&e| value(e)).collect());
    Ok(inst.is_nonconflicting(&flow)?.then_some((f, flow)))
}

fn constant_on(g: &Pseudograph, matching: Vec<EdgeId>) -> Result<Option<(PerfectMatching, FlowAssignment)>> {
    verified(g, matching, |_| KleinValue::AlphaBeta)
}

fn solve(g: &Pseudograph, tf: &TwoFactor, depth: usize) -> Result<Option<Solved>> {
    if depth > g.vertex_count() {
        return Err(Error::Discrepancy("recursion did not shrink the graph".into()));
    }
    if tf.cycles().iter().all(|c| !c.is_odd()) {
        let record = CaseRecord {
            case: ProofCase::EvenCycles,
            n: 0,
            n1: 0,
            n2: 0,
            depth,
            nested: None,
        };
        return Ok(constant_on(g, tf.matching().edge_ids().to_vec())?.map(|(f, t)| (f, t, record)));
    }
    let Some(shape) = Shape::of(g, tf) else {
        return Ok(None);
    };
    let n = shape.n();

    // A pair of cross edges whose ends are non-adjacent on both cycles.
    let mut non_pair = None;
    'outer: for i in 0..n {
        for j in i + 1..n {
            let (_, ui, vi) = shape.cross[i];
            let (_, uj, vj) = shape.cross[j];
            if !cycle_adjacent(tf, ui, uj) && !cycle_adjacent(tf, vi, vj) {
                non_pair = Some((shape.cross[i].0, shape.cross[j].0));
                break 'outer;
            }
        }
    }
    if let Some((ei, ej)) = non_pair {
        let found = verified(g, tf.matching().edge_ids().to_vec(), |e| {
            if e == ei {
                KleinValue::Alpha
            } else if e == ej {
                KleinValue::Beta
            } else {
                KleinValue::AlphaBeta
            }
        })?;
        return Ok(found.map(|(f, t)| (f, t, shape.record(ProofCase::Case1, depth))));
    }

    if n >= 5 {
        if is_isomorphic_to_petersen(g) {
            return Ok(None);
        }
        let Some(colors) = three_edge_coloring(g) else {
            return Ok(None);
        };
        let class: Vec<EdgeId> = (0..g.edge_count()).filter(|&e| colors[e] == 1).collect();
        return Ok(constant_on(g, class)?
            .map(|(f, t)| (f, t, shape.record(ProofCase::Case1ThreeColorable, depth))));
    }
    if n != 3 {
        return Ok(None);
    }
    if shape.n1 >= 1 && shape.n2 >= 1 {
        let Some(class) = glued_hamiltonian_class(g, tf, &shape) else {
            return Ok(None);
        };
        return Ok(constant_on(g, class)?.map(|(f, t)| (f, t, shape.record(ProofCase::Case2a, depth))));
    }
    let triangle_side = match (shape.n1, shape.n2) {
        (3, 0) => 0,
        (0, 3) => 1,
        _ => return Ok(None),
    };
    for choice in 0..3 {
        if let Some(found) = triangle_case(g, tf, &shape, triangle_side, choice, depth)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

/// A colour class of a 3-edge-colouring obtained by colouring `G/V(C1)` and
/// `G/V(C2)` from Hamiltonian cycles and gluing along the three cross edges.
fn glued_hamiltonian_class(g: &Pseudograph, tf: &TwoFactor, shape: &Shape) -> Option<Vec<EdgeId>> {
    // Colouring of the side that is kept when the other cycle is contracted.
    let side_colors = |keep: usize| -> Option<Vec<u8>> {
        let cycle = &tf.cycles()[keep];
        let len = cycle.len();
        let cross_at = |v: VertexId| tf.matching().edge_at(v);
        let ends: Vec<VertexId> = shape.cross.iter().map(|c| if keep == 0 { c.1 } else { c.2 }).collect();
        // Consecutive cross ends w_p, w_{p+1} on the kept cycle.
        let p = (0..len).find(|&p| {
            let (a, b) = (cycle.vertices[p], cycle.vertices[(p + 1) % len]);
            ends.contains(&a) && ends.contains(&b)
        })?;
        let mut colors = vec![0u8; g.edge_count()];
        // The Hamiltonian cycle: the kept cycle minus edge p, closed through
        // the contracted vertex by the two cross edges.
        let mut ham: Vec<EdgeId> = (1..len).map(|k| cycle.edges[(p + k) % len]).collect();
        ham.push(cross_at(cycle.vertices[p]));
        ham.push(cross_at(cycle.vertices[(p + 1) % len]));
        for e in g.edges() {
            let side = |x: VertexId| tf.cycle_of_vertex(x);
            if side(e.u) == keep || side(e.v) == keep {
                colors[e.id] = 3;
            }
        }
        for (i, &e) in ham.iter().enumerate() {
            colors[e] = if i % 2 == 0 { 1 } else { 2 };
        }
        Some(colors)
    };
    let c_keep1 = side_colors(1)?;
    let c_keep0 = side_colors(0)?;
    // Rename the colours of the cycle-0 side to agree on the cross edges.
    let mut rename = [0u8; 4];
    for &(e, _, _) in &shape.cross {
        rename[c_keep0[e] as usize] = c_keep1[e];
    }
    let mut colors = vec![0u8; g.edge_count()];
    for e in g.edges() {
        let (a, b) = (tf.cycle_of_vertex(e.u), tf.cycle_of_vertex(e.v));
        colors[e.id] = if a == 0 && b == 0 {
            rename[c_keep0[e.id] as usize]
        } else {
            c_keep1[e.id]
        };
    }
    let proper = g.vertices().all(|v| {
        let mut seen = [false; 4];
        g.incident(v).iter().all(|&e| {
            let c = colors[e] as usize;
            (1..=3).contains(&c) && !std::mem::replace(&mut seen[c], true)
        })
    });
    proper.then(|| (0..g.edge_count()).filter(|&e| colors[e] == 3).collect())
}

/// The case where one cycle is a triangle `u1u2u3` whose partners on the
/// other cycle are pairwise non-adjacent. `choice` selects which triangle
/// vertex plays `u2`.
fn triangle_case(
    g: &Pseudograph,
    tf: &TwoFactor,
    shape: &Shape,
    tri: usize,
    choice: usize,
    depth: usize,
) -> Result<Option<Solved>> {
    let f = tf.matching();
    let t = &tf.cycles()[tri];
    let o = &tf.cycles()[1 - tri];
    let (u1, u2) = (t.vertices[(choice + 1) % 3], t.vertices[choice]);
    let u1u3 = t.edges[(choice + 1) % 3];
    let e_u2 = f.edge_at(u2);
    let v2 = g.edge(e_u2).other(u2);
    let len = o.len();
    let p = tf.position(v2);
    let a = o.vertices[(p + len - 1) % len];
    let b = o.vertices[(p + 1) % len];
    // Path a .. b around the cycle avoiding v2; alternate edges from a.
    let path: Vec<EdgeId> = (0..len - 2).map(|k| o.edges[(p + 2 * len - 2 - k) % len]).collect();
    let mut f_prime: Vec<EdgeId> = path.iter().step_by(2).copied().collect();
    f_prime.extend([e_u2, u1u3]);
    let Ok(fp) = PerfectMatching::new(g, f_prime.clone()) else {
        return Ok(None);
    };
    let tfp = complement_two_factor(g, &fp)?;
    let (cf, cg) = (tfp.cycle_of_vertex(v2), tfp.cycle_of_vertex(u1));
    let cycles = tfp.cycles();
    if cf == cg || (!cycles[cf].is_odd() && !cycles[cg].is_odd()) {
        return Ok(constant_on(g, f_prime)?.map(|(m, t)| (m, t, shape.record(ProofCase::Case2bEven, depth))));
    }

    let in_cf = |x: VertexId| tfp.cycle_of_vertex(x) == cf;
    let escape = cycles[cf]
        .vertices
        .iter()
        .copied()
        .filter(|&w| w != v2 && w != a && w != b)
        .map(|w| fp.edge_at(w))
        .find(|&e| {
            let (x, y) = g.endpoints(e);
            !(in_cf(x) && in_cf(y))
        });
    if let Some(e_w) = escape {
        let inst = FlowInstance::new(g, &fp)?;
        let q = inst.quotient();
        let qe_w = inst.contracted.quotient_edge(e_w).unwrap();
        let far = q.edge(qe_w).other(cf);
        let Some(route) = quotient_path(q, far, cg, cf) else {
            return Ok(None);
        };
        let mut beta: Vec<EdgeId> = route.iter().map(|&qe| inst.contracted.edge_origin(qe)).collect();
        beta.push(e_w);
        let found = verified(g, f_prime, |e| {
            if e == e_u2 {
                KleinValue::Alpha
            } else if beta.contains(&e) {
                KleinValue::Beta
            } else {
                KleinValue::AlphaBeta
            }
        })?;
        return Ok(found.map(|(m, t)| (m, t, shape.record(ProofCase::Case2bRewire, depth))));
    }

    // Exactly three edges leave C_f: split there and recurse on the side
    // containing the triangle.
    let split = Split::new(g, |x| in_cf(x));
    let f1: Vec<EdgeId> = f
        .edge_ids()
        .iter()
        .filter_map(|&e| split.outer_edge[e])
        .collect();
    let Ok(f1) = PerfectMatching::new(&split.outer, f1) else {
        return Ok(None);
    };
    let tf1 = complement_two_factor(&split.outer, &f1)?;
    let Some((f0, theta0, inner)) = solve(&split.outer, &tf1, depth + 1)? else {
        return Ok(None);
    };
    let t_outer = f0.edge_at(split.outer_hub);
    let t_g = split.outer_origin[t_outer];
    let x = theta0.get(f0.edge_ids().binary_search(&t_outer).unwrap());

    // Hamiltonian cycle of the C_f side closed through the contracted rest,
    // entering between a and v2.
    let cyc = &cycles[cf];
    let k = cyc.len();
    let pv = tfp.position(v2);
    let toward_a = cyc.vertices[(pv + k - 1) % k] == a;
    let ring: Vec<EdgeId> = if toward_a {
        // Walk forward from v2 so the last vertex reached is a.
        (0..k - 1).map(|i| cyc.edges[(pv + i) % k]).collect()
    } else {
        (0..k - 1).map(|i| cyc.edges[(pv + 2 * k - 1 - i) % k]).collect()
    };
    let mut ham = ring;
    ham.push(fp.edge_at(a));
    ham.push(e_u2);
    let mut color = vec![0u8; g.edge_count()];
    for e in g.edges() {
        if in_cf(e.u) || in_cf(e.v) {
            color[e.id] = 3;
        }
    }
    for (i, &e) in ham.iter().enumerate() {
        color[e] = if i % 2 == 0 { 1 } else { 2 };
    }
    let class = color[t_g];
    let mut j_prime: Vec<EdgeId> = f0.edge_ids().iter().map(|&e| split.outer_origin[e]).collect();
    j_prime.extend((0..g.edge_count()).filter(|&e| color[e] == class && e != t_g));
    let value_of_f0 = |e: EdgeId| -> Option<KleinValue> {
        let oe = split.outer_edge[e]?;
        let idx = f0.edge_ids().binary_search(&oe).ok()?;
        Some(theta0.get(idx))
    };
    let found = verified(g, j_prime, |e| value_of_f0(e).unwrap_or(x))?;
    Ok(found.map(|(m, t)| {
        let mut record = shape.record(ProofCase::Case2bRecursion, depth);
        record.nested = Some(Box::new(inner));
        (m, t, record)
    }))
}

/// Shortest path of non-loop quotient edges from `from` to `to` avoiding
/// vertex `avoid`; empty when `from == to`.
fn quotient_path(q: &Pseudograph, from: VertexId, to: VertexId, avoid: VertexId) -> Option<Vec<EdgeId>> {
    let mut via = vec![None; q.vertex_count()];
    let mut seen = vec![false; q.vertex_count()];
    seen[from] = true;
    seen[avoid] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            let mut path = Vec::new();
            let mut cur = to;
            while let Some(e) = via[cur] {
                path.push(e);
                cur = q.edge(e).other(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &e in q.incident(x) {
            let y = q.edge(e).other(x);
            if !seen[y] {
                seen[y] = true;
                via[y] = Some(e);
                queue.push_back(y);
            }
        }
    }
    None
}

/// `G` with a vertex set collapsed to a single hub vertex.
struct Split {
    outer: Pseudograph,
    outer_hub: VertexId,
    /// Outer edge id for every source edge not inside the collapsed set.
    outer_edge: Vec<Option<EdgeId>>,
    outer_origin: Vec<EdgeId>,
}

impl Split {
    fn new(g: &Pseudograph, inside: impl Fn(VertexId) -> bool) -> Split {
        let mut index = vec![usize::MAX; g.vertex_count()];
        let mut next = 0;
        for v in g.vertices() {
            if !inside(v) {
                index[v] = next;
                next += 1;
            }
        }
        let hub = next;
        let map = |v: VertexId| if inside(v) { hub } else { index[v] };
        let mut pairs = Vec::new();
        let mut outer_edge = vec![None; g.edge_count()];
        let mut outer_origin = Vec::new();
        for e in g.edges() {
            if inside(e.u) && inside(e.v) {
                continue;
            }
            outer_edge[e.id] = Some(pairs.len());
            outer_origin.push(e.id);
            pairs.push((map(e.u), map(e.v)));
        }
        Split {
            outer: Pseudograph::new(hub + 1, &pairs).expect("indices in range"),
            outer_hub: hub,
            outer_edge,
            outer_origin,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::matching::enumerate_perfect_matchings;

    fn outer_inner_factor(g: &Pseudograph, n: usize) -> TwoFactor {
        let spokes = PerfectMatching::new(g, (2 * n..3 * n).collect()).unwrap();
        complement_two_factor(g, &spokes).unwrap()
    }

    fn witness(g: &Pseudograph, tf: &TwoFactor) -> TwoCycleWitness {
        match two_odd_cycle_flow(g, tf).unwrap() {
            TwoCycleOutcome::Flow(w) => *w,
            TwoCycleOutcome::Petersen => panic!("unexpected Petersen verdict"),
        }
    }

    #[test]
    fn petersen_is_refused() {
        let p = generators::petersen();
        let f = enumerate_perfect_matchings(&p).next().unwrap();
        let tf = complement_two_factor(&p, &f).unwrap();
        assert!(matches!(two_odd_cycle_flow(&p, &tf).unwrap(), TwoCycleOutcome::Petersen));
    }

    #[test]
    fn seven_cycles_use_one_alpha_and_one_beta() {
        let g = generators::permutation_graph(&[0, 3, 6, 2, 5, 1, 4]).unwrap();
        let tf = outer_inner_factor(&g, 7);
        let w = witness(&g, &tf);
        assert_eq!(w.provenance.case, ProofCase::Case1);
        assert_eq!(w.flow.count(KleinValue::Alpha), 1);
        assert_eq!(w.flow.count(KleinValue::Beta), 1);
    }

    #[test]
    fn triangular_prism_is_case_2a() {
        let g = generators::prism(3).unwrap();
        let tf = outer_inner_factor(&g, 3);
        let w = witness(&g, &tf);
        assert_eq!(w.provenance.case, ProofCase::Case2a);
        assert_eq!((w.provenance.n, w.provenance.n1, w.provenance.n2), (3, 3, 3));
    }

    #[test]
    fn triangle_against_long_cycle_is_case_2b() {
        let mut cases = Vec::new();
        for seed in 0..40 {
            let (g, f) = generators::random_two_odd_cycles(3, 9, 3, seed).unwrap();
            let tf = complement_two_factor(&g, &f).unwrap();
            let w = witness(&g, &tf);
            cases.push(w.provenance.case);
        }
        assert!(cases.iter().any(|c| matches!(
            c,
            ProofCase::Case2bEven | ProofCase::Case2bRewire | ProofCase::Case2bRecursion
        )));
        assert!(!cases.contains(&ProofCase::ExhaustiveFallback));
    }

    #[test]
    fn even_factor_is_constant() {
        let g = generators::prism(4).unwrap();
        let tf = outer_inner_factor(&g, 4);
        let w = witness(&g, &tf);
        assert_eq!(w.provenance.case, ProofCase::EvenCycles);
    }

    #[test]
    fn bridged_input_is_rejected() {
        let g = generators::fig3_graph();
        let f = enumerate_perfect_matchings(&g).next().unwrap();
        let tf = complement_two_factor(&g, &f).unwrap();
        assert!(two_odd_cycle_flow(&g, &tf).is_err());
    }
}
