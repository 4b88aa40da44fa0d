//! Nowhere-zero Z2×Z2 flows on contracted graphs and their conflicts.

mod search;
mod two_cycles;

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{contract_two_factor, ContractedGraph, EdgeId, Pseudograph, VertexId};
use crate::matching::{
    complement_two_factor, enumerate_perfect_matchings, matchings_meeting_all_3cuts_once, PerfectMatching, TwoFactor,
};
use crate::par;

pub(crate) use search::{is_conflict, FlowSearch, ALPHA, ALPHA_BETA, BETA, KLEIN_ORDER};
pub use search::{SearchLimits, SearchStats};
pub use two_cycles::{two_odd_cycle_flow, CaseRecord, ProofCase, TwoCycleOutcome, TwoCycleWitness};

/// A nonzero element of Z2×Z2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KleinValue {
    Alpha,
    Beta,
    AlphaBeta,
}

impl KleinValue {
    pub const ALL: [KleinValue; 3] = [KleinValue::Alpha, KleinValue::Beta, KleinValue::AlphaBeta];

    /// `α = (1,0)` is `0b10`, `β = (0,1)` is `0b01`.
    pub fn bits(self) -> u8 {
        match self {
            KleinValue::Alpha => ALPHA,
            KleinValue::Beta => BETA,
            KleinValue::AlphaBeta => ALPHA_BETA,
        }
    }

    pub fn from_bits(bits: u8) -> Option<Self> {
        match bits {
            ALPHA => Some(KleinValue::Alpha),
            BETA => Some(KleinValue::Beta),
            ALPHA_BETA => Some(KleinValue::AlphaBeta),
            _ => None,
        }
    }

    /// Group sum, or `None` when it is zero.
    pub fn plus(self, other: KleinValue) -> Option<KleinValue> {
        Self::from_bits(self.bits() ^ other.bits())
    }

    /// The automorphism exchanging `α` and `β`.
    pub fn swapped(self) -> KleinValue {
        match self {
            KleinValue::Alpha => KleinValue::Beta,
            KleinValue::Beta => KleinValue::Alpha,
            KleinValue::AlphaBeta => KleinValue::AlphaBeta,
        }
    }

    /// Serialized form: `"10"`, `"01"` or `"11"`.
    pub fn code(self) -> &'static str {
        match self {
            KleinValue::Alpha => "10",
            KleinValue::Beta => "01",
            KleinValue::AlphaBeta => "11",
        }
    }

    pub fn from_code(s: &str) -> Option<Self> {
        match s {
            "10" => Some(KleinValue::Alpha),
            "01" => Some(KleinValue::Beta),
            "11" => Some(KleinValue::AlphaBeta),
            _ => None,
        }
    }
}

impl fmt::Display for KleinValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KleinValue::Alpha => "α",
            KleinValue::Beta => "β",
            KleinValue::AlphaBeta => "α+β",
        })
    }
}

impl Serialize for KleinValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.code())
    }
}

impl<'de> Deserialize<'de> for KleinValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        KleinValue::from_code(&s)
            .ok_or_else(|| serde::de::Error::custom(format!("invalid Klein value {s:?}")))
    }
}

/// Values on the edges of a contracted graph, indexed by quotient edge id.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FlowAssignment {
    values: Vec<KleinValue>,
}

impl FlowAssignment {
    pub fn new(values: Vec<KleinValue>) -> Self {
        FlowAssignment { values }
    }

    pub fn constant(len: usize, value: KleinValue) -> Self {
        FlowAssignment {
            values: vec![value; len],
        }
    }

    pub(crate) fn from_bits(bits: &[u8]) -> Self {
        FlowAssignment {
            values: bits
                .iter()
                .map(|&b| KleinValue::from_bits(b).expect("search yields nonzero values"))
                .collect(),
        }
    }

    pub fn values(&self) -> &[KleinValue] {
        &self.values
    }

    pub fn get(&self, q: EdgeId) -> KleinValue {
        self.values[q]
    }

    pub fn set(&mut self, q: EdgeId, value: KleinValue) {
        self.values[q] = value;
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn swapped(&self) -> FlowAssignment {
        FlowAssignment {
            values: self.values.iter().map(|v| v.swapped()).collect(),
        }
    }

    pub fn count(&self, value: KleinValue) -> usize {
        self.values.iter().filter(|&&v| v == value).count()
    }
}

/// One conflicting 2-factor edge `uv` with the matching edges at its ends.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conflict {
    pub edge: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
    pub edge_at_u: EdgeId,
    pub value_at_u: KleinValue,
    pub edge_at_v: EdgeId,
    pub value_at_v: KleinValue,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConflictReport {
    pub conflicts: Vec<Conflict>,
}

impl ConflictReport {
    pub fn is_empty(&self) -> bool {
        self.conflicts.is_empty()
    }

    pub fn len(&self) -> usize {
        self.conflicts.len()
    }

    /// Conflicting edge ids in increasing order.
    pub fn edges(&self) -> Vec<EdgeId> {
        self.conflicts.iter().map(|c| c.edge).collect()
    }
}

/// Options shared by the multi-matching drivers.
#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub limits: SearchLimits,
    /// Fan per-matching searches out over rayon. Ignored without the
    /// `parallel` feature.
    pub parallel: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            limits: SearchLimits::unlimited(),
            parallel: par::PARALLEL_AVAILABLE,
        }
    }
}

impl SearchOptions {
    pub fn sequential() -> Self {
        SearchOptions {
            parallel: false,
            ..Self::default()
        }
    }
}

/// True iff `theta` conserves at every vertex of the quotient. Loops always
/// contribute `x + x = 0`.
pub fn verify_flow(h: &ContractedGraph, theta: &FlowAssignment) -> Result<bool> {
    let q = h.quotient();
    if theta.len() != q.edge_count() {
        return Err(Error::input(format!(
            "flow has {} values but the quotient has {} edges",
            theta.len(),
            q.edge_count()
        )));
    }
    let bits: Vec<u8> = theta.values().iter().map(|v| v.bits()).collect();
    Ok(conserves(q, &bits))
}

/// Group-valued conservation check for any bit width.
pub(crate) fn conserves(g: &Pseudograph, bits: &[u8]) -> bool {
    let mut sum = vec![0u8; g.vertex_count()];
    for e in g.edges() {
        if !e.is_loop() {
            sum[e.u] ^= bits[e.id];
            sum[e.v] ^= bits[e.id];
        }
    }
    sum.iter().all(|&s| s == 0) && bits.iter().all(|&b| b != 0)
}

/// All conflicting 2-factor edges of `theta`.
pub fn conflicts(
    g: &Pseudograph,
    tf: &TwoFactor,
    h: &ContractedGraph,
    theta: &FlowAssignment,
) -> Result<ConflictReport> {
    let f = tf.matching();
    if tf.vertex_count() != g.vertex_count() || h.source_edge_count() != g.edge_count() {
        return Err(Error::input("2-factor or contraction belongs to a different graph"));
    }
    if h.edge_origins() != f.edge_ids() {
        return Err(Error::input("contraction does not match the 2-factor"));
    }
    if theta.len() != h.quotient().edge_count() {
        return Err(Error::input("flow length does not match the contraction"));
    }
    let value_of = |e: EdgeId| theta.get(h.quotient_edge(e).expect("matching edge"));
    let mut out = Vec::new();
    for edge in g.edges() {
        if f.contains(edge.id) {
            continue;
        }
        let (fu, fv) = (f.edge_at(edge.u), f.edge_at(edge.v));
        if fu == fv {
            continue;
        }
        let (a, b) = (value_of(fu), value_of(fv));
        if is_conflict(a.bits(), b.bits()) {
            out.push(Conflict {
                edge: edge.id,
                u: edge.u,
                v: edge.v,
                edge_at_u: fu,
                value_at_u: a,
                edge_at_v: fv,
                value_at_v: b,
            });
        }
    }
    Ok(ConflictReport { conflicts: out })
}

/// Every loop set to `α+β`. Conservation is unaffected because loops never
/// enter a vertex sum.
pub fn loop_canonicalize(theta: &FlowAssignment, h: &ContractedGraph) -> FlowAssignment {
    let mut out = theta.clone();
    for e in h.quotient().edges() {
        if e.is_loop() {
            out.set(e.id, KleinValue::AlphaBeta);
        }
    }
    out
}

/// The constant `α+β` flow, valid when every cycle is even.
pub fn even_cycle_flow(tf: &TwoFactor) -> Result<FlowAssignment> {
    if let Some(c) = tf.cycles().iter().position(|c| c.is_odd()) {
        return Err(Error::precondition(format!(
            "cycle {c} has odd length {}",
            tf.cycles()[c].len()
        )));
    }
    Ok(FlowAssignment::constant(tf.matching().len(), KleinValue::AlphaBeta))
}

/// Outcome of a minimum-conflict search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinConflict {
    /// The quotient has no nowhere-zero flow at all.
    NoFlow,
    Best { flow: FlowAssignment, conflicts: usize },
}

/// A graph, a perfect matching, its 2-factor and the contraction, bundled
/// for repeated flow queries.
#[derive(Debug, Clone)]
pub struct FlowInstance<'g> {
    pub graph: &'g Pseudograph,
    pub two_factor: TwoFactor,
    pub contracted: ContractedGraph,
    pairs: Vec<(EdgeId, EdgeId)>,
}

impl<'g> FlowInstance<'g> {
    pub fn new(g: &'g Pseudograph, f: &PerfectMatching) -> Result<Self> {
        Self::from_two_factor(g, complement_two_factor(g, f)?)
    }

    pub fn from_two_factor(g: &'g Pseudograph, tf: TwoFactor) -> Result<Self> {
        let h = contract_two_factor(g, &tf)?;
        let f = tf.matching();
        let pairs = g
            .edges()
            .iter()
            .filter(|e| !f.contains(e.id))
            .filter_map(|e| {
                let (fu, fv) = (f.edge_at(e.u), f.edge_at(e.v));
                (fu != fv).then(|| (h.quotient_edge(fu).unwrap(), h.quotient_edge(fv).unwrap()))
            })
            .collect();
        Ok(FlowInstance {
            graph: g,
            two_factor: tf,
            contracted: h,
            pairs,
        })
    }

    pub fn matching(&self) -> &PerfectMatching {
        self.two_factor.matching()
    }

    pub fn quotient(&self) -> &Pseudograph {
        self.contracted.quotient()
    }

    pub fn conflicts(&self, theta: &FlowAssignment) -> Result<ConflictReport> {
        conflicts(self.graph, &self.two_factor, &self.contracted, theta)
    }

    /// Conserving and conflict-free.
    pub fn is_nonconflicting(&self, theta: &FlowAssignment) -> Result<bool> {
        Ok(verify_flow(&self.contracted, theta)? && self.conflicts(theta)?.is_empty())
    }

    fn engine(&self, limits: SearchLimits) -> FlowSearch<'_> {
        FlowSearch::new(self.quotient(), &KLEIN_ORDER, self.pairs.clone(), limits)
    }

    /// First non-conflicting flow in search order, with statistics.
    pub fn find_nonconflicting(&self, limits: SearchLimits) -> Result<(Option<FlowAssignment>, SearchStats)> {
        let mut search = self.engine(limits);
        search.set_bound(Some(1));
        let found = search.next_solution()?.map(FlowAssignment::from_bits);
        Ok((found, search.stats()))
    }

    /// Exhaustive branch and bound over all nowhere-zero flows. Ties go to
    /// the flow met first in search order.
    pub fn min_conflict(&self, limits: SearchLimits) -> Result<(MinConflict, SearchStats)> {
        let mut search = self.engine(limits);
        let mut best = MinConflict::NoFlow;
        while let Some(bits) = search.next_solution()? {
            let flow = FlowAssignment::from_bits(bits);
            let count = search.conflicts();
            best = MinConflict::Best { flow, conflicts: count };
            if count == 0 {
                break;
            }
            search.set_bound(Some(count));
        }
        Ok((best, search.stats()))
    }

    /// [`loop_canonicalize`], checking that the conflict count did not grow.
    pub fn canonicalize_loops(&self, theta: &FlowAssignment) -> Result<FlowAssignment> {
        let out = loop_canonicalize(theta, &self.contracted);
        let (before, after) = (self.conflicts(theta)?.len(), self.conflicts(&out)?.len());
        if after > before {
            return Err(Error::Discrepancy(format!(
                "loop canonicalization raised conflicts from {before} to {after}"
            )));
        }
        Ok(out)
    }
}

/// A non-conflicting flow of `G/F̄` with respect to `f`, if one exists.
pub fn find_nonconflicting_flow(g: &Pseudograph, f: &PerfectMatching) -> Result<Option<FlowAssignment>> {
    Ok(FlowInstance::new(g, f)?.find_nonconflicting(SearchLimits::unlimited())?.0)
}

/// Minimum number of conflicts over all nowhere-zero flows for `f`.
pub fn min_conflict_flow(g: &Pseudograph, f: &PerfectMatching) -> Result<MinConflict> {
    Ok(FlowInstance::new(g, f)?.min_conflict(SearchLimits::unlimited())?.0)
}

/// Outcome of [`claw_free_flow`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClawFreeWitness {
    pub matching: PerfectMatching,
    pub flow: FlowAssignment,
    /// Conflicts of the minimum-conflict flow before loops were reset.
    pub conflicts_before: usize,
    /// Matchings examined, this one included.
    pub matchings_tried: usize,
}

/// Walks the perfect matchings through `e` that meet every 3-edge-cut once.
/// Each gets a minimum-conflict flow with its loops reset to `α+β`; the
/// first that ends conflict-free is returned.
pub fn claw_free_flow(g: &Pseudograph, e: EdgeId, limits: SearchLimits) -> Result<Option<ClawFreeWitness>> {
    if e >= g.edge_count() {
        return Err(Error::input(format!("edge {e} does not exist")));
    }
    for (i, f) in matchings_meeting_all_3cuts_once(g, e).enumerate() {
        let inst = FlowInstance::new(g, &f)?;
        let MinConflict::Best { flow, conflicts } = inst.min_conflict(limits)?.0 else {
            continue;
        };
        let flow = inst.canonicalize_loops(&flow)?;
        if inst.is_nonconflicting(&flow)? {
            return Ok(Some(ClawFreeWitness {
                matching: f,
                flow,
                conflicts_before: conflicts,
                matchings_tried: i + 1,
            }));
        }
    }
    Ok(None)
}

/// Quotients with more edges than this are refused by [`enumerate_nz_flows`].
pub const ENUMERATION_EDGE_LIMIT: usize = 64;

/// Lazy stream of every nowhere-zero flow of a contracted graph.
pub struct NzFlows<'a> {
    search: FlowSearch<'a>,
}

impl Iterator for NzFlows<'_> {
    type Item = FlowAssignment;

    fn next(&mut self) -> Option<FlowAssignment> {
        self.search
            .next_solution()
            .expect("enumeration runs without limits")
            .map(FlowAssignment::from_bits)
    }
}

impl NzFlows<'_> {
    pub fn stats(&self) -> SearchStats {
        self.search.stats()
    }
}

pub fn enumerate_nz_flows(h: &ContractedGraph) -> Result<NzFlows<'_>> {
    let m = h.quotient().edge_count();
    if m > ENUMERATION_EDGE_LIMIT {
        return Err(Error::Resource(format!(
            "flow enumeration is limited to {ENUMERATION_EDGE_LIMIT} quotient edges, got {m}"
        )));
    }
    Ok(NzFlows {
        search: FlowSearch::new(h.quotient(), &KLEIN_ORDER, Vec::new(), SearchLimits::unlimited()),
    })
}

/// Per-matching verdict of a survey.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingVerdict {
    pub matching: Vec<EdgeId>,
    /// A non-conflicting flow, keyed by quotient edge (matching edges in
    /// increasing id order), or `None` after exhaustive search.
    pub flow: Option<FlowAssignment>,
    pub stats: SearchStats,
}

/// Verdicts for every perfect matching, in enumeration order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingSurvey {
    pub verdicts: Vec<MatchingVerdict>,
}

impl MatchingSurvey {
    /// Every matching admits a non-conflicting flow.
    pub fn every(&self) -> bool {
        self.verdicts.iter().all(|v| v.flow.is_some())
    }

    /// Some matching admits one.
    pub fn any(&self) -> bool {
        self.verdicts.iter().any(|v| v.flow.is_some())
    }

    pub fn total_stats(&self) -> SearchStats {
        let mut total = SearchStats::default();
        for v in &self.verdicts {
            total += v.stats;
        }
        total
    }
}

fn verdict_for(g: &Pseudograph, f: &PerfectMatching, limits: SearchLimits) -> Result<MatchingVerdict> {
    let inst = FlowInstance::new(g, f)?;
    let (flow, stats) = inst.find_nonconflicting(limits)?;
    Ok(MatchingVerdict {
        matching: f.edge_ids().to_vec(),
        flow,
        stats,
    })
}

/// Searches every perfect matching of `g` for a non-conflicting flow.
pub fn survey_matchings(g: &Pseudograph, opts: SearchOptions) -> Result<MatchingSurvey> {
    let matchings: Vec<PerfectMatching> = enumerate_perfect_matchings(g).collect();
    let verdicts = par::map(&matchings, opts.parallel, |f| verdict_for(g, f, opts.limits));
    Ok(MatchingSurvey {
        verdicts: verdicts.into_iter().collect::<Result<_>>()?,
    })
}

/// Whether `G/F̄` has a non-conflicting flow for every perfect matching `F`;
/// the survey holds the per-matching witnesses.
pub fn nonconflicting_for_every_two_factor(g: &Pseudograph, opts: SearchOptions) -> Result<MatchingSurvey> {
    survey_matchings(g, opts)
}

/// Matchings handed to the pool at a time by [`find_any_nonconflicting`].
const MATCHING_CHUNK: usize = 256;

/// The first perfect matching (in enumeration order) admitting a
/// non-conflicting flow. Matchings are generated lazily, in chunks.
pub fn find_any_nonconflicting(
    g: &Pseudograph,
    opts: SearchOptions,
) -> Result<Option<(PerfectMatching, FlowAssignment)>> {
    let mut matchings = enumerate_perfect_matchings(g);
    loop {
        let chunk: Vec<PerfectMatching> = matchings.by_ref().take(MATCHING_CHUNK).collect();
        if chunk.is_empty() {
            return Ok(None);
        }
        let hit = par::find_first(&chunk, opts.parallel, |f| match verdict_for(g, f, opts.limits) {
            Ok(v) => v.flow.map(Ok),
            Err(e) => Some(Err(e)),
        });
        match hit {
            None => {}
            Some((i, Ok(flow))) => return Ok(Some((chunk[i].clone(), flow))),
            Some((_, Err(e))) => return Err(e),
        }
    }
}

/// The two edge-disjoint perfect matchings of a 5-regular graph read off a
/// non-conflicting flow on its 5-cycle expansion: `α`-edges and `β`-edges.
///
/// `g` and `tf` must come from
/// [`expand_vertices_to_5cycles`](crate::generators::expand_vertices_to_5cycles),
/// so edge `i < |E(H5)|` of `g` is edge `i` of `h5`.
pub fn extract_disjoint_matchings(
    h5: &Pseudograph,
    g: &Pseudograph,
    tf: &TwoFactor,
    theta: &FlowAssignment,
) -> Result<(PerfectMatching, PerfectMatching)> {
    let m5 = h5.edge_count();
    if tf.matching().edge_ids() != (0..m5).collect::<Vec<_>>().as_slice()
        || g.vertex_count() != 5 * h5.vertex_count()
    {
        return Err(Error::input("graph is not the 5-cycle expansion of the given 5-regular graph"));
    }
    let inst = FlowInstance::from_two_factor(g, tf.clone())?;
    if !verify_flow(&inst.contracted, theta)? {
        return Err(Error::precondition("values do not form a flow"));
    }
    let report = inst.conflicts(theta)?;
    if !report.is_empty() {
        return Err(Error::precondition(format!(
            "flow has {} conflicts, e.g. on edge {}",
            report.len(),
            report.conflicts[0].edge
        )));
    }
    for (c, cycle) in tf.cycles().iter().enumerate() {
        let count = |value| {
            cycle
                .vertices
                .iter()
                .filter(|&&v| theta.get(tf.matching().edge_at(v)) == value)
                .count()
        };
        let (a, b) = (count(KleinValue::Alpha), count(KleinValue::Beta));
        if (a, b) != (1, 1) {
            return Err(Error::Discrepancy(format!(
                "cycle {c} meets {a} α-edges and {b} β-edges instead of one each"
            )));
        }
    }
    let pick = |value| (0..m5).filter(|&e| theta.get(e) == value).collect::<Vec<_>>();
    let ma = PerfectMatching::new(h5, pick(KleinValue::Alpha))?;
    let mb = PerfectMatching::new(h5, pick(KleinValue::Beta))?;
    Ok((ma, mb))
}
