//! Edge colourings: poor/rich/abnormal classification, exact normal
//! chromatic index, colourings built from flows, and reductions.

mod hcolor;
mod reduce;
mod search;

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::flow::{conserves, FlowAssignment, FlowInstance, FlowSearch, SearchLimits, SearchStats};
use crate::graph::{EdgeId, Pseudograph, VertexId};
use crate::matching::TwoFactor;

pub use hcolor::{h_coloring, is_h_coloring};
pub use reduce::{
    contract_triangle, lift_over_2_cut, lift_over_triangle, split_two_cut, triangles, two_edge_cuts, TriangleContraction,
    TwoCutSplit,
};
pub use search::three_edge_coloring;

/// Colours `1..=k` indexed by edge id.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeColoring {
    pub k: u32,
    pub colors: Vec<u32>,
}

impl EdgeColoring {
    pub fn new(k: u32, colors: Vec<u32>) -> Result<Self> {
        if let Some(e) = colors.iter().position(|&c| c == 0 || c > k) {
            return Err(Error::input(format!("edge {e} has colour {} outside 1..={k}", colors[e])));
        }
        Ok(EdgeColoring { k, colors })
    }

    pub(crate) fn from_small(k: u32, colors: &[u8]) -> Self {
        EdgeColoring {
            k,
            colors: colors.iter().map(|&c| c as u32).collect(),
        }
    }

    pub fn color(&self, e: EdgeId) -> u32 {
        self.colors[e]
    }

    /// Number of distinct colours actually used.
    pub fn used_colors(&self) -> usize {
        let mut c = self.colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    /// Colours on the edges at `v`.
    pub fn star(&self, g: &Pseudograph, v: VertexId) -> Vec<u32> {
        g.incident(v).iter().map(|&e| self.colors[e]).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeClass {
    Poor,
    Abnormal,
    Rich,
}

/// Class of an edge together with `|S(u) ∪ S(v)|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub class: EdgeClass,
    pub union_size: usize,
}

/// Checks that `c` is a proper colouring of the loopless graph `g`.
pub fn check_proper(g: &Pseudograph, c: &EdgeColoring) -> Result<()> {
    if c.colors.len() != g.edge_count() {
        return Err(Error::input(format!(
            "colouring has {} entries for {} edges",
            c.colors.len(),
            g.edge_count()
        )));
    }
    if g.has_loops() {
        return Err(Error::input("graphs with loops have no proper edge colouring"));
    }
    for v in g.vertices() {
        let mut star = c.star(g, v);
        star.sort_unstable();
        if star.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::input(format!("two edges at vertex {v} share a colour")));
        }
    }
    Ok(())
}

fn union_size(g: &Pseudograph, c: &EdgeColoring, e: EdgeId) -> usize {
    let (u, v) = g.endpoints(e);
    let mut s: Vec<u32> = c.star(g, u);
    s.extend(c.star(g, v));
    s.sort_unstable();
    s.dedup();
    s.len()
}

/// Poor (union 3), abnormal (4) or rich (5).
pub fn classify_edge(g: &Pseudograph, c: &EdgeColoring, e: EdgeId) -> Result<Classification> {
    check_proper(g, c)?;
    let (u, v) = g.endpoints(e);
    if g.degree(u) != 3 || g.degree(v) != 3 {
        return Err(Error::input(format!("edge {e} has an endpoint of degree other than 3")));
    }
    Ok(classify_unchecked(g, c, e))
}

fn classify_unchecked(g: &Pseudograph, c: &EdgeColoring, e: EdgeId) -> Classification {
    let union_size = union_size(g, c, e);
    let class = match union_size {
        3 => EdgeClass::Poor,
        5 => EdgeClass::Rich,
        _ => EdgeClass::Abnormal,
    };
    Classification { class, union_size }
}

/// Normality verdict with the abnormal edges as witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalityReport {
    pub normal: bool,
    pub abnormal: Vec<EdgeId>,
}

pub fn is_normal(g: &Pseudograph, c: &EdgeColoring) -> Result<NormalityReport> {
    check_proper(g, c)?;
    let abnormal: Vec<EdgeId> = (0..g.edge_count())
        .filter(|&e| classify_unchecked(g, c, e).class == EdgeClass::Abnormal)
        .collect();
    Ok(NormalityReport {
        normal: abnormal.is_empty(),
        abnormal,
    })
}

/// Search for a normal colouring with at most `k` colours.
pub fn normal_coloring(g: &Pseudograph, k: u32, limits: SearchLimits) -> Result<(Option<EdgeColoring>, SearchStats)> {
    if !crate::graph::is_cubic(g) || g.has_loops() {
        return Err(Error::input("normal colourings need a loopless cubic graph"));
    }
    if k > 30 {
        return Err(Error::input("palette sizes above 30 are not supported"));
    }
    let mut s = search::ColoringSearch::new(g, k as u8, true, limits);
    let found = s.run()?.map(|c| EdgeColoring::from_small(k, &c));
    Ok((found, s.stats()))
}

/// Result of [`chi_n_exact`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiN {
    pub k: u32,
    pub witness: EdgeColoring,
    /// Search statistics for every palette size tried, smallest first; all
    /// but the last ended without a colouring.
    pub attempts: Vec<(u32, SearchStats)>,
    /// The graph has parallel edges, where the index is not classically
    /// defined.
    pub multigraph: bool,
}

/// Smallest `k <= k_max` admitting a normal `k`-edge-colouring.
pub fn chi_n_exact(g: &Pseudograph, k_max: u32, limits: SearchLimits) -> Result<Option<ChiN>> {
    let mut attempts = Vec::new();
    for k in 3..=k_max {
        let (found, stats) = normal_coloring(g, k, limits)?;
        attempts.push((k, stats));
        if let Some(witness) = found {
            if !is_normal(g, &witness)?.normal {
                return Err(Error::Discrepancy("search returned an abnormal colouring".into()));
            }
            return Ok(Some(ChiN {
                k,
                witness,
                attempts,
                multigraph: !g.is_simple(),
            }));
        }
    }
    Ok(None)
}

/// A doubled edge `uv` whose third edges at `u` and `v` share a vertex, so
/// the doubled edges are abnormal in every proper colouring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralWitness {
    pub doubled: [EdgeId; 2],
    pub u: VertexId,
    pub v: VertexId,
    pub third_at_u: EdgeId,
    pub third_at_v: EdgeId,
}

pub fn structural_abnormality(g: &Pseudograph) -> Option<StructuralWitness> {
    for u in g.vertices() {
        for v in u + 1..g.vertex_count() {
            let between: Vec<EdgeId> = g
                .incident(u)
                .iter()
                .copied()
                .filter(|&e| g.edge(e).other(u) == v)
                .collect();
            if between.len() != 2 || g.degree(u) != 3 || g.degree(v) != 3 {
                continue;
            }
            let third = |x: VertexId| g.incident(x).iter().copied().find(|e| !between.contains(e));
            let (Some(tu), Some(tv)) = (third(u), third(v)) else {
                continue;
            };
            let (a, b) = g.endpoints(tu);
            let (c, d) = g.endpoints(tv);
            if tu != tv && (a == c || a == d || b == c || b == d) {
                return Some(StructuralWitness {
                    doubled: [between[0], between[1]],
                    u,
                    v,
                    third_at_u: tu,
                    third_at_v: tv,
                });
            }
        }
    }
    None
}

/// A nowhere-zero Z2³ flow, one 3-bit value per edge. Bit 2 is the first
/// coordinate, bits 1 and 0 hold the Klein part (`α = 10`, `β = 01`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Z2CubedFlow {
    pub values: Vec<u8>,
}

impl Z2CubedFlow {
    pub fn is_flow(&self, g: &Pseudograph) -> bool {
        self.values.len() == g.edge_count() && self.values.iter().all(|&x| x < 8) && conserves(g, &self.values)
    }
}

impl Serialize for Z2CubedFlow {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let codes: Vec<String> = self.values.iter().map(|x| format!("{x:03b}")).collect();
        codes.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Z2CubedFlow {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let codes = Vec::<String>::deserialize(d)?;
        let values = codes
            .iter()
            .map(|c| {
                if c.len() == 3 {
                    u8::from_str_radix(c, 2).ok()
                } else {
                    None
                }
                .ok_or_else(|| serde::de::Error::custom(format!("invalid Z2^3 value {c:?}")))
            })
            .collect::<std::result::Result<_, _>>()?;
        Ok(Z2CubedFlow { values })
    }
}

impl fmt::Display for Z2CubedFlow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let codes: Vec<String> = self.values.iter().map(|x| format!("{x:03b}")).collect();
        write!(f, "[{}]", codes.join(" "))
    }
}

/// `(0, α)` and `(0, β)`.
pub const ZERO_ALPHA: u8 = 0b010;
pub const ZERO_BETA: u8 = 0b001;

/// Palette for the 6-colouring from a flow: `(0,α+β), (0,α), (1,0), (1,α),
/// (1,β), (1,α+β)` are colours 1..6.
pub const SIX_PALETTE: [u8; 6] = [0b011, 0b010, 0b100, 0b110, 0b101, 0b111];

/// Palette for 7-colourings by Z2³ flows.
pub const SEVEN_PALETTE: [u8; 7] = [0b011, 0b010, 0b001, 0b100, 0b110, 0b101, 0b111];

fn palette_coloring(values: &[u8], palette: &[u8]) -> EdgeColoring {
    let colors = values
        .iter()
        .map(|x| palette.iter().position(|p| p == x).expect("value in palette") as u32 + 1)
        .collect();
    EdgeColoring {
        k: palette.len() as u32,
        colors,
    }
}

/// The colouring produced from a non-conflicting flow, with the
/// intermediate Z2³ flow.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowColoring {
    pub coloring: EdgeColoring,
    /// The Z2³ flow before `(0,β)` is merged into `(0,α)`.
    pub mu: Z2CubedFlow,
}

/// Normal 6-edge-colouring from a non-conflicting flow.
///
/// Matching edges get `(0, θ)`. Each 2-factor cycle starts from a value with
/// first coordinate 1 and is propagated by conservation. Finally `(0,β)` is
/// merged into `(0,α)`.
pub fn coloring_from_flow(g: &Pseudograph, tf: &TwoFactor, theta: &FlowAssignment) -> Result<FlowColoring> {
    let inst = FlowInstance::from_two_factor(g, tf.clone())?;
    if !inst.is_nonconflicting(theta)? {
        return Err(Error::precondition("flow is not a non-conflicting nowhere-zero flow"));
    }
    let f = tf.matching();
    let mut mu = vec![0u8; g.edge_count()];
    for (q, &e) in f.edge_ids().iter().enumerate() {
        mu[e] = theta.get(q).bits();
    }
    for (c, cycle) in tf.cycles().iter().enumerate() {
        let k = cycle.len();
        let start = [0b100u8, 0b110, 0b101, 0b111].into_iter().find_map(|x0| {
            let mut vals = vec![x0; k];
            for i in 1..k {
                vals[i] = vals[i - 1] ^ mu[f.edge_at(cycle.vertices[i])];
            }
            let closes = vals[k - 1] ^ vals[0] ^ mu[f.edge_at(cycle.vertices[0])] == 0;
            let proper = (0..k).all(|i| vals[i] != vals[(i + 1) % k] || k == 1);
            (closes && proper).then_some(vals)
        });
        let Some(vals) = start else {
            return Err(Error::Discrepancy(format!("cycle {c} admits no consistent start value")));
        };
        for (i, &e) in cycle.edges.iter().enumerate() {
            mu[e] = vals[i];
        }
    }
    let mu = Z2CubedFlow { values: mu };
    if !mu.is_flow(g) {
        return Err(Error::Discrepancy("propagated values do not conserve".into()));
    }
    let merged: Vec<u8> = mu
        .values
        .iter()
        .map(|&x| if x == ZERO_BETA { ZERO_ALPHA } else { x })
        .collect();
    let coloring = palette_coloring(&merged, &SIX_PALETTE);
    if !is_normal(g, &coloring)?.normal {
        return Err(Error::Discrepancy("colouring from flow is not normal".into()));
    }
    Ok(FlowColoring { coloring, mu })
}

/// A nowhere-zero Z2³ flow on `g` and the normal 7-colouring it defines.
pub fn z2cubed_flow_coloring(g: &Pseudograph, limits: SearchLimits) -> Result<(Z2CubedFlow, EdgeColoring)> {
    if !crate::graph::is_cubic(g) || g.has_loops() {
        return Err(Error::input("expected a loopless cubic graph"));
    }
    let candidates: Vec<u8> = SEVEN_PALETTE.to_vec();
    let mut search = FlowSearch::new(g, &candidates, Vec::new(), limits);
    let Some(bits) = search.next_solution()? else {
        return Err(Error::input("graph has no nowhere-zero Z2^3 flow (it has a bridge)"));
    };
    let flow = Z2CubedFlow { values: bits.to_vec() };
    let coloring = palette_coloring(&flow.values, &SEVEN_PALETTE);
    if !is_normal(g, &coloring)?.normal {
        return Err(Error::Discrepancy("Z2^3 flow colouring is not normal".into()));
    }
    Ok((flow, coloring))
}

/// Checks that `mu⁻¹({x, y})` is a matching and that no edge `uv` has an
/// `x`-edge at `u` and a `y`-edge at `v` (other than `uv` itself).
pub fn verify_conjecture4_witness(g: &Pseudograph, mu: &Z2CubedFlow, x: u8, y: u8) -> Result<bool> {
    if !mu.is_flow(g) {
        return Err(Error::precondition("values are not a nowhere-zero Z2^3 flow"));
    }
    let is_xy = |e: EdgeId| mu.values[e] == x || mu.values[e] == y;
    for v in g.vertices() {
        if g.incident(v).iter().filter(|&&e| is_xy(e)).count() > 1 {
            return Ok(false);
        }
    }
    let has = |v: VertexId, skip: EdgeId, value: u8| {
        g.incident(v).iter().any(|&e| e != skip && mu.values[e] == value)
    };
    for e in g.edges() {
        if (has(e.u, e.id, x) && has(e.v, e.id, y)) || (has(e.u, e.id, y) && has(e.v, e.id, x)) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::KleinValue;
    use crate::generators;
    use crate::matching::{complement_two_factor, enumerate_perfect_matchings};

    /// Oracle: classify by explicit set union.
    fn oracle_union(g: &Pseudograph, c: &EdgeColoring, e: EdgeId) -> usize {
        let (u, v) = g.endpoints(e);
        let mut set = std::collections::BTreeSet::new();
        for &x in g.incident(u).iter().chain(g.incident(v)) {
            set.insert(c.colors[x]);
        }
        set.len()
    }

    #[test]
    fn three_colorings_are_normal_and_poor() {
        for g in [generators::k4(), generators::k33(), generators::prism(5).unwrap()] {
            let c = three_edge_coloring(&g).unwrap();
            let c = EdgeColoring::from_small(3, &c);
            for e in 0..g.edge_count() {
                assert_eq!(classify_edge(&g, &c, e).unwrap().class, EdgeClass::Poor);
                assert_eq!(oracle_union(&g, &c, e), 3);
            }
            assert!(is_normal(&g, &c).unwrap().normal);
        }
        assert!(three_edge_coloring(&generators::petersen()).is_none());
    }

    #[test]
    fn rainbow_coloring_is_rich() {
        let g = generators::petersen();
        let c = EdgeColoring::new(15, (1..=15).collect()).unwrap();
        for e in 0..15 {
            assert_eq!(classify_edge(&g, &c, e).unwrap().class, EdgeClass::Rich);
        }
    }

    #[test]
    fn fig3_coloring_from_the_figure() {
        let g = generators::fig3_graph();
        let c = EdgeColoring::new(7, generators::fig3_coloring()).unwrap();
        assert!(is_normal(&g, &c).unwrap().normal);
        for e in 0..g.edge_count() {
            let class = classify_edge(&g, &c, e).unwrap().class;
            let expected = if e == generators::FIG3_BRIDGE { EdgeClass::Poor } else { EdgeClass::Rich };
            assert_eq!(class, expected);
        }
    }

    #[test]
    fn improper_colorings_are_rejected() {
        let g = generators::k4();
        let c = EdgeColoring::new(3, vec![1; 6]).unwrap();
        assert!(classify_edge(&g, &c, 0).is_err());
        assert!(is_normal(&g, &c).is_err());
        assert!(EdgeColoring::new(3, vec![0, 1]).is_err());
    }

    #[test]
    fn small_chi_n_values() {
        let k4 = chi_n_exact(&generators::k4(), 7, SearchLimits::unlimited()).unwrap().unwrap();
        assert_eq!(k4.k, 3);
        let p = chi_n_exact(&generators::petersen(), 7, SearchLimits::unlimited()).unwrap().unwrap();
        assert_eq!(p.k, 5);
        assert_eq!(p.attempts.len(), 3);
        assert!(!p.multigraph);
    }

    #[test]
    fn fig4_structure() {
        let g = generators::fig4_graph();
        let w = structural_abnormality(&g).unwrap();
        assert_eq!(g.multiplicity(w.u, w.v), 2);
        assert!(structural_abnormality(&generators::petersen()).is_none());
        assert!(structural_abnormality(&generators::k23()).is_none());
    }

    #[test]
    fn flow_coloring_on_k33_and_k4() {
        for g in [generators::k33(), generators::k4()] {
            for f in enumerate_perfect_matchings(&g) {
                let tf = complement_two_factor(&g, &f).unwrap();
                let theta = FlowAssignment::constant(f.len(), KleinValue::AlphaBeta);
                let out = coloring_from_flow(&g, &tf, &theta).unwrap();
                assert!(out.coloring.used_colors() <= 6);
                assert!(out.mu.is_flow(&g));
                assert!(verify_conjecture4_witness(&g, &out.mu, ZERO_ALPHA, ZERO_BETA).unwrap());
            }
        }
    }

    #[test]
    fn conflicting_flow_is_refused() {
        let g = generators::prism(3).unwrap();
        let f = crate::matching::PerfectMatching::new(&g, vec![6, 7, 8]).unwrap();
        let tf = complement_two_factor(&g, &f).unwrap();
        let theta = FlowAssignment::new(vec![KleinValue::Alpha, KleinValue::Beta, KleinValue::AlphaBeta]);
        assert!(matches!(coloring_from_flow(&g, &tf, &theta), Err(Error::Precondition(_))));
    }

    #[test]
    fn seven_colorings_from_z2_cubed_flows() {
        for g in [generators::petersen(), generators::k33()] {
            let (mu, c) = z2cubed_flow_coloring(&g, SearchLimits::unlimited()).unwrap();
            assert!(mu.is_flow(&g));
            assert!(is_normal(&g, &c).unwrap().normal);
        }
        assert!(z2cubed_flow_coloring(&generators::fig3_graph(), SearchLimits::unlimited()).is_err());
    }

    #[test]
    fn z2_cubed_codes_round_trip() {
        let mu = Z2CubedFlow { values: vec![1, 2, 3, 4, 7] };
        let json = serde_json::to_string(&mu).unwrap();
        assert_eq!(json, r#"["001","010","011","100","111"]"#);
        assert_eq!(serde_json::from_str::<Z2CubedFlow>(&json).unwrap(), mu);
    }
}
