use super::{EdgeId, Pseudograph, VertexId};
use crate::error::{Error, Result};
use crate::matching::TwoFactor;

/// `G / F̄`: every 2-factor cycle collapsed to one vertex.
///
/// Quotient vertex `i` is cycle `i` of the 2-factor. Quotient edges are the
/// matching edges in increasing source id; chords become loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractedGraph {
    quotient: Pseudograph,
    edge_origin: Vec<EdgeId>,
    quotient_edge: Vec<Option<EdgeId>>,
}

impl ContractedGraph {
    pub fn quotient(&self) -> &Pseudograph {
        &self.quotient
    }

    /// Source edge of quotient edge `q`.
    pub fn edge_origin(&self, q: EdgeId) -> EdgeId {
        self.edge_origin[q]
    }

    pub fn edge_origins(&self) -> &[EdgeId] {
        &self.edge_origin
    }

    /// Quotient edge of source edge `e`, if `e` is a matching edge.
    pub fn quotient_edge(&self, e: EdgeId) -> Option<EdgeId> {
        self.quotient_edge.get(e).copied().flatten()
    }

    /// Cycle index of quotient vertex `x` (the identity, kept for clarity at
    /// call sites).
    pub fn cycle_of_vertex(&self, x: VertexId) -> usize {
        x
    }

    pub fn source_edge_count(&self) -> usize {
        self.quotient_edge.len()
    }
}

/// Contracts every cycle of `tf`, checking that `tf` really is a 2-factor of `g`.
pub fn contract_two_factor(g: &Pseudograph, tf: &TwoFactor) -> Result<ContractedGraph> {
    validate(g, tf)?;
    let f = tf.matching();
    let pairs: Vec<(VertexId, VertexId)> = f
        .edge_ids()
        .iter()
        .map(|&e| {
            let (u, v) = g.endpoints(e);
            (tf.cycle_of_vertex(u), tf.cycle_of_vertex(v))
        })
        .collect();
    let quotient = Pseudograph::new(tf.cycles().len(), &pairs)?;
    let mut quotient_edge = vec![None; g.edge_count()];
    for (q, &e) in f.edge_ids().iter().enumerate() {
        quotient_edge[e] = Some(q);
    }
    Ok(ContractedGraph {
        quotient,
        edge_origin: f.edge_ids().to_vec(),
        quotient_edge,
    })
}

fn validate(g: &Pseudograph, tf: &TwoFactor) -> Result<()> {
    let bad = |msg: String| Err(Error::Contract(msg));
    if tf.vertex_count() != g.vertex_count() {
        return bad(format!(
            "2-factor covers {} vertices, graph has {}",
            tf.vertex_count(),
            g.vertex_count()
        ));
    }
    let mut used = vec![false; g.edge_count()];
    for &e in tf.matching().edge_ids() {
        if e >= g.edge_count() {
            return bad(format!("matching edge {e} does not exist"));
        }
        used[e] = true;
    }
    for (c, cycle) in tf.cycles().iter().enumerate() {
        let len = cycle.len();
        if len < 2 || cycle.edges.len() != len {
            return bad(format!("cycle {c} is malformed"));
        }
        for i in 0..len {
            let e = cycle.edges[i];
            if e >= g.edge_count() || std::mem::replace(&mut used[e], true) {
                return bad(format!("edge {e} of cycle {c} is missing or reused"));
            }
            let (a, b) = (cycle.vertices[i], cycle.vertices[(i + 1) % len]);
            let (u, v) = g.endpoints(e);
            if !((u, v) == (a, b) || (u, v) == (b, a)) {
                return bad(format!("edge {e} does not join {a} and {b}"));
            }
        }
    }
    if let Some(e) = used.iter().position(|&u| !u) {
        return bad(format!("edge {e} is neither in the matching nor in a cycle"));
    }
    Ok(())
}
