//! Self-validating JSON certificates.
//!
//! Positive certificates carry the object found and re-verify without any
//! search. Negative ones carry the exhaustion statistics of every search that
//! came back empty; re-checking them means re-running the search.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::coloring::{is_normal, verify_conjecture4_witness, EdgeColoring, Z2CubedFlow, ZERO_ALPHA, ZERO_BETA};
use crate::error::{Error, Result};
use crate::flow::{CaseRecord, FlowAssignment, FlowInstance, KleinValue, SearchStats};
use crate::graph::{EdgeId, Pseudograph};
use crate::matching::{enumerate_perfect_matchings, PerfectMatching};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// SHA-256 of the edge list after a cheap canonical relabelling: vertices
/// sorted by degree, then by their sorted neighbour degrees, then by id.
/// Isomorphic graphs usually, but not always, share a fingerprint.
pub fn fingerprint(g: &Pseudograph) -> String {
    let key = |v: usize| {
        let mut nd: Vec<usize> = g.neighbors(v).map(|w| g.degree(w)).collect();
        nd.sort_unstable();
        (g.degree(v), nd, v)
    };
    let mut order: Vec<usize> = g.vertices().collect();
    order.sort_by_cached_key(|&v| key(v));
    let mut label = vec![0; g.vertex_count()];
    for (i, &v) in order.iter().enumerate() {
        label[v] = i;
    }
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = (label[e.u], label[e.v]);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    let mut h = Sha256::new();
    h.update(format!("{};", g.vertex_count()));
    for (a, b) in edges {
        h.update(format!("{a}-{b},"));
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// One row of a negative certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustedMatching {
    pub matching: Vec<EdgeId>,
    pub stats: SearchStats,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    /// A non-conflicting flow as `(matching edge id, value)` pairs.
    FlowFound {
        matching: Vec<EdgeId>,
        flow: Vec<(EdgeId, KleinValue)>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        provenance: Option<CaseRecord>,
    },
    NoFlowForAnyMatching {
        matchings: Vec<ExhaustedMatching>,
    },
    ChiNValue {
        k: u32,
        witness: EdgeColoring,
        /// Palette sizes searched exhaustively without success.
        exhausted: Vec<(u32, SearchStats)>,
    },
    NormalColoring {
        coloring: EdgeColoring,
    },
    Conjecture4Witness {
        matching: Vec<EdgeId>,
        mu: Z2CubedFlow,
    },
    /// Two edge-disjoint perfect matchings of the graph.
    DisjointMatchings {
        first: Vec<EdgeId>,
        second: Vec<EdgeId>,
    },
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::FlowFound { .. } => "flow-found",
            Payload::NoFlowForAnyMatching { .. } => "no-flow-for-any-matching",
            Payload::ChiNValue { .. } => "chi-n-value",
            Payload::NormalColoring { .. } => "normal-coloring",
            Payload::Conjecture4Witness { .. } => "conjecture4-witness",
            Payload::DisjointMatchings { .. } => "disjoint-matchings",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateStats {
    pub nodes: u64,
    pub wall_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: u32,
    pub tool_version: String,
    pub fingerprint: String,
    pub graph: Pseudograph,
    #[serde(flatten)]
    pub payload: Payload,
    pub stats: CertificateStats,
}

impl Certificate {
    pub fn new(graph: &Pseudograph, payload: Payload, stats: CertificateStats) -> Self {
        Certificate {
            schema: SCHEMA_VERSION,
            tool_version: TOOL_VERSION.to_string(),
            fingerprint: fingerprint(graph),
            graph: graph.clone(),
            payload,
            stats,
        }
    }

    /// A flow-found certificate from a flow indexed like the matching.
    pub fn flow_found(
        graph: &Pseudograph,
        f: &PerfectMatching,
        theta: &FlowAssignment,
        provenance: Option<CaseRecord>,
        stats: CertificateStats,
    ) -> Self {
        let flow = f.edge_ids().iter().copied().zip(theta.values().iter().copied()).collect();
        let payload = Payload::FlowFound {
            matching: f.edge_ids().to_vec(),
            flow,
            provenance,
        };
        Certificate::new(graph, payload, stats)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialises")
    }

    /// Parses and validates.
    pub fn from_json(text: &str) -> Result<Self> {
        let cert: Certificate =
            serde_json::from_str(text).map_err(|e| Error::input(format!("certificate JSON: {e}")))?;
        cert.validate()?;
        Ok(cert)
    }

    /// Re-checks the payload against the embedded graph.
    pub fn validate(&self) -> Result<()> {
        if self.schema != SCHEMA_VERSION {
            return Err(Error::input(format!("unsupported certificate schema {}", self.schema)));
        }
        if self.fingerprint != fingerprint(&self.graph) {
            return Err(Error::input("fingerprint does not match the embedded graph"));
        }
        let g = &self.graph;
        let bad = |msg: &str| Err(Error::input(format!("{} certificate: {msg}", self.payload.kind())));
        match &self.payload {
            Payload::FlowFound { matching, flow, .. } => {
                let f = PerfectMatching::new(g, matching.clone())?;
                if flow.iter().map(|&(e, _)| e).collect::<Vec<_>>() != f.edge_ids() {
                    return bad("flow keys differ from the matching");
                }
                let theta = FlowAssignment::new(flow.iter().map(|&(_, x)| x).collect());
                if !FlowInstance::new(g, &f)?.is_nonconflicting(&theta)? {
                    return bad("flow is not a non-conflicting nowhere-zero flow");
                }
            }
            Payload::NoFlowForAnyMatching { matchings } => {
                let all: Vec<Vec<EdgeId>> = enumerate_perfect_matchings(g).map(|f| f.edge_ids().to_vec()).collect();
                let listed: Vec<Vec<EdgeId>> = matchings.iter().map(|m| m.matching.clone()).collect();
                if all != listed {
                    return bad("rows do not list every perfect matching");
                }
            }
            Payload::ChiNValue { k, witness, exhausted } => {
                if witness.k != *k || !is_normal(g, witness)?.normal {
                    return bad("witness is not a normal colouring with the stated palette");
                }
                let tried: Vec<u32> = exhausted.iter().map(|&(k, _)| k).collect();
                if tried != (3..*k).collect::<Vec<_>>() {
                    return bad("smaller palettes are not all accounted for");
                }
            }
            Payload::NormalColoring { coloring } => {
                if !is_normal(g, coloring)?.normal {
                    return bad("colouring is not normal");
                }
            }
            Payload::Conjecture4Witness { matching, mu } => {
                let f = PerfectMatching::new(g, matching.clone())?;
                if !mu.is_flow(g) || f.edge_ids().iter().any(|&e| mu.values[e] & 0b100 != 0) {
                    return bad("values are not a flow of the expected shape");
                }
                if !verify_conjecture4_witness(g, mu, ZERO_ALPHA, ZERO_BETA)? {
                    return bad("witness conditions fail");
                }
            }
            Payload::DisjointMatchings { first, second } => {
                let a = PerfectMatching::new(g, first.clone())?;
                let b = PerfectMatching::new(g, second.clone())?;
                if a.edge_ids().iter().any(|&e| b.contains(e)) {
                    return bad("matchings share an edge");
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::{find_any_nonconflicting, SearchOptions};
    use crate::generators;

    #[test]
    fn fingerprint_ignores_labelling_of_k4() {
        let a = generators::k4();
        let b = Pseudograph::new(4, &[(3, 2), (3, 1), (3, 0), (2, 1), (2, 0), (1, 0)]).unwrap();
        assert_eq!(fingerprint(&a), fingerprint(&b));
        assert_ne!(fingerprint(&a), fingerprint(&generators::k33()));
        assert_eq!(fingerprint(&a).len(), 64);
    }

    #[test]
    fn flow_certificate_round_trips() {
        let g = generators::k33();
        let (f, theta) = find_any_nonconflicting(&g, SearchOptions::sequential()).unwrap().unwrap();
        let cert = Certificate::flow_found(&g, &f, &theta, None, CertificateStats::default());
        let json = cert.to_json();
        assert!(json.contains("\"kind\": \"flow-found\""));
        let back = Certificate::from_json(&json).unwrap();
        assert_eq!(back, cert);
    }

    #[test]
    fn tampered_flow_is_rejected() {
        let g = generators::k33();
        let (f, theta) = find_any_nonconflicting(&g, SearchOptions::sequential()).unwrap().unwrap();
        let mut cert = Certificate::flow_found(&g, &f, &theta, None, CertificateStats::default());
        if let Payload::FlowFound { flow, .. } = &mut cert.payload {
            flow.pop();
        }
        assert!(cert.validate().is_err());
    }

    #[test]
    fn negative_certificate_lists_every_matching() {
        let g = generators::petersen();
        let rows: Vec<ExhaustedMatching> = enumerate_perfect_matchings(&g)
            .map(|f| ExhaustedMatching {
                matching: f.edge_ids().to_vec(),
                stats: SearchStats::default(),
            })
            .collect();
        let cert = Certificate::new(
            &g,
            Payload::NoFlowForAnyMatching { matchings: rows[..5].to_vec() },
            CertificateStats::default(),
        );
        assert!(cert.validate().is_err());
        let cert = Certificate::new(&g, Payload::NoFlowForAnyMatching { matchings: rows }, CertificateStats::default());
        cert.validate().unwrap();
        assert_eq!(cert.payload.kind(), "no-flow-for-any-matching");
    }

    #[test]
    fn wrong_fingerprint_is_rejected() {
        let g = generators::k4();
        let c = EdgeColoring::new(3, vec![1, 2, 3, 3, 2, 1]).unwrap();
        let mut cert = Certificate::new(&g, Payload::NormalColoring { coloring: c }, CertificateStats::default());
        cert.validate().unwrap();
        cert.fingerprint = "00".into();
        assert!(cert.validate().is_err());
    }
}
