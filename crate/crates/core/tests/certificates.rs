use nzflow::certificate::{Certificate, CertificateStats, ExhaustedMatching, Payload};
use nzflow::coloring::{chi_n_exact, coloring_from_flow, EdgeColoring, Z2CubedFlow};
use nzflow::flow::{extract_disjoint_matchings, find_any_nonconflicting, survey_matchings, two_odd_cycle_flow, SearchLimits, SearchOptions, TwoCycleOutcome};
use nzflow::generators;
use nzflow::matching::complement_two_factor;
use nzflow::Pseudograph;

fn round_trip(cert: &Certificate) -> Certificate {
    cert.validate().unwrap();
    let back = Certificate::from_json(&cert.to_json()).unwrap();
    assert_eq!(&back, cert);
    back
}

fn rejected(cert: &Certificate) {
    assert!(cert.validate().is_err(), "{} accepted", cert.payload.kind());
    assert!(Certificate::from_json(&cert.to_json()).is_err());
}

#[test]
fn flow_found_with_provenance() {
    let g = generators::permutation_graph(&[0, 2, 4, 1, 3, 5, 6]).unwrap();
    let tf = complement_two_factor(&g, &nzflow::PerfectMatching::new(&g, (14..21).collect()).unwrap()).unwrap();
    let TwoCycleOutcome::Flow(w) = two_odd_cycle_flow(&g, &tf).unwrap() else {
        panic!("not the Petersen graph");
    };
    let cert = Certificate::flow_found(&g, &w.matching, &w.flow, Some(w.provenance.clone()), CertificateStats::default());
    let json = cert.to_json();
    assert!(json.contains("\"provenance\""));
    round_trip(&cert);

    let mut bad = cert.clone();
    if let Payload::FlowFound { matching, .. } = &mut bad.payload {
        matching.reverse();
        matching.pop();
    }
    rejected(&bad);
}

#[test]
fn negative_certificate_for_petersen() {
    let g = generators::petersen();
    let survey = survey_matchings(&g, SearchOptions::default()).unwrap();
    let rows: Vec<ExhaustedMatching> = survey
        .verdicts
        .iter()
        .map(|v| ExhaustedMatching { matching: v.matching.clone(), stats: v.stats })
        .collect();
    let cert = Certificate::new(&g, Payload::NoFlowForAnyMatching { matchings: rows.clone() }, CertificateStats::default());
    assert!(cert.to_json().contains("\"kind\": \"no-flow-for-any-matching\""));
    round_trip(&cert);

    let mut shuffled = rows;
    shuffled.swap(0, 1);
    rejected(&Certificate::new(&g, Payload::NoFlowForAnyMatching { matchings: shuffled }, CertificateStats::default()));
}

#[test]
fn chi_n_certificate_for_the_bridged_graph() {
    let g = generators::fig3_graph();
    let c = chi_n_exact(&g, 7, SearchLimits::unlimited()).unwrap().unwrap();
    let payload = Payload::ChiNValue { k: c.k, witness: c.witness.clone(), exhausted: c.attempts[..c.attempts.len() - 1].to_vec() };
    let cert = Certificate::new(&g, payload, CertificateStats { nodes: 1, wall_ms: 0 });
    round_trip(&cert);

    let skipped = Payload::ChiNValue { k: c.k, witness: c.witness.clone(), exhausted: c.attempts[1..c.attempts.len() - 1].to_vec() };
    rejected(&Certificate::new(&g, skipped, CertificateStats::default()));
    let drawn = EdgeColoring::new(7, generators::fig3_coloring()).unwrap();
    let wrong_k = Payload::ChiNValue { k: 6, witness: drawn, exhausted: c.attempts[..3].to_vec() };
    rejected(&Certificate::new(&g, wrong_k, CertificateStats::default()));
}

#[test]
fn normal_coloring_certificate() {
    let g = generators::k4();
    let good = EdgeColoring::new(3, vec![1, 2, 3, 3, 2, 1]).unwrap();
    round_trip(&Certificate::new(&g, Payload::NormalColoring { coloring: good }, CertificateStats::default()));
    let g = generators::k33();
    let (f, theta) = find_any_nonconflicting(&g, SearchOptions::sequential()).unwrap().unwrap();
    let tf = complement_two_factor(&g, &f).unwrap();
    let ok = coloring_from_flow(&g, &tf, &theta).unwrap().coloring;
    round_trip(&Certificate::new(&g, Payload::NormalColoring { coloring: ok }, CertificateStats::default()));
    let improper = EdgeColoring::new(4, vec![1; 9]).unwrap();
    rejected(&Certificate::new(&g, Payload::NormalColoring { coloring: improper }, CertificateStats::default()));
}

#[test]
fn conjecture_witness_certificate() {
    let g = generators::prism(5).unwrap();
    let (f, theta) = find_any_nonconflicting(&g, SearchOptions::sequential()).unwrap().unwrap();
    let tf = complement_two_factor(&g, &f).unwrap();
    let mu = coloring_from_flow(&g, &tf, &theta).unwrap().mu;
    let cert = Certificate::new(
        &g,
        Payload::Conjecture4Witness { matching: f.edge_ids().to_vec(), mu: mu.clone() },
        CertificateStats::default(),
    );
    assert!(cert.to_json().contains("\"mu\""));
    round_trip(&cert);

    let mut broken = mu.values.clone();
    broken[0] ^= 0b100;
    let bad = Payload::Conjecture4Witness { matching: f.edge_ids().to_vec(), mu: Z2CubedFlow { values: broken } };
    rejected(&Certificate::new(&g, bad, CertificateStats::default()));
}

#[test]
fn disjoint_matchings_of_k6() {
    let h5 = generators::complete_graph(6);
    let (g, tf) = generators::expand_vertices_to_5cycles(&h5).unwrap();
    let inst = nzflow::flow::FlowInstance::from_two_factor(&g, tf.clone()).unwrap();
    let theta = inst.find_nonconflicting(SearchLimits::unlimited()).unwrap().0.unwrap();
    let (a, b) = extract_disjoint_matchings(&h5, &g, &tf, &theta).unwrap();
    let cert = Certificate::new(
        &h5,
        Payload::DisjointMatchings { first: a.edge_ids().to_vec(), second: b.edge_ids().to_vec() },
        CertificateStats::default(),
    );
    round_trip(&cert);
    rejected(&Certificate::new(
        &h5,
        Payload::DisjointMatchings { first: a.edge_ids().to_vec(), second: a.edge_ids().to_vec() },
        CertificateStats::default(),
    ));
}

#[test]
fn malformed_json_is_an_input_error() {
    let err = Certificate::from_json("{\"schema\": 1}").unwrap_err();
    assert!(!err.is_resource());
    let g = Pseudograph::new(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
    let mut cert = Certificate::new(&g, Payload::NormalColoring { coloring: EdgeColoring::new(3, vec![1, 2, 3]).unwrap() }, CertificateStats::default());
    cert.schema = 99;
    rejected(&cert);
}
