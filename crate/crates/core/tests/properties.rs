use std::collections::BTreeSet;

use proptest::prelude::*;

use nzflow::coloring::{classify_edge, coloring_from_flow, is_normal, EdgeClass, EdgeColoring};
use nzflow::flow::{find_any_nonconflicting, verify_flow, FlowAssignment, FlowInstance, KleinValue, SearchLimits, SearchOptions};
use nzflow::formats::{encode_graph6, encode_sparse6, parse_graph6, parse_line, parse_sparse6};
use nzflow::generators;
use nzflow::matching::{complement_two_factor, enumerate_perfect_matchings};
use nzflow::Pseudograph;

fn sorted_pairs(g: &Pseudograph) -> Vec<(usize, usize)> {
    let mut p: Vec<_> = g.edge_pairs().into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
    p.sort_unstable();
    p
}

fn cubic() -> impl Strategy<Value = Pseudograph> {
    (2usize..8, any::<u64>()).prop_map(|(half, seed)| generators::random_cubic(2 * half, seed).unwrap())
}

/// Greedy proper colouring with colours drawn from `choices`.
fn greedy_coloring(g: &Pseudograph, k: u32, choices: &[u32]) -> Option<EdgeColoring> {
    let mut colors = vec![0; g.edge_count()];
    for e in 0..g.edge_count() {
        let (u, v) = g.endpoints(e);
        let taken: BTreeSet<u32> = g.incident(u).iter().chain(g.incident(v)).map(|&f| colors[f]).collect();
        let start = choices[e % choices.len()];
        colors[e] = (0..k).map(|i| (start + i) % k + 1).find(|c| !taken.contains(c))?;
    }
    EdgeColoring::new(k, colors).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classification_matches_neighbourhood_count(g in cubic(), k in 5u32..9, choices in prop::collection::vec(0u32..9, 1..20)) {
        let Some(c) = greedy_coloring(&g, k, &choices) else { return Ok(()) };
        for e in 0..g.edge_count() {
            let (u, v) = g.endpoints(e);
            let seen: BTreeSet<u32> = g.adjacent_edges(e).iter().chain([&e]).map(|&f| c.color(f)).collect();
            let expected = match seen.len() {
                3 => EdgeClass::Poor,
                5 => EdgeClass::Rich,
                _ => EdgeClass::Abnormal,
            };
            prop_assert_eq!(classify_edge(&g, &c, e).unwrap().class, expected, "edge {} = {}{}", e, u, v);
        }
    }

    #[test]
    fn graph6_round_trip(n in 0usize..80, edges in prop::collection::vec((0usize..80, 0usize..80), 0..150)) {
        let mut pairs: Vec<_> = edges.into_iter()
            .filter(|&(a, b)| a < n && b < n && a != b)
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        let g = Pseudograph::new(n, &pairs).unwrap();
        let text = encode_graph6(&g).unwrap();
        let back = parse_graph6(&text).unwrap();
        prop_assert_eq!(back.vertex_count(), n);
        prop_assert_eq!(sorted_pairs(&back), sorted_pairs(&g));
        prop_assert_eq!(encode_graph6(&back).unwrap(), text);
    }

    #[test]
    fn sparse6_round_trip(n in 1usize..200, edges in prop::collection::vec((0usize..200, 0usize..200), 0..150)) {
        let pairs: Vec<_> = edges.into_iter().map(|(a, b)| (a % n, b % n)).collect();
        let g = Pseudograph::new(n, &pairs).unwrap();
        let text = encode_sparse6(&g);
        let back = parse_sparse6(&text).unwrap();
        prop_assert_eq!(back.vertex_count(), n);
        prop_assert_eq!(sorted_pairs(&back), sorted_pairs(&g));
        prop_assert_eq!(sorted_pairs(&parse_line(&text).unwrap()), sorted_pairs(&g));
    }

    #[test]
    fn matching_count_matches_subset_scan(g in (2usize..6, any::<u64>()).prop_map(|(h, s)| generators::random_cubic(2 * h, s).unwrap())) {
        let n = g.vertex_count();
        let m = g.edge_count();
        let mut brute = 0;
        for mask in 0u32..1 << m {
            if mask.count_ones() as usize != n / 2 {
                continue;
            }
            let mut covered = vec![false; n];
            let ok = (0..m).filter(|&e| mask >> e & 1 == 1).all(|e| {
                let (u, v) = g.endpoints(e);
                !std::mem::replace(&mut covered[u], true) & !std::mem::replace(&mut covered[v], true)
            });
            brute += usize::from(ok);
        }
        prop_assert_eq!(enumerate_perfect_matchings(&g).count(), brute);
    }

    #[test]
    fn search_agrees_with_assignment_scan(g in cubic()) {
        for f in enumerate_perfect_matchings(&g).take(4) {
            let inst = FlowInstance::new(&g, &f).unwrap();
            let q = inst.quotient().edge_count();
            let mut any = false;
            for code in 0..3u32.pow(q as u32) {
                let theta = FlowAssignment::new(
                    (0..q).map(|i| KleinValue::ALL[(code / 3u32.pow(i as u32) % 3) as usize]).collect(),
                );
                if verify_flow(&inst.contracted, &theta).unwrap() && inst.is_nonconflicting(&theta).unwrap() {
                    any = true;
                    break;
                }
            }
            let (found, _) = inst.find_nonconflicting(SearchLimits::unlimited()).unwrap();
            prop_assert_eq!(found.is_some(), any);
        }
    }

    #[test]
    fn flows_give_normal_six_colourings(g in cubic()) {
        if let Some((f, theta)) = find_any_nonconflicting(&g, SearchOptions::sequential()).unwrap() {
            let inst = FlowInstance::new(&g, &f).unwrap();
            // Exchanging alpha and beta is an automorphism of the group.
            prop_assert!(inst.is_nonconflicting(&theta.swapped()).unwrap());
            let tf = complement_two_factor(&g, &f).unwrap();
            let out = coloring_from_flow(&g, &tf, &theta).unwrap();
            prop_assert!(out.mu.is_flow(&g));
            prop_assert!(out.coloring.used_colors() <= 6);
            prop_assert!(is_normal(&g, &out.coloring).unwrap().normal);
            for &e in f.edge_ids() {
                prop_assert!(out.mu.values[e] < 0b100);
            }
        }
    }
}
