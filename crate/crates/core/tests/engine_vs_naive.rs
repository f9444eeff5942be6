//! Exhaustive pair enumeration as an independent check on the diagnosability engine.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use diaglab::diagnosability::brute_force_diagnosability_with;
use diaglab::distinguish::syndrome_oracle_distinguishable;
use diaglab::fault::is_faulty_set;
use diaglab::topology::hypercube;
use diaglab::{DiagnosticModel, FaultModelSpec, Graph, SearchOptions, VertexSet};

fn models() -> Vec<FaultModelSpec> {
    vec![
        FaultModelSpec::unrestricted(),
        FaultModelSpec::conditional(),
        FaultModelSpec::good_neighbor(1),
        FaultModelSpec::good_neighbor(2),
        FaultModelSpec::extra(1),
        FaultModelSpec::extra(2),
    ]
}

/// Smallest indistinguishable pair by (max size, total size, lexicographic), using
/// the syndrome oracle rather than the structural characterisation.
fn naive(graph: &Graph, model: FaultModelSpec, d: DiagnosticModel) -> Option<(usize, VertexSet, VertexSet)> {
    let n = graph.vertex_count();
    let faulty: Vec<VertexSet> = (0u32..1 << n)
        .map(|m| graph.set_of((0..n).filter(|&v| m >> v & 1 == 1)).unwrap())
        .filter(|f| is_faulty_set(graph, f, model).unwrap())
        .collect();
    let mut best: Option<(usize, usize, VertexSet, VertexSet)> = None;
    for (i, a) in faulty.iter().enumerate() {
        for b in &faulty[i + 1..] {
            if syndrome_oracle_distinguishable(graph, a, b, d).unwrap() {
                continue;
            }
            let (lo, hi) = if a.lex_cmp(b) == Ordering::Greater { (b, a) } else { (a, b) };
            let key = (lo.len().max(hi.len()), lo.len() + hi.len());
            let replace = match &best {
                None => true,
                Some((s, t, l, h)) => {
                    (key.0, key.1).cmp(&(*s, *t)).then_with(|| lo.lex_cmp(l)).then_with(|| hi.lex_cmp(h))
                        == Ordering::Less
                }
            };
            if replace {
                best = Some((key.0, key.1, lo.clone(), hi.clone()));
            }
        }
    }
    best.map(|(s, _, l, h)| (s - 1, l, h))
}

fn compare(graph: &Graph) {
    let n = graph.vertex_count();
    for model in models() {
        for d in [DiagnosticModel::Pmc, DiagnosticModel::MmStar] {
            let expected = naive(graph, model, d);
            let plain =
                brute_force_diagnosability_with(graph, model, d, &SearchOptions::with_cap(n).symmetry(false)).unwrap();
            let anchored = brute_force_diagnosability_with(graph, model, d, &SearchOptions::with_cap(n)).unwrap();
            match expected {
                Some((t, lo, hi)) => {
                    assert_eq!(plain.t, t, "{model} {d}");
                    assert_eq!(plain.extremal_pair, Some((lo, hi)), "{model} {d}");
                    assert_eq!(anchored.t, t, "{model} {d}");
                }
                None => {
                    assert!(plain.extremal_pair.is_none());
                    assert_eq!(plain.t, n);
                    assert_eq!(anchored.t, n);
                }
            }
        }
    }
}

#[test]
fn engine_matches_naive_enumeration_on_q3() {
    compare(&hypercube(3).unwrap());
}

#[test]
fn engine_matches_naive_enumeration_on_irregular_graph() {
    let labels: Vec<String> = (0..9).map(|i| format!("v{i}")).collect();
    let edges =
        [(0, 1), (0, 2), (1, 2), (1, 3), (2, 4), (3, 4), (3, 5), (4, 6), (5, 6), (5, 7), (6, 8), (7, 8), (0, 8)];
    let g = Graph::from_edges("custom", BTreeMap::new(), labels, edges).unwrap();
    assert!(!g.is_vertex_transitive());
    compare(&g);
}
