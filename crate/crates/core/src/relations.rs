//! Cross-model relations between brute-forced diagnosabilities of one graph.

use serde::Serialize;
use serde_json::json;

use crate::diagnosability::{brute_force_diagnosability_with, DiagnosabilityResult};
use crate::distinguish::DiagnosticModel;
use crate::error::Result;
use crate::fault::FaultModelSpec;
use crate::search::SearchOptions;
use crate::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    /// A capped value leaves the relation undecided.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub lhs: String,
    pub rhs: String,
    pub outcome: Outcome,
    /// Extremal pair of the side that breaks the relation, as labels.
    pub counterexample: Option<(Vec<String>, Vec<String>)>,
}

#[derive(Clone, Debug)]
pub struct RelationReport {
    pub diagnostic: DiagnosticModel,
    pub cap: usize,
    pub values: Vec<(String, DiagnosabilityResult)>,
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.outcome == Outcome::Pass)
    }

    pub fn exhaustive(&self) -> bool {
        self.values.iter().all(|(_, r)| r.exhaustive)
    }

    pub fn value(&self, name: &str) -> Option<&DiagnosabilityResult> {
        self.values.iter().find(|(n, _)| n == name).map(|(_, r)| r)
    }

    pub fn to_json(&self, graph: &Graph) -> serde_json::Value {
        json!({
            "diagnostic": self.diagnostic,
            "cap": self.cap,
            "exhaustive": self.exhaustive(),
            "values": self.values.iter().map(|(n, r)| json!({"name": n, "result": r.to_json(graph)})).collect::<Vec<_>>(),
            "checks": self.checks,
        })
    }
}

/// `a <= b` when capped values only give lower bounds.
fn at_most(a: &DiagnosabilityResult, b: &DiagnosabilityResult) -> Outcome {
    match (a.exhaustive, b.exhaustive) {
        (true, true) => {
            if a.t <= b.t {
                Outcome::Pass
            } else {
                Outcome::Fail
            }
        }
        (true, false) => {
            if a.t <= b.t {
                Outcome::Pass
            } else {
                Outcome::Inconclusive
            }
        }
        (false, true) => {
            if b.t < a.t {
                Outcome::Fail
            } else {
                Outcome::Inconclusive
            }
        }
        (false, false) => Outcome::Inconclusive,
    }
}

fn equal(a: &DiagnosabilityResult, b: &DiagnosabilityResult) -> Outcome {
    match (at_most(a, b), at_most(b, a)) {
        (Outcome::Pass, Outcome::Pass) => Outcome::Pass,
        (Outcome::Fail, _) | (_, Outcome::Fail) => Outcome::Fail,
        _ => Outcome::Inconclusive,
    }
}

fn name(model: FaultModelSpec) -> String {
    match model.kind {
        crate::FaultKind::Unrestricted => "t".into(),
        crate::FaultKind::Conditional => "t_c".into(),
        crate::FaultKind::GGoodNeighbor => format!("t_{}", model.g),
        crate::FaultKind::GExtra => format!("tbar_{}", model.g),
    }
}

/// Brute-forces `t`, `t_g` and `tbar_g` for `g <= g_max` and `t_c`, then checks the
/// nesting relations between them.
pub fn relation_audit(
    graph: &Graph,
    diagnostic: DiagnosticModel,
    g_max: usize,
    size_cap: usize,
    workers: usize,
) -> Result<RelationReport> {
    let mut models = vec![FaultModelSpec::unrestricted()];
    for g in 0..=g_max {
        models.push(FaultModelSpec::good_neighbor(g));
        models.push(FaultModelSpec::extra(g));
    }
    models.push(FaultModelSpec::conditional());
    let opts = SearchOptions::with_cap(size_cap.min(graph.vertex_count())).workers(workers);
    let mut values = Vec::new();
    for m in models {
        values.push((name(m), brute_force_diagnosability_with(graph, m, diagnostic, &opts)?));
    }
    let get = |n: &str| values.iter().find(|(k, _)| k == n).map(|(_, r)| r.clone()).expect("computed");
    let mut checks = Vec::new();
    let mut push = |relation: &str, lhs: String, rhs: String, outcome: Outcome| {
        let (a, b) = (get(&lhs), get(&rhs));
        let counterexample = (outcome == Outcome::Fail)
            .then_some(if a.t > b.t { b.extremal_pair } else { a.extremal_pair })
            .flatten()
            .map(|(x, y)| (graph.labels_of(&x), graph.labels_of(&y)));
        checks.push(RelationCheck { relation: relation.into(), lhs, rhs, outcome, counterexample });
    };
    let t = get("t");
    for g in 0..=g_max {
        let (tg, tbar) = (get(&format!("t_{g}")), get(&format!("tbar_{g}")));
        push("t <= t_g", "t".into(), format!("t_{g}"), at_most(&t, &tg));
        push("tbar_g <= t_g", format!("tbar_{g}"), format!("t_{g}"), at_most(&tbar, &tg));
        if g > 0 {
            let (pg, pbar) = (get(&format!("t_{}", g - 1)), get(&format!("tbar_{}", g - 1)));
            push("t_g monotone in g", format!("t_{}", g - 1), format!("t_{g}"), at_most(&pg, &tg));
            push("tbar_g monotone in g", format!("tbar_{}", g - 1), format!("tbar_{g}"), at_most(&pbar, &tbar));
        }
    }
    push("t = t_0", "t".into(), "t_0".into(), equal(&t, &get("t_0")));
    push("t = tbar_0", "t".into(), "tbar_0".into(), equal(&t, &get("tbar_0")));
    if g_max >= 1 {
        let (t1, tbar1, tc) = (get("t_1"), get("tbar_1"), get("t_c"));
        push("tbar_1 = t_1", "tbar_1".into(), "t_1".into(), equal(&tbar1, &t1));
        push("t_1 <= t_c", "t_1".into(), "t_c".into(), at_most(&t1, &tc));
        push("tbar_1 <= t_c", "tbar_1".into(), "t_c".into(), at_most(&tbar1, &tc));
    }
    Ok(RelationReport { diagnostic, cap: opts.cap.unwrap_or(0), values, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::hypercube;

    fn result(t: usize, exhaustive: bool) -> DiagnosabilityResult {
        DiagnosabilityResult {
            t,
            exhaustive,
            extremal_pair: None,
            model: FaultModelSpec::unrestricted(),
            diagnostic: DiagnosticModel::Pmc,
            cap: 6,
        }
    }

    #[test]
    fn capped_comparisons() {
        assert_eq!(at_most(&result(3, true), &result(6, false)), Outcome::Pass);
        assert_eq!(at_most(&result(6, false), &result(3, true)), Outcome::Fail);
        assert_eq!(at_most(&result(6, false), &result(7, true)), Outcome::Inconclusive);
        assert_eq!(equal(&result(6, false), &result(6, false)), Outcome::Inconclusive);
        assert_eq!(equal(&result(4, true), &result(5, true)), Outcome::Fail);
    }

    #[test]
    fn zero_collapse_on_q3() {
        let q3 = hypercube(3).unwrap();
        let r = relation_audit(&q3, DiagnosticModel::Pmc, 0, 4, 1).unwrap();
        assert_eq!(r.value("t").unwrap().t, 3);
        assert!(r.all_pass(), "{:?}", r.checks);
    }
}
