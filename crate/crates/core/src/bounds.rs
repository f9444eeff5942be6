//! Witness-based upper bounds, connectivity-based lower bounds and the pair audit
//! behind them.

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::distinguish::{distinguishable, DiagnosticModel};
use crate::error::{invalid, Error, Result};
use crate::fault::{is_faulty_set, is_m_cut, ConnectivityResult, FaultKind, FaultModelSpec};
use crate::{Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    UpperWitness,
    LowerConnectivity,
}

/// Where the connectivity value of a lower bound comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KappaInput {
    Computed(ConnectivityResult),
    Formula(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    Witness { y: VertexSet, boundary: VertexSet, closed: VertexSet },
    Connectivity { kappa: KappaInput, vertex_count: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCertificate {
    pub kind: BoundKind,
    pub value: usize,
    pub model: FaultModelSpec,
    pub evidence: Evidence,
}

impl BoundCertificate {
    /// Re-derives the value from the evidence.
    pub fn revalidate(&self, graph: &Graph) -> Result<()> {
        let again = match &self.evidence {
            Evidence::Witness { y, .. } => upper_bound_from_witness(graph, y, self.model)?,
            Evidence::Connectivity { kappa, .. } => {
                let (vertex_count, k) = (graph.vertex_count(), kappa_value(kappa));
                if vertex_count <= 2 * (k + self.model.g) {
                    return Err(Error::VerificationFailed("cardinality condition fails".into()));
                }
                return if self.value == k + self.model.g {
                    Ok(())
                } else {
                    Err(Error::VerificationFailed("value differs from kappa + g".into()))
                };
            }
        };
        if again.value != self.value || again.evidence != self.evidence {
            return Err(Error::VerificationFailed("witness evidence does not reproduce".into()));
        }
        Ok(())
    }

    pub fn to_json(&self, graph: &Graph) -> serde_json::Value {
        let evidence = match &self.evidence {
            Evidence::Witness { y, boundary, closed } => json!({
                "y": graph.labels_of(y),
                "boundary": graph.labels_of(boundary),
                "boundary_size": boundary.len(),
                "closed_size": closed.len(),
            }),
            Evidence::Connectivity { kappa, vertex_count } => json!({
                "kappa": kappa_value(kappa),
                "kappa_source": match kappa {
                    KappaInput::Computed(_) => "computed",
                    KappaInput::Formula(_) => "formula",
                },
                "vertex_count": vertex_count,
            }),
        };
        json!({ "kind": self.kind, "value": self.value, "model": self.model, "evidence": evidence })
    }
}

fn kappa_value(k: &KappaInput) -> usize {
    match k {
        KappaInput::Computed(r) => r.kappa,
        KappaInput::Formula(v) => *v,
    }
}

/// `t <= |N^c(Y)| - 1` whenever `N(Y)` is admissible and `N^c(Y)` leaves a vertex
/// outside. Applies to PMC and MM* alike.
pub fn upper_bound_from_witness(graph: &Graph, y: &VertexSet, model: FaultModelSpec) -> Result<BoundCertificate> {
    graph.check_set(y)?;
    if y.is_empty() || y.len() == graph.vertex_count() {
        return Err(invalid("the seed set must be nonempty and proper"));
    }
    if model.kind == FaultKind::Conditional {
        return Err(Error::NotApplicable(
            "the neighbourhood construction gives no bound for conditional faults".into(),
        ));
    }
    let boundary = graph.open_neighborhood(y)?;
    if !is_faulty_set(graph, &boundary, model)? {
        return Err(Error::VerificationFailed(format!("N(Y) is not a {model} faulty set")));
    }
    let closed = boundary.union(y);
    if closed.len() == graph.vertex_count() {
        return Err(Error::VerificationFailed("N^c(Y) covers every vertex".into()));
    }
    if !is_faulty_set(graph, &closed, model)? {
        return Err(Error::VerificationFailed(format!("N^c(Y) is not a {model} faulty set")));
    }
    Ok(BoundCertificate {
        kind: BoundKind::UpperWitness,
        value: closed.len() - 1,
        model,
        evidence: Evidence::Witness { y: y.clone(), boundary, closed },
    })
}

/// `t >= kappa + g` when `|V| > 2(kappa + g)`. Under MM* this needs `g >= 2`.
pub fn lower_bound_certificate(
    graph: &Graph,
    model: FaultModelSpec,
    diagnostic: DiagnosticModel,
    kappa: KappaInput,
) -> Result<BoundCertificate> {
    if !matches!(model.kind, FaultKind::GGoodNeighbor | FaultKind::GExtra) {
        return Err(invalid("lower-bound certificates cover g-good-neighbor and g-extra faults"));
    }
    if let KappaInput::Computed(r) = &kappa {
        if !r.exhaustive {
            return Err(invalid("a capped connectivity search gives no exact kappa"));
        }
    }
    if diagnostic == DiagnosticModel::MmStar && model.g < 2 {
        return Err(Error::NeedsIsolationArgument { g: model.g });
    }
    let k = kappa_value(&kappa);
    let n = graph.vertex_count();
    if n <= 2 * (k + model.g) {
        return Err(Error::NotApplicable(format!("|V| = {n} is not above 2(kappa + g) = {}", 2 * (k + model.g))));
    }
    Ok(BoundCertificate {
        kind: BoundKind::LowerConnectivity,
        value: k + model.g,
        model,
        evidence: Evidence::Connectivity { kappa, vertex_count: n },
    })
}

/// Outcome of checking the contradiction argument on one pair: if the pair is
/// indistinguishable with survivors left (and, under MM*, no isolated survivor), then
/// `F1 ∩ F2` is an M-cut and each nonempty side difference has at least `g + 1`
/// vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairAudit {
    pub indistinguishable: bool,
    pub has_survivors: bool,
    pub isolated_survivor: bool,
    pub premise: bool,
    pub intersection_is_cut: bool,
    pub side_sizes: (usize, usize),
    pub conclusion: bool,
}

impl PairAudit {
    pub fn holds(&self) -> bool {
        !self.premise || self.conclusion
    }
}

pub fn audit_pair(
    graph: &Graph,
    f1: &VertexSet,
    f2: &VertexSet,
    model: FaultModelSpec,
    diagnostic: DiagnosticModel,
) -> Result<PairAudit> {
    if !matches!(model.kind, FaultKind::GGoodNeighbor | FaultKind::GExtra) {
        return Err(Error::NotApplicable("the audit covers g-good-neighbor and g-extra faults".into()));
    }
    if !is_faulty_set(graph, f1, model)? || !is_faulty_set(graph, f2, model)? {
        return Err(invalid(format!("both sets must be {model} faulty")));
    }
    let indistinguishable = !distinguishable(graph, f1, f2, diagnostic)?.distinguishable;
    let union = f1.union(f2);
    let survivors = union.complement();
    let isolated_survivor = survivors.iter().any(|v| graph.neighbors(v).iter().all(|&w| union.contains(w)));
    let has_survivors = !survivors.is_empty();
    let premise = indistinguishable && has_survivors && (diagnostic == DiagnosticModel::Pmc || !isolated_survivor);
    let common = f1.intersection(f2);
    let intersection_is_cut = common.len() < graph.vertex_count() && is_m_cut(graph, &common, model)?;
    let side_sizes = (f1.difference(f2).len(), f2.difference(f1).len());
    let big = |s: usize| s == 0 || s > model.g;
    let conclusion = intersection_is_cut && big(side_sizes.0) && big(side_sizes.1);
    Ok(PairAudit {
        indistinguishable,
        has_survivors,
        isolated_survivor,
        premise,
        intersection_is_cut,
        side_sizes,
        conclusion,
    })
}
