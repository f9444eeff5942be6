//! Distinguishability of faulty-set pairs under PMC and MM*, by structural
//! characterisation and by a test-by-test syndrome oracle.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{invalid, Result};
use crate::mask::{bits, MaskGraph};
use crate::{Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DiagnosticModel {
    #[serde(rename = "PMC")]
    Pmc,
    #[serde(rename = "MMstar")]
    MmStar,
}

impl DiagnosticModel {
    pub fn as_str(&self) -> &'static str {
        match self {
            DiagnosticModel::Pmc => "PMC",
            DiagnosticModel::MmStar => "MMstar",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        match text.to_ascii_lowercase().as_str() {
            "pmc" => Ok(DiagnosticModel::Pmc),
            "mmstar" | "mm*" | "mm-star" | "mm_star" => Ok(DiagnosticModel::MmStar),
            other => Err(invalid(format!("unknown diagnostic model {other:?}"))),
        }
    }
}

impl fmt::Display for DiagnosticModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A fault-free `tester` adjacent to `tested` in the symmetric difference.
    PmcEdge { tester: usize, tested: usize },
    /// A path `v - w - x` with comparator `w`, satisfying condition 1, 2 or 3.
    MmStarPath { v: usize, w: usize, x: usize, condition: u8 },
}

impl Witness {
    /// Re-checks the witness directly against adjacency and membership.
    pub fn verify(&self, graph: &Graph, f1: &VertexSet, f2: &VertexSet) -> bool {
        let outside = |u: usize| !f1.contains(u) && !f2.contains(u);
        let in_delta = |u: usize| f1.contains(u) != f2.contains(u);
        let only1 = |u: usize| f1.contains(u) && !f2.contains(u);
        let only2 = |u: usize| f2.contains(u) && !f1.contains(u);
        match *self {
            Witness::PmcEdge { tester, tested } => {
                graph.has_edge(tester, tested) && outside(tester) && in_delta(tested)
            }
            Witness::MmStarPath { v, w, x, condition } => {
                let path = v != x && graph.has_edge(v, w) && graph.has_edge(w, x) && outside(w);
                path && match condition {
                    1 => outside(v) && in_delta(x),
                    2 => only1(v) && only1(x),
                    3 => only2(v) && only2(x),
                    _ => false,
                }
            }
        }
    }

    pub fn to_json(&self, graph: &Graph) -> serde_json::Value {
        match *self {
            Witness::PmcEdge { tester, tested } => json!({
                "edge": [graph.label(tester), graph.label(tested)],
            }),
            Witness::MmStarPath { v, w, x, condition } => json!({
                "path": [graph.label(v), graph.label(w), graph.label(x)],
                "condition": condition,
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub distinguishable: bool,
    pub model: DiagnosticModel,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn to_json(&self, graph: &Graph) -> serde_json::Value {
        json!({
            "distinguishable": self.distinguishable,
            "model": self.model.as_str(),
            "witness": self.witness.map(|w| w.to_json(graph)),
        })
    }
}

fn check_pair(graph: &Graph, f1: &VertexSet, f2: &VertexSet) -> Result<()> {
    graph.check_set(f1)?;
    graph.check_set(f2)?;
    if f1 == f2 {
        return Err(invalid("distinguishability needs two different faulty sets"));
    }
    Ok(())
}

pub fn pmc_distinguishable(graph: &Graph, f1: &VertexSet, f2: &VertexSet) -> Result<Verdict> {
    check_pair(graph, f1, f2)?;
    let union = f1.union(f2);
    let delta = f1.symmetric_difference(f2);
    let witness = union.complement().iter().find_map(|u| {
        graph.neighbors(u).iter().find(|&&v| delta.contains(v)).map(|&v| Witness::PmcEdge { tester: u, tested: v })
    });
    Ok(Verdict { distinguishable: witness.is_some(), model: DiagnosticModel::Pmc, witness })
}

pub fn mmstar_distinguishable(graph: &Graph, f1: &VertexSet, f2: &VertexSet) -> Result<Verdict> {
    check_pair(graph, f1, f2)?;
    let survivors = f1.union(f2).complement();
    let a = f1.difference(f2);
    let b = f2.difference(f1);
    let mut witness = None;
    'outer: for w in survivors.iter() {
        let nb = graph.neighbors(w);
        for (i, &p) in nb.iter().enumerate() {
            for &q in &nb[i + 1..] {
                let hit = if survivors.contains(p) && (a.contains(q) || b.contains(q)) {
                    Some((p, q, 1))
                } else if survivors.contains(q) && (a.contains(p) || b.contains(p)) {
                    Some((q, p, 1))
                } else if a.contains(p) && a.contains(q) {
                    Some((p, q, 2))
                } else if b.contains(p) && b.contains(q) {
                    Some((p, q, 3))
                } else {
                    None
                };
                if let Some((v, x, condition)) = hit {
                    witness = Some(Witness::MmStarPath { v, w, x, condition });
                    break 'outer;
                }
            }
        }
    }
    Ok(Verdict { distinguishable: witness.is_some(), model: DiagnosticModel::MmStar, witness })
}

pub fn distinguishable(graph: &Graph, f1: &VertexSet, f2: &VertexSet, model: DiagnosticModel) -> Result<Verdict> {
    match model {
        DiagnosticModel::Pmc => pmc_distinguishable(graph, f1, f2),
        DiagnosticModel::MmStar => mmstar_distinguishable(graph, f1, f2),
    }
}

/// True iff some individual test has a forced outcome under `f1` that differs from
/// its forced outcome under `f2`, so no syndrome is compatible with both.
pub fn syndrome_oracle_distinguishable(
    graph: &Graph,
    f1: &VertexSet,
    f2: &VertexSet,
    model: DiagnosticModel,
) -> Result<bool> {
    check_pair(graph, f1, f2)?;
    let forced = |f: &VertexSet, tester: usize, outcome: bool| (!f.contains(tester)).then_some(outcome);
    let conflict = |a: Option<bool>, b: Option<bool>| matches!((a, b), (Some(x), Some(y)) if x != y);
    match model {
        DiagnosticModel::Pmc => {
            for (u, v) in graph.edges() {
                for (tester, tested) in [(u, v), (v, u)] {
                    let o1 = forced(f1, tester, f1.contains(tested));
                    let o2 = forced(f2, tester, f2.contains(tested));
                    if conflict(o1, o2) {
                        return Ok(true);
                    }
                }
            }
            Ok(false)
        }
        DiagnosticModel::MmStar => {
            for w in 0..graph.vertex_count() {
                let nb = graph.neighbors(w);
                for (i, &p) in nb.iter().enumerate() {
                    for &q in &nb[i + 1..] {
                        let o1 = forced(f1, w, f1.contains(p) || f1.contains(q));
                        let o2 = forced(f2, w, f2.contains(p) || f2.contains(q));
                        if conflict(o1, o2) {
                            return Ok(true);
                        }
                    }
                }
            }
            Ok(false)
        }
    }
}

/// Mask form of the structural characterisations, for the exhaustive engine.
pub(crate) fn mask_distinguishable(mg: &MaskGraph, f1: u128, f2: u128, model: DiagnosticModel) -> bool {
    let survivors = mg.full & !(f1 | f2);
    let delta = f1 ^ f2;
    match model {
        DiagnosticModel::Pmc => bits(survivors).any(|s| mg.adj[s] & delta != 0),
        DiagnosticModel::MmStar => {
            let (a, b) = (f1 & !f2, f2 & !f1);
            bits(survivors).any(|w| {
                let adj = mg.adj[w];
                (adj & delta != 0 && adj & survivors != 0) || (adj & a).count_ones() >= 2 || (adj & b).count_ones() >= 2
            })
        }
    }
}
