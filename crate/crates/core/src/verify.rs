//! Verification suites: formula cross-checks, relation audits, construction
//! enumerations and decider-versus-oracle comparisons.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value as Json};

use crate::diagnosability::brute_force_diagnosability;
use crate::distinguish::{distinguishable, syndrome_oracle_distinguishable, DiagnosticModel};
use crate::error::{invalid, Result};
use crate::fault::{is_faulty_set, m_connectivity, random_faulty_set, FaultModelSpec};
use crate::formula::{consistency_report, cross_check};
use crate::relations::relation_audit;
use crate::topology::{arrangement, hypercube, nk_star};
use crate::witness::{
    arrangement_witness, boundary_census, hypercube_star_witness, nk_star_witness, q4_indistinguishable_pair,
    ArrangementShape, WitnessPair,
};
use crate::{Graph, VertexSet};

pub const DEFAULT_SEED: u64 = 42;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Formulas,
    Relations,
    Constructions,
    Oracles,
    All,
}

impl Suite {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(match text.to_ascii_lowercase().as_str() {
            "formulas" => Suite::Formulas,
            "relations" => Suite::Relations,
            "constructions" => Suite::Constructions,
            "oracles" => Suite::Oracles,
            "all" => Suite::All,
            other => return Err(invalid(format!("unknown suite `{other}`"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub pass: bool,
    pub detail: Json,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub seed: u64,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub workers: usize,
    pub random_pairs: usize,
    pub closure_pairs: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: DEFAULT_SEED, workers: 1, random_pairs: 100_000, closure_pairs: 1000 }
    }
}

pub fn run(suite: Suite, opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut checks = Vec::new();
    let suites: &[Suite] = match suite {
        Suite::All => &[Suite::Formulas, Suite::Relations, Suite::Constructions, Suite::Oracles],
        _ => std::slice::from_ref(&suite),
    };
    for &s in suites {
        match s {
            Suite::Formulas => formulas(&mut checks)?,
            Suite::Relations => relations(&mut checks, opts.workers)?,
            Suite::Constructions => constructions(&mut checks)?,
            Suite::Oracles => oracles(&mut checks, opts)?,
            Suite::All => unreachable!(),
        }
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(VerifyReport { suite, seed: opts.seed, pass, checks })
}

fn push(checks: &mut Vec<Check>, suite: Suite, name: impl Into<String>, pass: bool, detail: Json) {
    checks.push(Check { suite, name: name.into(), pass, detail });
}

fn formulas(checks: &mut Vec<Check>) -> Result<()> {
    let s = Suite::Formulas;
    let report = consistency_report();
    push(checks, s, "catalog consistency", report.is_empty(), json!({ "violations": report }));

    let q3 = hypercube(3)?;
    let q4 = hypercube(4)?;
    let s42 = nk_star(4, 2)?;
    let a42 = arrangement(4, 2)?;
    let kappa = |g: &Graph, m: FaultModelSpec| m_connectivity(g, m, None).map(|r| r.kappa as i64);
    let t = |g: &Graph, m: FaultModelSpec, d: DiagnosticModel| {
        brute_force_diagnosability(g, m, d, g.vertex_count()).map(|r| r.t as i64)
    };
    let mut cross = vec![
        cross_check("kappa_bar_g_hypercube", 4, None, Some(1), kappa(&q4, FaultModelSpec::extra(1))?),
        cross_check("kappa_g_nkstar", 4, Some(2), Some(1), kappa(&s42, FaultModelSpec::good_neighbor(1))?),
        cross_check("kappa_1_arrangement_special", 4, Some(2), None, kappa(&a42, FaultModelSpec::good_neighbor(1))?),
        cross_check(
            "t_bar_g_hypercube_mmstar",
            3,
            None,
            Some(1),
            t(&q3, FaultModelSpec::extra(1), DiagnosticModel::MmStar)?,
        ),
        cross_check(
            "t_bar_g_hypercube_mmstar",
            4,
            None,
            Some(1),
            t(&q4, FaultModelSpec::extra(1), DiagnosticModel::MmStar)?,
        ),
        cross_check("t_bar_g_hypercube_pmc", 4, None, Some(1), t(&q4, FaultModelSpec::extra(1), DiagnosticModel::Pmc)?),
    ];
    let s43 = nk_star(4, 3)?;
    cross.push(cross_check(
        "t_bar_1_nkstar",
        4,
        Some(2),
        None,
        t(&s42, FaultModelSpec::extra(1), DiagnosticModel::Pmc)?,
    ));
    cross.push(cross_check(
        "t_bar_1_nkstar",
        4,
        Some(3),
        None,
        t(&s43, FaultModelSpec::extra(1), DiagnosticModel::Pmc)?,
    ));
    cross.push(cross_check(
        "t_1_nkstar",
        4,
        Some(3),
        None,
        t(&s43, FaultModelSpec::good_neighbor(1), DiagnosticModel::Pmc)?,
    ));
    for g in 0..=2 {
        let s53 = nk_star(5, 3)?;
        if g >= 1 {
            cross.push(cross_check("kappa_bar_g_nkstar", 5, Some(3), Some(g), kappa(&s53, FaultModelSpec::extra(g))?));
        }
        cross.push(cross_check("kappa_g_nkstar", 5, Some(3), Some(g), kappa(&s53, FaultModelSpec::good_neighbor(g))?));
    }
    for c in cross {
        let name = format!("{} ({})", c.id, c.params);
        push(checks, s, name, c.pass, serde_json::to_value(&c).expect("serializable"));
    }
    Ok(())
}

fn relations(checks: &mut Vec<Check>, workers: usize) -> Result<()> {
    let graphs = [("Q_3", hypercube(3)?), ("S_{4,2}", nk_star(4, 2)?)];
    for (name, graph) in &graphs {
        for d in [DiagnosticModel::Pmc, DiagnosticModel::MmStar] {
            let report = relation_audit(graph, d, 1, 6, workers)?;
            push(checks, Suite::Relations, format!("{name} {}", d.as_str()), report.all_pass(), report.to_json(graph));
        }
    }
    Ok(())
}

/// The witness instances enumerated by the constructions suite.
pub fn construction_witnesses() -> Result<Vec<(usize, WitnessPair)>> {
    let mut out = vec![(1, hypercube_star_witness(4, 1)?)];
    for n in [6, 7] {
        out.push((2, arrangement_witness(n, 4, ArrangementShape::P3)?));
    }
    out.push((3, arrangement_witness(7, 4, ArrangementShape::C4)?));
    for g in [1, 2] {
        out.push((g, nk_star_witness(5, 3, g)?));
    }
    Ok(out)
}

fn constructions(checks: &mut Vec<Check>) -> Result<()> {
    let s = Suite::Constructions;
    for (g, w) in construction_witnesses()? {
        let cut = w.validate_cut(g)?;
        let mut detail = w.to_json();
        detail["cut"] = serde_json::to_value(&cut).expect("serializable");
        push(checks, s, w.family_tag.clone(), w.size_matches() && cut.passed(), detail);
    }
    let w = nk_star_witness(5, 3, 1)?;
    let census = boundary_census(&w)?;
    let (n, g) = (5usize, 1usize);
    let expected: Vec<usize> = (1..=n)
        .map(|j| {
            if j <= g + 1 {
                1
            } else if j < n {
                0
            } else {
                w.boundary.len() - (g + 1)
            }
        })
        .collect();
    push(checks, s, "nk_star(n=5,k=3,g=1) boundary census", census == expected, json!({"census": census}));

    let q4 = hypercube(4)?;
    let (f1, f2) = q4_indistinguishable_pair();
    let m = FaultModelSpec::extra(1);
    let faulty = is_faulty_set(&q4, &f1, m)? && is_faulty_set(&q4, &f2, m)?;
    let decider = distinguishable(&q4, &f1, &f2, DiagnosticModel::MmStar)?.distinguishable;
    let oracle = syndrome_oracle_distinguishable(&q4, &f1, &f2, DiagnosticModel::MmStar)?;
    push(
        checks,
        s,
        "Q_4 indistinguishable 1-extra pair",
        faulty && !decider && !oracle,
        json!({"f1": q4.labels_of(&f1), "f2": q4.labels_of(&f2), "both_1_extra": faulty, "decider": decider, "oracle": oracle}),
    );
    Ok(())
}

/// Counts decider/oracle disagreements over every pair of distinct sets drawn from `sets`.
fn exhaustive_disagreements(graph: &Graph, sets: &[VertexSet]) -> Result<(usize, usize)> {
    let mut pairs = 0;
    let mut bad = 0;
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            for d in [DiagnosticModel::Pmc, DiagnosticModel::MmStar] {
                pairs += 1;
                if distinguishable(graph, a, b, d)?.distinguishable != syndrome_oracle_distinguishable(graph, a, b, d)?
                {
                    bad += 1;
                }
            }
        }
    }
    Ok((pairs, bad))
}

fn small_subsets(n: usize, max: usize) -> Vec<VertexSet> {
    let mut out = vec![VertexSet::new(n)];
    let mut frontier = out.clone();
    for _ in 0..max {
        let mut next = Vec::new();
        for s in &frontier {
            let start = s.iter().last().map_or(0, |v| v + 1);
            for v in start..n {
                let mut t = s.clone();
                t.insert(v);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Decider/oracle comparison on `count` seeded random pairs of distinct sets of size
/// at most `max_size`. Returns `(comparisons, disagreements)`.
pub fn random_oracle_comparison(graph: &Graph, count: usize, max_size: usize, seed: u64) -> Result<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let any = FaultModelSpec::unrestricted();
    let (mut pairs, mut bad) = (0, 0);
    while pairs < 2 * count {
        let a = random_faulty_set(graph, any, max_size, &mut rng)?;
        let b = random_faulty_set(graph, any, max_size, &mut rng)?;
        if a == b {
            continue;
        }
        for d in [DiagnosticModel::Pmc, DiagnosticModel::MmStar] {
            pairs += 1;
            if distinguishable(graph, &a, &b, d)?.distinguishable != syndrome_oracle_distinguishable(graph, &a, &b, d)?
            {
                bad += 1;
            }
        }
    }
    Ok((pairs, bad))
}

/// Samples `count` pairs of admissible faulty sets and counts pairs whose
/// intersection is not admissible.
pub fn intersection_closure(graph: &Graph, model: FaultModelSpec, count: usize, seed: u64) -> Result<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = graph.vertex_count();
    let mut violations = 0;
    for _ in 0..count {
        let max = rng.gen_range(0..n);
        let a = random_faulty_set(graph, model, max, &mut rng)?;
        let b = random_faulty_set(graph, model, max, &mut rng)?;
        if !is_faulty_set(graph, &a, model)? || !is_faulty_set(graph, &b, model)? {
            return Err(invalid("random_faulty_set returned an inadmissible set"));
        }
        if !is_faulty_set(graph, &a.intersection(&b), model)? {
            violations += 1;
        }
    }
    Ok(violations)
}

fn closure_graphs() -> Result<Vec<(&'static str, Graph)>> {
    Ok(vec![
        ("Q_3", hypercube(3)?),
        ("Q_4", hypercube(4)?),
        ("S_{4,2}", nk_star(4, 2)?),
        ("A_{4,2}", arrangement(4, 2)?),
    ])
}

fn oracles(checks: &mut Vec<Check>, opts: &VerifyOptions) -> Result<()> {
    let s = Suite::Oracles;
    let q3 = hypercube(3)?;
    let (pairs, bad) = exhaustive_disagreements(&q3, &small_subsets(8, 3))?;
    push(
        checks,
        s,
        "Q_3 subsets of size <= 3, exhaustive",
        bad == 0,
        json!({"comparisons": pairs, "disagreements": bad}),
    );
    for (i, (name, graph)) in [("S_{4,2}", nk_star(4, 2)?), ("A_{4,2}", arrangement(4, 2)?)].iter().enumerate() {
        let (pairs, bad) = random_oracle_comparison(graph, opts.random_pairs, 5, opts.seed.wrapping_add(i as u64))?;
        push(
            checks,
            s,
            format!("{name} random pairs of size <= 5"),
            bad == 0,
            json!({"pairs": opts.random_pairs, "comparisons": pairs, "disagreements": bad}),
        );
    }
    for (i, (name, graph)) in closure_graphs()?.iter().enumerate() {
        for model in [
            FaultModelSpec::extra(1),
            FaultModelSpec::extra(2),
            FaultModelSpec::good_neighbor(1),
            FaultModelSpec::good_neighbor(2),
        ] {
            let seed = opts.seed.wrapping_add(100 + 10 * i as u64 + model.g as u64);
            let v = intersection_closure(graph, model, opts.closure_pairs, seed)?;
            push(
                checks,
                s,
                format!("{name} {model} intersection closure"),
                v == 0,
                json!({"pairs": opts.closure_pairs, "violations": v}),
            );
        }
    }
    Ok(())
}

/// Predicted `|N(u) ∩ N(v)|` in `A_{n,k}` as a function of `d(u,v)`.
pub fn arrangement_common_neighbor_prediction(n: usize, k: usize, d: usize) -> usize {
    match d {
        1 => n - k - 1,
        2 if n >= k + 2 => 2,
        2 => 1,
        _ => 0,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommonNeighborViolation {
    pub u: String,
    pub v: String,
    pub distance: usize,
    pub predicted: usize,
    pub actual: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommonNeighborReport {
    pub n: usize,
    pub k: usize,
    pub pairs: usize,
    pub violations: Vec<CommonNeighborViolation>,
}

/// Checks the common-neighbour prediction on every unordered vertex pair of `A_{n,k}`.
pub fn common_neighbor_check(n: usize, k: usize) -> Result<CommonNeighborReport> {
    let g = arrangement(n, k)?;
    let mut pairs = 0;
    let mut violations = Vec::new();
    for u in 0..g.vertex_count() {
        for v in u + 1..g.vertex_count() {
            pairs += 1;
            let d = g.distance(u, v)?.expect("arrangement graphs are connected");
            let actual = g.common_neighbors(u, v)?.len();
            let predicted = arrangement_common_neighbor_prediction(n, k, d);
            if actual != predicted {
                violations.push(CommonNeighborViolation {
                    u: g.label(u).to_string(),
                    v: g.label(v).to_string(),
                    distance: d,
                    predicted,
                    actual,
                });
            }
        }
    }
    Ok(CommonNeighborReport { n, k, pairs, violations })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumeration_size() {
        assert_eq!(small_subsets(8, 3).len(), 1 + 8 + 28 + 56);
    }

    #[test]
    fn suites_parse() {
        assert_eq!(Suite::parse("ORACLES").unwrap(), Suite::Oracles);
        assert!(Suite::parse("x").is_err());
    }

    #[test]
    fn constructions_pass() {
        let r = run(Suite::Constructions, &VerifyOptions::default()).unwrap();
        assert!(r.pass, "{:#?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn small_oracle_run_is_reproducible() {
        let g = nk_star(4, 2).unwrap();
        let a = random_oracle_comparison(&g, 500, 5, 7).unwrap();
        assert_eq!(a, random_oracle_comparison(&g, 500, 5, 7).unwrap());
        assert_eq!(a, (1000, 0));
    }

    #[test]
    fn common_neighbor_distance_one_matches() {
        let r = common_neighbor_check(4, 2).unwrap();
        assert_eq!(r.pairs, 66);
        assert!(r.violations.iter().all(|v| v.distance == 2));
    }
}
