//! Fault-tolerant models: faulty-set predicates, M-connectivity and super
//! connectedness.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{invalid, Error, Result};
use crate::mask::MaskGraph;
use crate::search::{par_first_subset, with_pool, SearchOptions};
use crate::{Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FaultKind {
    Unrestricted,
    Conditional,
    GGoodNeighbor,
    GExtra,
}

impl FaultKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            FaultKind::Unrestricted => "unrestricted",
            FaultKind::Conditional => "conditional",
            FaultKind::GGoodNeighbor => "g_good_neighbor",
            FaultKind::GExtra => "g_extra",
        }
    }

    /// Accepts both `g-extra` and `g_extra` spellings.
    pub fn parse(text: &str) -> Result<FaultKind> {
        match text.to_ascii_lowercase().replace('-', "_").as_str() {
            "unrestricted" => Ok(FaultKind::Unrestricted),
            "conditional" => Ok(FaultKind::Conditional),
            "g_good_neighbor" | "good_neighbor" => Ok(FaultKind::GGoodNeighbor),
            "g_extra" | "extra" => Ok(FaultKind::GExtra),
            other => Err(invalid(format!("unknown fault model {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpec")]
pub struct FaultModelSpec {
    pub kind: FaultKind,
    pub g: usize,
}

#[derive(Deserialize)]
struct RawSpec {
    kind: FaultKind,
    #[serde(default)]
    g: usize,
}

impl TryFrom<RawSpec> for FaultModelSpec {
    type Error = Error;
    fn try_from(raw: RawSpec) -> Result<Self> {
        FaultModelSpec::new(raw.kind, raw.g)
    }
}

impl FaultModelSpec {
    pub fn new(kind: FaultKind, g: usize) -> Result<Self> {
        if g > 0 && matches!(kind, FaultKind::Unrestricted | FaultKind::Conditional) {
            return Err(invalid(format!("the {} model takes no g parameter", kind.as_str())));
        }
        Ok(FaultModelSpec { kind, g })
    }

    pub const fn unrestricted() -> Self {
        FaultModelSpec { kind: FaultKind::Unrestricted, g: 0 }
    }

    pub const fn conditional() -> Self {
        FaultModelSpec { kind: FaultKind::Conditional, g: 0 }
    }

    pub const fn good_neighbor(g: usize) -> Self {
        FaultModelSpec { kind: FaultKind::GGoodNeighbor, g }
    }

    pub const fn extra(g: usize) -> Self {
        FaultModelSpec { kind: FaultKind::GExtra, g }
    }
}

impl fmt::Display for FaultModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FaultKind::Unrestricted | FaultKind::Conditional => f.write_str(self.kind.as_str()),
            FaultKind::GGoodNeighbor => write!(f, "{}-good-neighbor", self.g),
            FaultKind::GExtra => write!(f, "{}-extra", self.g),
        }
    }
}

/// Whether `f` is an admissible faulty set under `model`.
pub fn is_faulty_set(graph: &Graph, f: &VertexSet, model: FaultModelSpec) -> Result<bool> {
    graph.check_set(f)?;
    let alive = f.complement();
    Ok(match model.kind {
        FaultKind::Unrestricted => true,
        FaultKind::Conditional => {
            (0..graph.vertex_count()).all(|v| graph.neighbors(v).iter().any(|&w| alive.contains(w)))
        }
        FaultKind::GGoodNeighbor => {
            alive.iter().all(|v| graph.neighbors(v).iter().filter(|&&w| alive.contains(w)).count() >= model.g)
        }
        FaultKind::GExtra => graph.components(f)?.iter().all(|c| c.len() > model.g),
    })
}

/// A faulty set whose removal disconnects the graph.
pub fn is_m_cut(graph: &Graph, f: &VertexSet, model: FaultModelSpec) -> Result<bool> {
    let cut = graph.is_vertex_cut(f)?;
    Ok(cut && is_faulty_set(graph, f, model)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectivityResult {
    /// Exact minimum when `exhaustive`; otherwise `cap + 1`, a lower bound.
    pub kappa: usize,
    pub witness_cut: Option<VertexSet>,
    pub exhaustive: bool,
    pub cap: usize,
}

impl ConnectivityResult {
    pub fn to_json(&self, graph: &Graph) -> serde_json::Value {
        json!({
            "kappa": self.kappa,
            "witness": self.witness_cut.as_ref().map(|w| graph.labels_of(w)),
            "exhaustive": self.exhaustive,
            "cap": self.cap,
        })
    }
}

fn hypercube_extra_estimate(n: usize, g: usize) -> usize {
    ((g + 1) * (2 * (n.max(1) - 1)).saturating_sub(g)) / 2 + 1
}

/// Search bound used when none is supplied, clamped to `|V| - 2`.
pub fn default_connectivity_cap(graph: &Graph, model: FaultModelSpec) -> usize {
    let p = |key: &str| graph.params().get(key).copied().unwrap_or(0) as usize;
    let (n, k, g) = (p("n"), p("k"), model.g);
    let raw = match graph.family() {
        "arrangement" => k * n.saturating_sub(k) + 4,
        "nk_star" => n + g * k,
        "hypercube" => hypercube_extra_estimate(n, g) + 2,
        _ => graph.vertex_count(),
    };
    raw.min(graph.vertex_count().saturating_sub(2))
}

pub fn m_connectivity(graph: &Graph, model: FaultModelSpec, cap: Option<usize>) -> Result<ConnectivityResult> {
    m_connectivity_with(graph, model, &SearchOptions { cap, ..SearchOptions::default() })
}

/// Minimum M-cut by ascending-size enumeration. The witness is the lexicographically
/// smallest cut of minimum size.
pub fn m_connectivity_with(graph: &Graph, model: FaultModelSpec, opts: &SearchOptions) -> Result<ConnectivityResult> {
    let n = graph.vertex_count();
    if !graph.is_connected() {
        return Err(invalid("M-connectivity needs a connected graph"));
    }
    if graph.is_complete() {
        return Err(Error::NoCutExists(format!("complete graph on {n} vertices has no vertex cut")));
    }
    let mg = MaskGraph::new(graph)?;
    let limit = n - 2;
    let cap = opts.cap.unwrap_or_else(|| default_connectivity_cap(graph, model)).min(limit);
    let anchored = opts.use_symmetry && graph.is_vertex_transitive();
    let pool: Vec<usize> = if anchored { (1..n).collect() } else { (0..n).collect() };
    let found = with_pool(opts.workers, || {
        for size in 1..=cap {
            let (base, rest) = if anchored { (1u128, size - 1) } else { (0, size) };
            let hit = par_first_subset(&pool, rest, base, |m| mg.is_disconnected_after(m) && mg.is_faulty(m, model));
            if let Some(m) = hit {
                return Some((size, m));
            }
        }
        None
    });
    match found {
        Some((size, m)) => Ok(ConnectivityResult { kappa: size, witness_cut: Some(mg.set(m)), exhaustive: true, cap }),
        None if cap >= limit => Err(Error::NoCutExists(format!("no {model} cut exists in a graph on {n} vertices"))),
        None => Ok(ConnectivityResult { kappa: cap + 1, witness_cut: None, exhaustive: false, cap }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperConnectivity {
    pub holds: bool,
    /// First violating set in (size, lexicographic) order.
    pub violator: Option<VertexSet>,
}

/// Whether every removal of at most `m` vertices leaves the graph connected, or one
/// unique largest component with at most `q` vertices elsewhere.
pub fn super_connected_check(graph: &Graph, m: usize, q: usize) -> Result<SuperConnectivity> {
    super_connected_check_with(graph, m, q, &SearchOptions::default())
}

pub fn super_connected_check_with(
    graph: &Graph,
    m: usize,
    q: usize,
    opts: &SearchOptions,
) -> Result<SuperConnectivity> {
    let n = graph.vertex_count();
    if m >= n {
        return Err(invalid(format!("m = {m} must be below the vertex count {n}")));
    }
    let mg = MaskGraph::new(graph)?;
    let violates = |f: u128| {
        let comps = mg.components(f);
        if comps.len() <= 1 {
            return false;
        }
        let sizes: Vec<u32> = comps.iter().map(|c| c.count_ones()).collect();
        let largest = *sizes.iter().max().unwrap_or(&0);
        let unique = sizes.iter().filter(|&&s| s == largest).count() == 1;
        let rest = (n - f.count_ones() as usize) as u32 - largest;
        !(unique && rest as usize <= q)
    };
    let anchored = opts.use_symmetry && graph.is_vertex_transitive();
    let pool: Vec<usize> = if anchored { (1..n).collect() } else { (0..n).collect() };
    let found = with_pool(opts.workers, || {
        if violates(0) {
            return Some(0);
        }
        for size in 1..=m {
            let (base, rest) = if anchored { (1u128, size - 1) } else { (0, size) };
            if let Some(f) = par_first_subset(&pool, rest, base, violates) {
                return Some(f);
            }
        }
        None
    });
    Ok(SuperConnectivity { holds: found.is_none(), violator: found.map(|f| mg.set(f)) })
}

/// Draws a random set of at most `max_size` vertices and repairs it into an
/// admissible faulty set (the repair may enlarge it).
pub fn random_faulty_set<R: Rng + ?Sized>(
    graph: &Graph,
    model: FaultModelSpec,
    max_size: usize,
    rng: &mut R,
) -> Result<VertexSet> {
    let n = graph.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let size = rng.gen_range(0..=max_size.min(n));
    let mut f = graph.set_of(order[..size].iter().copied())?;
    match model.kind {
        FaultKind::Unrestricted => {}
        FaultKind::GExtra => {
            for c in graph.components(&f)? {
                if c.len() <= model.g {
                    f.union_with(&c);
                }
            }
        }
        FaultKind::GGoodNeighbor => loop {
            let weak: Vec<usize> = (0..n)
                .filter(|&v| !f.contains(v))
                .filter(|&v| graph.neighbors(v).iter().filter(|&&w| !f.contains(w)).count() < model.g)
                .collect();
            if weak.is_empty() {
                break;
            }
            for v in weak {
                f.insert(v);
            }
        },
        FaultKind::Conditional => loop {
            let starved = (0..n).find(|&v| graph.neighbors(v).iter().all(|&w| f.contains(w)));
            match starved {
                Some(v) => {
                    let nb = graph.neighbors(v);
                    if nb.is_empty() {
                        return Err(invalid("isolated vertices admit no conditional faulty set"));
                    }
                    f.remove(nb[rng.gen_range(0..nb.len())]);
                }
                None => break,
            }
        },
    }
    debug_assert!(is_faulty_set(graph, &f, model)?);
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{arrangement, hypercube, nk_star, resolve_set};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn all_models(gmax: usize) -> Vec<FaultModelSpec> {
        let mut v = vec![FaultModelSpec::unrestricted(), FaultModelSpec::conditional()];
        for g in 0..=gmax {
            v.push(FaultModelSpec::good_neighbor(g));
            v.push(FaultModelSpec::extra(g));
        }
        v
    }

    #[test]
    fn g_parameter_only_for_parametrised_models() {
        assert!(FaultModelSpec::new(FaultKind::Conditional, 1).is_err());
        assert!(FaultModelSpec::new(FaultKind::GExtra, 2).is_ok());
        let parsed: std::result::Result<FaultModelSpec, _> = serde_json::from_str(r#"{"kind":"unrestricted","g":3}"#);
        assert!(parsed.is_err());
        let spec: FaultModelSpec = serde_json::from_str(r#"{"kind":"g_extra","g":2}"#).unwrap();
        assert_eq!(spec, FaultModelSpec::extra(2));
        assert_eq!(serde_json::to_string(&spec).unwrap(), r#"{"kind":"g_extra","g":2}"#);
    }

    #[test]
    fn faulty_set_examples() {
        let q4 = hypercube(4).unwrap();
        let y = resolve_set(&q4, &["0000", "0010"]).unwrap();
        let ny = q4.open_neighborhood(&y).unwrap();
        assert!(is_faulty_set(&q4, &ny, FaultModelSpec::extra(1)).unwrap());
        assert!(is_m_cut(&q4, &ny, FaultModelSpec::extra(1)).unwrap());

        let q3 = hypercube(3).unwrap();
        assert!(is_faulty_set(&q3, &q3.empty_set(), FaultModelSpec::extra(0)).unwrap());
        let n0 = q3.open_neighborhood(&q3.set_of([0]).unwrap()).unwrap();
        assert!(!is_faulty_set(&q3, &n0, FaultModelSpec::extra(1)).unwrap());
        for m in all_models(2) {
            assert!(!is_m_cut(&q3, &q3.empty_set(), m).unwrap());
        }

        let s42 = nk_star(4, 2).unwrap();
        let y = resolve_set(&s42, &["[1,4]", "[2,4]"]).unwrap();
        let ny = s42.open_neighborhood(&y).unwrap();
        assert!(is_m_cut(&s42, &ny, FaultModelSpec::extra(1)).unwrap());
    }

    #[test]
    fn full_vertex_set_edge_case() {
        let q3 = hypercube(3).unwrap();
        let all = q3.full_set();
        assert!(is_faulty_set(&q3, &all, FaultModelSpec::extra(2)).unwrap());
        assert!(is_faulty_set(&q3, &all, FaultModelSpec::good_neighbor(2)).unwrap());
        assert!(!is_faulty_set(&q3, &all, FaultModelSpec::conditional()).unwrap());
        assert!(is_m_cut(&q3, &all, FaultModelSpec::extra(1)).is_err());
    }

    #[test]
    fn small_connectivities() {
        let q3 = hypercube(3).unwrap();
        let r = m_connectivity(&q3, FaultModelSpec::unrestricted(), None).unwrap();
        assert_eq!((r.kappa, r.exhaustive), (3, true));
        assert_eq!(q3.labels_of(r.witness_cut.as_ref().unwrap()), vec!["000", "011", "101"]);

        let s42 = nk_star(4, 2).unwrap();
        let r = m_connectivity(&s42, FaultModelSpec::good_neighbor(1), None).unwrap();
        assert_eq!(r.kappa, 3);
        let a42 = arrangement(4, 2).unwrap();
        let r = m_connectivity(&a42, FaultModelSpec::good_neighbor(1), None).unwrap();
        assert_eq!(r.kappa, 4);
    }

    #[test]
    fn connectivity_errors_and_caps() {
        let k4 = arrangement(4, 1).unwrap();
        assert!(matches!(m_connectivity(&k4, FaultModelSpec::unrestricted(), None), Err(Error::NoCutExists(_))));
        let q4 = hypercube(4).unwrap();
        let r = m_connectivity(&q4, FaultModelSpec::extra(1), Some(4)).unwrap();
        assert_eq!((r.kappa, r.exhaustive, r.witness_cut), (5, false, None));
        let q2 = hypercube(2).unwrap();
        assert!(matches!(m_connectivity(&q2, FaultModelSpec::extra(1), None), Err(Error::NoCutExists(_))));
        let disconnected =
            Graph::from_edges("custom", Default::default(), vec!["a".into(), "b".into(), "c".into()], [(0, 1)])
                .unwrap();
        assert!(matches!(
            m_connectivity(&disconnected, FaultModelSpec::unrestricted(), None),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn extra_zero_is_classical_connectivity() {
        for g in [hypercube(3).unwrap(), nk_star(4, 2).unwrap(), arrangement(4, 2).unwrap()] {
            let a = m_connectivity(&g, FaultModelSpec::unrestricted(), None).unwrap();
            let b = m_connectivity(&g, FaultModelSpec::extra(0), None).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn anchoring_and_workers_do_not_change_results() {
        let q4 = hypercube(4).unwrap();
        let model = FaultModelSpec::extra(1);
        let base = m_connectivity_with(&q4, model, &SearchOptions::default()).unwrap();
        let plain = m_connectivity_with(&q4, model, &SearchOptions::default().symmetry(false)).unwrap();
        let par = m_connectivity_with(&q4, model, &SearchOptions::default().workers(4)).unwrap();
        assert_eq!(base, plain);
        assert_eq!(base, par);
        assert_eq!(base.kappa, 6);
    }

    #[test]
    fn super_connectedness_examples() {
        let q3 = hypercube(3).unwrap();
        assert!(super_connected_check(&q3, 2, 0).unwrap().holds);
        assert!(super_connected_check(&q3, 8, 0).is_err());
        let q4 = hypercube(4).unwrap();
        let r = super_connected_check(&q4, 6, 1).unwrap();
        let f = r.violator.unwrap();
        assert_eq!(f.len(), 6);
        assert!(!r.holds);
        let comps = q4.components(&f).unwrap();
        assert!(comps.len() >= 2);
    }

    #[test]
    fn super_connectedness_bounds_extra_cuts() {
        let q4 = hypercube(4).unwrap();
        assert!(super_connected_check(&q4, 5, 1).unwrap().holds);
        let r = m_connectivity(&q4, FaultModelSpec::extra(1), None).unwrap();
        assert!(r.kappa >= 6);
    }

    #[test]
    fn random_sets_satisfy_their_model() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for g in [hypercube(4).unwrap(), nk_star(4, 2).unwrap(), arrangement(4, 2).unwrap()] {
            for m in all_models(2) {
                for _ in 0..50 {
                    let f = random_faulty_set(&g, m, 6, &mut rng).unwrap();
                    assert!(is_faulty_set(&g, &f, m).unwrap(), "{m}");
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn model_nesting(members in proptest::collection::btree_set(0usize..16, 0..10)) {
            let q4 = hypercube(4).unwrap();
            let f = q4.set_of(members).unwrap();
            let faulty = |m| is_faulty_set(&q4, &f, m).unwrap();
            for g in 0..3 {
                for h in g..3 {
                    if faulty(FaultModelSpec::good_neighbor(h)) {
                        prop_assert!(faulty(FaultModelSpec::good_neighbor(g)));
                    }
                    if faulty(FaultModelSpec::extra(h)) {
                        prop_assert!(faulty(FaultModelSpec::extra(g)));
                    }
                }
                if faulty(FaultModelSpec::good_neighbor(g)) {
                    prop_assert!(faulty(FaultModelSpec::extra(g)));
                }
            }
            if faulty(FaultModelSpec::conditional()) {
                prop_assert!(faulty(FaultModelSpec::good_neighbor(1)));
            }
        }

        #[test]
        fn mask_kernel_agrees_with_sets(members in proptest::collection::btree_set(0usize..12, 0..12)) {
            let g = arrangement(4, 2).unwrap();
            let mg = MaskGraph::new(&g).unwrap();
            let f = g.set_of(members).unwrap();
            let m = mg.mask(&f);
            for model in all_models(3) {
                prop_assert_eq!(mg.is_faulty(m, model), is_faulty_set(&g, &f, model).unwrap());
            }
            let comps: Vec<VertexSet> = mg.components(m).into_iter().map(|c| mg.set(c)).collect();
            prop_assert_eq!(comps, g.components(&f).unwrap());
        }
    }
}
