//! Explicit seed sets `Y` whose neighbourhoods give diagnosability upper bounds.

use serde::Serialize;
use serde_json::json;

use crate::error::{invalid, Error, Result};
use crate::fault::{is_faulty_set, FaultModelSpec};
use crate::topology::{arrangement, decompose_by_last_symbol, hypercube, nk_star, permutation_label};
use crate::{Graph, VertexSet};

/// Shapes of the arrangement-graph seeds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ArrangementShape {
    P3,
    C3,
    C4,
    P4,
}

impl ArrangementShape {
    pub fn parse(text: &str) -> Result<Self> {
        match text.to_ascii_uppercase().as_str() {
            "P3" => Ok(ArrangementShape::P3),
            "C3" => Ok(ArrangementShape::C3),
            "C4" => Ok(ArrangementShape::C4),
            "P4" => Ok(ArrangementShape::P4),
            other => Err(invalid(format!("unknown seed shape {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutValidation {
    pub g: usize,
    /// Component sizes of `G - N(Y)` in order of smallest member.
    pub component_sizes: Vec<usize>,
    pub faulty: bool,
    pub two_components: bool,
    pub outside_nonempty: bool,
}

impl CutValidation {
    pub fn passed(&self) -> bool {
        self.faulty && self.two_components && self.outside_nonempty
    }
}

#[derive(Clone, Debug)]
pub struct WitnessPair {
    pub graph: Graph,
    pub y: VertexSet,
    pub boundary: VertexSet,
    pub closed: VertexSet,
    pub predicted_boundary_size: usize,
    pub predicted_closed_size: Option<usize>,
    pub family_tag: String,
    pub validation: Option<CutValidation>,
}

impl WitnessPair {
    /// Builds the neighbourhoods of an arbitrary seed and records the predicted size.
    pub fn from_seed(graph: &Graph, y: VertexSet, predicted: usize, tag: impl Into<String>) -> Result<Self> {
        graph.check_set(&y)?;
        if y.is_empty() {
            return Err(invalid("empty seed set"));
        }
        let boundary = graph.open_neighborhood(&y)?;
        let closed = boundary.union(&y);
        Ok(WitnessPair {
            graph: graph.clone(),
            y,
            boundary,
            closed,
            predicted_boundary_size: predicted,
            predicted_closed_size: None,
            family_tag: tag.into(),
            validation: None,
        })
    }

    pub fn size_matches(&self) -> bool {
        self.boundary.len() == self.predicted_boundary_size
            && self.predicted_closed_size.is_none_or(|c| c == self.closed.len())
    }

    /// Checks that `N(Y)` is a `g`-extra faulty set leaving exactly two components and
    /// a vertex outside `N^c(Y)`.
    pub fn validate_cut(&self, g: usize) -> Result<CutValidation> {
        let comps = self.graph.components(&self.boundary)?;
        Ok(CutValidation {
            g,
            component_sizes: comps.iter().map(VertexSet::len).collect(),
            faulty: is_faulty_set(&self.graph, &self.boundary, FaultModelSpec::extra(g))?,
            two_components: comps.len() == 2,
            outside_nonempty: self.closed.len() < self.graph.vertex_count(),
        })
    }

    fn validated(mut self, g: usize) -> Result<Self> {
        if !self.size_matches() {
            return Err(Error::VerificationFailed(format!(
                "{}: |N(Y)| = {} but the closed form gives {}",
                self.family_tag,
                self.boundary.len(),
                self.predicted_boundary_size
            )));
        }
        let v = self.validate_cut(g)?;
        if !v.passed() {
            return Err(Error::VerificationFailed(format!(
                "{}: N(Y) is not a two-component {g}-extra cut (components {:?})",
                self.family_tag, v.component_sizes
            )));
        }
        self.validation = Some(v);
        Ok(self)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "family_tag": self.family_tag,
            "y": self.graph.labels_of(&self.y),
            "boundary": self.graph.labels_of(&self.boundary),
            "boundary_size": self.boundary.len(),
            "predicted_boundary_size": self.predicted_boundary_size,
            "closed_size": self.closed.len(),
            "predicted_closed_size": self.predicted_closed_size,
            "size_matches": self.size_matches(),
            "validation": self.validation.as_ref().map(|v| json!({
                "g": v.g,
                "component_sizes": v.component_sizes,
                "passed": v.passed(),
            })),
        })
    }
}

/// `Y = K_{1,g}` centred at the all-zero string, leaves having a single 1 at string
/// positions `1..=g` (counted from the left, starting at 0).
pub fn hypercube_star_witness(n: usize, g: usize) -> Result<WitnessPair> {
    if n < 4 || g + 3 > n {
        return Err(invalid(format!("hypercube seed needs n >= 4 and g <= n - 3, got n={n}, g={g}")));
    }
    let graph = hypercube(n)?;
    let y = graph.set_of(std::iter::once(0).chain((1..=g).map(|i| 1 << (n - 1 - i))))?;
    let predicted = (g + 1) * (2 * (n - 1) - g) / 2 + 1;
    let mut w = WitnessPair::from_seed(&graph, y, predicted, format!("hypercube_star(n={n},g={g})"))?;
    w.predicted_closed_size = Some((g + 1) * (2 * n - g) / 2 + 1);
    w.validated(g)
}

fn permutation_set(graph: &Graph, perms: &[Vec<u8>]) -> Result<VertexSet> {
    let labels: Vec<String> = perms.iter().map(|p| permutation_label(p)).collect();
    graph.set_from_labels(&labels)
}

/// `Y = {[j, n-k+2, ..., n] : j = 1..=g+1}` inside the last-symbol block `H_n`.
pub fn nk_star_witness(n: usize, k: usize, g: usize) -> Result<WitnessPair> {
    if n < 4 || k < 2 || k >= n || g == 0 || g + k > n {
        return Err(invalid(format!(
            "(n,k)-star seed needs n >= 4, 2 <= k < n and 1 <= g <= n - k, got n={n}, k={k}, g={g}"
        )));
    }
    let graph = nk_star(n, k)?;
    let tail: Vec<u8> = ((n - k + 2)..=n).map(|s| s as u8).collect();
    let perms: Vec<Vec<u8>> =
        (1..=g + 1).map(|j| std::iter::once(j as u8).chain(tail.iter().copied()).collect()).collect();
    let y = permutation_set(&graph, &perms)?;
    let predicted = n + g * (k - 2) - 1;
    WitnessPair::from_seed(&graph, y, predicted, format!("nk_star(n={n},k={k},g={g})"))?.validated(g)
}

/// `|H_j ∩ N(Y)|` for `j = 1..=n`.
pub fn boundary_census(witness: &WitnessPair) -> Result<Vec<usize>> {
    Ok(decompose_by_last_symbol(&witness.graph)?.iter().map(|h| h.intersection(&witness.boundary).len()).collect())
}

/// Arrangement-graph seeds: a 3-vertex path or triangle (validated as 2-extra cuts)
/// and a 4-cycle or 4-vertex path (validated as 3-extra cuts).
pub fn arrangement_witness(n: usize, k: usize, shape: ArrangementShape) -> Result<WitnessPair> {
    let needs_seven = matches!(shape, ArrangementShape::C4 | ArrangementShape::P4);
    if k < 4 || k + 2 > n || (needs_seven && n < 7) {
        return Err(invalid(format!(
            "{shape:?} seed needs 4 <= k <= n - 2{}, got n={n}, k={k}",
            if needs_seven { " and n >= 7" } else { "" }
        )));
    }
    let graph = arrangement(n, k)?;
    let (kk, nk) = (k as u8, n - k);
    let with_head = |a: u8, b: u8| -> Vec<u8> { [a, b].into_iter().chain(3..=kk).collect() };
    let (perms, predicted, g) = match shape {
        ArrangementShape::P3 => {
            (vec![with_head(1, 2), with_head(1, kk + 1), with_head(kk + 2, kk + 1)], (3 * k - 2) * nk - 3, 2)
        }
        ArrangementShape::C3 => {
            (vec![with_head(1, 2), with_head(kk + 1, 2), with_head(kk + 2, 2)], (3 * k - 2) * nk - 2, 2)
        }
        ArrangementShape::C4 => (
            vec![with_head(1, 2), with_head(kk + 1, 2), with_head(kk + 1, kk + 2), with_head(1, kk + 2)],
            4 * ((k - 1) * nk - 1),
            3,
        ),
        ArrangementShape::P4 => (
            vec![with_head(1, 2), with_head(kk + 1, 2), with_head(kk + 1, 1), with_head(2, 1)],
            (4 * k - 3) * nk - 3,
            3,
        ),
    };
    let y = permutation_set(&graph, &perms)?;
    WitnessPair::from_seed(&graph, y, predicted, format!("arrangement_{shape:?}(n={n},k={k})"))?.validated(g)
}

/// Two 1-extra faulty sets of `Q_4` that MM* cannot tell apart.
pub fn q4_indistinguishable_pair() -> (VertexSet, VertexSet) {
    let parse = |labels: [&str; 6]| {
        let idx = labels.iter().map(|l| usize::from_str_radix(l, 2).expect("binary label"));
        VertexSet::from_indices(16, idx).expect("in range")
    };
    (parse(["0000", "0101", "0011", "1100", "1010", "1111"]), parse(["0110", "0101", "0011", "1100", "1010", "1001"]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distinguish::mmstar_distinguishable;
    use crate::topology::resolve_set;

    #[test]
    fn hypercube_examples() {
        let w = hypercube_star_witness(4, 1).unwrap();
        assert_eq!((w.boundary.len(), w.closed.len()), (6, 8));
        assert_eq!(w.graph.labels_of(&w.y), vec!["0000", "0100"]);
        assert_eq!(hypercube_star_witness(5, 2).unwrap().boundary.len(), 10);
        let w = hypercube_star_witness(4, 0).unwrap();
        assert_eq!((w.y.len(), w.boundary.len()), (1, 4));
        assert!(hypercube_star_witness(4, 2).is_err());
        assert!(hypercube_star_witness(3, 0).is_err());
    }

    #[test]
    fn hypercube_sizes_over_range() {
        for n in 4..=9 {
            for g in 0..=n - 3 {
                let w = hypercube_star_witness(n, g).unwrap();
                assert!(w.size_matches(), "n={n} g={g}");
                let leaves: Vec<usize> = w.y.iter().skip(1).collect();
                for (i, &a) in leaves.iter().enumerate() {
                    for &b in &leaves[i + 1..] {
                        let common = w.graph.common_neighbors(a, b).unwrap();
                        assert_eq!(common.len(), 2);
                        assert!(common.contains(0));
                    }
                }
            }
        }
    }

    #[test]
    fn figure_seed_variant_gives_same_size() {
        let q4 = hypercube(4).unwrap();
        let y = resolve_set(&q4, &["0000", "0010"]).unwrap();
        let w = WitnessPair::from_seed(&q4, y, 6, "figure variant").unwrap();
        assert!(w.size_matches());
        assert!(w.validate_cut(1).unwrap().passed());
    }

    #[test]
    fn nk_star_examples_and_census() {
        let w = nk_star_witness(5, 3, 1).unwrap();
        assert_eq!(w.graph.labels_of(&w.y), vec!["[1,4,5]", "[2,4,5]"]);
        assert_eq!(w.boundary.len(), 5);
        assert_eq!(nk_star_witness(6, 3, 2).unwrap().boundary.len(), 7);
        let w = nk_star_witness(5, 3, 2).unwrap();
        let h5 = &decompose_by_last_symbol(&w.graph).unwrap()[4];
        assert_eq!(w.y.len(), 3);
        assert!(w.y.is_subset(h5));
        for (n, k, g) in [(5, 3, 1), (5, 3, 2), (6, 3, 2), (6, 4, 2), (7, 3, 3), (5, 2, 1), (6, 2, 3)] {
            let w = nk_star_witness(n, k, g).unwrap();
            let census = boundary_census(&w).unwrap();
            for j in 1..=n {
                let expected = if j <= g + 1 {
                    1
                } else if j < n {
                    0
                } else {
                    w.boundary.len() - (g + 1)
                };
                assert_eq!(census[j - 1], expected, "n={n} k={k} g={g} j={j}");
            }
            let sizes = &w.validation.as_ref().unwrap().component_sizes;
            assert!(sizes.contains(&(g + 1)));
        }
        assert!(nk_star_witness(5, 3, 3).is_err());
    }

    #[test]
    fn arrangement_examples() {
        assert_eq!(arrangement_witness(6, 4, ArrangementShape::P3).unwrap().boundary.len(), 17);
        assert_eq!(arrangement_witness(6, 4, ArrangementShape::C3).unwrap().boundary.len(), 18);
        assert_eq!(arrangement_witness(7, 4, ArrangementShape::C4).unwrap().boundary.len(), 32);
        let p4 = arrangement_witness(7, 4, ArrangementShape::P4).unwrap();
        assert_eq!(p4.boundary.len(), (4 * 4 - 3) * 3 - 3);
        let ends: Vec<usize> = p4.y.iter().collect();
        let (u, x) = (
            crate::topology::resolve_vertex(&p4.graph, "[1,2,3,4]").unwrap(),
            crate::topology::resolve_vertex(&p4.graph, "[2,1,3,4]").unwrap(),
        );
        assert!(ends.contains(&u) && ends.contains(&x));
        assert_eq!(p4.graph.distance(u, x).unwrap(), Some(3));
        assert!(arrangement_witness(6, 4, ArrangementShape::C4).is_err());
        assert!(arrangement_witness(6, 3, ArrangementShape::P3).is_err());
    }

    #[test]
    fn p3_pairwise_neighbourhoods() {
        let w = arrangement_witness(7, 4, ArrangementShape::P3).unwrap();
        let g = &w.graph;
        let ids: Vec<usize> = ["[1,2,3,4]", "[1,5,3,4]", "[6,5,3,4]"]
            .iter()
            .map(|l| crate::topology::resolve_vertex(g, l).unwrap())
            .collect();
        let (u, v, x) = (ids[0], ids[1], ids[2]);
        assert_eq!(g.common_neighbors(u, v).unwrap().len(), 7 - 4 - 1);
        assert_eq!(g.common_neighbors(v, x).unwrap().len(), 7 - 4 - 1);
        let ux = g.common_neighbors(u, x).unwrap();
        assert_eq!(ux.len(), 2);
        assert!(ux.contains(v));
    }

    #[test]
    fn published_q4_pair() {
        let (f1, f2) = q4_indistinguishable_pair();
        assert_eq!((f1.len(), f2.len()), (6, 6));
        let q4 = hypercube(4).unwrap();
        assert!(!mmstar_distinguishable(&q4, &f1, &f2).unwrap().distinguishable);
        let survivors = f1.union(&f2).complement();
        assert_eq!(survivors.len(), 8);
        assert!(survivors.iter().all(|v| (v as u32).count_ones() % 2 == 1));
        assert!(survivors.iter().all(|v| q4.neighbors(v).iter().all(|&w| !survivors.contains(w))));
    }
}
