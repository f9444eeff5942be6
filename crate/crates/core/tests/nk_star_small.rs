//! Exhaustive 1-extra and 1-good-neighbor diagnosabilities of small (n,k)-star graphs.

use diaglab::diagnosability::brute_force_diagnosability;
use diaglab::distinguish::syndrome_oracle_distinguishable;
use diaglab::fault::is_faulty_set;
use diaglab::topology::{nk_star, resolve_set};
use diaglab::{DiagnosticModel, FaultModelSpec};

fn t(n: usize, k: usize, model: FaultModelSpec, d: DiagnosticModel) -> usize {
    let g = nk_star(n, k).unwrap();
    let r = brute_force_diagnosability(&g, model, d, g.vertex_count()).unwrap();
    assert!(r.exhaustive);
    r.t
}

#[test]
fn pmc_values_follow_n_plus_k_minus_2() {
    for (n, k) in [(4, 2), (5, 2), (4, 3)] {
        assert_eq!(t(n, k, FaultModelSpec::extra(1), DiagnosticModel::Pmc), n + k - 2);
        assert_eq!(t(n, k, FaultModelSpec::good_neighbor(1), DiagnosticModel::Pmc), n + k - 2);
    }
}

#[test]
fn mmstar_with_k_2_is_one_lower() {
    for n in [4, 5] {
        assert_eq!(t(n, 2, FaultModelSpec::extra(1), DiagnosticModel::MmStar), n - 1);
        assert_eq!(t(n, 2, FaultModelSpec::good_neighbor(1), DiagnosticModel::MmStar), n - 1);
    }
}

#[test]
fn s42_mmstar_pair_of_size_four() {
    let g = nk_star(4, 2).unwrap();
    let f1 = resolve_set(&g, &["12", "21", "23", "24"]).unwrap();
    let f2 = resolve_set(&g, &["21", "23", "24", "32"]).unwrap();
    for f in [&f1, &f2] {
        assert!(is_faulty_set(&g, f, FaultModelSpec::extra(1)).unwrap());
    }
    assert!(!syndrome_oracle_distinguishable(&g, &f1, &f2, DiagnosticModel::MmStar).unwrap());
    assert!(syndrome_oracle_distinguishable(&g, &f1, &f2, DiagnosticModel::Pmc).unwrap());
}
