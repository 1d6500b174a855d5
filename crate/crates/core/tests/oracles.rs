use simplexord::oracle::{composition_count, lattice_counts, OracleReport};
use simplexord::{
    closedform, enumerate_compositions, lattice_comparability, quadrature_mean_upper_prob, LatticeSpec,
    OrderKind,
};
use std::collections::HashSet;

/// Independent binomial coefficient via Pascal's triangle.
fn pascal(n: usize, k: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![1u64; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row[k]
}

#[test]
fn compositions_are_complete_and_distinct() {
    for (n, m) in [(2usize, 2u64), (3, 2), (3, 30), (4, 12), (6, 5)] {
        let all: Vec<Vec<u64>> = enumerate_compositions(n, m).unwrap().collect();
        let want = pascal(m as usize + n - 1, n - 1);
        assert_eq!(all.len() as u64, want);
        assert_eq!(composition_count(n, m), Some(want as u128));
        assert!(all.iter().all(|k| k.len() == n && k.iter().sum::<u64>() == m));
        let distinct: HashSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), all.len());
        assert!(all.windows(2).all(|w| w[0] < w[1]), "not lexicographic");
    }
    assert_eq!(pascal(32, 2), 496);
}

#[test]
fn lattice_n3_regression() {
    let counts = lattice_counts(&LatticeSpec::new(OrderKind::Hr, 3, 96)).unwrap();
    assert_eq!(counts.points, 4753);
    assert_eq!(counts.total_pairs, 22_591_009);
    assert_eq!(counts.le_pairs, 5_737_949);
    assert!((counts.fraction() - 0.25).abs() <= 0.02);
}

#[test]
fn lattice_accounting_is_symmetric() {
    for order in OrderKind::ALL {
        for (n, m) in [(3usize, 20u64), (4, 10), (5, 6)] {
            let c = lattice_counts(&LatticeSpec::new(order, n, m)).unwrap();
            assert_eq!(c.le_pairs, c.ge_pairs, "{order} n={n} m={m}");
        }
    }
}

#[test]
fn lattice_n2_formula() {
    for m in [4u64, 10, 100] {
        let k = (m + 1) as f64;
        for order in OrderKind::ALL {
            let v = lattice_comparability(&LatticeSpec::new(order, 2, m)).unwrap();
            assert_eq!(v, (k + 1.0) / (2.0 * k), "{order} m={m}");
        }
    }
}

#[test]
fn lattice_other_orders_near_constants() {
    let st = lattice_comparability(&LatticeSpec::new(OrderKind::St, 3, 60)).unwrap();
    assert!((st - 1.0 / 3.0).abs() < 0.03, "{st}");
    let lr = lattice_comparability(&LatticeSpec::new(OrderKind::Lr, 3, 60)).unwrap();
    assert!((lr - 1.0 / 6.0).abs() < 0.03, "{lr}");
}

#[test]
fn quadrature_values() {
    assert!((quadrature_mean_upper_prob(2, 64).unwrap() - 0.5).abs() < 1e-10);
    assert!((quadrature_mean_upper_prob(3, 64).unwrap() - 0.25).abs() < 1e-3);
    assert!((quadrature_mean_upper_prob(4, 48).unwrap() - 0.125).abs() < 1e-3);
    assert!((quadrature_mean_upper_prob(5, 16).unwrap() - 0.0625).abs() < 1e-3);
}

#[test]
fn quadrature_error_shrinks_under_refinement() {
    let errs: Vec<f64> = [8, 16, 32, 64]
        .iter()
        .map(|&p| (quadrature_mean_upper_prob(3, p).unwrap() - 0.25).abs())
        .collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
}

#[test]
fn oracles_agree_before_comparing_to_the_constant() {
    let lattice = lattice_comparability(&LatticeSpec::new(OrderKind::Hr, 3, 96)).unwrap();
    let quad = quadrature_mean_upper_prob(3, 64).unwrap();
    assert!((lattice - quad).abs() <= 0.02);
    assert_eq!(closedform::hr_comparability_prob(3).unwrap(), 0.25);
}

#[test]
fn reports() {
    let r = OracleReport::quadrature(4, 24).unwrap();
    assert_eq!((r.n, r.granularity, r.reference), (4, 24, 0.125));
    assert!(r.abs_error < 1e-3);
    let r = OracleReport::lattice(&LatticeSpec::new(OrderKind::Lr, 3, 30)).unwrap();
    assert!((r.reference - 1.0 / 6.0).abs() < 1e-16);
}
