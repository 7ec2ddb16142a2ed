use std::f64::consts::PI;

use ballspec::spectrum::{
    binomial, label_of, multiplicity, weyl_count, BoundaryCondition::*, SpectrumTable,
};
use ballspec::zeros::{dirichlet_zero, neumann_zero, DEFAULT_TOL};
use ballspec_oracle::Oracle;
use proptest::prelude::*;

const J01: f64 = 2.404825557695773;
const TAN_ROOT: f64 = 4.493409457909064;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn disc_neumann_first_nine() {
    let t = SpectrumTable::enumerate(2, Neumann, 18.0).unwrap();
    let shape: Vec<(u32, u32, u64, u64)> = t
        .records
        .iter()
        .map(|r| (r.l, r.m, r.label_first, r.label_last))
        .collect();
    assert_eq!(
        shape,
        [(0, 1, 1, 1), (1, 1, 2, 3), (2, 1, 4, 5), (0, 2, 6, 6), (3, 1, 7, 8)]
    );
    let mut o = Oracle::new();
    for r in &t.records[1..] {
        let start = if r.l == 0 { 2.0 } else { (r.l as f64).sqrt() };
        let m = if r.l == 0 { r.m as usize - 1 } else { r.m as usize };
        let exact = o.xi_prime_zero(r.l, 2, m, start);
        assert!(rel(r.zero, exact) <= 1e-11, "{r:?} vs {exact}");
    }
    assert_eq!(t.count(), 8);
    assert_eq!(t.records[0].lambda, 0.0);
}

#[test]
fn ball_dirichlet_low_end() {
    let t = SpectrumTable::enumerate(3, Dirichlet, 40.0).unwrap();
    let a = &t.records[0];
    assert_eq!((a.l, a.m, a.multiplicity), (0, 1, 1));
    assert!(rel(a.lambda, PI * PI) <= 1e-13);
    let b = &t.records[1];
    assert_eq!((b.l, b.m, b.multiplicity, b.label_first, b.label_last), (1, 1, 3, 2, 4));
    assert!(rel(b.lambda, TAN_ROOT * TAN_ROOT) <= 1e-13);

    let t = SpectrumTable::enumerate(2, Dirichlet, 6.0).unwrap();
    assert_eq!(t.records.len(), 1);
    assert!(rel(t.records[0].lambda, J01 * J01) <= 1e-13);
    assert!(rel(t.records[0].lambda, 5.783185962946785) <= 1e-13);
}

#[test]
fn labels() {
    assert_eq!(label_of(2, Neumann, 0, 1).unwrap(), 1);
    assert_eq!(label_of(2, Neumann, 2, 1).unwrap(), 4);
    assert_eq!(label_of(2, Neumann, 0, 2).unwrap(), 6);
    assert_eq!(label_of(3, Dirichlet, 1, 1).unwrap(), 2);
}

#[test]
fn telescoping_multiplicities() {
    for d in 2..=8u32 {
        let mut sum: u128 = 0;
        for l in 0..=30u32 {
            sum += multiplicity(l, d).unwrap() as u128;
            let (li, di) = (l as i64, d as i64);
            let expect = binomial(li + di - 1, di - 1).unwrap() + binomial(li + di - 2, di - 1).unwrap();
            assert_eq!(sum, expect, "d={d} L={l}");
        }
    }
}

fn assert_tiles(t: &SpectrumTable) {
    let mut next = 1;
    for r in &t.records {
        assert_eq!(r.label_first, next);
        assert_eq!(r.label_last, r.label_first + r.multiplicity - 1);
        assert_eq!(r.lambda, r.zero * r.zero);
        next = r.label_last + 1;
    }
    t.validate().unwrap();
}

#[test]
fn weyl_consistency() {
    for (d, lambda) in [(2, 2000.0), (3, 900.0)] {
        for bc in [Dirichlet, Neumann] {
            let t = SpectrumTable::enumerate(d, bc, lambda).unwrap();
            assert_tiles(&t);
            let ratio = t.count() as f64 / weyl_count(d, lambda);
            assert!((ratio - 1.0).abs() <= 0.15, "d={d} {bc}: {ratio}");
        }
    }
}

#[test]
fn three_dimensional_radial_zeros() {
    for m in 1..=10 {
        let z = dirichlet_zero(0, 3, m, DEFAULT_TOL).unwrap();
        assert!(rel(z, m as f64 * PI) <= 1e-12);
    }
}

#[test]
fn first_angular_mode_below_second_radial_mode() {
    for d in 3..=20 {
        let a11 = dirichlet_zero(1, d, 1, DEFAULT_TOL).unwrap();
        let a02 = dirichlet_zero(0, d, 2, DEFAULT_TOL).unwrap();
        assert!(a11 < a02, "Dirichlet d={d}");
    }
    for d in 2..=20 {
        let b11 = neumann_zero(1, d, 1, DEFAULT_TOL).unwrap();
        let b02 = neumann_zero(0, d, 2, DEFAULT_TOL).unwrap();
        assert!(b11 < b02, "Neumann d={d}");
    }
}

#[test]
fn table_is_complete_against_direct_zero_requests() {
    for bc in [Dirichlet, Neumann] {
        let t = SpectrumTable::enumerate(4, bc, 400.0).unwrap();
        for l in 0..=25 {
            for m in 1..=8 {
                let z = match bc {
                    Dirichlet => dirichlet_zero(l, 4, m, DEFAULT_TOL),
                    Neumann => neumann_zero(l, 4, m, DEFAULT_TOL),
                };
                let Ok(z) = z else { continue };
                assert_eq!(t.find(l, m).is_some(), z * z <= 400.0, "{bc} l={l} m={m}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generated_tables_tile(d in 2u32..7, neumann in any::<bool>(), lambda in 0.0f64..600.0) {
        let bc = if neumann { Neumann } else { Dirichlet };
        let t = SpectrumTable::enumerate(d, bc, lambda).unwrap();
        assert_tiles(&t);
        if let Some(last) = t.records.last() {
            prop_assert!(last.lambda <= lambda + 1e-9);
        }
        prop_assert_eq!(SpectrumTable::from_json(&t.to_json()).unwrap(), t.clone());
        if !t.records.is_empty() {
            prop_assert_eq!(SpectrumTable::from_csv(&t.to_csv()).unwrap().records, t.records);
        }
    }

    #[test]
    fn multiplicity_is_harmonic_dimension(l in 0u32..40, d in 2u32..12) {
        // dim P_l - dim P_{l-2} on R^d
        let (li, di) = (l as i64, d as i64);
        let direct = binomial(li + di - 1, di - 1).unwrap() - binomial(li + di - 3, di - 1).unwrap();
        prop_assert_eq!(multiplicity(l, d).unwrap() as u128, direct);
        prop_assert!(multiplicity(l, d).unwrap() >= 1);
    }

    #[test]
    fn cutoff_is_monotone(d in 2u32..5, a in 0.0f64..300.0, b in 0.0f64..300.0) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let small = SpectrumTable::enumerate(d, Dirichlet, lo).unwrap();
        let big = SpectrumTable::enumerate(d, Dirichlet, hi).unwrap();
        prop_assert_eq!(&big.records[..small.records.len()], &small.records[..]);
    }
}
