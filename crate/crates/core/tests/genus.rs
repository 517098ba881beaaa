use chernwork::combinatorics::{binary_weight, nu2, partitions, Valuation};
use chernwork::genus::{genus_functional, genus_h_lambda, GenusSpec};
use chernwork::rational::{int, ratio};
use chernwork::symfunc::oracle_genus_coeffs;
use chernwork::PowerSeries;

fn against_oracle(g: &GenusSpec) {
    for n in 1..=6u32 {
        let oracle = oracle_genus_coeffs(&g.kernel().truncate(n as usize).unwrap(), n).unwrap();
        for lambda in partitions(n) {
            assert_eq!(genus_h_lambda(g, &lambda).unwrap(), oracle.get(&lambda), "{} {lambda}", g.name());
        }
    }
}

#[test]
fn signature_matches_oracle() {
    against_oracle(&GenusSpec::signature());
}

#[test]
fn todd_matches_oracle() {
    against_oracle(&GenusSpec::todd());
}

#[test]
fn custom_matches_oracle() {
    let q = PowerSeries::polynomial(&[int(1), ratio(2, 3), int(-1), int(0), ratio(1, 5), int(0), int(4)], 8);
    against_oracle(&GenusSpec::custom("custom", q).unwrap());
    // the Â-genus kernel (x/2)/sinh(x/2)
    let half = PowerSeries::polynomial(&[int(0), ratio(1, 2)], 12);
    let a_hat = PowerSeries::x_over_sinh(12).compose(&half).unwrap();
    against_oracle(&GenusSpec::custom("a-hat", a_hat).unwrap());
}

#[test]
fn signature_two_adic() {
    let g = GenusSpec::signature();
    for i in 1..=12u32 {
        let h = g.h_scalar(2 * i).unwrap();
        assert_eq!(nu2(&h), Valuation::Finite(binary_weight(i as u64) as i64), "i={i}");
    }
    for n in [2u32, 4, 6, 8] {
        for lambda in partitions(n) {
            if lambda.has_distinct_parts() {
                assert!(nu2(&genus_h_lambda(&g, &lambda).unwrap()) >= Valuation::Finite(1), "{lambda}");
            }
        }
    }
}

#[test]
fn signature_vanishes_in_odd_dimension() {
    let g = GenusSpec::signature();
    for n in [1u32, 3, 5, 7] {
        assert_eq!(genus_functional(&g, n).unwrap().coefficients().count(), 0, "n={n}");
    }
}

#[test]
fn non_monic_kernel_rejected() {
    let q = PowerSeries::polynomial(&[int(2), int(1)], 4);
    assert!(GenusSpec::custom("bad", q).is_err());
}
