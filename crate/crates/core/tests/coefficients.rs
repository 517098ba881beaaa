use chernwork::combinatorics::{partitions, partitions_in_range, stirling2, IntegerPartition};
use chernwork::hattori_stong::{b_coeff, b_coeff_general, b_polynomial};
use chernwork::rational::{factorial, int, ratio, Rational};
use chernwork::series::{gamma_kernel_coeff, gamma_kernel_coeff_by_extraction, PowerSeries};
use chernwork::symfunc::{oracle_b_coeff, oracle_e_k_expansions};
use num_bigint::BigInt;
use proptest::prelude::*;

fn p(s: &str) -> IntegerPartition {
    s.parse().unwrap()
}

#[test]
fn documented_values() {
    assert_eq!(b_coeff(&p("3"), 2).unwrap(), ratio(-3, 2));
    assert_eq!(b_coeff(&p("2,1"), 1).unwrap(), ratio(-1, 2));
    assert_eq!(b_coeff(&p("1,1"), 1).unwrap(), ratio(1, 2));
    assert_eq!(b_coeff(&p("1,1"), 2).unwrap(), int(0));
    let e = PowerSeries::exp(4);
    assert_eq!(oracle_b_coeff(&e, &p("3"), 2).unwrap(), ratio(-3, 2));
    assert_eq!(oracle_b_coeff(&e, &p("2,1"), 1).unwrap(), ratio(-1, 2));
}

#[test]
fn two_part_law_at_k1() {
    let e = PowerSeries::exp(10);
    for n in 2..=8u32 {
        let oracle = oracle_e_k_expansions(&e, n, 1).unwrap();
        for j in 1..=n / 2 {
            let i = n - j;
            let lambda = IntegerPartition::new(vec![i, j]).unwrap();
            let want = if i == j {
                Rational::new(BigInt::from(1), BigInt::from(2) * factorial(2 * i - 1))
            } else {
                let s = if (i + j) % 2 == 0 { 1 } else { -1 };
                Rational::new(BigInt::from(s), factorial(i + j - 1))
            };
            assert_eq!(oracle[0].get(&lambda), want, "oracle {lambda}");
            assert_eq!(b_coeff(&lambda, 1).unwrap(), want, "formula {lambda}");
        }
    }
}

#[test]
fn two_part_law_is_not_uniform_in_k() {
    // the same right-hand side at k = |λ| would contradict the vanishing law
    assert_eq!(b_coeff(&p("1,1"), 2).unwrap(), int(0));
    assert_eq!(b_coeff(&p("2,2"), 4).unwrap(), int(0));
}

#[test]
fn kernel_routes_agree() {
    for k in 1..=12 {
        assert_eq!(gamma_kernel_coeff(k), gamma_kernel_coeff_by_extraction(k), "k={k}");
    }
}

#[test]
fn single_part_law_at_larger_i() {
    for i in 11..=14u32 {
        for k in 1..=i {
            let s = if (i - k) % 2 == 0 { 1 } else { -1 };
            let want = Rational::new(BigInt::from(s) * stirling2(i, k) * factorial(k - 1), factorial(i - 1));
            assert_eq!(b_coeff(&IntegerPartition::single(i), k).unwrap(), want);
        }
    }
}

#[test]
fn general_q_against_oracle_for_custom_series() {
    // 1 + x/2 - x^2/3 + 2x^4
    let q = PowerSeries::polynomial(&[int(1), ratio(1, 2), ratio(-1, 3), int(0), int(2)], 6);
    for n in 1..=6u32 {
        let oracle = oracle_e_k_expansions(&q, n, n).unwrap();
        for lambda in partitions(n) {
            for k in 1..=n {
                assert_eq!(b_coeff_general(&q, &lambda, k).unwrap(), oracle[k as usize - 1].get(&lambda));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn general_route_reduces_to_closed_form(idx in 0usize..100) {
        let all = partitions_in_range(1, 9);
        let lambda = &all[idx % all.len()];
        let e = PowerSeries::exp(lambda.weight() as usize);
        for k in 1..=lambda.weight() {
            prop_assert_eq!(b_coeff_general(&e, lambda, k).unwrap(), b_coeff(lambda, k).unwrap());
        }
    }

    #[test]
    fn b_polynomial_has_degree_at_most_weight(idx in 0usize..200) {
        let all = partitions_in_range(1, 11);
        let lambda = &all[idx % all.len()];
        let poly = b_polynomial(lambda).unwrap();
        prop_assert!(poly.degree().unwrap_or(0) <= lambda.weight());
        prop_assert_eq!(poly.coefficient(0), int(0));
    }
}
