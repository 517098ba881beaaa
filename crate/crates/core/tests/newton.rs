//! Basis changes checked numerically on a concrete rational alphabet.

use std::collections::BTreeMap;

use chernwork::combinatorics::{partitions, IntegerPartition};
use chernwork::rational::{int, ratio, Rational};
use chernwork::symfunc::{doubilet_m_to_p, expand_basis_element, to_basis, BasisTag};
use num_traits::{One, Zero};

fn alphabet() -> Vec<Rational> {
    vec![ratio(1, 2), int(3), int(-2), ratio(5, 7), ratio(-1, 3), int(1), ratio(2, 9), int(4)]
}

fn elementary(x: &[Rational]) -> Vec<Rational> {
    let mut e = vec![Rational::zero(); x.len() + 1];
    e[0] = Rational::one();
    for xi in x {
        for k in (1..=x.len()).rev() {
            let prev = e[k - 1].clone();
            e[k] += prev * xi;
        }
    }
    e
}

fn power_sum(x: &[Rational], k: u32) -> Rational {
    x.iter().map(|xi| num_traits::pow(xi.clone(), k as usize)).sum()
}

fn monomial(x: &[Rational], lambda: &IntegerPartition) -> Rational {
    // sum over distinct placements of the parts onto variables
    fn go(x: &[Rational], parts: &[u32], used: &mut Vec<bool>, acc: Rational, out: &mut Rational) {
        let Some((&first, rest)) = parts.split_first() else {
            *out += acc;
            return;
        };
        for i in 0..x.len() {
            if !used[i] {
                used[i] = true;
                go(x, rest, used, &acc * num_traits::pow(x[i].clone(), first as usize), out);
                used[i] = false;
            }
        }
    }
    let mut out = Rational::zero();
    go(x, lambda.parts(), &mut vec![false; x.len()], Rational::one(), &mut out);
    out / Rational::from_integer(lambda.multiplicity_factorials())
}

fn evaluate(coords: &BTreeMap<IntegerPartition, Rational>, tag: BasisTag, x: &[Rational]) -> Rational {
    let e = elementary(x);
    coords
        .iter()
        .map(|(mu, c)| {
            let value: Rational = mu
                .parts()
                .iter()
                .map(|&k| match tag {
                    BasisTag::E => e[k as usize].clone(),
                    BasisTag::P => power_sum(x, k),
                    BasisTag::M => unreachable!(),
                })
                .product();
            c * value
        })
        .sum()
}

#[test]
fn newton_identities() {
    let x = alphabet();
    let e = elementary(&x);
    for k in 1..=x.len() {
        let mut rhs = Rational::zero();
        for i in 1..=k {
            let s = if (i - 1) % 2 == 0 { Rational::one() } else { -Rational::one() };
            rhs += s * &e[k - i] * power_sum(&x, i as u32);
        }
        assert_eq!(Rational::from_integer((k as i64).into()) * &e[k], rhs, "k={k}");
    }
}

#[test]
fn power_sums_in_e_basis_evaluate_correctly() {
    let x = alphabet();
    for n in 1..=6u32 {
        for lambda in partitions(n) {
            let p = expand_basis_element(BasisTag::P, &lambda, n as usize).unwrap();
            let coords = to_basis(&p, BasisTag::E).unwrap();
            let direct: Rational = lambda.parts().iter().map(|&k| power_sum(&x, k)).product();
            assert_eq!(evaluate(&coords.coords, BasisTag::E, &x), direct, "p_{lambda}");
        }
    }
}

#[test]
fn monomials_in_p_basis_evaluate_correctly() {
    let x = &alphabet()[..6];
    for n in 1..=6u32 {
        for lambda in partitions(n) {
            let coords = doubilet_m_to_p(&lambda).unwrap();
            assert_eq!(evaluate(&coords.coords, BasisTag::P, x), monomial(x, &lambda), "m_{lambda}");
        }
    }
}

#[test]
fn cauchy_dual_identity_numerically() {
    // Π (1 + x_i y_j) = Σ_λ m_λ(y) e_λ(x) summed over all λ with at most |y| parts
    let x = &alphabet()[..3];
    let y = [ratio(1, 3), int(-2)];
    let lhs: Rational = x.iter().flat_map(|xi| y.iter().map(move |yj| Rational::one() + xi * yj)).product();
    let e = elementary(x);
    let mut rhs = Rational::zero();
    for n in 0..=(x.len() * y.len()) as u32 {
        for lambda in partitions(n) {
            if lambda.length() <= y.len() && lambda.parts().iter().all(|&k| k as usize <= x.len()) {
                let e_lambda: Rational = lambda.parts().iter().map(|&k| e[k as usize].clone()).product();
                rhs += monomial(&y, &lambda) * e_lambda;
            }
        }
    }
    assert_eq!(lhs, rhs);
}
