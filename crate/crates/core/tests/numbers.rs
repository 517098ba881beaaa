use chernwork::combinatorics::{
    bernoulli_unsigned, binary_weight, nu2, nu2_factorial, partitions, set_partitions, stirling2, Valuation,
};
use chernwork::rational::{factorial, ratio, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;

#[test]
fn stirling_row_sums_are_bell_numbers() {
    let bell = [1u64, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975, 678570, 4213597];
    for (n, &b) in bell.iter().enumerate() {
        let row: BigInt = (0..=n as u32).map(|k| stirling2(n as u32, k)).sum();
        assert_eq!(row, BigInt::from(b), "n={n}");
    }
    for (n, &b) in bell.iter().enumerate().take(10) {
        assert_eq!(set_partitions(n).unwrap().count() as u64, b);
    }
}

#[test]
fn stirling_edges() {
    assert_eq!(stirling2(0, 0), BigInt::from(1));
    assert_eq!(stirling2(5, 0), BigInt::from(0));
    assert_eq!(stirling2(3, 5), BigInt::from(0));
    assert_eq!(stirling2(10, 3), BigInt::from(9330));
    for n in 1..=15 {
        assert_eq!(stirling2(n, 1), BigInt::from(1));
        assert_eq!(stirling2(n, n), BigInt::from(1));
        assert_eq!(stirling2(n, n - 1), BigInt::from(n * (n - 1) / 2));
    }
}

#[test]
fn partition_counts() {
    let counts: Vec<usize> = (0..=15).map(|n| partitions(n).len()).collect();
    assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176]);
}

#[test]
fn bernoulli_values_and_denominators() {
    let known = [ratio(1, 6), ratio(1, 30), ratio(1, 42), ratio(1, 30), ratio(5, 66), ratio(691, 2730), ratio(7, 6)];
    for (i, b) in known.iter().enumerate() {
        assert_eq!(&bernoulli_unsigned(i as u32 + 1), b);
    }
    // von Staudt–Clausen: the denominator is the product of primes p with (p-1) | 2i
    for i in 1..=20u32 {
        let den: BigInt = (2..=2 * i + 1)
            .filter(|&q| (2..q).all(|d| q % d != 0) && (2 * i) % (q - 1) == 0)
            .map(BigInt::from)
            .product();
        assert_eq!(bernoulli_unsigned(i).denom(), &den, "i={i}");
    }
}

#[test]
fn valuations() {
    assert_eq!(nu2(&ratio(12, 5)), Valuation::Finite(2));
    assert_eq!(nu2(&ratio(3, 8)), Valuation::Finite(-3));
    assert_eq!(nu2(&Rational::from_integer(0.into())), Valuation::Infinite);
    assert_eq!(binary_weight(0b1011_0110), 5);
}

proptest! {
    #[test]
    fn legendre(n in 0u64..200) {
        let direct = nu2(&Rational::from_integer(factorial(n as u32))).finite().unwrap();
        prop_assert_eq!(direct as u64, nu2_factorial(n));
        prop_assert_eq!(nu2_factorial(n), n - binary_weight(n) as u64);
    }

    #[test]
    fn nu2_is_additive(a in 1i64..10_000, b in 1i64..10_000, c in 1i64..10_000, d in 1i64..10_000) {
        let x = ratio(a, b);
        let y = ratio(c, d);
        let sum = nu2(&x).finite().unwrap() + nu2(&y).finite().unwrap();
        prop_assert_eq!(nu2(&(x * y)), Valuation::Finite(sum));
    }
}
