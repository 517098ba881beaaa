use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{factorial, Rational};

/// A truncated power series `Σ_{j ≤ order} c_j x^j`.
///
/// Coefficients above `order` are unknown, not zero: reading one is an error, and
/// every binary operation yields the smaller of the two operand orders.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    /// Coefficients `c_0..=c_order`; must be non-empty.
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "a power series needs at least a constant term".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    /// An exact polynomial viewed as a series valid through `x^order`.
    pub fn polynomial(coeffs: &[Rational], order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|j| coeffs.get(j).cloned().unwrap_or_else(Rational::zero))
            .collect();
        Self { coeffs }
    }

    /// `1 + Σ tail[i-1] x^i`, exact through `x^order`.
    pub fn monic(tail: &[Rational], order: usize) -> Self {
        let mut coeffs = vec![Rational::one()];
        coeffs.extend_from_slice(tail);
        Self::polynomial(&coeffs, order)
    }

    pub fn one(order: usize) -> Self {
        Self::monic(&[], order)
    }

    fn from_fn(order: usize, f: impl Fn(u32) -> Rational) -> Self {
        Self {
            coeffs: (0..=order as u32).map(f).collect(),
        }
    }

    pub fn exp(order: usize) -> Self {
        Self::from_fn(order, |j| Rational::new(BigInt::one(), factorial(j)))
    }

    /// `sinh(x)/x = Σ x^{2j}/(2j+1)!`
    pub fn sinh_over_x(order: usize) -> Self {
        Self::from_fn(order, |j| {
            if j % 2 == 0 {
                Rational::new(BigInt::one(), factorial(j + 1))
            } else {
                Rational::zero()
            }
        })
    }

    pub fn cosh(order: usize) -> Self {
        Self::from_fn(order, |j| {
            if j % 2 == 0 {
                Rational::new(BigInt::one(), factorial(j))
            } else {
                Rational::zero()
            }
        })
    }

    pub fn x_over_sinh(order: usize) -> Self {
        Self::sinh_over_x(order).inverse().expect("constant term 1")
    }

    /// `x/tanh(x) = cosh(x) · (sinh(x)/x)^{-1}`, the signature kernel.
    pub fn x_over_tanh(order: usize) -> Self {
        &Self::cosh(order) * &Self::x_over_sinh(order)
    }

    /// `x/(1 - e^{-x})`, the Todd kernel, as the inverse of `(1 - e^{-x})/x`.
    pub fn todd_kernel(order: usize) -> Self {
        Self::from_fn(order, |j| {
            let c = Rational::new(BigInt::one(), factorial(j + 1));
            if j % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .inverse()
        .expect("constant term 1")
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficient(&self, j: usize) -> Result<&Rational> {
        self.coeffs.get(j).ok_or(Error::BeyondOrder {
            index: j,
            order: self.order(),
        })
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs[0].is_one()
    }

    /// Forgets everything above `x^order`.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::BeyondOrder {
                index: order,
                order: self.order(),
            });
        }
        Ok(Self {
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv0 = c0.recip();
        let mut out: Vec<Rational> = vec![inv0.clone()];
        for n in 1..=self.order() {
            let mut acc = Rational::zero();
            for j in 1..=n {
                acc += &self.coeffs[j] * &out[n - j];
            }
            out.push(-acc * &inv0);
        }
        Ok(Self { coeffs: out })
    }

    /// The derivative loses one order of validity.
    pub fn derivative(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(Error::BeyondOrder { index: 1, order: 0 });
        }
        Ok(Self {
            coeffs: (1..=self.order())
                .map(|j| &self.coeffs[j] * Rational::from_integer(j.into()))
                .collect(),
        })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `self(g(x))`; requires `g(0) = 0`.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if !g.coeffs[0].is_zero() {
            return Err(Error::NotNilpotent);
        }
        let order = self.order().min(g.order());
        let g = g.truncate(order)?;
        // Horner: c_0 + g(c_1 + g(c_2 + …))
        let mut acc = Self::polynomial(&[self.coeffs[order].clone()], order);
        for j in (0..order).rev() {
            acc = &acc * &g;
            acc.coeffs[0] += &self.coeffs[j];
        }
        Ok(acc)
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..=order).map(|j| &self.coeffs[j] + &rhs.coeffs[j]).collect(),
        }
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        self + &(-rhs)
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                coeffs[i + j] += a * b;
            }
        }
        PowerSeries { coeffs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    #[test]
    fn geometric_series() {
        let s = PowerSeries::polynomial(&[int(1), int(-1)], 6).inverse().unwrap();
        assert_eq!(s.coefficients(), &vec![int(1); 7][..]);
    }

    #[test]
    fn derivative_of_polynomial() {
        let d = PowerSeries::polynomial(&[int(1), int(0), int(1)], 2).derivative().unwrap();
        assert_eq!(d.coefficients(), &[int(0), int(2)]);
        assert_eq!(d.order(), 1);
        assert!(PowerSeries::one(0).derivative().is_err());
    }

    #[test]
    fn exp_of_x_squared() {
        let x2 = PowerSeries::polynomial(&[int(0), int(0), int(1)], 6);
        let c = PowerSeries::exp(6).compose(&x2).unwrap();
        assert_eq!(c.coefficient(4).unwrap(), &ratio(1, 2));
        assert_eq!(c.coefficient(2).unwrap(), &int(1));
        assert_eq!(c.coefficient(3).unwrap(), &int(0));
    }

    #[test]
    fn error_paths() {
        assert_eq!(PowerSeries::polynomial(&[int(0), int(1)], 3).inverse(), Err(Error::NotInvertible));
        let one = PowerSeries::one(3);
        assert_eq!(PowerSeries::exp(3).compose(&one), Err(Error::NotNilpotent));
        assert_eq!(one.coefficient(4), Err(Error::BeyondOrder { index: 4, order: 3 }));
        assert!(PowerSeries::new(vec![]).is_err());
    }

    #[test]
    fn known_kernels() {
        let t = PowerSeries::x_over_tanh(6);
        assert_eq!(t.coefficients(), &[int(1), int(0), ratio(1, 3), int(0), ratio(-1, 45), int(0), ratio(2, 945)]);
        let td = PowerSeries::todd_kernel(4);
        assert_eq!(td.coefficients(), &[int(1), ratio(1, 2), ratio(1, 12), int(0), ratio(-1, 720)]);
    }

    #[test]
    fn truncation_discipline() {
        let a = PowerSeries::exp(5);
        let b = PowerSeries::exp(3);
        assert_eq!((&a * &b).order(), 3);
        assert_eq!((&a + &b).order(), 3);
        assert_eq!(a.compose(&PowerSeries::polynomial(&[int(0), int(2)], 2)).unwrap().order(), 2);
    }

    proptest! {
        #[test]
        fn times_inverse_is_one(tail in proptest::collection::vec((-9i64..9, 1i64..6), 8..12)) {
            let tail: Vec<Rational> = tail.into_iter().map(|(n, d)| ratio(n, d)).collect();
            let q = PowerSeries::monic(&tail, tail.len());
            let prod = &q * &q.inverse().unwrap();
            prop_assert_eq!(prod, PowerSeries::one(tail.len()));
        }
    }
}
