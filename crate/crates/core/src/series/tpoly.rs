use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// A polynomial in the bookkeeping variable `t`; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TPolynomial {
    coeffs: BTreeMap<u32, Rational>,
}

impl TPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn t() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, exp: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, Rational)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn coefficient(&self, exp: u32) -> Rational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms().map(|(e, v)| (e, v * c)))
    }
}

impl Add for &TPolynomial {
    type Output = TPolynomial;
    fn add(self, rhs: &TPolynomial) -> TPolynomial {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Mul for &TPolynomial {
    type Output = TPolynomial;
    fn mul(self, rhs: &TPolynomial) -> TPolynomial {
        let mut out = TPolynomial::zero();
        for (a, x) in self.terms() {
            for (b, y) in rhs.terms() {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl Neg for &TPolynomial {
    type Output = TPolynomial;
    fn neg(self) -> TPolynomial {
        TPolynomial::from_terms(self.terms().map(|(e, c)| (e, -c)))
    }
}

impl crate::combinatorics::BlockValue for TPolynomial {
    fn zero_value() -> Self {
        TPolynomial::zero()
    }
    fn one_value() -> Self {
        TPolynomial::constant(Rational::one())
    }
    fn add_assign(&mut self, other: &Self) {
        for (e, c) in other.terms() {
            self.add_term(e, c.clone());
        }
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

impl fmt::Display for TPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let unit = mag.is_one();
            if !unit || e == 0 {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 if unit => f.write_str("t")?,
                1 => f.write_str("*t")?,
                _ if unit => write!(f, "t^{e}")?,
                _ => write!(f, "*t^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn arithmetic_and_degree() {
        let t = TPolynomial::t();
        let p = &(&t * &t).scale(&int(-1)) + &t;
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.coefficient(1), int(1));
        assert_eq!(p.coefficient(2), int(-1));
        assert_eq!(p.to_string(), "t - t^2");
        assert_eq!(TPolynomial::zero().degree(), None);
        let cancel = &p + &(-&p);
        assert!(cancel.is_zero());
        let q = TPolynomial::from_terms([(0, ratio(1, 2)), (3, ratio(-3, 2))]);
        assert_eq!(q.to_string(), "1/2 - 3/2*t^3");
    }
}
