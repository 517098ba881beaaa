//! Truncated power series over the rationals, and the logarithmic-derivative
//! extractions built on them.

mod power_series;
mod tpoly;

pub use power_series::PowerSeries;
pub use tpoly::TPolynomial;

use num_traits::One;

use crate::combinatorics::stirling2;
use crate::error::{Error, Result};
use crate::rational::{binomial, factorial, sign, Rational};

fn require_monic(q: &PowerSeries) -> Result<()> {
    if q.is_monic() {
        Ok(())
    } else {
        Err(Error::NotMonic)
    }
}

/// `h_1..=h_n` defined by `Σ_{i≥1} (-1)^{i-1} h_i x^{i-1} = Q'(x)/Q(x)`.
///
/// When `Q = Π (1 + y_j x)` these are the power sums `p_i(y)`.
pub fn log_derivative_h(q: &PowerSeries, n: usize) -> Result<Vec<Rational>> {
    require_monic(q)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let q = q.truncate(n)?;
    let ratio = &q.derivative()? * &q.inverse()?;
    (1..=n)
        .map(|i| Ok(ratio.coefficient(i - 1)? * sign(i as i64 - 1)))
        .collect()
}

/// Coefficient of `x^{w-1}` in `Q_t'/Q_t`, where `Q_t = 1 + t(Q - 1)`, as a polynomial in `t`.
///
/// Uses `Q_t'/Q_t = tQ' Σ_j (-t)^j (Q-1)^j`, which terminates because `Q - 1` has
/// no constant term.
pub fn log_derivative_t_coeff(q: &PowerSeries, w: u32) -> Result<TPolynomial> {
    require_monic(q)?;
    if w == 0 {
        return Err(Error::InvalidArgument("block weight must be positive".into()));
    }
    let top = w as usize - 1;
    let q = q.truncate(w as usize)?;
    let deriv = q.derivative()?;
    let tail = (&q - &PowerSeries::one(q.order())).truncate(top)?;
    let mut power = PowerSeries::one(top);
    let mut out = TPolynomial::zero();
    for j in 0..=top {
        let c = (&deriv * &power).coefficient(top)?.clone();
        out.add_term(j as u32 + 1, c * sign(j as i64));
        power = &power * &tail;
    }
    Ok(out)
}

/// Same quantity as [`log_derivative_t_coeff`], computed by treating `t` as a second
/// formal variable: the series `Q_t` is built with [`TPolynomial`] coefficients,
/// inverted, multiplied by its derivative, and the coefficient read off.
pub fn log_derivative_t_coeff_bivariate(q: &PowerSeries, w: u32) -> Result<TPolynomial> {
    require_monic(q)?;
    if w == 0 {
        return Err(Error::InvalidArgument("block weight must be positive".into()));
    }
    let order = w as usize;
    let qt: Vec<TPolynomial> = (0..=order)
        .map(|j| {
            let c = q.coefficient(j)?.clone();
            Ok(if j == 0 {
                TPolynomial::constant(c)
            } else {
                TPolynomial::monomial(c, 1)
            })
        })
        .collect::<Result<_>>()?;
    let deriv: Vec<TPolynomial> = (1..=order)
        .map(|j| qt[j].scale(&Rational::from_integer(j.into())))
        .collect();
    // constant term is 1, so inv_n = -Σ_{j=1..n} qt_j inv_{n-j}
    let mut inv = vec![TPolynomial::constant(Rational::one())];
    for n in 1..order {
        let mut acc = TPolynomial::zero();
        for j in 1..=n {
            acc = &acc + &(&qt[j] * &inv[n - j]);
        }
        inv.push(-&acc);
    }
    let top = order - 1;
    let mut out = TPolynomial::zero();
    for j in 0..=top {
        out = &out + &(&deriv[j] * &inv[top - j]);
    }
    Ok(out)
}

/// Closed form of the block kernel for `Q = e^x`:
/// `t Σ_{i=0}^{k-1} S(k, k-i) / (C(k-1, i) i!) (-t)^{k-1-i}`.
pub fn gamma_kernel_coeff(k: u32) -> TPolynomial {
    assert!(k >= 1, "kernel index starts at 1");
    TPolynomial::from_terms((0..k).map(|i| {
        let e = k - 1 - i;
        let c = Rational::new(stirling2(k, k - i), binomial(k - 1, i) * factorial(i)) * sign(e as i64);
        (e + 1, c)
    }))
}

/// [`gamma_kernel_coeff`] recomputed from `Q_t = 1 + t(e^x - 1)` by bivariate extraction.
pub fn gamma_kernel_coeff_by_extraction(k: u32) -> TPolynomial {
    log_derivative_t_coeff_bivariate(&PowerSeries::exp(k as usize), k)
        .expect("exp is monic and built to order k")
}

/// `(e^x - 1)^k / k!`, whose `x^n` coefficient times `n!` is `S(n, k)`.
pub fn stirling_generating_series(k: u32, order: usize) -> PowerSeries {
    let shifted = &PowerSeries::exp(order) - &PowerSeries::one(order);
    shifted
        .pow(k)
        .scale(&Rational::new(One::one(), factorial(k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn h_of_one_plus_x() {
        let q = PowerSeries::polynomial(&[int(1), int(1)], 6);
        assert_eq!(log_derivative_h(&q, 6).unwrap(), vec![int(1); 6]);
    }

    #[test]
    fn h_of_exp() {
        let h = log_derivative_h(&PowerSeries::exp(6), 6).unwrap();
        assert_eq!(h[0], int(1));
        assert!(h[1..].iter().all(num_traits::Zero::is_zero));
    }

    #[test]
    fn h_of_signature_kernel() {
        let h = log_derivative_h(&PowerSeries::x_over_tanh(8), 8).unwrap();
        assert_eq!(h[0], int(0));
        assert_eq!(h[1], ratio(-2, 3));
        assert_eq!(h[2], int(0));
        assert_eq!(h[3], ratio(14, 45));
    }

    #[test]
    fn h_errors() {
        let not_monic = PowerSeries::polynomial(&[int(2), int(1)], 4);
        assert_eq!(log_derivative_h(&not_monic, 3), Err(Error::NotMonic));
        assert!(matches!(
            log_derivative_h(&PowerSeries::exp(3), 5),
            Err(Error::BeyondOrder { .. })
        ));
    }

    #[test]
    fn kernel_small_cases() {
        assert_eq!(gamma_kernel_coeff(1), TPolynomial::t());
        assert_eq!(
            gamma_kernel_coeff(2),
            TPolynomial::from_terms([(1, int(1)), (2, int(-1))])
        );
        // t^3 - 3/2 t^2 + 1/2 t
        assert_eq!(
            gamma_kernel_coeff(3),
            TPolynomial::from_terms([(1, ratio(1, 2)), (2, ratio(-3, 2)), (3, int(1))])
        );
    }

    #[test]
    fn kernel_routes_agree() {
        for k in 1..=10 {
            let closed = gamma_kernel_coeff(k);
            assert_eq!(closed, gamma_kernel_coeff_by_extraction(k), "k = {k}");
            assert_eq!(closed, log_derivative_t_coeff(&PowerSeries::exp(k as usize), k).unwrap());
            assert_eq!(closed.degree(), Some(k));
        }
    }

    #[test]
    fn t_coefficient_routes_agree_for_polynomials() {
        let qs = [
            PowerSeries::polynomial(&[int(1), int(1)], 7),
            PowerSeries::polynomial(&[int(1), int(2), int(1)], 7),
            PowerSeries::polynomial(&[int(1), int(1), int(0), int(1)], 7),
            PowerSeries::x_over_tanh(7),
        ];
        for q in &qs {
            for w in 1..=7 {
                assert_eq!(
                    log_derivative_t_coeff(q, w).unwrap(),
                    log_derivative_t_coeff_bivariate(q, w).unwrap()
                );
            }
        }
    }
}
