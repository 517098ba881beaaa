//! Complex genera: from a monic kernel `Q(x)` to the coefficients `h_λ` of the genus
//! in Chern numbers.

use std::sync::OnceLock;

use num_traits::One;

use crate::chern::{ChernVector, LinearFunctional};
use crate::combinatorics::{partitions, set_partition_sum, IntegerPartition};
use crate::error::{Error, Result};
use crate::rational::{factorial, sign, Rational};
use crate::series::{log_derivative_h, PowerSeries};
use crate::DEFAULT_SET_PARTITION_LIMIT;

/// Kernel order used by the built-in genera; supports weights up to this value.
pub const DEFAULT_KERNEL_ORDER: usize = 32;

#[derive(Debug, Clone)]
pub struct GenusSpec {
    name: String,
    kernel: PowerSeries,
    h: OnceLock<Vec<Rational>>,
}

impl GenusSpec {
    pub fn custom(name: impl Into<String>, kernel: PowerSeries) -> Result<Self> {
        if !kernel.is_monic() {
            return Err(Error::NotMonic);
        }
        Ok(Self {
            name: name.into(),
            kernel,
            h: OnceLock::new(),
        })
    }

    /// `Q(x) = x / tanh(x)`
    pub fn signature() -> Self {
        Self::custom("signature", PowerSeries::x_over_tanh(DEFAULT_KERNEL_ORDER)).expect("monic")
    }

    /// `Q(x) = x / (1 - e^{-x})`
    pub fn todd() -> Self {
        Self::custom("todd", PowerSeries::todd_kernel(DEFAULT_KERNEL_ORDER)).expect("monic")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kernel(&self) -> &PowerSeries {
        &self.kernel
    }

    /// `h_1, h_2, …` up to the kernel order.
    pub fn h_scalars(&self) -> &[Rational] {
        self.h.get_or_init(|| {
            log_derivative_h(&self.kernel, self.kernel.order()).expect("monic kernel")
        })
    }

    pub fn h_scalar(&self, i: u32) -> Result<Rational> {
        if i == 0 {
            return Err(Error::InvalidArgument("h scalars start at index 1".into()));
        }
        self.h_scalars()
            .get(i as usize - 1)
            .cloned()
            .ok_or(Error::BeyondOrder {
                index: i as usize,
                order: self.kernel.order(),
            })
    }
}

pub fn signature_spec() -> GenusSpec {
    GenusSpec::signature()
}

pub fn todd_spec() -> GenusSpec {
    GenusSpec::todd()
}

/// Coefficient of `c_λ` in the genus:
/// `(-1)^{l(λ)} / Π m_i(λ)! · Σ_{π ∈ Π_{l(λ)}} (-1)^{l(π)} Π_i (|π_i| - 1)! h_{λ_{π_i}}`.
pub fn genus_h_lambda(g: &GenusSpec, lambda: &IntegerPartition) -> Result<Rational> {
    genus_h_lambda_with_limit(g, lambda, DEFAULT_SET_PARTITION_LIMIT)
}

pub fn genus_h_lambda_with_limit(
    g: &GenusSpec,
    lambda: &IntegerPartition,
    limit: usize,
) -> Result<Rational> {
    let sum: Rational = set_partition_sum(lambda.parts(), limit, |size, w| {
        Ok(-Rational::from_integer(factorial(size as u32 - 1)) * g.h_scalar(w)?)
    })?;
    Ok(sum * sign(lambda.length() as i64)
        / Rational::from_integer(lambda.multiplicity_factorials()))
}

/// The genus in complex dimension `n` as a functional on Chern numbers.
pub fn genus_functional(g: &GenusSpec, n: u32) -> Result<LinearFunctional> {
    genus_functional_with_limit(g, n, DEFAULT_SET_PARTITION_LIMIT)
}

pub fn genus_functional_with_limit(g: &GenusSpec, n: u32, limit: usize) -> Result<LinearFunctional> {
    let mut f = LinearFunctional::zero(n);
    for lambda in partitions(n) {
        let c = genus_h_lambda_with_limit(g, &lambda, limit)?;
        f.add(lambda, c)?;
    }
    Ok(f)
}

/// `Σ_λ h_λ c_λ[M]` over the support of `v`.
pub fn evaluate_genus(g: &GenusSpec, v: &ChernVector) -> Result<Rational> {
    let mut total = Rational::from_integer(0.into());
    for (lambda, c) in v.support() {
        total += genus_h_lambda(g, lambda)? * Rational::from_integer(c.clone());
    }
    Ok(total)
}

/// `h_∅ = 1` by convention: the degree-zero part of `Π Q(x_i)`.
pub fn is_unit_coefficient(g: &GenusSpec) -> bool {
    genus_h_lambda(g, &IntegerPartition::empty()).is_ok_and(|c| c.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn p(s: &str) -> IntegerPartition {
        s.parse().unwrap()
    }

    #[test]
    fn signature_coefficients() {
        let s = signature_spec();
        assert_eq!(genus_h_lambda(&s, &p("4")).unwrap(), ratio(14, 45));
        assert_eq!(genus_h_lambda(&s, &p("2,2")).unwrap(), ratio(1, 15));
        assert_eq!(genus_h_lambda(&s, &p("3")).unwrap(), int(0));
        assert_eq!(genus_h_lambda(&s, &p("1,1")).unwrap(), ratio(1, 3));
        assert_eq!(genus_h_lambda(&s, &p("2")).unwrap(), ratio(-2, 3));
        assert_eq!(s.h_scalar(2).unwrap(), ratio(-2, 3));
        assert!(is_unit_coefficient(&s));
    }

    #[test]
    fn todd_coefficients() {
        let t = todd_spec();
        assert_eq!(&t.h_scalars()[..4], &[ratio(1, 2), ratio(1, 12), int(0), ratio(-1, 720)]);
        // scaled by i!, these are the familiar 1/2, 1/6, 0, -1/30
        let scaled: Vec<Rational> = t.h_scalars()[..4]
            .iter()
            .enumerate()
            .map(|(i, h)| h * Rational::from_integer(factorial(i as u32 + 1)))
            .collect();
        assert_eq!(scaled, [ratio(1, 2), ratio(1, 6), int(0), ratio(-1, 30)]);
        assert_eq!(genus_h_lambda(&t, &p("1")).unwrap(), ratio(1, 2));
        assert_eq!(genus_h_lambda(&t, &p("2")).unwrap(), ratio(1, 12));
        assert_eq!(genus_h_lambda(&t, &p("1,1")).unwrap(), ratio(1, 12));
        assert_eq!(genus_h_lambda(&t, &p("4")).unwrap(), ratio(-1, 720));
        assert_eq!(genus_h_lambda(&t, &p("2,2")).unwrap(), ratio(3, 720));
    }

    #[test]
    fn evaluations() {
        let cp2 = ChernVector::parse(2, "(2)=3,(1,1)=9").unwrap();
        assert_eq!(evaluate_genus(&signature_spec(), &cp2).unwrap(), int(1));
        let cp1 = ChernVector::parse(1, "(1)=2").unwrap();
        assert_eq!(evaluate_genus(&todd_spec(), &cp1).unwrap(), int(1));
        assert_eq!(evaluate_genus(&signature_spec(), &ChernVector::zero(4)).unwrap(), int(0));
    }

    #[test]
    fn custom_kernel_must_be_monic() {
        let q = PowerSeries::polynomial(&[int(2), int(1)], 4);
        assert!(matches!(GenusSpec::custom("bad", q), Err(Error::NotMonic)));
    }

    #[test]
    fn weight_beyond_kernel_order() {
        let g = GenusSpec::custom("short", PowerSeries::exp(3)).unwrap();
        assert!(matches!(genus_h_lambda(&g, &p("4")), Err(Error::BeyondOrder { .. })));
    }
}
