//! Coefficients of `ch(γ^k)` in Chern classes and the Hattori–Stong integrality
//! conditions built from them.
//!
//! For a partition `λ`,
//!
//! ```text
//! Σ_k b^(k)_λ t^k = (-1)^{|λ|-l(λ)} / Π m_i(λ)!
//!                   · Σ_{π ∈ Π_{l(λ)}} Π_i (|π_i| - 1)! · K(λ_{π_i})
//! ```
//!
//! where the block kernel `K(w)` is the coefficient of `x^{w-1}` in `Q_t'/Q_t`,
//! `Q_t = 1 + t(Q - 1)`. For `Q = e^x` the kernel has the Stirling-number closed form
//! of [`gamma_kernel_coeff`].
//!
//! The integrality conditions in complex dimension `n` are the degree-`n` parts of
//! `ch(γ^{k_1}) ⋯ ch(γ^{k_i}) · td` for every multiset `{k_1, …, k_i}`. Since
//! `ch(γ^k)` starts in degree `k`, multisets with `Σ k_j > n` give the zero
//! functional, so only multisets with sum at most `n` are generated.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::chern::{ChernVector, LinearFunctional};
use crate::combinatorics::{partitions_in_range, set_partition_sum, IntegerPartition};
use crate::error::{Error, Result};
use crate::genus::{genus_h_lambda_with_limit, GenusSpec};
use crate::rational::{factorial, sign, Rational};
use crate::series::{gamma_kernel_coeff, log_derivative_t_coeff, PowerSeries, TPolynomial};
use crate::{Limits, DEFAULT_SET_PARTITION_LIMIT};

/// A multiset `{k_1, …, k_i}` of positive integers indexing `ch(γ^{k_1}) ⋯ ch(γ^{k_i})`.
/// The empty multiset is the bare Todd condition.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GammaMonomial(Vec<u32>);

impl GammaMonomial {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(mut indices: Vec<u32>) -> Result<Self> {
        if indices.contains(&0) {
            return Err(Error::InvalidArgument("γ indices must be positive".into()));
        }
        indices.sort_unstable();
        Ok(Self(indices))
    }

    /// Ascending.
    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl fmt::Display for GammaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for GammaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GammaMonomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix('{').and_then(|r| r.strip_suffix('}')).unwrap_or(t).trim();
        if t.is_empty() {
            return Ok(Self::empty());
        }
        let v = t
            .split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|_| Error::Parse(format!("malformed γ multiset {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(v)
    }
}

impl Serialize for GammaMonomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GammaMonomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

fn prefactor(lambda: &IntegerPartition) -> Rational {
    sign(lambda.weight() as i64 - lambda.length() as i64)
        / Rational::from_integer(lambda.multiplicity_factorials())
}

fn require_positive(k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    Ok(())
}

/// `Σ_k b^(k)_λ t^k` from the closed Stirling-number formula.
pub fn b_polynomial(lambda: &IntegerPartition) -> Result<TPolynomial> {
    b_polynomial_with_limit(lambda, DEFAULT_SET_PARTITION_LIMIT)
}

pub fn b_polynomial_with_limit(lambda: &IntegerPartition, limit: usize) -> Result<TPolynomial> {
    let sum: TPolynomial = set_partition_sum(lambda.parts(), limit, |size, w| {
        let c = Rational::from_integer(factorial(size as u32 - 1));
        Ok(gamma_kernel_coeff(w).scale(&c))
    })?;
    Ok(sum.scale(&prefactor(lambda)))
}

/// `b^(k)_λ`, the coefficient of `c_λ` in `ch(γ^k)`. Zero whenever `k > |λ|`.
pub fn b_coeff(lambda: &IntegerPartition, k: u32) -> Result<Rational> {
    require_positive(k)?;
    Ok(b_polynomial(lambda)?.coefficient(k))
}

/// `Σ_k b^(k)_λ(Q) t^k` for an arbitrary monic `Q`, defined by
/// `e_k(Q(x) - 1) = Σ_λ b^(k)_λ(Q) e_λ(x)`.
pub fn b_polynomial_general(q: &PowerSeries, lambda: &IntegerPartition) -> Result<TPolynomial> {
    if !q.is_monic() {
        return Err(Error::NotMonic);
    }
    if q.order() < lambda.weight() as usize {
        return Err(Error::BeyondOrder {
            index: lambda.weight() as usize,
            order: q.order(),
        });
    }
    let sum: TPolynomial = set_partition_sum(lambda.parts(), DEFAULT_SET_PARTITION_LIMIT, |size, w| {
        let c = Rational::from_integer(factorial(size as u32 - 1));
        Ok(log_derivative_t_coeff(q, w)?.scale(&c))
    })?;
    Ok(sum.scale(&prefactor(lambda)))
}

pub fn b_coeff_general(q: &PowerSeries, lambda: &IntegerPartition, k: u32) -> Result<Rational> {
    require_positive(k)?;
    Ok(b_polynomial_general(q, lambda)?.coefficient(k))
}

/// A polynomial in the Chern classes: `c_λ ↦ coefficient`.
type ChernPoly = BTreeMap<IntegerPartition, Rational>;

fn mul_truncated(a: &ChernPoly, b: &ChernPoly, n: u32) -> ChernPoly {
    let mut out = ChernPoly::new();
    for (la, ca) in a {
        for (lb, cb) in b {
            if la.weight() + lb.weight() <= n {
                let slot = out.entry(la.union(lb)).or_insert_with(Rational::zero);
                *slot += ca * cb;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Every `ch(γ^k)` and `td` needed in complex dimension `n`, computed once.
struct Expansions {
    n: u32,
    ch: Vec<ChernPoly>,
    todd: ChernPoly,
}

impl Expansions {
    fn new(n: u32, limit: usize) -> Result<Self> {
        let lambdas = partitions_in_range(1, n);
        let polys = lambdas
            .par_iter()
            .map(|l| b_polynomial_with_limit(l, limit))
            .collect::<Result<Vec<_>>>()?;
        let mut ch = vec![ChernPoly::new(); n as usize + 1];
        for (lambda, poly) in lambdas.iter().zip(&polys) {
            for (k, c) in poly.terms() {
                if k >= 1 && k <= n {
                    ch[k as usize].insert(lambda.clone(), c.clone());
                }
            }
        }
        let todd_spec = GenusSpec::todd();
        let mut todd = ChernPoly::new();
        for lambda in partitions_in_range(0, n) {
            let c = genus_h_lambda_with_limit(&todd_spec, &lambda, limit)?;
            if !c.is_zero() {
                todd.insert(lambda, c);
            }
        }
        Ok(Self { n, ch, todd })
    }

    fn functional(&self, monomial: &GammaMonomial) -> Result<LinearFunctional> {
        let mut out = LinearFunctional::zero(self.n);
        if monomial.total() > self.n {
            return Ok(out);
        }
        let mut acc = self.todd.clone();
        for &k in monomial.indices() {
            acc = mul_truncated(&acc, &self.ch[k as usize], self.n);
        }
        for (lambda, c) in acc {
            if lambda.weight() == self.n {
                out.add(lambda, c)?;
            }
        }
        Ok(out)
    }
}

/// All `b^(k)_λ` with `k ≤ |λ| ≤ n`, zeros omitted.
pub fn gamma_ch_expansion(k: u32, n: u32) -> Result<BTreeMap<IntegerPartition, Rational>> {
    require_positive(k)?;
    let mut out = BTreeMap::new();
    for lambda in partitions_in_range(k, n) {
        let c = b_coeff(&lambda, k)?;
        if !c.is_zero() {
            out.insert(lambda, c);
        }
    }
    Ok(out)
}

/// The degree-`n` part of `ch(γ^{k_1}) ⋯ ch(γ^{k_i}) · td` as a functional on Chern numbers.
pub fn integrality_functional(monomial: &GammaMonomial, n: u32) -> Result<LinearFunctional> {
    Expansions::new(n, DEFAULT_SET_PARTITION_LIMIT)?.functional(monomial)
}

/// Multisets of positive integers with sum at most `n`: by size, then lexicographically.
pub fn gamma_monomials(n: u32) -> Vec<GammaMonomial> {
    fn go(size: usize, min: u32, budget: u32, prefix: &mut Vec<u32>, out: &mut Vec<GammaMonomial>) {
        if prefix.len() == size {
            out.push(GammaMonomial(prefix.clone()));
            return;
        }
        let remaining = (size - prefix.len()) as u32;
        for k in min..=budget {
            // the remaining slots need at least k each
            if k * remaining > budget {
                break;
            }
            prefix.push(k);
            go(size, k, budget - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for size in 0..=n as usize {
        go(size, 1, n, &mut Vec::new(), &mut out);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntegralityCondition {
    pub monomial: GammaMonomial,
    pub functional: LinearFunctional,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub monomial: GammaMonomial,
    #[serde(with = "crate::rational::serde_text")]
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizabilityReport {
    pub dim: u32,
    pub realizable: bool,
    pub conditions_checked: usize,
    pub violations: Vec<Violation>,
}

/// Owns the size limits and caches one integrality basis per dimension.
#[derive(Debug, Default)]
pub struct IntegralityChecker {
    limits: Limits,
    cache: Mutex<HashMap<u32, Arc<Vec<IntegralityCondition>>>>,
}

impl IntegralityChecker {
    pub fn new(limits: Limits) -> Self {
        Self {
            limits,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    /// One condition per multiset with sum `≤ n`, the empty multiset first.
    pub fn integrality_basis(&self, n: u32) -> Result<Arc<Vec<IntegralityCondition>>> {
        self.limits.check_dimension(n)?;
        if let Some(b) = self.cache.lock().unwrap().get(&n) {
            return Ok(b.clone());
        }
        let expansions = Expansions::new(n, self.limits.set_partition)?;
        let basis = gamma_monomials(n)
            .into_iter()
            .map(|monomial| {
                let functional = expansions.functional(&monomial)?;
                Ok(IntegralityCondition { monomial, functional })
            })
            .collect::<Result<Vec<_>>>()?;
        let basis = Arc::new(basis);
        // a concurrent builder may have won; both results are identical
        let mut cache = self.cache.lock().unwrap();
        Ok(cache.entry(n).or_insert(basis).clone())
    }

    pub fn check_realizable(&self, v: &ChernVector) -> Result<RealizabilityReport> {
        let basis = self.integrality_basis(v.dim())?;
        let mut violations = Vec::new();
        for cond in basis.iter() {
            let value = cond.functional.apply(v)?;
            if !value.is_integer() {
                violations.push(Violation {
                    monomial: cond.monomial.clone(),
                    value,
                });
            }
        }
        Ok(RealizabilityReport {
            dim: v.dim(),
            realizable: violations.is_empty(),
            conditions_checked: basis.len(),
            violations,
        })
    }

    /// Checks many vectors in parallel; output order matches input order.
    pub fn check_many(&self, vs: &[ChernVector]) -> Result<Vec<RealizabilityReport>> {
        vs.par_iter().map(|v| self.check_realizable(v)).collect()
    }
}

pub fn integrality_basis(n: u32) -> Result<Arc<Vec<IntegralityCondition>>> {
    IntegralityChecker::default().integrality_basis(n)
}

pub fn check_realizable(v: &ChernVector) -> Result<RealizabilityReport> {
    IntegralityChecker::default().check_realizable(v)
}
