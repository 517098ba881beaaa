//! Brute-force symmetric functions in finitely many variables.
//!
//! This module is the independent check on the closed formulas elsewhere in the
//! crate: it expands polynomials monomial by monomial, reads monomial-basis
//! coordinates off the sorted exponent vectors, and converts between the `e`, `p`
//! and `m` bases by solving the (triangular) transition systems exactly.
//!
//! Monomials are packed four bits per variable, so at most 16 variables and total
//! degree at most 15 are supported.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinatorics::{partitions, partitions_in_range, set_partitions, IntegerPartition};
use crate::error::{Error, Result};
use crate::rational::{factorial, sign, Rational};
use crate::series::PowerSeries;

const MAX_VARS: usize = 16;
const MAX_DEGREE: u32 = 15;

/// Largest `N·d` accepted by [`product_identity_check`].
pub const PRODUCT_IDENTITY_BUDGET: usize = 16;

type Mono = u64;

fn exponent(m: Mono, var: usize) -> u32 {
    ((m >> (4 * var)) & 0xf) as u32
}

fn degree(m: Mono, num_vars: usize) -> u32 {
    (0..num_vars).map(|v| exponent(m, v)).sum()
}

fn pack(exps: &[u32]) -> Mono {
    exps.iter()
        .enumerate()
        .fold(0, |acc, (v, &e)| acc | (e as u64) << (4 * v))
}

fn unpack(m: Mono, num_vars: usize) -> Vec<u32> {
    (0..num_vars).map(|v| exponent(m, v)).collect()
}

/// A polynomial in `num_vars` variables with all terms of total degree `≤ max_degree`.
/// Products are truncated at `max_degree`; no zero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPoly {
    num_vars: usize,
    max_degree: u32,
    terms: HashMap<Mono, Rational>,
}

impl SymPoly {
    pub fn zero(num_vars: usize, max_degree: u32) -> Result<Self> {
        if num_vars > MAX_VARS || max_degree > MAX_DEGREE {
            return Err(Error::LimitExceeded {
                what: "symmetric polynomial size (variables, degree)",
                requested: num_vars.max(max_degree as usize),
                limit: MAX_VARS.min(MAX_DEGREE as usize),
            });
        }
        Ok(Self {
            num_vars,
            max_degree,
            terms: HashMap::new(),
        })
    }

    pub fn one(num_vars: usize, max_degree: u32) -> Result<Self> {
        let mut p = Self::zero(num_vars, max_degree)?;
        p.terms.insert(0, Rational::one());
        Ok(p)
    }

    pub fn from_terms(
        num_vars: usize,
        max_degree: u32,
        terms: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(num_vars, max_degree)?;
        for (exps, c) in terms {
            if exps.len() != num_vars || exps.iter().sum::<u32>() > max_degree {
                return Err(Error::InvalidArgument(format!(
                    "exponent vector {exps:?} does not fit {num_vars} variables of degree ≤ {max_degree}"
                )));
            }
            p.add_term(pack(&exps), c);
        }
        Ok(p)
    }

    /// `Σ_{1 ≤ j ≤ max_degree} c_j x_var^j` plus the constant term unless `drop_constant`.
    pub fn univariate(
        num_vars: usize,
        max_degree: u32,
        var: usize,
        series: &PowerSeries,
        drop_constant: bool,
    ) -> Result<Self> {
        let mut p = Self::zero(num_vars, max_degree)?;
        let start = usize::from(drop_constant);
        for j in start..=max_degree as usize {
            let mut exps = vec![0; num_vars];
            exps[var] = j as u32;
            p.add_term(pack(&exps), series.coefficient(j)?.clone());
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms
            .get(&pack(exps))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Terms sorted by exponent vector.
    pub fn terms(&self) -> Vec<(Vec<u32>, Rational)> {
        let mut out: Vec<_> = self
            .terms
            .iter()
            .map(|(&m, c)| (unpack(m, self.num_vars), c.clone()))
            .collect();
        out.sort();
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.max_degree = self.max_degree.min(other.max_degree);
        out.terms.retain(|&m, _| degree(m, self.num_vars) <= out.max_degree);
        for (&m, c) in &other.terms {
            if degree(m, other.num_vars) <= out.max_degree {
                out.add_term(m, c.clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.num_vars, other.num_vars, "variable count mismatch");
        let max_degree = self.max_degree.min(other.max_degree);
        let mut out = Self {
            num_vars: self.num_vars,
            max_degree,
            terms: HashMap::new(),
        };
        let lhs: Vec<_> = self
            .terms
            .iter()
            .map(|(&m, c)| (m, degree(m, self.num_vars), c))
            .collect();
        for (&m2, c2) in &other.terms {
            let d2 = degree(m2, self.num_vars);
            for &(m1, d1, c1) in &lhs {
                if d1 + d2 <= max_degree {
                    out.add_term(m1 + m2, c1 * c2);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        if c.is_zero() {
            out.terms.clear();
        } else {
            out.terms.values_mut().for_each(|v| *v *= c);
        }
        out
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        let mut out = self.clone();
        out.terms.retain(|&m, _| degree(m, self.num_vars) == d);
        out
    }

    /// Copies this polynomial into a larger ring, shifting variable `i` to `i + offset`.
    pub fn embed(&self, num_vars: usize, offset: usize, max_degree: u32) -> Result<Self> {
        if offset + self.num_vars > num_vars {
            return Err(Error::InvalidArgument("embedding does not fit".into()));
        }
        let mut out = Self::zero(num_vars, max_degree)?;
        for (&m, c) in &self.terms {
            if degree(m, self.num_vars) <= max_degree {
                out.add_term(m << (4 * offset), c.clone());
            }
        }
        Ok(out)
    }

    /// True when every permutation orbit of monomials is fully present with one common
    /// coefficient.
    pub fn is_symmetric(&self) -> bool {
        let mut orbits: HashMap<Vec<u32>, (usize, &Rational)> = HashMap::new();
        for (&m, c) in &self.terms {
            let mut key = unpack(m, self.num_vars);
            key.sort_unstable_by(|a, b| b.cmp(a));
            let slot = orbits.entry(key).or_insert((0, c));
            if slot.1 != c {
                return false;
            }
            slot.0 += 1;
        }
        orbits
            .iter()
            .all(|(key, (count, _))| *count == orbit_size(key))
    }

    /// Coordinates in the monomial basis; the polynomial must be symmetric.
    pub fn monomial_coords(&self) -> Result<BTreeMap<IntegerPartition, Rational>> {
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let mut out = BTreeMap::new();
        for (&m, c) in &self.terms {
            let exps = unpack(m, self.num_vars);
            if exps.windows(2).all(|w| w[0] >= w[1]) {
                let parts = exps.into_iter().filter(|&e| e > 0).collect();
                out.insert(IntegerPartition::new(parts)?, c.clone());
            }
        }
        Ok(out)
    }
}

/// Number of distinct permutations of an exponent vector.
fn orbit_size(exps: &[u32]) -> usize {
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for &e in exps {
        *counts.entry(e).or_insert(0) += 1;
    }
    let denom = counts.values().fold(num_bigint::BigInt::one(), |a, &c| a * factorial(c));
    let n: num_bigint::BigInt = factorial(exps.len() as u32) / denom;
    n.try_into().expect("small orbit")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisTag {
    E,
    P,
    M,
}

/// Coordinates of a symmetric function in one of the `e`, `p`, `m` bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisVector {
    pub tag: BasisTag,
    pub coords: BTreeMap<IntegerPartition, Rational>,
}

impl BasisVector {
    pub fn new(tag: BasisTag) -> Self {
        Self {
            tag,
            coords: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, key: IntegerPartition, c: Rational) {
        let slot = self.coords.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coords.remove(&key);
        }
    }

    pub fn get(&self, key: &IntegerPartition) -> Rational {
        self.coords.get(key).cloned().unwrap_or_else(Rational::zero)
    }
}

fn elementary(k: u32, num_vars: usize, max_degree: u32) -> Result<SymPoly> {
    let mut p = SymPoly::zero(num_vars, max_degree)?;
    if k > max_degree || k as usize > num_vars {
        return Ok(p);
    }
    // all k-subsets of the variables, as bitmasks
    for mask in 0u32..(1 << num_vars) {
        if mask.count_ones() == k {
            let exps: Vec<u32> = (0..num_vars).map(|v| mask >> v & 1).collect();
            p.add_term(pack(&exps), Rational::one());
        }
    }
    Ok(p)
}

fn power_sum(k: u32, num_vars: usize, max_degree: u32) -> Result<SymPoly> {
    let mut p = SymPoly::zero(num_vars, max_degree)?;
    if k > max_degree {
        return Ok(p);
    }
    for v in 0..num_vars {
        let mut exps = vec![0; num_vars];
        exps[v] = k;
        p.add_term(pack(&exps), Rational::one());
    }
    Ok(p)
}

fn monomial_symmetric(lambda: &IntegerPartition, num_vars: usize, max_degree: u32) -> Result<SymPoly> {
    let mut p = SymPoly::zero(num_vars, max_degree)?;
    if lambda.length() > num_vars || lambda.weight() > max_degree {
        return Ok(p);
    }
    let mut exps: Vec<u32> = lambda.parts().to_vec();
    exps.resize(num_vars, 0);
    exps.sort_unstable();
    // iterate the distinct permutations in lexicographic order
    loop {
        p.add_term(pack(&exps), Rational::one());
        let Some(i) = (0..num_vars.saturating_sub(1)).rev().find(|&i| exps[i] < exps[i + 1]) else {
            break;
        };
        let j = (i + 1..num_vars).rev().find(|&j| exps[j] > exps[i]).expect("exists");
        exps.swap(i, j);
        exps[i + 1..].reverse();
    }
    Ok(p)
}

/// Expansion in exactly `num_vars` variables, without the faithfulness requirement.
fn expand_in(tag: BasisTag, lambda: &IntegerPartition, num_vars: usize, max_degree: u32) -> Result<SymPoly> {
    match tag {
        BasisTag::M => monomial_symmetric(lambda, num_vars, max_degree),
        BasisTag::E | BasisTag::P => {
            let mut acc = SymPoly::one(num_vars, max_degree)?;
            for &part in lambda.parts() {
                let factor = if tag == BasisTag::E {
                    elementary(part, num_vars, max_degree)?
                } else {
                    power_sum(part, num_vars, max_degree)?
                };
                acc = acc.mul(&factor);
            }
            Ok(acc)
        }
    }
}

/// `e_λ`, `p_λ` or `m_λ` as a concrete polynomial in `num_vars ≥ |λ|` variables,
/// truncated at degree `|λ|`.
pub fn expand_basis_element(tag: BasisTag, lambda: &IntegerPartition, num_vars: usize) -> Result<SymPoly> {
    let d = lambda.weight();
    if num_vars < d as usize {
        return Err(Error::TooFewVariables {
            vars: num_vars,
            degree: d as usize,
        });
    }
    expand_in(tag, lambda, num_vars, d)
}

/// Monomial coordinates of every basis element of weight `d`, ready for back-substitution.
struct Transition {
    tag: BasisTag,
    /// (basis index, pivot monomial, monomial coordinates), in solve order
    rows: Vec<(IntegerPartition, IntegerPartition, BTreeMap<IntegerPartition, Rational>)>,
}

impl Transition {
    fn new(tag: BasisTag, d: u32, num_vars: usize) -> Result<Self> {
        let mut rows = Vec::new();
        for lambda in partitions(d) {
            let pivot = match tag {
                BasisTag::E => lambda.conjugate(),
                BasisTag::P | BasisTag::M => lambda.clone(),
            };
            let coords = expand_in(tag, &lambda, num_vars, d)?.monomial_coords()?;
            rows.push((lambda, pivot, coords));
        }
        // p_λ (and m_λ) only involve m_μ with μ ⊵ λ; e_λ only m_μ with μ ⊴ λ'.
        match tag {
            BasisTag::E => rows.sort_by(|a, b| b.1.cmp(&a.1)),
            BasisTag::P | BasisTag::M => rows.sort_by(|a, b| a.1.cmp(&b.1)),
        }
        Ok(Self { tag, rows })
    }

    fn solve(&self, target: &BTreeMap<IntegerPartition, Rational>) -> Result<BasisVector> {
        let mut solved: Vec<(usize, Rational)> = Vec::new();
        for (idx, (_, pivot, coords)) in self.rows.iter().enumerate() {
            let mut value = target.get(pivot).cloned().unwrap_or_else(Rational::zero);
            for (r, c) in &solved {
                if let Some(x) = self.rows[*r].2.get(pivot) {
                    value -= c * x;
                }
            }
            let diag = coords.get(pivot).ok_or_else(|| {
                Error::InvalidArgument(format!("transition matrix has no pivot at {pivot}"))
            })?;
            solved.push((idx, value / diag));
        }
        // the solve is only trusted after an exact residual check
        let mut rebuilt: BTreeMap<IntegerPartition, Rational> = BTreeMap::new();
        for (r, c) in &solved {
            for (mu, x) in &self.rows[*r].2 {
                *rebuilt.entry(mu.clone()).or_insert_with(Rational::zero) += c * x;
            }
        }
        rebuilt.retain(|_, v| !v.is_zero());
        let mut want = target.clone();
        want.retain(|_, v| !v.is_zero());
        if rebuilt != want {
            return Err(Error::InvalidArgument(
                "transition system is inconsistent; input is not in the span".into(),
            ));
        }
        let mut out = BasisVector::new(self.tag);
        for (r, c) in solved {
            out.add(self.rows[r].0.clone(), c);
        }
        Ok(out)
    }
}

/// Exact coordinates of a symmetric polynomial in the requested basis.
pub fn to_basis(f: &SymPoly, tag: BasisTag) -> Result<BasisVector> {
    if f.num_vars < f.max_degree as usize {
        return Err(Error::TooFewVariables {
            vars: f.num_vars,
            degree: f.max_degree as usize,
        });
    }
    let m = f.monomial_coords()?;
    if tag == BasisTag::M {
        let mut out = BasisVector::new(BasisTag::M);
        for (k, v) in m {
            out.add(k, v);
        }
        return Ok(out);
    }
    let mut out = BasisVector::new(tag);
    for d in 0..=f.max_degree {
        let part: BTreeMap<_, _> = m
            .iter()
            .filter(|(k, _)| k.weight() == d)
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        if part.is_empty() {
            continue;
        }
        let solved = Transition::new(tag, d, f.num_vars)?.solve(&part)?;
        for (k, v) in solved.coords {
            out.add(k, v);
        }
    }
    Ok(out)
}

/// `m_λ` in the power-sum basis via the set-partition sum over `Π_{l(λ)}`:
/// `(-1)^{l(λ)} / Π m_i(λ)! · Σ_π (-1)^{l(π)} Π_i (|π_i| - 1)! p_{λ_{π_i}}`.
pub fn doubilet_m_to_p(lambda: &IntegerPartition) -> Result<BasisVector> {
    let parts = lambda.parts();
    let prefactor = sign(lambda.length() as i64)
        / Rational::from_integer(lambda.multiplicity_factorials());
    let mut out = BasisVector::new(BasisTag::P);
    for pi in set_partitions(lambda.length())? {
        let mut c = sign(pi.length() as i64) * &prefactor;
        for block in pi.blocks() {
            c *= Rational::from_integer(factorial(block.len() as u32 - 1));
        }
        let key = IntegerPartition::new(pi.block_weights(parts))?;
        out.add(key, c);
    }
    Ok(out)
}

fn require_order(q: &PowerSeries, n: u32) -> Result<()> {
    if !q.is_monic() {
        return Err(Error::NotMonic);
    }
    if q.order() < n as usize {
        return Err(Error::BeyondOrder {
            index: n as usize,
            order: q.order(),
        });
    }
    Ok(())
}

/// For `k = 1..=k_max`, the `e`-basis coordinates of the degree-`n` part of
/// `e_k(Q(x_1) - 1, …, Q(x_n) - 1)`, expanded in `n` variables.
pub fn oracle_e_k_expansions(q: &PowerSeries, n: u32, k_max: u32) -> Result<Vec<BasisVector>> {
    require_order(q, n)?;
    let vars = n as usize;
    if vars == 0 {
        return Ok((0..k_max).map(|_| BasisVector::new(BasisTag::E)).collect());
    }
    let mut layers = vec![SymPoly::one(vars, n)?];
    layers.extend((0..k_max).map(|_| SymPoly::zero(vars, n)).collect::<Result<Vec<_>>>()?);
    for v in 0..vars {
        let shifted = SymPoly::univariate(vars, n, v, q, true)?;
        for k in (1..=k_max as usize).rev() {
            let step = layers[k - 1].mul(&shifted);
            layers[k] = layers[k].add(&step);
        }
    }
    layers[1..]
        .iter()
        .map(|e_k| to_basis(&e_k.homogeneous_part(n), BasisTag::E))
        .collect()
}

/// `b^(k)_λ(Q)` read off the brute-force expansion of `e_k(Q(x) - 1)` in the `e` basis.
pub fn oracle_b_coeff(q: &PowerSeries, lambda: &IntegerPartition, k: u32) -> Result<Rational> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let expansions = oracle_e_k_expansions(q, lambda.weight(), k)?;
    Ok(expansions[k as usize - 1].get(lambda))
}

/// `e`-basis coordinates of the degree-`n` part of `Π_{i ≤ n} Q(x_i)`.
pub fn oracle_genus_coeffs(q: &PowerSeries, n: u32) -> Result<BasisVector> {
    require_order(q, n)?;
    let vars = n as usize;
    if vars == 0 {
        let mut out = BasisVector::new(BasisTag::E);
        out.add(IntegerPartition::empty(), Rational::one());
        return Ok(out);
    }
    let mut acc = SymPoly::one(vars, n)?;
    for v in 0..vars {
        acc = acc.mul(&SymPoly::univariate(vars, n, v, q, false)?);
    }
    to_basis(&acc.homogeneous_part(n), BasisTag::E)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub x_exponents: Vec<u32>,
    pub y_exponents: Vec<u32>,
    #[serde(with = "crate::rational::serde_text")]
    pub product_side: Rational,
    #[serde(with = "crate::rational::serde_text")]
    pub sum_side: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductIdentityReport {
    pub num_vars: usize,
    pub degree_bound: u32,
    pub terms_compared: usize,
    pub holds: bool,
    pub mismatches: Vec<Mismatch>,
}

/// Compares `Π_{i,j ≤ N} (1 + x_i y_j)` with `1 + Σ_{1 ≤ |λ| ≤ d} m_λ(y) e_λ(x)`,
/// both truncated at `x`-degree `d`.
pub fn product_identity_check(num_vars: usize, d: u32) -> Result<ProductIdentityReport> {
    if num_vars * d as usize > PRODUCT_IDENTITY_BUDGET {
        return Err(Error::LimitExceeded {
            what: "product identity size N·d",
            requested: num_vars * d as usize,
            limit: PRODUCT_IDENTITY_BUDGET,
        });
    }
    let total = 2 * num_vars;
    // every term is balanced in x and y, so x-degree d is total degree 2d
    let bound = 2 * d;
    let mut lhs = SymPoly::one(total, bound)?;
    for i in 0..num_vars {
        for j in 0..num_vars {
            let mut exps = vec![0; total];
            exps[i] = 1;
            exps[num_vars + j] = 1;
            let factor = SymPoly::from_terms(
                total,
                bound,
                [(vec![0; total], Rational::one()), (exps, Rational::one())],
            )?;
            lhs = lhs.mul(&factor);
        }
    }
    let mut rhs = SymPoly::one(total, bound)?;
    for lambda in partitions_in_range(1, d) {
        let w = lambda.weight();
        let m_y = expand_in(BasisTag::M, &lambda, num_vars, w)?.embed(total, num_vars, bound)?;
        let e_x = expand_in(BasisTag::E, &lambda, num_vars, w)?.embed(total, 0, bound)?;
        rhs = rhs.add(&m_y.mul(&e_x));
    }
    let mut keys: Vec<Mono> = lhs.terms.keys().chain(rhs.terms.keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    let mut mismatches = Vec::new();
    for &m in &keys {
        let a = lhs.terms.get(&m).cloned().unwrap_or_else(Rational::zero);
        let b = rhs.terms.get(&m).cloned().unwrap_or_else(Rational::zero);
        if a != b {
            let exps = unpack(m, total);
            mismatches.push(Mismatch {
                x_exponents: exps[..num_vars].to_vec(),
                y_exponents: exps[num_vars..].to_vec(),
                product_side: a,
                sum_side: b,
            });
        }
    }
    Ok(ProductIdentityReport {
        num_vars,
        degree_bound: d,
        terms_compared: keys.len(),
        holds: mismatches.is_empty(),
        mismatches,
    })
}
