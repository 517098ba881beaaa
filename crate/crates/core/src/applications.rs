//! Signature parity, the mod-4 signature congruence, searches over two-term Chern
//! supports, and Chern numbers of products of complex projective spaces.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chern::ChernVector;
use crate::combinatorics::{nu2, partitions, IntegerPartition, Valuation};
use crate::error::{Error, Result};
use crate::genus::{evaluate_genus, genus_functional_with_limit, genus_h_lambda, GenusSpec};
use crate::hattori_stong::IntegralityChecker;
use crate::rational::{binomial, is_even_integer, is_integer, Rational};
use crate::Limits;

/// `CP^{n_1} × ⋯ × CP^{n_r}`. The empty product is a point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureSpec {
    factors: Vec<u32>,
}

impl FixtureSpec {
    pub fn new(factors: Vec<u32>) -> Result<Self> {
        if factors.contains(&0) {
            return Err(Error::InvalidArgument("projective space dimensions must be positive".into()));
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn dim(&self) -> u32 {
        self.factors.iter().sum()
    }
}

/// Polynomials in `x_1, …, x_r` with `x_j^{n_j+1} = 0`.
type Truncated = HashMap<Vec<u32>, BigInt>;

fn truncated_mul(a: &Truncated, b: &Truncated, caps: &[u32]) -> Truncated {
    let mut out = Truncated::new();
    for (ea, ca) in a {
        'terms: for (eb, cb) in b {
            let mut e = Vec::with_capacity(caps.len());
            for j in 0..caps.len() {
                let s = ea[j] + eb[j];
                if s > caps[j] {
                    continue 'terms;
                }
                e.push(s);
            }
            *out.entry(e).or_default() += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Chern numbers of a product of projective spaces, from the total Chern class
/// `Π (1 + x_j)^{n_j+1}` evaluated on `Π x_j^{n_j}`.
pub fn projective_fixture(f: &FixtureSpec) -> Result<ChernVector> {
    projective_fixture_with_limits(f, &Limits::default())
}

pub fn projective_fixture_with_limits(f: &FixtureSpec, limits: &Limits) -> Result<ChernVector> {
    let n = f.dim();
    limits.check_dimension(n)?;
    let caps = f.factors();
    let r = caps.len();
    let mut total: Truncated = HashMap::from([(vec![0; r], BigInt::one())]);
    for (j, &nj) in caps.iter().enumerate() {
        let factor: Truncated = (0..=nj)
            .map(|e| {
                let mut exp = vec![0; r];
                exp[j] = e;
                (exp, binomial(nj + 1, e))
            })
            .collect();
        total = truncated_mul(&total, &factor, caps);
    }
    let mut classes = vec![Truncated::new(); n as usize + 1];
    for (e, c) in total {
        let d: u32 = e.iter().sum();
        classes[d as usize].insert(e, c);
    }
    let top = caps.to_vec();
    let mut v = ChernVector::zero(n);
    for lambda in partitions(n) {
        let mut acc: Truncated = HashMap::from([(vec![0; r], BigInt::one())]);
        for &part in lambda.parts() {
            acc = truncated_mul(&acc, &classes[part as usize], caps);
        }
        v.set(lambda, acc.remove(&top).unwrap_or_default())?;
    }
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParityVerdict {
    EvenCertified,
    NotApplicable,
    Odd,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityTerm {
    pub partition: IntegerPartition,
    #[serde(with = "crate::rational::serde_text")]
    pub h: Rational,
    /// `ν₂(h_λ · c_λ)`.
    pub nu2: Valuation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityCertificate {
    pub vector: ChernVector,
    pub per_term: Vec<ParityTerm>,
    pub verdict: ParityVerdict,
    #[serde(with = "crate::rational::serde_text")]
    pub signature: Rational,
    pub signature_even: bool,
}

/// Certifies that the signature is even when every supported `λ` has distinct parts.
///
/// Signature coefficients `h_λ` with distinct parts have `ν₂ ≥ 1`, so each term
/// `h_λ c_λ` is even. In odd complex dimension the signature vanishes identically.
/// The verdict concerns realizable vectors; for others `σ` need not be an integer.
pub fn parity_certificate(v: &ChernVector) -> Result<ParityCertificate> {
    let g = GenusSpec::signature();
    let mut per_term = Vec::new();
    for (lambda, c) in v.support() {
        let h = genus_h_lambda(&g, lambda)?;
        let nu2 = nu2(&(&h * Rational::from_integer(c.clone())));
        per_term.push(ParityTerm {
            partition: lambda.clone(),
            h,
            nu2,
        });
    }
    let signature: Rational = per_term
        .iter()
        .map(|t| &t.h * Rational::from_integer(v.get(&t.partition)))
        .sum();
    let signature_even = is_even_integer(&signature);
    let verdict = if v.dim() % 2 == 1 {
        ParityVerdict::EvenCertified
    } else if !per_term.iter().all(|t| t.partition.has_distinct_parts()) {
        ParityVerdict::NotApplicable
    } else if per_term.iter().all(|t| t.nu2 >= Valuation::Finite(1)) {
        ParityVerdict::EvenCertified
    } else {
        ParityVerdict::Odd
    };
    Ok(ParityCertificate {
        vector: v.clone(),
        per_term,
        verdict,
        signature,
        signature_even,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mod4Report {
    pub dim: u32,
    pub k: u32,
    #[serde(with = "crate::rational::serde_text")]
    pub signature: Rational,
    #[serde(serialize_with = "serialize_display")]
    pub top_chern: BigInt,
    /// `σ mod 4`, absent when `σ` is not an integer.
    pub signature_mod4: Option<u8>,
    /// `(-1)^k c_{2k} mod 4`.
    pub top_term_mod4: u8,
    pub holds: bool,
}

fn serialize_display<T: std::fmt::Display, S: serde::Serializer>(x: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

fn mod4(x: &BigInt) -> u8 {
    x.mod_floor(&BigInt::from(4)).to_u8().unwrap()
}

/// `σ ≡ (-1)^k c_{2k} (mod 4)` in complex dimension `2k`, for realizable vectors only.
pub fn signature_mod4_check(checker: &IntegralityChecker, v: &ChernVector) -> Result<Mod4Report> {
    let dim = v.dim();
    if dim % 2 == 1 {
        return Err(Error::InvalidArgument(format!("complex dimension {dim} is odd")));
    }
    if !checker.check_realizable(v)?.realizable {
        return Err(Error::NotRealizable);
    }
    let k = dim / 2;
    let signature = evaluate_genus(&GenusSpec::signature(), v)?;
    let top_chern = v.get(&IntegerPartition::single(dim));
    let top_term = if k.is_multiple_of(2) { top_chern.clone() } else { -top_chern.clone() };
    let top_term_mod4 = mod4(&top_term);
    let signature_mod4 = is_integer(&signature).then(|| mod4(signature.numer()));
    Ok(Mod4Report {
        dim,
        k,
        holds: signature_mod4 == Some(top_term_mod4),
        signature,
        top_chern,
        signature_mod4,
        top_term_mod4,
    })
}

/// The lattice `{ (a, b) : a ≡ x·step_a + y·offset, b = y·step_b }` in Hermite normal form:
/// it is generated by `(step_a, 0)` and `(offset, step_b)` with `0 ≤ offset < step_a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lattice2 {
    pub step_a: i64,
    pub offset: i64,
    pub step_b: i64,
}

impl Lattice2 {
    pub fn index(&self) -> i64 {
        self.step_a * self.step_b
    }

    pub fn generators(&self) -> [[i64; 2]; 2] {
        [[self.step_a, 0], [self.offset, self.step_b]]
    }
}

struct Hnf {
    a: BigInt,
    b: BigInt,
    d: BigInt,
}

impl Hnf {
    /// Intersects with `{ v : p·v_1 + q·v_2 ≡ 0 (mod m) }`.
    fn restrict(&mut self, p: &BigInt, q: &BigInt, m: &BigInt) {
        // in lattice coordinates (x, y): a'x + b'y ≡ 0 (mod m)
        let a1 = (p * &self.a).mod_floor(m);
        let b1 = (p * &self.b + q * &self.d).mod_floor(m);
        let g = a1.gcd(m);
        let t0 = &g / g.gcd(&b1);
        let mg = m / &g;
        // a1/g is invertible modulo m/g
        let rhs = (-(&t0 * &b1) / &g).mod_floor(&mg);
        let inv = (a1 / &g).extended_gcd(&mg).x.mod_floor(&mg);
        let x0 = if mg.is_one() { BigInt::zero() } else { (rhs * inv).mod_floor(&mg) };
        let new_a = &self.a * &mg;
        let new_b = (&x0 * &self.a + &t0 * &self.b).mod_floor(&new_a);
        self.d = &t0 * &self.d;
        self.a = new_a;
        self.b = new_b;
    }
}

/// The Chern vectors supported on `{u, w}` that pass every integrality condition in
/// dimension `u.weight()`, as a rank-2 lattice in the coordinates `(c_u, c_w)`.
pub fn realizable_lattice(
    checker: &IntegralityChecker,
    u: &IntegerPartition,
    w: &IntegerPartition,
) -> Result<Lattice2> {
    let n = u.weight();
    if w.weight() != n || u == w {
        return Err(Error::InvalidArgument(format!("support {u}, {w} is not two distinct partitions of one weight")));
    }
    let basis = checker.integrality_basis(n)?;
    let mut hnf = Hnf {
        a: BigInt::one(),
        b: BigInt::zero(),
        d: BigInt::one(),
    };
    for cond in basis.iter() {
        let alpha = cond.functional.coefficient(u);
        let beta = cond.functional.coefficient(w);
        let m = alpha.denom().lcm(beta.denom());
        if m.is_one() {
            continue;
        }
        let p = (&alpha * Rational::from_integer(m.clone())).to_integer();
        let q = (&beta * Rational::from_integer(m.clone())).to_integer();
        hnf.restrict(&p, &q, &m);
    }
    let small = |x: &BigInt| {
        x.to_i64().filter(|v| v.checked_mul(4).is_some()).ok_or(Error::LimitExceeded {
            what: "lattice step",
            requested: usize::MAX,
            limit: i64::MAX as usize / 4,
        })
    };
    Ok(Lattice2 {
        step_a: small(&hnf.a)?,
        offset: small(&hnf.b)?,
        step_b: small(&hnf.d)?,
    })
}

pub const MAX_SEARCH_BOUND: u64 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem3Report {
    pub k: u32,
    pub i_requested: u32,
    /// `min(i, 2k - i)`.
    pub i: u32,
    pub dim: u32,
    pub support: [IntegerPartition; 2],
    pub bound: u64,
    pub candidates: u64,
    pub realizable: u64,
    /// L.c.m. of the integrality-condition denominators on the support.
    #[serde(serialize_with = "serialize_display")]
    pub period: BigInt,
    pub lattice: Lattice2,
    pub lattice_index: i64,
    /// `σ` on the two lattice generators.
    pub generator_signatures: [String; 2],
    /// Evenness of `σ` on the whole lattice, independent of the box.
    pub lattice_sigma_even: bool,
    pub all_sigma_integral: bool,
    pub all_sigma_even: bool,
    /// `σ ≡ (-1)^k c_{2k} (mod 4)` for every realizable point in the box.
    pub signature_congruence_holds: bool,
    /// `c_{2k} ≡ c_k² (mod 4)` for every realizable point in the box; only for `i = k`.
    pub top_equiv_middle_mod4: Option<bool>,
    /// Lexicographically first `(c_{2k}, c_w)` with odd or non-integral `σ`.
    pub odd_signature_example: Option<[i64; 2]>,
}

/// Support `{(2k), (2k - i, i)}` with `i` canonicalized to `min(i, 2k - i)`.
pub fn theorem3_support(k: u32, i: u32) -> Result<(u32, [IntegerPartition; 2])> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("k must be at least 2, got {k}")));
    }
    if i == 0 || i >= 2 * k {
        return Err(Error::InvalidArgument(format!("i must lie in 1..{}, got {i}", 2 * k - 1)));
    }
    let i = i.min(2 * k - i);
    let w = IntegerPartition::new(vec![2 * k - i, i])?;
    Ok((i, [IntegerPartition::single(2 * k), w]))
}

#[derive(Default)]
struct Tally {
    realizable: u64,
    integral: bool,
    even: bool,
    congruence: bool,
    middle: bool,
    odd_example: Option<(i64, i64)>,
}

impl Tally {
    fn identity() -> Self {
        Self {
            integral: true,
            even: true,
            congruence: true,
            middle: true,
            ..Self::default()
        }
    }

    fn merge(self, o: Self) -> Self {
        let odd_example = match (self.odd_example, o.odd_example) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        };
        Self {
            realizable: self.realizable + o.realizable,
            integral: self.integral && o.integral,
            even: self.even && o.even,
            congruence: self.congruence && o.congruence,
            middle: self.middle && o.middle,
            odd_example,
        }
    }
}

/// Enumerates every integer pair `(c_{2k}, c_w)` with absolute values at most `bound`,
/// keeps the realizable ones and inspects their signatures.
///
/// Realizable pairs form a lattice, so only lattice points in the box are visited; the
/// count of all candidates is `(2·bound + 1)²`. The report does not depend on `jobs`.
pub fn theorem3_search(
    checker: &IntegralityChecker,
    k: u32,
    i: u32,
    bound: u64,
    jobs: usize,
) -> Result<Theorem3Report> {
    let (ic, support) = theorem3_support(k, i)?;
    let dim = 2 * k;
    checker.limits().check_dimension(dim)?;
    if bound > MAX_SEARCH_BOUND {
        return Err(Error::LimitExceeded {
            what: "search bound",
            requested: bound as usize,
            limit: MAX_SEARCH_BOUND as usize,
        });
    }
    let [u, w] = &support;
    let lattice = realizable_lattice(checker, u, w)?;
    let basis = checker.integrality_basis(dim)?;
    let mut period = BigInt::one();
    for cond in basis.iter() {
        for key in [u, w] {
            period = period.lcm(cond.functional.coefficient(key).denom());
        }
    }

    let sig = genus_functional_with_limit(&GenusSpec::signature(), dim, checker.limits().set_partition)?;
    let (s1, s2) = (sig.coefficient(u), sig.coefficient(w));
    let sd = s1.denom().lcm(s2.denom());
    let to_i128 = |q: &Rational| (q * Rational::from_integer(sd.clone())).to_integer().to_i128().unwrap();
    let (n1, n2) = (to_i128(&s1), to_i128(&s2));
    let sd = sd.to_i128().unwrap();
    let generator_sigma = |g: [i64; 2]| {
        &s1 * Rational::from_integer(g[0].into()) + &s2 * Rational::from_integer(g[1].into())
    };
    let gens = lattice.generators();
    let gsig = [generator_sigma(gens[0]), generator_sigma(gens[1])];
    let lattice_sigma_even = gsig.iter().all(is_even_integer);
    let sign = if k.is_multiple_of(2) { 1 } else { -1 };
    let middle = ic == k;

    let b = bound as i64;
    let Lattice2 { step_a, offset, step_b } = lattice;
    let rows = b / step_b;
    let row = |y: i64| {
        let mut t = Tally::identity();
        let shift = y * offset;
        let lo = Integer::div_ceil(&(-b - shift), &step_a);
        let hi = (b - shift).div_euclid(step_a);
        let cw = y * step_b;
        for x in lo..=hi {
            let ca = x * step_a + shift;
            t.realizable += 1;
            let num = n1 * ca as i128 + n2 * cw as i128;
            let integral = num % sd == 0;
            let even = num % (2 * sd) == 0;
            if !even {
                t.even = false;
                t.odd_example = t.odd_example.or(Some((ca, cw)));
            }
            if !integral {
                t.integral = false;
                t.congruence = false;
            } else if (num / sd - sign * ca as i128).rem_euclid(4) != 0 {
                t.congruence = false;
            }
            if middle && (ca as i128 - cw as i128).rem_euclid(4) != 0 {
                t.middle = false;
            }
        }
        t
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    // rows visit c_w in increasing order and x increases within a row, so the first odd
    // example in a row is its lexicographic minimum in (c_w, c_{2k}); merge takes the min
    let tally = pool.install(|| {
        (-rows..=rows)
            .into_par_iter()
            .map(row)
            .reduce(Tally::identity, Tally::merge)
    });
    let side = 2 * bound + 1;
    Ok(Theorem3Report {
        k,
        i_requested: i,
        i: ic,
        dim,
        support: support.clone(),
        bound,
        candidates: side * side,
        realizable: tally.realizable,
        period,
        lattice,
        lattice_index: lattice.index(),
        generator_signatures: gsig.map(|q| crate::rational::to_text(&q)),
        lattice_sigma_even,
        all_sigma_integral: tally.integral,
        all_sigma_even: tally.even,
        signature_congruence_holds: tally.congruence,
        top_equiv_middle_mod4: middle.then_some(tally.middle),
        odd_signature_example: tally.odd_example.map(|(a, b)| [a, b]),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RppCase {
    pub i: u32,
    pub support: [IntegerPartition; 2],
    pub realizable: u64,
    pub all_sigma_even: bool,
    pub lattice_sigma_even: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RppReport {
    /// Real dimension `4k`.
    pub n: u32,
    pub k: u32,
    pub bound: u64,
    pub cases: Vec<RppCase>,
    pub obstructed: bool,
    pub statement: String,
}

/// For each `i ≤ k`, rules out odd signature on the support `{(2k), (2k - i, i)}` in
/// real dimension `n = 4k`, which excludes rational projective planes with only those
/// Chern numbers.
pub fn rpp_obstruction_report(checker: &IntegralityChecker, n: u32, bound: u64, jobs: usize) -> Result<RppReport> {
    if !n.is_multiple_of(4) || n < 8 {
        return Err(Error::InvalidArgument(format!(
            "real dimension must be 4k with k >= 2, got {n}"
        )));
    }
    let k = n / 4;
    let mut cases = Vec::new();
    for i in 1..=k {
        let r = theorem3_search(checker, k, i, bound, jobs)?;
        cases.push(RppCase {
            i,
            support: r.support,
            realizable: r.realizable,
            all_sigma_even: r.all_sigma_even,
            lattice_sigma_even: r.lattice_sigma_even,
        });
    }
    let obstructed = cases.iter().all(|c| c.lattice_sigma_even && c.all_sigma_even);
    let statement = if obstructed {
        format!(
            "no stably almost-complex {n}-manifold whose only nonzero Chern numbers are c_{} and c_i c_{{{}-i}} (1 <= i <= {k}) has odd signature; in particular none is a rational projective plane",
            2 * k,
            2 * k
        )
    } else {
        format!("odd signature is not excluded in real dimension {n}")
    };
    Ok(RppReport {
        n,
        k,
        bound,
        cases,
        obstructed,
        statement,
    })
}

/// Signature and Todd genus of a vector as exact rationals, keyed by genus name.
pub fn classical_genera(v: &ChernVector) -> Result<BTreeMap<&'static str, Rational>> {
    Ok(BTreeMap::from([
        ("signature", evaluate_genus(&GenusSpec::signature(), v)?),
        ("todd", evaluate_genus(&GenusSpec::todd(), v)?),
    ]))
}
