//! Binomial-moment matrices, their determinants, recognition of admissible
//! `q`, and construction of divisible anti-invariant enumerators.

mod det;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub(crate) use det::primitive_part;
pub use det::poly_matrix_det;

use crate::exactnum::{radical::pow2, ExactNumber};
use crate::linalg::{nullspace, Matrix};
use crate::poly::roots::approximate_roots;
use crate::poly::{fwe_classify, Duality, HomogPoly, UniPoly};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// Variable of the determinant: `q` for even degree, `t = sqrt(q)` for odd.
    pub fn var(self) -> char {
        match self {
            Parity::Even => 'q',
            Parity::Odd => 't',
        }
    }

    /// Total degree `2n` or `2n+1` of the enumerators.
    pub fn degree(self, n: usize) -> usize {
        match self {
            Parity::Even => 2 * n,
            Parity::Odd => 2 * n + 1,
        }
    }

    /// Inverse of [`Parity::degree`].
    pub fn split_degree(degree: usize) -> (usize, Parity) {
        if degree % 2 == 0 {
            (degree / 2, Parity::Even)
        } else {
            (degree / 2, Parity::Odd)
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            other => Err(Error::UnknownName(other.to_string())),
        }
    }
}

pub(crate) fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `A(n, q)` or `B(n, q)`: row `nu`, column `i` multiplies the coefficient of
/// `x^(N-2i) y^(2i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentMatrix {
    n: usize,
    parity: Parity,
    entries: Vec<Vec<UniPoly>>,
}

impl MomentMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn entries(&self) -> &[Vec<UniPoly>] {
        &self.entries
    }

    pub fn entry(&self, nu: usize, i: usize) -> &UniPoly {
        &self.entries[nu][i]
    }

    /// Numeric matrix at `var = x`.
    pub fn specialize(&self, x: &ExactNumber) -> Result<Matrix> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|p| p.try_eval(x)).collect())
            .collect()
    }
}

impl fmt::Display for MomentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

pub fn moment_matrix(n: usize, parity: Parity) -> MomentMatrix {
    assert!(n >= 1, "moment matrices start at n = 1");
    let var = parity.var();
    let big_n = parity.degree(n) as i64;
    let entries = (0..=n as i64)
        .map(|nu| {
            let exp = match parity {
                Parity::Even => (n as i64 - nu) as usize,
                Parity::Odd => (2 * (n as i64 - nu) + 1) as usize,
            };
            (0..=n as i64)
                .map(|i| {
                    let top = big_n - 2 * i;
                    let a = binomial(top, nu);
                    let b = binomial(top, big_n - nu);
                    let mut c = vec![ExactNumber::zero(); exp + 1];
                    c[0] = ExactNumber::from_bigint(a);
                    c[exp] = &c[exp] + &ExactNumber::from_bigint(b);
                    UniPoly::new(c, var)
                })
                .collect()
        })
        .collect();
    MomentMatrix { n, parity, entries }
}

/// Exact determinant of a moment matrix, in `q` (even) or `t` (odd).
pub fn poly_det(m: &MomentMatrix) -> UniPoly {
    poly_matrix_det(&m.entries, m.parity.var()).expect("moment matrices have integer entries")
}

/// An admissible value of `q` recognised among the roots of a determinant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateQ {
    pub q: ExactNumber,
    pub t: Option<ExactNumber>,
    pub minimal_polynomial: UniPoly,
    pub multiplicity: usize,
}

impl CandidateQ {
    /// Candidate for a known `q`; `t` is filled in when `sqrt(q)` is
    /// representable.
    pub fn from_q(q: ExactNumber) -> Result<Self> {
        crate::poly::check_q(&q)?;
        let t = q.sqrt_in_field()?;
        Ok(Self::with_t(q, t, 1))
    }

    fn with_t(q: ExactNumber, t: Option<ExactNumber>, multiplicity: usize) -> Self {
        let minimal_polynomial = UniPoly::from_rationals(q.minimal_polynomial(), 'q');
        CandidateQ { q, t, minimal_polynomial, multiplicity }
    }
}

/// Outcome of [`candidate_q`]: `D = content * prod(factor^k) * prod(unresolved^k)`
/// with every factor primitive over the integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateSet {
    pub candidates: Vec<CandidateQ>,
    pub content: ExactNumber,
    pub factors: Vec<(UniPoly, usize)>,
    pub unresolved: Vec<(UniPoly, usize)>,
}

impl CandidateSet {
    /// Factored form such as `8*(q - 2)`.
    pub fn render_factored(&self) -> String {
        let mut parts = Vec::new();
        if !self.content.is_one() || (self.factors.is_empty() && self.unresolved.is_empty()) {
            parts.push(self.content.to_string());
        }
        for (f, k) in self.factors.iter().chain(&self.unresolved) {
            let base = if f.degree() == Some(1) && f.coeffs().len() == 2 && f.coeff(0).is_zero() {
                f.to_string()
            } else {
                format!("({f})")
            };
            parts.push(if *k == 1 { base } else { format!("{base}^{k}") });
        }
        parts.join("*")
    }

    /// Multiply the factorisation back out.
    pub fn expand(&self, var: char) -> UniPoly {
        self.factors
            .iter()
            .chain(&self.unresolved)
            .fold(UniPoly::constant(self.content.clone(), var), |acc, (f, k)| {
                &acc * &f.pow(*k as u32)
            })
    }
}

fn coeff_bits(p: &UniPoly) -> u64 {
    p.coeffs()
        .iter()
        .map(|c| c.rational_part().numer().bits())
        .max()
        .unwrap_or(1)
}

fn near_integer(x: &BigRational, tol: &BigRational) -> Option<BigInt> {
    let r = x.round();
    ((x - &r).abs() < *tol).then(|| r.to_integer())
}

/// Split a primitive square-free integer polynomial into its recognised
/// factors of degree at most 2 and the remaining cofactor.
fn split_low_degree(g: &UniPoly) -> (Vec<UniPoly>, UniPoly) {
    let var = g.var();
    let mut rest = g.clone();
    let mut found = Vec::new();
    if g.degree().unwrap_or(0) == 0 {
        return (found, rest);
    }
    let lc = g.leading().expect("nonzero").rational_part().clone();
    let bits = 96 + 2 * coeff_bits(g) as u32;
    let tol = BigRational::new(BigInt::one(), pow2(bits as u64 / 2));
    let roots = approximate_roots(g, bits);
    let mut used = vec![false; roots.len()];
    for (k, (re, im)) in roots.iter().enumerate() {
        if im.abs() >= tol {
            continue;
        }
        let Some(num) = near_integer(&(&lc * re), &BigRational::new(BigInt::one(), BigInt::from(4))) else {
            continue;
        };
        let r = ExactNumber::from_rational(BigRational::new(num, lc.to_integer()));
        let lin = UniPoly::new(vec![-&r, ExactNumber::one()], var);
        if let Some(q) = rest.exact_div(&lin) {
            found.push(primitive_part(&lin).1);
            rest = q;
            used[k] = true;
        }
    }
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if used[i] || used[j] {
                continue;
            }
            let (a, b) = (&roots[i], &roots[j]);
            let s_im = &a.1 + &b.1;
            let p_re = &a.0 * &b.0 - &a.1 * &b.1;
            let p_im = &a.0 * &b.1 + &a.1 * &b.0;
            if s_im.abs() >= tol || p_im.abs() >= tol {
                continue;
            }
            let s_re = &a.0 + &b.0;
            let (Some(ls), Some(lp)) = (near_integer(&(&lc * s_re), &tol), near_integer(&(&lc * p_re), &tol)) else {
                continue;
            };
            let quad = UniPoly::from_rationals(
                vec![BigRational::from_integer(lp), BigRational::from_integer(-ls), lc.clone()],
                var,
            );
            let quad = primitive_part(&quad).1;
            if let Some(q) = rest.exact_div(&quad) {
                found.push(quad);
                rest = q;
                used[i] = true;
                used[j] = true;
            }
        }
    }
    (found, primitive_part(&rest).1)
}

/// Real roots of a primitive factor of degree 1 or 2.
fn factor_roots(f: &UniPoly) -> Vec<ExactNumber> {
    match f.degree() {
        Some(1) => vec![-&(&f.coeff(0) / &f.coeff(1))],
        Some(2) => {
            let (c, b, a) = (f.coeff(0), f.coeff(1), f.coeff(2));
            let disc = &(&b * &b) - &(&ExactNumber::from_int(4) * &(&a * &c));
            if disc.is_negative() {
                return vec![];
            }
            let s = disc
                .sqrt_in_field()
                .expect("rational discriminant")
                .expect("rational square roots are representable");
            let two_a = &ExactNumber::from_int(2) * &a;
            vec![&(&-&b - &s) / &two_a, &(&-&b + &s) / &two_a]
        }
        _ => vec![],
    }
}

/// Admissible `q` among the real roots of `D` of algebraic degree at most 2.
pub fn candidate_q(d: &UniPoly, parity: Parity) -> CandidateSet {
    assert!(!d.is_zero(), "candidate_q needs a nonzero determinant");
    let var = d.var();
    if !d.is_rational() {
        return CandidateSet {
            candidates: vec![],
            content: ExactNumber::one(),
            factors: vec![],
            unresolved: vec![(d.clone(), 1)],
        };
    }
    let (_, sqf) = d.square_free_decomposition();
    let mut factors = Vec::new();
    let mut unresolved = Vec::new();
    for (f, k) in &sqf {
        let (low, rest) = split_low_degree(&primitive_part(f).1);
        for l in low {
            factors.push((l, *k));
        }
        if rest.degree().unwrap_or(0) > 0 {
            unresolved.push((rest, *k));
        }
    }
    factors.sort_by(|a, b| {
        (a.0.degree(), a.0.coeffs().iter().map(|c| c.to_f64()).collect::<Vec<_>>())
            .partial_cmp(&(b.0.degree(), b.0.coeffs().iter().map(|c| c.to_f64()).collect::<Vec<_>>()))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let partial = factors
        .iter()
        .chain(&unresolved)
        .fold(UniPoly::one(var), |acc, (f, k)| &acc * &f.pow(*k as u32));
    let content = d.leading().expect("nonzero") / partial.leading().expect("nonzero");

    let mut candidates = Vec::new();
    for (f, k) in &factors {
        for root in factor_roots(f) {
            if !root.is_positive() || root.is_one() {
                continue;
            }
            let cand = match parity {
                Parity::Even => {
                    let t = root.sqrt_in_field().expect("positive");
                    CandidateQ::with_t(root, t, *k)
                }
                Parity::Odd => CandidateQ::with_t(&root * &root, Some(root), *k),
            };
            candidates.push(cand);
        }
    }
    candidates.sort_by(|a, b| a.q.cmp_value(&b.q));
    CandidateSet { candidates, content, factors, unresolved }
}

/// Basis of anti-invariant enumerators of degree `2n` (even) or `2n+1` (odd)
/// supported on even powers of `y`, for the given `q`.
pub fn construct_enumerator(n: usize, parity: Parity, cand: &CandidateQ) -> Result<Vec<HomogPoly>> {
    let x = match parity {
        Parity::Even => cand.q.clone(),
        Parity::Odd => cand
            .t
            .clone()
            .ok_or_else(|| Error::Field(format!("odd degree needs sqrt(q) for q = {}", cand.q)))?,
    };
    let sqrt_q = match parity {
        Parity::Even => None,
        Parity::Odd => Some(&x),
    };
    let m = moment_matrix(n, parity).specialize(&x)?;
    let basis = nullspace(&m, n + 1)?;
    if basis.is_empty() {
        return Err(Error::Inconsistent(format!(
            "the moment matrix of size {} is regular at q = {}",
            n + 1,
            cand.q
        )));
    }
    let big_n = parity.degree(n);
    let mut out = Vec::with_capacity(basis.len());
    for v in basis {
        let v = if v[0].is_zero() {
            v
        } else {
            let inv = v[0].inv()?;
            v.iter().map(|c| c.try_mul(&inv)).collect::<Result<Vec<_>>>()?
        };
        let mut coeffs = vec![ExactNumber::zero(); big_n + 1];
        for (i, c) in v.into_iter().enumerate() {
            coeffs[2 * i] = c;
        }
        let w = HomogPoly::new(coeffs);
        if fwe_classify(&w, &cand.q, sqrt_q)? != Duality::AntiInvariant {
            return Err(Error::Internal(format!("kernel vector {w} is not anti-invariant")));
        }
        out.push(w);
    }
    Ok(out)
}

/// `q^(N/2 - nu)` with half-integral powers through `sqrt_q`.
fn half_power(big_n: usize, nu: usize, q: &ExactNumber, sqrt_q: Option<&ExactNumber>) -> Result<ExactNumber> {
    let twice = big_n as i64 - 2 * nu as i64;
    if twice % 2 == 0 {
        q.pow(twice / 2)
    } else {
        let s = sqrt_q.ok_or_else(|| Error::Field(format!("odd degree {big_n} needs sqrt(q) for q = {q}")))?;
        crate::poly::check_sqrt(q, s)?;
        s.pow(twice)
    }
}

/// Coefficients `e_i` of the `nu`-th moment identity `sum_i e_i A_i = 0`
/// for a degree-`N` polynomial: `C(N-i, nu) + q^(N/2-nu) C(N-i, N-nu)`.
pub fn moment_equation(big_n: usize, nu: usize, q: &ExactNumber, sqrt_q: Option<&ExactNumber>) -> Result<Vec<ExactNumber>> {
    let h = half_power(big_n, nu, q, sqrt_q)?;
    (0..=big_n)
        .map(|i| {
            let top = (big_n - i) as i64;
            let a = ExactNumber::from_bigint(binomial(top, nu as i64));
            let b = ExactNumber::from_bigint(binomial(top, (big_n - nu) as i64));
            a.try_add(&h.try_mul(&b)?)
        })
        .collect()
}

/// Whether all binomial-moment identities of an anti-invariant enumerator
/// hold for `W` at `q`.
pub fn moment_identity_check(w: &HomogPoly, q: &ExactNumber, sqrt_q: Option<&ExactNumber>) -> Result<bool> {
    crate::poly::check_q(q)?;
    let big_n = w.degree();
    for nu in 0..=big_n {
        let e = moment_equation(big_n, nu, q, sqrt_q)?;
        let mut acc = ExactNumber::zero();
        for (c, a) in e.iter().zip(w.coeffs()) {
            acc = acc.try_add(&c.try_mul(a)?)?;
        }
        if !acc.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One admissible `q` found by [`search`], with the enumerators it yields.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discovery {
    pub candidate: CandidateQ,
    /// `q` is not already a root of the determinant one size down.
    pub new: bool,
    pub enumerators: Vec<HomogPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub degree: usize,
    pub n: usize,
    pub parity: Parity,
    pub determinant: UniPoly,
    pub factorization: CandidateSet,
    pub discoveries: Vec<Discovery>,
}

/// Determinant, candidate `q`, and construction for one total degree.
pub fn search(degree: usize) -> Result<SearchReport> {
    let (n, parity) = Parity::split_degree(degree);
    if n == 0 {
        return Err(Error::domain(format!("degree {degree} is too small to search")));
    }
    let det = poly_det(&moment_matrix(n, parity));
    let previous = (n > 1).then(|| poly_det(&moment_matrix(n - 1, parity)));
    let factorization = candidate_q(&det, parity);
    let mut discoveries = Vec::new();
    for cand in &factorization.candidates {
        let x = match parity {
            Parity::Even => &cand.q,
            Parity::Odd => cand.t.as_ref().expect("odd candidates carry t"),
        };
        let new = previous.as_ref().map_or(true, |p| !p.eval(x).is_zero());
        let enumerators = construct_enumerator(n, parity, cand)?;
        discoveries.push(Discovery { candidate: cand.clone(), new, enumerators });
    }
    Ok(SearchReport { degree, n, parity, determinant: det, factorization, discoveries })
}
