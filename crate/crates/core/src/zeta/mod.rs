//! Zeta polynomials of weight enumerators, their functional equation, and
//! the Riemann hypothesis test.

mod rh;

use serde::{Deserialize, Serialize};

pub use rh::{rh_check, rh_exact, rh_numeric, RHVerdict, RhMethod, RhStatus, Witness, DEFAULT_PRECISION_BITS};

use crate::exactnum::{common_field, ExactNumber};
use crate::linalg::solve_affine;
use crate::moments::binomial;
use crate::poly::{check_q, check_sqrt, transform_unscaled, Duality, HomogPoly, UniPoly};
use crate::{Error, Result};

/// Zeta polynomial `P(T)` together with the genus data it was built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaResult {
    pub p: UniPoly,
    /// `2g = n + 2 - 2d` for (anti-)invariant input, otherwise `deg P`.
    pub two_g: usize,
    pub duality: Duality,
    pub n: usize,
    pub d: usize,
}

impl ZetaResult {
    /// `-1` for anti-invariant, `+1` for invariant source polynomials.
    pub fn sign(&self) -> Option<i32> {
        self.duality.sign()
    }
}

/// `2g = n + 2 - 2d`.
pub fn genus_two_g(w: &HomogPoly) -> Result<usize> {
    let n = w.degree();
    let d = w
        .min_weight()
        .ok_or_else(|| Error::Precondition("no nonzero coefficient A_d with d >= 1".into()))?;
    if 2 * d > n + 2 {
        return Err(Error::Precondition(format!("d = {d} exceeds n/2 + 1 for n = {n}")));
    }
    Ok(n + 2 - 2 * d)
}

/// Duality class from the unscaled transform `u = q^(n/2) W^sigma`, which
/// needs no square root of `q`.
fn duality_from_unscaled(w: &HomogPoly, u: &HomogPoly, q: &ExactNumber) -> Result<Duality> {
    let lambda = u.coeff(0).try_div(w.coeff(0))?;
    if &w.scale(&lambda) != u || lambda.try_mul(&lambda)? != q.pow(w.degree() as i64)? {
        return Ok(Duality::Neither);
    }
    Ok(if lambda.is_negative() {
        Duality::AntiInvariant
    } else {
        Duality::Invariant
    })
}

/// The unique `P(T)` of degree at most `n - d` whose generating series has
/// `(W - x^n)/(q - 1)` as its coefficient of `T^(n-d)`.
pub fn zeta_poly(w: &HomogPoly, q: &ExactNumber) -> Result<ZetaResult> {
    check_q(q)?;
    common_field(w.coeffs().iter().chain(std::iter::once(q)))?;
    let n = w.degree();
    if !w.coeff(0).is_one() {
        return Err(Error::Precondition(format!("coefficient of x^n must be 1, found {}", w.coeff(0))));
    }
    let d = w
        .min_weight()
        .ok_or_else(|| Error::Precondition("no nonzero coefficient A_d with d >= 1".into()))?;
    let u = transform_unscaled(w, q)?;
    let d_perp = u
        .min_weight()
        .ok_or_else(|| Error::Precondition("the transform has no nonzero coefficient beyond x^n".into()))?;
    if d < 2 || d_perp < 2 {
        return Err(Error::Precondition(format!("need d, d_perp >= 2, found d = {d}, d_perp = {d_perp}")));
    }
    let r = n - d;
    let mut c = Vec::with_capacity(r + 1);
    let mut acc = ExactNumber::zero();
    let mut pw = ExactNumber::one();
    for _ in 0..=r {
        acc = acc.try_add(&pw)?;
        c.push(acc.clone());
        pw = pw.try_mul(q)?;
    }
    // basis[s][i]: coefficient of x^(n-i) y^i in C(n, r-s) (x-y)^(r-s) y^(d+s)
    let basis: Vec<Vec<ExactNumber>> = (0..=r)
        .map(|s| {
            let k = r - s;
            let outer = binomial(n as i64, k as i64);
            (0..=n)
                .map(|i| {
                    let Some(a) = i.checked_sub(n - k) else {
                        return ExactNumber::zero();
                    };
                    let v = &outer * binomial(k as i64, a as i64);
                    let v = if a % 2 == 1 { -v } else { v };
                    ExactNumber::from_bigint(v)
                })
                .collect()
        })
        .collect();
    let mut matrix = vec![vec![ExactNumber::zero(); r + 1]; n + 1];
    for (i, row) in matrix.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            for s in j..=r {
                if !basis[s][i].is_zero() {
                    *cell = cell.try_add(&c[s - j].try_mul(&basis[s][i])?)?;
                }
            }
        }
    }
    let q1 = q.try_sub(&ExactNumber::one())?;
    let rhs: Vec<ExactNumber> = (0..=n)
        .map(|i| {
            let a = if i == 0 { ExactNumber::zero() } else { w.coeff(i).clone() };
            a.try_div(&q1)
        })
        .collect::<Result<_>>()?;
    let (sol, kernel) = solve_affine(&matrix, &rhs, r + 1)?
        .ok_or_else(|| Error::Internal("the zeta-polynomial system is inconsistent".into()))?;
    if !kernel.is_empty() {
        return Err(Error::Internal("the zeta-polynomial system is underdetermined".into()));
    }
    let p = UniPoly::new(sol, 'T');
    let duality = duality_from_unscaled(w, &u, q)?;
    let two_g = match duality {
        Duality::Neither => p.degree().unwrap_or(0),
        _ => genus_two_g(w)?,
    };
    Ok(ZetaResult { p, two_g, duality, n, d })
}

/// `q^(g - j)` written as a power of `sqrt_q` when `2g` is odd.
pub(crate) fn q_half_power(twice: i64, q: &ExactNumber, sqrt_q: Option<&ExactNumber>) -> Result<ExactNumber> {
    if twice % 2 == 0 {
        q.pow(twice / 2)
    } else {
        let s = sqrt_q.ok_or_else(|| Error::Field(format!("odd 2g needs sqrt(q) for q = {q}")))?;
        check_sqrt(q, s)?;
        s.pow(twice)
    }
}

/// Whether `p_(2g-j) = sign * q^(g-j) * p_j` for all `j`.
pub fn functional_eq_check(z: &ZetaResult, q: &ExactNumber, sqrt_q: Option<&ExactNumber>) -> Result<bool> {
    let Some(sign) = z.sign() else {
        return Ok(false);
    };
    functional_eq_holds(&z.p, z.two_g, sign, q, sqrt_q)
}

pub(crate) fn functional_eq_holds(
    p: &UniPoly,
    two_g: usize,
    sign: i32,
    q: &ExactNumber,
    sqrt_q: Option<&ExactNumber>,
) -> Result<bool> {
    if two_g % 2 == 1 && sqrt_q.is_none() {
        return Err(Error::Field(format!("odd 2g needs sqrt(q) for q = {q}")));
    }
    if p.degree().unwrap_or(0) > two_g {
        return Ok(false);
    }
    let s = ExactNumber::from_int(sign as i64);
    for j in 0..=two_g {
        let k = q_half_power(two_g as i64 - 2 * j as i64, q, sqrt_q)?;
        let rhs = s.try_mul(&k)?.try_mul(&p.coeff(j))?;
        if p.coeff(two_g - j) != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}
