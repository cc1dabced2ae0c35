//! Determinants of matrices with polynomial entries over ℚ, by evaluation at
//! integer points, fraction-free elimination, and interpolation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exactnum::ExactNumber;
use crate::poly::UniPoly;
use crate::{Error, Result};

/// Bareiss fraction-free elimination on an integer matrix.
pub(crate) fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let k = m.len();
    if k == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for c in 0..k - 1 {
        if m[c][c].is_zero() {
            let Some(p) = (c + 1..k).find(|&r| !m[r][c].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(c, p);
            sign = -sign;
        }
        for i in c + 1..k {
            for j in c + 1..k {
                let v = &m[c][c] * &m[i][j] - &m[i][c] * &m[c][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[c][c].clone();
    }
    sign * &m[k - 1][k - 1]
}

fn int_coeffs(p: &UniPoly, scale: &BigInt) -> Vec<BigInt> {
    p.coeffs()
        .iter()
        .map(|c| {
            let r = c.as_rational().expect("checked rational") * BigRational::from_integer(scale.clone());
            debug_assert!(r.is_integer());
            r.to_integer()
        })
        .collect()
}

fn eval_int(c: &[BigInt], x: i64) -> BigInt {
    let x = BigInt::from(x);
    c.iter().rev().fold(BigInt::zero(), |acc, a| acc * &x + a)
}

/// Polynomial of degree `<= values.len() - 1` through `(k, values[k])`.
fn interpolate(values: &[BigInt], var: char) -> UniPoly {
    let mut diffs = values.to_vec();
    let mut lead = Vec::with_capacity(values.len());
    for k in 0..values.len() {
        lead.push(diffs[0].clone());
        for i in 0..values.len() - k - 1 {
            diffs[i] = &diffs[i + 1] - &diffs[i];
        }
    }
    let mut acc = vec![BigRational::zero(); values.len()];
    let mut falling = vec![BigInt::one()];
    let mut fact = BigInt::one();
    for (k, dk) in lead.iter().enumerate() {
        if k > 0 {
            fact *= BigInt::from(k);
            let shift = BigInt::from(k - 1);
            let mut next = vec![BigInt::zero(); falling.len() + 1];
            for (i, c) in falling.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * &shift;
            }
            falling = next;
        }
        if dk.is_zero() {
            continue;
        }
        let w = BigRational::new(dk.clone(), fact.clone());
        for (i, c) in falling.iter().enumerate() {
            acc[i] += &w * BigRational::from_integer(c.clone());
        }
    }
    UniPoly::from_rationals(acc, var)
}

/// Exact determinant of a square matrix of polynomials with rational
/// coefficients.
pub fn poly_matrix_det(entries: &[Vec<UniPoly>], var: char) -> Result<UniPoly> {
    let k = entries.len();
    if entries.iter().any(|r| r.len() != k) {
        return Err(Error::domain("determinant of a non-square matrix"));
    }
    if k == 0 {
        return Ok(UniPoly::one(var));
    }
    let mut total_scale = BigInt::one();
    let mut rows = Vec::with_capacity(k);
    let mut bound = 0;
    for row in entries {
        let mut den = BigInt::one();
        for p in row {
            for c in p.coeffs() {
                let r = c.as_rational().ok_or_else(|| {
                    Error::Field("determinant needs entries with rational coefficients".into())
                })?;
                den = den.lcm(r.denom());
            }
        }
        total_scale *= &den;
        let Some(deg) = row.iter().filter_map(UniPoly::degree).max() else {
            return Ok(UniPoly::zero(var));
        };
        bound += deg;
        rows.push(row.iter().map(|p| int_coeffs(p, &den)).collect::<Vec<_>>());
    }
    let values: Vec<BigInt> = (0..=bound as i64)
        .map(|x| {
            let m = rows
                .iter()
                .map(|r| r.iter().map(|c| eval_int(c, x)).collect())
                .collect();
            bareiss(m)
        })
        .collect();
    let det = interpolate(&values, var);
    Ok(det.scale(&ExactNumber::from_rational(BigRational::new(BigInt::one(), total_scale))))
}

/// Product of the integer content and sign: `p = content * primitive` with
/// `primitive` having coprime integer coefficients and positive leading
/// coefficient.
pub(crate) fn primitive_part(p: &UniPoly) -> (BigRational, UniPoly) {
    let coeffs = p.rational_coeffs().expect("rational polynomial");
    let den = coeffs.iter().fold(BigInt::one(), |a, c| a.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let mut g = ints.iter().fold(BigInt::zero(), |a, c| a.gcd(c));
    if g.is_zero() {
        return (BigRational::zero(), p.clone());
    }
    if ints.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    let prim = UniPoly::new(
        ints.iter()
            .map(|c| ExactNumber::from_bigint(c / &g))
            .collect(),
        p.var(),
    );
    (BigRational::new(g, den), prim)
}
