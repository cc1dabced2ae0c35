//! Integer helpers for radicals: square-free splitting and exact square roots.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Primes below this bound are removed by trial division. A cofactor that
/// survives is classified exactly as long as it is below `TRIAL_LIMIT^3`.
const TRIAL_LIMIT: u64 = 1 << 20;

/// Splits `n = k^2 * m` with `m` square-free.
pub(crate) fn square_free_split(n: &BigUint) -> Result<(BigUint, BigUint)> {
    if n.is_zero() {
        return Ok((BigUint::zero(), BigUint::one()));
    }
    if let Some(small) = n.to_u64() {
        let (k, m) = square_free_split_u64(small)?;
        return Ok((BigUint::from(k), BigUint::from(m)));
    }
    let mut rest = n.clone();
    let mut k = BigUint::one();
    let mut m = BigUint::one();
    let mut p: u64 = 2;
    while p <= TRIAL_LIMIT {
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0u32;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            k *= bp.pow(e / 2);
            if e % 2 == 1 {
                m *= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    finish_cofactor(rest, k, m, p)
}

fn square_free_split_u64(n: u64) -> Result<(u64, u64)> {
    let mut rest = n;
    let mut k: u64 = 1;
    let mut m: u64 = 1;
    let mut p: u64 = 2;
    while p <= TRIAL_LIMIT && p.saturating_mul(p) <= rest {
        let mut e = 0u32;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            k *= p.pow(e / 2);
            if e % 2 == 1 {
                m *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let (k2, m2) = finish_cofactor(BigUint::from(rest), BigUint::from(k), BigUint::from(m), p)?;
    Ok((
        k2.to_u64().ok_or_else(|| Error::domain("radical coefficient overflow"))?,
        m2.to_u64().ok_or_else(|| Error::domain("radicand overflow"))?,
    ))
}

fn finish_cofactor(rest: BigUint, mut k: BigUint, mut m: BigUint, p: u64) -> Result<(BigUint, BigUint)> {
    if rest.is_one() {
        return Ok((k, m));
    }
    let bp = BigUint::from(p);
    if &bp * &bp > rest {
        // no factor below p, so rest is prime
        m *= rest;
        return Ok((k, m));
    }
    let r = rest.sqrt();
    if &r * &r == rest {
        k *= r;
        return Ok((k, m));
    }
    let limit = BigUint::from(TRIAL_LIMIT);
    if rest < &limit * &limit * &limit {
        m *= rest;
        return Ok((k, m));
    }
    Err(Error::domain(format!(
        "cannot certify the square-free part of {rest}"
    )))
}

/// Exact square root of a non-negative rational, when it is rational.
pub(crate) fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let num = r.numer().to_biguint()?;
    let den = r.denom().to_biguint()?;
    let sn = num.sqrt();
    let sd = den.sqrt();
    if &sn * &sn == num && &sd * &sd == den {
        Some(BigRational::new(BigInt::from(sn), BigInt::from(sd)))
    } else {
        None
    }
}

pub(crate) fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

/// `floor(x * 2^k) / 2^k`.
pub(crate) fn floor_dyadic(x: &BigRational, k: u64) -> BigRational {
    let scaled = x * BigRational::from_integer(pow2(k));
    BigRational::new(scaled.floor().to_integer(), pow2(k))
}

/// `ceil(x * 2^k) / 2^k`.
pub(crate) fn ceil_dyadic(x: &BigRational, k: u64) -> BigRational {
    let scaled = x * BigRational::from_integer(pow2(k));
    BigRational::new(scaled.ceil().to_integer(), pow2(k))
}

/// Lower and upper dyadic bounds for `sqrt(x)` with denominator `2^k`.
pub(crate) fn sqrt_bounds(x: &BigRational, k: u64) -> (BigRational, BigRational) {
    debug_assert!(!x.is_negative());
    let four_k = BigRational::from_integer(pow2(2 * k));
    let scaled = x * four_k;
    let lo_int = scaled.floor().to_integer();
    let hi_int = scaled.ceil().to_integer();
    let lo = lo_int.sqrt();
    let hi_root = hi_int.sqrt();
    let hi = if &hi_root * &hi_root == hi_int {
        hi_root
    } else {
        hi_root + 1
    };
    (BigRational::new(lo, pow2(k)), BigRational::new(hi, pow2(k)))
}

/// `floor(log2 |x|)` for a nonzero rational (approximate by at most one).
pub(crate) fn log2_floor(x: &BigRational) -> i64 {
    let n = x.numer().abs().bits() as i64;
    let d = x.denom().bits() as i64;
    n - d
}
