//! Exact scalars: rationals and elements `a + b*sqrt(d)` of real quadratic
//! fields.
//!
//! An [`ExactNumber`] is always kept in canonical form: the radicand `d` is
//! square-free and at least 2, and it is dropped whenever the irrational
//! part is zero. Equality is therefore structural. Two numbers can be
//! combined when at least one is rational or both share the same `d`;
//! the checked `try_*` methods report a mismatch, the operator traits panic.

mod interval;
mod literal;
pub(crate) mod radical;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use interval::Interval;
pub use literal::parse_exact_literal;

use crate::{Error, Result};
use radical::{ceil_dyadic, floor_dyadic, rational_sqrt, sqrt_bounds, square_free_split};

/// Arbitrary-precision rational with positive denominator in lowest terms.
pub type Rational = BigRational;

/// Real number `a + b*sqrt(d)` with `a, b` rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactNumber {
    a: BigRational,
    b: BigRational,
    d: Option<u64>,
}

pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Combine two field tags, failing on two different radicands.
pub fn join_fields(x: Option<u64>, y: Option<u64>) -> Result<Option<u64>> {
    match (x, y) {
        (Some(a), Some(b)) if a != b => Err(Error::FieldMismatch(a, b)),
        (Some(a), _) | (_, Some(a)) => Ok(Some(a)),
        _ => Ok(None),
    }
}

/// Common field of a collection of numbers.
pub fn common_field<'a>(it: impl IntoIterator<Item = &'a ExactNumber>) -> Result<Option<u64>> {
    it.into_iter().try_fold(None, |acc, x| join_fields(acc, x.d))
}

impl ExactNumber {
    /// `a + b*sqrt(radicand)`, normalizing the radicand to square-free form.
    pub fn new(a: BigRational, b: BigRational, radicand: u64) -> Result<Self> {
        if radicand == 0 || b.is_zero() {
            return Ok(Self::from_rational(a));
        }
        let (k, m) = square_free_split(&BigUint::from(radicand))?;
        let k = BigRational::from_integer(BigInt::from(k));
        let m = m.to_u64().expect("square-free part of a u64 fits in u64");
        if m == 1 {
            Ok(Self::from_rational(a + b * k))
        } else {
            Ok(Self::make(a, b * k, Some(m)))
        }
    }

    fn make(a: BigRational, b: BigRational, d: Option<u64>) -> Self {
        if b.is_zero() {
            ExactNumber { a, b, d: None }
        } else {
            ExactNumber { a, b, d }
        }
    }

    pub fn from_rational(a: BigRational) -> Self {
        ExactNumber {
            a,
            b: BigRational::zero(),
            d: None,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    /// `sqrt(radicand)` in canonical form.
    pub fn sqrt_of(radicand: u64) -> Result<Self> {
        Self::new(BigRational::zero(), BigRational::one(), radicand)
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    /// Square-free radicand, `None` for rational values.
    pub fn radicand(&self) -> Option<u64> {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.d.is_none()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.a.is_integer()
    }

    fn d_rat(&self) -> BigRational {
        BigRational::from_integer(self.d.unwrap_or(0).into())
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        let d = join_fields(self.d, rhs.d)?;
        Ok(Self::make(&self.a + &rhs.a, &self.b + &rhs.b, d))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        let d = join_fields(self.d, rhs.d)?;
        Ok(Self::make(&self.a - &rhs.a, &self.b - &rhs.b, d))
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        let d = join_fields(self.d, rhs.d)?;
        if self.b.is_zero() && rhs.b.is_zero() {
            return Ok(Self::from_rational(&self.a * &rhs.a));
        }
        if self.b.is_zero() {
            return Ok(Self::make(&self.a * &rhs.a, &self.a * &rhs.b, d));
        }
        if rhs.b.is_zero() {
            return Ok(Self::make(&self.a * &rhs.a, &self.b * &rhs.a, d));
        }
        let dr = BigRational::from_integer(d.unwrap().into());
        let a = &self.a * &rhs.a + &self.b * &rhs.b * dr;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Ok(Self::make(a, b, d))
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        join_fields(self.d, rhs.d)?;
        self.try_mul(&rhs.inv()?)
    }

    /// Multiplicative inverse via the conjugate.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.b.is_zero() {
            return Ok(Self::from_rational(self.a.recip()));
        }
        let n = self.norm();
        Ok(Self::make(&self.a / &n, -&self.b / &n, self.d))
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Galois conjugate `a - b*sqrt(d)`.
    pub fn conj(&self) -> Self {
        Self::make(self.a.clone(), -&self.b, self.d)
    }

    /// Field norm `a^2 - d b^2`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * self.d_rat()
    }

    /// Trace `2a`.
    pub fn trace(&self) -> BigRational {
        &self.a * BigRational::from_integer(2.into())
    }

    /// Exact sign in `{-1, 0, 1}`, decided by comparing `a^2` with `b^2 d`.
    pub fn signum(&self) -> i32 {
        let sa = sgn(&self.a);
        let sb = sgn(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * self.d_rat();
        if a2 > b2d {
            sa
        } else {
            sb
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact comparison of two values in a common field.
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        Ok(self.try_sub(other)?.signum().cmp(&0))
    }

    /// Comparison that also works across different fields, by refining
    /// interval enclosures until they separate.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        if let Ok(o) = self.try_cmp(other) {
            return o;
        }
        // distinct fields: the values are different irrationals
        let mut bits = 64;
        loop {
            let x = self.approx(bits);
            let y = other.approx(bits);
            if x.hi() < y.lo() {
                return Ordering::Less;
            }
            if y.hi() < x.lo() {
                return Ordering::Greater;
            }
            bits *= 2;
        }
    }

    /// Non-negative square root inside the supported tower, if it exists.
    ///
    /// A rational input may land in `Q(sqrt m)`; an irrational input of
    /// `Q(sqrt d)` can only have its square root in the same field.
    pub fn sqrt_in_field(&self) -> Result<Option<Self>> {
        if self.is_negative() {
            return Err(Error::domain(format!("square root of negative number {self}")));
        }
        if self.is_zero() {
            return Ok(Some(Self::zero()));
        }
        if self.is_rational() {
            let num = self.a.numer().to_biguint().expect("positive");
            let den = self.a.denom().to_biguint().expect("positive");
            let (k, m) = square_free_split(&(num * &den))?;
            let coef = BigRational::new(BigInt::from(k), BigInt::from(den));
            if m == BigUint::one() {
                return Ok(Some(Self::from_rational(coef)));
            }
            let m = m
                .to_u64()
                .ok_or_else(|| Error::domain("radicand does not fit in 64 bits"))?;
            return Ok(Some(Self::make(BigRational::zero(), coef, Some(m))));
        }
        let Some(n) = rational_sqrt(&self.norm()) else {
            return Ok(None);
        };
        let two = BigRational::from_integer(2.into());
        for cand in [(&self.a + &n) / &two, (&self.a - &n) / &two] {
            let Some(u) = rational_sqrt(&cand) else { continue };
            if u.is_zero() {
                continue;
            }
            let v = &self.b / (&two * &u);
            let mut s = Self::make(u, v, self.d);
            if s.is_negative() {
                s = -s;
            }
            if &(&s * &s) == self {
                return Ok(Some(s));
            }
        }
        Ok(None)
    }

    /// Interval enclosure of width at most `2^(1-bits) * max(1, |x|)`.
    pub fn approx(&self, precision_bits: u32) -> Interval {
        let bits = precision_bits.max(32) as u64;
        if self.b.is_zero() {
            if is_dyadic(&self.a) {
                return Interval::point(self.a.clone());
            }
            return Interval::new(floor_dyadic(&self.a, bits), ceil_dyadic(&self.a, bits));
        }
        let b_bits = self.b.numer().bits() + self.b.denom().bits();
        let k = bits + b_bits + 4;
        let (slo, shi) = sqrt_bounds(&self.d_rat(), k);
        let (lo, hi) = if self.b.is_positive() {
            (&self.a + &self.b * slo, &self.a + &self.b * shi)
        } else {
            (&self.a + &self.b * shi, &self.a + &self.b * slo)
        };
        Interval::new(floor_dyadic(&lo, bits + 1), ceil_dyadic(&hi, bits + 1))
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        match self.d {
            None => a,
            Some(d) => a + self.b.to_f64().unwrap_or(f64::NAN) * (d as f64).sqrt(),
        }
    }

    /// Minimal polynomial over `Q` as ascending monic coefficients
    /// (`[-x, 1]` for rationals, `[norm, -trace, 1]` otherwise).
    pub fn minimal_polynomial(&self) -> Vec<BigRational> {
        if self.is_rational() {
            vec![-self.a.clone(), BigRational::one()]
        } else {
            vec![self.norm(), -self.trace(), BigRational::one()]
        }
    }
}

fn sgn(x: &BigRational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn is_dyadic(x: &BigRational) -> bool {
    let d = x.denom();
    (d & (d - BigInt::one())).is_zero()
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&ExactNumber> for &ExactNumber {
            type Output = ExactNumber;
            fn $method(self, rhs: &ExactNumber) -> ExactNumber {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<ExactNumber> for ExactNumber {
            type Output = ExactNumber;
            fn $method(self, rhs: ExactNumber) -> ExactNumber {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&ExactNumber> for ExactNumber {
            type Output = ExactNumber;
            fn $method(self, rhs: &ExactNumber) -> ExactNumber {
                (&self).$method(rhs)
            }
        }
        impl $tr<ExactNumber> for &ExactNumber {
            type Output = ExactNumber;
            fn $method(self, rhs: ExactNumber) -> ExactNumber {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &ExactNumber {
    type Output = ExactNumber;
    fn neg(self) -> ExactNumber {
        ExactNumber::make(-&self.a, -&self.b, self.d)
    }
}

impl Neg for ExactNumber {
    type Output = ExactNumber;
    fn neg(self) -> ExactNumber {
        -&self
    }
}

impl From<i64> for ExactNumber {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for ExactNumber {
    fn from(r: BigRational) -> Self {
        Self::from_rational(r)
    }
}

impl fmt::Display for ExactNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&literal::render(self))
    }
}

impl FromStr for ExactNumber {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_exact_literal(s)
    }
}

impl Serialize for ExactNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExactNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Checked arithmetic entry point: `op` applied to `lhs` and `rhs`.
/// `Pow` reads the exponent from `rhs`, which must be an integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Pow,
}

pub fn qx_arith(op: ArithOp, lhs: &ExactNumber, rhs: &ExactNumber) -> Result<ExactNumber> {
    match op {
        ArithOp::Add => lhs.try_add(rhs),
        ArithOp::Sub => lhs.try_sub(rhs),
        ArithOp::Mul => lhs.try_mul(rhs),
        ArithOp::Div => lhs.try_div(rhs),
        ArithOp::Neg => Ok(-lhs),
        ArithOp::Pow => {
            let e = rhs
                .as_rational()
                .filter(|r| r.is_integer())
                .and_then(|r| r.to_integer().to_i64())
                .ok_or_else(|| Error::domain("exponent must be a machine integer"))?;
            lhs.pow(e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(s: &str) -> ExactNumber {
        s.parse().unwrap()
    }

    #[test]
    fn conjugate_product_and_sum() {
        assert_eq!(x("1+sqrt(2)") * x("1-sqrt(2)"), x("-1"));
        assert_eq!(x("4+2*sqrt(2)") + x("4-2*sqrt(2)"), x("8"));
        let s = x("sqrt(5)-1");
        assert_eq!(&s * &s, x("6-2*sqrt(5)"));
    }

    #[test]
    fn mixed_fields_rejected() {
        let e = x("sqrt(2)").try_add(&x("sqrt(3)")).unwrap_err();
        assert!(matches!(e, Error::FieldMismatch(2, 3)));
        assert!(matches!(x("1").try_div(&x("0")), Err(Error::DivisionByZero)));
    }

    #[test]
    fn signs() {
        assert_eq!(x("6-2*sqrt(5)").signum(), 1);
        assert_eq!(x("0").signum(), 0);
        assert_eq!(x("1-sqrt(2)").signum(), -1);
        assert_eq!(x("-3+2*sqrt(2)").signum(), -1);
        assert_eq!(x("-1+sqrt(2)").signum(), 1);
    }

    #[test]
    fn square_roots() {
        assert_eq!(x("4").sqrt_in_field().unwrap(), Some(x("2")));
        assert_eq!(x("6-2*sqrt(5)").sqrt_in_field().unwrap(), Some(x("-1+sqrt(5)")));
        assert_eq!(x("4+2*sqrt(2)").sqrt_in_field().unwrap(), None);
        assert_eq!(x("4/3").sqrt_in_field().unwrap(), Some(x("2/3*sqrt(3)")));
        assert_eq!(x("2").sqrt_in_field().unwrap(), Some(x("sqrt(2)")));
        assert_eq!(x("3+2*sqrt(2)").sqrt_in_field().unwrap(), Some(x("1+sqrt(2)")));
        assert!(x("-1").sqrt_in_field().is_err());
    }

    #[test]
    fn radicand_normalization() {
        assert_eq!(ExactNumber::sqrt_of(8).unwrap(), x("2*sqrt(2)"));
        assert_eq!(ExactNumber::sqrt_of(9).unwrap(), x("3"));
        assert_eq!(ExactNumber::sqrt_of(12).unwrap().radicand(), Some(3));
    }

    #[test]
    fn approximations() {
        let i = x("4/3").approx(64);
        assert!(i.contains(&rat(4, 3)));
        assert!(i.width() <= rat(4, 3) * BigRational::new(1.into(), BigInt::one() << 63));
        let j = x("4+2*sqrt(2)").approx(64);
        assert!((j.to_f64() - 6.828_427_124_746_19).abs() < 1e-12);
        assert!(j.width() <= rat(7, 1) * BigRational::new(1.into(), BigInt::one() << 63));
        assert_eq!(x("0").approx(64), Interval::point(rat(0, 1)));
    }

    #[test]
    fn powers_and_inverse() {
        let q = x("4+2*sqrt(2)");
        assert_eq!(q.pow(-2).unwrap() * q.pow(2).unwrap(), x("1"));
        assert_eq!(x("2").pow(10).unwrap(), x("1024"));
        assert_eq!(
            qx_arith(ArithOp::Pow, &x("sqrt(2)"), &x("3")).unwrap(),
            x("2*sqrt(2)")
        );
    }

    #[test]
    fn cross_field_ordering() {
        assert_eq!(x("sqrt(2)").cmp_value(&x("sqrt(3)")), Ordering::Less);
        assert_eq!(x("4/3").cmp_value(&x("2-2/5*sqrt(5)")), Ordering::Greater);
    }
}
