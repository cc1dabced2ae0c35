use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::radical::{ceil_dyadic, floor_dyadic, log2_floor, sqrt_bounds};

/// A closed interval `[lo, hi]` with exact rational endpoints.
///
/// Endpoints produced by rounding are always rounded outward, so an interval
/// computed from exact data certainly contains the true value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: BigRational,
    hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Sign of every point of the interval, or `None` when it straddles zero.
    pub fn sign(&self) -> Option<i32> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    /// Upper bound on `|x|` over the interval.
    pub fn mag(&self) -> BigRational {
        let a = self.lo.abs();
        let b = self.hi.abs();
        if a > b {
            a
        } else {
            b
        }
    }

    /// Lower bound on `|x|` over the interval.
    pub fn mig(&self) -> BigRational {
        if self.contains_zero() {
            BigRational::zero()
        } else if self.lo.is_positive() {
            self.lo.clone()
        } else {
            self.hi.abs()
        }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval::new(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    pub fn neg(&self) -> Interval {
        Interval::new(-&self.hi, -&self.lo)
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let c = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval::new(lo, hi)
    }

    pub fn scale(&self, k: &BigRational) -> Interval {
        self.mul(&Interval::point(k.clone()))
    }

    /// Outward rounding of both endpoints to the grid `2^-bits * 2^e` where
    /// `e` tracks the magnitude, keeping roughly `bits` significant bits.
    pub fn round_out(&self, bits: u64) -> Interval {
        let m = self.mag();
        let k = if m.is_zero() {
            bits as i64
        } else {
            bits as i64 - log2_floor(&m)
        };
        let k = k.max(0) as u64;
        Interval::new(floor_dyadic(&self.lo, k), ceil_dyadic(&self.hi, k))
    }

    /// Enclosure of `sqrt(x)` for the non-negative part of the interval.
    /// Negative lower endpoints are clamped to zero; returns `None` when the
    /// whole interval is negative.
    pub fn sqrt(&self, bits: u64) -> Option<Interval> {
        if self.hi.is_negative() {
            return None;
        }
        let lo = if self.lo.is_negative() {
            BigRational::zero()
        } else {
            self.lo.clone()
        };
        let mag = log2_floor(&self.hi.clone().max(BigRational::from_integer(1.into())));
        let k = (bits as i64 + 2 - mag / 2).max(2) as u64;
        let (l, _) = sqrt_bounds(&lo, k);
        let (_, h) = sqrt_bounds(&self.hi, k);
        Some(Interval::new(l, h))
    }

    /// `[lo, hi]` in decimal with `digits` fractional digits, rounded outward.
    pub fn to_decimal(&self, digits: usize) -> String {
        format!("[{}, {}]", decimal(&self.lo, digits, false), decimal(&self.hi, digits, true))
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }
}

fn decimal(x: &BigRational, digits: usize, up: bool) -> String {
    let scale = BigRational::from_integer(num_bigint::BigInt::from(10).pow(digits as u32));
    let y = x * &scale;
    let r = if up { y.ceil() } else { y.floor() }.to_integer();
    let neg = r.is_negative();
    let mut s = r.abs().to_string();
    if s.len() <= digits {
        s = "0".repeat(digits + 1 - s.len()) + &s;
    }
    let (int, frac) = s.split_at(s.len() - digits);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn arithmetic_contains_results() {
        let a = Interval::new(r(1, 1), r(2, 1));
        let b = Interval::new(r(-3, 1), r(1, 2));
        let p = a.mul(&b);
        assert_eq!(p, Interval::new(r(-6, 1), r(1, 1)));
        assert_eq!(a.sub(&b), Interval::new(r(1, 2), r(5, 1)));
        assert!(p.contains_zero());
        assert_eq!(a.sign(), Some(1));
    }

    #[test]
    fn sqrt_encloses() {
        let x = Interval::point(r(2, 1));
        let s = x.sqrt(64).unwrap();
        assert!(s.lo() * s.lo() <= r(2, 1));
        assert!(s.hi() * s.hi() >= r(2, 1));
        assert!(s.width() < r(1, 1 << 60));
        assert_eq!(s.to_decimal(5), "[1.41421, 1.41422]");
        assert_eq!(Interval::new(r(-1, 3), r(1, 8)).to_decimal(2), "[-0.34, 0.13]");
    }
}
