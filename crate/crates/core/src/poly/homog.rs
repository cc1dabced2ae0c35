use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::unipoly::{coeff_factor, join_terms, signed_coeff};
use crate::exactnum::{common_field, ExactNumber};
use crate::{Error, Result};

/// Homogeneous polynomial `sum_i A_i x^(n-i) y^i` of degree `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomogPoly {
    coeffs: Vec<ExactNumber>,
}

impl HomogPoly {
    /// Build from `A_0..A_n`. Panics on an empty vector.
    pub fn new(coeffs: Vec<ExactNumber>) -> Self {
        assert!(!coeffs.is_empty(), "a homogeneous polynomial needs n+1 coefficients");
        HomogPoly { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![ExactNumber::zero(); n + 1])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| ExactNumber::from_int(c)).collect())
    }

    /// Degree-`n` polynomial with the listed `(i, A_i)` entries, zero elsewhere.
    pub fn from_sparse(n: usize, entries: &[(usize, ExactNumber)]) -> Self {
        let mut coeffs = vec![ExactNumber::zero(); n + 1];
        for (i, c) in entries {
            coeffs[*i] = c.clone();
        }
        Self::new(coeffs)
    }

    /// `x^n`.
    pub fn x_pow(n: usize) -> Self {
        Self::from_sparse(n, &[(0, ExactNumber::one())])
    }

    /// `x^2 + (q-1) y^2`.
    pub fn w2(q: &ExactNumber) -> Self {
        Self::new(vec![ExactNumber::one(), ExactNumber::zero(), q - &ExactNumber::one()])
    }

    /// `a x + b y`.
    pub fn linear(a: ExactNumber, b: ExactNumber) -> Self {
        Self::new(vec![a, b])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ExactNumber] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<ExactNumber> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &ExactNumber {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(ExactNumber::is_zero)
    }

    pub fn field(&self) -> Result<Option<u64>> {
        common_field(&self.coeffs)
    }

    /// Smallest `i >= 1` with `A_i != 0`.
    pub fn min_weight(&self) -> Option<usize> {
        (1..self.coeffs.len()).find(|&i| !self.coeffs[i].is_zero())
    }

    /// gcd of all indices `i >= 1` with `A_i != 0` (0 if there are none).
    pub fn index_gcd(&self) -> usize {
        (1..self.coeffs.len())
            .filter(|&i| !self.coeffs[i].is_zero())
            .fold(0, |g, i| g.gcd(&i))
    }

    pub fn scale(&self, c: &ExactNumber) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_degree(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<_>>()?;
        Ok(Self::new(coeffs))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let mut out = vec![ExactNumber::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].try_add(&a.try_mul(b)?)?;
                }
            }
        }
        Ok(Self::new(out))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::x_pow(0);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn try_eval(&self, x: &ExactNumber, y: &ExactNumber) -> Result<ExactNumber> {
        let n = self.degree();
        let mut xs = vec![ExactNumber::one(); n + 1];
        let mut ys = vec![ExactNumber::one(); n + 1];
        for k in 1..=n {
            xs[k] = xs[k - 1].try_mul(x)?;
            ys[k] = ys[k - 1].try_mul(y)?;
        }
        let mut acc = ExactNumber::zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            acc = acc.try_add(&a.try_mul(&xs[n - i])?.try_mul(&ys[i])?)?;
        }
        Ok(acc)
    }

    pub fn eval(&self, x: &ExactNumber, y: &ExactNumber) -> ExactNumber {
        self.try_eval(x, y).unwrap_or_else(|e| panic!("{e}"))
    }

    fn check_degree(&self, other: &Self) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(())
    }
}

/// Expand `sum_k scalar_k * prod(factors_k)`. Every product must have the
/// same total degree; an empty factor list stands for the constant 1.
pub fn homog_combine(terms: &[(ExactNumber, Vec<HomogPoly>)]) -> Result<HomogPoly> {
    let mut acc: Option<HomogPoly> = None;
    for (scalar, factors) in terms {
        let mut prod = HomogPoly::x_pow(0);
        for f in factors {
            prod = prod.try_mul(f)?;
        }
        let term = HomogPoly::new(
            prod.coeffs
                .iter()
                .map(|c| c.try_mul(scalar))
                .collect::<Result<_>>()?,
        );
        acc = Some(match acc {
            None => term,
            Some(a) => a.try_add(&term)?,
        });
    }
    acc.ok_or_else(|| Error::domain("empty linear combination"))
}

impl Add for &HomogPoly {
    type Output = HomogPoly;
    fn add(self, rhs: &HomogPoly) -> HomogPoly {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &HomogPoly {
    type Output = HomogPoly;
    fn sub(self, rhs: &HomogPoly) -> HomogPoly {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &HomogPoly {
    type Output = HomogPoly;
    fn mul(self, rhs: &HomogPoly) -> HomogPoly {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &HomogPoly {
    type Output = HomogPoly;
    fn neg(self) -> HomogPoly {
        HomogPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

fn power(v: char, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{k}"),
    }
}

impl fmt::Display for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = signed_coeff(c);
            let mono = [power('x', n - i), power('y', i)]
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect::<Vec<_>>()
                .join("*");
            let text = match (mono.is_empty(), mag.is_one()) {
                (true, _) => coeff_factor(&mag),
                (false, true) => mono,
                (false, false) => format!("{}*{}", coeff_factor(&mag), mono),
            };
            terms.push((neg, text));
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&join_terms(&terms))
    }
}

#[derive(Serialize, Deserialize)]
struct HomogJson {
    n: usize,
    coeffs: Vec<ExactNumber>,
}

impl Serialize for HomogPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HomogJson {
            n: self.degree(),
            coeffs: self.coeffs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HomogPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = HomogJson::deserialize(d)?;
        if raw.coeffs.len() != raw.n + 1 {
            return Err(serde::de::Error::custom(format!(
                "expected {} coefficients for degree {}, found {}",
                raw.n + 1,
                raw.n,
                raw.coeffs.len()
            )));
        }
        Ok(HomogPoly::new(raw.coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi4() -> HomogPoly {
        HomogPoly::from_ints(&[1, 0, -6, 0, 1])
    }

    #[test]
    fn products_and_combinations() {
        let w22 = HomogPoly::w2(&ExactNumber::from_int(2));
        assert_eq!(&w22 * &phi4(), HomogPoly::from_ints(&[1, 0, -5, 0, -5, 0, 1]));
        let w12 = homog_combine(&[
            (ExactNumber::from_frac(9, 8), vec![w22.pow(4), phi4()]),
            (ExactNumber::from_frac(-1, 8), vec![phi4(), phi4(), phi4()]),
        ])
        .unwrap();
        let mut expect = vec![0; 13];
        expect[0] = 1;
        expect[4] = -33;
        expect[8] = -33;
        expect[12] = 1;
        assert_eq!(w12, HomogPoly::from_ints(&expect));
        assert_eq!(w12.to_string(), "x^12 - 33*x^8*y^4 - 33*x^4*y^8 + y^12");
        assert_eq!(homog_combine(&[(ExactNumber::one(), vec![phi4()])]).unwrap(), phi4());
    }

    #[test]
    fn mixed_degrees_are_rejected() {
        let r = homog_combine(&[
            (ExactNumber::one(), vec![phi4()]),
            (ExactNumber::one(), vec![HomogPoly::x_pow(2)]),
        ]);
        assert!(matches!(r, Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn json_shape() {
        let w = HomogPoly::new(vec![
            ExactNumber::one(),
            ExactNumber::zero(),
            "-50+20*sqrt(5)".parse().unwrap(),
        ]);
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"n":2,"coeffs":["1","0","-50+20*sqrt(5)"]}"#);
        assert_eq!(serde_json::from_str::<HomogPoly>(&s).unwrap(), w);
        assert!(serde_json::from_str::<HomogPoly>(r#"{"n":3,"coeffs":["1"]}"#).is_err());
        assert_eq!(w.to_string(), "x^2 + (-50+20*sqrt(5))*y^2");
    }

    #[test]
    fn weights() {
        assert_eq!(phi4().min_weight(), Some(2));
        assert_eq!(phi4().index_gcd(), 2);
        assert_eq!(HomogPoly::x_pow(5).min_weight(), None);
    }
}
