use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::exactnum::{common_field, ExactNumber};
use crate::{Error, Result};

/// Dense univariate polynomial over [`ExactNumber`].
///
/// `coeffs[i]` multiplies `var^i`; trailing zeros are trimmed so the zero
/// polynomial has no coefficients. The variable label is cosmetic and does
/// not take part in equality.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct UniPoly {
    var: char,
    coeffs: Vec<ExactNumber>,
}

impl PartialEq for UniPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for UniPoly {}

impl UniPoly {
    pub fn new(mut coeffs: Vec<ExactNumber>, var: char) -> Self {
        while coeffs.last().is_some_and(ExactNumber::is_zero) {
            coeffs.pop();
        }
        UniPoly { var, coeffs }
    }

    pub fn zero(var: char) -> Self {
        UniPoly { var, coeffs: vec![] }
    }

    pub fn one(var: char) -> Self {
        Self::constant(ExactNumber::one(), var)
    }

    pub fn constant(c: ExactNumber, var: char) -> Self {
        Self::new(vec![c], var)
    }

    /// `c * var^k`.
    pub fn monomial(c: ExactNumber, k: usize, var: char) -> Self {
        let mut coeffs = vec![ExactNumber::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs, var)
    }

    /// The polynomial `var` itself.
    pub fn identity(var: char) -> Self {
        Self::monomial(ExactNumber::one(), 1, var)
    }

    pub fn from_ints(coeffs: &[i64], var: char) -> Self {
        Self::new(coeffs.iter().map(|&c| ExactNumber::from_int(c)).collect(), var)
    }

    pub fn from_rationals(coeffs: Vec<BigRational>, var: char) -> Self {
        Self::new(coeffs.into_iter().map(ExactNumber::from_rational).collect(), var)
    }

    /// Expand `scale * prod(factors)`.
    pub fn product<'a>(scale: ExactNumber, factors: impl IntoIterator<Item = &'a UniPoly>, var: char) -> Self {
        factors
            .into_iter()
            .fold(Self::constant(scale, var), |acc, f| &acc * f)
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn with_var(mut self, var: char) -> Self {
        self.var = var;
        self
    }

    pub fn coeffs(&self) -> &[ExactNumber] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> ExactNumber {
        self.coeffs.get(i).cloned().unwrap_or_else(ExactNumber::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&ExactNumber> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(ExactNumber::is_rational)
    }

    pub fn rational_coeffs(&self) -> Option<Vec<BigRational>> {
        self.coeffs
            .iter()
            .map(|c| c.as_rational().cloned())
            .collect()
    }

    /// Common quadratic field of the coefficients.
    pub fn field(&self) -> Result<Option<u64>> {
        common_field(&self.coeffs)
    }

    pub fn scale(&self, c: &ExactNumber) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect(), self.var)
    }

    /// `p(c * var)`.
    pub fn scale_var(&self, c: &ExactNumber) -> Self {
        let mut pow = ExactNumber::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pow);
            pow = &pow * c;
        }
        Self::new(out, self.var)
    }

    pub fn eval(&self, x: &ExactNumber) -> ExactNumber {
        self.try_eval(x).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn try_eval(&self, x: &ExactNumber) -> Result<ExactNumber> {
        let mut acc = ExactNumber::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.try_mul(x)?.try_add(c)?;
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &ExactNumber::from_int(i as i64))
            .collect();
        Self::new(coeffs, self.var)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.var), |acc, _| &acc * self)
    }

    /// Euclidean division over the coefficient field.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        let lead_inv = divisor.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(self.var), self.clone()));
        }
        let mut quot = vec![ExactNumber::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].try_mul(&lead_inv)?;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].try_sub(&c.try_mul(dc)?)?;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot, self.var), Self::new(rem, self.var)))
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        match self.div_rem(divisor) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().expect("leading coefficient is nonzero")),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).unwrap_or_else(|e| panic!("{e}"));
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors (monic).
    pub fn square_free_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return Self::one(self.var);
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    /// Yun's square-free decomposition: `self = c * prod f_k^k` with each
    /// `f_k` monic and square-free. Returns `(c, [(f_k, k)])` with trivial
    /// factors omitted.
    pub fn square_free_decomposition(&self) -> (ExactNumber, Vec<(UniPoly, usize)>) {
        let Some(lead) = self.leading().cloned() else {
            return (ExactNumber::zero(), vec![]);
        };
        let f = self.monic();
        let mut out = Vec::new();
        if f.degree() == Some(0) {
            return (lead, out);
        }
        let fp = f.derivative();
        let mut a = f.gcd(&fp);
        let mut b = f.exact_div(&a).expect("gcd divides");
        let mut c = fp.exact_div(&a).expect("gcd divides");
        let mut d = &c - &b.derivative();
        let mut k = 1;
        while b.degree().unwrap_or(0) > 0 {
            a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), k));
            }
            b = b.exact_div(&a).expect("gcd divides");
            c = d.exact_div(&a).expect("gcd divides");
            d = &c - &b.derivative();
            k += 1;
        }
        (lead, out)
    }
}

macro_rules! poly_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&UniPoly> for &UniPoly {
            type Output = UniPoly;
            fn $method(self, rhs: &UniPoly) -> UniPoly {
                let f: fn(&UniPoly, &UniPoly) -> UniPoly = $body;
                f(self, rhs)
            }
        }
        impl $tr<UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $method(self, rhs: UniPoly) -> UniPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, |a, b| {
    let n = a.coeffs.len().max(b.coeffs.len());
    let coeffs = (0..n).map(|i| a.coeff(i) + b.coeff(i)).collect();
    UniPoly::new(coeffs, a.var)
});

poly_binop!(Sub, sub, |a, b| {
    let n = a.coeffs.len().max(b.coeffs.len());
    let coeffs = (0..n).map(|i| a.coeff(i) - b.coeff(i)).collect();
    UniPoly::new(coeffs, a.var)
});

poly_binop!(Mul, mul, |a, b| {
    if a.is_zero() || b.is_zero() {
        return UniPoly::zero(a.var);
    }
    let mut out = vec![ExactNumber::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    UniPoly::new(out, a.var)
});

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect(), self.var)
    }
}

/// Coefficient text suitable for a product with a monomial: irrational
/// values are parenthesised.
pub(crate) fn coeff_factor(c: &ExactNumber) -> String {
    if c.is_rational() {
        c.to_string()
    } else {
        format!("({c})")
    }
}

/// Join signed terms as `a - b + c`, given each term as (negative?, text).
pub(crate) fn join_terms(terms: &[(bool, String)]) -> String {
    let mut out = String::new();
    for (k, (neg, text)) in terms.iter().enumerate() {
        if k == 0 {
            if *neg {
                out.push('-');
            }
        } else {
            out.push_str(if *neg { " - " } else { " + " });
        }
        out.push_str(text);
    }
    out
}

/// Split a coefficient into a leading sign and a magnitude text. Irrational
/// coefficients keep their own signs inside parentheses.
pub(crate) fn signed_coeff(c: &ExactNumber) -> (bool, ExactNumber) {
    if c.is_rational() && c.is_negative() {
        (true, -c)
    } else {
        (false, c.clone())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = signed_coeff(c);
            let mono = match i {
                0 => String::new(),
                1 => self.var.to_string(),
                _ => format!("{}^{}", self.var, i),
            };
            let text = if mono.is_empty() {
                coeff_factor(&mag)
            } else if mag.is_one() {
                mono
            } else {
                format!("{}*{}", coeff_factor(&mag), mono)
            };
            terms.push((neg, text));
        }
        f.write_str(&join_terms(&terms))
    }
}
