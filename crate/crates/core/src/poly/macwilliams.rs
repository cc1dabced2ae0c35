use serde::{Deserialize, Serialize};

use super::HomogPoly;
use crate::exactnum::{common_field, ExactNumber};
use crate::{Error, Result};

/// Behaviour of a polynomial under the MacWilliams transform.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Duality {
    AntiInvariant,
    Invariant,
    Neither,
}

impl Duality {
    /// `-1` for anti-invariant, `+1` for invariant.
    pub fn sign(self) -> Option<i32> {
        match self {
            Duality::AntiInvariant => Some(-1),
            Duality::Invariant => Some(1),
            Duality::Neither => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Duality::AntiInvariant => "anti-invariant",
            Duality::Invariant => "invariant",
            Duality::Neither => "neither",
        }
    }
}

impl std::fmt::Display for Duality {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Duality {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "anti-invariant" => Ok(Duality::AntiInvariant),
            "invariant" => Ok(Duality::Invariant),
            "neither" => Ok(Duality::Neither),
            other => Err(Error::UnknownName(other.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightProfile {
    pub d: usize,
    pub d_perp: usize,
    pub divisor_c: usize,
}

pub(crate) fn check_q(q: &ExactNumber) -> Result<()> {
    if !q.is_positive() || q.is_one() {
        return Err(Error::domain(format!("q must satisfy q > 0 and q != 1, got {q}")));
    }
    Ok(())
}

pub(crate) fn check_sqrt(q: &ExactNumber, sqrt_q: &ExactNumber) -> Result<()> {
    if !sqrt_q.is_positive() || &sqrt_q.try_mul(sqrt_q)? != q {
        return Err(Error::Field(format!("{sqrt_q} is not the positive square root of {q}")));
    }
    Ok(())
}

/// `W(x + (q-1) y, x - y)` without the `q^(-n/2)` factor.
pub(crate) fn transform_unscaled(w: &HomogPoly, q: &ExactNumber) -> Result<HomogPoly> {
    let n = w.degree();
    let l1 = HomogPoly::linear(ExactNumber::one(), q.try_sub(&ExactNumber::one())?);
    let l2 = HomogPoly::linear(ExactNumber::one(), ExactNumber::from_int(-1));
    let mut p1 = vec![HomogPoly::x_pow(0)];
    let mut p2 = vec![HomogPoly::x_pow(0)];
    for k in 1..=n {
        p1.push(p1[k - 1].try_mul(&l1)?);
        p2.push(p2[k - 1].try_mul(&l2)?);
    }
    let mut acc = vec![ExactNumber::zero(); n + 1];
    for (i, a) in w.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let term = p1[n - i].try_mul(&p2[i])?;
        for (k, c) in term.coeffs().iter().enumerate() {
            acc[k] = acc[k].try_add(&a.try_mul(c)?)?;
        }
    }
    Ok(HomogPoly::new(acc))
}

/// `q^(-n/2)`; odd `n` needs the positive square root of `q`.
pub(crate) fn half_power_inv(n: usize, q: &ExactNumber, sqrt_q: Option<&ExactNumber>) -> Result<ExactNumber> {
    if let Some(s) = sqrt_q {
        check_sqrt(q, s)?;
    }
    if n % 2 == 0 {
        q.pow(-((n / 2) as i64))
    } else {
        match sqrt_q {
            Some(s) => s.pow(-(n as i64)),
            None => Err(Error::Field(format!(
                "degree {n} is odd: the transform needs sqrt(q) for q = {q}"
            ))),
        }
    }
}

/// `W^sigma(x, y) = q^(-n/2) W(x + (q-1) y, x - y)`.
pub fn macwilliams_apply(w: &HomogPoly, q: &ExactNumber, sqrt_q: Option<&ExactNumber>) -> Result<HomogPoly> {
    check_q(q)?;
    let mut all: Vec<&ExactNumber> = w.coeffs().iter().chain(std::iter::once(q)).collect();
    all.extend(sqrt_q);
    common_field(all)?;
    let scale = half_power_inv(w.degree(), q, sqrt_q)?;
    let t = transform_unscaled(w, q)?;
    let coeffs = t
        .coeffs()
        .iter()
        .map(|c| c.try_mul(&scale))
        .collect::<Result<_>>()?;
    Ok(HomogPoly::new(coeffs))
}

pub fn fwe_classify(w: &HomogPoly, q: &ExactNumber, sqrt_q: Option<&ExactNumber>) -> Result<Duality> {
    let t = macwilliams_apply(w, q, sqrt_q)?;
    if w.is_zero() {
        return Err(Error::domain("the zero polynomial has no duality class"));
    }
    Ok(if t == -w {
        Duality::AntiInvariant
    } else if &t == w {
        Duality::Invariant
    } else {
        Duality::Neither
    })
}

pub fn weight_profile(w: &HomogPoly, q: &ExactNumber, sqrt_q: Option<&ExactNumber>) -> Result<WeightProfile> {
    if w.is_zero() {
        return Err(Error::domain("weight profile of the zero polynomial"));
    }
    if !w.coeff(0).is_one() {
        return Err(Error::Precondition(format!(
            "coefficient of x^n must be 1, found {}",
            w.coeff(0)
        )));
    }
    let d = w
        .min_weight()
        .ok_or_else(|| Error::domain("no nonzero coefficient beyond x^n: d is undefined"))?;
    let t = macwilliams_apply(w, q, sqrt_q)?;
    let lead = t.coeff(0);
    if !(lead.is_one() || (-lead).is_one()) {
        return Err(Error::Precondition(format!(
            "coefficient of x^n in the transform must be +-1, found {lead}"
        )));
    }
    let d_perp = t
        .min_weight()
        .ok_or_else(|| Error::domain("transform has no nonzero coefficient beyond x^n"))?;
    Ok(WeightProfile {
        d,
        d_perp,
        divisor_c: w.index_gcd(),
    })
}
