//! Two-generator rings `C[g_inv, g_anti]`, extremal search inside their
//! anti-invariant part, and minimum-distance bounds.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::catalog::Catalog;
use crate::poly::{fwe_classify, Duality, HomogPoly};
use crate::{Error, ExactNumber, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpec {
    pub q: ExactNumber,
    pub sqrt_q: Option<ExactNumber>,
    pub gen_inv: HomogPoly,
    pub gen_anti: HomogPoly,
}

impl RingSpec {
    /// Checks that `gen_inv` is invariant and `gen_anti` anti-invariant.
    pub fn new(q: ExactNumber, sqrt_q: Option<ExactNumber>, gen_inv: HomogPoly, gen_anti: HomogPoly) -> Result<Self> {
        for (g, want) in [(&gen_inv, Duality::Invariant), (&gen_anti, Duality::AntiInvariant)] {
            let got = fwe_classify(g, &q, sqrt_q.as_ref())?;
            if got != want {
                return Err(Error::Precondition(format!("generator {g} is {got}, expected {want}")));
            }
        }
        Ok(RingSpec { q, sqrt_q, gen_inv, gen_anti })
    }

    /// `gen_inv^l * gen_anti^(2m+1)`.
    pub fn product(&self, l: usize, m: usize) -> HomogPoly {
        &self.gen_inv.pow(l as u32) * &self.gen_anti.pow(2 * m as u32 + 1)
    }
}

/// Built-in rings: `(name, invariant generator, anti-invariant generator)`.
pub const BUILTIN_RINGS: [(&str, &str, &str); 10] = [
    ("ri-minus", "W2_2", "phi4"),
    ("riv-minus", "W2_4", "phi3"),
    ("r43-minus", "W2_4/3", "phi6"),
    ("rii-minus", "WH8", "W12"),
    ("r-4+2sqrt2", "W2_4+2sqrt2", "phi8plus"),
    ("r-4-2sqrt2", "W2_4-2sqrt2", "phi8minus"),
    ("r-2+2sqrt5/5", "W2_2+2sqrt5/5", "phi10plus"),
    ("r-2-2sqrt5/5", "W2_2-2sqrt5/5", "phi10minus"),
    ("r-8+4sqrt3", "W2_8+4sqrt3", "phi12plus"),
    ("r-8-4sqrt3", "W2_8-4sqrt3", "phi12minus"),
];

pub fn builtin_ring(name: &str) -> Result<RingSpec> {
    let (_, inv, anti) = BUILTIN_RINGS
        .iter()
        .find(|(n, _, _)| *n == name)
        .ok_or_else(|| Error::UnknownName(name.to_string()))?;
    let cat = Catalog::builtin();
    let (inv, anti) = (cat.lookup(inv)?, cat.lookup(anti)?);
    RingSpec::new(anti.q().clone(), anti.sqrt_q(), inv.poly(), anti.poly())
}

/// All `(l, m)` with `l deg(gen_inv) + (2m+1) deg(gen_anti) = n`, by
/// increasing `m`.
pub fn ring_products(r: &RingSpec, n: usize) -> Vec<(usize, usize)> {
    let (a, b) = (r.gen_inv.degree(), r.gen_anti.degree());
    let mut out = Vec::new();
    let mut m = 0;
    while (2 * m + 1) * b <= n {
        let rest = n - (2 * m + 1) * b;
        if a == 0 {
            if rest == 0 {
                out.push((0, m));
            }
        } else if rest % a == 0 {
            out.push((rest / a, m));
        }
        m += 1;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationStep {
    /// Index `j` of the coefficient of `x^(n-j) y^j` forced to zero.
    pub index: usize,
    /// Dimension of the remaining affine solution space.
    pub dimension: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalResult {
    pub w: HomogPoly,
    pub d: usize,
    pub combination: Vec<((usize, usize), ExactNumber)>,
    /// Constraints that cut the solution space, in order.
    pub trace: Vec<EliminationStep>,
}

fn dot(a: &[ExactNumber], b: &[ExactNumber]) -> Result<ExactNumber> {
    a.iter().zip(b).try_fold(ExactNumber::zero(), |acc, (x, y)| acc.try_add(&x.try_mul(y)?))
}

fn axpy(x: &[ExactNumber], k: &ExactNumber, y: &[ExactNumber]) -> Result<Vec<ExactNumber>> {
    x.iter().zip(y).map(|(a, b)| a.try_sub(&k.try_mul(b)?)).collect()
}

/// Affine space `x0 + span(kernel)` of scalar vectors.
struct Affine {
    x0: Vec<ExactNumber>,
    kernel: Vec<Vec<ExactNumber>>,
}

enum Cut {
    Reduced,
    Automatic,
    Infeasible,
}

impl Affine {
    /// Impose `row . c = rhs`.
    fn impose(&mut self, row: &[ExactNumber], rhs: &ExactNumber) -> Result<Cut> {
        let c = dot(row, &self.x0)?.try_sub(rhs)?;
        let slopes = self.kernel.iter().map(|k| dot(row, k)).collect::<Result<Vec<_>>>()?;
        let Some(p) = slopes.iter().position(|s| !s.is_zero()) else {
            return Ok(if c.is_zero() { Cut::Automatic } else { Cut::Infeasible });
        };
        let pivot = self.kernel.remove(p);
        let a = slopes[p].clone();
        self.x0 = axpy(&self.x0, &c.try_div(&a)?, &pivot)?;
        let rest: Vec<&ExactNumber> = slopes.iter().enumerate().filter(|(i, _)| *i != p).map(|(_, s)| s).collect();
        for (k, s) in self.kernel.iter_mut().zip(rest) {
            *k = axpy(k, &s.try_div(&a)?, &pivot)?;
        }
        Ok(Cut::Reduced)
    }
}

/// Maximal minimal weight in the span of the degree-`n` products, with
/// `A_0 = 1`, by killing `y^1, y^2, ...` in order until infeasible.
pub fn extremal_search(r: &RingSpec, n: usize) -> Result<ExtremalResult> {
    let pairs = ring_products(r, n);
    if pairs.is_empty() {
        return Err(Error::NoEnumerator(format!("no products of degree {n} in this ring")));
    }
    let prods: Vec<HomogPoly> = pairs.iter().map(|&(l, m)| r.product(l, m)).collect();
    let k = prods.len();
    let col = |j: usize| -> Vec<ExactNumber> { prods.iter().map(|p| p.coeff(j).clone()).collect() };
    let mut space = Affine {
        x0: vec![ExactNumber::zero(); k],
        kernel: (0..k)
            .map(|i| (0..k).map(|j| if i == j { ExactNumber::one() } else { ExactNumber::zero() }).collect())
            .collect(),
    };
    if !matches!(space.impose(&col(0), &ExactNumber::one())?, Cut::Reduced) {
        return Err(Error::DegenerateRing(format!("every degree-{n} combination has A_0 = 0")));
    }
    let mut trace = Vec::new();
    for j in 1..=n {
        match space.impose(&col(j), &ExactNumber::zero())? {
            Cut::Reduced => trace.push(EliminationStep { index: j, dimension: space.kernel.len() }),
            Cut::Automatic => {}
            Cut::Infeasible => break,
        }
    }
    let mut w = HomogPoly::zero(n);
    for (c, p) in space.x0.iter().zip(&prods) {
        w = w.try_add(&p.scale(c))?;
    }
    let d = w
        .min_weight()
        .ok_or_else(|| Error::Internal("extremal combination collapsed to x^n".into()))?;
    Ok(ExtremalResult {
        w,
        d,
        combination: pairs.into_iter().zip(space.x0).collect(),
        trace,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundKind {
    #[serde(rename = "type-I")]
    TypeI,
    #[serde(rename = "type-II")]
    TypeII,
    #[serde(rename = "type-III")]
    TypeIII,
    #[serde(rename = "type-IV")]
    TypeIV,
    #[serde(rename = "RII-minus")]
    RiiMinus,
    #[serde(rename = "genus-nonneg")]
    GenusNonneg,
}

impl BoundKind {
    pub const ALL: [BoundKind; 6] = [
        BoundKind::TypeI,
        BoundKind::TypeII,
        BoundKind::TypeIII,
        BoundKind::TypeIV,
        BoundKind::RiiMinus,
        BoundKind::GenusNonneg,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundKind::TypeI => "type-I",
            BoundKind::TypeII => "type-II",
            BoundKind::TypeIII => "type-III",
            BoundKind::TypeIV => "type-IV",
            BoundKind::RiiMinus => "RII-minus",
            BoundKind::GenusNonneg => "genus-nonneg",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

/// Upper bound for the minimum distance at length `n`. For `RII-minus`
/// below `n = 12` the floor is taken towards minus infinity, giving 0.
pub fn distance_bound(kind: BoundKind, n: usize) -> usize {
    let n = n as i64;
    let v = match kind {
        BoundKind::TypeI => 2 * (n / 8) + 2,
        BoundKind::TypeII => 4 * (n / 24) + 4,
        BoundKind::TypeIII => 3 * (n / 12) + 3,
        BoundKind::TypeIV => 2 * (n / 6) + 2,
        BoundKind::RiiMinus => 4 * (n - 12).div_euclid(24) + 4,
        BoundKind::GenusNonneg => n / 2 + 1,
    };
    v.max(0) as usize
}
