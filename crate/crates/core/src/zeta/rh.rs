use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{functional_eq_holds, ZetaResult};
use crate::exactnum::{ExactNumber, Interval};
use crate::poly::roots::certified_roots;
use crate::poly::sturm::{count_real_roots, isolate_real_roots, refine_root, tarski_query};
use crate::poly::UniPoly;

pub const DEFAULT_PRECISION_BITS: u32 = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RhStatus {
    Holds,
    Fails,
    Indeterminate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RhMethod {
    ExactSturm,
    NumericCertified,
    IvtWitness,
}

impl fmt::Display for RhStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RhStatus::Holds => "holds",
            RhStatus::Fails => "fails",
            RhStatus::Indeterminate => "indeterminate",
        })
    }
}

impl fmt::Display for RhMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RhMethod::ExactSturm => "exact-sturm",
            RhMethod::NumericCertified => "numeric-certified",
            RhMethod::IvtWitness => "ivt-witness",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub description: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RHVerdict {
    pub status: RhStatus,
    pub method: RhMethod,
    pub witnesses: Vec<Witness>,
    pub precision_bits: u32,
}

/// Decide whether every root of the palindromic `r` (with
/// `r_(2h-j) = lambda^(h-j) r_j`) lies on `|T| = 1/sqrt(lambda)`.
///
/// With `U = lambda T + 1/T` the Laurent polynomial `T^-h r(T)` becomes
/// `S(U)`; the roots lie on the circle iff every root of `S` is real with
/// `U^2 <= 4 lambda`.
fn palindromic_on_circle(r: &UniPoly, lambda: &ExactNumber) -> Option<(bool, String)> {
    let deg = r.degree()?;
    if deg % 2 == 1 {
        return None;
    }
    let h = deg / 2;
    if h == 0 {
        return Some((true, "no roots after deflation".into()));
    }
    let var = 'U';
    let u = UniPoly::identity(var);
    let mut e_prev = UniPoly::constant(ExactNumber::from_int(2), var);
    let mut e_cur = u.clone();
    let mut s = UniPoly::constant(r.coeff(h), var);
    for k in 1..=h {
        s = &s + &e_cur.scale(&r.coeff(h - k));
        let next = &(&u * &e_cur) - &e_prev.scale(lambda);
        e_prev = e_cur;
        e_cur = next;
    }
    let s0 = s.square_free_part();
    let distinct = s0.degree().unwrap_or(0);
    let real = count_real_roots(&s0);
    if real < distinct {
        return Some((
            false,
            format!("S(U) of degree {h} has {} non-real root(s)", distinct - real),
        ));
    }
    let four_lambda = lambda.try_mul(&ExactNumber::from_int(4)).ok()?;
    let g = &UniPoly::constant(four_lambda, var) - &(&u * &u);
    let taq_g = tarski_query(&s0, &g);
    let taq_g2 = tarski_query(&s0, &(&g * &g));
    let outside = (taq_g2 - taq_g) / 2;
    if outside > 0 {
        return Some((false, format!("S(U) of degree {h} has {outside} real root(s) with U^2 > 4q")));
    }
    Some((true, format!("S(U) of degree {h} has all roots real with U^2 <= 4q")))
}

/// Exact decision through the functional equation. `None` when the exact
/// path does not apply (no functional equation, or `sqrt(q)` lies outside
/// the coefficient field for odd `2g`).
pub fn rh_exact(z: &ZetaResult, q: &ExactNumber) -> Option<bool> {
    rh_exact_detail(z, q).map(|(b, _)| b)
}

fn rh_exact_detail(z: &ZetaResult, q: &ExactNumber) -> Option<(bool, String)> {
    let p = &z.p;
    let deg = p.degree()?;
    let sign = z.sign()?;
    if deg != z.two_g {
        return None;
    }
    if deg == 0 {
        return Some((true, "constant zeta polynomial".into()));
    }
    p.field().ok()?;
    if deg % 2 == 0 {
        if !functional_eq_holds(p, deg, sign, q, None).ok()? {
            return None;
        }
        let r = if sign < 0 {
            let f = UniPoly::new(vec![ExactNumber::from_int(-1), ExactNumber::zero(), q.clone()], p.var());
            p.exact_div(&f)?
        } else {
            p.clone()
        };
        palindromic_on_circle(&r, q)
    } else {
        let t = q.sqrt_in_field().ok()??;
        if !functional_eq_holds(p, deg, sign, q, Some(&t)).ok()? {
            return None;
        }
        let inv_t = t.inv().ok()?;
        let mut coeffs = Vec::with_capacity(deg + 1);
        let mut pw = ExactNumber::one();
        for c in p.coeffs() {
            coeffs.push(c.try_mul(&pw).ok()?);
            pw = pw.try_mul(&inv_t).ok()?;
        }
        let qu = UniPoly::new(coeffs, 'u');
        let forced = if sign < 0 { -1 } else { 1 };
        let lin = UniPoly::from_ints(&[forced, 1], 'u');
        let r = qu.exact_div(&lin)?;
        palindromic_on_circle(&r, &ExactNumber::one())
    }
}

fn sqrt_q_interval(q: &ExactNumber, bits: u32) -> Interval {
    q.approx(bits + 16).sqrt(bits as u64 + 16).expect("q > 0")
}

/// Numeric path: certified disks around every root, compared against the
/// circle `|T| = 1/sqrt(q)`.
pub fn rh_numeric(z: &ZetaResult, q: &ExactNumber, precision_bits: u32, tolerance: &BigRational) -> RHVerdict {
    let verdict = |status, witnesses| RHVerdict {
        status,
        method: RhMethod::NumericCertified,
        witnesses,
        precision_bits,
    };
    let p0 = z.p.square_free_part();
    if p0.degree().unwrap_or(0) == 0 {
        return verdict(RhStatus::Holds, vec![]);
    }
    let Some(disks) = certified_roots(&p0, precision_bits) else {
        return verdict(RhStatus::Indeterminate, vec![]);
    };
    let sq = sqrt_q_interval(q, precision_bits);
    let one = BigRational::one();
    let mut off = Vec::new();
    let mut unsure = false;
    for d in &disks {
        let scaled = d.modulus(precision_bits).mul(&sq);
        if scaled.lo() > &one || scaled.hi() < &one {
            off.push(Witness {
                description: format!(
                    "root near {} + {}i lies off the circle",
                    Interval::point(d.re.clone()).to_decimal(12).trim_matches(['[', ']']).split(',').next().unwrap_or(""),
                    Interval::point(d.im.clone()).to_decimal(12).trim_matches(['[', ']']).split(',').next().unwrap_or(""),
                ),
                value: format!("|T|*sqrt(q) in {}", scaled.to_decimal(20)),
            });
        } else if !(scaled.lo() > &(&one - tolerance) && scaled.hi() < &(&one + tolerance)) {
            unsure = true;
        }
    }
    if !off.is_empty() {
        verdict(RhStatus::Fails, off)
    } else if unsure {
        verdict(RhStatus::Indeterminate, vec![])
    } else {
        let worst = disks
            .iter()
            .map(|d| d.radius.clone())
            .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
        verdict(
            RhStatus::Holds,
            vec![Witness {
                description: format!("{} certified root disk(s) meet |T|*sqrt(q) = 1 within tolerance", disks.len()),
                value: format!("max radius <= {}", Interval::point(worst).to_decimal(40).trim_matches(['[', ']']).split(',').next().unwrap_or("")),
            }],
        )
    }
}

/// Real roots of `P` away from `+-1/sqrt(q)`, bracketed by rationals at
/// which the square-free part of `P` changes sign.
fn ivt_witnesses(p: &UniPoly, q: &ExactNumber) -> Vec<Witness> {
    let sqf = p.square_free_part();
    let circle = UniPoly::new(vec![ExactNumber::from_int(-1), ExactNumber::zero(), q.clone()], p.var());
    let common = sqf.gcd(&circle);
    let Some(p1) = sqf.exact_div(&common) else {
        return vec![];
    };
    let mut out = Vec::new();
    let eval = |x: &BigRational| ExactNumber::from_rational(x.clone());
    for (lo, hi) in isolate_real_roots(&p1) {
        let side = |x: &BigRational| (&(q * &eval(&(x * x))) - &ExactNumber::one()).signum();
        let done = |a: &BigRational, b: &BigRational| {
            let (sa, sb) = (side(a), side(b));
            sa == sb && sa != 0 && (sa < 0 || (a.is_positive_sign() && b.is_positive_sign()) || (a.is_negative_sign() && b.is_negative_sign()))
        };
        let Some((a, b)) = refine_root(&p1, lo, hi, 4000, done) else {
            continue;
        };
        let (pa, pb) = (p.eval(&eval(&a)).signum(), p.eval(&eval(&b)).signum());
        let (poly, sa, sb) = if pa * pb < 0 {
            ("P", pa, pb)
        } else {
            ("square-free part of P", p1.eval(&eval(&a)).signum(), p1.eval(&eval(&b)).signum())
        };
        let sym = |s: i32| if s > 0 { "+" } else { "-" };
        let place = if side(&a) < 0 { "inside" } else { "outside" };
        out.push(Witness {
            description: format!(
                "{poly} changes sign ({} to {}) on [a, b], a real root {place} the circle",
                sym(sa),
                sym(sb)
            ),
            value: format!("[{a}, {b}] ~ {}", Interval::new(a.clone(), b.clone()).to_decimal(12)),
        });
    }
    out
}

trait SignExt {
    fn is_positive_sign(&self) -> bool;
    fn is_negative_sign(&self) -> bool;
}

impl SignExt for BigRational {
    fn is_positive_sign(&self) -> bool {
        self > &BigRational::zero()
    }
    fn is_negative_sign(&self) -> bool {
        self < &BigRational::zero()
    }
}

/// Decide the Riemann hypothesis for `P`: exactly when the functional
/// equation permits, numerically otherwise; failures carry witnesses.
pub fn rh_check(z: &ZetaResult, q: &ExactNumber, precision_bits: u32, tolerance: &BigRational) -> RHVerdict {
    if let Some((holds, detail)) = rh_exact_detail(z, q) {
        if holds {
            return RHVerdict {
                status: RhStatus::Holds,
                method: RhMethod::ExactSturm,
                witnesses: vec![Witness { description: detail, value: "exact".into() }],
                precision_bits: 0,
            };
        }
        let ivt = ivt_witnesses(&z.p, q);
        if !ivt.is_empty() {
            return RHVerdict {
                status: RhStatus::Fails,
                method: RhMethod::IvtWitness,
                witnesses: ivt,
                precision_bits: 0,
            };
        }
        let numeric = rh_numeric(z, q, precision_bits, tolerance);
        if numeric.status == RhStatus::Fails {
            return numeric;
        }
        return RHVerdict {
            status: RhStatus::Fails,
            method: RhMethod::ExactSturm,
            witnesses: vec![Witness { description: detail, value: "exact".into() }],
            precision_bits: 0,
        };
    }
    let numeric = rh_numeric(z, q, precision_bits, tolerance);
    if numeric.status == RhStatus::Fails {
        let ivt = ivt_witnesses(&z.p, q);
        if !ivt.is_empty() {
            return RHVerdict {
                status: RhStatus::Fails,
                method: RhMethod::IvtWitness,
                witnesses: ivt,
                precision_bits,
            };
        }
    }
    numeric
}
