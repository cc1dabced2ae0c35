//! Numeric complex roots: Aberth iteration seeded in `f64`, polished in
//! dyadic rational arithmetic, and certified with Smith's inclusion disks.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::UniPoly;
use crate::exactnum::radical::{ceil_dyadic, floor_dyadic, log2_floor};
use crate::exactnum::{ExactNumber, Interval};

/// A closed disk `|z - (re + i im)| <= radius` known to contain a root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDisk {
    pub re: BigRational,
    pub im: BigRational,
    pub radius: BigRational,
}

impl RootDisk {
    /// Enclosure of `|z|` over the disk.
    pub fn modulus(&self, bits: u32) -> Interval {
        let m2 = &self.re * &self.re + &self.im * &self.im;
        let m = Interval::point(m2).sqrt(bits as u64).expect("non-negative");
        let lo = m.lo() - &self.radius;
        let lo = if lo.is_zero() || lo < BigRational::zero() {
            BigRational::zero()
        } else {
            lo
        };
        Interval::new(lo, m.hi() + &self.radius)
    }

    /// Whether the disk meets the real axis.
    pub fn touches_real_axis(&self) -> bool {
        let im = if self.im < BigRational::zero() {
            -&self.im
        } else {
            self.im.clone()
        };
        im <= self.radius
    }
}

#[derive(Clone, Debug, PartialEq)]
struct Cx {
    re: BigRational,
    im: BigRational,
}

impl Cx {
    fn real(re: BigRational) -> Self {
        Cx { re, im: BigRational::zero() }
    }

    fn zero() -> Self {
        Self::real(BigRational::zero())
    }

    fn add(&self, o: &Cx) -> Cx {
        Cx { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    fn sub(&self, o: &Cx) -> Cx {
        Cx { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    fn mul(&self, o: &Cx) -> Cx {
        Cx {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn norm2(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn div(&self, o: &Cx) -> Option<Cx> {
        let n = o.norm2();
        if n.is_zero() {
            return None;
        }
        Some(Cx {
            re: (&self.re * &o.re + &self.im * &o.im) / &n,
            im: (&self.im * &o.re - &self.re * &o.im) / &n,
        })
    }

    /// Round both parts to about `bits` significant bits of the larger one.
    fn round(&self, bits: u32) -> Cx {
        let n2 = self.norm2();
        if n2.is_zero() {
            return self.clone();
        }
        let k = (bits as i64 - log2_floor(&n2) / 2).max(0) as u64;
        Cx { re: floor_dyadic(&self.re, k), im: floor_dyadic(&self.im, k) }
    }

    fn from_f64(re: f64, im: f64) -> Option<Cx> {
        Some(Cx {
            re: BigRational::from_float(re)?,
            im: BigRational::from_float(im)?,
        })
    }
}

fn log2_norm2(z: &Cx) -> i64 {
    let n = z.norm2();
    if n.is_zero() {
        i64::MIN / 2
    } else {
        log2_floor(&n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct C64 {
    re: f64,
    im: f64,
}

impl C64 {
    fn add(self, o: C64) -> C64 {
        C64 { re: self.re + o.re, im: self.im + o.im }
    }
    fn sub(self, o: C64) -> C64 {
        C64 { re: self.re - o.re, im: self.im - o.im }
    }
    fn mul(self, o: C64) -> C64 {
        C64 {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
    fn div(self, o: C64) -> C64 {
        let n = o.re * o.re + o.im * o.im;
        C64 {
            re: (self.re * o.re + self.im * o.im) / n,
            im: (self.im * o.re - self.re * o.im) / n,
        }
    }
    fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }
    fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

fn initial_circle(coeffs: &[f64]) -> Vec<C64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n].abs();
    let mut r: f64 = 0.0;
    for (i, c) in coeffs[..n].iter().enumerate() {
        if *c != 0.0 {
            r = r.max((c.abs() / lead).powf(1.0 / (n - i) as f64));
        }
    }
    let r = if r > 0.0 && r.is_finite() { r } else { 1.0 };
    (0..n)
        .map(|k| {
            let a = std::f64::consts::TAU * (k as f64 + 0.25) / n as f64 + 0.4;
            C64 { re: r * a.cos(), im: r * a.sin() }
        })
        .collect()
}

fn aberth_f64(coeffs: &[f64]) -> Vec<C64> {
    let n = coeffs.len() - 1;
    let mut z = initial_circle(coeffs);
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let mut p = C64 { re: 0.0, im: 0.0 };
            let mut dp = C64 { re: 0.0, im: 0.0 };
            for c in coeffs.iter().rev() {
                dp = dp.mul(z[k]).add(p);
                p = p.mul(z[k]).add(C64 { re: *c, im: 0.0 });
            }
            if p.abs() == 0.0 {
                continue;
            }
            let ratio = p.div(dp);
            let mut s = C64 { re: 0.0, im: 0.0 };
            for j in 0..n {
                if j != k {
                    s = s.add(C64 { re: 1.0, im: 0.0 }.div(z[k].sub(z[j])));
                }
            }
            let w = ratio.div(C64 { re: 1.0, im: 0.0 }.sub(ratio.mul(s)));
            if !w.is_finite() {
                continue;
            }
            z[k] = z[k].sub(w);
            moved = moved.max(w.abs() / z[k].abs().max(1.0));
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn horner(coeffs: &[Cx], z: &Cx, bits: u32) -> (Cx, Cx) {
    let mut p = Cx::zero();
    let mut dp = Cx::zero();
    for c in coeffs.iter().rev() {
        dp = dp.mul(z).add(&p).round(bits);
        p = p.mul(z).add(c).round(bits);
    }
    (p, dp)
}

/// Approximations `(re, im)` of all complex roots of `p`, with multiplicity,
/// accurate to roughly `bits` bits when the roots are simple.
pub fn approximate_roots(p: &UniPoly, bits: u32) -> Vec<(BigRational, BigRational)> {
    let Some(n) = p.degree() else { return vec![] };
    if n == 0 {
        return vec![];
    }
    let work = bits + 32;
    let coeffs: Vec<Cx> = p
        .coeffs()
        .iter()
        .map(|c| Cx::real(c.approx(work + 32).midpoint()).round(work))
        .collect();
    let fcoeffs: Vec<f64> = p.coeffs().iter().map(ExactNumber::to_f64).collect();
    let seeds = if fcoeffs.iter().all(|c| c.is_finite()) {
        aberth_f64(&fcoeffs)
    } else {
        initial_circle(&vec![1.0; n + 1])
    };
    let mut z: Vec<Cx> = seeds
        .iter()
        .enumerate()
        .map(|(k, s)| {
            Cx::from_f64(s.re, s.im).unwrap_or_else(|| Cx::real(BigRational::from_integer(BigInt::from(k as i64 + 1))))
        })
        .collect();
    let target = -2 * (bits as i64 + 8);
    let mut calm = 0;
    for _ in 0..400 {
        let mut worst = i64::MIN;
        for k in 0..n {
            let (pv, dv) = horner(&coeffs, &z[k], work);
            if pv.is_zero() {
                continue;
            }
            let Some(ratio) = pv.div(&dv) else {
                z[k] = z[k].add(&Cx::real(BigRational::new(1.into(), 1024.into())));
                worst = i64::MAX;
                continue;
            };
            let mut s = Cx::zero();
            for j in 0..n {
                if j != k {
                    if let Some(inv) = Cx::real(BigRational::one()).div(&z[k].sub(&z[j])) {
                        s = s.add(&inv).round(work);
                    }
                }
            }
            let denom = Cx::real(BigRational::one()).sub(&ratio.mul(&s));
            let w = ratio.div(&denom).unwrap_or(ratio);
            let w = w.round(work);
            z[k] = z[k].sub(&w).round(work);
            let rel = log2_norm2(&w) - log2_norm2(&z[k]).max(0);
            worst = worst.max(rel);
        }
        if worst < target {
            calm += 1;
            if calm >= 2 {
                break;
            }
        } else {
            calm = 0;
        }
    }
    z.into_iter().map(|c| (c.re, c.im)).collect()
}

/// Exact `|p(z)|^2` as an element of the coefficient field.
fn residual_norm2(p: &UniPoly, re: &BigRational, im: &BigRational) -> ExactNumber {
    let x = ExactNumber::from_rational(re.clone());
    let y = ExactNumber::from_rational(im.clone());
    let mut ar = ExactNumber::zero();
    let mut ai = ExactNumber::zero();
    for c in p.coeffs().iter().rev() {
        let nr = &(&(&ar * &x) - &(&ai * &y)) + c;
        let ni = &(&ar * &y) + &(&ai * &x);
        ar = nr;
        ai = ni;
    }
    &(&ar * &ar) + &(&ai * &ai)
}

/// Smith inclusion disks around the given approximations. Returns `None`
/// when the disks are not pairwise disjoint, in which case the root count per
/// disk is not certified.
pub fn certify_roots(p: &UniPoly, approx: &[(BigRational, BigRational)], bits: u32) -> Option<Vec<RootDisk>> {
    let n = p.degree()?;
    if approx.len() != n || n == 0 {
        return None;
    }
    let lead2 = {
        let l = p.leading()?;
        (l * l).approx(64).lo().clone()
    };
    if lead2 <= BigRational::zero() {
        return None;
    }
    let pts: Vec<Cx> = approx
        .iter()
        .map(|(re, im)| Cx { re: re.clone(), im: im.clone() })
        .collect();
    let nn = BigRational::from_integer(BigInt::from((n * n) as u64));
    let mut disks = Vec::with_capacity(n);
    for (i, z) in pts.iter().enumerate() {
        let mut prod = lead2.clone();
        for (j, w) in pts.iter().enumerate() {
            if i != j {
                let d = z.sub(w).norm2();
                if d.is_zero() {
                    return None;
                }
                prod *= d;
            }
        }
        let res = residual_norm2(p, &z.re, &z.im).approx(2 * bits + 128).hi().clone();
        let r2 = &nn * res / prod;
        let r = Interval::point(r2).sqrt(bits as u64 + 16)?.hi().clone();
        let r = ceil_dyadic(&r, bits as u64 + 64);
        disks.push(RootDisk { re: z.re.clone(), im: z.im.clone(), radius: r });
    }
    for i in 0..n {
        for j in i + 1..n {
            let gap = pts[i].sub(&pts[j]).norm2();
            let reach = &disks[i].radius + &disks[j].radius;
            if gap <= &reach * &reach {
                return None;
            }
        }
    }
    Some(disks)
}

/// Approximate then certify. `None` means the roots could not be separated
/// at this precision (for instance when `p` has repeated roots).
pub fn certified_roots(p: &UniPoly, bits: u32) -> Option<Vec<RootDisk>> {
    let approx = approximate_roots(p, bits);
    certify_roots(p, &approx, bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certifies_simple_roots() {
        let p = UniPoly::from_ints(&[-1, 0, 2], 'T');
        let disks = certified_roots(&p, 128).unwrap();
        assert_eq!(disks.len(), 2);
        let half = BigRational::new(1.into(), 2.into());
        for d in &disks {
            let m = d.modulus(128);
            let m2 = m.mul(&m);
            assert!(m2.contains(&half));
            assert!(m2.width() < BigRational::new(1.into(), BigInt::from(1u64 << 60)));
        }
    }

    #[test]
    fn complex_pair_in_quadratic_field() {
        let c: Vec<ExactNumber> = ["3+sqrt(5)", "4*sqrt(5)", "8"].iter().map(|s| s.parse().unwrap()).collect();
        let p = UniPoly::new(c, 'T');
        let disks = certified_roots(&p, 200).unwrap();
        assert!(disks.iter().all(|d| !d.touches_real_axis()));
        let m = disks[0].modulus(64).to_f64();
        assert!((m - (1.0 + 5f64.sqrt()) / 4.0).abs() < 1e-12);
    }

    #[test]
    fn repeated_roots_are_not_certified() {
        let p = UniPoly::from_ints(&[1, -2, 1], 'x');
        assert!(certified_roots(&p, 128).is_none());
    }
}
