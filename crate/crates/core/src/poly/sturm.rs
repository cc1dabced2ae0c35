//! Exact real-root counting: Sturm sequences, Tarski queries and isolation
//! of real roots by bisection over the rationals.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::UniPoly;
use crate::exactnum::ExactNumber;

/// Signed remainder sequence `a, b, -rem(a, b), ...`, each term rescaled by
/// a positive constant.
pub fn signed_remainder_sequence(a: &UniPoly, b: &UniPoly) -> Vec<UniPoly> {
    let mut seq = vec![a.clone()];
    if b.is_zero() {
        return seq;
    }
    seq.push(b.clone());
    loop {
        let k = seq.len();
        let (_, r) = seq[k - 2]
            .div_rem(&seq[k - 1])
            .expect("sequence terms are nonzero");
        if r.is_zero() {
            return seq;
        }
        let r = -&r;
        let lead = r.leading().expect("nonzero").abs();
        seq.push(r.scale(&lead.inv().expect("nonzero")));
    }
}

pub fn sturm_sequence(p: &UniPoly) -> Vec<UniPoly> {
    signed_remainder_sequence(p, &p.derivative())
}

fn count_changes(signs: impl IntoIterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut n = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

pub fn variations_at(seq: &[UniPoly], x: &ExactNumber) -> usize {
    count_changes(seq.iter().map(|p| p.eval(x).signum()))
}

/// Sign variations at `+inf` (`positive`) or `-inf`.
pub fn variations_at_infinity(seq: &[UniPoly], positive: bool) -> usize {
    count_changes(seq.iter().map(|p| {
        let Some(d) = p.degree() else { return 0 };
        let s = p.leading().expect("nonzero").signum();
        if positive || d % 2 == 0 {
            s
        } else {
            -s
        }
    }))
}

/// Number of distinct real roots.
pub fn count_real_roots(p: &UniPoly) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let seq = sturm_sequence(p);
    variations_at_infinity(&seq, false) - variations_at_infinity(&seq, true)
}

/// Number of distinct real roots in `(a, b]`.
pub fn count_roots_between(p: &UniPoly, a: &BigRational, b: &BigRational) -> usize {
    let seq = sturm_sequence(p);
    roots_between(&seq, a, b)
}

fn roots_between(seq: &[UniPoly], a: &BigRational, b: &BigRational) -> usize {
    let va = variations_at(seq, &ExactNumber::from_rational(a.clone()));
    let vb = variations_at(seq, &ExactNumber::from_rational(b.clone()));
    va.saturating_sub(vb)
}

/// Tarski query: `#{x : p(x) = 0, g(x) > 0} - #{x : p(x) = 0, g(x) < 0}`.
pub fn tarski_query(p: &UniPoly, g: &UniPoly) -> i64 {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let seq = signed_remainder_sequence(p, &(&p.derivative() * g));
    variations_at_infinity(&seq, false) as i64 - variations_at_infinity(&seq, true) as i64
}

/// Rational bound `B` with every real root in `(-B, B)`.
pub fn root_bound(p: &UniPoly) -> BigRational {
    let n = p.degree().expect("nonzero polynomial");
    let lead = p.coeffs()[n].approx(64).mig();
    let mut m = BigRational::zero();
    for c in &p.coeffs()[..n] {
        let v = c.approx(64).mag() / &lead;
        if v > m {
            m = v;
        }
    }
    (m + BigRational::one()).ceil() + BigRational::one()
}

fn half(x: &BigRational) -> BigRational {
    x / BigRational::from_integer(2.into())
}

/// Isolating intervals `(lo, hi)` for the real roots of `p`, in increasing
/// order. Each interval holds exactly one root, neither endpoint is a root,
/// and `p(lo)`, `p(hi)` have opposite signs when `p` is square-free.
pub fn isolate_real_roots(p: &UniPoly) -> Vec<(BigRational, BigRational)> {
    if p.degree().unwrap_or(0) == 0 {
        return vec![];
    }
    let seq = sturm_sequence(p);
    let b = root_bound(p);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        match roots_between(&seq, &lo, &hi) {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let m = split_point(p, &lo, &hi);
                stack.push((lo, m.clone()));
                stack.push((m, hi));
            }
        }
    }
    out.sort();
    out
}

/// A point strictly inside `(lo, hi)` that is not a root of `p`.
fn split_point(p: &UniPoly, lo: &BigRational, hi: &BigRational) -> BigRational {
    let mut m = half(&(lo + hi));
    let mut step = half(&(hi - lo));
    loop {
        if !p.eval(&ExactNumber::from_rational(m.clone())).is_zero() {
            return m;
        }
        step = half(&step);
        m = &m + &step;
    }
}

/// Halve an isolating interval of the square-free `p`.
pub fn bisect_root(p: &UniPoly, lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
    let m = split_point(p, lo, hi);
    let s_lo = p.eval(&ExactNumber::from_rational(lo.clone())).signum();
    let s_m = p.eval(&ExactNumber::from_rational(m.clone())).signum();
    if s_lo == s_m {
        (m, hi.clone())
    } else {
        (lo.clone(), m)
    }
}

/// Narrow an isolating interval of the square-free `p` until `done` holds.
pub fn refine_root(
    p: &UniPoly,
    mut lo: BigRational,
    mut hi: BigRational,
    max_steps: usize,
    done: impl Fn(&BigRational, &BigRational) -> bool,
) -> Option<(BigRational, BigRational)> {
    for _ in 0..max_steps {
        if done(&lo, &hi) {
            return Some((lo, hi));
        }
        (lo, hi) = bisect_root(p, &lo, &hi);
    }
    done(&lo, &hi).then_some((lo, hi))
}
