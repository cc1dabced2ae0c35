//! The Chebyshev ratio identity `|A(n,q)| = 2 (-1)^n q^(n/2) T_n(q^(-1/2)) |A(n-1,q)|`
//! between consecutive even moment determinants.

use std::thread;

use serde::{Deserialize, Serialize};

use crate::moments::{moment_matrix, poly_det, Parity};
use crate::poly::UniPoly;
use crate::{Error, ExactNumber, Result};

/// `T_n` by `T_(n+1) = 2x T_n - T_(n-1)`.
pub fn chebyshev_t(n: usize) -> UniPoly {
    let x = UniPoly::identity('x');
    let two_x = x.scale(&ExactNumber::from_int(2));
    let (mut prev, mut cur) = (UniPoly::one('x'), x);
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &(&two_x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `q^(n/2) T_n(q^(-1/2))`, a polynomial of degree `floor(n/2)` in `q`.
pub fn scaled_chebyshev(n: usize) -> Result<UniPoly> {
    let t = chebyshev_t(n);
    let mut out = vec![ExactNumber::zero(); n / 2 + 1];
    for (k, c) in t.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if (n - k) % 2 == 1 || !c.is_integer() {
            return Err(Error::Internal(format!("T_{n} has coefficient {c} at x^{k}")));
        }
        out[(n - k) / 2] = c.clone();
    }
    let p = UniPoly::new(out, 'q');
    if p.degree() != Some(n / 2) {
        return Err(Error::Internal(format!("scaled T_{n} has degree {:?}", p.degree())));
    }
    Ok(p)
}

/// `p(r(x))` by Horner's rule.
pub fn compose(p: &UniPoly, r: &UniPoly) -> UniPoly {
    p.coeffs()
        .iter()
        .rev()
        .fold(UniPoly::zero(r.var()), |acc, c| &(&acc * r) + &UniPoly::constant(c.clone(), r.var()))
}

/// `T_m(T_n(x)) = T_(mn)(x)`.
pub fn composition_holds(m: usize, n: usize) -> bool {
    compose(&chebyshev_t(m), &chebyshev_t(n)) == chebyshev_t(m * n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChebyshevRow {
    pub n: usize,
    pub holds: bool,
    pub lhs: UniPoly,
    pub rhs: UniPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChebyshevReport {
    pub n_max: usize,
    pub results: Vec<ChebyshevRow>,
}

impl ChebyshevReport {
    pub fn all_hold(&self) -> bool {
        self.results.iter().all(|r| r.holds)
    }
}

/// `|A(n,q)|` for `n = 1..=n_max`, computed in parallel.
pub fn determinants(n_max: usize) -> Vec<UniPoly> {
    thread::scope(|s| {
        let handles: Vec<_> = (1..=n_max)
            .map(|n| s.spawn(move || poly_det(&moment_matrix(n, Parity::Even))))
            .collect();
        handles.into_iter().map(|h| h.join().expect("determinant worker")).collect()
    })
}

/// Compare both sides as exact polynomials for every `2 <= n <= n_max`.
pub fn verify_conjecture(n_max: usize) -> Result<ChebyshevReport> {
    if n_max < 2 {
        return Err(Error::Precondition(format!("n_max must be at least 2, got {n_max}")));
    }
    let dets = determinants(n_max);
    let mut results = Vec::with_capacity(n_max - 1);
    for n in 2..=n_max {
        let sign = if n % 2 == 0 { 2 } else { -2 };
        let rhs = (&scaled_chebyshev(n)? * &dets[n - 2]).scale(&ExactNumber::from_int(sign));
        let lhs = dets[n - 1].clone();
        results.push(ChebyshevRow { n, holds: lhs == rhs, lhs, rhs });
    }
    Ok(ChebyshevReport { n_max, results })
}
