#![allow(dead_code)]

use fwe_core::zeta::RhStatus;
use fwe_core::{ExactNumber, HomogPoly, UniPoly};
use num_bigint::BigInt;
use num_rational::BigRational;

pub fn p(c: &[i64]) -> UniPoly {
    UniPoly::from_ints(c, 'q')
}

pub fn cofactor_det(m: &[Vec<UniPoly>]) -> UniPoly {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let mut acc = UniPoly::zero('q');
    for j in 0..m.len() {
        let minor: Vec<Vec<UniPoly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * &cofactor_det(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// The printed factorisations for n = 1..12, as products of integer factors.
pub fn table() -> Vec<UniPoly> {
    let f2 = p(&[-2, 1]);
    let f43 = p(&[-4, 3]);
    let f8 = p(&[8, -8, 1]);
    let f5 = p(&[16, -20, 5]);
    let f16 = p(&[16, -16, 1]);
    let f7 = p(&[-64, 112, -56, 7]);
    let mut out = vec![p(&[-4])];
    out.push(&p(&[8]) * &f2);
    out.push(&(&p(&[16]) * &f2) * &f43);
    out.push(&out[2] * &(&p(&[2]) * &f8));
    out.push(&out[3] * &(&p(&[-2]) * &f5));
    out.push(&out[4] * &(&(&p(&[-2]) * &f2) * &f16));
    out.push(&out[5] * &(&p(&[2]) * &f7));
    out.push(&out[6] * &p(&[256, -512, 320, -64, 2]).scale(&ExactNumber::one()));
    let a9 = &(&p(&[-2]) * &f43) * &p(&[-64, 96, -36, 3]);
    out.push(&out[7] * &a9);
    let a10 = &(&p(&[-2]) * &f2) * &p(&[256, -512, 304, -48, 1]);
    out.push(&out[8] * &a10);
    out.push(&out[9] * &p(&[-2048, 5632, -5632, 2464, -440, 22]));
    let a12 = &(&p(&[2]) * &f8) * &p(&[256, -512, 320, -64, 1]);
    out.push(&out[10] * &a12);
    out
}

pub fn e(s: &str) -> ExactNumber {
    s.parse().unwrap()
}

pub fn tp(c: &[&str]) -> UniPoly {
    UniPoly::new(c.iter().map(|s| e(s)).collect(), 'T')
}

pub fn prod(scale: &str, fs: &[UniPoly]) -> UniPoly {
    fs.iter().fold(UniPoly::constant(e(scale), 'T'), |acc, f| &acc * f)
}

/// Even-index coefficients `A_0, A_1, ...` of a polynomial in `x^2, y^2`.
pub fn even(c: &[&str]) -> HomogPoly {
    let n = 2 * (c.len() - 1);
    let mut v = vec![ExactNumber::zero(); n + 1];
    for (i, s) in c.iter().enumerate() {
        v[2 * i] = e(s);
    }
    HomogPoly::new(v)
}

pub fn odd(c: &[&str]) -> HomogPoly {
    let n = 2 * c.len() - 1;
    let mut v = vec![ExactNumber::zero(); n + 1];
    for (i, s) in c.iter().enumerate() {
        v[2 * i] = e(s);
    }
    HomogPoly::new(v)
}

pub fn tol() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(10).pow(30))
}

pub fn phi4() -> HomogPoly {
    even(&["1", "-6", "1"])
}
pub fn phi3() -> HomogPoly {
    odd(&["1", "-9"])
}
pub fn phi6() -> HomogPoly {
    even(&["1", "-5", "5/3", "-1/27"])
}
pub fn phi5() -> HomogPoly {
    odd(&["1", "-50+20*sqrt(5)", "225-100*sqrt(5)"])
}
pub fn phi8(plus: bool) -> HomogPoly {
    let (s, m) = if plus { ("+", "-") } else { ("-", "+") };
    even(&[
        "1",
        &format!("-84{m}56*sqrt(2)"),
        &format!("1190{s}840*sqrt(2)"),
        &format!("-2772{m}1960*sqrt(2)"),
        &format!("577{s}408*sqrt(2)"),
    ])
}
pub fn phi10(plus: bool) -> HomogPoly {
    let (s, m) = if plus { ("+", "-") } else { ("-", "+") };
    even(&[
        "1",
        &format!("-45{m}18*sqrt(5)"),
        &format!("378{s}168*sqrt(5)"),
        &format!("-714{m}1596/5*sqrt(5)"),
        &format!("1449/5{s}648/5*sqrt(5)"),
        &format!("-61/5{m}682/125*sqrt(5)"),
    ])
}
pub fn phi12(plus: bool) -> HomogPoly {
    let (s, m) = if plus { ("+", "-") } else { ("-", "+") };
    even(&[
        "1",
        &format!("-462{m}264*sqrt(3)"),
        &format!("48015{s}27720*sqrt(3)"),
        &format!("-1248324{m}720720*sqrt(3)"),
        &format!("9314415{s}5377680*sqrt(3)"),
        &format!("-17297742{m}9986856*sqrt(3)"),
        &format!("3650401{s}2107560*sqrt(3)"),
    ])
}
pub fn deg24() -> HomogPoly {
    even(&[
        "1",
        "0",
        "-16422-11592*sqrt(2)",
        "1020096+721280*sqrt(2)",
        "-33004977-23338008*sqrt(2)",
        "519785280+367543680*sqrt(2)",
        "-4102489300-2900898000*sqrt(2)",
        "17657398080+12485665920*sqrt(2)",
        "-38087686257-26932061232*sqrt(2)",
        "39988783296+28276339840*sqrt(2)",
        "-21850472742-15450617448*sqrt(2)",
        "0",
        "768398401+543339720*sqrt(2)",
    ])
}

pub fn q_of(plus: bool, a: &str, b: &str) -> ExactNumber {
    e(&format!("{a}{}{b}", if plus { "+" } else { "-" }))
}

/// `W`, `q`, and the printed factored `P`.
pub fn printed_pairs() -> Vec<(&'static str, HomogPoly, ExactNumber, UniPoly)> {
    let w22 = even(&["1", "1"]);
    let w24 = even(&["1", "3"]);
    let w243 = even(&["1", "1/3"]);
    let f = |c: &[&str]| tp(c);
    let a = f(&["-1", "0", "2"]);
    let b = f(&["1", "0", "2"]);
    let c = f(&["1", "2", "2"]);
    let d = f(&["1", "-2", "2"]);
    let l = f(&["-1", "2"]);
    let r = f(&["-3", "0", "4"]);
    vec![
        ("phi4", phi4(), e("2"), a.clone()),
        ("W22 phi4", &w22 * &phi4(), e("2"), prod("1/3", &[a.clone(), b.clone()])),
        ("W22^2 phi4", &w22.pow(2) * &phi4(), e("2"), prod("1/7", &[a.clone(), f(&["1", "0", "2", "0", "4"])])),
        ("W22^3 phi4", &w22.pow(3) * &phi4(), e("2"), prod("1/15", &[a.clone(), b.clone(), c.clone(), d])),
        (
            "W12",
            HomogPoly::from_ints(&[1, 0, 0, 0, -33, 0, 0, 0, -33, 0, 0, 0, 1]),
            e("2"),
            prod("1/15", &[a, b, c]),
        ),
        ("phi3", phi3(), e("4"), l.clone()),
        ("W24 phi3", &w24 * &phi3(), e("4"), prod("1/5", &[l.clone(), f(&["1", "0", "4"])])),
        (
            "W24^2 phi3",
            &w24.pow(2) * &phi3(),
            e("4"),
            prod("1/21", &[l.clone(), f(&["1", "-2", "4"]), f(&["1", "2", "4"])]),
        ),
        ("W24^3 phi3", &w24.pow(3) * &phi3(), e("4"), prod("1/7", &[l.clone(), f(&["1", "2", "4"])])),
        (
            "(8 W24^4 phi3 + W24 phi3^3)/9",
            (&(&w24.pow(4) * &phi3()).scale(&e("8")) + &(&w24 * &phi3().pow(3))).scale(&e("1/9")),
            e("4"),
            prod("1/33", &[l, f(&["1", "2", "6", "8", "16"])]),
        ),
        ("phi6", phi6(), e("4/3"), prod("1/9", &[r.clone(), f(&["3", "2", "4"])])),
        (
            "W phi6",
            &w243 * &phi6(),
            e("4/3"),
            prod("1/54", &[r, f(&["9", "6", "15", "8", "16"])]),
        ),
        ("W^2 (q = 4/3)", w243.pow(2), e("4/3"), prod("1/9", &[f(&["3", "2", "4"])])),
        (
            "phi5",
            phi5(),
            e("6-2*sqrt(5)"),
            prod(
                "1/2-1/4*sqrt(5)",
                &[f(&["-1-sqrt(5)", "4"]), f(&["3+sqrt(5)", "4*sqrt(5)", "8"])],
            ),
        ),
    ]
}

/// Coefficient of `T^(n-d)` in `P(T) (y(1-T) + xT)^n / ((1-T)(1-qT))`,
/// expanded directly as a power series.
pub fn series_coefficient(p: &UniPoly, n: usize, d: usize, q: &ExactNumber) -> HomogPoly {
    let top = n - d;
    let base = [HomogPoly::from_ints(&[0, 1]), HomogPoly::from_ints(&[1, -1])];
    let mut pow = vec![HomogPoly::from_ints(&[1])];
    for _ in 0..n {
        let deg = pow[0].degree() + 1;
        let mut next = vec![HomogPoly::zero(deg); (pow.len() + 1).min(top + 1)];
        for (i, a) in pow.iter().enumerate() {
            for (j, b) in base.iter().enumerate() {
                if i + j <= top {
                    next[i + j] = &next[i + j] + &(a * b);
                }
            }
        }
        pow = next;
    }
    let mut geo = Vec::new();
    let (mut acc, mut qp) = (ExactNumber::zero(), ExactNumber::one());
    for _ in 0..=top {
        acc = &acc + &qp;
        geo.push(acc.clone());
        qp = &qp * q;
    }
    let mut out = HomogPoly::zero(n);
    for a in 0..=top {
        for b in 0..=top - a {
            let c = top - a - b;
            if c < pow.len() {
                out = &out + &pow[c].scale(&(&p.coeff(a) * &geo[b]));
            }
        }
    }
    out
}

pub fn defining_identity_holds(p: &UniPoly, w: &HomogPoly, q: &ExactNumber) -> bool {
    let n = w.degree();
    let d = w.min_weight().unwrap();
    let lhs = series_coefficient(p, n, d, q);
    let mut x_n = vec![ExactNumber::zero(); n + 1];
    x_n[0] = ExactNumber::one();
    let rhs = (w - &HomogPoly::new(x_n)).scale(&(q - &ExactNumber::one()).inv().unwrap());
    lhs == rhs
}

pub fn extremal_cases() -> Vec<(&'static str, HomogPoly, ExactNumber, RhStatus)> {
    let mut out = Vec::new();
    for plus in [true, false] {
        let want = if plus { RhStatus::Fails } else { RhStatus::Holds };
        out.push(("phi8", phi8(plus), q_of(plus, "4", "2*sqrt(2)"), want));
        out.push(("phi10", phi10(plus), q_of(plus, "2", "2/5*sqrt(5)"), want));
        out.push(("phi12", phi12(plus), q_of(plus, "8", "4*sqrt(3)"), want));
    }
    out.push(("degree 24", deg24(), e("4+2*sqrt(2)"), RhStatus::Fails));
    out
}
