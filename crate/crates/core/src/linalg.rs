//! Exact dense linear algebra over [`ExactNumber`].

use crate::exactnum::ExactNumber;
use crate::Result;

pub type Matrix = Vec<Vec<ExactNumber>>;

/// Reduce `m` in place to reduced row echelon form; returns pivot columns.
pub fn rref(m: &mut Matrix) -> Result<Vec<usize>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv()?;
        for x in m[r].iter_mut() {
            *x = x.try_mul(&inv)?;
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..cols {
                let v = f.try_mul(&m[r][j])?;
                m[i][j] = m[i][j].try_sub(&v)?;
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok(pivots)
}

pub fn rank(m: &Matrix) -> Result<usize> {
    let mut m = m.clone();
    Ok(rref(&mut m)?.len())
}

fn kernel_from_rref(m: &Matrix, pivots: &[usize], cols: usize) -> Vec<Vec<ExactNumber>> {
    let free = (0..cols).filter(|c| !pivots.contains(c));
    free.map(|f| {
        let mut v = vec![ExactNumber::zero(); cols];
        v[f] = ExactNumber::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -&m[r][f];
        }
        v
    })
    .collect()
}

/// Basis of `{v : m v = 0}`, one vector per free column.
pub fn nullspace(m: &Matrix, cols: usize) -> Result<Vec<Vec<ExactNumber>>> {
    let mut a = m.clone();
    let pivots = rref(&mut a)?;
    Ok(kernel_from_rref(&a, &pivots, cols))
}

/// Solution set of `a v = b` as a particular solution plus a kernel basis,
/// or `None` when the system is inconsistent.
pub fn solve_affine(a: &Matrix, b: &[ExactNumber], cols: usize) -> Result<Option<(Vec<ExactNumber>, Vec<Vec<ExactNumber>>)>> {
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug)?;
    if pivots.last() == Some(&cols) {
        return Ok(None);
    }
    let mut x = vec![ExactNumber::zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][cols].clone();
    }
    let kernel = kernel_from_rref(&aug, &pivots, cols);
    Ok(Some((x, kernel)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| ExactNumber::from_int(x)).collect())
            .collect()
    }

    #[test]
    fn kernel_and_solutions() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(rank(&a).unwrap(), 1);
        let k = nullspace(&a, 3).unwrap();
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &a {
                let dot = row.iter().zip(v).fold(ExactNumber::zero(), |s, (x, y)| &s + &(x * y));
                assert!(dot.is_zero());
            }
        }
        let b = [ExactNumber::from_int(1), ExactNumber::from_int(2)];
        let (x, kern) = solve_affine(&a, &b, 3).unwrap().unwrap();
        assert_eq!(x[0], ExactNumber::one());
        assert_eq!(kern.len(), 2);
        let bad = [ExactNumber::from_int(1), ExactNumber::from_int(3)];
        assert!(solve_affine(&a, &bad, 3).unwrap().is_none());
    }
}
