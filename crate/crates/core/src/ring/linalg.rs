//! Dense Gauss-Jordan elimination over an [`ExactField`].
//!
//! Every routine returns `Err(ZeroDivisor)` only for quotient rings with a
//! reducible modulus; over `Q` or `Q(t)` the `Ok` branch is guaranteed.

use super::field::{ExactField, ZeroDivisor};
use super::rational::Rational;

pub type Matrix<F> = Vec<Vec<F>>;

/// Reduces `m` in place to reduced row echelon form and returns the pivot
/// columns.
pub fn rref<F: ExactField>(m: &mut Matrix<F>) -> Result<Vec<usize>, ZeroDivisor> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].vanishes()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inverse()?;
        for j in c..cols {
            m[r][j] = m[r][j].times(&inv);
        }
        for i in 0..rows {
            if i == r || m[i][c].vanishes() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..cols {
                let sub = f.times(&m[r][j]);
                m[i][j] = m[i][j].minus(&sub);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok(pivots)
}

pub fn rank<F: ExactField>(m: &Matrix<F>) -> Result<usize, ZeroDivisor> {
    let mut a = m.clone();
    Ok(rref(&mut a)?.len())
}

/// Basis of the right kernel `{x : m x = 0}` in `ncols` unknowns. Each basis
/// vector has a 1 at its free column and zeros at the other free columns.
pub fn kernel_basis<F: ExactField>(
    m: &Matrix<F>,
    ncols: usize,
    proto: &F,
) -> Result<Vec<Vec<F>>, ZeroDivisor> {
    let mut a = m.clone();
    let pivots = rref(&mut a)?;
    let zero = proto.zero_like();
    let mut basis = Vec::new();
    for f in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![zero.clone(); ncols];
        v[f] = proto.one_like();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = a[r][f].negated();
        }
        basis.push(v);
    }
    Ok(basis)
}

/// One solution of `a x = b` (free unknowns set to zero), or `None` when the
/// system is inconsistent.
pub fn solve<F: ExactField>(
    a: &Matrix<F>,
    b: &[F],
    ncols: usize,
    proto: &F,
) -> Result<Option<Vec<F>>, ZeroDivisor> {
    let mut aug: Matrix<F> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug)?;
    if pivots.last() == Some(&ncols) {
        return Ok(None);
    }
    let mut x = vec![proto.zero_like(); ncols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][ncols].clone();
    }
    Ok(Some(x))
}

pub fn mat_vec<F: ExactField>(a: &Matrix<F>, x: &[F], proto: &F) -> Vec<F> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .fold(proto.zero_like(), |acc, (u, v)| acc.plus(&u.times(v)))
        })
        .collect()
}

pub fn mat_mul<F: ExactField>(a: &Matrix<F>, b: &Matrix<F>, proto: &F) -> Matrix<F> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(proto.zero_like(), |acc, k| acc.plus(&row[k].times(&b[k][j])))
                })
                .collect()
        })
        .collect()
}

/// Determinant of a square rational matrix.
pub fn det(m: &Matrix<Rational>) -> Rational {
    use num_traits::{One, Zero};
    let n = m.len();
    let mut a = m.clone();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let s = &f * &a[c][j];
                a[i][j] -= s;
            }
        }
    }
    d
}

/// Inverse of a square rational matrix, `None` when singular.
pub fn inverse(m: &Matrix<Rational>) -> Option<Matrix<Rational>> {
    use num_traits::{One, Zero};
    let n = m.len();
    let mut aug: Matrix<Rational> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug).expect("rational field");
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, ratio};
    use num_traits::Zero;

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank(&m).unwrap(), 2);
        let k = kernel_basis(&m, 3, &rat(0)).unwrap();
        assert_eq!(k, vec![vec![rat(-1), rat(-1), rat(1)]]);
        let mv = mat_vec(&m, &k[0], &rat(0));
        assert!(mv.iter().all(Zero::is_zero));
    }

    #[test]
    fn solve_and_inconsistency() {
        let m = q(&[&[2, 0], &[0, 4]]);
        let x = solve(&m, &[rat(1), rat(1)], 2, &rat(0)).unwrap().unwrap();
        assert_eq!(x, vec![ratio(1, 2), ratio(1, 4)]);
        let s = q(&[&[1, 1], &[2, 2]]);
        assert!(solve(&s, &[rat(1), rat(3)], 2, &rat(0)).unwrap().is_none());
    }

    #[test]
    fn determinant_and_inverse() {
        let m = q(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        assert_eq!(det(&m), rat(-2));
        let inv = inverse(&m).unwrap();
        let id = mat_mul(&m, &inv, &rat(0));
        assert_eq!(id, q(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        assert!(inverse(&q(&[&[1, 2], &[2, 4]])).is_none());
    }
}
