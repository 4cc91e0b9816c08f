//! Fraction-free (Bareiss) elimination over `Q[x]`.

use num_traits::Zero;

use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::rational::Rational;

/// Result of [`fraction_free_solve`].
#[derive(Clone, Debug)]
pub struct SolveOutcome {
    /// One exact solution when the system is consistent.
    pub solution: Option<Vec<RatFunc>>,
    /// Rank of the coefficient matrix over the fraction field.
    pub rank: usize,
    pub consistent: bool,
    /// Original index of an equation reduced to `0 = nonzero`.
    pub certificate_row: Option<usize>,
    /// Last Bareiss pivot: a maximal nonvanishing minor of the matrix.
    pub pivot_minor: Poly,
}

struct Echelon {
    m: Vec<Vec<Poly>>,
    row_origin: Vec<usize>,
    pivots: Vec<usize>,
}

/// Pivot ranking: prefer entries nonzero at `point`, then low degree, then
/// few terms.
fn pivot_key(p: &Poly, point: Option<&[Rational]>) -> (bool, u32, usize) {
    let vanishes = point.is_some_and(|x| p.eval(x).is_zero());
    (vanishes, p.total_degree().unwrap_or(0), p.len())
}

fn eliminate(mut m: Vec<Vec<Poly>>, ncols: usize, point: Option<&[Rational]>) -> Echelon {
    let rows = m.len();
    let nvars = m.iter().flatten().next().map_or(0, Poly::num_vars);
    let width = m.first().map_or(0, Vec::len);
    let mut row_origin: Vec<usize> = (0..rows).collect();
    let mut prev = Poly::one(nvars);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows {
            break;
        }
        let best = (r..rows)
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| pivot_key(&m[i][c], point));
        let Some(p) = best else { continue };
        m.swap(r, p);
        row_origin.swap(r, p);
        let piv = m[r][c].clone();
        for i in r + 1..rows {
            let f = std::mem::replace(&mut m[i][c], Poly::zero(nvars));
            for j in c + 1..width {
                let a = &piv * &m[i][j];
                let b = &f * &m[r][j];
                let num = &a - &b;
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    Echelon { m, row_origin, pivots }
}

/// Back substitution returning `D * x` for pivot unknowns, where `D` is the
/// last pivot and `rhs[k]` is the right-hand side of echelon row `k`
/// already multiplied by `D`.
fn back_substitute(e: &Echelon, rhs_times_d: Vec<Poly>, ncols: usize, nvars: usize) -> Vec<Poly> {
    let mut x = vec![Poly::zero(nvars); ncols];
    for k in (0..e.pivots.len()).rev() {
        let mut acc = rhs_times_d[k].clone();
        for &pl in &e.pivots[k + 1..] {
            if !e.m[k][pl].is_zero() {
                acc = &acc - &(&e.m[k][pl] * &x[pl]);
            }
        }
        let pk = e.pivots[k];
        x[pk] = acc.div_exact(&e.m[k][pk]).expect("Cramer numerators are polynomial");
    }
    x
}

/// Solves `a x = b` over the fraction field of `Q[x]`.
///
/// When `point` is given, pivots nonvanishing at the point are preferred so
/// that the returned solution is defined there whenever possible.
pub fn fraction_free_solve(a: &[Vec<Poly>], b: &[Poly], point: Option<&[Rational]>) -> SolveOutcome {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let nvars = b.first().map_or(0, Poly::num_vars);
    let ncols = a.first().map_or(0, Vec::len);
    let aug: Vec<Vec<Poly>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            assert_eq!(row.len(), ncols, "ragged matrix");
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let e = eliminate(aug, ncols, point);
    let rank = e.pivots.len();
    let certificate_row = (rank..e.m.len()).find(|&i| !e.m[i][ncols].is_zero()).map(|i| e.row_origin[i]);
    let d = if rank == 0 { Poly::one(nvars) } else { e.m[rank - 1][e.pivots[rank - 1]].clone() };
    if certificate_row.is_some() {
        return SolveOutcome {
            solution: None,
            rank,
            consistent: false,
            certificate_row,
            pivot_minor: d,
        };
    }
    let rhs: Vec<Poly> = (0..rank).map(|k| &e.m[k][ncols] * &d).collect();
    let x = back_substitute(&e, rhs, ncols, nvars);
    let solution = x
        .into_iter()
        .map(|n| RatFunc::new(n, d.clone()).expect("nonzero pivot"))
        .collect();
    SolveOutcome { solution: Some(solution), rank, consistent: true, certificate_row: None, pivot_minor: d }
}

/// Polynomial basis of the right kernel of `a` over the fraction field.
/// Each vector is scaled to remove rational and monomial content.
pub fn fraction_free_kernel(a: &[Vec<Poly>], ncols: usize, nvars: usize, point: Option<&[Rational]>) -> Vec<Vec<Poly>> {
    let e = eliminate(a.to_vec(), ncols, point);
    let rank = e.pivots.len();
    let d = if rank == 0 { Poly::one(nvars) } else { e.m[rank - 1][e.pivots[rank - 1]].clone() };
    let mut basis = Vec::new();
    for f in (0..ncols).filter(|c| !e.pivots.contains(c)) {
        let rhs: Vec<Poly> = (0..rank).map(|k| -&(&e.m[k][f] * &d)).collect();
        let mut x = back_substitute(&e, rhs, ncols, nvars);
        x[f] = d.clone();
        basis.push(strip_content(x));
    }
    basis
}

/// Divides a polynomial vector by its common rational content, its common
/// monomial factor, and by any component that divides all the others.
pub(crate) fn strip_content(v: Vec<Poly>) -> Vec<Poly> {
    let nonzero: Vec<&Poly> = v.iter().filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() {
        return v;
    }
    for cand in &nonzero {
        if cand.is_constant() {
            continue;
        }
        if nonzero.iter().all(|p| p.div_exact(cand).is_some()) {
            let c = (*cand).clone();
            return strip_content(v.iter().map(|p| p.div_exact(&c).unwrap()).collect());
        }
    }
    let mut g = nonzero[0].monomial_content().exps().to_vec();
    for p in &nonzero[1..] {
        for (a, b) in g.iter_mut().zip(p.monomial_content().exps()) {
            *a = (*a).min(*b);
        }
    }
    let mono = Poly::from_monomial(super::poly::Monomial::new(g), Rational::from_integer(1.into()));
    let mut num_gcd = num_bigint::BigInt::zero();
    let mut den_lcm = num_bigint::BigInt::from(1);
    for p in &nonzero {
        for (_, c) in p.terms() {
            num_gcd = num_integer::Integer::gcd(&num_gcd, c.numer());
            den_lcm = num_integer::Integer::lcm(&den_lcm, c.denom());
        }
    }
    let content = Rational::new(num_gcd, den_lcm).recip();
    v.iter()
        .map(|p| p.div_exact(&mono).expect("monomial content").scale(&content))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    #[test]
    fn identity_system() {
        let n = 2;
        let id: Vec<Vec<Poly>> = (0..3)
            .map(|i| (0..3).map(|j| if i == j { Poly::one(n) } else { Poly::zero(n) }).collect())
            .collect();
        let b = vec![x(n, 0), &x(n, 1) * &x(n, 1), Poly::constant(n, rat(7))];
        let out = fraction_free_solve(&id, &b, None);
        assert_eq!(out.rank, 3);
        let sol = out.solution.unwrap();
        for (s, bi) in sol.iter().zip(&b) {
            assert_eq!(s, &RatFunc::from_poly(bi.clone()));
        }
    }

    #[test]
    fn diagonal_system() {
        let n = 2;
        let z = Poly::zero(n);
        let a = vec![vec![x(n, 0), z.clone()], vec![z, x(n, 0)]];
        let b = vec![&x(n, 0) * &x(n, 0), &x(n, 0) * &x(n, 1)];
        let sol = fraction_free_solve(&a, &b, None).solution.unwrap();
        assert_eq!(sol[0], RatFunc::from_poly(x(n, 0)));
        assert_eq!(sol[1], RatFunc::from_poly(x(n, 1)));
    }

    #[test]
    fn inconsistent_system_certificate() {
        let n = 1;
        let a = vec![vec![x(n, 0)], vec![x(n, 0).scale(&rat(2))]];
        let b = vec![Poly::one(n), Poly::one(n)];
        let out = fraction_free_solve(&a, &b, None);
        assert!(!out.consistent);
        assert_eq!(out.rank, 1);
        assert!(out.certificate_row.is_some());
    }

    #[test]
    fn polynomial_kernel() {
        let n = 2;
        let a = vec![vec![x(n, 0), x(n, 1), Poly::zero(n)]];
        let k = fraction_free_kernel(&a, 3, n, None);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s = &(&a[0][0] * &v[0]) + &(&a[0][1] * &v[1]);
            assert!(s.is_zero());
        }
    }
}
