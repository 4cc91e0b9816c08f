//! Explicit algebras and pencils: truncated and secondary algebras, the
//! affine family, Nijenhuis deformations, products, and a few fixed sample algebras and pencils.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exterior::{Graded, Kind};
use crate::liealg::LieAlgebra;
use crate::pencil::{pair_genericity, Pencil};
use crate::ring::{self, fraction_free_kernel, rat, Matrix, Poly, Rational, UniPoly};

fn unit(m: usize, k: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); m];
    v[k] = Rational::one();
    v
}

fn int(k: usize) -> Rational {
    Rational::from_integer((k as i64).into())
}

/// Linear map of an algebra's underlying space; column `j` is the image of
/// the `j`-th basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endomorphism {
    matrix: Matrix<Rational>,
}

impl Endomorphism {
    pub fn new(matrix: Matrix<Rational>) -> Result<Self> {
        let m = matrix.len();
        if matrix.iter().any(|r| r.len() != m) {
            return Err(Error::Dimension("endomorphism matrix must be square".into()));
        }
        Ok(Endomorphism { matrix })
    }

    pub fn zero(m: usize) -> Self {
        Endomorphism { matrix: vec![vec![Rational::zero(); m]; m] }
    }

    pub fn identity(m: usize) -> Self {
        Endomorphism { matrix: (0..m).map(|i| unit(m, i)).collect() }
    }

    /// `x -> f(x) v`.
    pub fn rank_one(v: &[Rational], f: &[Rational]) -> Result<Self> {
        if v.len() != f.len() {
            return Err(Error::Dimension("vector and covector lengths differ".into()));
        }
        Ok(Endomorphism { matrix: v.iter().map(|vi| f.iter().map(|fj| vi * fj).collect()).collect() })
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.matrix
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        ring::mat_vec(&self.matrix, v, &Rational::zero())
    }

    /// `I + t phi`.
    pub fn shifted_identity(&self, t: &Rational) -> Endomorphism {
        let m = self.dim();
        let matrix = (0..m)
            .map(|i| (0..m).map(|j| &self.matrix[i][j] * t + if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        Endomorphism { matrix }
    }
}

/// `[e_i, e_j] = (j - i) e_{i+j-1}` when `i + j <= m + 1` (1-based).
pub fn truncated_algebra(m: usize) -> Result<LieAlgebra> {
    if m < 3 {
        return Err(Error::Dimension(format!("truncated algebra needs m >= 3, got {m}")));
    }
    let mut l = LieAlgebra::abelian(m);
    for i in 1..=m {
        for j in i + 1..=m {
            if i + j <= m + 1 {
                let mut v = vec![Rational::zero(); m];
                v[i + j - 2] = int(j - i);
                l.set_bracket(i - 1, j - 1, v)?;
            }
        }
    }
    Ok(l)
}

fn bracket_table(m: usize, entries: &[(usize, usize, usize, i64)]) -> LieAlgebra {
    // (i, j, k, c): [e_i, e_j] += c e_k, 1-based.
    let mut acc: BTreeMap<(usize, usize), Vec<Rational>> = BTreeMap::new();
    for &(i, j, k, c) in entries {
        acc.entry((i - 1, j - 1)).or_insert_with(|| vec![Rational::zero(); m])[k - 1] += rat(c);
    }
    LieAlgebra::from_brackets(m, None, acc.into_iter().map(|((i, j), v)| (i, j, v))).expect("valid table")
}

/// `[e1,e5] = e5`, `[e2,e3] = e3`, `[e2,e4] = -e4`.
pub fn flat_pair_algebra() -> LieAlgebra {
    bracket_table(5, &[(1, 5, 5, 1), (2, 3, 3, 1), (2, 4, 4, -1)])
}

/// Linear pair of [`flat_pair_algebra`] with `e1* ^ e2* + e3* ^ e4*`, and
/// the point `(0, 0, 1, 0, 1)`.
pub fn flat_linear_pair() -> (Pencil, Vec<Rational>) {
    let beta = Graded::from_terms(Kind::Form, 5, 2, vec![(vec![0, 1], rat(1)), (vec![2, 3], rat(1))]).expect("valid");
    let p = Pencil::linear_pair(flat_pair_algebra(), beta).expect("valid");
    (p, [0, 0, 1, 0, 1].iter().map(|&v| rat(v)).collect())
}

/// The pencil on `K^5` given as a pair of Lie brackets, with
/// `Lambda = (x2 d1 + x3 d3) ^ d4 + (x1 d1 + x2 d2 + x3 d3) ^ d5` and
/// `Lambda_1 = x1 d2 ^ d4 + (x1 d1 + x2 d2) ^ d5`.
pub fn nowhere_flat_lie_pair() -> Pencil {
    let l = bracket_table(5, &[(1, 4, 2, 1), (3, 4, 3, 1), (1, 5, 1, 1), (2, 5, 2, 1), (3, 5, 3, 1)]);
    let l1 = bracket_table(5, &[(2, 4, 1, 1), (1, 5, 1, 1), (2, 5, 2, 1)]);
    Pencil::lie_pair(l, l1).expect("valid")
}

/// `[e1,e2] = e3`, `[e1,e3] = a e2 + b e3`.
pub fn companion_algebra(a: &Rational, b: &Rational) -> Result<LieAlgebra> {
    if a.is_zero() {
        return Err(Error::Precondition("the coefficient a must be nonzero".into()));
    }
    LieAlgebra::from_brackets(
        3,
        None,
        vec![(0, 1, vec![rat(0), rat(0), rat(1)]), (0, 2, vec![rat(0), a.clone(), b.clone()])],
    )
}

/// Basis `e_1..e_{2n-1}` with `[e_{2j-1}, e_{2j}] = -e_{2j}` and
/// `[e_{2j-1}, e_{2n-1}] = -a e_{2n-1}` for `j < n`.
pub fn contact_family_algebra(n: usize, a: &Rational) -> Result<LieAlgebra> {
    if n < 2 {
        return Err(Error::Dimension(format!("needs n >= 2, got {n}")));
    }
    let m = 2 * n - 1;
    let mut l = LieAlgebra::abelian(m);
    for j in 1..n {
        let mut v = vec![Rational::zero(); m];
        v[2 * j - 1] = rat(-1);
        l.set_bracket(2 * j - 2, 2 * j - 1, v)?;
        let mut w = vec![Rational::zero(); m];
        w[m - 1] = -a.clone();
        l.set_bracket(2 * j - 2, m - 1, w)?;
    }
    Ok(l)
}

/// `alpha = sum e_{2j}*`, `beta = sum a_j e_{2j}* + e_{2n-1}*`.
pub fn contact_family_forms(n: usize, coeffs: &[Rational]) -> Result<(Vec<Rational>, Vec<Rational>)> {
    if coeffs.len() + 1 != n {
        return Err(Error::Dimension(format!("expected {} coefficients", n - 1)));
    }
    let m = 2 * n - 1;
    let mut alpha = vec![Rational::zero(); m];
    let mut beta = vec![Rational::zero(); m];
    for (j, c) in coeffs.iter().enumerate() {
        alpha[2 * j + 1] = Rational::one();
        beta[2 * j + 1] = c.clone();
    }
    beta[m - 1] = Rational::one();
    Ok((alpha, beta))
}

/// `[e1,e2] = a22 e2 + a23 e3`, `[e1,e3] = a32 e2 + a33 e3`.
pub fn three_dim_algebra(a22: &Rational, a23: &Rational, a32: &Rational, a33: &Rational) -> LieAlgebra {
    LieAlgebra::from_brackets(
        3,
        None,
        vec![
            (0, 1, vec![Rational::zero(), a22.clone(), a23.clone()]),
            (0, 2, vec![Rational::zero(), a32.clone(), a33.clone()]),
        ],
    )
    .expect("valid")
}

/// Non-unimodular 3-dimensional algebras covering the diagonal, scalar,
/// Jordan, rotation and generic shapes of `[e1, .]` on `span{e2, e3}`.
pub fn dim3_catalog() -> Vec<(&'static str, LieAlgebra)> {
    let t = |a: [i64; 4]| three_dim_algebra(&rat(a[0]), &rat(a[1]), &rat(a[2]), &rat(a[3]));
    vec![
        ("diagonal-1-2", t([1, 0, 0, 2])),
        ("scalar", t([1, 0, 0, 1])),
        ("jordan", t([1, 0, 1, 1])),
        ("rotation", t([1, 1, -1, 1])),
        ("mixed", t([2, 1, 3, -1])),
    ]
}

/// The `(2m+1)`-dimensional algebra on `A x A x K` with bracket
/// `((v,v',s),(w,w',t)) -> ([v,w], [v,w'] - [w,v'] + t v' - s w', 0)`.
/// Basis `e_1..e_m, f_1..f_m, e`.
pub fn secondary_algebra(l: &LieAlgebra) -> LieAlgebra {
    let m = l.dim();
    let n = 2 * m + 1;
    let mut labels: Vec<String> = l.labels().to_vec();
    labels.extend(l.labels().iter().map(|s| format!("f{}", s.trim_start_matches('e'))));
    labels.push("e".into());
    let mut b = LieAlgebra::abelian(n).with_labels(labels).expect("label count");
    for i in 0..m {
        for j in 0..m {
            let c = l.basis_bracket(i, j);
            if c.iter().all(Zero::is_zero) {
                continue;
            }
            if i < j {
                let mut v = vec![Rational::zero(); n];
                v[..m].clone_from_slice(&c);
                b.set_bracket(i, j, v).expect("in range");
            }
            let mut w = vec![Rational::zero(); n];
            w[m..2 * m].clone_from_slice(&c);
            b.set_bracket(i, m + j, w).expect("in range");
        }
    }
    for j in 0..m {
        b.set_bracket(m + j, 2 * m, unit(n, m + j)).expect("in range");
    }
    b
}

/// Linear pair on the dual of the secondary algebra built from a generic
/// couple, with its base point.
#[derive(Clone, Debug, PartialEq)]
pub struct Prop4Construction {
    pub algebra: LieAlgebra,
    pub pencil: Pencil,
    pub base_point: Vec<Rational>,
    /// Coefficients `a_0, .., a_d` of the polynomial kernel curve
    /// `gamma(t) = sum t^k a_k` of `d alpha + t d beta`.
    pub gamma: Vec<Vec<Rational>>,
    /// `rho(a_0) = 1`, `rho(a_k) = 0` for `k >= 1`.
    pub rho: Vec<Rational>,
}

fn uni_of(p: &Poly) -> UniPoly {
    let d = p.total_degree().unwrap_or(0) as usize;
    UniPoly::from_coeffs((0..=d).map(|k| p.coeff(&[k as u32])).collect())
}

/// Primitive polynomial generator of `Ker(A + t B)` over `Q(t)` for skew
/// matrices of corank one.
pub fn kernel_curve(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Result<Vec<UniPoly>> {
    let m = a.len();
    let t = Poly::var(1, 0);
    let mat: Vec<Vec<Poly>> = (0..m)
        .map(|i| (0..m).map(|j| &Poly::constant(1, a[i][j].clone()) + &t.scale(&b[i][j])).collect())
        .collect();
    let ker = fraction_free_kernel(&mat, m, 1, None);
    if ker.len() != 1 {
        return Err(Error::Degenerate(format!("kernel of the pencil has dimension {} over Q(t)", ker.len())));
    }
    let v: Vec<UniPoly> = ker[0].iter().map(uni_of).collect();
    let mut g: Option<UniPoly> = None;
    for c in v.iter().filter(|c| !c.is_zero()) {
        g = Some(match g {
            None => c.monic(),
            Some(g) => g.gcd(c)?,
        });
    }
    let g = g.ok_or_else(|| Error::Degenerate("zero kernel vector".into()))?;
    Ok(v.iter().map(|c| c.div_exact(&g).expect("gcd divides")).collect())
}

pub fn prop4_pencil(l: &LieAlgebra, alpha: &[Rational], beta: &[Rational]) -> Result<Prop4Construction> {
    let m = l.dim();
    let report = l.generic_couple_check(alpha, beta)?;
    if !report.forms_generic {
        return Err(Error::Precondition("(d alpha, d beta) is not a generic pair".into()));
    }
    if !report.generic {
        return Err(Error::Precondition("(alpha, beta) is not a generic couple".into()));
    }
    if !report.beta_contact {
        return Err(Error::Precondition("beta is not a contact form".into()));
    }
    let zero = Rational::zero();
    let da = l.ce_d(&l.dual_form(alpha))?.skew_matrix(&zero);
    let db = l.ce_d(&l.dual_form(beta))?.skew_matrix(&zero);
    let curve = kernel_curve(&da, &db)?;
    let deg = curve.iter().filter_map(UniPoly::degree).max().unwrap_or(0);
    let gamma: Vec<Vec<Rational>> = (0..=deg).map(|k| curve.iter().map(|c| c.coeff(k)).collect()).collect();
    let mut rhs = vec![Rational::zero(); deg + 1];
    rhs[0] = Rational::one();
    let rho = ring::solve(&gamma, &rhs, m, &zero)
        .expect("rational field")
        .ok_or_else(|| Error::Degenerate("kernel curve coefficients admit no normalizing functional".into()))?;
    let b = secondary_algebra(l);
    let mut p0 = vec![Rational::zero(); 2 * m + 1];
    p0[m..2 * m].clone_from_slice(beta);
    let cocycle = b.ce_d(&b.dual_form(&p0))?.negated();
    let pencil = Pencil::linear_pair(b.clone(), cocycle)?;
    let mut base_point = rho.clone();
    base_point.extend(alpha.iter().cloned());
    base_point.push(Rational::zero());
    Ok(Prop4Construction { algebra: b, pencil, base_point, gamma, rho })
}

/// Nonzero values `N_phi(e_i, e_j)`, `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionTable {
    pub entries: BTreeMap<(usize, usize), Vec<Rational>>,
}

impl TorsionTable {
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

fn check_endo(l: &LieAlgebra, phi: &Endomorphism) -> Result<()> {
    if phi.dim() != l.dim() {
        return Err(Error::Dimension("endomorphism and algebra dimensions differ".into()));
    }
    Ok(())
}

/// `N(a,b) = [pa,pb] + p^2[a,b] - p[a,pb] - p[pa,b]`.
pub fn nijenhuis_torsion(l: &LieAlgebra, phi: &Endomorphism) -> Result<TorsionTable> {
    check_endo(l, phi)?;
    let m = l.dim();
    let mut entries = BTreeMap::new();
    for i in 0..m {
        for j in i + 1..m {
            let (a, b) = (l.basis_vector(i), l.basis_vector(j));
            let (pa, pb) = (phi.apply(&a), phi.apply(&b));
            let ab = l.bracket(&a, &b);
            let t1 = l.bracket(&pa, &pb);
            let t2 = phi.apply(&phi.apply(&ab));
            let t3 = phi.apply(&l.bracket(&a, &pb));
            let t4 = phi.apply(&l.bracket(&pa, &b));
            let n: Vec<Rational> = (0..m).map(|k| &t1[k] + &t2[k] - &t3[k] - &t4[k]).collect();
            if n.iter().any(|c| !c.is_zero()) {
                entries.insert((i, j), n);
            }
        }
    }
    Ok(TorsionTable { entries })
}

/// `[a,b]_1 = [a, pb] + [pa, b] - p[a,b]` for torsion-free `phi`.
pub fn deformed_bracket(l: &LieAlgebra, phi: &Endomorphism) -> Result<LieAlgebra> {
    let torsion = nijenhuis_torsion(l, phi)?;
    if let Some(((i, j), value)) = torsion.entries.into_iter().next() {
        return Err(Error::Torsion { i, j, value });
    }
    deformed_bracket_unchecked(l, phi)
}

/// Same formula without the torsion check; the result need not satisfy Jacobi.
pub fn deformed_bracket_unchecked(l: &LieAlgebra, phi: &Endomorphism) -> Result<LieAlgebra> {
    check_endo(l, phi)?;
    let m = l.dim();
    let mut out = LieAlgebra::abelian(m).with_labels(l.labels().to_vec())?;
    for i in 0..m {
        for j in i + 1..m {
            let (a, b) = (l.basis_vector(i), l.basis_vector(j));
            let x = l.bracket(&a, &phi.apply(&b));
            let y = l.bracket(&phi.apply(&a), &b);
            let z = phi.apply(&l.bracket(&a, &b));
            out.set_bracket(i, j, (0..m).map(|k| &x[k] + &y[k] - &z[k]).collect())?;
        }
    }
    Ok(out)
}

/// `e_n (x) e_m*` on the truncated algebra of dimension `m = 2n - 1`.
pub fn truncated_nijenhuis_operator(m: usize) -> Result<Endomorphism> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(Error::Dimension(format!("expected odd m >= 3, got {m}")));
    }
    let n = m.div_ceil(2);
    Endomorphism::rank_one(&unit(m, n - 1), &unit(m, m - 1))
}

fn mat_zero(n: usize) -> Matrix<Rational> {
    vec![vec![Rational::zero(); n]; n]
}

fn elementary(n: usize, i: usize, j: usize) -> Matrix<Rational> {
    let mut e = mat_zero(n);
    e[i][j] = Rational::one();
    e
}

/// Basis of `sl(n)`: `E_ij` for `i != j` and `E_ii - E_nn` for `i < n`, in
/// row-major order of `(i, j) != (n, n)`.
pub fn sl_basis(n: usize) -> Vec<(String, Matrix<Rational>)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == n - 1 && j == n - 1 {
                continue;
            }
            if i == j {
                let mut h = elementary(n, i, i);
                h[n - 1][n - 1] = rat(-1);
                out.push((format!("H{}", i + 1), h));
            } else {
                out.push((format!("E{}{}", i + 1, j + 1), elementary(n, i, j)));
            }
        }
    }
    out
}

fn trace(m: &Matrix<Rational>) -> Rational {
    (0..m.len()).map(|i| m[i][i].clone()).sum()
}

fn commutator(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Matrix<Rational> {
    let z = Rational::zero();
    let ab = ring::mat_mul(a, b, &z);
    let ba = ring::mat_mul(b, a, &z);
    ab.iter().zip(&ba).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

/// Coordinates of a traceless matrix in [`sl_basis`].
fn sl_coords(x: &Matrix<Rational>) -> Vec<Rational> {
    let n = x.len();
    let mut out = Vec::with_capacity(n * n - 1);
    for i in 0..n {
        for j in 0..n {
            if !(i == n - 1 && j == n - 1) {
                out.push(x[i][j].clone());
            }
        }
    }
    out
}

/// Affine-type algebra on `span{id?} + sl(n) + V?` with bracket
/// `[(g,v),(h,w)] = ([g,h], g w - h v)`.
fn affine_family(n: usize, with_id: bool, with_v: bool) -> Result<LieAlgebra> {
    if n < 2 {
        return Err(Error::Dimension(format!("needs n >= 2, got {n}")));
    }
    let mut basis: Vec<(String, Matrix<Rational>, Vec<Rational>)> = Vec::new();
    let zv = vec![Rational::zero(); n];
    if with_id {
        basis.push(("id".into(), (0..n).map(|i| unit(n, i)).collect(), zv.clone()));
    }
    for (name, m) in sl_basis(n) {
        basis.push((name, m, zv.clone()));
    }
    if with_v {
        for k in 0..n {
            basis.push((format!("v{}", k + 1), mat_zero(n), unit(n, k)));
        }
    }
    let dim = basis.len();
    let id_off = usize::from(with_id);
    let sl_len = n * n - 1;
    let coords = |g: &Matrix<Rational>, v: &[Rational]| -> Vec<Rational> {
        let mut out = Vec::with_capacity(dim);
        let c = trace(g) / int(n);
        if with_id {
            out.push(c.clone());
        }
        let mut traceless = g.clone();
        for (i, row) in traceless.iter_mut().enumerate() {
            row[i] -= &c;
        }
        out.extend(sl_coords(&traceless));
        if with_v {
            out.extend(v.iter().cloned());
        }
        debug_assert_eq!(out.len(), id_off + sl_len + if with_v { n } else { 0 });
        out
    };
    let labels = basis.iter().map(|b| b.0.clone()).collect();
    let mut l = LieAlgebra::abelian(dim).with_labels(labels)?;
    let z = Rational::zero();
    for a in 0..dim {
        for b in a + 1..dim {
            let (_, g, v) = &basis[a];
            let (_, h, w) = &basis[b];
            let gh = commutator(g, h);
            let gw = ring::mat_vec(g, w, &z);
            let hv = ring::mat_vec(h, v, &z);
            let vec: Vec<Rational> = gw.iter().zip(&hv).map(|(x, y)| x - y).collect();
            let c = coords(&gh, &vec);
            if c.iter().any(|x| !x.is_zero()) {
                l.set_bracket(a, b, c)?;
            }
        }
    }
    Ok(l)
}

/// `Aff(V) = span{id} + sl(V) + V`, dimension `n^2 + n`.
pub fn affine_algebra(n: usize) -> Result<LieAlgebra> {
    affine_family(n, true, true)
}

/// `sl(V) + V`, dimension `n^2 + n - 1`.
pub fn special_affine(n: usize) -> Result<LieAlgebra> {
    affine_family(n, false, true)
}

pub fn special_linear(n: usize) -> Result<LieAlgebra> {
    affine_family(n, false, false)
}

/// `Aff(V) + K e` with `[id, e] = -a e`, dimension `n^2 + n + 1`.
pub fn algebra_ava(n: usize, a: &Rational) -> Result<LieAlgebra> {
    let aff = affine_algebra(n)?;
    let d = aff.dim();
    let mut labels = aff.labels().to_vec();
    labels.push("e".into());
    let mut l = LieAlgebra::abelian(d + 1).with_labels(labels)?;
    for (i, j, v) in aff.brackets() {
        let mut w = v.clone();
        w.push(Rational::zero());
        l.set_bracket(i, j, w)?;
    }
    let mut e = vec![Rational::zero(); d + 1];
    e[d] = -a.clone();
    l.set_bracket(0, d, e)?;
    Ok(l)
}

/// `kil(g, .)` on [`sl_basis`], with `kil(x, y) = 2n tr(xy)`.
pub fn killing_oneform(g: &Matrix<Rational>) -> Result<Vec<Rational>> {
    let n = g.len();
    if n < 2 || g.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("expected a square matrix of size >= 2".into()));
    }
    if !trace(g).is_zero() {
        return Err(Error::Domain("g must be traceless".into()));
    }
    let z = Rational::zero();
    let two_n = int(2 * n);
    Ok(sl_basis(n).iter().map(|(_, b)| &two_n * trace(&ring::mat_mul(g, b, &z))).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct Prop6Report {
    pub dim: usize,
    pub rank: usize,
    pub symplectic: bool,
    /// Basis of `Ker d(alpha_g + tau)`.
    pub kernel: Vec<Vec<Rational>>,
    /// Every kernel vector has zero `id` component.
    pub kernel_in_sl_v: bool,
}

/// Rank of `d(alpha_g + tau)` on `Aff(V)` for `g = diag(eigenvalues)` and
/// `tau = sum_{j in support} v_j*` (1-based indices).
pub fn prop6_rank_suite(n: usize, eigenvalues: &[Rational], tau_support: &[usize]) -> Result<Prop6Report> {
    if eigenvalues.len() != n {
        return Err(Error::Dimension(format!("expected {n} eigenvalues")));
    }
    if !eigenvalues.iter().cloned().sum::<Rational>().is_zero() {
        return Err(Error::Domain("eigenvalues must sum to zero".into()));
    }
    if tau_support.iter().any(|&j| j == 0 || j > n) {
        return Err(Error::Dimension("tau support index out of range".into()));
    }
    let aff = affine_algebra(n)?;
    let mut g = mat_zero(n);
    for (i, e) in eigenvalues.iter().enumerate() {
        g[i][i] = e.clone();
    }
    let mut form = vec![Rational::zero()];
    form.extend(killing_oneform(&g)?);
    let mut tau = vec![Rational::zero(); n];
    for &j in tau_support {
        tau[j - 1] = Rational::one();
    }
    form.extend(tau);
    let z = Rational::zero();
    let d = aff.ce_d(&aff.dual_form(&form))?.skew_matrix(&z);
    let dim = aff.dim();
    let rank = ring::rank(&d).expect("rational field");
    let kernel = ring::kernel_basis(&d, dim, &z).expect("rational field");
    let kernel_in_sl_v = kernel.iter().all(|v| v[0].is_zero());
    Ok(Prop6Report { dim, rank, symplectic: rank == dim, kernel, kernel_in_sl_v })
}

/// Scalars `a, b, c` with pairwise distinct entries, `sum a = sum b = 0`,
/// nonzero `c`, and at most one coincidence in `a + t b` for each `t != 0`,
/// at which every `1 + t c_i` is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarFamilies {
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
}

fn pairwise_distinct(v: &[Rational]) -> bool {
    (0..v.len()).all(|i| (i + 1..v.len()).all(|j| v[i] != v[j]))
}

impl ScalarFamilies {
    /// Parameters `t` (negated) at which two entries of `a + t b` meet.
    pub fn collision_parameters(&self) -> Vec<(usize, usize, Rational)> {
        let n = self.a.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let db = &self.b[i] - &self.b[j];
                if !db.is_zero() {
                    out.push((i, j, (&self.a[i] - &self.a[j]) / db));
                }
            }
        }
        out
    }

    pub fn verify(&self) -> std::result::Result<(), String> {
        let n = self.a.len();
        if n < 2 || self.b.len() != n || self.c.len() != n {
            return Err("families must have a common length >= 2".into());
        }
        for (name, v) in [("a", &self.a), ("b", &self.b), ("c", &self.c)] {
            if !pairwise_distinct(v) {
                return Err(format!("entries of {name} are not pairwise distinct"));
            }
        }
        if self.c.iter().any(Zero::is_zero) {
            return Err("some c_i vanishes".into());
        }
        for (name, v) in [("a", &self.a), ("b", &self.b)] {
            if !v.iter().cloned().sum::<Rational>().is_zero() {
                return Err(format!("entries of {name} do not sum to zero"));
            }
        }
        let ts = self.collision_parameters();
        for (k, (i, j, t)) in ts.iter().enumerate() {
            if let Some((i2, j2, _)) = ts[k + 1..].iter().find(|(_, _, s)| s == t) {
                return Err(format!("pairs ({},{}) and ({},{}) collide at the same t", i + 1, j + 1, i2 + 1, j2 + 1));
            }
            let tt = -t.clone();
            if let Some(ci) = self.c.iter().position(|c| (Rational::one() + &tt * c).is_zero()) {
                return Err(format!("1 + t c_{} vanishes at the collision t = {}", ci + 1, ring::format_rational(&tt)));
            }
        }
        Ok(())
    }
}

/// Deterministic search for [`ScalarFamilies`] among small integers.
pub fn lemma9_families(n: usize, seed: u64) -> Result<ScalarFamilies> {
    if n < 2 {
        return Err(Error::Dimension(format!("needs n >= 2, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..10_000 {
        let bound = 2 + (n as i64) + (trial / 100) as i64;
        let zero_sum = |rng: &mut ChaCha8Rng| {
            let mut v: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(-bound..=bound)).collect();
            v.push(-v.iter().sum::<i64>());
            v.into_iter().map(rat).collect::<Vec<_>>()
        };
        let a = zero_sum(&mut rng);
        let b = zero_sum(&mut rng);
        let c: Vec<Rational> = (0..n)
            .map(|_| {
                let k = rng.gen_range(1..=bound);
                rat(if rng.gen_bool(0.5) { k } else { -k })
            })
            .collect();
        let fam = ScalarFamilies { a, b, c };
        if fam.verify().is_ok() {
            return Ok(fam);
        }
    }
    Err(Error::SearchFailed(format!("no scalar families found for n = {n}")))
}

/// Direct product; basis of `l1` followed by that of `l2`.
pub fn product_algebra(l1: &LieAlgebra, l2: &LieAlgebra) -> LieAlgebra {
    let (m1, m2) = (l1.dim(), l2.dim());
    let mut labels: Vec<String> = l1.labels().to_vec();
    labels.extend(l2.labels().iter().map(|s| if labels_clash(l1, s) { format!("{s}'") } else { s.clone() }));
    let mut out = LieAlgebra::abelian(m1 + m2).with_labels(labels).expect("label count");
    for (i, j, v) in l1.brackets() {
        let mut w = v.clone();
        w.extend(std::iter::repeat_n(Rational::zero(), m2));
        out.set_bracket(i, j, w).expect("in range");
    }
    for (i, j, v) in l2.brackets() {
        let mut w = vec![Rational::zero(); m1];
        w.extend(v.iter().cloned());
        out.set_bracket(m1 + i, m1 + j, w).expect("in range");
    }
    out
}

fn labels_clash(l: &LieAlgebra, s: &str) -> bool {
    l.labels().iter().any(|x| x == s)
}

/// `Aff(K)`: `[f1, f2] = f1`.
pub fn affine_line() -> LieAlgebra {
    LieAlgebra::from_brackets(2, Some(vec!["f1".into(), "f2".into()]), vec![(0, 1, vec![rat(1), rat(0)])])
        .expect("valid")
}

/// Lie pair on the dual of `L x Aff(K)` deformed by `f1 (x) beta`.
#[derive(Clone, Debug, PartialEq)]
pub struct Prop7Construction {
    pub product: LieAlgebra,
    pub deformed: LieAlgebra,
    pub phi: Endomorphism,
    pub pencil: Pencil,
    /// `alpha + f1*`.
    pub base_point: Vec<Rational>,
}

pub fn prop7_pencil(l: &LieAlgebra, alpha: &[Rational], beta: &[Rational]) -> Result<Prop7Construction> {
    let m = l.dim();
    if alpha.len() != m || beta.len() != m {
        return Err(Error::Dimension("forms must match the algebra dimension".into()));
    }
    if l.is_unimodular() {
        return Err(Error::Precondition("the algebra is unimodular".into()));
    }
    if !l.contact_check(beta)? {
        return Err(Error::Precondition("beta is not a contact form".into()));
    }
    let da = l.ce_d(&l.dual_form(alpha))?;
    let db = l.ce_d(&l.dual_form(beta))?;
    if !pair_genericity(&da, &db)?.generic() {
        return Err(Error::Precondition("(d alpha, d beta) is not a generic pair".into()));
    }
    let product = product_algebra(l, &affine_line());
    let mut f1 = vec![Rational::zero(); m + 2];
    f1[m] = Rational::one();
    let mut b1 = beta.to_vec();
    b1.extend([Rational::zero(), Rational::zero()]);
    let phi = Endomorphism::rank_one(&f1, &b1)?;
    let deformed = deformed_bracket(&product, &phi)?;
    let pencil = Pencil::lie_pair(product.clone(), deformed.clone())?;
    let mut base_point = alpha.to_vec();
    base_point.extend([Rational::one(), Rational::zero()]);
    Ok(Prop7Construction { product, deformed, phi, pencil, base_point })
}
