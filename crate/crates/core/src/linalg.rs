//! Symmetric tridiagonal matrices: eigendecomposition, matrix functions and
//! the closed-form inverse built from forward/backward pivot recursions.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

// shadowed by inherent methods whenever std is linked
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Dense row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                let src = other.row(k);
                let dst = &mut out.data[i * n..(i + 1) * n];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d += a * s;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        Matrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        Matrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: f64) -> Matrix {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest `|A_ij - A_ji|`.
    pub fn max_asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }

    /// Replaces `A` by `(A + Aᵀ)/2` and returns the asymmetry that was removed.
    pub fn symmetrize(&mut self) -> f64 {
        let asym = self.max_asymmetry();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let avg = 0.5 * (self[(i, j)] + self[(j, i)]);
                self[(i, j)] = avg;
                self[(j, i)] = avg;
            }
        }
        asym
    }

    /// Leading `k × k` block.
    pub fn leading(&self, k: usize) -> Matrix {
        assert!(k <= self.n);
        Matrix::from_fn(k, |i, j| self[(i, j)])
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

/// Real symmetric tridiagonal matrix stored as its diagonal and first
/// off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalSymmetric {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl TridiagonalSymmetric {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::Domain("tridiagonal matrix must be at least 1x1".into()));
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(Error::Domain(alloc::format!(
                "off-diagonal length {} does not match diagonal length {}",
                offdiag.len(),
                diag.len()
            )));
        }
        Ok(Self { diag, offdiag })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            diag: vec![1.0; n],
            offdiag: vec![0.0; n.saturating_sub(1)],
        }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    /// `T + cI`.
    pub fn shifted(&self, c: f64) -> Self {
        Self {
            diag: self.diag.iter().map(|d| d + c).collect(),
            offdiag: self.offdiag.clone(),
        }
    }

    pub fn to_dense(&self) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = self.diag[i];
        }
        for (i, b) in self.offdiag.iter().enumerate() {
            m[(i, i + 1)] = *b;
            m[(i + 1, i)] = *b;
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.diag
            .iter()
            .chain(&self.offdiag)
            .fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Eigenvalues in ascending order with orthonormal eigenvectors as columns.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

impl EigenDecomposition {
    /// `Σ diag(f(λ)) Σᵀ`, symmetrized.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> Result<Matrix> {
        let n = self.values.len();
        let mut fvals = Vec::with_capacity(n);
        for &lambda in &self.values {
            let v = f(lambda);
            if !v.is_finite() {
                return Err(Error::Singularity { eigenvalue: lambda });
            }
            fvals.push(v);
        }
        let sigma = &self.vectors;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut acc = 0.0;
                for (k, fk) in fvals.iter().enumerate() {
                    acc += sigma[(i, k)] * fk * sigma[(j, k)];
                }
                out[(i, j)] = acc;
                out[(j, i)] = acc;
            }
        }
        Ok(out)
    }
}

/// Full eigendecomposition by implicit-shift QL with accumulated rotations.
///
/// Eigenvalues come back ascending; each eigenvector is oriented so that its
/// first non-negligible component is positive.
pub fn tridiag_eigen(t: &TridiagonalSymmetric) -> Result<EigenDecomposition> {
    let n = t.dim();
    let mut d = t.diag.clone();
    let mut e = t.offdiag.clone();
    e.push(0.0);
    let mut z = Matrix::identity(n);
    let budget = 30 * n.max(1);

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > budget {
                return Err(Error::Convergence { index: l });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for k in 0..n {
                    let zf = z[(k, i + 1)];
                    z[(k, i + 1)] = s * z[(k, i)] + c * zf;
                    z[(k, i)] = c * z[(k, i)] - s * zf;
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values = order.iter().map(|&k| d[k]).collect();
    let mut vectors = Matrix::zeros(n);
    for (col, &k) in order.iter().enumerate() {
        let lead = (0..n).map(|i| z[(i, k)]).find(|v| v.abs() > 1e-12);
        let sign = match lead {
            Some(v) if v < 0.0 => -1.0,
            _ => 1.0,
        };
        for i in 0..n {
            vectors[(i, col)] = sign * z[(i, k)];
        }
    }
    Ok(EigenDecomposition { values, vectors })
}

/// `f(T)` through the spectral decomposition of `T`.
pub fn matrix_function(t: &TridiagonalSymmetric, f: impl Fn(f64) -> f64) -> Result<Matrix> {
    tridiag_eigen(t)?.apply(f)
}

// Products in the closed-form inverse switch to log-magnitude above this size.
const LOG_PRODUCT_THRESHOLD: usize = 50;

/// Inverse of a symmetric tridiagonal matrix from its backward pivots
/// `C_n = A_n - B_n²/C_{n+1}` and forward pivots `D_n = A_n - B_{n-1}²/D_{n-1}`:
///
/// ```text
/// (T⁻¹)_jj = C_{j+1}⋯C_{N-1} / (D_j⋯D_{N-1})
/// (T⁻¹)_nm = (-1)^{n+m} B_n⋯B_{m-1} C_{m+1}⋯C_{N-1} / (D_n⋯D_{N-1}),  m > n
/// ```
///
/// The lower triangle is filled by symmetry.
pub fn tridiag_inverse_closed_form(t: &TridiagonalSymmetric) -> Result<Matrix> {
    let n = t.dim();
    let a = &t.diag;
    let b = &t.offdiag;

    let mut c = vec![0.0; n];
    c[n - 1] = a[n - 1];
    for k in (0..n - 1).rev() {
        if c[k + 1] == 0.0 {
            return Err(Error::Singular { index: k + 1 });
        }
        c[k] = a[k] - b[k] * b[k] / c[k + 1];
    }
    let mut d = vec![0.0; n];
    d[0] = a[0];
    for k in 1..n {
        if d[k - 1] == 0.0 {
            return Err(Error::Singular { index: k - 1 });
        }
        d[k] = a[k] - b[k - 1] * b[k - 1] / d[k - 1];
    }
    if d[n - 1] == 0.0 {
        return Err(Error::Singular { index: n - 1 });
    }
    if d.iter().chain(&c).any(|v| !v.is_finite()) {
        return Err(Error::Singular { index: n - 1 });
    }

    let mut inv = Matrix::zeros(n);
    if n <= LOG_PRODUCT_THRESHOLD {
        // c_tail[k] = C_k⋯C_{N-1}, d_tail[k] = D_k⋯D_{N-1}
        let mut c_tail = vec![1.0; n + 1];
        let mut d_tail = vec![1.0; n + 1];
        for k in (0..n).rev() {
            c_tail[k] = c_tail[k + 1] * c[k];
            d_tail[k] = d_tail[k + 1] * d[k];
        }
        for row in 0..n {
            let mut b_prod = 1.0;
            for col in row..n {
                if col > row {
                    b_prod *= -b[col - 1];
                }
                let v = b_prod * c_tail[col + 1] / d_tail[row];
                inv[(row, col)] = v;
                inv[(col, row)] = v;
            }
        }
    } else {
        let c_tail = signed_log_suffix(&c);
        let d_tail = signed_log_suffix(&d);
        for row in 0..n {
            let mut b_log = 0.0;
            let mut b_sign = 1.0;
            for col in row..n {
                if col > row {
                    let factor = -b[col - 1];
                    if factor == 0.0 {
                        b_sign = 0.0;
                    } else {
                        b_log += factor.abs().ln();
                        if factor < 0.0 {
                            b_sign = -b_sign;
                        }
                    }
                }
                let (cl, cs) = c_tail[col + 1];
                let (dl, ds) = d_tail[row];
                let sign = b_sign * cs * ds;
                let v = if sign == 0.0 {
                    0.0
                } else {
                    sign * (b_log + cl - dl).exp()
                };
                inv[(row, col)] = v;
                inv[(col, row)] = v;
            }
        }
    }
    Ok(inv)
}

// (ln|x_k⋯x_{N-1}|, sign) for every suffix, with the empty product at index N.
fn signed_log_suffix(xs: &[f64]) -> Vec<(f64, f64)> {
    let n = xs.len();
    let mut out = vec![(0.0, 1.0); n + 1];
    for k in (0..n).rev() {
        let (l, s) = out[k + 1];
        let x = xs[k];
        out[k] = if x == 0.0 || s == 0.0 {
            (f64::NEG_INFINITY, 0.0)
        } else {
            (l + x.abs().ln(), if x < 0.0 { -s } else { s })
        };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tri(d: &[f64], e: &[f64]) -> TridiagonalSymmetric {
        TridiagonalSymmetric::new(d.to_vec(), e.to_vec()).unwrap()
    }

    // Gauss-Jordan with partial pivoting: independent dense oracle.
    fn dense_inverse(m: &Matrix) -> Matrix {
        let n = m.dim();
        let mut a = m.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let piv = (col..n)
                .max_by(|&i, &j| a[(i, col)].abs().total_cmp(&a[(j, col)].abs()))
                .unwrap();
            for j in 0..n {
                let t = a[(col, j)];
                a[(col, j)] = a[(piv, j)];
                a[(piv, j)] = t;
                let t = inv[(col, j)];
                inv[(col, j)] = inv[(piv, j)];
                inv[(piv, j)] = t;
            }
            let p = a[(col, col)];
            for j in 0..n {
                a[(col, j)] /= p;
                inv[(col, j)] /= p;
            }
            for i in 0..n {
                if i != col {
                    let f = a[(i, col)];
                    for j in 0..n {
                        a[(i, j)] -= f * a[(col, j)];
                        inv[(i, j)] -= f * inv[(col, j)];
                    }
                }
            }
        }
        inv
    }

    // Scaling-and-squaring Taylor exponential of a dense matrix.
    fn dense_exp(m: &Matrix) -> Matrix {
        let norm = m.max_abs() * m.dim() as f64;
        let mut squarings = 0;
        let mut scale = 1.0;
        while norm * scale > 0.5 {
            scale *= 0.5;
            squarings += 1;
        }
        let a = m.scale(scale);
        let n = m.dim();
        let mut sum = Matrix::identity(n);
        let mut term = Matrix::identity(n);
        for k in 1..30 {
            term = term.mul(&a).scale(1.0 / k as f64);
            sum = Matrix::from_fn(n, |i, j| sum[(i, j)] + term[(i, j)]);
        }
        for _ in 0..squarings {
            sum = sum.mul(&sum);
        }
        sum
    }

    fn check_decomposition(t: &TridiagonalSymmetric, eig: &EigenDecomposition) {
        let n = t.dim();
        let s = &eig.vectors;
        let sts = s.transpose().mul(s);
        assert!(sts.sub(&Matrix::identity(n)).max_abs() < 1e-10);
        let ts = t.to_dense().mul(s);
        let sd = Matrix::from_fn(n, |i, j| s[(i, j)] * eig.values[j]);
        assert!(ts.sub(&sd).max_abs() <= 1e-9 * t.max_abs().max(1.0));
        for w in eig.values.windows(2) {
            assert!(w[0] <= w[1]);
        }
    }

    #[test]
    fn one_by_one() {
        let eig = tridiag_eigen(&tri(&[3.0], &[])).unwrap();
        assert_eq!(eig.values, vec![3.0]);
        assert_eq!(eig.vectors[(0, 0)], 1.0);
    }

    #[test]
    fn two_by_two_symmetric_pair() {
        let eig = tridiag_eigen(&tri(&[0.0, 0.0], &[1.0])).unwrap();
        let h = core::f64::consts::FRAC_1_SQRT_2;
        assert!((eig.values[0] + 1.0).abs() < 1e-15);
        assert!((eig.values[1] - 1.0).abs() < 1e-15);
        assert!((eig.vectors[(0, 0)] - h).abs() < 1e-15);
        assert!((eig.vectors[(1, 0)] + h).abs() < 1e-15);
        assert!((eig.vectors[(0, 1)] - h).abs() < 1e-15);
        assert!((eig.vectors[(1, 1)] - h).abs() < 1e-15);
    }

    #[test]
    fn two_by_two_shifted() {
        let eig = tridiag_eigen(&tri(&[2.0, 2.0], &[1.0])).unwrap();
        assert!((eig.values[0] - 1.0).abs() < 1e-14);
        assert!((eig.values[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn handles_zero_offdiagonals() {
        let t = tri(&[5.0, -1.0, 2.0, 2.0], &[0.0, 0.7, 0.0]);
        let eig = tridiag_eigen(&t).unwrap();
        check_decomposition(&t, &eig);
        assert!((eig.values[3] - 5.0).abs() < 1e-14);
    }

    #[test]
    fn matrix_function_scalar_and_identity() {
        let m = matrix_function(&tri(&[0.3], &[]), |x| x.exp()).unwrap();
        assert!((m[(0, 0)] - 0.3f64.exp()).abs() < 1e-15);
        let t = tri(&[1.0, -2.0, 0.5, 3.0], &[0.4, -1.1, 2.0]);
        let m = matrix_function(&t, |x| x).unwrap();
        assert!(m.sub(&t.to_dense()).max_abs() < 1e-12);
        assert_eq!(m.max_asymmetry(), 0.0);
    }

    #[test]
    fn matrix_function_diagonal_exp() {
        let t = tri(&[0.0, 2f64.ln()], &[0.0]);
        let m = matrix_function(&t, f64::exp).unwrap();
        assert!((m[(0, 0)] - 1.0).abs() < 1e-15);
        assert!((m[(1, 1)] - 2.0).abs() < 1e-15);
        assert_eq!(m[(0, 1)], 0.0);
    }

    #[test]
    fn matrix_function_reports_singularity() {
        let t = tri(&[0.0, 1.0], &[0.0]);
        assert!(matches!(
            matrix_function(&t, |x| 1.0 / x),
            Err(Error::Singularity { .. })
        ));
    }

    #[test]
    fn inverse_of_identity() {
        let inv = tridiag_inverse_closed_form(&TridiagonalSymmetric::identity(4)).unwrap();
        assert!(inv.sub(&Matrix::identity(4)).max_abs() < 1e-15);
    }

    #[test]
    fn inverse_two_by_two() {
        let inv = tridiag_inverse_closed_form(&tri(&[2.0, 2.0], &[1.0])).unwrap();
        let expected = [[2.0 / 3.0, -1.0 / 3.0], [-1.0 / 3.0, 2.0 / 3.0]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((inv[(i, j)] - expected[i][j]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn inverse_reports_zero_pivot() {
        assert!(matches!(
            tridiag_inverse_closed_form(&tri(&[0.0, 1.0], &[1.0])),
            Err(Error::Singular { .. })
        ));
    }

    #[test]
    fn log_and_direct_products_agree() {
        let n = 70;
        let d: Vec<f64> = (0..n).map(|i| 3.0 + (i as f64 * 0.37).sin()).collect();
        let e: Vec<f64> = (0..n - 1).map(|i| 0.9 * (i as f64 * 0.11).cos()).collect();
        let t = tri(&d, &e);
        let inv = tridiag_inverse_closed_form(&t).unwrap();
        let oracle = dense_inverse(&t.to_dense());
        assert!(inv.sub(&oracle).max_abs() < 1e-12);
        // same matrix, first 50 rows/cols: direct-product path
        let t50 = tri(&d[..50], &e[..49]);
        let inv50 = tridiag_inverse_closed_form(&t50).unwrap();
        assert!(inv50.sub(&dense_inverse(&t50.to_dense())).max_abs() < 1e-12);
    }

    fn arb_tridiag(max_n: usize, bound: f64) -> impl Strategy<Value = TridiagonalSymmetric> {
        (1..=max_n).prop_flat_map(move |n| {
            (
                proptest::collection::vec(-bound..bound, n),
                proptest::collection::vec(-bound..bound, n - 1),
            )
                .prop_map(|(d, e)| TridiagonalSymmetric::new(d, e).unwrap())
        })
    }

    proptest! {
        #[test]
        fn decomposition_is_orthonormal(t in arb_tridiag(25, 5.0)) {
            let eig = tridiag_eigen(&t).unwrap();
            check_decomposition(&t, &eig);
        }

        #[test]
        fn exp_matches_taylor(t in arb_tridiag(20, 2.0)) {
            let via_eig = matrix_function(&t, f64::exp).unwrap();
            let oracle = dense_exp(&t.to_dense());
            let scale = oracle.max_abs().max(1.0);
            prop_assert!(via_eig.sub(&oracle).max_abs() < 1e-8 * scale);
        }

        #[test]
        fn spectral_shift_commutes(t in arb_tridiag(15, 3.0), c in -2.0f64..2.0) {
            let lhs = matrix_function(&t.shifted(c), |x| (0.3 * x).sinh()).unwrap();
            let rhs = matrix_function(&t, |x| (0.3 * (x + c)).sinh()).unwrap();
            prop_assert!(lhs.sub(&rhs).max_abs() < 1e-10);
        }

        #[test]
        fn reciprocal_matches_closed_form(
            d in proptest::collection::vec(4.0f64..8.0, 2..30),
            seed in proptest::collection::vec(-1.5f64..1.5, 30),
        ) {
            let n = d.len();
            let t = TridiagonalSymmetric::new(d, seed[..n - 1].to_vec()).unwrap();
            let closed = tridiag_inverse_closed_form(&t).unwrap();
            let spectral = matrix_function(&t, |x| 1.0 / x).unwrap();
            prop_assert!(closed.sub(&spectral).max_abs() < 1e-8);
            prop_assert!(closed.sub(&dense_inverse(&t.to_dense())).max_abs() < 1e-12);
        }
    }
}
