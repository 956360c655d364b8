//! Small dense linear algebra, generic over the scalar type.
//!
//! Everything here targets desk-scale problems (dimensions in the single
//! digits, families of a few dozen members), so plain Jacobi-style
//! iterations are accurate and fast enough: cyclic Jacobi for symmetric
//! eigendecomposition and one-sided (Hestenes) Jacobi for the SVD.

use crate::scalar::{real, Scalar};

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<S>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Self { rows: r, cols: c, data }
    }

    pub fn from_cols(cols: &[Vec<S>]) -> Self {
        let c = cols.len();
        let r = if c == 0 { 0 } else { cols[0].len() };
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
            for i in 0..r {
                m[(i, j)] = col[i];
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == S::zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)] + a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn matvec(&self, x: &[S]) -> Vec<S> {
        assert_eq!(self.cols, x.len(), "vector length must match columns");
        (0..self.rows).map(|i| dot(self.row(i), x)).collect()
    }

    /// `A^T x` without forming the transpose.
    pub fn tr_matvec(&self, x: &[S]) -> Vec<S> {
        assert_eq!(self.rows, x.len(), "vector length must match rows");
        let mut out = vec![S::zero(); self.cols];
        for i in 0..self.rows {
            let xi = x[i];
            for j in 0..self.cols {
                out[j] = out[j] + self[(i, j)] * xi;
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> S {
        self.data.iter().map(|v| *v * *v).sum::<S>().sqrt()
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let tmp = self[(i, a)];
            self[(i, a)] = self[(i, b)];
            self[(i, b)] = tmp;
        }
    }
}

impl<S: Scalar> std::ops::Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S: Scalar> std::ops::IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| *x * *y).sum()
}

pub fn norm2<S: Scalar>(a: &[S]) -> S {
    dot(a, a).sqrt()
}

pub fn scale<S: Scalar>(a: &[S], s: S) -> Vec<S> {
    a.iter().map(|x| *x * s).collect()
}

pub fn add<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| *x + *y).collect()
}

pub fn sub<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| *x - *y).collect()
}

/// `a += s * b` in place.
pub fn axpy<S: Scalar>(a: &mut [S], s: S, b: &[S]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x = *x + s * *y;
    }
}

/// Normalize in place; returns the original norm (zero vectors are left as is).
pub fn normalize<S: Scalar>(a: &mut [S]) -> S {
    let n = norm2(a);
    if n > S::zero() {
        let inv = S::one() / n;
        for x in a.iter_mut() {
            *x = *x * inv;
        }
    }
    n
}

/// Determinant by LU decomposition with partial pivoting.
pub fn det<S: Scalar>(m: &Matrix<S>) -> S {
    assert_eq!(m.rows(), m.cols(), "determinant needs a square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut sign = S::one();
    let mut result = S::one();
    for k in 0..n {
        let mut piv = k;
        let mut best = a[(k, k)].abs();
        for i in k + 1..n {
            let v = a[(i, k)].abs();
            if v > best {
                best = v;
                piv = i;
            }
        }
        if best == S::zero() {
            return S::zero();
        }
        if piv != k {
            for j in 0..n {
                let tmp = a[(k, j)];
                a[(k, j)] = a[(piv, j)];
                a[(piv, j)] = tmp;
            }
            sign = -sign;
        }
        let pivot = a[(k, k)];
        result = result * pivot;
        for i in k + 1..n {
            let f = a[(i, k)] / pivot;
            for j in k..n {
                a[(i, j)] = a[(i, j)] - f * a[(k, j)];
            }
        }
    }
    result * sign
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in ascending order with matching orthonormal
/// eigenvector columns.
pub fn sym_eigen<S: Scalar>(m: &Matrix<S>) -> (Vec<S>, Matrix<S>) {
    assert_eq!(m.rows(), m.cols(), "symmetric eigen needs a square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut v = Matrix::identity(n);
    if n <= 1 {
        return (vec![if n == 1 { a[(0, 0)] } else { S::zero() }; n], v);
    }
    let eps = S::epsilon();
    for _sweep in 0..64 {
        let mut off = S::zero();
        for i in 0..n {
            for j in i + 1..n {
                off = off + a[(i, j)] * a[(i, j)];
            }
        }
        let diag_scale: S = (0..n).map(|i| a[(i, i)] * a[(i, i)]).sum::<S>().sqrt() + eps;
        if off.sqrt() <= eps * diag_scale * real::<S>(8.0) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq.abs() <= eps * (a[(p, p)].abs() + a[(q, q)].abs() + eps) {
                    continue;
                }
                let zeta = (a[(q, q)] - a[(p, p)]) / (real::<S>(2.0) * apq);
                let t = zeta.signum() / (zeta.abs() + (S::one() + zeta * zeta).sqrt());
                let c = S::one() / (S::one() + t * t).sqrt();
                let s = c * t;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].partial_cmp(&a[(j, j)]).expect("finite eigenvalues"));
    let values: Vec<S> = order.iter().map(|&i| a[(i, i)]).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for k in 0..n {
            vectors[(k, dst)] = v[(k, src)];
        }
    }
    (values, vectors)
}

/// Thin singular value decomposition `A = U diag(sigma) V^T`.
#[derive(Debug, Clone)]
pub struct Svd<S> {
    /// `rows x r` with orthonormal columns (zero columns for zero singular values).
    pub u: Matrix<S>,
    /// Singular values, descending; length `r = min(rows, cols)`.
    pub sigma: Vec<S>,
    /// `cols x r` with orthonormal columns.
    pub v: Matrix<S>,
}

/// One-sided Jacobi SVD; accurate for the small matrices used here.
pub fn svd<S: Scalar>(m: &Matrix<S>) -> Svd<S> {
    if m.rows() < m.cols() {
        let t = svd(&m.transpose());
        return Svd { u: t.v, sigma: t.sigma, v: t.u };
    }
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut v = Matrix::identity(cols);
    let eps = S::epsilon();
    for _sweep in 0..64 {
        let mut rotated = false;
        for i in 0..cols {
            for j in i + 1..cols {
                let ci = a.col(i);
                let cj = a.col(j);
                let aa = dot(&ci, &ci);
                let bb = dot(&cj, &cj);
                let g = dot(&ci, &cj);
                if g.abs() <= eps * (aa * bb).sqrt() + S::min_positive_value() {
                    continue;
                }
                rotated = true;
                let zeta = (bb - aa) / (real::<S>(2.0) * g);
                let t = zeta.signum() / (zeta.abs() + (S::one() + zeta * zeta).sqrt());
                let c = S::one() / (S::one() + t * t).sqrt();
                let s = c * t;
                for k in 0..rows {
                    let aki = a[(k, i)];
                    let akj = a[(k, j)];
                    a[(k, i)] = c * aki - s * akj;
                    a[(k, j)] = s * aki + c * akj;
                }
                for k in 0..cols {
                    let vki = v[(k, i)];
                    let vkj = v[(k, j)];
                    v[(k, i)] = c * vki - s * vkj;
                    v[(k, j)] = s * vki + c * vkj;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sigma: Vec<S> = (0..cols).map(|j| norm2(&a.col(j))).collect();
    // Sort descending, carrying columns of A and V along.
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&i, &j| sigma[j].partial_cmp(&sigma[i]).expect("finite singular values"));
    let mut k = 0;
    while k < cols {
        let target = order[k];
        if target != k {
            a.swap_cols(k, target);
            v.swap_cols(k, target);
            sigma.swap(k, target);
            let pos = order.iter().position(|&x| x == k).expect("permutation");
            order.swap(k, pos);
        } else {
            k += 1;
        }
    }
    let mut u = Matrix::zeros(rows, cols);
    for j in 0..cols {
        if sigma[j] > S::zero() {
            let inv = S::one() / sigma[j];
            for i in 0..rows {
                u[(i, j)] = a[(i, j)] * inv;
            }
        }
    }
    Svd { u, sigma, v }
}

/// Moore-Penrose pseudo-inverse with relative singular-value truncation.
pub fn pinv<S: Scalar>(m: &Matrix<S>, rel_tol: S) -> Matrix<S> {
    let decomp = svd(m);
    let smax = decomp.sigma.first().copied().unwrap_or(S::zero());
    let thresh = smax * rel_tol;
    // pinv = V diag(1/sigma) U^T
    let mut out = Matrix::zeros(m.cols(), m.rows());
    for (k, &s) in decomp.sigma.iter().enumerate() {
        if s <= thresh || s == S::zero() {
            continue;
        }
        let inv = S::one() / s;
        for i in 0..m.cols() {
            let vik = decomp.v[(i, k)] * inv;
            for j in 0..m.rows() {
                out[(i, j)] = out[(i, j)] + vik * decomp.u[(j, k)];
            }
        }
    }
    out
}

/// Largest singular value.
pub fn spectral_norm<S: Scalar>(m: &Matrix<S>) -> S {
    svd(m).sigma.first().copied().unwrap_or(S::zero())
}

/// Ratio of smallest to largest singular value (zero for a zero matrix).
pub fn sigma_ratio<S: Scalar>(m: &Matrix<S>) -> S {
    let s = svd(m).sigma;
    match (s.first(), s.last()) {
        (Some(&hi), Some(&lo)) if hi > S::zero() => lo / hi,
        _ => S::zero(),
    }
}

/// Project `x` out of the span of the orthonormal columns in `basis`,
/// with one re-orthogonalization pass.
fn orthogonalize_against<S: Scalar>(x: &mut [S], basis: &[Vec<S>]) {
    for _ in 0..2 {
        for b in basis {
            let c = dot(x, b);
            axpy(x, -c, b);
        }
    }
}

/// Gram-Schmidt orthonormalization of the given vectors.
/// Fails (returns None) if the input is rank deficient.
pub fn orthonormalize<S: Scalar>(vectors: &[Vec<S>]) -> Option<Vec<Vec<S>>> {
    let mut basis: Vec<Vec<S>> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let scale0 = norm2(v);
        let mut w = v.clone();
        orthogonalize_against(&mut w, &basis);
        let n = normalize(&mut w);
        if n <= scale0 * real::<S>(1e-12) {
            return None;
        }
        basis.push(w);
    }
    Some(basis)
}

/// Extend an orthonormal set to an orthonormal basis of the full space,
/// returning only the added vectors. Candidates are standard basis
/// vectors, picked greedily by residual norm for stability.
pub fn complete_orthonormal_basis<S: Scalar>(existing: &[Vec<S>], dim: usize) -> Vec<Vec<S>> {
    let mut basis: Vec<Vec<S>> = existing.to_vec();
    let mut added = Vec::new();
    while basis.len() < dim {
        let mut best: Option<(S, Vec<S>)> = None;
        for i in 0..dim {
            let mut e = vec![S::zero(); dim];
            e[i] = S::one();
            orthogonalize_against(&mut e, &basis);
            let n = norm2(&e);
            if best.as_ref().map_or(true, |(bn, _)| n > *bn) {
                best = Some((n, e));
            }
        }
        let (_, mut w) = best.expect("dim > 0");
        orthogonalize_against(&mut w, &basis);
        normalize(&mut w);
        basis.push(w.clone());
        added.push(w);
    }
    added
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn det_small_cases() {
        let m = Matrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 4.0]]);
        assert_relative_eq!(det(&m), 4.0, max_relative = 1e-14);
        let m = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert_relative_eq!(det(&m), 0.0, epsilon = 1e-12);
        let m = Matrix::from_rows(&[
            vec![2.0, -1.0, 0.0],
            vec![-1.0, 2.0, -1.0],
            vec![0.0, -1.0, 2.0],
        ]);
        assert_relative_eq!(det(&m), 4.0, max_relative = 1e-12);
    }

    #[test]
    fn eigen_matches_hand_values() {
        // [[2,1],[1,2]] has eigenvalues 1 and 3.
        let m = Matrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]);
        let (vals, vecs) = sym_eigen(&m);
        assert_relative_eq!(vals[0], 1.0, max_relative = 1e-12);
        assert_relative_eq!(vals[1], 3.0, max_relative = 1e-12);
        // Eigenvectors reconstruct: A v = lambda v.
        for k in 0..2 {
            let v = vecs.col(k);
            let av = m.matvec(&v);
            for i in 0..2 {
                assert_relative_eq!(av[i], vals[k] * v[i], epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn svd_diag() {
        let m = Matrix::from_rows(&[vec![2.0, 0.0], vec![0.0, 1.0]]);
        let s = svd(&m);
        assert_relative_eq!(s.sigma[0], 2.0, max_relative = 1e-14);
        assert_relative_eq!(s.sigma[1], 1.0, max_relative = 1e-14);
    }

    #[test]
    fn svd_wide_matrix() {
        let m = Matrix::from_rows(&[vec![1.0, 1.0, 0.0]]);
        let s = svd(&m);
        assert_relative_eq!(s.sigma[0], 2f64.sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn pinv_orthogonal_columns() {
        // Duplicated member example: pinv of [[1,0],[1,0],[0,1]]^T layout.
        let m = Matrix::from_rows(&[vec![1.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]);
        let p = pinv(&m, 1e-10);
        // p * m = I on the column space.
        let pm = p.matmul(&m);
        assert_relative_eq!(pm[(0, 0)], 1.0, epsilon = 1e-12);
        assert_relative_eq!(pm[(1, 1)], 1.0, epsilon = 1e-12);
        assert_relative_eq!(pm[(0, 1)], 0.0, epsilon = 1e-12);
        // Explicit values: pinv row structure gives the averaged dual.
        assert_relative_eq!(p[(0, 0)], 0.5, epsilon = 1e-12);
        assert_relative_eq!(p[(0, 1)], 0.5, epsilon = 1e-12);
        assert_relative_eq!(p[(1, 2)], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn complete_basis_is_orthonormal() {
        let a = vec![vec![1.0 / 2f64.sqrt(), 1.0 / 2f64.sqrt(), 0.0]];
        let rest = complete_orthonormal_basis(&a, 3);
        assert_eq!(rest.len(), 2);
        let mut all = a.clone();
        all.extend(rest);
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert_relative_eq!(dot(&all[i], &all[j]), expected, epsilon = 1e-13);
            }
        }
    }

    fn small_matrix(n: usize) -> impl Strategy<Value = Matrix<f64>> {
        proptest::collection::vec(-10.0..10.0f64, n * n).prop_map(move |data| {
            let rows: Vec<Vec<f64>> = data.chunks(n).map(|c| c.to_vec()).collect();
            Matrix::from_rows(&rows)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn eigen_reconstructs_symmetric(m in small_matrix(4)) {
            // Symmetrize first.
            let mt = m.transpose();
            let mut s = Matrix::zeros(4, 4);
            for i in 0..4 {
                for j in 0..4 {
                    s[(i, j)] = 0.5 * (m[(i, j)] + mt[(i, j)]);
                }
            }
            let (vals, vecs) = sym_eigen(&s);
            // V diag(vals) V^T reconstructs S.
            for i in 0..4 {
                for j in 0..4 {
                    let mut acc = 0.0;
                    for k in 0..4 {
                        acc += vecs[(i, k)] * vals[k] * vecs[(j, k)];
                    }
                    prop_assert!((acc - s[(i, j)]).abs() < 1e-9);
                }
            }
        }

        #[test]
        fn svd_reconstructs(m in small_matrix(4)) {
            let d = svd(&m);
            for i in 0..4 {
                for j in 0..4 {
                    let mut acc = 0.0;
                    for k in 0..d.sigma.len() {
                        acc += d.u[(i, k)] * d.sigma[k] * d.v[(j, k)];
                    }
                    prop_assert!((acc - m[(i, j)]).abs() < 1e-9);
                }
            }
        }
    }
}
