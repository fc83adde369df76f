//! Dense Hermitian eigendecomposition by cyclic Jacobi rotations.
//!
//! One implementation serves both the real symmetric Laplacians and the
//! complex Hermitian operators of the simulator.

use num_complex::Complex64;

use crate::error::SpectralError;

/// Off-diagonal Frobenius tolerance, relative to the matrix norm.
pub const JACOBI_TOL: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Field operations the rotation needs.
pub trait Scalar: Copy + Default + PartialEq + std::fmt::Debug {
    fn conj(self) -> Self;
    fn norm(self) -> f64;
    fn norm_sqr(self) -> f64;
    fn re(self) -> f64;
    fn from_re(x: f64) -> Self;
    /// `self / |self|`, or one for zero.
    fn phase(self) -> Self;
    fn mul(self, other: Self) -> Self;
    fn add(self, other: Self) -> Self;
    fn sub(self, other: Self) -> Self;
    fn scale(self, k: f64) -> Self;
}

impl Scalar for f64 {
    fn conj(self) -> Self {
        self
    }
    fn norm(self) -> f64 {
        self.abs()
    }
    fn norm_sqr(self) -> f64 {
        self * self
    }
    fn re(self) -> f64 {
        self
    }
    fn from_re(x: f64) -> Self {
        x
    }
    fn phase(self) -> Self {
        if self < 0.0 {
            -1.0
        } else {
            1.0
        }
    }
    fn mul(self, other: Self) -> Self {
        self * other
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn sub(self, other: Self) -> Self {
        self - other
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
}

impl Scalar for Complex64 {
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn norm(self) -> f64 {
        Complex64::norm(self)
    }
    fn norm_sqr(self) -> f64 {
        Complex64::norm_sqr(&self)
    }
    fn re(self) -> f64 {
        self.re
    }
    fn from_re(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn phase(self) -> Self {
        let r = Complex64::norm(self);
        if r == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            self / r
        }
    }
    fn mul(self, other: Self) -> Self {
        self * other
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn sub(self, other: Self) -> Self {
        self - other
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
}

/// Row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    pub dim: usize,
    pub data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            data: vec![T::default(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = T::from_re(1.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        Matrix {
            dim,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max |A - A†|` entrywise.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                worst = worst.max(self[(i, j)].sub(self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] = out[(i, j)].add(a.mul(other[(k, j)]));
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        (0..self.dim)
            .map(|i| (0..self.dim).fold(T::default(), |acc, j| acc.add(self[(i, j)].mul(v[j]))))
            .collect()
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.dim + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.dim + j]
    }
}

/// Eigenvalues ascending; `vectors` holds the matching eigenvectors as
/// columns.
#[derive(Debug, Clone)]
pub struct Eigen<T> {
    pub values: Vec<f64>,
    pub vectors: Matrix<T>,
}

impl<T: Scalar> Eigen<T> {
    pub fn vector(&self, k: usize) -> Vec<T> {
        (0..self.vectors.dim)
            .map(|i| self.vectors[(i, k)])
            .collect()
    }
}

fn off_diagonal(a: &Matrix<impl Scalar>) -> f64 {
    let mut s = 0.0;
    for i in 0..a.dim {
        for j in 0..a.dim {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Full eigendecomposition of a Hermitian matrix. The input is assumed
/// Hermitian; only its values are read, not checked.
pub fn eigh<T: Scalar>(matrix: &Matrix<T>) -> Result<Eigen<T>, SpectralError> {
    let n = matrix.dim;
    let mut a = matrix.clone();
    let mut v = Matrix::<T>::identity(n);
    let scale = a.frobenius().max(f64::MIN_POSITIVE);

    let mut converged = off_diagonal(&a) <= JACOBI_TOL * scale;
    let mut sweep = 0;
    while !converged && sweep < JACOBI_MAX_SWEEPS {
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweep += 1;
        converged = off_diagonal(&a) <= JACOBI_TOL * scale;
    }
    if !converged {
        return Err(SpectralError::NoConvergence(JACOBI_MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re().total_cmp(&a[(j, j)].re()));
    let values = order.iter().map(|&i| a[(i, i)].re()).collect();
    let mut vectors = Matrix::<T>::zeros(n);
    for (k, &i) in order.iter().enumerate() {
        for r in 0..n {
            vectors[(r, k)] = v[(r, i)];
        }
    }
    Ok(Eigen { values, vectors })
}

/// One Jacobi rotation annihilating `a[p][q]`: `A ← U† A U`, `V ← V U` with
/// `U = diag(1, e^{-iφ}) · R(θ)` on the `(p, q)` block.
fn rotate<T: Scalar>(a: &mut Matrix<T>, v: &mut Matrix<T>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag < 1e-300 {
        return;
    }
    let app = a[(p, p)].re();
    let aqq = a[(q, q)].re();
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let w = apq.phase().conj();

    // U block: [[c, s], [-s w, c w]]
    let u_pp = T::from_re(c);
    let u_pq = T::from_re(s);
    let u_qp = w.scale(-s);
    let u_qq = w.scale(c);

    let n = a.dim;
    // A ← A U (columns p, q)
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp.mul(u_pp).add(akq.mul(u_qp));
        a[(k, q)] = akp.mul(u_pq).add(akq.mul(u_qq));
    }
    // A ← U† A (rows p, q)
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = u_pp.conj().mul(apk).add(u_qp.conj().mul(aqk));
        a[(q, k)] = u_pq.conj().mul(apk).add(u_qq.conj().mul(aqk));
    }
    a[(p, q)] = T::default();
    a[(q, p)] = T::default();
    let (dp, dq) = (a[(p, p)].re(), a[(q, q)].re());
    a[(p, p)] = T::from_re(dp);
    a[(q, q)] = T::from_re(dq);
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp.mul(u_pp).add(vkq.mul(u_qp));
        v[(k, q)] = vkp.mul(u_pq).add(vkq.mul(u_qq));
    }
}

/// `f(A) = V f(Λ) V†` for Hermitian `A` and a complex-valued spectral function.
pub fn hermitian_function(
    matrix: &Matrix<Complex64>,
    f: impl Fn(f64) -> Complex64,
) -> Result<Matrix<Complex64>, SpectralError> {
    let eig = eigh(matrix)?;
    let n = matrix.dim;
    let mut out = Matrix::<Complex64>::zeros(n);
    for (k, &lambda) in eig.values.iter().enumerate() {
        let fk = f(lambda);
        for i in 0..n {
            let vik = eig.vectors[(i, k)] * fk;
            for j in 0..n {
                out[(i, j)] += vik * eig.vectors[(j, k)].conj();
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual<T: Scalar>(m: &Matrix<T>, eig: &Eigen<T>) -> f64 {
        let mut worst = 0.0f64;
        for k in 0..m.dim {
            let vk = eig.vector(k);
            let mv = m.apply(&vk);
            let r: f64 = mv
                .iter()
                .zip(&vk)
                .map(|(a, b)| a.sub(b.scale(eig.values[k])).norm_sqr())
                .sum::<f64>()
                .sqrt();
            worst = worst.max(r);
        }
        worst
    }

    #[test]
    fn real_two_by_two() {
        let m = Matrix::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]]);
        let eig = eigh(&m).unwrap();
        assert!((eig.values[0] - 0.0).abs() < 1e-14);
        assert!((eig.values[1] - 2.0).abs() < 1e-14);
        assert!(residual(&m, &eig) < 1e-12);
    }

    #[test]
    fn complex_hermitian_matches_nalgebra() {
        let i = Complex64::i();
        let one = Complex64::new(1.0, 0.0);
        let rows = vec![
            vec![2.0 * one, one + i, 0.5 * i, 0.0 * one],
            vec![one - i, -1.0 * one, 0.3 * one, 2.0 * i],
            vec![-0.5 * i, 0.3 * one, 0.5 * one, one],
            vec![0.0 * one, -2.0 * i, one, 3.0 * one],
        ];
        let m = Matrix::from_rows(&rows);
        let eig = eigh(&m).unwrap();
        assert!(residual(&m, &eig) < 1e-10);

        let na = nalgebra::DMatrix::from_fn(4, 4, |r, c| rows[r][c]);
        let mut expected: Vec<f64> = na.symmetric_eigen().eigenvalues.iter().copied().collect();
        expected.sort_by(f64::total_cmp);
        for (a, b) in eig.values.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-10, "{a} vs {b}");
        }
    }

    #[test]
    fn degenerate_spectrum() {
        let m = Matrix::<f64>::identity(5);
        let eig = eigh(&m).unwrap();
        assert!(eig.values.iter().all(|&x| (x - 1.0).abs() < 1e-15));
    }

    #[test]
    fn exponential_of_pauli_x() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let x = Matrix::from_rows(&[vec![zero, one], vec![one, zero]]);
        let t = 0.7;
        let u = hermitian_function(&x, |e| Complex64::from_polar(1.0, -e * t)).unwrap();
        assert!((u[(0, 0)] - Complex64::new(t.cos(), 0.0)).norm() < 1e-12);
        assert!((u[(0, 1)] - Complex64::new(0.0, -t.sin())).norm() < 1e-12);
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn random_symmetric_residual(entries in proptest::collection::vec(-1.0f64..1.0, 36)) {
            let mut m = Matrix::<f64>::zeros(6);
            for i in 0..6 {
                for j in 0..6 {
                    m[(i, j)] = entries[i * 6 + j] + entries[j * 6 + i];
                }
            }
            let eig = eigh(&m).unwrap();
            prop_assert!(residual(&m, &eig) < 1e-9);
            let trace: f64 = (0..6).map(|i| m[(i, i)]).sum();
            prop_assert!((eig.values.iter().sum::<f64>() - trace).abs() < 1e-9);
        }
    }
}
