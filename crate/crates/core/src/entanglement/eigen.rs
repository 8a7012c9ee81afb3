//! Eigenvalues of complex Hermitian matrices.
//!
//! [`hermitian_eigenvalues`] reduces to tridiagonal form with Householder
//! reflections and finishes with implicit QR (via `nalgebra`), which is what
//! keeps the 676×676 path–OAM matrices fast. [`jacobi_eigenvalues`] is a
//! slower, independent cyclic Jacobi solver used to cross-check it.
//!
//! Each Jacobi rotation `U = diag(1, e^{-iφ}) · R(θ)` first strips the phase from the
//! pivot `a_pq = |a_pq| e^{iφ}` and then annihilates the resulting real
//! symmetric 2×2 block. Sweeps stop once the off-diagonal Frobenius norm
//! drops below `OFF_DIAGONAL_TOL` times the full Frobenius norm.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const OFF_DIAGONAL_TOL: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Square complex matrix stored row major.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl SquareMatrix {
    pub fn zeros(dim: usize) -> Self {
        SquareMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    /// # Panics
    /// If `data.len() != dim * dim`.
    pub fn from_row_major(dim: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(
            data.len(),
            dim * dim,
            "data does not fill a {dim}x{dim} matrix"
        );
        SquareMatrix { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// `max |A_ij − conj(A_ji)|`.
    pub fn hermiticity_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn max_diff(&self, other: &SquareMatrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn frobenius_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    fn off_diagonal_sq(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i != j {
                    s += self.get(i, j).norm_sqr();
                }
            }
        }
        s
    }
}

/// Checks Hermiticity and averages away the anti-Hermitian round-off.
fn symmetrized(matrix: &SquareMatrix) -> Result<SquareMatrix> {
    let herm = matrix.hermiticity_error();
    if herm > HERMITIAN_TOL {
        return Err(Error::NotHermitian(herm));
    }
    let n = matrix.dim();
    let mut a = matrix.clone();
    for i in 0..n {
        let d = a.get(i, i).re;
        a.set(i, i, Complex64::new(d, 0.0));
        for j in (i + 1)..n {
            let v = (a.get(i, j) + a.get(j, i).conj()) * 0.5;
            a.set(i, j, v);
            a.set(j, i, v.conj());
        }
    }
    Ok(a)
}

/// Real eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues(matrix: &SquareMatrix) -> Result<Vec<f64>> {
    let a = symmetrized(matrix)?;
    let n = a.dim();
    let m = nalgebra::DMatrix::from_row_slice(n, n, a.as_slice());
    let mut values: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Same contract as [`hermitian_eigenvalues`], computed by cyclic Jacobi
/// sweeps. Cubic per sweep with poor locality, so meant for checking.
pub fn jacobi_eigenvalues(matrix: &SquareMatrix) -> Result<Vec<f64>> {
    let mut a = symmetrized(matrix)?;
    let n = a.dim();
    let threshold_sq = OFF_DIAGONAL_TOL * OFF_DIAGONAL_TOL * a.frobenius_sq();
    for _ in 0..MAX_SWEEPS {
        if a.off_diagonal_sq() <= threshold_sq {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, p, q);
            }
        }
    }

    let mut values: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Applies `A ← U† A U` with the Jacobi rotation annihilating `a_pq`.
fn rotate(a: &mut SquareMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    let b = apq.norm();
    if b == 0.0 {
        return;
    }
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    // skip pivots that are negligible next to both diagonal entries
    if b < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a.set(p, q, Complex64::new(0.0, 0.0));
        a.set(q, p, Complex64::new(0.0, 0.0));
        return;
    }
    let phase = apq / b;
    let tau = (aqq - app) / (2.0 * b);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // U = [[c, s], [−s e^{-iφ}, c e^{-iφ}]] restricted to (p, q)
    let pc = phase.conj();
    let u_pp = Complex64::new(c, 0.0);
    let u_pq = Complex64::new(s, 0.0);
    let u_qp = -pc * s;
    let u_qq = pc * c;

    let n = a.dim();
    // columns: A ← A U
    for k in 0..n {
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set(k, p, akp * u_pp + akq * u_qp);
        a.set(k, q, akp * u_pq + akq * u_qq);
    }
    // rows: A ← U† A
    for k in 0..n {
        let apk = a.get(p, k);
        let aqk = a.get(q, k);
        a.set(p, k, u_pp.conj() * apk + u_qp.conj() * aqk);
        a.set(q, k, u_pq.conj() * apk + u_qq.conj() * aqk);
    }
    a.set(p, q, Complex64::new(0.0, 0.0));
    a.set(q, p, Complex64::new(0.0, 0.0));
    let dp = a.get(p, p).re;
    let dq = a.get(q, q).re;
    a.set(p, p, Complex64::new(dp, 0.0));
    a.set(q, q, Complex64::new(dq, 0.0));
}
