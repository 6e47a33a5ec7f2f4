//! Dense kernels for tiny real matrices (1 ≤ n ≤ 8): the generator `X` of a
//! dilation group and everything derived from it. Matrices are stored
//! row-major and validated to be square and finite at construction.

mod eigen;
mod expm;

pub use eigen::{eigen_general, spectral_norm, sym_eigen, sym_eigen_decomp, Eigenvalue, Spectrum};
pub use expm::{lie_product_approx, mat_exp, mat_log};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported dimension. The eigensolvers and the exponential are
/// tuned for desk-scale matrices; nothing here is meant for large n.
pub const MAX_DIM: usize = 8;

/// Dense real n×n matrix, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

/// Wire format: `{"n": 2, "rows": [[0, 1], [-1, 0]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub rows: Vec<Vec<f64>>,
}

impl Matrix {
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if !(1..=MAX_DIM).contains(&n) {
            return Err(Error::InvalidInput(format!(
                "dimension n = {n} outside supported range 1..={MAX_DIM}"
            )));
        }
        if data.len() != n * n {
            return Err(Error::InvalidInput(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                data.len()
            )));
        }
        for (k, v) in data.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "entry rows[{}][{}] is not finite: {v}",
                    k / n,
                    k % n
                )));
            }
        }
        Ok(Matrix { n, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::InvalidInput(format!(
                    "rows[{i}] has length {}, expected {n}",
                    r.len()
                )));
            }
        }
        Matrix::new(n, rows.concat())
    }

    /// Array-literal constructor, mostly for tests and fixed inputs.
    /// Panics on non-finite entries.
    pub fn of<const N: usize>(rows: [[f64; N]; N]) -> Self {
        Matrix::new(N, rows.concat()).expect("valid literal matrix")
    }

    pub fn zeros(n: usize) -> Self {
        Matrix::new(n, vec![0.0; n * n]).expect("valid dimension")
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn diag(entries: &[f64]) -> Result<Self> {
        let mut m = Matrix::new(entries.len(), vec![0.0; entries.len() * entries.len()])?;
        for (i, &v) in entries.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::InvalidInput(format!("diagonal entry {i} is not finite")));
            }
            m.set(i, i, v);
        }
        Ok(m)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "dimension mismatch in add");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { n: self.n, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "dimension mismatch in sub");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { n: self.n, data }
    }

    pub fn scale(&self, c: f64) -> Matrix {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "dimension mismatch in matmul");
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += aik * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.n, v.len(), "dimension mismatch in matvec");
        let n = self.n;
        let mut out = vec![0.0; n];
        for i in 0..n {
            let mut acc = 0.0;
            for j in 0..n {
                acc += self.get(i, j) * v[j];
            }
            out[i] = acc;
        }
        out
    }

    /// Matrix power by repeated squaring.
    pub fn pow(&self, mut k: u32) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.n);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.matmul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.matmul(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, a| m.max(a.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|a| a.is_finite())
    }

    pub fn is_symmetric_within(&self, rel: f64) -> bool {
        let mut off = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                let d = self.get(i, j) - self.get(j, i);
                off += d * d;
            }
        }
        off.sqrt() <= rel * self.frobenius_norm()
    }

    pub fn is_diagonal_within(&self, rel: f64) -> bool {
        let scale = self.max_abs().max(1.0);
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j && self.get(i, j).abs() > rel * scale {
                    return false;
                }
            }
        }
        true
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    /// Gauss–Jordan inverse with partial pivoting.
    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let mut piv = col;
            for r in col + 1..n {
                if a.get(r, col).abs() > a.get(piv, col).abs() {
                    piv = r;
                }
            }
            let p = a.get(piv, col);
            if p.abs() <= f64::EPSILON * self.max_abs().max(1.0) {
                return Err(Error::Numeric(format!(
                    "matrix is singular to working precision (pivot {p:e} in column {col})"
                )));
            }
            if piv != col {
                for j in 0..n {
                    let (x, y) = (a.get(col, j), a.get(piv, j));
                    a.set(col, j, y);
                    a.set(piv, j, x);
                    let (x, y) = (inv.get(col, j), inv.get(piv, j));
                    inv.set(col, j, y);
                    inv.set(piv, j, x);
                }
            }
            let p = a.get(col, col);
            for j in 0..n {
                a.set(col, j, a.get(col, j) / p);
                inv.set(col, j, inv.get(col, j) / p);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col);
                if f == 0.0 {
                    continue;
                }
                for j in 0..n {
                    a.set(r, j, a.get(r, j) - f * a.get(col, j));
                    inv.set(r, j, inv.get(r, j) - f * inv.get(col, j));
                }
            }
        }
        Ok(inv)
    }

    /// Determinant by LU elimination with partial pivoting.
    pub fn determinant(&self) -> f64 {
        let n = self.n;
        let mut a = self.clone();
        let mut det = 1.0;
        for col in 0..n {
            let mut piv = col;
            for r in col + 1..n {
                if a.get(r, col).abs() > a.get(piv, col).abs() {
                    piv = r;
                }
            }
            if a.get(piv, col) == 0.0 {
                return 0.0;
            }
            if piv != col {
                det = -det;
                for j in 0..n {
                    let (x, y) = (a.get(col, j), a.get(piv, j));
                    a.set(col, j, y);
                    a.set(piv, j, x);
                }
            }
            let p = a.get(col, col);
            det *= p;
            for r in col + 1..n {
                let f = a.get(r, col) / p;
                for j in col..n {
                    a.set(r, j, a.get(r, j) - f * a.get(col, j));
                }
            }
        }
        det
    }
}

impl TryFrom<MatrixJson> for Matrix {
    type Error = Error;

    fn try_from(j: MatrixJson) -> Result<Self> {
        if j.rows.len() != j.n {
            return Err(Error::InvalidInput(format!(
                "field 'rows' has {} rows, field 'n' says {}",
                j.rows.len(),
                j.n
            )));
        }
        Matrix::from_rows(&j.rows)
    }
}

impl From<Matrix> for MatrixJson {
    fn from(m: Matrix) -> MatrixJson {
        MatrixJson {
            n: m.n,
            rows: (0..m.n).map(|i| (0..m.n).map(|j| m.get(i, j)).collect()).collect(),
        }
    }
}

/// Split into symmetric and antisymmetric parts, `M = (X+Xᵀ)/2`,
/// `A = (X−Xᵀ)/2`. The parts are bit-exactly (anti)symmetric because each
/// mirrored pair of entries is computed from the same rounded expression.
/// `M + A` reproduces `X` up to one rounding of each entry (IEEE rounding of
/// the two halves can miss the original by ≤ 1 ulp of `|X_ij| + |X_ji|`).
pub fn split_sym_antisym(x: &Matrix) -> (Matrix, Matrix) {
    let n = x.n();
    let mut m = Matrix::zeros(n);
    let mut a = Matrix::zeros(n);
    for i in 0..n {
        m.set(i, i, x.get(i, i));
        for j in i + 1..n {
            let p = x.get(i, j);
            let q = x.get(j, i);
            let s = (p + q) / 2.0;
            let d = (p - q) / 2.0;
            m.set(i, j, s);
            m.set(j, i, s);
            a.set(i, j, d);
            a.set(j, i, -d);
        }
    }
    (m, a)
}

/// Euclidean norm of a vector.
pub fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
