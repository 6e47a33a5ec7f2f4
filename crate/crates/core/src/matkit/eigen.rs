//! Eigenvalue kernels: cyclic Jacobi for symmetric matrices, Hessenberg
//! reduction plus explicit double-shift QR for general ones. Both are
//! self-contained and tuned for n ≤ 8 only.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tol;

use super::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Eigenvalue {
    pub re: f64,
    pub im: f64,
}

impl Eigenvalue {
    pub fn real(re: f64) -> Self {
        Eigenvalue { re, im: 0.0 }
    }

    pub fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn dist(&self, other: &Eigenvalue) -> f64 {
        (self.re - other.re).hypot(self.im - other.im)
    }
}

/// Eigenvalue list of a real matrix, sorted by descending real part and
/// then descending imaginary part. `gap` is the minimum pairwise distance
/// (infinite for 1×1 inputs). `is_real_diagonalizable` is deliberately
/// conservative: it is set only when every eigenvalue is real and either
/// all eigenvalues are pairwise distinct or the matrix is symmetric.
/// Repeated non-symmetric cases are "not provably diagonalizable" —
/// numerical Jordan-structure detection is ill-posed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<Eigenvalue>,
    pub is_real_diagonalizable: bool,
    pub gap: f64,
}

impl Spectrum {
    fn assemble(mut eigenvalues: Vec<Eigenvalue>, is_real_diagonalizable: bool) -> Spectrum {
        eigenvalues.sort_by(|a, b| {
            b.re.partial_cmp(&a.re)
                .unwrap()
                .then(b.im.partial_cmp(&a.im).unwrap())
        });
        let gap = min_pairwise_gap(&eigenvalues);
        Spectrum {
            eigenvalues,
            is_real_diagonalizable,
            gap,
        }
    }

    pub fn all_real(&self) -> bool {
        self.eigenvalues.iter().all(|e| e.im == 0.0)
    }
}

fn min_pairwise_gap(eigs: &[Eigenvalue]) -> f64 {
    let mut gap = f64::INFINITY;
    for i in 0..eigs.len() {
        for j in i + 1..eigs.len() {
            gap = gap.min(eigs[i].dist(&eigs[j]));
        }
    }
    gap
}

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations:
/// returns eigenvalues sorted descending and the orthogonal matrix whose
/// columns are the matching eigenvectors, so `S ≈ O Λ Oᵀ`.
pub fn sym_eigen_decomp(s: &Matrix) -> Result<(Vec<f64>, Matrix)> {
    if !s.is_symmetric_within(tol::SYMMETRY_REL) {
        return Err(Error::InvalidInput(format!(
            "matrix is not symmetric within relative tolerance {:e}",
            tol::SYMMETRY_REL
        )));
    }
    // Work on the exactly symmetrized copy.
    let sym = s.add(&s.transpose()).scale(0.5);
    Ok(jacobi(&sym))
}

/// Eigenvalues of a symmetric matrix as a [`Spectrum`] (all real, sorted
/// descending).
pub fn sym_eigen(s: &Matrix) -> Result<Spectrum> {
    let (values, _) = sym_eigen_decomp(s)?;
    let eigs = values.into_iter().map(Eigenvalue::real).collect();
    Ok(Spectrum::assemble(eigs, true))
}

fn jacobi(s: &Matrix) -> (Vec<f64>, Matrix) {
    let n = s.n();
    let mut a = s.clone();
    let mut v = Matrix::identity(n);
    let fro = a.frobenius_norm();
    if fro > 0.0 {
        let target = tol::JACOBI_OFFDIAG * fro;
        for _sweep in 0..60 {
            let mut off = 0.0;
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        off += a.get(i, j) * a.get(i, j);
                    }
                }
            }
            if off.sqrt() <= target {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    let apq = a.get(p, q);
                    if apq == 0.0 {
                        continue;
                    }
                    let theta = (a.get(q, q) - a.get(p, p)) / (2.0 * apq);
                    let t = if theta == 0.0 {
                        1.0
                    } else {
                        theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let sn = t * c;
                    let app = a.get(p, p);
                    let aqq = a.get(q, q);
                    a.set(p, p, app - t * apq);
                    a.set(q, q, aqq + t * apq);
                    a.set(p, q, 0.0);
                    a.set(q, p, 0.0);
                    for i in 0..n {
                        if i != p && i != q {
                            let aip = a.get(i, p);
                            let aiq = a.get(i, q);
                            a.set(i, p, c * aip - sn * aiq);
                            a.set(p, i, c * aip - sn * aiq);
                            a.set(i, q, sn * aip + c * aiq);
                            a.set(q, i, sn * aip + c * aiq);
                        }
                    }
                    for i in 0..n {
                        let vip = v.get(i, p);
                        let viq = v.get(i, q);
                        v.set(i, p, c * vip - sn * viq);
                        v.set(i, q, sn * vip + c * viq);
                    }
                }
            }
        }
    }
    // Sort eigenvalues descending, carry the eigenvector columns along.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(j, j).partial_cmp(&a.get(i, i)).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| a.get(i, i)).collect();
    let mut o = Matrix::zeros(n);
    for (newcol, &oldcol) in order.iter().enumerate() {
        for i in 0..n {
            o.set(i, newcol, v.get(i, oldcol));
        }
    }
    (values, o)
}

/// Largest singular value, computed as the square root of the largest
/// eigenvalue of `XᵀX` (which is exactly symmetric as computed).
pub fn spectral_norm(x: &Matrix) -> f64 {
    let g = x.transpose().matmul(x);
    let (values, _) = jacobi(&g);
    values.into_iter().fold(0.0f64, f64::max).max(0.0).sqrt()
}

/// Complex eigenvalues of a general real matrix via Hessenberg reduction
/// and explicit double-shift QR. Complex pairs come from 2×2 blocks of the
/// real quasi-triangular form, so conjugate symmetry is exact by
/// construction.
pub fn eigen_general(x: &Matrix) -> Result<Spectrum> {
    let n = x.n();
    let snorm = spectral_norm(x);
    if n == 1 {
        return Ok(Spectrum::assemble(vec![Eigenvalue::real(x.get(0, 0))], true));
    }
    // Work on a normalized copy; eigenvalues scale linearly.
    let scale = x.frobenius_norm().max(1.0);
    if !scale.is_finite() {
        return Err(Error::Numeric(
            "matrix norm overflows f64; eigenvalues are not representable".into(),
        ));
    }
    let h = hessenberg(&x.scale(1.0 / scale));
    let raw = qr_eigenvalues(h)?;
    let eigs: Vec<Eigenvalue> = raw
        .into_iter()
        .map(|e| Eigenvalue {
            re: e.re * scale,
            im: e.im * scale,
        })
        .collect();
    let gap = min_pairwise_gap(&eigs);
    let all_real = eigs.iter().all(|e| e.im == 0.0);
    let distinct = gap > tol::EIGEN_DISTINCT_REL * snorm;
    let diagonalizable = all_real && (distinct || x.is_symmetric_within(tol::SYMMETRY_REL));
    Ok(Spectrum::assemble(eigs, diagonalizable))
}

/// Householder reduction to upper Hessenberg form (similarity transform).
fn hessenberg(x: &Matrix) -> Matrix {
    let n = x.n();
    let mut h = x.clone();
    for k in 0..n.saturating_sub(2) {
        let mut u = vec![0.0; n];
        let mut norm2 = 0.0;
        for i in k + 1..n {
            u[i] = h.get(i, k);
            norm2 += u[i] * u[i];
        }
        let norm = norm2.sqrt();
        if norm <= f64::EPSILON * h.frobenius_norm() {
            continue;
        }
        let alpha = if u[k + 1] >= 0.0 { -norm } else { norm };
        u[k + 1] -= alpha;
        let unorm2: f64 = u.iter().map(|a| a * a).sum();
        if unorm2 == 0.0 {
            continue;
        }
        // H ← P H P with P = I − 2uuᵀ/uᵀu
        let beta = 2.0 / unorm2;
        // left: H ← H − βu(uᵀH)
        for j in 0..n {
            let mut dot = 0.0;
            for i in k + 1..n {
                dot += u[i] * h.get(i, j);
            }
            let f = beta * dot;
            for i in k + 1..n {
                h.set(i, j, h.get(i, j) - f * u[i]);
            }
        }
        // right: H ← H − β(Hu)uᵀ
        for i in 0..n {
            let mut dot = 0.0;
            for j in k + 1..n {
                dot += h.get(i, j) * u[j];
            }
            let f = beta * dot;
            for j in k + 1..n {
                h.set(i, j, h.get(i, j) - f * u[j]);
            }
        }
        // Entries below the subdiagonal of column k are now zero by
        // construction; force them to avoid roundoff residue.
        h.set(k + 1, k, alpha);
        for i in k + 2..n {
            h.set(i, k, 0.0);
        }
    }
    h
}

/// Eigenvalues of the trailing/leading 2×2 block, numerically stable form.
fn eig2x2(a: f64, b: f64, c: f64, d: f64) -> (Eigenvalue, Eigenvalue) {
    let half = 0.5 * (a + d);
    let det = a * d - b * c;
    let disc = half * half - det;
    if disc >= 0.0 {
        let sq = disc.sqrt();
        let l1 = if half >= 0.0 { half + sq } else { half - sq };
        let l2 = if l1 != 0.0 { det / l1 } else { 0.0 };
        (Eigenvalue::real(l1), Eigenvalue::real(l2))
    } else {
        let sq = (-disc).sqrt();
        (
            Eigenvalue { re: half, im: sq },
            Eigenvalue { re: half, im: -sq },
        )
    }
}

/// Thin Householder QR returning only the orthogonal factor.
fn qr_q(m: &Matrix) -> Matrix {
    let n = m.n();
    let mut r = m.clone();
    let mut q = Matrix::identity(n);
    for k in 0..n {
        let mut u = vec![0.0; n];
        let mut norm2 = 0.0;
        for i in k..n {
            u[i] = r.get(i, k);
            norm2 += u[i] * u[i];
        }
        let norm = norm2.sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if u[k] >= 0.0 { -norm } else { norm };
        u[k] -= alpha;
        let unorm2: f64 = u.iter().map(|a| a * a).sum();
        if unorm2 == 0.0 {
            continue;
        }
        let beta = 2.0 / unorm2;
        for j in 0..n {
            let mut dot = 0.0;
            for i in k..n {
                dot += u[i] * r.get(i, j);
            }
            let f = beta * dot;
            for i in k..n {
                r.set(i, j, r.get(i, j) - f * u[i]);
            }
        }
        for j in 0..n {
            let mut dot = 0.0;
            for i in k..n {
                dot += u[i] * q.get(i, j);
            }
            let f = beta * dot;
            for i in k..n {
                q.set(i, j, q.get(i, j) - f * u[i]);
            }
        }
    }
    // Accumulated product is Qᵀ; return Q.
    q.transpose()
}

fn submatrix(h: &Matrix, lo: usize, hi: usize) -> Matrix {
    let b = hi - lo + 1;
    let mut out = Matrix::zeros(b);
    for i in 0..b {
        for j in 0..b {
            out.set(i, j, h.get(lo + i, lo + j));
        }
    }
    out
}

fn write_block(h: &mut Matrix, lo: usize, block: &Matrix) {
    let b = block.n();
    for i in 0..b {
        for j in 0..b {
            h.set(lo + i, lo + j, block.get(i, j));
        }
    }
}

/// Explicit double-shift QR with deflation on an upper Hessenberg matrix.
/// Each step forms `M = H² − sH + pI` with (s, p) the trace/determinant of
/// the trailing 2×2, QR-factorizes it, applies the similarity, and
/// re-reduces the active block to Hessenberg form (cheap at n ≤ 8, and it
/// keeps the deflation scan honest even when a shift is nearly exact).
fn qr_eigenvalues(mut h: Matrix) -> Result<Vec<Eigenvalue>> {
    let n = h.n();
    let hnorm = h.frobenius_norm().max(f64::MIN_POSITIVE);
    let mut eigs: Vec<Eigenvalue> = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut stuck = 0usize;
    let mut total = 0usize;
    let max_total = 120 * n;
    loop {
        for i in 1..=hi {
            let mut thr = f64::EPSILON * (h.get(i - 1, i - 1).abs() + h.get(i, i).abs());
            if thr == 0.0 {
                thr = f64::EPSILON * hnorm;
            }
            if h.get(i, i - 1).abs() <= thr {
                h.set(i, i - 1, 0.0);
            }
        }
        if hi == 0 {
            eigs.push(Eigenvalue::real(h.get(0, 0)));
            break;
        }
        if h.get(hi, hi - 1) == 0.0 {
            eigs.push(Eigenvalue::real(h.get(hi, hi)));
            hi -= 1;
            stuck = 0;
            continue;
        }
        if hi == 1 || h.get(hi - 1, hi - 2) == 0.0 {
            let (l1, l2) = eig2x2(
                h.get(hi - 1, hi - 1),
                h.get(hi - 1, hi),
                h.get(hi, hi - 1),
                h.get(hi, hi),
            );
            eigs.push(l1);
            eigs.push(l2);
            if hi == 1 {
                break;
            }
            hi -= 2;
            stuck = 0;
            continue;
        }
        let mut lo = hi - 1;
        while lo > 0 && h.get(lo, lo - 1) != 0.0 {
            lo -= 1;
        }
        total += 1;
        stuck += 1;
        if total > max_total {
            let subdiags: Vec<String> = (lo + 1..=hi)
                .map(|i| format!("{:.3e}", h.get(i, i - 1)))
                .collect();
            return Err(Error::Numeric(format!(
                "QR iteration did not converge after {total} steps; \
                 remaining subdiagonal entries [{}]",
                subdiags.join(", ")
            )));
        }
        let (s, p) = if stuck % 12 == 11 {
            // Exceptional shift to break symmetric stagnation.
            let w = h.get(hi, hi - 1).abs() + h.get(hi - 1, hi - 2).abs();
            (1.5 * w, w * w)
        } else {
            let a = h.get(hi - 1, hi - 1);
            let b = h.get(hi - 1, hi);
            let c = h.get(hi, hi - 1);
            let d = h.get(hi, hi);
            (a + d, a * d - b * c)
        };
        let block = submatrix(&h, lo, hi);
        let m = block
            .matmul(&block)
            .sub(&block.scale(s))
            .add(&Matrix::identity(block.n()).scale(p));
        let q = qr_q(&m);
        let rotated = q.transpose().matmul(&block).matmul(&q);
        let rotated = hessenberg(&rotated);
        write_block(&mut h, lo, &rotated);
    }
    Ok(eigs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sym_eigen_half_coupled() {
        // Characteristic polynomial (1−λ)² − 0.25 has roots 1.5 and 0.5.
        let s = Matrix::of([[1.0, 0.5], [0.5, 1.0]]);
        let spec = sym_eigen(&s).unwrap();
        assert!((spec.eigenvalues[0].re - 1.5).abs() < 1e-14);
        assert!((spec.eigenvalues[1].re - 0.5).abs() < 1e-14);
        assert!(spec.is_real_diagonalizable);
    }

    #[test]
    fn sym_eigen_identity_and_diagonal() {
        let spec = sym_eigen(&Matrix::identity(2)).unwrap();
        assert_eq!(spec.eigenvalues[0].re, 1.0);
        assert_eq!(spec.eigenvalues[1].re, 1.0);
        let spec = sym_eigen(&Matrix::diag(&[3.0, -2.0]).unwrap()).unwrap();
        assert_eq!(spec.eigenvalues[0].re, 3.0);
        assert_eq!(spec.eigenvalues[1].re, -2.0);
    }

    #[test]
    fn sym_eigen_rejects_asymmetric_input() {
        let x = Matrix::of([[0.0, 1.0], [0.0, 0.0]]);
        assert!(matches!(sym_eigen(&x), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn sym_eigen_reconstructs() {
        let s = Matrix::of([
            [2.0, -0.3, 0.7, 0.1],
            [-0.3, 1.1, 0.2, -0.5],
            [0.7, 0.2, -0.8, 0.4],
            [0.1, -0.5, 0.4, 3.2],
        ]);
        let (vals, o) = sym_eigen_decomp(&s).unwrap();
        let lam = Matrix::diag(&vals).unwrap();
        let rebuilt = o.matmul(&lam).matmul(&o.transpose());
        let err = spectral_norm(&rebuilt.sub(&s)) / spectral_norm(&s);
        assert!(err < 1e-10, "reconstruction error {err:e}");
        let orth = o.matmul(&o.transpose()).sub(&Matrix::identity(4)).max_abs();
        assert!(orth < 1e-12);
    }

    #[test]
    fn spectral_norm_basics() {
        assert!((spectral_norm(&Matrix::identity(3)) - 1.0).abs() < 1e-12);
        assert!((spectral_norm(&Matrix::diag(&[3.0, -5.0]).unwrap()) - 5.0).abs() < 1e-12);
        // XᵀX = diag(0, 4), so the norm is exactly 2.
        assert!((spectral_norm(&Matrix::of([[0.0, 2.0], [0.0, 0.0]])) - 2.0).abs() < 1e-12);
        assert_eq!(spectral_norm(&Matrix::zeros(2)), 0.0);
    }

    #[test]
    fn general_eigen_rotation_generator() {
        let spec = eigen_general(&Matrix::of([[0.0, 1.0], [-1.0, 0.0]])).unwrap();
        assert!((spec.eigenvalues[0].re).abs() < 1e-12);
        assert!((spec.eigenvalues[0].im - 1.0).abs() < 1e-12);
        assert_eq!(spec.eigenvalues[0].im, -spec.eigenvalues[1].im);
        assert_eq!(spec.eigenvalues[0].re, spec.eigenvalues[1].re);
        assert!(!spec.is_real_diagonalizable);
    }

    #[test]
    fn general_eigen_jordan_block_not_provably_diagonalizable() {
        let spec = eigen_general(&Matrix::of([[1.0, 1.0], [0.0, 1.0]])).unwrap();
        assert!((spec.eigenvalues[0].re - 1.0).abs() < 1e-12);
        assert!((spec.eigenvalues[1].re - 1.0).abs() < 1e-12);
        assert!(spec.all_real());
        assert!(!spec.is_real_diagonalizable);
    }

    #[test]
    fn general_eigen_distinct_diagonal() {
        let spec = eigen_general(&Matrix::diag(&[1.0, -2.0]).unwrap()).unwrap();
        assert_eq!(spec.eigenvalues[0].re, 1.0);
        assert_eq!(spec.eigenvalues[1].re, -2.0);
        assert!(spec.is_real_diagonalizable);
        assert!((spec.gap - 3.0).abs() < 1e-12);
    }

    #[test]
    fn general_eigen_nontrivial_complex_pair() {
        // Companion-style matrix with eigenvalues 2, 1 ± 2i.
        // charpoly: (λ−2)(λ²−2λ+5) = λ³ −4λ² +9λ −10
        let x = Matrix::of([
            [0.0, 0.0, 10.0],
            [1.0, 0.0, -9.0],
            [0.0, 1.0, 4.0],
        ]);
        let spec = eigen_general(&x).unwrap();
        let re: Vec<f64> = spec.eigenvalues.iter().map(|e| e.re).collect();
        let im: Vec<f64> = spec.eigenvalues.iter().map(|e| e.im).collect();
        assert!((re[0] - 2.0).abs() < 1e-8, "{re:?} {im:?}");
        assert!((re[1] - 1.0).abs() < 1e-8);
        assert!((im[1] - 2.0).abs() < 1e-8);
        assert!((re[2] - 1.0).abs() < 1e-8);
        assert!((im[2] + 2.0).abs() < 1e-8);
    }

    #[test]
    fn general_eigen_handles_defective_upper_triangular() {
        let x = Matrix::of([
            [2.0, 1.0, 0.0],
            [0.0, 2.0, 1.0],
            [0.0, 0.0, 2.0],
        ]);
        let spec = eigen_general(&x).unwrap();
        for e in &spec.eigenvalues {
            assert!((e.re - 2.0).abs() < 1e-9);
            assert_eq!(e.im, 0.0);
        }
        assert!(!spec.is_real_diagonalizable);
    }
}
