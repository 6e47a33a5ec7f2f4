//! Matrix exponential, logarithm, and the Lie-product approximant.

use crate::error::{Error, Result};
use crate::tol;

use super::{spectral_norm, Matrix};

/// Series order used after scaling the argument to norm ≤ 0.5. With that
/// norm the first dropped term is below 0.5^19/19! ≈ 1.6e-23.
const EXP_SERIES_ORDER: usize = 18;

/// Matrix exponential by scaling and squaring on a fixed-order truncated
/// power series: scale `X` by `2^{-s}` until the spectral norm is at most
/// 0.5, sum the series, then square `s` times.
pub fn mat_exp(x: &Matrix) -> Result<Matrix> {
    if !x.is_finite() {
        return Err(Error::InvalidInput("exponential of a non-finite matrix".into()));
    }
    let norm = spectral_norm(x);
    if !norm.is_finite() {
        return Err(Error::InvalidInput(
            "matrix norm overflows f64; exponential is not representable".into(),
        ));
    }
    let s = if norm > tol::EXP_SCALE_TARGET {
        ((norm / tol::EXP_SCALE_TARGET).log2().ceil() as u32).min(64)
    } else {
        0
    };
    let scaled = x.scale(0.5f64.powi(s as i32));
    let mut sum = Matrix::identity(x.n());
    let mut term = Matrix::identity(x.n());
    for k in 1..=EXP_SERIES_ORDER {
        term = term.matmul(&scaled).scale(1.0 / k as f64);
        sum = sum.add(&term);
    }
    for _ in 0..s {
        sum = sum.matmul(&sum);
    }
    Ok(sum)
}

/// Matrix logarithm by the power series
/// `log(A) = Σ_{m≥1} (−1)^{m+1} (A−I)^m / m`, valid for `‖A − I‖ < 1`
/// in spectral norm. Convergence slows near the boundary (roughly 3700
/// terms at norm 0.99); see [`tol::LOG_SLOW_BAND`].
pub fn mat_log(a: &Matrix) -> Result<Matrix> {
    if !a.is_finite() {
        return Err(Error::InvalidInput("logarithm of a non-finite matrix".into()));
    }
    let b = a.sub(&Matrix::identity(a.n()));
    let bnorm = spectral_norm(&b);
    if bnorm >= 1.0 {
        return Err(Error::Domain(format!(
            "log requires ‖A − I‖ < 1 in spectral norm, got ‖A − I‖ = {bnorm}"
        )));
    }
    let mut sum = b.clone();
    let mut power = b.clone();
    let mut sign = -1.0;
    // ‖B^m/m‖ ≤ ‖B‖^m, so this cap is generous for any admissible input.
    let max_terms = 200_000;
    for m in 2..max_terms {
        power = power.matmul(&b);
        let term = power.scale(sign / m as f64);
        sign = -sign;
        let before = sum.frobenius_norm();
        sum = sum.add(&term);
        if term.frobenius_norm() <= tol::LOG_SERIES_STOP * before.max(f64::MIN_POSITIVE) {
            return Ok(sum);
        }
    }
    Err(Error::Numeric(format!(
        "log series did not converge in {max_terms} terms (‖A − I‖ = {bnorm})"
    )))
}

/// The Lie-product approximant `(e^{X/m} e^{Y/m})^m`. As `m → ∞` this
/// converges to `e^{X+Y}` with error `O(1/m)`.
pub fn lie_product_approx(x: &Matrix, y: &Matrix, m: u32) -> Result<Matrix> {
    if m < 1 {
        return Err(Error::InvalidInput("lie_product_approx requires m ≥ 1".into()));
    }
    if x.n() != y.n() {
        return Err(Error::InvalidInput(format!(
            "dimension mismatch: {}x{} vs {}x{}",
            x.n(),
            x.n(),
            y.n(),
            y.n()
        )));
    }
    let inv_m = 1.0 / m as f64;
    let ex = mat_exp(&x.scale(inv_m))?;
    let ey = mat_exp(&y.scale(inv_m))?;
    Ok(ex.matmul(&ey).pow(m))
}
