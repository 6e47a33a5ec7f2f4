//! Orbit parameterization of the action of `G_{M+A}` on `ℝⁿ ∖ {0}`.
//!
//! For a generator whose symmetric-part eigenvalues are all nonzero with a
//! common sign, the orbit norm map `t ↦ ‖e^{t(M+A)} v‖` is strictly
//! increasing onto `ℝ⁺`, so every nonzero `ξ` factors uniquely as
//! `ξ = e^{t(M+A)} v` with `v` on the unit sphere. This module validates the
//! hypothesis, solves the orbit-time equation, and exposes the norm bounds
//! that bracket the solve.

use crate::error::{Error, Result};
use crate::matkit::{self, mat_exp, norm2, spectral_norm, split_sym_antisym, Matrix};
use crate::tol;

/// A validated one-parameter group generator together with the cached
/// symmetric-part spectrum bounds used for orbit bracketing.
///
/// Generators whose symmetric part has all-negative eigenvalues are
/// normalized by time reversal (`t ↦ −t`, i.e. the stored generator is the
/// negation of the input) so that all downstream code can assume
/// `0 < lambda_min`. The `sign` field records the applied reversal: the
/// original input equals `sign · generator()`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupDescriptor {
    generator: Matrix,
    sym_part: Matrix,
    antisym_part: Matrix,
    lambda_min: f64,
    lambda_max: f64,
    sign: f64,
}

/// Unique orbit coordinates of a nonzero frequency point:
/// `ξ = e^{t(M+A)} v` with `‖v‖ = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitCoordinates {
    pub t: f64,
    pub v: Vec<f64>,
}

/// The triple `(e^{tλ_min}‖v‖, ‖e^{t(M+A)}v‖, e^{tλ_max}‖v‖)` with the
/// exponent roles swapped for `t < 0` so that `lower ≤ upper` always.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormSandwich {
    pub lower: f64,
    pub value: f64,
    pub upper: f64,
}

impl GroupDescriptor {
    /// Validate a generator: its symmetric-part eigenvalues must be nonzero
    /// (relative to `‖X‖`) and share a sign. Mixed or vanishing spectra are
    /// a hypothesis violation — the orbit solve is not guaranteed well-posed
    /// there, although admissibility may still be decidable by other means.
    pub fn from_generator(x: &Matrix) -> Result<Self> {
        let (m, a) = split_sym_antisym(x);
        let spectrum = matkit::sym_eigen(&m).expect("split produces an exactly symmetric part");
        let values: Vec<f64> = spectrum.eigenvalues.iter().map(|e| e.re).collect();
        let norm = spectral_norm(x);
        let zero_band = tol::DECISION_REL * norm;
        let min_abs = values.iter().fold(f64::INFINITY, |acc, v| acc.min(v.abs()));
        if min_abs <= zero_band {
            return Err(Error::Hypothesis(format!(
                "symmetric-part eigenvalue {min_abs:e} within {zero_band:e} of zero \
                 (eigenvalues: {values:?})"
            )));
        }
        let all_pos = values.iter().all(|&v| v > 0.0);
        let all_neg = values.iter().all(|&v| v < 0.0);
        if !(all_pos || all_neg) {
            return Err(Error::Hypothesis(format!(
                "symmetric-part eigenvalues have mixed signs: {values:?}"
            )));
        }
        let sign = if all_pos { 1.0 } else { -1.0 };
        let (generator, sym_part, antisym_part, lam_hi, lam_lo) = if all_pos {
            (x.clone(), m, a, values[0], values[values.len() - 1])
        } else {
            // Time reversal: same group, positive spectrum.
            (x.scale(-1.0), m.scale(-1.0), a.scale(-1.0), -values[values.len() - 1], -values[0])
        };
        Ok(GroupDescriptor {
            generator,
            sym_part,
            antisym_part,
            lambda_min: lam_lo,
            lambda_max: lam_hi,
            sign,
        })
    }

    /// The stored (normalized) generator `M + A` with `λ_min > 0`.
    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn sym_part(&self) -> &Matrix {
        &self.sym_part
    }

    pub fn antisym_part(&self) -> &Matrix {
        &self.antisym_part
    }

    pub fn lambda_min(&self) -> f64 {
        self.lambda_min
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda_max
    }

    /// +1 if the input generator was kept, −1 if time reversal was applied.
    pub fn sign(&self) -> f64 {
        self.sign
    }

    pub fn dim(&self) -> usize {
        self.generator.n()
    }

    /// The group element `e^{t(M+A)}` applied to `v`.
    pub fn orbit_point(&self, t: f64, v: &[f64]) -> Vec<f64> {
        let e = mat_exp(&self.generator.scale(t)).expect("finite generator");
        e.matvec(v)
    }

    /// The unique `t` with `‖e^{−t(M+A)} ξ‖ = 1`, solved by bisection on
    /// `h(t) = ln ‖e^{−t(M+A)} ξ‖`. `h` is strictly decreasing with slope in
    /// `[−λ_max, −λ_min]`, and `ln‖ξ‖/λ_max`, `ln‖ξ‖/λ_min` bracket the
    /// root, so bisection cannot fail on validated descriptors. Each step
    /// recomputes a fresh exponential; at n ≤ 8 that is negligible and
    /// avoids incremental drift.
    pub fn orbit_time(&self, xi: &[f64]) -> Result<f64> {
        let r = norm2(xi);
        if r <= 0.0 {
            return Err(Error::Domain("orbit time of the zero vector".into()));
        }
        if !r.is_finite() {
            return Err(Error::InvalidInput("orbit time of a non-finite vector".into()));
        }
        let log_r = r.ln();
        let h = |t: f64| -> f64 {
            let e = mat_exp(&self.generator.scale(-t)).expect("finite generator");
            norm2(&e.matvec(xi)).ln()
        };
        let (b0, b1) = (log_r / self.lambda_max, log_r / self.lambda_min);
        let margin = 1e-9 * (1.0 + (b1 - b0).abs());
        let mut lo = b0.min(b1) - margin;
        let mut hi = b0.max(b1) + margin;
        let slack = 1e-7 * (1.0 + log_r.abs());
        if h(lo) < -slack || h(hi) > slack {
            return Err(Error::Internal(format!(
                "orbit-time bracket [{lo}, {hi}] does not enclose the root for ‖ξ‖ = {r}"
            )));
        }
        let mut best_t = 0.5 * (lo + hi);
        let mut best_h = f64::INFINITY;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let hm = h(mid);
            if hm.abs() < best_h {
                best_h = hm.abs();
                best_t = mid;
            }
            if hm.abs() <= tol::ORBIT_RESIDUAL {
                return Ok(mid);
            }
            if hm > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if best_h <= 1e-9 {
            return Ok(best_t);
        }
        Err(Error::Internal(format!(
            "orbit-time bisection stalled with residual {best_h:e} for ‖ξ‖ = {r}"
        )))
    }

    /// Factor `ξ = e^{t(M+A)} v` with `v` on the unit sphere.
    pub fn orbit_decompose(&self, xi: &[f64]) -> Result<OrbitCoordinates> {
        let t = self.orbit_time(xi)?;
        let e = mat_exp(&self.generator.scale(-t)).expect("finite generator");
        let v = e.matvec(xi);
        Ok(OrbitCoordinates { t, v })
    }

    /// Evaluate the norm sandwich at `(t, v)`.
    pub fn norm_bounds(&self, t: f64, v: &[f64]) -> NormSandwich {
        let vn = norm2(v);
        let value = norm2(&self.orbit_point(t, v));
        let (lo_rate, hi_rate) = if t >= 0.0 {
            (self.lambda_min, self.lambda_max)
        } else {
            (self.lambda_max, self.lambda_min)
        };
        NormSandwich {
            lower: (t * lo_rate).exp() * vn,
            value,
            upper: (t * hi_rate).exp() * vn,
        }
    }
}
