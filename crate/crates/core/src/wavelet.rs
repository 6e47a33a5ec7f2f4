//! Frequency-domain wavelet constructions for admissible one-parameter
//! groups.
//!
//! Three kinds are supported:
//! * **Profile** — `ψ̂(ξ) = φ(t^ξ)` where `φ` is a continuous unit-norm
//!   profile supported in `(−∞, N]` and `t^ξ` is the orbit time of `ξ`
//!   under the *transpose* group `G_{Mᵀ+Aᵀ}`. The Calderón integral for
//!   `G_{M+A}` evaluates `ψ̂((e^{tX})ᵀ ξ)`, so building orbit times on the
//!   transpose group is what makes `Δ ≡ 1`; callers name the target group
//!   and the transpose bookkeeping stays internal.
//! * **Indicator** — the 0/1-valued wavelet for a diagonal generator with
//!   nonzero trace: the characteristic function of the set swept by a
//!   unit-length parameter slab `τ ∈ [−(|u|+1), −|u|]` along each orbit of
//!   the chart `g(u, τ) = e^{τD} [u; 1]`, mirrored in the sign of the
//!   distinguished coordinate.
//! * **Transported** — `ψ̂(ξ) = ψ̂_base((Sᵀ)⁻¹ ξ)` converts a wavelet for
//!   `G_Y` into one for `G_{S⁻¹YS}`: writing `X = S⁻¹YS` gives
//!   `(e^{tX})ᵀ = Sᵀ e^{tYᵀ} (Sᵀ)⁻¹`, so the Calderón integrand for `G_X`
//!   at `ξ` equals the base integrand at `(Sᵀ)⁻¹ξ` and `Δ` transports
//!   exactly. (To target `G_{CYC⁻¹}`, pass `S = C⁻¹`.)

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matkit::{norm2, spectral_norm, Matrix};
use crate::orbit::GroupDescriptor;
use crate::quad;
use crate::tol;

const RAISED_SINE_NAME: &str = "raised-sine";

#[derive(Debug, Clone, PartialEq)]
enum ProfileKind {
    /// `scale · √2 · sin(πt)` on `[0, 1]`, zero elsewhere. Unit L² norm at
    /// scale 1.
    RaisedSine { scale: f64 },
    /// Piecewise-linear interpolation through `(knots, values)`, zero
    /// outside the knot range.
    Tabulated { knots: Vec<f64>, values: Vec<f64> },
}

/// A continuous real profile `φ` with compact support `[start, N]`.
/// Standard constructors enforce `∫ φ² dt = 1`; [`Profile::raised_sine_scaled`]
/// deliberately skips that check so verification code can build negative
/// controls with a known-wrong norm.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    kind: ProfileKind,
    support_start: f64,
    support_end: f64,
    l2_norm: f64,
}

impl Profile {
    /// The default profile: `φ(t) = √2 sin(πt)` on `[0, 1]`, `N = 1`.
    pub fn raised_sine() -> Profile {
        Profile::raised_sine_scaled(1.0).expect("unit raised sine is valid")
    }

    /// Raised sine multiplied by `scale`, so its L² norm is `scale`.
    /// Anything other than `scale = 1` violates the wavelet normalization
    /// on purpose (diagnostics and negative controls).
    pub fn raised_sine_scaled(scale: f64) -> Result<Profile> {
        if !scale.is_finite() || scale <= 0.0 {
            return Err(Error::InvalidInput(format!("profile scale must be positive, got {scale}")));
        }
        let p = Profile {
            kind: ProfileKind::RaisedSine { scale },
            support_start: 0.0,
            support_end: 1.0,
            l2_norm: scale,
        };
        p.check_norm()?;
        Ok(p)
    }

    /// User-supplied profile as a piecewise-linear table. Requires strictly
    /// increasing knots, zero endpoint values (continuity onto the zero
    /// extension) and unit L² norm.
    pub fn from_samples(knots: Vec<f64>, values: Vec<f64>) -> Result<Profile> {
        if knots.len() < 2 || knots.len() != values.len() {
            return Err(Error::InvalidInput(format!(
                "tabulated profile needs matching knots/values with at least 2 points, \
                 got {} and {}",
                knots.len(),
                values.len()
            )));
        }
        if knots.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidInput("profile knots must be strictly increasing".into()));
        }
        if knots.iter().chain(values.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("profile table has non-finite entries".into()));
        }
        if values[0] != 0.0 || values[values.len() - 1] != 0.0 {
            return Err(Error::InvalidInput(
                "profile endpoint values must be zero for continuity".into(),
            ));
        }
        // Exact L² of the linear interpolant: ∫ over each segment of a
        // quadratic, h/3 (a² + ab + b²).
        let mut sq = 0.0;
        for i in 0..knots.len() - 1 {
            let h = knots[i + 1] - knots[i];
            let (a, b) = (values[i], values[i + 1]);
            sq += h / 3.0 * (a * a + a * b + b * b);
        }
        let l2 = sq.sqrt();
        if (sq - 1.0).abs() > tol::UNIT_NORM_ABS {
            return Err(Error::InvalidInput(format!(
                "tabulated profile has ∫φ² = {sq}, expected 1"
            )));
        }
        Ok(Profile {
            support_start: knots[0],
            support_end: *knots.last().unwrap(),
            kind: ProfileKind::Tabulated { knots, values },
            l2_norm: l2,
        })
    }

    fn check_norm(&self) -> Result<()> {
        let q = quad::adaptive(
            &|t| {
                let v = self.eval(t);
                v * v
            },
            self.support_start,
            self.support_end,
            1e-12,
        )?;
        let expected = self.l2_norm * self.l2_norm;
        if (q.value - expected).abs() > tol::UNIT_NORM_ABS * expected.max(1.0) {
            return Err(Error::Numeric(format!(
                "profile norm check failed: quadrature {} vs declared {}",
                q.value, expected
            )));
        }
        Ok(())
    }

    pub fn eval(&self, t: f64) -> f64 {
        match &self.kind {
            ProfileKind::RaisedSine { scale } => {
                if (0.0..=1.0).contains(&t) {
                    scale * std::f64::consts::SQRT_2 * (std::f64::consts::PI * t).sin()
                } else {
                    0.0
                }
            }
            ProfileKind::Tabulated { knots, values } => {
                if t < knots[0] || t > *knots.last().unwrap() {
                    return 0.0;
                }
                let idx = match knots.binary_search_by(|k| k.partial_cmp(&t).unwrap()) {
                    Ok(i) => return values[i],
                    Err(i) => i,
                };
                let (k0, k1) = (knots[idx - 1], knots[idx]);
                let w = (t - k0) / (k1 - k0);
                values[idx - 1] * (1.0 - w) + values[idx] * w
            }
        }
    }

    /// Support interval `[start, N]`.
    pub fn support(&self) -> (f64, f64) {
        (self.support_start, self.support_end)
    }

    pub fn support_end(&self) -> f64 {
        self.support_end
    }

    pub fn l2_norm(&self) -> f64 {
        self.l2_norm
    }
}

/// Cached support information. For the indicator kind the support is
/// unbounded in the chart's `u` directions; the radius then covers the
/// image of the `|u| ≤ 1` slab only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportRadius {
    pub radius: f64,
    pub unbounded_in_u: bool,
}

/// Inverted chart data for the indicator wavelet. The stored dilations are
/// sign-normalized (trace made positive; same group) and permuted so the
/// distinguished last coordinate has a nonzero dilation.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Chart {
    pub(crate) d_orig: Vec<f64>,
    /// Chart dilations: `±d_orig` with the recorded swap applied.
    pub(crate) d: Vec<f64>,
    /// Coordinates swapped at construction, if any.
    pub(crate) swap: Option<(usize, usize)>,
    pub(crate) flipped: bool,
    /// Trace of the chart dilations (positive).
    pub(crate) trace: f64,
}

impl Chart {
    fn new(d_orig: Vec<f64>) -> Result<Chart> {
        let n = d_orig.len();
        let scale = d_orig.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let trace_orig: f64 = d_orig.iter().sum();
        if trace_orig.abs() <= 1e-12 * scale.max(1.0) {
            return Err(Error::InvalidInput(format!(
                "indicator wavelet requires tr(D) ≠ 0, got trace {trace_orig:e}"
            )));
        }
        let flipped = trace_orig < 0.0;
        let mut d: Vec<f64> = if flipped {
            d_orig.iter().map(|v| -v).collect()
        } else {
            d_orig.clone()
        };
        let zero_tol = 1e-14 * scale;
        let swap = if d[n - 1].abs() > zero_tol {
            None
        } else {
            let (best, _) = d
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).unwrap())
                .expect("nonempty diagonal");
            d.swap(best, n - 1);
            Some((best, n - 1))
        };
        let trace = d.iter().sum();
        Ok(Chart {
            d_orig,
            d,
            swap,
            flipped,
            trace,
        })
    }

    pub(crate) fn dim(&self) -> usize {
        self.d.len()
    }

    fn permuted(&self, xi: &[f64]) -> Vec<f64> {
        let mut out = xi.to_vec();
        if let Some((i, j)) = self.swap {
            out.swap(i, j);
        }
        out
    }

    /// Invert the chart at `ξ`: returns `(|u|, τ)` with
    /// `g(u, τ) = (ξ'_1, …, ξ'_{n−1}, |ξ'_n|)`, or `None` on the
    /// measure-zero hyperplane `ξ'_n = 0`.
    pub(crate) fn coords(&self, xi: &[f64]) -> Option<(f64, f64)> {
        let n = self.dim();
        let xi_p = self.permuted(xi);
        let xn = xi_p[n - 1];
        if xn == 0.0 {
            return None;
        }
        let tau = xn.abs().ln() / self.d[n - 1];
        let mut sumsq = 0.0;
        for i in 0..n - 1 {
            if xi_p[i] == 0.0 {
                continue;
            }
            let u = xi_p[i] * (-tau * self.d[i]).exp();
            sumsq += u * u;
        }
        Some((sumsq.sqrt(), tau))
    }

    pub(crate) fn eval(&self, xi: &[f64]) -> f64 {
        match self.coords(xi) {
            Some((unorm, tau)) if unorm.is_finite() && tau >= -(unorm + 1.0) && tau <= -unorm => {
                1.0
            }
            _ => 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum SpecKind {
    Profile {
        generator: Matrix,
        group: GroupDescriptor,
        transpose_group: GroupDescriptor,
        profile: Profile,
    },
    Indicator {
        generator: Matrix,
        chart: Chart,
    },
    Transported {
        base: Box<WaveletSpec>,
        similarity: Matrix,
        /// Cached `(Sᵀ)⁻¹`, applied on every evaluation.
        p_inverse: Matrix,
    },
}

/// A constructed wavelet, evaluable pointwise on the frequency domain.
/// Immutable after construction; evaluation is pure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WaveletSpecJson", into = "WaveletSpecJson")]
pub struct WaveletSpec {
    pub(crate) kind: SpecKind,
    support: SupportRadius,
}

impl WaveletSpec {
    /// Profile wavelet for the target group `G_X`. Evaluation internally
    /// uses orbit times of the transpose group `G_{Xᵀ}`.
    pub fn profile(generator: &Matrix, profile: Profile) -> Result<WaveletSpec> {
        let group = GroupDescriptor::from_generator(generator)?;
        let transpose_group = GroupDescriptor::from_generator(&generator.transpose())?;
        let radius = (profile.support_end() * transpose_group.lambda_max()).exp().max(1.0);
        Ok(WaveletSpec {
            kind: SpecKind::Profile {
                generator: generator.clone(),
                group,
                transpose_group,
                profile,
            },
            support: SupportRadius {
                radius,
                unbounded_in_u: false,
            },
        })
    }

    /// Indicator wavelet for a diagonal generator with nonzero trace.
    pub fn indicator(d: &Matrix) -> Result<WaveletSpec> {
        if !d.is_diagonal_within(1e-12) {
            return Err(Error::InvalidInput(
                "indicator wavelet requires a diagonal generator".into(),
            ));
        }
        let chart = Chart::new(d.diagonal())?;
        let maxd = chart.d.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let radius = (d.n() as f64).sqrt() * (2.0 * maxd).exp();
        Ok(WaveletSpec {
            kind: SpecKind::Indicator {
                generator: d.clone(),
                chart,
            },
            support: SupportRadius {
                radius,
                unbounded_in_u: true,
            },
        })
    }

    /// Transport a wavelet for `G_Y` to one for `G_{S⁻¹YS}` by
    /// `ψ̂(ξ) = ψ̂_base((Sᵀ)⁻¹ ξ)`.
    pub fn transported(base: WaveletSpec, similarity: &Matrix) -> Result<WaveletSpec> {
        if similarity.n() != base.dim() {
            return Err(Error::InvalidInput(format!(
                "similarity dimension {} does not match wavelet dimension {}",
                similarity.n(),
                base.dim()
            )));
        }
        let p = similarity.transpose();
        let p_inverse = p
            .inverse()
            .map_err(|_| Error::InvalidInput("similarity matrix is singular".into()))?;
        let radius = spectral_norm(&p) * base.support.radius;
        let unbounded = base.support.unbounded_in_u;
        Ok(WaveletSpec {
            kind: SpecKind::Transported {
                base: Box::new(base),
                similarity: similarity.clone(),
                p_inverse,
            },
            support: SupportRadius {
                radius,
                unbounded_in_u: unbounded,
            },
        })
    }

    pub fn dim(&self) -> usize {
        match &self.kind {
            SpecKind::Profile { generator, .. } => generator.n(),
            SpecKind::Indicator { generator, .. } => generator.n(),
            SpecKind::Transported { similarity, .. } => similarity.n(),
        }
    }

    /// Pointwise evaluation of `ψ̂` at a frequency point.
    pub fn eval(&self, xi: &[f64]) -> f64 {
        assert_eq!(xi.len(), self.dim(), "dimension mismatch in wavelet eval");
        match &self.kind {
            SpecKind::Profile {
                transpose_group,
                profile,
                ..
            } => {
                if xi.iter().all(|&v| v == 0.0) {
                    return 0.0;
                }
                if norm2(xi) > self.support.radius {
                    return 0.0;
                }
                let t = transpose_group
                    .orbit_time(xi)
                    .expect("orbit time exists for nonzero ξ under a validated descriptor");
                profile.eval(t)
            }
            SpecKind::Indicator { chart, .. } => chart.eval(xi),
            SpecKind::Transported { base, p_inverse, .. } => base.eval(&p_inverse.matvec(xi)),
        }
    }

    pub fn support_radius(&self) -> SupportRadius {
        self.support
    }

    /// A generator of the group this wavelet was built for (normalized for
    /// profile kinds; the original diagonal for indicator kinds;
    /// `S⁻¹ · Y · S` for transported kinds).
    pub fn effective_generator(&self) -> Matrix {
        match &self.kind {
            SpecKind::Profile { group, .. } => group.generator().clone(),
            SpecKind::Indicator { generator, .. } => generator.clone(),
            SpecKind::Transported {
                base,
                similarity,
                p_inverse,
            } => {
                let s_inv = p_inverse.transpose();
                s_inv.matmul(&base.effective_generator()).matmul(similarity)
            }
        }
    }
}

/// Evaluate a profile-kind spec; errors on other kinds.
pub fn profile_wavelet_eval(spec: &WaveletSpec, xi: &[f64]) -> Result<f64> {
    match &spec.kind {
        SpecKind::Profile { .. } => Ok(spec.eval(xi)),
        _ => Err(Error::Method("spec is not a profile wavelet".into())),
    }
}

/// Evaluate an indicator-kind spec; errors on other kinds.
pub fn indicator_wavelet_eval(spec: &WaveletSpec, xi: &[f64]) -> Result<f64> {
    match &spec.kind {
        SpecKind::Indicator { .. } => Ok(spec.eval(xi)),
        _ => Err(Error::Method("spec is not an indicator wavelet".into())),
    }
}

/// Evaluate a transported-kind spec; errors on other kinds.
pub fn transported_wavelet_eval(spec: &WaveletSpec, xi: &[f64]) -> Result<f64> {
    match &spec.kind {
        SpecKind::Transported { .. } => Ok(spec.eval(xi)),
        _ => Err(Error::Method("spec is not a transported wavelet".into())),
    }
}

// ---------------------------------------------------------------------
// Wire format

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum ProfileJson {
    Named(String),
    Scaled { name: String, scale: f64 },
    Tabulated { knots: Vec<f64>, values: Vec<f64> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum WaveletSpecJson {
    Profile { generator: Matrix, profile: ProfileJson },
    Indicator { generator: Matrix },
    Transported {
        base: Box<WaveletSpecJson>,
        similarity: Matrix,
    },
}

impl TryFrom<ProfileJson> for Profile {
    type Error = Error;

    fn try_from(j: ProfileJson) -> Result<Profile> {
        match j {
            ProfileJson::Named(name) if name == RAISED_SINE_NAME => Ok(Profile::raised_sine()),
            ProfileJson::Named(name) => Err(Error::InvalidInput(format!(
                "unknown profile name '{name}', expected '{RAISED_SINE_NAME}' or a table"
            ))),
            ProfileJson::Scaled { name, scale } if name == RAISED_SINE_NAME => {
                Profile::raised_sine_scaled(scale)
            }
            ProfileJson::Scaled { name, .. } => Err(Error::InvalidInput(format!(
                "unknown scaled profile name '{name}'"
            ))),
            ProfileJson::Tabulated { knots, values } => Profile::from_samples(knots, values),
        }
    }
}

impl From<Profile> for ProfileJson {
    fn from(p: Profile) -> ProfileJson {
        match p.kind {
            ProfileKind::RaisedSine { scale } => {
                if scale == 1.0 {
                    ProfileJson::Named(RAISED_SINE_NAME.into())
                } else {
                    ProfileJson::Scaled {
                        name: RAISED_SINE_NAME.into(),
                        scale,
                    }
                }
            }
            ProfileKind::Tabulated { knots, values } => ProfileJson::Tabulated { knots, values },
        }
    }
}

impl TryFrom<WaveletSpecJson> for WaveletSpec {
    type Error = Error;

    fn try_from(j: WaveletSpecJson) -> Result<WaveletSpec> {
        match j {
            WaveletSpecJson::Profile { generator, profile } => {
                WaveletSpec::profile(&generator, Profile::try_from(profile)?)
            }
            WaveletSpecJson::Indicator { generator } => WaveletSpec::indicator(&generator),
            WaveletSpecJson::Transported { base, similarity } => {
                WaveletSpec::transported(WaveletSpec::try_from(*base)?, &similarity)
            }
        }
    }
}

impl From<WaveletSpec> for WaveletSpecJson {
    fn from(w: WaveletSpec) -> WaveletSpecJson {
        match w.kind {
            SpecKind::Profile {
                generator, profile, ..
            } => WaveletSpecJson::Profile {
                generator,
                profile: profile.into(),
            },
            SpecKind::Indicator { generator, .. } => WaveletSpecJson::Indicator { generator },
            SpecKind::Transported {
                base, similarity, ..
            } => WaveletSpecJson::Transported {
                base: Box::new((*base).clone().into()),
                similarity,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn raised_sine_profile_shape() {
        let p = Profile::raised_sine();
        assert!((p.eval(0.5) - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert!(p.eval(0.0).abs() < 1e-15);
        assert!(p.eval(1.0).abs() < 1e-15);
        assert_eq!(p.eval(-0.1), 0.0);
        assert_eq!(p.eval(1.1), 0.0);
        assert_eq!(p.support_end(), 1.0);
        assert_eq!(p.l2_norm(), 1.0);
    }

    #[test]
    fn tabulated_profile_checks() {
        // Triangle on [0, 1] with peak √3 has ∫φ² = 1.
        let peak = 3f64.sqrt();
        let p = Profile::from_samples(vec![0.0, 0.5, 1.0], vec![0.0, peak, 0.0]).unwrap();
        assert!((p.eval(0.25) - peak / 2.0).abs() < 1e-14);
        assert!((p.l2_norm() - 1.0).abs() < 1e-12);

        assert!(Profile::from_samples(vec![0.0, 0.5, 1.0], vec![0.0, 1.0, 0.0]).is_err());
        assert!(Profile::from_samples(vec![0.0, 0.0, 1.0], vec![0.0, peak, 0.0]).is_err());
        assert!(Profile::from_samples(vec![0.0, 1.0], vec![0.5, 0.0]).is_err());
    }

    #[test]
    fn profile_wavelet_point_values() {
        let spec = WaveletSpec::profile(&Matrix::identity(2), Profile::raised_sine()).unwrap();
        assert_eq!(spec.eval(&[0.0, 0.0]), 0.0);
        // Identity generator is self-transpose; orbit time is ln‖ξ‖.
        let v = spec.eval(&[0.5f64.exp(), 0.0]);
        assert!((v - std::f64::consts::SQRT_2).abs() < 1e-9, "got {v}");
        // Outside the closed ball of radius e^{N·λ₁} = e the value is
        // exactly zero.
        assert_eq!(spec.eval(&[3.0, 0.0]), 0.0);
        assert_eq!(spec.eval(&[0.0, -2.8]), 0.0);
    }

    #[test]
    fn profile_support_radius_values() {
        let spec = WaveletSpec::profile(&Matrix::of([[1.0, 1.0], [0.0, 1.0]]), Profile::raised_sine())
            .unwrap();
        let r = spec.support_radius();
        assert!(!r.unbounded_in_u);
        assert!((r.radius - 1.5f64.exp()).abs() < 1e-10);
    }

    #[test]
    fn profile_support_radius_clamps_at_one() {
        // Support end N = −2 with λ₁ = 1: e^{Nλ₁} < 1, so the unit ball
        // still carries the sub-sphere part of the support.
        let peak = 3f64.sqrt();
        let p = Profile::from_samples(vec![-3.0, -2.5, -2.0], vec![0.0, peak, 0.0]).unwrap();
        let spec = WaveletSpec::profile(&Matrix::identity(2), p).unwrap();
        assert_eq!(spec.support_radius().radius, 1.0);
    }

    #[test]
    fn indicator_point_values() {
        let spec = WaveletSpec::indicator(&Matrix::diag(&[1.0, 1.0]).unwrap()).unwrap();
        // ξ = (0, e⁻¹): τ = −1, u = 0, slab [−1, 0] contains −1.
        assert_eq!(spec.eval(&[0.0, (-1f64).exp()]), 1.0);
        // ξ = (0, e): τ = 1 outside the slab.
        assert_eq!(spec.eval(&[0.0, 1f64.exp()]), 0.0);
        // Hyperplane ξ_n = 0 maps to zero by definition.
        assert_eq!(spec.eval(&[1.0, 0.0]), 0.0);
        // Mirror symmetry in the distinguished coordinate.
        assert_eq!(spec.eval(&[0.0, -(-1f64).exp()]), 1.0);
        assert!(spec.support_radius().unbounded_in_u);
    }

    #[test]
    fn indicator_requires_nonzero_trace_and_diagonal() {
        assert!(WaveletSpec::indicator(&Matrix::diag(&[1.0, -1.0]).unwrap()).is_err());
        assert!(WaveletSpec::indicator(&Matrix::of([[1.0, 0.5], [0.0, 2.0]])).is_err());
    }

    #[test]
    fn indicator_negative_trace_uses_reversed_chart() {
        // tr = −1 < 0: same group as diag(−1, 2), which has positive trace.
        let spec = WaveletSpec::indicator(&Matrix::diag(&[1.0, -2.0]).unwrap()).unwrap();
        match &spec.kind {
            SpecKind::Indicator { chart, .. } => {
                assert!(chart.flipped);
                assert_eq!(chart.d, vec![-1.0, 2.0]);
                assert!((chart.trace - 1.0).abs() < 1e-15);
            }
            _ => unreachable!(),
        }
        // Chart of diag(−1, 2): ξ = (0, 1) has τ = 0, u = 0 → slab [−1, 0].
        assert_eq!(spec.eval(&[0.0, 1.0]), 1.0);
    }

    #[test]
    fn indicator_permutes_zero_distinguished_dilation() {
        let spec = WaveletSpec::indicator(&Matrix::diag(&[2.0, 1.0, 0.0]).unwrap()).unwrap();
        match &spec.kind {
            SpecKind::Indicator { chart, .. } => {
                assert_eq!(chart.swap, Some((0, 2)));
                assert_eq!(chart.d, vec![0.0, 1.0, 2.0]);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn transported_identity_matches_base() {
        let base = WaveletSpec::indicator(&Matrix::diag(&[1.0, 1.0]).unwrap()).unwrap();
        let spec = WaveletSpec::transported(base.clone(), &Matrix::identity(2)).unwrap();
        for xi in [[0.0, 0.5], [0.3, -0.4], [2.0, 0.1], [0.0, (-1f64).exp()]] {
            assert_eq!(spec.eval(&xi), base.eval(&xi));
        }
    }

    #[test]
    fn transported_diag_scaling_fixes_second_coordinate() {
        let base = WaveletSpec::indicator(&Matrix::diag(&[1.0, 1.0]).unwrap()).unwrap();
        let spec = WaveletSpec::transported(base, &Matrix::diag(&[2.0, 1.0]).unwrap()).unwrap();
        assert_eq!(spec.eval(&[0.0, (-1f64).exp()]), 1.0);
    }

    #[test]
    fn transported_rejects_singular_similarity() {
        let base = WaveletSpec::indicator(&Matrix::diag(&[1.0, 1.0]).unwrap()).unwrap();
        let s = Matrix::of([[1.0, 2.0], [2.0, 4.0]]);
        assert!(WaveletSpec::transported(base, &s).is_err());
    }

    #[test]
    fn effective_generator_round_trips_similarity() {
        let base = WaveletSpec::indicator(&Matrix::diag(&[1.0, 2.0]).unwrap()).unwrap();
        let s = Matrix::of([[2.0, 1.0], [1.0, 1.0]]);
        let spec = WaveletSpec::transported(base, &s).unwrap();
        let x = spec.effective_generator();
        let expected = s
            .inverse()
            .unwrap()
            .matmul(&Matrix::diag(&[1.0, 2.0]).unwrap())
            .matmul(&s);
        assert!(x.sub(&expected).max_abs() < 1e-12);
    }

    #[test]
    fn kind_checked_eval_wrappers() {
        let ind = WaveletSpec::indicator(&Matrix::diag(&[1.0, 1.0]).unwrap()).unwrap();
        assert!(indicator_wavelet_eval(&ind, &[0.0, 0.5]).is_ok());
        assert!(profile_wavelet_eval(&ind, &[0.0, 0.5]).is_err());
        assert!(transported_wavelet_eval(&ind, &[0.0, 0.5]).is_err());
    }

    #[test]
    fn spec_json_round_trip() {
        let profile_spec =
            WaveletSpec::profile(&Matrix::of([[1.0, 1.0], [0.0, 1.0]]), Profile::raised_sine())
                .unwrap();
        let s = serde_json::to_string(&profile_spec).unwrap();
        assert!(s.contains("\"kind\":\"profile\""));
        assert!(s.contains("raised-sine"));
        let back: WaveletSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(profile_spec, back);

        let base = WaveletSpec::indicator(&Matrix::diag(&[1.0, 1.0]).unwrap()).unwrap();
        let spec = WaveletSpec::transported(base, &Matrix::of([[2.0, 1.0], [1.0, 1.0]])).unwrap();
        let s = serde_json::to_string(&spec).unwrap();
        let back: WaveletSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(spec, back);
    }
}
