//! Central home for every numerical tolerance used by the toolkit.
//!
//! Thresholds are grouped by what they protect: input validation, iterative
//! kernel convergence, and decision/verification gates. Anything that a
//! caller may reasonably want to vary at runtime (decision tolerance,
//! quadrature tolerance) is also a parameter of the corresponding operation;
//! the constants here are the defaults.

/// Relative symmetry check `‖S − Sᵀ‖_F ≤ SYMMETRY_REL · ‖S‖_F`.
pub const SYMMETRY_REL: f64 = 1e-12;

/// Default relative tolerance for admissibility decisions.
pub const DECISION_REL: f64 = 1e-9;

/// Default absolute tolerance for Calderón-integral quadrature.
pub const QUAD_DEFAULT: f64 = 1e-6;

/// Eigenvalues closer than `EIGEN_DISTINCT_REL · ‖X‖` are treated as
/// repeated when deciding diagonalizability.
pub const EIGEN_DISTINCT_REL: f64 = 1e-8;

/// Scaled norm targeted by the exponential's scaling-and-squaring step.
pub const EXP_SCALE_TARGET: f64 = 0.5;

/// Term-ratio stopping rule for the logarithm power series.
pub const LOG_SERIES_STOP: f64 = 1e-16;

/// Above this value of `‖A − I‖` the logarithm series still converges but
/// slowly; documented so callers near the domain edge know what to expect.
pub const LOG_SLOW_BAND: f64 = 0.9;

/// Jacobi eigensolver target: off-diagonal Frobenius norm relative to the
/// input's Frobenius norm.
pub const JACOBI_OFFDIAG: f64 = 1e-14;

/// Residual target on `ln ‖e^{−t(M+A)} ξ‖` for the orbit-time bisection.
pub const ORBIT_RESIDUAL: f64 = 1e-12;

/// Unit-norm check on profile functions and sphere representatives.
pub const UNIT_NORM_ABS: f64 = 1e-10;

/// Relative mismatch allowed when checking that a caller-supplied generator
/// matches the group a wavelet spec was built for.
pub const GENERATOR_MATCH_REL: f64 = 1e-9;
