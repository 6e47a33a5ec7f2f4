//! Numerical toolkit for one-parameter matrix dilation groups
//! `G_X = { e^{tX} : t ∈ ℝ }` acting on the frequency domain.
//!
//! The crate decides whether such a group admits a continuous wavelet
//! (eigenvalue criteria on the generator), constructs explicit admissible
//! wavelets in the frequency domain, and verifies the Calderón condition
//! `Δ_ψ(ξ) = ∫ |ψ̂((e^{tX})ᵀ ξ)|² dt = 1` numerically.
//!
//! Module map:
//! * [`matkit`] — dense kernels for tiny (n ≤ 8) real matrices: exponential,
//!   logarithm, Lie-product approximants, eigenvalues.
//! * [`orbit`] — orbit parameterization `ξ = e^{t(M+A)} v` with `v` on the
//!   unit sphere, and the norm bounds that make the orbit-time solve
//!   well-posed.
//! * [`admit`] — the admissibility decision engine with machine-checkable
//!   certificates.
//! * [`wavelet`] — the profile, indicator and similarity-transported wavelet
//!   constructions, evaluable pointwise on the frequency domain.
//! * [`verify`] — Calderón integrals, truncated L² masses, divergence probes
//!   for non-admissible groups, and a frequency-domain reconstruction check.
//! * [`emit`] — JSON/CSV report serialization with fixed 17-significant-digit
//!   floats so every report round-trips bit-exactly.
//!
//! All values are immutable after construction and every operation is a pure
//! function of its inputs, so everything here is safe to share across
//! threads.

pub mod admit;
pub mod emit;
pub mod error;
pub mod matkit;
pub mod orbit;
pub mod quad;
pub mod tol;
pub mod verify;
pub mod wavelet;

pub use error::{Error, Result};
pub use matkit::Matrix;
