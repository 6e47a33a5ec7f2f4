//! The admissibility decision engine.
//!
//! Each criterion inspects the generator `X` of `G_X = {e^{tX}}` and either
//! produces a verdict with a machine-checkable certificate or stays silent.
//! [`decide`] applies them in a fixed, documented order (complete
//! characterizations first, sufficient-only criteria after) so verdicts are
//! reproducible. `Unknown` is an honest first-class outcome: nothing decides
//! e.g. non-diagonalizable traceless generators in n ≥ 3.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matkit::{eigen_general, spectral_norm, split_sym_antisym, sym_eigen, Matrix};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Admissible,
    NotAdmissible,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Criterion {
    /// n = 2 complete characterization: admissible iff the trace is nonzero.
    TwoByTwoTrace,
    /// Real-diagonalizable generators: admissible iff the trace is nonzero.
    DiagonalizableTrace,
    /// Sufficient: symmetric-part eigenvalues all nonzero with a common sign.
    SymmetricPartSign,
    /// Sufficient: complex-diagonalizable with eigenvalue real parts all
    /// nonzero and of a common sign.
    ComplexDiagSign,
    /// n = 1 (trivially diagonal): admissible iff the single entry is
    /// nonzero.
    DiagonalTrace,
}

/// Admissibility decision. The certificate holds the named scalars that
/// back the verdict so the decision can be re-derived from the report
/// alone. `criterion` is present exactly when the status is decided.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub criterion: Option<Criterion>,
    pub certificate: BTreeMap<String, f64>,
    /// Statement of the mathematical fact the verdict rests on.
    #[serde(rename = "paper_ref")]
    pub basis: String,
}

impl Verdict {
    fn unknown() -> Verdict {
        Verdict {
            status: Status::Unknown,
            criterion: None,
            certificate: BTreeMap::new(),
            basis: "no applicable criterion; admissibility undetermined".into(),
        }
    }
}

fn certificate(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// Complete 2×2 characterization: `G_X` is admissible iff `tr(X) ≠ 0`.
/// Never returns `Unknown`.
pub fn characterize_2x2(x: &Matrix, tol: f64) -> Result<Verdict> {
    if x.n() != 2 {
        return Err(Error::InvalidInput(format!(
            "2x2 characterization applied to a {0}x{0} matrix",
            x.n()
        )));
    }
    let trace = x.trace();
    let norm = spectral_norm(x);
    let threshold = tol * norm.max(1.0);
    let admissible = trace.abs() > threshold;
    Ok(Verdict {
        status: if admissible { Status::Admissible } else { Status::NotAdmissible },
        criterion: Some(Criterion::TwoByTwoTrace),
        certificate: certificate(&[("trace", trace), ("threshold", threshold), ("norm", norm)]),
        basis: "2x2 generators: G_X admissible iff tr(X) != 0".into(),
    })
}

/// Sufficient criterion: if the symmetric part `(X+Xᵀ)/2` has all-nonzero
/// eigenvalues of a common sign, the group is admissible. Silent otherwise
/// (the criterion can never refute).
pub fn criterion_symmetric_part(x: &Matrix, tol: f64) -> Option<Verdict> {
    let (m, _) = split_sym_antisym(x);
    let spectrum = sym_eigen(&m).expect("split produces an exactly symmetric part");
    let values: Vec<f64> = spectrum.eigenvalues.iter().map(|e| e.re).collect();
    let norm = spectral_norm(x);
    let threshold = tol * norm;
    let min_abs = values.iter().fold(f64::INFINITY, |acc, v| acc.min(v.abs()));
    let same_sign = values.iter().all(|&v| v > 0.0) || values.iter().all(|&v| v < 0.0);
    if min_abs > threshold && same_sign {
        let mut cert = certificate(&[("threshold", threshold), ("norm", norm), ("min_abs", min_abs)]);
        for (i, v) in values.iter().enumerate() {
            cert.insert(format!("lambda_{}", i + 1), *v);
        }
        Some(Verdict {
            status: Status::Admissible,
            criterion: Some(Criterion::SymmetricPartSign),
            certificate: cert,
            basis: "symmetric-part eigenvalues nonzero with common sign imply admissibility".into(),
        })
    } else {
        None
    }
}

/// Trace criterion for provably real-diagonalizable generators: admissible
/// iff the trace is nonzero. Near-zero traces inside the band
/// `(tol·1e−3, tol]·max(1, ‖X‖)` yield no verdict rather than asserting
/// non-admissibility from roundoff.
pub fn criterion_diagonalizable_trace(x: &Matrix, tol: f64) -> Option<Verdict> {
    let spectrum = eigen_general(x).ok()?;
    if !spectrum.is_real_diagonalizable {
        return None;
    }
    let trace = x.trace();
    let norm = spectral_norm(x);
    let threshold = tol * norm.max(1.0);
    let cert = certificate(&[
        ("trace", trace),
        ("threshold", threshold),
        ("norm", norm),
        ("gap", spectrum.gap),
    ]);
    if trace.abs() > threshold {
        Some(Verdict {
            status: Status::Admissible,
            criterion: Some(Criterion::DiagonalizableTrace),
            certificate: cert,
            basis: "real-diagonalizable generators: G_X admissible iff tr(X) != 0".into(),
        })
    } else if trace.abs() <= threshold * 1e-3 {
        Some(Verdict {
            status: Status::NotAdmissible,
            criterion: Some(Criterion::DiagonalizableTrace),
            certificate: cert,
            basis: "real-diagonalizable generators: G_X admissible iff tr(X) != 0".into(),
        })
    } else {
        None
    }
}

/// Sufficient criterion: pairwise-distinct eigenvalues (hence
/// complex-diagonalizable) whose real parts are all nonzero with a common
/// sign imply admissibility. Conservatively silent when eigenvalues repeat.
pub fn criterion_complex_diag(x: &Matrix, tol: f64) -> Option<Verdict> {
    let spectrum = eigen_general(x).ok()?;
    let norm = spectral_norm(x);
    if spectrum.gap <= tol::EIGEN_DISTINCT_REL * norm {
        return None;
    }
    let threshold = tol * norm;
    let res: Vec<f64> = spectrum.eigenvalues.iter().map(|e| e.re).collect();
    let min_abs = res.iter().fold(f64::INFINITY, |acc, v| acc.min(v.abs()));
    let same_sign = res.iter().all(|&v| v > 0.0) || res.iter().all(|&v| v < 0.0);
    if min_abs > threshold && same_sign {
        let mut cert = certificate(&[
            ("threshold", threshold),
            ("norm", norm),
            ("gap", spectrum.gap),
            ("min_abs_re", min_abs),
        ]);
        for (i, e) in spectrum.eigenvalues.iter().enumerate() {
            cert.insert(format!("re_{}", i + 1), e.re);
            cert.insert(format!("im_{}", i + 1), e.im);
        }
        Some(Verdict {
            status: Status::Admissible,
            criterion: Some(Criterion::ComplexDiagSign),
            certificate: cert,
            basis: "complex-diagonalizable with eigenvalue real parts nonzero, common sign".into(),
        })
    } else {
        None
    }
}

/// Apply the criteria in order of strength:
/// 1. complete characterizations (n = 1 single entry, n = 2 trace);
/// 2. real-diagonalizable trace criterion (can refute);
/// 3. symmetric-part sign criterion (sufficient only);
/// 4. complex-diagonalizable sign criterion (sufficient only).
///
/// The first conclusive result wins; anything else is `Unknown`.
pub fn decide(x: &Matrix, tol: f64) -> Verdict {
    if x.n() == 1 {
        let trace = x.trace();
        let threshold = tol * trace.abs().max(1.0);
        let admissible = trace.abs() > threshold;
        return Verdict {
            status: if admissible { Status::Admissible } else { Status::NotAdmissible },
            criterion: Some(Criterion::DiagonalTrace),
            certificate: certificate(&[("trace", trace), ("threshold", threshold)]),
            basis: "diagonal generators: G_D admissible iff tr(D) != 0".into(),
        };
    }
    if x.n() == 2 {
        return characterize_2x2(x, tol).expect("dimension checked");
    }
    if let Some(v) = criterion_diagonalizable_trace(x, tol) {
        return v;
    }
    if let Some(v) = criterion_symmetric_part(x, tol) {
        return v;
    }
    if let Some(v) = criterion_complex_diag(x, tol) {
        return v;
    }
    Verdict::unknown()
}

/// [`decide`] with the default decision tolerance.
pub fn decide_default(x: &Matrix) -> Verdict {
    decide(x, tol::DECISION_REL)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-9;

    #[test]
    fn rotation_is_not_admissible() {
        let v = characterize_2x2(&Matrix::of([[0.0, 1.0], [-1.0, 0.0]]), TOL).unwrap();
        assert_eq!(v.status, Status::NotAdmissible);
        assert_eq!(v.criterion, Some(Criterion::TwoByTwoTrace));
    }

    #[test]
    fn nilpotent_shear_is_not_admissible() {
        let v = characterize_2x2(&Matrix::of([[0.0, 1.0], [0.0, 0.0]]), TOL).unwrap();
        assert_eq!(v.status, Status::NotAdmissible);
    }

    #[test]
    fn unipotent_shear_is_admissible_with_trace_two() {
        let v = characterize_2x2(&Matrix::of([[1.0, 1.0], [0.0, 1.0]]), TOL).unwrap();
        assert_eq!(v.status, Status::Admissible);
        assert_eq!(v.certificate["trace"], 2.0);
    }

    #[test]
    fn characterize_2x2_rejects_other_dims() {
        assert!(characterize_2x2(&Matrix::identity(3), TOL).is_err());
    }

    #[test]
    fn symmetric_part_criterion_examples() {
        let v = criterion_symmetric_part(&Matrix::identity(3), TOL).unwrap();
        assert_eq!(v.status, Status::Admissible);
        assert_eq!(v.certificate["lambda_1"], 1.0);

        let v = criterion_symmetric_part(&Matrix::of([[1.0, 1.0], [0.0, 1.0]]), TOL).unwrap();
        assert!((v.certificate["lambda_1"] - 1.5).abs() < 1e-12);
        assert!((v.certificate["lambda_2"] - 0.5).abs() < 1e-12);

        // Mixed signs: silent even though the group is admissible by trace.
        assert!(criterion_symmetric_part(&Matrix::diag(&[1.0, -2.0]).unwrap(), TOL).is_none());
    }

    #[test]
    fn diagonalizable_trace_examples() {
        let v = criterion_diagonalizable_trace(&Matrix::diag(&[1.0, -2.0]).unwrap(), TOL).unwrap();
        assert_eq!(v.status, Status::Admissible);
        assert_eq!(v.certificate["trace"], -1.0);

        let v = criterion_diagonalizable_trace(&Matrix::diag(&[1.0, -1.0]).unwrap(), TOL).unwrap();
        assert_eq!(v.status, Status::NotAdmissible);

        // Repeated eigenvalue, not symmetric: routed onward.
        assert!(criterion_diagonalizable_trace(&Matrix::of([[1.0, 1.0], [0.0, 1.0]]), TOL).is_none());
    }

    #[test]
    fn diagonalizable_trace_ambiguous_band_is_silent() {
        // Trace 1e-11 sits between the strict-zero band and the decision
        // threshold; no other criterion applies, so the honest answer for
        // this 3×3 is Unknown. (For n = 2 the characterization is total and
        // the band collapses to the single threshold.)
        let x = Matrix::diag(&[1.0, 1.0, -2.0 + 1e-11]).unwrap();
        assert!(criterion_diagonalizable_trace(&x, TOL).is_none());
        assert_eq!(decide(&x, TOL).status, Status::Unknown);
    }

    #[test]
    fn complex_diag_criterion_examples() {
        let v = criterion_complex_diag(&Matrix::of([[1.0, 5.0], [-5.0, 1.0]]), TOL).unwrap();
        assert_eq!(v.status, Status::Admissible);
        assert_eq!(v.criterion, Some(Criterion::ComplexDiagSign));

        // Rotation generator: real parts are zero.
        assert!(criterion_complex_diag(&Matrix::of([[0.0, 1.0], [-1.0, 0.0]]), TOL).is_none());

        // Rotation block plus a distinct real eigenvalue.
        let x = Matrix::of([
            [1.0, 1.0, 0.0],
            [-1.0, 1.0, 0.0],
            [0.0, 0.0, 2.0],
        ]);
        let v = criterion_complex_diag(&x, TOL).unwrap();
        assert_eq!(v.status, Status::Admissible);
    }

    #[test]
    fn decide_two_by_two_is_never_unknown() {
        for x in [
            Matrix::of([[0.0, 1.0], [-1.0, 0.0]]),
            Matrix::of([[1.0, 1.0], [0.0, 1.0]]),
            Matrix::of([[0.0, 3.0], [0.5, 0.0]]),
        ] {
            assert_ne!(decide(&x, TOL).status, Status::Unknown);
        }
    }

    #[test]
    fn decide_nilpotent_3x3_is_unknown() {
        let x = Matrix::of([
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
            [0.0, 0.0, 0.0],
        ]);
        let v = decide(&x, TOL);
        assert_eq!(v.status, Status::Unknown);
        assert!(v.criterion.is_none());
    }

    #[test]
    fn decide_diagonal_3x3_by_trace() {
        let v = decide(&Matrix::diag(&[1.0, -2.0, 4.0]).unwrap(), TOL);
        assert_eq!(v.status, Status::Admissible);
        assert_eq!(v.criterion, Some(Criterion::DiagonalizableTrace));
        assert_eq!(v.certificate["trace"], 3.0);
    }

    #[test]
    fn decide_reaches_complex_diag_route() {
        // Complex pair 0.1 ± i√3 with a strong shear so the symmetric part
        // has mixed signs, plus a distinct real eigenvalue 0.2.
        let x = Matrix::of([
            [0.1, 3.0, 0.0],
            [-1.0, 0.1, 0.0],
            [0.0, 0.0, 0.2],
        ]);
        let v = decide(&x, TOL);
        assert_eq!(v.status, Status::Admissible);
        assert_eq!(v.criterion, Some(Criterion::ComplexDiagSign));
    }

    #[test]
    fn decide_one_by_one() {
        let v = decide(&Matrix::of([[2.0]]), TOL);
        assert_eq!(v.status, Status::Admissible);
        assert_eq!(v.criterion, Some(Criterion::DiagonalTrace));
        let v = decide(&Matrix::of([[0.0]]), TOL);
        assert_eq!(v.status, Status::NotAdmissible);
    }

    #[test]
    fn certificates_reproduce_the_decision() {
        // Trace criteria: |trace| vs threshold re-derives the status.
        for x in [
            Matrix::of([[1.0, 1.0], [0.0, 1.0]]),
            Matrix::of([[0.0, 1.0], [-1.0, 0.0]]),
        ] {
            let v = decide(&x, TOL);
            let redecided = v.certificate["trace"].abs() > v.certificate["threshold"];
            assert_eq!(redecided, v.status == Status::Admissible);
        }
        // Sign criterion: the recorded spectrum is nonzero with one sign.
        let v = criterion_symmetric_part(&Matrix::of([[1.0, 1.0], [0.0, 1.0]]), TOL).unwrap();
        let lambdas = [v.certificate["lambda_1"], v.certificate["lambda_2"]];
        assert!(lambdas.iter().all(|l| l.abs() > v.certificate["threshold"]));
        assert!(lambdas.iter().all(|l| *l > 0.0) || lambdas.iter().all(|l| *l < 0.0));
    }

    #[test]
    fn verdict_json_shape() {
        let v = decide(&Matrix::of([[1.0, 1.0], [0.0, 1.0]]), TOL);
        let s = serde_json::to_string(&v).unwrap();
        assert!(s.contains("\"paper_ref\""));
        let back: Verdict = serde_json::from_str(&s).unwrap();
        assert_eq!(v, back);
    }
}
