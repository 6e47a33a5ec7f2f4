//! Gamma function (Lanczos approximation) and Euclidean ball volumes.

const LANCZOS_G: f64 = 7.0;
// Published g = 7, n = 9 coefficients, kept at full printed precision.
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// Γ(x) for real x (poles at non-positive integers return infinity).
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        // Reflection: Γ(x) Γ(1−x) = π / sin(πx)
        let s = (std::f64::consts::PI * x).sin();
        if s == 0.0 {
            return f64::INFINITY;
        }
        return std::f64::consts::PI / (s * gamma(1.0 - x));
    }
    let x = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (2.0 * std::f64::consts::PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
}

/// Volume of the k-dimensional ball of radius r:
/// `π^{k/2} r^k / Γ(k/2 + 1)`. `V_0 = 1` by convention.
pub fn ball_volume(k: usize, r: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let kf = k as f64;
    std::f64::consts::PI.powf(kf / 2.0) * r.powf(kf) / gamma(kf / 2.0 + 1.0)
}
