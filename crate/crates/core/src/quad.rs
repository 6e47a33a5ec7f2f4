//! Adaptive composite Gauss–Legendre quadrature (15-point panels with
//! bisection refinement). Error per panel is estimated by comparing the
//! panel value against the sum over its two halves.

use std::sync::OnceLock;

use crate::error::{Error, Result};

const POINTS: usize = 15;
const MAX_DEPTH: usize = 40;
const MAX_PANELS: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    /// Accumulated error estimate; at most the requested tolerance on
    /// success.
    pub error: f64,
    /// Number of accepted panels.
    pub panels: usize,
}

/// Nodes and weights on [-1, 1], computed once by Newton iteration on the
/// Legendre polynomial — no tabulated constants to mistype.
fn rule() -> &'static ([f64; POINTS], [f64; POINTS]) {
    static RULE: OnceLock<([f64; POINTS], [f64; POINTS])> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = POINTS;
        let mut nodes = [0.0; POINTS];
        let mut weights = [0.0; POINTS];
        for k in 0..n {
            // Chebyshev-based initial guess, standard for Gauss–Legendre.
            let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre_with_derivative(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(n, x);
            nodes[n - 1 - k] = x;
            weights[n - 1 - k] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        (nodes, weights)
    })
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn gauss15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let (nodes, weights) = rule();
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut acc = 0.0;
    for i in 0..POINTS {
        acc += weights[i] * f(c + h * nodes[i]);
    }
    acc * h
}

/// Integrate `f` over `[a, b]` to absolute tolerance `tol`.
pub fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<QuadResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("quadrature tolerance must be positive, got {tol}")));
    }
    if a == b {
        return Ok(QuadResult { value: 0.0, error: 0.0, panels: 0 });
    }
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidInput("quadrature over a non-finite interval".into()));
    }
    let width_total = (b - a).abs();
    let mut stack = vec![(a, b, gauss15(f, a, b), 0usize)];
    let mut value = 0.0;
    let mut error = 0.0;
    let mut panels = 0usize;
    let mut visited = 0usize;
    while let Some((lo, hi, whole, depth)) = stack.pop() {
        visited += 1;
        if visited > MAX_PANELS {
            return Err(Error::Truncation(format!(
                "quadrature exceeded {MAX_PANELS} panels before reaching tolerance {tol:e}"
            )));
        }
        let mid = 0.5 * (lo + hi);
        let left = gauss15(f, lo, mid);
        let right = gauss15(f, mid, hi);
        let diff = (left + right - whole).abs();
        let budget = tol * ((hi - lo).abs() / width_total);
        if diff <= budget || depth >= MAX_DEPTH {
            value += left + right;
            error += diff;
            panels += 2;
        } else {
            stack.push((lo, mid, left, depth + 1));
            stack.push((mid, hi, right, depth + 1));
        }
    }
    if error > tol {
        return Err(Error::Truncation(format!(
            "quadrature error estimate {error:e} exceeds tolerance {tol:e}"
        )));
    }
    Ok(QuadResult { value, error, panels })
}
