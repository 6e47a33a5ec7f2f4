//! Deterministic sampling for sweeps and Monte Carlo estimates.
//!
//! All randomness comes from a counter-based stream cipher keyed by the
//! caller's seed. Each sample index gets its own stream, so per-sample
//! results are independent of evaluation order and a parallel map over
//! samples would produce bit-identical reports.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A dedicated stream for sample `index` under `seed`.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index.wrapping_add(1));
    rng
}

/// Standard normal via Box–Muller.
pub fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let u1: f64 = rng.gen();
        let u2: f64 = rng.gen();
        if u1 > 0.0 {
            return (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos();
        }
    }
}

/// Uniform direction on the unit sphere in ℝⁿ.
pub fn unit_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| gaussian(rng)).collect();
        let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.into_iter().map(|a| a / norm).collect();
        }
    }
}

/// Radius with log-uniform distribution over `[10^lo_exp, 10^hi_exp]`,
/// stratified so sample `index` of `count` draws from the `index`-th slice
/// of the exponent range. The extreme decades are always exercised.
pub fn stratified_log_radius(
    rng: &mut ChaCha8Rng,
    index: usize,
    count: usize,
    lo_exp: f64,
    hi_exp: f64,
) -> f64 {
    let u: f64 = rng.gen();
    let e = lo_exp + (hi_exp - lo_exp) * ((index as f64 + u) / count as f64);
    10f64.powf(e)
}

/// Uniform point in the n-ball of radius r.
pub fn ball_point(rng: &mut ChaCha8Rng, n: usize, r: f64) -> Vec<f64> {
    let dir = unit_vector(rng, n);
    let u: f64 = rng.gen();
    let radius = r * u.powf(1.0 / n as f64);
    dir.into_iter().map(|a| a * radius).collect()
}
