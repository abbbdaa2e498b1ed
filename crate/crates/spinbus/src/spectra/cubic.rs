//! The cubic characteristic equation of the L=2 symmetric S^z=0 block:
//! η³ + (1+Δ)/2·η² − [2 + (1−Δ)²/4]·η − (1−Δ)²(1+Δ)/8 = 0.

use crate::error::{Error, Result};

/// Coefficients (p, q, r) of η³ + pη² + qη + r for a given anisotropy.
pub fn cubic_coefficients(delta: f64) -> (f64, f64, f64) {
    let p = (1.0 + delta) / 2.0;
    let q = -(2.0 + (1.0 - delta).powi(2) / 4.0);
    let r = -(1.0 - delta).powi(2) * (1.0 + delta) / 8.0;
    (p, q, r)
}

/// Evaluate the cubic at η.
pub fn cubic_eval(delta: f64, eta: f64) -> f64 {
    let (p, q, r) = cubic_coefficients(delta);
    ((eta + p) * eta + q) * eta + r
}

/// The three real roots η₀ < η₁ < η₂, via the trigonometric solution of the
/// depressed cubic (stable in the three-real-root regime).
pub fn cubic_roots(delta: f64) -> Result<[f64; 3]> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::domain(format!(
            "Δ = {delta} outside the admissible interval (0, 1]"
        )));
    }
    let (p, q, r) = cubic_coefficients(delta);
    // depress: η = t − p/3  ⇒  t³ + at + b
    let a = q - p * p / 3.0;
    let b = 2.0 * p.powi(3) / 27.0 - p * q / 3.0 + r;
    let disc = -4.0 * a.powi(3) - 27.0 * b * b;
    if disc < 0.0 || a >= 0.0 {
        return Err(Error::domain(format!(
            "cubic at Δ = {delta} lost its three real roots (discriminant {disc:.3e}, a {a:.3e})"
        )));
    }
    let m = 2.0 * (-a / 3.0).sqrt();
    let arg = (3.0 * b / (a * m)).clamp(-1.0, 1.0);
    let theta = arg.acos() / 3.0;
    let mut roots = [0.0; 3];
    for (k, slot) in roots.iter_mut().enumerate() {
        let t = m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos();
        *slot = t - p / 3.0;
    }
    roots.sort_by(f64::total_cmp);
    for &eta in &roots {
        let residual = cubic_eval(delta, eta);
        if residual.abs() > 1e-10 {
            return Err(Error::domain(format!(
                "cubic root η = {eta} at Δ = {delta} has residual {residual:.3e}"
            )));
        }
    }
    Ok(roots)
}
