//! Closed-form spectrum and eigenvectors of the L=2 bus (a four-spin
//! plaquette), for Δ ∈ (0, 1].
//!
//! The sixteen levels are: ε₀ = Jη₀, ε₁ = −J (×2), ε₂ = −J(1+Δ)/2,
//! ε₃ = −J(1−Δ)/2, ε₄ = Jη₁, ε₅ = 0 (×4), ε₆ = J(1−Δ)/2, ε₇ = J(1+Δ)/2 (×2),
//! ε₈ = J (×2), ε₉ = Jη₂, with η₀ < η₁ < η₂ the roots of the symmetric-block
//! cubic. Eigenvectors are stored in the canonical chain-major bit ordering;
//! the ket strings below follow the presentation order
//! |s₁₁ s₁₂ s₂₂ s₂₁⟩ and are permuted into the canonical order when built.

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::spectra::cubic::cubic_roots;

/// One analytic level: energy, degeneracy, and its orthonormal eigenvectors
/// in the canonical bit ordering.
#[derive(Debug, Clone)]
pub struct AnalyticLevel {
    /// Level label 0..=9 in the order listed above.
    pub label: usize,
    pub energy: f64,
    pub vectors: Vec<DVector<f64>>,
}

impl AnalyticLevel {
    pub fn degeneracy(&self) -> usize {
        self.vectors.len()
    }
}

/// The full L=2 analytic solution.
#[derive(Debug, Clone)]
pub struct AnalyticL2 {
    pub delta: f64,
    pub exchange: f64,
    /// Roots η₀ < η₁ < η₂ of the symmetric-block cubic.
    pub roots: [f64; 3],
    /// (a_f, b_f, c_f) for the three symmetric-block eigenvectors.
    pub coefficients: [[f64; 3]; 3],
    /// The ten levels in the order ε₀..ε₉ (not globally sorted for Δ < 1 the
    /// listed order is already ascending; at Δ = 1 some levels coincide).
    pub levels: Vec<AnalyticLevel>,
}

/// Spin arrows in presentation order |s₁₁ s₁₂ s₂₂ s₂₁⟩; `true` is up.
fn ket(display: [bool; 4]) -> usize {
    // presentation positions map to canonical bits: s₁₁→0, s₁₂→1, s₂₁→2, s₂₂→3
    (display[0] as usize)
        | (display[1] as usize) << 1
        | (display[3] as usize) << 2
        | (display[2] as usize) << 3
}

fn basis_vec(terms: &[(f64, usize)]) -> DVector<f64> {
    let mut v = DVector::zeros(16);
    for &(coeff, idx) in terms {
        v[idx] += coeff;
    }
    v
}

const U: bool = true;
const D: bool = false;

/// (a_f, b_f, c_f) for root η_f. At the degenerate point Δ = 1, η₁ = 0 makes
/// both denominators vanish; the Δ→1 limit of the formulas is (0, 1/2, −1/2)
/// (η₁ ≈ −x²/2 with x = (1−Δ)/2, so b/c → −1 and a → 0).
fn coefficients_for(eta: f64, x: f64) -> [f64; 3] {
    let dp = eta + x;
    let dm = eta - x;
    if dp.abs() < 1e-13 || dm.abs() < 1e-13 {
        return [0.0, 0.5, -0.5];
    }
    let a = 1.0 / (2.0 * (1.0 + 1.0 / (dp * dp) + 1.0 / (dm * dm))).sqrt();
    [a, a / dp, a / dm]
}

/// Build the analytic L=2 solution for anisotropy `delta` and exchange `j`.
pub fn analytic_spectrum_l2(delta: f64, j: f64) -> Result<AnalyticL2> {
    if !j.is_finite() || j <= 0.0 {
        return Err(Error::domain(format!("J = {j} must be positive")));
    }
    let roots = cubic_roots(delta)?;
    let x = (1.0 - delta) / 2.0;
    let coefficients = [
        coefficients_for(roots[0], x),
        coefficients_for(roots[1], x),
        coefficients_for(roots[2], x),
    ];

    // the six sz=0 kets in presentation order
    let dudu = ket([D, U, D, U]);
    let udud = ket([U, D, U, D]);
    let dduu = ket([D, D, U, U]);
    let uudd = ket([U, U, D, D]);
    let duud = ket([D, U, U, D]);
    let uddu = ket([U, D, D, U]);
    // single-flip kets
    let duuu = ket([D, U, U, U]);
    let uduu = ket([U, D, U, U]);
    let uudu = ket([U, U, D, U]);
    let uuud = ket([U, U, U, D]);
    let uddd = ket([U, D, D, D]);
    let dudd = ket([D, U, D, D]);
    let ddud = ket([D, D, U, D]);
    let dddu = ket([D, D, D, U]);

    let symmetric_block = |f: usize| -> DVector<f64> {
        let [a, b, c] = coefficients[f];
        basis_vec(&[
            (a, dudu),
            (a, udud),
            (b, dduu),
            (b, uudd),
            (c, duud),
            (c, uddu),
        ])
    };

    let s = std::f64::consts::FRAC_1_SQRT_2;
    let levels = vec![
        AnalyticLevel {
            label: 0,
            energy: j * roots[0],
            vectors: vec![symmetric_block(0)],
        },
        AnalyticLevel {
            label: 1,
            energy: -j,
            vectors: vec![
                basis_vec(&[(0.5, duuu), (-0.5, uduu), (0.5, uudu), (-0.5, uuud)]),
                basis_vec(&[(0.5, uddd), (-0.5, dudd), (0.5, ddud), (-0.5, dddu)]),
            ],
        },
        AnalyticLevel {
            label: 2,
            energy: -j * (1.0 + delta) / 2.0,
            vectors: vec![basis_vec(&[(s, dudu), (-s, udud)])],
        },
        AnalyticLevel {
            label: 3,
            energy: -j * (1.0 - delta) / 2.0,
            vectors: vec![basis_vec(&[(s, dduu), (-s, uudd)])],
        },
        AnalyticLevel {
            label: 4,
            energy: j * roots[1],
            vectors: vec![symmetric_block(1)],
        },
        AnalyticLevel {
            label: 5,
            energy: 0.0,
            vectors: vec![
                basis_vec(&[(0.5, duuu), (0.5, uduu), (-0.5, uudu), (-0.5, uuud)]),
                basis_vec(&[(0.5, duuu), (-0.5, uduu), (-0.5, uudu), (0.5, uuud)]),
                basis_vec(&[(0.5, uddd), (0.5, dudd), (-0.5, ddud), (-0.5, dddu)]),
                basis_vec(&[(0.5, uddd), (-0.5, dudd), (-0.5, ddud), (0.5, dddu)]),
            ],
        },
        AnalyticLevel {
            label: 6,
            energy: j * (1.0 - delta) / 2.0,
            vectors: vec![basis_vec(&[(s, duud), (-s, uddu)])],
        },
        AnalyticLevel {
            label: 7,
            energy: j * (1.0 + delta) / 2.0,
            vectors: vec![basis_vec(&[(1.0, 0)]), basis_vec(&[(1.0, 15)])],
        },
        AnalyticLevel {
            label: 8,
            energy: j,
            vectors: vec![
                basis_vec(&[(0.5, duuu), (0.5, uduu), (0.5, uudu), (0.5, uuud)]),
                basis_vec(&[(0.5, uddd), (0.5, dudd), (0.5, ddud), (0.5, dddu)]),
            ],
        },
        AnalyticLevel {
            label: 9,
            energy: j * roots[2],
            vectors: vec![symmetric_block(2)],
        },
    ];

    Ok(AnalyticL2 {
        delta,
        exchange: j,
        roots,
        coefficients,
        levels,
    })
}

impl AnalyticL2 {
    /// All sixteen eigenvalues with multiplicity, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self
            .levels
            .iter()
            .flat_map(|lvl| std::iter::repeat_n(lvl.energy, lvl.degeneracy()))
            .collect();
        out.sort_by(f64::total_cmp);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ladder::{build_hamiltonian, LadderSpec};

    #[test]
    fn sixteen_levels_with_stated_degeneracies() {
        let sol = analytic_spectrum_l2(0.5, 1.0).unwrap();
        assert_eq!(sol.eigenvalues().len(), 16);
        let degs: Vec<usize> = sol.levels.iter().map(|l| l.degeneracy()).collect();
        assert_eq!(degs, vec![1, 2, 1, 1, 1, 4, 1, 2, 2, 1]);
    }

    #[test]
    fn isotropic_coefficients() {
        let sol = analytic_spectrum_l2(1.0, 1.0).unwrap();
        let s3 = 1.0 / 3.0_f64.sqrt();
        let [a0, b0, c0] = sol.coefficients[0];
        assert!((a0 - s3).abs() < 1e-12);
        assert!((b0 + s3 / 2.0).abs() < 1e-12);
        assert!((c0 + s3 / 2.0).abs() < 1e-12);
        // the degenerate-limit direction: a₁ = 0, b₁ = −c₁ = 1/2
        let [a1, b1, c1] = sol.coefficients[1];
        assert_eq!(a1, 0.0);
        assert!((b1 - 0.5).abs() < 1e-12);
        assert!((c1 + 0.5).abs() < 1e-12);
        let s6 = 1.0 / 6.0_f64.sqrt();
        let [a2, b2, c2] = sol.coefficients[2];
        assert!((a2 - s6).abs() < 1e-12);
        assert!((b2 - s6).abs() < 1e-12);
        assert!((c2 - s6).abs() < 1e-12);
    }

    #[test]
    fn coefficient_relations_hold() {
        for delta in [0.2, 0.5, 0.77] {
            let sol = analytic_spectrum_l2(delta, 1.0).unwrap();
            let x = (1.0 - delta) / 2.0;
            for f in 0..3 {
                let [a, b, c] = sol.coefficients[f];
                let eta = sol.roots[f];
                assert!((b - a / (eta + x)).abs() < 1e-12);
                assert!((c - a / (eta - x)).abs() < 1e-12);
                let norm = 2.0 * (a * a + b * b + c * c);
                assert!((norm - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn eigenvalues_match_dense_diagonalization() {
        // independent oracle: dense numeric spectrum of the assembled H
        for delta in [0.2, 0.5, 1.0] {
            let sol = analytic_spectrum_l2(delta, 1.0).unwrap();
            let spec = LadderSpec::new(2, 1.0, delta).unwrap();
            let h = build_hamiltonian(&spec).unwrap();
            let mut numeric: Vec<f64> = h
                .dense()
                .symmetric_eigen()
                .eigenvalues
                .iter()
                .cloned()
                .collect();
            numeric.sort_by(f64::total_cmp);
            let analytic = sol.eigenvalues();
            for (a, n) in analytic.iter().zip(&numeric) {
                assert!((a - n).abs() < 1e-10, "Δ={delta}: {a} vs {n}");
            }
        }
    }

    #[test]
    fn vectors_are_normalized_eigenvectors_of_numeric_h() {
        for delta in [0.2, 0.5, 1.0] {
            let sol = analytic_spectrum_l2(delta, 1.3).unwrap();
            let spec = LadderSpec::new(2, 1.3, delta).unwrap();
            let h = build_hamiltonian(&spec).unwrap();
            for lvl in &sol.levels {
                for v in &lvl.vectors {
                    assert!(
                        (v.norm() - 1.0).abs() < 1e-12,
                        "Δ={delta} level {}",
                        lvl.label
                    );
                    let hv = h.apply(v.as_slice());
                    let mut residual = 0.0_f64;
                    for (i, &x) in hv.iter().enumerate() {
                        residual += (x - lvl.energy * v[i]).powi(2);
                    }
                    assert!(
                        residual.sqrt() < 1e-10,
                        "Δ={delta} level {}: residual {}",
                        lvl.label,
                        residual.sqrt()
                    );
                }
            }
        }
    }

    #[test]
    fn ket_permutation_places_arrows_correctly() {
        // |↑↓↑↓⟩ in presentation order is s₁₁=↑, s₁₂=↓, s₂₂=↑, s₂₁=↓,
        // i.e. canonical bits 0 and 3 set.
        assert_eq!(ket([U, D, U, D]), 0b1001);
        assert_eq!(ket([D, U, D, U]), 0b0110);
        assert_eq!(ket([U, U, U, U]), 0b1111);
    }
}
