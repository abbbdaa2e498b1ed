//! Two-qubit gate synthesis from the effective XXZ interaction, and the
//! fluctuation error model.
//!
//! Conventions: τ = σ/2 throughout, so a rotation is R^α(θ) = exp(−iθσ^α/2);
//! the two-qubit basis is |q_A q_B⟩ ordered |00⟩,|01⟩,|10⟩,|11⟩ with qubit A
//! as the first tensor factor; ħ = 1.
//!
//! The controlled phase flip is assembled as
//!
//!   U_CPF = e^{i(2π/3) n⃗₂·τ⃗_A} · e^{i(2π/3) n⃗₁·τ⃗_B} ·
//!           U(π/2) · R_A^y(−π) · U(π/2) · R_A^x(π/2) · R_B^x(π/2)
//!
//! with n⃗₁ = (1,−1,1)/√3, n⃗₂ = (1,1,−1)/√3 and U(π/2) the effective-coupling
//! evolution with xy phase ∫J^x dt = π/2. The echo R_A^y(−π) between the two
//! U(π/2) pulses cancels the XX and ZZ exponents, so the result is
//! diag(1,1,1,−1) up to a global phase for every anisotropy, and
//! U_CNOT = R_B^y(π/2)·U_CPF·R_B^y(π/2)† is the control-A CNOT.

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;

use crate::effective::{compute_coupling, Backend};
use crate::error::{Error, Result};
use crate::hilbert::NodeLabel;
use crate::ladder::{apply_fluctuations, build_hamiltonian, LadderSpec};

type C = Complex64;

/// Which computational qubit an operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QubitId {
    A,
    B,
}

/// Rotation axis: a named Cartesian axis or an explicit unit vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Axis3 {
    X,
    Y,
    Z,
    Unit([f64; 3]),
}

impl Axis3 {
    pub fn unit(self) -> Result<[f64; 3]> {
        match self {
            Axis3::X => Ok([1.0, 0.0, 0.0]),
            Axis3::Y => Ok([0.0, 1.0, 0.0]),
            Axis3::Z => Ok([0.0, 0.0, 1.0]),
            Axis3::Unit(v) => {
                let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
                if (norm - 1.0).abs() > 1e-12 {
                    return Err(Error::domain(format!(
                        "rotation axis {v:?} has norm {norm}, expected a unit vector"
                    )));
                }
                Ok(v)
            }
        }
    }
}

/// A 4×4 unitary on the two computational qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitUnitary {
    m: Matrix4<C>,
}

const UNITARITY_TOL: f64 = 1e-12;

impl TwoQubitUnitary {
    pub fn identity() -> Self {
        TwoQubitUnitary {
            m: Matrix4::identity(),
        }
    }

    /// Wrap a matrix, verifying U†U = 1 to 1e-12.
    pub fn from_matrix(m: Matrix4<C>) -> Result<Self> {
        let u = TwoQubitUnitary { m };
        let err = u.unitarity_error();
        if err > UNITARITY_TOL {
            return Err(Error::domain(format!(
                "matrix is not unitary: ‖U†U − 1‖ = {err:.3e}"
            )));
        }
        Ok(u)
    }

    pub fn matrix(&self) -> &Matrix4<C> {
        &self.m
    }

    /// ‖U†U − 1‖₂.
    pub fn unitarity_error(&self) -> f64 {
        let g = self.m.adjoint() * self.m - Matrix4::identity();
        spectral_norm(&g)
    }

    /// self ∘ rhs (apply `rhs` first).
    pub fn compose(&self, rhs: &TwoQubitUnitary) -> TwoQubitUnitary {
        TwoQubitUnitary { m: self.m * rhs.m }
    }

    pub fn dagger(&self) -> TwoQubitUnitary {
        TwoQubitUnitary {
            m: self.m.adjoint(),
        }
    }

    /// Spectral-norm distance ‖U − V‖₂.
    pub fn distance(&self, other: &TwoQubitUnitary) -> f64 {
        spectral_norm(&(self.m - other.m))
    }

    /// min over φ of ‖U − e^{iφ}V‖₂, the physically meaningful gate
    /// discrepancy. Coarse scan plus golden-section refinement.
    pub fn distance_up_to_phase(&self, other: &TwoQubitUnitary) -> f64 {
        let g = |phi: f64| spectral_norm(&(self.m - scale(&other.m, C::from_polar(1.0, phi))));
        let samples = 256;
        let mut best_phi = 0.0;
        let mut best = f64::INFINITY;
        for i in 0..samples {
            let phi = 2.0 * std::f64::consts::PI * i as f64 / samples as f64;
            let d = g(phi);
            if d < best {
                best = d;
                best_phi = phi;
            }
        }
        let step = 2.0 * std::f64::consts::PI / samples as f64;
        let (mut lo, mut hi) = (best_phi - step, best_phi + step);
        let inv_phi = (5.0_f64.sqrt() - 1.0) / 2.0;
        let mut x1 = hi - inv_phi * (hi - lo);
        let mut x2 = lo + inv_phi * (hi - lo);
        let mut f1 = g(x1);
        let mut f2 = g(x2);
        for _ in 0..200 {
            if hi - lo < 1e-13 {
                break;
            }
            if f1 <= f2 {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - inv_phi * (hi - lo);
                f1 = g(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + inv_phi * (hi - lo);
                f2 = g(x2);
            }
        }
        best.min(f1).min(f2)
    }
}

fn scale(m: &Matrix4<C>, c: C) -> Matrix4<C> {
    m.map(|x| c * x)
}

/// Largest singular value of a 4×4 complex matrix.
fn spectral_norm(m: &Matrix4<C>) -> f64 {
    let g = m.adjoint() * m;
    // power iteration on the Hermitian PSD Gram matrix; deterministic start
    let mut v = nalgebra::Vector4::new(
        C::new(1.0, 0.0),
        C::new(0.7, 0.1),
        C::new(-0.3, 0.4),
        C::new(0.2, -0.6),
    );
    let mut lambda = 0.0_f64;
    for _ in 0..200 {
        let w = g * v;
        let norm = w.norm();
        if norm == 0.0 {
            return 0.0;
        }
        let next = w / C::new(norm, 0.0);
        let new_lambda = (next.adjoint() * g * next)[(0, 0)].re;
        let done = (new_lambda - lambda).abs() <= 1e-15 * new_lambda.max(1.0);
        v = next;
        lambda = new_lambda;
        if done {
            break;
        }
    }
    lambda.max(0.0).sqrt()
}

fn single_qubit_matrix(axis: [f64; 3], theta: f64) -> Matrix2<C> {
    let (s, c) = ((theta / 2.0).sin(), (theta / 2.0).cos());
    let n_dot_sigma = Matrix2::new(
        C::new(axis[2], 0.0),
        C::new(axis[0], -axis[1]),
        C::new(axis[0], axis[1]),
        C::new(-axis[2], 0.0),
    );
    Matrix2::identity() * C::new(c, 0.0) - n_dot_sigma * C::new(0.0, s)
}

fn embed(qubit: QubitId, u: Matrix2<C>) -> Matrix4<C> {
    let id = Matrix2::identity();
    let (a, b) = match qubit {
        QubitId::A => (u, id),
        QubitId::B => (id, u),
    };
    let mut out = Matrix4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[(2 * i + k, 2 * j + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    out
}

/// R_q^α(θ) = exp(−iθ n⃗·σ⃗/2) on one qubit, identity on the other.
pub fn rotation(qubit: QubitId, axis: Axis3, theta: f64) -> Result<TwoQubitUnitary> {
    let n = axis.unit()?;
    Ok(TwoQubitUnitary {
        m: embed(qubit, single_qubit_matrix(n, theta)),
    })
}

/// The same rotation applied to both qubits.
pub fn collective_rotation(axis: Axis3, theta: f64) -> Result<TwoQubitUnitary> {
    Ok(rotation(QubitId::A, axis, theta)?.compose(&rotation(QubitId::B, axis, theta)?))
}

/// Gate time realizing the π/2 xy phase: t_c = π/(4 J_A J_B γ^x) (ħ = 1).
pub fn entangling_time(gamma_x: f64, j_a: f64, j_b: f64) -> Result<f64> {
    let jx = 2.0 * j_a * j_b * gamma_x;
    if jx == 0.0 {
        return Err(Error::domain(
            "γ^x·J_A·J_B = 0: no finite time accumulates the π/2 phase".to_string(),
        ));
    }
    if jx < 0.0 {
        return Err(Error::domain(format!(
            "J^x = {jx} < 0 admits no t ≥ 0 with the π/2 phase; pick J_A·J_B < 0 for antiferromagnetic pairs"
        )));
    }
    Ok(std::f64::consts::PI / (2.0 * jx))
}

/// Swap time t_s = π/J^α for the isotropic point.
pub fn swap_time(gamma: f64, j_a: f64, j_b: f64) -> Result<f64> {
    let j = 2.0 * j_a * j_b * gamma;
    if j <= 0.0 {
        return Err(Error::domain(format!(
            "J^α = {j} must be positive for a swap pulse; pick J_A·J_B < 0 for antiferromagnetic pairs"
        )));
    }
    Ok(std::f64::consts::PI / j)
}

/// exp(−i t [J^x(τ^xτ^x+τ^yτ^y) + J^z τ^zτ^z]) with J^α = 2 J_A J_B γ^α.
///
/// C_eff is excluded; it only contributes a global phase. Closed form in the
/// invariant eigenbasis {|00⟩, |11⟩, (|01⟩±|10⟩)/√2}.
pub fn evolve_effective(
    gamma_x: f64,
    gamma_z: f64,
    j_a: f64,
    j_b: f64,
    t: f64,
) -> Result<TwoQubitUnitary> {
    if t < 0.0 {
        return Err(Error::domain(format!("evolution time {t} must be ≥ 0")));
    }
    let jx = 2.0 * j_a * j_b * gamma_x;
    let jz = 2.0 * j_a * j_b * gamma_z;
    let outer = C::from_polar(1.0, -jz * t / 4.0);
    let inner = C::from_polar(1.0, jz * t / 4.0);
    let (s, c) = ((jx * t / 2.0).sin(), (jx * t / 2.0).cos());
    let mut m = Matrix4::zeros();
    m[(0, 0)] = outer;
    m[(3, 3)] = outer;
    m[(1, 1)] = inner * C::new(c, 0.0);
    m[(2, 2)] = inner * C::new(c, 0.0);
    m[(1, 2)] = inner * C::new(0.0, -s);
    m[(2, 1)] = inner * C::new(0.0, -s);
    Ok(TwoQubitUnitary { m })
}

/// U(π/2): the effective evolution for t_c = π/(4 J_A J_B γ^x).
pub fn u_half_pi(gamma_x: f64, gamma_z: f64, j_a: f64, j_b: f64) -> Result<TwoQubitUnitary> {
    let t_c = entangling_time(gamma_x, j_a, j_b)?;
    evolve_effective(gamma_x, gamma_z, j_a, j_b, t_c)
}

const N1: Axis3 = Axis3::Unit([
    0.577_350_269_189_625_8,
    -0.577_350_269_189_625_8,
    0.577_350_269_189_625_8,
]);
const N2: Axis3 = Axis3::Unit([
    0.577_350_269_189_625_8,
    0.577_350_269_189_625_8,
    -0.577_350_269_189_625_8,
]);

/// The controlled phase flip diag(1,1,1,−1), up to a global phase, for any
/// anisotropy γ^z/γ^x.
pub fn cpf(gamma_x: f64, gamma_z: f64, j_a: f64, j_b: f64) -> Result<TwoQubitUnitary> {
    let u = u_half_pi(gamma_x, gamma_z, j_a, j_b)?;
    // e^{i(2π/3)n⃗·τ⃗} = rotation by −2π/3 about n⃗
    let rot_a = rotation(QubitId::A, N2, -2.0 * std::f64::consts::PI / 3.0)?;
    let rot_b = rotation(QubitId::B, N1, -2.0 * std::f64::consts::PI / 3.0)?;
    let echo = rotation(QubitId::A, Axis3::Y, -std::f64::consts::PI)?;
    let half_a = rotation(QubitId::A, Axis3::X, std::f64::consts::FRAC_PI_2)?;
    let half_b = rotation(QubitId::B, Axis3::X, std::f64::consts::FRAC_PI_2)?;
    Ok(rot_a
        .compose(&rot_b)
        .compose(&u)
        .compose(&echo)
        .compose(&u)
        .compose(&half_a)
        .compose(&half_b))
}

/// U_CNOT = R_B^y(π/2) · U_CPF · R_B^y(π/2)†, control A, target B.
pub fn cnot(gamma_x: f64, gamma_z: f64, j_a: f64, j_b: f64) -> Result<TwoQubitUnitary> {
    let u_cpf = cpf(gamma_x, gamma_z, j_a, j_b)?;
    let r = rotation(QubitId::B, Axis3::Y, std::f64::consts::FRAC_PI_2)?;
    Ok(r.compose(&u_cpf).compose(&r.dagger()))
}

/// The canonical CPF target diag(1,1,1,−1).
pub fn cpf_target() -> TwoQubitUnitary {
    let mut m = Matrix4::identity();
    m[(3, 3)] = C::new(-1.0, 0.0);
    TwoQubitUnitary { m }
}

/// The canonical CNOT (control A, target B).
pub fn cnot_target() -> TwoQubitUnitary {
    let mut m = Matrix4::zeros();
    m[(0, 0)] = C::new(1.0, 0.0);
    m[(1, 1)] = C::new(1.0, 0.0);
    m[(2, 3)] = C::new(1.0, 0.0);
    m[(3, 2)] = C::new(1.0, 0.0);
    TwoQubitUnitary { m }
}

/// SWAP on the two qubits.
pub fn swap_target() -> TwoQubitUnitary {
    let mut m = Matrix4::zeros();
    m[(0, 0)] = C::new(1.0, 0.0);
    m[(3, 3)] = C::new(1.0, 0.0);
    m[(1, 2)] = C::new(1.0, 0.0);
    m[(2, 1)] = C::new(1.0, 0.0);
    TwoQubitUnitary { m }
}

/// The fluctuation error bound n = max{√(2[1−cos(πδ_x/4)]), √(2[1−cos(πδ_z/4)])},
/// evaluated in the equivalent half-angle form 2|sin(πδ/8)| (no cancellation
/// at small δ).
pub fn error_formula(delta_x: f64, delta_z: f64) -> f64 {
    let term = |d: f64| 2.0 * (std::f64::consts::PI * d / 8.0).sin().abs();
    term(delta_x).max(term(delta_z))
}

/// One step of a pulse program.
#[derive(Debug, Clone, PartialEq)]
pub enum PulseStep {
    /// Local field of the given magnitude along `axis` for `duration`.
    FieldPulse {
        qubit: QubitId,
        axis: Axis3,
        magnitude: f64,
        duration: f64,
    },
    /// An ideal single-qubit rotation.
    Rotation {
        qubit: QubitId,
        axis: Axis3,
        angle: f64,
    },
    /// Effective two-qubit evolution for the given duration.
    EffectiveEvolution { duration: f64 },
}

/// An ordered pulse program.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PulseSchedule {
    pub steps: Vec<PulseStep>,
}

/// The pulse program realizing U_CPF, in application order (first step
/// applied first). The two entangling segments run for t_c each.
pub fn cpf_schedule(gamma_x: f64, j_a: f64, j_b: f64) -> Result<PulseSchedule> {
    let t_c = entangling_time(gamma_x, j_a, j_b)?;
    let third = 2.0 * std::f64::consts::PI / 3.0;
    Ok(PulseSchedule {
        steps: vec![
            PulseStep::Rotation {
                qubit: QubitId::B,
                axis: Axis3::X,
                angle: std::f64::consts::FRAC_PI_2,
            },
            PulseStep::Rotation {
                qubit: QubitId::A,
                axis: Axis3::X,
                angle: std::f64::consts::FRAC_PI_2,
            },
            PulseStep::EffectiveEvolution { duration: t_c },
            PulseStep::Rotation {
                qubit: QubitId::A,
                axis: Axis3::Y,
                angle: -std::f64::consts::PI,
            },
            PulseStep::EffectiveEvolution { duration: t_c },
            PulseStep::Rotation {
                qubit: QubitId::B,
                axis: N1,
                angle: -third,
            },
            PulseStep::Rotation {
                qubit: QubitId::A,
                axis: N2,
                angle: -third,
            },
        ],
    })
}

/// A realized single-qubit pulse: rotation angle, accumulated scalar phase,
/// and the schedule entry that produces it.
#[derive(Debug, Clone)]
pub struct SingleQubitPulse {
    /// θ = −b·duration.
    pub theta: f64,
    /// Φ = (ε₀ + (J_A²/4)Σ_α γ^α_{m,m})·duration.
    pub phase: f64,
    pub step: PulseStep,
}

/// Rotation angle and accumulated phase of a constant local-field pulse on
/// qubit A attached at node m. `gamma_self_m` carries (γ^x, γ^y, γ^z)_{m,m}.
pub fn single_qubit_pulse(
    b_axis: Axis3,
    b_magnitude: f64,
    duration: f64,
    j_a: f64,
    gamma_self_m: [f64; 3],
    epsilon0: f64,
) -> Result<SingleQubitPulse> {
    if duration < 0.0 {
        return Err(Error::domain(format!("duration {duration} must be ≥ 0")));
    }
    b_axis.unit()?;
    let theta = -b_magnitude * duration;
    let self_sum: f64 = gamma_self_m.iter().sum();
    let phase = (epsilon0 + j_a * j_a / 4.0 * self_sum) * duration;
    Ok(SingleQubitPulse {
        theta,
        phase,
        step: PulseStep::FieldPulse {
            qubit: QubitId::A,
            axis: b_axis,
            magnitude: b_magnitude,
            duration,
        },
    })
}

/// Gate error of U(π/2) under anisotropy fluctuations at the two nodes.
#[derive(Debug, Clone)]
pub struct GateErrorReport {
    pub delta_m: f64,
    pub delta_n: f64,
    /// δ_x = (γ^x(0,0) − γ^x(δ_m,δ_n)) / γ^x(0,0).
    pub delta_x: f64,
    /// δ_z = (γ^z(0,0) − γ^z(δ_m,δ_n)) / γ^x(0,0).
    pub delta_z: f64,
    /// Closed-form error bound from `error_formula`.
    pub n_formula: f64,
    /// Spectral-norm distance minimized over one global phase.
    pub n_direct: f64,
    /// The same distance without phase minimization.
    pub n_direct_raw: f64,
    /// Entangling time used for both evolutions (from unperturbed γ^x).
    pub t_c: f64,
    pub context: LadderSpec,
    pub m: NodeLabel,
    pub n: NodeLabel,
    pub j_a: f64,
    pub j_b: f64,
}

/// Evaluate the fluctuation error at one (δ_m, δ_n) point. Both evolutions
/// run for the unperturbed t_c with C_eff excluded.
#[allow(clippy::too_many_arguments)]
pub fn gate_error(
    spec: &LadderSpec,
    m: NodeLabel,
    n: NodeLabel,
    delta_m: f64,
    delta_n: f64,
    j_a: f64,
    j_b: f64,
    backend: Backend,
) -> Result<GateErrorReport> {
    let unperturbed = compute_coupling(spec, m, n, j_a, j_b, backend)?;
    gate_error_given_reference(spec, &unperturbed, delta_m, delta_n, backend)
}

/// As [`gate_error`], reusing a precomputed unperturbed coupling (the grid
/// sweep path).
pub fn gate_error_given_reference(
    spec: &LadderSpec,
    unperturbed: &crate::effective::EffectiveCoupling,
    delta_m: f64,
    delta_n: f64,
    backend: Backend,
) -> Result<GateErrorReport> {
    let (m, n) = (unperturbed.m, unperturbed.n);
    let (j_a, j_b) = (unperturbed.j_a, unperturbed.j_b);
    let perturbed_spec = apply_fluctuations(spec, m, delta_m, n, delta_n)?;
    let perturbed = compute_coupling(&perturbed_spec, m, n, j_a, j_b, backend)?;
    let gx0 = unperturbed.gamma_x;
    let delta_x = (gx0 - perturbed.gamma_x) / gx0;
    let delta_z = (unperturbed.gamma_z - perturbed.gamma_z) / gx0;
    let t_c = entangling_time(gx0, j_a, j_b)?;
    let u0 = evolve_effective(gx0, unperturbed.gamma_z, j_a, j_b, t_c)?;
    let up = evolve_effective(perturbed.gamma_x, perturbed.gamma_z, j_a, j_b, t_c)?;
    Ok(GateErrorReport {
        delta_m,
        delta_n,
        delta_x,
        delta_z,
        n_formula: error_formula(delta_x, delta_z),
        n_direct: up.distance_up_to_phase(&u0),
        n_direct_raw: up.distance(&u0),
        t_c,
        context: spec.clone(),
        m,
        n,
        j_a,
        j_b,
    })
}

/// Adiabatic-criterion report: the gate time times the bus gap must exceed
/// 2πħ for the bus to stay frozen.
#[derive(Debug, Clone)]
pub struct AdiabaticReport {
    /// t_s (Δ = 1) or t_c (Δ < 1), in ħ/J units.
    pub gate_time: f64,
    /// Computed bus gap ε₁ − ε₀.
    pub gap: f64,
    /// gate_time · gap / ħ with the computed gap.
    pub product: f64,
    /// The J/2 lower-bound product: gate_time · (J/2) / ħ = π·ratio/2-form.
    pub bound_product: f64,
    /// The scale J/(4 J_A J_B γ^x); the criterion passes when this exceeds 2.
    pub ratio: f64,
    pub pass: bool,
}

/// Check t_gate·(ε₁−ε₀) > 2πħ for the node pair, using the swap time at Δ = 1
/// and the entangling time otherwise.
pub fn adiabatic_check(
    spec: &LadderSpec,
    m: NodeLabel,
    n: NodeLabel,
    j_a: f64,
    j_b: f64,
    backend: Backend,
) -> Result<AdiabaticReport> {
    let coupling = compute_coupling(spec, m, n, j_a, j_b, backend)?;
    let h = build_hamiltonian(spec)?;
    let ground = crate::spectra::ground_and_gap(&h)?;
    let gate_time = if (spec.delta - 1.0).abs() < 1e-12 {
        swap_time(coupling.gamma_x, j_a, j_b)?
    } else {
        entangling_time(coupling.gamma_x, j_a, j_b)?
    };
    let product = gate_time * ground.gap;
    let bound_product = gate_time * spec.exchange / 2.0;
    let ratio = spec.exchange / (4.0 * j_a * j_b * coupling.gamma_x);
    let pass = bound_product > 2.0 * std::f64::consts::PI;
    Ok(AdiabaticReport {
        gate_time,
        gap: ground.gap,
        product,
        bound_product,
        ratio,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn approx(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() < tol
    }

    #[test]
    fn rotation_trivials() {
        let id = rotation(QubitId::A, Axis3::Z, 0.0).unwrap();
        assert!(id.distance(&TwoQubitUnitary::identity()) < 1e-15);

        // R^y(π/2)|0⟩ = (|0⟩+|1⟩)/√2 up to the phase convention
        let r = rotation(QubitId::B, Axis3::Y, std::f64::consts::FRAC_PI_2).unwrap();
        let v = r.matrix().column(0);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((v[0] - C::new(s, 0.0)).norm() < 1e-12);
        assert!((v[1] - C::new(s, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn rotation_inverse_on_tilted_axis() {
        let n = Axis3::Unit([
            0.577_350_269_189_625_8,
            -0.577_350_269_189_625_8,
            0.577_350_269_189_625_8,
        ]);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let theta = rng.gen_range(-6.0..6.0);
            let fwd = rotation(QubitId::A, n, theta).unwrap();
            let bwd = rotation(QubitId::A, n, -theta).unwrap();
            assert!(fwd.compose(&bwd).distance(&TwoQubitUnitary::identity()) < 1e-12);
        }
    }

    #[test]
    fn non_unit_axis_rejected() {
        assert!(rotation(QubitId::A, Axis3::Unit([1.0, 1.0, 0.0]), 1.0).is_err());
    }

    #[test]
    fn evolve_trivials_and_unitarity() {
        let u = evolve_effective(0.17, 0.05, 1.0, 1.0, 0.0).unwrap();
        assert!(u.distance(&TwoQubitUnitary::identity()) < 1e-15);
        let u = evolve_effective(0.17, 0.05, 0.8, 1.2, 3.7).unwrap();
        assert!(u.unitarity_error() < 1e-12);
        assert!(evolve_effective(0.1, 0.1, 1.0, 1.0, -1.0).is_err());
        assert!(entangling_time(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn isotropic_swap_with_phase() {
        // t_s = π/J^α turns the isotropic evolution into e^{−iπ/4}·SWAP
        let gamma = 1.0 / 6.0;
        let ts = swap_time(gamma, 1.0, 1.0).unwrap();
        let u = evolve_effective(gamma, gamma, 1.0, 1.0, ts).unwrap();
        let target = swap_target();
        let phased = Matrix4::from_fn(|i, j| {
            C::from_polar(1.0, -std::f64::consts::FRAC_PI_4) * target.matrix()[(i, j)]
        });
        assert!(spectral_norm(&(u.matrix() - phased)) < 1e-10);
        assert!(u.distance_up_to_phase(&target) < 1e-10);
    }

    #[test]
    fn echo_identity_cancels_anisotropy() {
        // U(π/2)·R_A^y(−π)·U(π/2) = R_A^y(−π)·exp(−iπ σ_A^y σ_B^y/4) for any γ^z
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let gx = 0.17;
            let gz = rng.gen_range(-0.3..0.3);
            let u = u_half_pi(gx, gz, 1.0, 1.0).unwrap();
            let echo = rotation(QubitId::A, Axis3::Y, -std::f64::consts::PI).unwrap();
            let lhs = u.compose(&echo).compose(&u);
            // exp(−iπ YY/4) = cos(π/4) − i sin(π/4)·YY
            let mut yy = Matrix4::zeros();
            yy[(0, 3)] = C::new(-1.0, 0.0);
            yy[(3, 0)] = C::new(-1.0, 0.0);
            yy[(1, 2)] = C::new(1.0, 0.0);
            yy[(2, 1)] = C::new(1.0, 0.0);
            let c = std::f64::consts::FRAC_PI_4;
            let exp_yy = Matrix4::identity() * C::new(c.cos(), 0.0) - yy * C::new(0.0, c.sin());
            let rhs = echo.compose(&TwoQubitUnitary::from_matrix(exp_yy).unwrap());
            assert!(lhs.distance_up_to_phase(&rhs) < 1e-10, "γ^z = {gz}");
        }
    }

    #[test]
    fn cpf_is_controlled_phase_flip() {
        for (gx, gz) in [(1.0 / 6.0, 1.0 / 6.0), (0.2, 0.05), (0.13, 0.021)] {
            let u = cpf(gx, gz, 1.0, 1.0).unwrap();
            assert!(u.unitarity_error() < 1e-12);
            let d = u.distance_up_to_phase(&cpf_target());
            assert!(d < 1e-8, "γ=({gx},{gz}): distance {d:.2e}");
            // involution up to phase
            let sq = u.compose(&u);
            assert!(sq.distance_up_to_phase(&TwoQubitUnitary::identity()) < 1e-8);
        }
    }

    #[test]
    fn cnot_matches_canonical_and_squares_to_identity() {
        let (gx, gz) = (0.15, 0.04);
        let u = cnot(gx, gz, 1.0, 1.0).unwrap();
        let d = u.distance_up_to_phase(&cnot_target());
        assert!(d < 1e-8, "distance {d:.2e}");
        let sq = u.compose(&u);
        assert!(sq.distance_up_to_phase(&TwoQubitUnitary::identity()) < 1e-8);
    }

    #[test]
    fn cnot_basis_action_shares_one_phase() {
        let (gx, gz) = (0.11, 0.033);
        let u = cnot(gx, gz, 1.0, 1.0).unwrap();
        let m = u.matrix();
        // columns map |00⟩→|00⟩, |01⟩→|01⟩, |10⟩→|11⟩, |11⟩→|10⟩ up to one
        // shared phase
        let phase = m[(0, 0)] / m[(0, 0)].norm();
        let targets = [(0usize, 0usize), (1, 1), (3, 2), (2, 3)];
        for &(row, col) in &targets {
            assert!((m[(row, col)] - phase).norm() < 1e-8, "entry ({row},{col})");
        }
        // and nothing else
        let mut total = 0.0;
        for col in 0..4 {
            for row in 0..4 {
                if !targets.contains(&(row, col)) {
                    total += m[(row, col)].norm_sqr();
                }
            }
        }
        assert!(total.sqrt() < 1e-8);
    }

    #[test]
    fn error_formula_properties() {
        assert_eq!(error_formula(0.0, 0.0), 0.0);
        for d in [1e-3, 0.02, 0.4] {
            // literal difference-of-cosines form (cancellation-limited near 0)
            let literal = (2.0 * (1.0 - (std::f64::consts::PI * d / 4.0).cos())).sqrt();
            assert!(approx(error_formula(d, 0.0), literal, 1e-12));
            assert!(approx(error_formula(0.0, d), literal, 1e-12));
            assert!(approx(
                error_formula(d, d / 3.0),
                error_formula(-d, -d / 3.0),
                1e-14
            ));
        }
    }

    #[test]
    fn distance_up_to_phase_is_a_pseudometric() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let mut random_unitary = || {
            let axes = [Axis3::X, Axis3::Y, Axis3::Z];
            let mut u = TwoQubitUnitary::identity();
            for _ in 0..4 {
                let q = if rng.gen_bool(0.5) {
                    QubitId::A
                } else {
                    QubitId::B
                };
                let ax = axes[rng.gen_range(0..3)];
                u = u.compose(&rotation(q, ax, rng.gen_range(-3.0..3.0)).unwrap());
                u = u.compose(
                    &evolve_effective(
                        0.2,
                        rng.gen_range(-0.2..0.2),
                        1.0,
                        1.0,
                        rng.gen_range(0.0..3.0),
                    )
                    .unwrap(),
                );
            }
            u
        };
        let a = random_unitary();
        let b = random_unitary();
        let c = random_unitary();
        let dab = a.distance_up_to_phase(&b);
        let dba = b.distance_up_to_phase(&a);
        assert!(approx(dab, dba, 1e-9), "symmetry: {dab} vs {dba}");
        // zero on phase-equivalent pairs
        let phased = TwoQubitUnitary::from_matrix(Matrix4::from_fn(|i, j| {
            C::from_polar(1.0, 1.234) * a.matrix()[(i, j)]
        }))
        .unwrap();
        assert!(a.distance_up_to_phase(&phased) < 1e-10);
        // triangle inequality
        let dac = a.distance_up_to_phase(&c);
        let dbc = b.distance_up_to_phase(&c);
        assert!(dac <= dab + dbc + 1e-9);
    }

    #[test]
    fn cnot_across_the_anisotropy_grid() {
        use crate::effective::{compute_coupling, Backend};
        for delta in [0.2, 0.5, 0.8, 1.0] {
            let spec = LadderSpec::new(2, 1.0, delta).unwrap();
            let c = compute_coupling(
                &spec,
                crate::hilbert::NodeLabel(1),
                crate::hilbert::NodeLabel(2),
                1.0,
                1.0,
                Backend::SpectrumSum,
            )
            .unwrap();
            let u = cnot(c.gamma_x, c.gamma_z, 1.0, 1.0).unwrap();
            let d = u.distance_up_to_phase(&cnot_target());
            assert!(d <= 1e-8, "Δ={delta}: CNOT distance {d:.2e}");
        }
    }

    #[test]
    fn gate_error_zero_fluctuation() {
        let spec = LadderSpec::new(2, 1.0, 0.5).unwrap();
        let report = gate_error(
            &spec,
            NodeLabel(1),
            NodeLabel(2),
            0.0,
            0.0,
            1.0,
            1.0,
            Backend::SpectrumSum,
        )
        .unwrap();
        assert!(report.n_formula < 1e-14);
        assert!(report.n_direct < 1e-12);
        assert!(report.n_direct_raw < 1e-12);
    }

    #[test]
    fn gate_error_bounded_by_two() {
        let spec = LadderSpec::new(2, 1.0, 0.5).unwrap();
        let report = gate_error(
            &spec,
            NodeLabel(1),
            NodeLabel(2),
            0.05,
            0.05,
            1.0,
            1.0,
            Backend::SpectrumSum,
        )
        .unwrap();
        assert!(report.n_direct <= 2.0 + 1e-12);
        assert!(report.n_direct_raw <= 2.0 + 1e-12);
        assert!(report.n_direct <= report.n_direct_raw + 1e-12);
    }

    #[test]
    fn adiabatic_weak_coupling_passes_strong_fails() {
        let spec = LadderSpec::new(2, 1.0, 1.0).unwrap();
        let weak = adiabatic_check(
            &spec,
            NodeLabel(1),
            NodeLabel(2),
            0.1,
            0.1,
            Backend::SpectrumSum,
        )
        .unwrap();
        assert!(approx(weak.ratio, 150.0, 1e-6), "ratio {}", weak.ratio);
        assert!(weak.pass);
        assert!(weak.product > 2.0 * std::f64::consts::PI);

        let strong = adiabatic_check(
            &spec,
            NodeLabel(1),
            NodeLabel(2),
            1.0,
            1.0,
            Backend::SpectrumSum,
        )
        .unwrap();
        assert!(approx(strong.ratio, 1.5, 1e-9));
        assert!(!strong.pass);
        // t_s scales as 1/J_A² at J_A = J_B
        assert!(approx(weak.gate_time / strong.gate_time, 100.0, 1e-6));
    }

    #[test]
    fn cpf_schedule_replays_to_the_gate() {
        let (gx, gz) = (0.2, 0.05);
        let schedule = cpf_schedule(gx, 1.0, 1.0).unwrap();
        let mut u = TwoQubitUnitary::identity();
        for step in &schedule.steps {
            let op = match *step {
                PulseStep::Rotation { qubit, axis, angle } => rotation(qubit, axis, angle).unwrap(),
                PulseStep::EffectiveEvolution { duration } => {
                    evolve_effective(gx, gz, 1.0, 1.0, duration).unwrap()
                }
                PulseStep::FieldPulse { .. } => unreachable!("no field pulses in the CPF program"),
            };
            u = op.compose(&u);
        }
        let direct = cpf(gx, gz, 1.0, 1.0).unwrap();
        assert!(u.distance(&direct) < 1e-12);
    }

    #[test]
    fn direct_error_is_continuous_along_a_row() {
        use crate::effective::{compute_coupling, Backend};
        let spec = LadderSpec::new(2, 1.0, 0.5).unwrap();
        let reference = compute_coupling(
            &spec,
            crate::hilbert::NodeLabel(1),
            crate::hilbert::NodeLabel(2),
            1.0,
            1.0,
            Backend::SpectrumSum,
        )
        .unwrap();
        let dm = 0.004;
        let mut values = Vec::new();
        for i in 0..=16 {
            let dn = -0.004 + 0.0005 * i as f64;
            let r = gate_error_given_reference(&spec, &reference, dm, dn, Backend::SpectrumSum)
                .unwrap();
            values.push(r.n_direct);
        }
        let diffs: Vec<f64> = values.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
        let floor = 1e-9;
        for w in diffs.windows(2) {
            assert!(
                w[1] <= 10.0 * w[0] + floor,
                "jump {} after step {}",
                w[1],
                w[0]
            );
            assert!(
                w[0] <= 10.0 * w[1] + floor,
                "jump {} before step {}",
                w[0],
                w[1]
            );
        }
    }

    #[test]
    fn adiabatic_uses_entangling_time_away_from_isotropy() {
        use crate::effective::{compute_coupling, Backend};
        let spec = LadderSpec::new(2, 1.0, 0.5).unwrap();
        let report = adiabatic_check(
            &spec,
            crate::hilbert::NodeLabel(1),
            crate::hilbert::NodeLabel(2),
            0.1,
            0.1,
            Backend::SpectrumSum,
        )
        .unwrap();
        let c = compute_coupling(
            &spec,
            crate::hilbert::NodeLabel(1),
            crate::hilbert::NodeLabel(2),
            0.1,
            0.1,
            Backend::SpectrumSum,
        )
        .unwrap();
        let tc = entangling_time(c.gamma_x, 0.1, 0.1).unwrap();
        assert!((report.gate_time - tc).abs() < 1e-12, "t_c form for Δ < 1");
        assert!(report.pass);
    }

    #[test]
    fn negative_exchange_has_no_pulse_time() {
        assert!(entangling_time(-0.125, 1.0, 1.0).is_err());
        assert!(entangling_time(-0.125, 1.0, -1.0).is_ok());
        assert!(swap_time(-0.125, 1.0, 1.0).is_err());
    }

    #[test]
    fn single_qubit_pulse_arithmetic() {
        let p = single_qubit_pulse(Axis3::Z, 0.0, 3.0, 0.01, [-0.1, -0.1, -0.1], -2.0).unwrap();
        assert_eq!(p.theta, 0.0);
        assert!(approx(
            p.phase,
            (-2.0 + 0.01 * 0.01 / 4.0 * -0.3) * 3.0,
            1e-15
        ));

        let up =
            single_qubit_pulse(Axis3::X, -0.5, std::f64::consts::PI, 0.01, [0.0; 3], 0.0).unwrap();
        let down =
            single_qubit_pulse(Axis3::X, 0.5, std::f64::consts::PI, 0.01, [0.0; 3], 0.0).unwrap();
        assert!(approx(up.theta + down.theta, 0.0, 1e-15));
        assert!(single_qubit_pulse(Axis3::X, 1.0, -1.0, 0.0, [0.0; 3], 0.0).is_err());
    }
}
