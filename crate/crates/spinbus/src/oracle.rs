//! Brute-force ground truth: exact diagonalization and exact time evolution
//! of the full bus + qubit system, used to validate the effective theory.
//!
//! The full Hamiltonian is H₀ plus one exchange term J_q τ⃗_q·s⃗_node per
//! attached qubit and an optional local field entering as −b⃗·τ⃗_q (the sign
//! that realizes a rotation by θ = −b·t). Tensor ordering: bus bits
//! 0..2L−1 first, then qubit A, then qubit B, so a full index is
//! bus | a << 2L | b << (2L+1).

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;

use crate::effective::{compute_coupling, effective_hamiltonian, Backend};
use crate::error::{Error, Result};
use crate::gates::QubitId;
use crate::hilbert::NodeLabel;
use crate::ladder::{build_hamiltonian, LadderSpec};
use crate::spectra::ground_and_gap;

type C = Complex64;

/// Dense budget for the full system, 2^14 amplitudes.
pub const DENSE_BUDGET: usize = 1 << 14;

/// Warning threshold on |J_q|/J beyond which second-order perturbation
/// theory becomes doubtful.
pub const WEAK_COUPLING_WARN: f64 = 0.2;

/// One computational qubit attached to the bus.
#[derive(Debug, Clone)]
pub struct Attachment {
    pub qubit: QubitId,
    pub node: NodeLabel,
    /// Exchange coupling J_A or J_B, energy units.
    pub coupling: f64,
    /// Optional local field b⃗ (energy units); enters as −b⃗·τ⃗.
    pub field: Option<[f64; 3]>,
}

/// Matrix-free Hamiltonian of the bus plus attached qubits.
#[derive(Debug, Clone)]
pub struct FullHamiltonian {
    spec: LadderSpec,
    attachments: Vec<Attachment>,
    bus_bits: usize,
    dim: usize,
    pub warnings: Vec<String>,
}

/// Assemble the full Hamiltonian. Attachments are ordered A then B.
pub fn full_hamiltonian(spec: &LadderSpec, attachments: &[Attachment]) -> Result<FullHamiltonian> {
    spec.validate()?;
    if attachments.len() > 2 {
        return Err(Error::domain(format!(
            "{} attachments requested; at most two qubits are supported",
            attachments.len()
        )));
    }
    let mut ordered = attachments.to_vec();
    ordered.sort_by_key(|a| a.qubit as u8);
    for pair in ordered.windows(2) {
        if pair[0].qubit == pair[1].qubit {
            return Err(Error::domain(format!(
                "qubit {:?} attached twice",
                pair[0].qubit
            )));
        }
    }
    let space = spec.space();
    let mut warnings = Vec::new();
    for a in &ordered {
        space.node_to_site(a.node)?;
        let ratio = a.coupling.abs() / spec.exchange;
        if ratio > WEAK_COUPLING_WARN {
            warnings.push(format!(
                "|J_{:?}|/J = {ratio:.3} exceeds the weak-coupling threshold {WEAK_COUPLING_WARN}",
                a.qubit
            ));
        }
    }
    let bus_bits = space.sites();
    let dim = space.dim() << ordered.len();
    if dim > DENSE_BUDGET {
        return Err(Error::Budget(format!(
            "full-system dimension {dim} exceeds the dense budget {DENSE_BUDGET}"
        )));
    }
    Ok(FullHamiltonian {
        spec: spec.clone(),
        attachments: ordered,
        bus_bits,
        dim,
        warnings,
    })
}

impl FullHamiltonian {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn spec(&self) -> &LadderSpec {
        &self.spec
    }

    /// True when total S^z is conserved (all fields z-aligned or absent).
    pub fn conserves_sz(&self) -> bool {
        self.attachments
            .iter()
            .all(|a| a.field.is_none_or(|b| b[0] == 0.0 && b[1] == 0.0))
    }

    /// H v, matrix-free.
    pub fn apply(&self, v: &[C]) -> Vec<C> {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let mut out = vec![C::ZERO; self.dim];
        let j = self.spec.exchange;
        let space = self.spec.space();

        // bus bonds (replicated over qubit blocks)
        let mut bonds: Vec<(usize, usize, f64, f64)> = Vec::new();
        for chain in [1u8, 2u8] {
            for rung in 1..self.spec.rungs {
                let a = space
                    .site_bit(crate::hilbert::SiteIndex::new(chain, rung))
                    .expect("validated");
                let b = space
                    .site_bit(crate::hilbert::SiteIndex::new(chain, rung + 1))
                    .expect("validated");
                let zz = self
                    .spec
                    .bond_delta(crate::ladder::ChainBond::new(chain, rung));
                bonds.push((a, b, j, zz));
            }
        }
        for rung in 1..=self.spec.rungs {
            let a = space
                .site_bit(crate::hilbert::SiteIndex::new(1, rung))
                .expect("validated");
            let b = space
                .site_bit(crate::hilbert::SiteIndex::new(2, rung))
                .expect("validated");
            bonds.push((a, b, j, 1.0));
        }
        // qubit-bus exchange bonds (isotropic Heisenberg)
        for (qi, att) in self.attachments.iter().enumerate() {
            let node_bit = space.node_bit(att.node).expect("validated");
            bonds.push((self.bus_bits + qi, node_bit, att.coupling, 1.0));
        }

        for &(a, b, jc, zz) in &bonds {
            let ma = 1usize << a;
            let mb = 1usize << b;
            let diag = 0.25 * jc * zz;
            let hop = 0.5 * jc;
            for (s, &amp) in v.iter().enumerate() {
                let same = (s & ma != 0) == (s & mb != 0);
                if same {
                    out[s] += diag * amp;
                } else {
                    out[s] -= diag * amp;
                    out[s ^ (ma | mb)] += hop * amp;
                }
            }
        }

        // local fields: −b⃗·τ⃗ on each attached qubit
        for (qi, att) in self.attachments.iter().enumerate() {
            let Some(bfield) = att.field else { continue };
            let mask = 1usize << (self.bus_bits + qi);
            let [bx, by, bz] = bfield;
            for (s, &amp) in v.iter().enumerate() {
                let up = s & mask != 0;
                if bz != 0.0 {
                    out[s] -= bz * if up { 0.5 } else { -0.5 } * amp;
                }
                if bx != 0.0 {
                    out[s ^ mask] -= bx * 0.5 * amp;
                }
                if by != 0.0 {
                    // τ^y|↑⟩ = (i/2)|↓⟩, τ^y|↓⟩ = (−i/2)|↑⟩
                    let c = if up {
                        C::new(0.0, 0.5)
                    } else {
                        C::new(0.0, -0.5)
                    };
                    out[s ^ mask] -= by * c * amp;
                }
            }
        }
        out
    }

    /// Dense Hermitian matrix of the full system.
    pub fn dense(&self) -> DMatrix<C> {
        let n = self.dim;
        let mut m = DMatrix::zeros(n, n);
        let mut basis = vec![C::ZERO; n];
        for col in 0..n {
            basis[col] = C::new(1.0, 0.0);
            let w = self.apply(&basis);
            basis[col] = C::ZERO;
            for (row, &x) in w.iter().enumerate() {
                m[(row, col)] = x;
            }
        }
        m
    }

    /// Build |bus⟩ ⊗ |qubits⟩ with per-qubit amplitudes given in the gate
    /// convention (index 0 = spin up). `qubit_states[k]` holds the
    /// (up, down) amplitudes of the k-th attached qubit.
    pub fn product_state(&self, bus: &[f64], qubit_states: &[[C; 2]]) -> Result<Vec<C>> {
        let bus_dim = 1usize << self.bus_bits;
        if bus.len() != bus_dim || qubit_states.len() != self.attachments.len() {
            return Err(Error::domain(
                "product_state: component dimensions do not match the system".to_string(),
            ));
        }
        let mut out = vec![C::ZERO; self.dim];
        for q in 0..(1usize << qubit_states.len()) {
            let mut amp = C::new(1.0, 0.0);
            for (k, qs) in qubit_states.iter().enumerate() {
                let bit_up = (q >> k) & 1 == 1;
                // gate convention: index 0 = up
                amp *= if bit_up { qs[0] } else { qs[1] };
            }
            if amp == C::ZERO {
                continue;
            }
            for (b, &x) in bus.iter().enumerate() {
                out[b | (q << self.bus_bits)] += amp * x;
            }
        }
        Ok(out)
    }

    /// Reduced 2×2 density matrix of one attached qubit, in the gate
    /// convention (row/column 0 = spin up).
    pub fn reduced_qubit_density(&self, state: &[C], qubit: QubitId) -> Result<Matrix2<C>> {
        let qi = self
            .attachments
            .iter()
            .position(|a| a.qubit == qubit)
            .ok_or_else(|| Error::domain(format!("qubit {qubit:?} is not attached")))?;
        let mask = 1usize << (self.bus_bits + qi);
        let mut rho = Matrix2::zeros();
        for (s, &amp) in state.iter().enumerate() {
            let partner = s ^ mask;
            let up = s & mask != 0;
            // ρ[σ,σ'] = Σ_rest ⟨σ|ψ⟩⟨ψ|σ'⟩; gate row index: up → 0
            let row = if up { 0 } else { 1 };
            rho[(row, row)] += amp * amp.conj();
            if up {
                rho[(0, 1)] += amp * state[partner].conj();
            } else {
                rho[(1, 0)] += amp * state[partner].conj();
            }
        }
        Ok(rho)
    }
}

/// Exact propagator via one dense Hermitian eigendecomposition.
pub struct ExactEvolver {
    eigenvalues: Vec<f64>,
    vectors: DMatrix<C>,
}

impl ExactEvolver {
    pub fn new(h: &FullHamiltonian) -> Result<Self> {
        let dense = h.dense();
        let herm_err = (&dense - dense.adjoint()).norm();
        if herm_err > 1e-10 {
            return Err(Error::domain(format!(
                "assembled Hamiltonian is not Hermitian: ‖H − H†‖ = {herm_err:.3e}"
            )));
        }
        let eig = dense.symmetric_eigen();
        Ok(ExactEvolver {
            eigenvalues: eig.eigenvalues.iter().cloned().collect(),
            vectors: eig.eigenvectors,
        })
    }

    /// exp(−iHt)·initial.
    pub fn evolve(&self, initial: &[C], t: f64) -> Result<Vec<C>> {
        if initial.len() != self.eigenvalues.len() {
            return Err(Error::domain(
                "evolve: state dimension does not match the Hamiltonian".to_string(),
            ));
        }
        let v = nalgebra::DVector::from_column_slice(initial);
        let mut coeffs = self.vectors.adjoint() * v;
        for (k, c) in coeffs.iter_mut().enumerate() {
            *c *= C::from_polar(1.0, -self.eigenvalues[k] * t);
        }
        let out = &self.vectors * coeffs;
        Ok(out.iter().cloned().collect())
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }
}

/// One-shot exp(−iHt)·initial. For repeated evolutions of the same system,
/// build an [`ExactEvolver`] once instead.
pub fn evolve_exact(h: &FullHamiltonian, initial: &[C], t: f64) -> Result<Vec<C>> {
    ExactEvolver::new(h)?.evolve(initial, t)
}

/// Comparison of the exact lowest quadruplet against the effective model.
#[derive(Debug, Clone)]
pub struct EffectiveValidation {
    pub exact_levels: [f64; 4],
    pub effective_levels: [f64; 4],
    pub exact_splittings: [f64; 3],
    pub effective_splittings: [f64; 3],
    pub abs_errors: [f64; 3],
    /// |Δexact − Δeff| normalized by the effective quadruplet spread.
    pub rel_errors: [f64; 3],
    pub max_rel_error: f64,
    /// Effective quadruplet spread max−min.
    pub spread: f64,
    /// Separation between the exact quadruplet top and the first bus-like
    /// level, relative to the bus gap; negative means level crossing.
    pub crossing_margin: f64,
    pub warnings: Vec<String>,
}

/// Compare the four lowest exact levels of bus+two-qubits against
/// ε₀ + C_eff + eig(H_eff^{(A,B)}).
pub fn validate_effective_spectrum(
    spec: &LadderSpec,
    m: NodeLabel,
    n: NodeLabel,
    j_a: f64,
    j_b: f64,
) -> Result<EffectiveValidation> {
    let attachments = [
        Attachment {
            qubit: QubitId::A,
            node: m,
            coupling: j_a,
            field: None,
        },
        Attachment {
            qubit: QubitId::B,
            node: n,
            coupling: j_b,
            field: None,
        },
    ];
    let full = full_hamiltonian(spec, &attachments)?;
    let evolver = ExactEvolver::new(&full)?;
    let mut exact: Vec<f64> = evolver.eigenvalues().to_vec();
    exact.sort_by(f64::total_cmp);

    let coupling = compute_coupling(spec, m, n, j_a, j_b, Backend::SpectrumSum)?;
    let (h_int, c_eff) = effective_hamiltonian(&coupling);
    let h0 = build_hamiltonian(spec)?;
    let ground = ground_and_gap(&h0)?;
    let mut eff: Vec<f64> = h_int
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .map(|e| e + ground.energy + c_eff)
        .collect();
    eff.sort_by(f64::total_cmp);

    let exact_levels = [exact[0], exact[1], exact[2], exact[3]];
    let effective_levels = [eff[0], eff[1], eff[2], eff[3]];
    let exact_splittings = [
        exact[1] - exact[0],
        exact[2] - exact[1],
        exact[3] - exact[2],
    ];
    let effective_splittings = [eff[1] - eff[0], eff[2] - eff[1], eff[3] - eff[2]];
    let spread = eff[3] - eff[0];
    if spread <= 0.0 {
        return Err(Error::domain(
            "effective quadruplet has no spread; nothing to compare".to_string(),
        ));
    }
    let mut abs_errors = [0.0; 3];
    let mut rel_errors = [0.0; 3];
    for k in 0..3 {
        abs_errors[k] = (exact_splittings[k] - effective_splittings[k]).abs();
        rel_errors[k] = abs_errors[k] / spread;
    }
    let max_rel_error = rel_errors.iter().cloned().fold(0.0, f64::max);

    // level-crossing check: the next exact level should sit near the bus gap,
    // far above the quadruplet
    let crossing_margin = (exact[4] - exact[3]) / ground.gap - 0.5;
    let mut warnings = full.warnings.clone();
    if crossing_margin < 0.0 {
        warnings.push(format!(
            "weak-coupling assumption violated: the fifth exact level sits {:.3} bus gaps above the quadruplet",
            (exact[4] - exact[3]) / ground.gap
        ));
    }
    Ok(EffectiveValidation {
        exact_levels,
        effective_levels,
        exact_splittings,
        effective_splittings,
        abs_errors,
        rel_errors,
        max_rel_error,
        spread,
        crossing_margin,
        warnings,
    })
}
