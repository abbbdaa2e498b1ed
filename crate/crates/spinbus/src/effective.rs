//! Second-order effective couplings between qubits attached to the bus.
//!
//! With the bus frozen in its unique ground state, weak exchange couplings
//! J_A τ⃗_A·s⃗_m and J_B τ⃗_B·s⃗_n generate
//!
//!   H_eff^{(A,B)} = 2 J_A J_B [γ^x (τ^xτ^x + τ^yτ^y) + γ^z τ^zτ^z] + C_eff
//!
//! with γ^α_{m,n} = −Σ_{k>0} ⟨ψ₀|s_m^α|ψ_k⟩⟨ψ_k|s_n^α|ψ₀⟩ / (ε_k − ε₀) and
//! C_eff = (J_A²/4)Σ_α γ^α_{m,m} + (J_B²/4)Σ_α γ^α_{n,n}.
//!
//! Two independent backends compute γ: a sum over the full eigenbasis, and a
//! resolvent route that solves (H−ε₀)x = Q s_n^α ψ₀ on the complement of ψ₀
//! with a projected conjugate-gradient iteration. They agree to solver
//! tolerance and cross-validate each other.

use nalgebra::Matrix4;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{Axis, NodeLabel};
use crate::ladder::{build_hamiltonian, HamiltonianOp, LadderSpec};
use crate::spectra::{full_spectrum, ground_and_gap, GroundState, SpectrumResult};

/// Which γ computation route to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    /// Sum over the complete eigenbasis (dense diagonalization).
    SpectrumSum,
    /// Projected Krylov linear solve against the ground state only.
    Resolvent,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::SpectrumSum => "sum",
            Backend::Resolvent => "resolvent",
        }
    }
}

/// Tolerance below which the imaginary part of a γ accumulant must sit
/// (the Hamiltonian is real symmetric, so eigenvectors are chosen real).
const IMAG_TOL: f64 = 1e-10;

/// γ^α_{m,n} from a complete spectrum: the second-order sum over all excited
/// states.
///
/// Fails if the ground state is degenerate.
pub fn gamma_spectrum_sum(
    spectrum: &SpectrumResult,
    m: NodeLabel,
    n: NodeLabel,
    axis: Axis,
) -> Result<f64> {
    let g = gamma_cross_sum(spectrum, m, axis, n, axis)?;
    if g.im.abs() > IMAG_TOL {
        return Err(Error::domain(format!(
            "γ accumulant has imaginary part {:.3e} (expected < {IMAG_TOL:.0e})",
            g.im
        )));
    }
    Ok(g.re)
}

/// The mixed-axis sum −Σ_k ⟨ψ₀|s_m^{α}|k⟩⟨k|s_n^{β}|ψ₀⟩/(ε_k−ε₀).
///
/// For α = β this is γ^α_{m,n}; for α ≠ β the selection rule makes it vanish.
pub fn gamma_cross_sum(
    spectrum: &SpectrumResult,
    m: NodeLabel,
    axis_m: Axis,
    n: NodeLabel,
    axis_n: Axis,
) -> Result<Complex64> {
    spectrum.require_unique_ground()?;
    let space = crate::hilbert::HilbertSpace::new(spectrum.rungs())?;
    let psi0 = spectrum.eigenvector_full(0);
    let e0 = spectrum.ground_energy();
    let psi0c: Vec<Complex64> = psi0.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let site_m = space.node_to_site(m)?;
    let site_n = space.node_to_site(n)?;
    let wm = space.apply_spin(site_m, axis_m, &psi0c)?;
    let wn = space.apply_spin(site_n, axis_n, &psi0c)?;

    let ground_index = spectrum_ground_index(spectrum);
    let mut acc = Complex64::ZERO;
    for (s, sec) in spectrum.sectors.iter().enumerate() {
        // restrict w to this sector once
        let wm_s: Vec<Complex64> = sec.sector.members.iter().map(|&mask| wm[mask]).collect();
        let wn_s: Vec<Complex64> = sec.sector.members.iter().map(|&mask| wn[mask]).collect();
        if wm_s.iter().all(|c| c.norm_sqr() == 0.0) || wn_s.iter().all(|c| c.norm_sqr() == 0.0) {
            continue;
        }
        for c in 0..sec.eigenvalues.len() {
            if (s, c) == ground_index {
                continue;
            }
            let denom = sec.eigenvalues[c] - e0;
            // ⟨ψ₀|s_m|k⟩ = ⟨s_m ψ₀|k⟩ and ⟨k|s_n|ψ₀⟩ = ⟨k|s_n ψ₀⟩ with real ψ_k
            let mut a = Complex64::ZERO;
            let mut b = Complex64::ZERO;
            for (i, (wm_i, wn_i)) in wm_s.iter().zip(&wn_s).enumerate() {
                let psi_k = sec.eigenvectors[(i, c)];
                a += wm_i.conj() * psi_k;
                b += psi_k * wn_i;
            }
            acc -= a * b / denom;
        }
    }
    Ok(acc)
}

fn spectrum_ground_index(spectrum: &SpectrumResult) -> (usize, usize) {
    let mut best = (0usize, 0usize);
    let mut best_e = f64::INFINITY;
    for (s, sec) in spectrum.sectors.iter().enumerate() {
        if let Some(&e) = sec.eigenvalues.first() {
            if e < best_e {
                best_e = e;
                best = (s, 0);
            }
        }
    }
    best
}

/// Relative residual target for the projected conjugate-gradient solve.
const CG_TOL: f64 = 1e-12;

/// γ^α_{m,n} via the resolvent identity: solve (H − ε₀)x = Q s_n^α ψ₀ with
/// Q = 1 − |ψ₀⟩⟨ψ₀| and x ⊥ ψ₀, then return −⟨ψ₀|s_m^α x⟩.
///
/// Everything runs in real arithmetic via the real spin kernels (the −i of
/// s^y cancels between the two matrix elements).
pub fn gamma_resolvent(
    h: &HamiltonianOp,
    ground: &GroundState,
    m: NodeLabel,
    n: NodeLabel,
    axis: Axis,
) -> Result<f64> {
    let space = h.space();
    let psi0: Vec<f64> = ground.vector.iter().cloned().collect();
    let site_m = space.node_to_site(m)?;
    let site_n = space.node_to_site(n)?;
    let wm = space.apply_spin_real(site_m, axis, &psi0)?;
    let wn = space.apply_spin_real(site_n, axis, &psi0)?;
    let x = solve_projected(h, ground.energy, &psi0, &wn)?;
    Ok(-dot(&wm, &x))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn project_out(v: &mut [f64], psi0: &[f64]) {
    let c = dot(v, psi0);
    for (x, p) in v.iter_mut().zip(psi0) {
        *x -= c * p;
    }
}

/// Conjugate gradients for (H − ε₀)x = Q b on the orthogonal complement of
/// ψ₀, where H − ε₀ is positive definite.
fn solve_projected(h: &HamiltonianOp, e0: f64, psi0: &[f64], b: &[f64]) -> Result<Vec<f64>> {
    let dim = h.dim();
    let apply = |v: &[f64]| -> Vec<f64> {
        let mut out = h.apply(v);
        for (o, x) in out.iter_mut().zip(v) {
            *o -= e0 * x;
        }
        project_out(&mut out, psi0);
        out
    };
    let mut rhs = b.to_vec();
    project_out(&mut rhs, psi0);
    let bnorm = dot(&rhs, &rhs).sqrt();
    if bnorm == 0.0 {
        return Ok(vec![0.0; dim]);
    }
    let mut x = vec![0.0; dim];
    let mut r = rhs.clone();
    let mut p = r.clone();
    let mut rr = dot(&r, &r);
    let max_iter = 20 * dim.max(50);
    for it in 0..max_iter {
        if rr.sqrt() <= CG_TOL * bnorm {
            return Ok(x);
        }
        let ap = apply(&p);
        let pap = dot(&p, &ap);
        if pap <= 0.0 {
            return Err(Error::Convergence {
                summary: "projected CG lost positive definiteness (degenerate ground state?)"
                    .to_string(),
                residual: rr.sqrt() / bnorm,
                iterations: it,
            });
        }
        let alpha = rr / pap;
        for i in 0..dim {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        // keep the iterates clean of accumulated ψ₀ components
        if it % 32 == 31 {
            project_out(&mut x, psi0);
            project_out(&mut r, psi0);
        }
        let rr_next = dot(&r, &r);
        let beta = rr_next / rr;
        rr = rr_next;
        for i in 0..dim {
            p[i] = r[i] + beta * p[i];
        }
    }
    Err(Error::Convergence {
        summary: "projected CG did not reach tolerance".to_string(),
        residual: rr.sqrt() / bnorm,
        iterations: max_iter,
    })
}

/// Effective coupling coefficients for one node pair, with everything needed
/// to build H_eff^{(A,B)}.
#[derive(Debug, Clone)]
pub struct EffectiveCoupling {
    pub m: NodeLabel,
    pub n: NodeLabel,
    pub gamma_x: f64,
    pub gamma_y: f64,
    pub gamma_z: f64,
    /// Self-coupling sums Σ_α γ^α_{m,m} and Σ_α γ^α_{n,n}.
    pub gamma_self_m: f64,
    pub gamma_self_n: f64,
    /// C_eff = (J_A²/4)Σγ_{m,m} + (J_B²/4)Σγ_{n,n}, in energy units.
    pub c_eff: f64,
    /// Effective anisotropy γ^z/γ^x.
    pub delta_eff: f64,
    pub j_a: f64,
    pub j_b: f64,
    pub method: Backend,
    /// The ladder the coupling was computed for.
    pub context: LadderSpec,
}

impl EffectiveCoupling {
    /// J^α_{m,n} = 2 J_A J_B γ^α.
    pub fn exchange(&self, axis: Axis) -> f64 {
        let gamma = match axis {
            Axis::X => self.gamma_x,
            Axis::Y => self.gamma_y,
            Axis::Z => self.gamma_z,
        };
        2.0 * self.j_a * self.j_b * gamma
    }
}

/// Compute the effective coupling for the node pair (m, n) of a ladder.
pub fn compute_coupling(
    spec: &LadderSpec,
    m: NodeLabel,
    n: NodeLabel,
    j_a: f64,
    j_b: f64,
    backend: Backend,
) -> Result<EffectiveCoupling> {
    let h = build_hamiltonian(spec)?;
    let (gammas, self_m, self_n) = match backend {
        Backend::SpectrumSum => {
            let spectrum = full_spectrum(&h)?;
            let gx = gamma_spectrum_sum(&spectrum, m, n, Axis::X)?;
            let gy = gamma_spectrum_sum(&spectrum, m, n, Axis::Y)?;
            let gz = gamma_spectrum_sum(&spectrum, m, n, Axis::Z)?;
            let sm: f64 = Axis::ALL
                .iter()
                .map(|&a| gamma_spectrum_sum(&spectrum, m, m, a))
                .sum::<Result<f64>>()?;
            let sn: f64 = Axis::ALL
                .iter()
                .map(|&a| gamma_spectrum_sum(&spectrum, n, n, a))
                .sum::<Result<f64>>()?;
            ([gx, gy, gz], sm, sn)
        }
        Backend::Resolvent => {
            let ground = ground_and_gap(&h)?;
            let gx = gamma_resolvent(&h, &ground, m, n, Axis::X)?;
            let gy = gamma_resolvent(&h, &ground, m, n, Axis::Y)?;
            let gz = gamma_resolvent(&h, &ground, m, n, Axis::Z)?;
            let sm: f64 = Axis::ALL
                .iter()
                .map(|&a| gamma_resolvent(&h, &ground, m, m, a))
                .sum::<Result<f64>>()?;
            let sn: f64 = Axis::ALL
                .iter()
                .map(|&a| gamma_resolvent(&h, &ground, n, n, a))
                .sum::<Result<f64>>()?;
            ([gx, gy, gz], sm, sn)
        }
    };
    let [gamma_x, gamma_y, gamma_z] = gammas;
    let c_eff = j_a * j_a / 4.0 * self_m + j_b * j_b / 4.0 * self_n;
    Ok(EffectiveCoupling {
        m,
        n,
        gamma_x,
        gamma_y,
        gamma_z,
        gamma_self_m: self_m,
        gamma_self_n: self_n,
        c_eff,
        delta_eff: gamma_z / gamma_x,
        j_a,
        j_b,
        method: backend,
        context: spec.clone(),
    })
}

/// The 4×4 two-qubit effective interaction (basis |00⟩,|01⟩,|10⟩,|11⟩ with
/// qubit A first) and the constant C_eff.
///
/// The matrix is J^x(τ^xτ^x + τ^yτ^y) + J^z τ^zτ^z with τ = σ/2; C_eff is
/// returned separately since it only shifts the global phase of evolutions.
pub fn effective_hamiltonian(coupling: &EffectiveCoupling) -> (Matrix4<f64>, f64) {
    let jx = coupling.exchange(Axis::X);
    let jz = coupling.exchange(Axis::Z);
    let mut h = Matrix4::zeros();
    h[(0, 0)] = jz / 4.0;
    h[(1, 1)] = -jz / 4.0;
    h[(2, 2)] = -jz / 4.0;
    h[(3, 3)] = jz / 4.0;
    h[(1, 2)] = jx / 2.0;
    h[(2, 1)] = jx / 2.0;
    (h, coupling.c_eff)
}

/// One entry of the distance profile: coupling of node 1 to node n.
#[derive(Debug, Clone)]
pub struct ProfilePoint {
    pub n: usize,
    /// Node distance n − m along the connecting path.
    pub distance: usize,
    pub gamma_x: f64,
    /// J^x_{m,n} = 2 J_A J_B γ^x.
    pub exchange_x: f64,
}

/// γ^x_{m,n} for n over all other nodes, ordered by n.
pub fn antiferro_ferro_profile(
    spec: &LadderSpec,
    m: NodeLabel,
    j_a: f64,
    j_b: f64,
    backend: Backend,
) -> Result<Vec<ProfilePoint>> {
    let h = build_hamiltonian(spec)?;
    let nodes = 2 * spec.rungs;
    let mut out = Vec::with_capacity(nodes - 1);
    match backend {
        Backend::SpectrumSum => {
            let spectrum = full_spectrum(&h)?;
            for n in 1..=nodes {
                if n == m.0 {
                    continue;
                }
                let gx = gamma_spectrum_sum(&spectrum, m, NodeLabel(n), Axis::X)?;
                out.push(ProfilePoint {
                    n,
                    distance: n.abs_diff(m.0),
                    gamma_x: gx,
                    exchange_x: 2.0 * j_a * j_b * gx,
                });
            }
        }
        Backend::Resolvent => {
            let ground = ground_and_gap(&h)?;
            for n in 1..=nodes {
                if n == m.0 {
                    continue;
                }
                let gx = gamma_resolvent(&h, &ground, m, NodeLabel(n), Axis::X)?;
                out.push(ProfilePoint {
                    n,
                    distance: n.abs_diff(m.0),
                    gamma_x: gx,
                    exchange_x: 2.0 * j_a * j_b * gx,
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn l2_spectrum(delta: f64, j: f64) -> SpectrumResult {
        let spec = LadderSpec::new(2, j, delta).unwrap();
        full_spectrum(&build_hamiltonian(&spec).unwrap()).unwrap()
    }

    #[test]
    fn golden_gammas_isotropic_l2() {
        for j in [1.0, 2.5] {
            let spectrum = l2_spectrum(1.0, j);
            let cases = [
                (2, 1.0 / (6.0 * j)),
                (3, -1.0 / (8.0 * j)),
                (4, 1.0 / (6.0 * j)),
            ];
            for (n, expect) in cases {
                for axis in Axis::ALL {
                    let g =
                        gamma_spectrum_sum(&spectrum, NodeLabel(1), NodeLabel(n), axis).unwrap();
                    assert!(
                        (g - expect).abs() < 1e-10,
                        "J={j} n={n} axis {axis:?}: {g} vs {expect}"
                    );
                }
            }
        }
    }

    #[test]
    fn golden_gammas_via_resolvent() {
        let j = 1.0;
        let spec = LadderSpec::new(2, j, 1.0).unwrap();
        let h = build_hamiltonian(&spec).unwrap();
        let ground = ground_and_gap(&h).unwrap();
        for (n, expect) in [(2, 1.0 / 6.0), (3, -1.0 / 8.0), (4, 1.0 / 6.0)] {
            for axis in Axis::ALL {
                let g = gamma_resolvent(&h, &ground, NodeLabel(1), NodeLabel(n), axis).unwrap();
                assert!((g - expect).abs() < 1e-10, "n={n} axis {axis:?}: {g}");
            }
        }
    }

    #[test]
    fn cross_axis_terms_vanish() {
        let spectrum = l2_spectrum(0.5, 1.0);
        for (am, an) in [(Axis::X, Axis::Y), (Axis::X, Axis::Z), (Axis::Y, Axis::Z)] {
            let g = gamma_cross_sum(&spectrum, NodeLabel(1), am, NodeLabel(2), an).unwrap();
            assert!(g.norm() < 1e-10, "{am:?}/{an:?}: |{g}|");
        }
    }

    #[test]
    fn xy_symmetry_and_node_symmetry() {
        for delta in [0.2, 0.6, 1.0] {
            let spectrum = l2_spectrum(delta, 1.0);
            for (m, n) in [(1, 2), (1, 3), (2, 4)] {
                let gx =
                    gamma_spectrum_sum(&spectrum, NodeLabel(m), NodeLabel(n), Axis::X).unwrap();
                let gy =
                    gamma_spectrum_sum(&spectrum, NodeLabel(m), NodeLabel(n), Axis::Y).unwrap();
                let gx_swapped =
                    gamma_spectrum_sum(&spectrum, NodeLabel(n), NodeLabel(m), Axis::X).unwrap();
                assert!((gx - gy).abs() < 1e-9, "Δ={delta} ({m},{n})");
                assert!((gx - gx_swapped).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn self_coupling_is_negative() {
        let spectrum = l2_spectrum(0.3, 1.0);
        for node in 1..=4 {
            for axis in Axis::ALL {
                let g =
                    gamma_spectrum_sum(&spectrum, NodeLabel(node), NodeLabel(node), axis).unwrap();
                assert!(g < 0.0, "γ_{{{node},{node}}}^{axis:?} = {g}");
            }
        }
    }

    #[test]
    fn backends_agree_on_l4() {
        let spec = LadderSpec::new(4, 1.0, 0.2).unwrap();
        let a = compute_coupling(
            &spec,
            NodeLabel(1),
            NodeLabel(2),
            1.0,
            1.0,
            Backend::SpectrumSum,
        )
        .unwrap();
        let b = compute_coupling(
            &spec,
            NodeLabel(1),
            NodeLabel(2),
            1.0,
            1.0,
            Backend::Resolvent,
        )
        .unwrap();
        assert!((a.gamma_x - b.gamma_x).abs() < 1e-8);
        assert!((a.gamma_y - b.gamma_y).abs() < 1e-8);
        assert!((a.gamma_z - b.gamma_z).abs() < 1e-8);
        assert!((a.c_eff - b.c_eff).abs() < 1e-8);
    }

    #[test]
    fn fig1_monotonicity_and_endpoint() {
        // γ^x_{1,2}(Δ) strictly decreasing, Δ_eff strictly increasing on the
        // Δ grid, and the isotropic endpoint values are exact (L=2, J=10).
        let j = 10.0;
        let mut prev_gx = f64::INFINITY;
        let mut prev_deff = f64::NEG_INFINITY;
        for i in 2..=10 {
            let delta = i as f64 / 10.0;
            let spec = LadderSpec::new(2, j, delta).unwrap();
            let c = compute_coupling(
                &spec,
                NodeLabel(1),
                NodeLabel(2),
                1.0,
                1.0,
                Backend::SpectrumSum,
            )
            .unwrap();
            assert!(c.gamma_x < prev_gx, "γ^x not decreasing at Δ={delta}");
            assert!(c.delta_eff > prev_deff, "Δ_eff not increasing at Δ={delta}");
            prev_gx = c.gamma_x;
            prev_deff = c.delta_eff;
        }
        let spec = LadderSpec::new(2, j, 1.0).unwrap();
        let c = compute_coupling(
            &spec,
            NodeLabel(1),
            NodeLabel(2),
            1.0,
            1.0,
            Backend::SpectrumSum,
        )
        .unwrap();
        assert!((c.gamma_x - 1.0 / 60.0).abs() < 1e-10);
        assert!((c.delta_eff - 1.0).abs() < 1e-10);
    }

    #[test]
    fn degenerate_block_remix_leaves_gamma_unchanged() {
        // remix a degenerate multiplet by a random orthogonal matrix and
        // check the perturbation sum is basis-independent
        let spec = LadderSpec::new(2, 1.0, 0.5).unwrap();
        let h = build_hamiltonian(&spec).unwrap();
        let spectrum = full_spectrum(&h).unwrap();
        let before = gamma_spectrum_sum(&spectrum, NodeLabel(1), NodeLabel(3), Axis::X).unwrap();

        let mut remixed = spectrum.clone();
        let groups = remixed.degenerate_groups();
        let (lo, hi) = *groups
            .iter()
            .find(|&&(a, b)| b - a > 1)
            .expect("some degenerate multiplet exists");
        // the multiplet lives in possibly several sectors; remix only the
        // columns that share one sector
        let mut by_sector: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for k in lo..hi {
            let (s, c) = {
                // reach through the public API: locate (sector, column) by value match
                let target = remixed.eigenvalue(k);
                let sz = remixed.sector_sz(k);
                let mut found = None;
                for (si, sec) in remixed.sectors.iter().enumerate() {
                    if sec.sector.total_sz != sz {
                        continue;
                    }
                    for (ci, &e) in sec.eigenvalues.iter().enumerate() {
                        if e == target
                            && !by_sector.values().flatten().any(|&x| x == si * 10_000 + ci)
                        {
                            found = Some((si, ci));
                            break;
                        }
                    }
                    if found.is_some() {
                        break;
                    }
                }
                found.expect("eigenpair located")
            };
            by_sector.entry(s).or_default().push(s * 10_000 + c);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for (s, cols) in by_sector {
            let cols: Vec<usize> = cols.into_iter().map(|x| x % 10_000).collect();
            if cols.len() < 2 {
                continue;
            }
            let k = cols.len();
            // random orthogonal via QR of a random matrix
            let mut raw = DMatrix::<f64>::zeros(k, k);
            for i in 0..k {
                for j in 0..k {
                    raw[(i, j)] = rng.gen_range(-1.0..1.0);
                }
            }
            let q = raw.qr().q();
            let sec = &mut remixed.sectors[s];
            let old: Vec<nalgebra::DVector<f64>> = cols
                .iter()
                .map(|&c| sec.eigenvectors.column(c).into())
                .collect();
            for (new_idx, &c) in cols.iter().enumerate() {
                let mut col = nalgebra::DVector::zeros(sec.sector.len());
                for (old_idx, o) in old.iter().enumerate() {
                    col += o * q[(old_idx, new_idx)];
                }
                sec.eigenvectors.set_column(c, &col);
            }
        }
        let after = gamma_spectrum_sum(&remixed, NodeLabel(1), NodeLabel(3), Axis::X).unwrap();
        assert!(
            (before - after).abs() < 1e-10,
            "remix changed γ: {before} vs {after}"
        );
    }

    #[test]
    fn effective_hamiltonian_eigenvalues() {
        // eigenvalues of the interaction part: {J^z/4 (×2), −J^z/4 ± J^x/2}
        let spec = LadderSpec::new(2, 1.0, 0.5).unwrap();
        let c = compute_coupling(
            &spec,
            NodeLabel(1),
            NodeLabel(2),
            0.7,
            1.3,
            Backend::SpectrumSum,
        )
        .unwrap();
        let (h, _) = effective_hamiltonian(&c);
        let jx = c.exchange(Axis::X);
        let jz = c.exchange(Axis::Z);
        let mut eigs: Vec<f64> = h.symmetric_eigen().eigenvalues.iter().cloned().collect();
        eigs.sort_by(f64::total_cmp);
        let mut expect = vec![
            jz / 4.0,
            jz / 4.0,
            -jz / 4.0 + jx / 2.0,
            -jz / 4.0 - jx / 2.0,
        ];
        expect.sort_by(f64::total_cmp);
        for (a, b) in eigs.iter().zip(&expect) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_coupling_kills_interaction() {
        let spec = LadderSpec::new(2, 1.0, 0.5).unwrap();
        let c = compute_coupling(
            &spec,
            NodeLabel(1),
            NodeLabel(2),
            0.0,
            1.0,
            Backend::SpectrumSum,
        )
        .unwrap();
        let (h, _) = effective_hamiltonian(&c);
        assert!(h.norm() == 0.0);
    }

    #[test]
    fn isotropic_interaction_is_swap_symmetric() {
        let spec = LadderSpec::new(2, 1.0, 1.0).unwrap();
        let c = compute_coupling(
            &spec,
            NodeLabel(1),
            NodeLabel(2),
            1.0,
            1.0,
            Backend::SpectrumSum,
        )
        .unwrap();
        assert!((c.gamma_x - c.gamma_z).abs() < 1e-9, "isotropic point");
        let (h, _) = effective_hamiltonian(&c);
        let mut swap = Matrix4::zeros();
        swap[(0, 0)] = 1.0;
        swap[(3, 3)] = 1.0;
        swap[(1, 2)] = 1.0;
        swap[(2, 1)] = 1.0;
        assert!((h * swap - swap * h).norm() < 1e-12);
    }

    #[test]
    fn l2_profile_matches_golden_values() {
        let spec = LadderSpec::new(2, 1.0, 1.0).unwrap();
        let profile =
            antiferro_ferro_profile(&spec, NodeLabel(1), 1.0, 1.0, Backend::SpectrumSum).unwrap();
        let expect = [1.0 / 6.0, -1.0 / 8.0, 1.0 / 6.0];
        assert_eq!(profile.len(), 3);
        for (p, e) in profile.iter().zip(expect) {
            assert!((p.gamma_x - e).abs() < 1e-10, "n={}", p.n);
        }
    }
}
