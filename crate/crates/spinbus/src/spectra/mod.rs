//! Eigensolvers for the bus Hamiltonian: dense per-sector spectra for small
//! systems, an iterative ground/gap path for larger ones, and the exact L=2
//! golden data.

pub mod analytic;
pub mod cubic;
pub mod lanczos;

pub use analytic::{analytic_spectrum_l2, AnalyticL2, AnalyticLevel};
pub use cubic::{cubic_eval, cubic_roots};

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::ladder::HamiltonianOp;
use crate::SzSector;

/// Default cap for materializing dense sector blocks: 4^6 total dimension.
pub const DENSE_DIM_LIMIT: usize = 4096;

/// Relative tolerance for grouping nearly equal eigenvalues into degenerate
/// multiplets (reporting only; downstream sums are grouping-independent).
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Eigendecomposition of one S^z sector, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct SectorSpectrum {
    pub sector: SzSector,
    pub eigenvalues: Vec<f64>,
    /// Columns are the eigenvectors, in the same order as `eigenvalues`.
    pub eigenvectors: DMatrix<f64>,
}

/// Complete orthonormal eigenbasis of the bus, sector-tagged and globally
/// ordered by energy.
#[derive(Debug, Clone)]
pub struct SpectrumResult {
    rungs: usize,
    dim: usize,
    pub sectors: Vec<SectorSpectrum>,
    /// Global ascending order: (sector index, column index).
    order: Vec<(usize, usize)>,
}

impl SpectrumResult {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn rungs(&self) -> usize {
        self.rungs
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eigenvalue(&self, k: usize) -> f64 {
        let (s, c) = self.order[k];
        self.sectors[s].eigenvalues[c]
    }

    pub fn sector_sz(&self, k: usize) -> i32 {
        let (s, _) = self.order[k];
        self.sectors[s].sector.total_sz
    }

    /// The k-th eigenvector embedded into the full 4^L space.
    pub fn eigenvector_full(&self, k: usize) -> DVector<f64> {
        let (s, c) = self.order[k];
        let sec = &self.sectors[s];
        let mut out = DVector::zeros(self.dim);
        for (i, &mask) in sec.sector.members.iter().enumerate() {
            out[mask] = sec.eigenvectors[(i, c)];
        }
        out
    }

    pub fn ground_energy(&self) -> f64 {
        self.eigenvalue(0)
    }

    /// ε₁ − ε₀ over the full ordered spectrum.
    pub fn gap(&self) -> f64 {
        self.eigenvalue(1) - self.eigenvalue(0)
    }

    /// Σ_k ε_k.
    pub fn trace(&self) -> f64 {
        (0..self.len()).map(|k| self.eigenvalue(k)).sum()
    }

    /// Degenerate multiplets as half-open index ranges into the global order.
    /// Levels a, b are grouped when |ε_a − ε_b| ≤ tol·max(1, |ε_a|).
    pub fn degenerate_groups(&self) -> Vec<(usize, usize)> {
        let mut groups = Vec::new();
        let mut start = 0;
        for k in 1..=self.len() {
            let split = k == self.len() || {
                let prev = self.eigenvalue(k - 1);
                (self.eigenvalue(k) - prev).abs() > DEGENERACY_TOL * prev.abs().max(1.0)
            };
            if split {
                groups.push((start, k));
                start = k;
            }
        }
        groups
    }

    /// Error unless the ground level is non-degenerate.
    pub fn require_unique_ground(&self) -> Result<()> {
        let (lo, hi) = self.degenerate_groups()[0];
        if hi - lo != 1 {
            return Err(Error::domain(format!(
                "ground state is {}-fold degenerate; perturbation sums are ill-defined",
                hi - lo
            )));
        }
        Ok(())
    }
}

/// Dense per-sector diagonalization of the full spectrum.
pub fn full_spectrum(h: &HamiltonianOp) -> Result<SpectrumResult> {
    full_spectrum_with_limit(h, DENSE_DIM_LIMIT)
}

/// As [`full_spectrum`] with an explicit dense-dimension cap.
pub fn full_spectrum_with_limit(h: &HamiltonianOp, limit: usize) -> Result<SpectrumResult> {
    if h.dim() > limit {
        return Err(Error::Budget(format!(
            "total dimension {} exceeds the dense threshold {limit}; use the iterative path (ground_and_gap)",
            h.dim()
        )));
    }
    let mut sectors = Vec::new();
    for sector in h.space().sectors() {
        let block = h.dense_in_sector(&sector);
        let eig = block.symmetric_eigen();
        let n = sector.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let mut eigenvectors = DMatrix::zeros(n, n);
        for (col, &i) in order.iter().enumerate() {
            eigenvectors.set_column(col, &eig.eigenvectors.column(i));
        }
        sectors.push(SectorSpectrum {
            sector,
            eigenvalues,
            eigenvectors,
        });
    }
    let mut order: Vec<(usize, usize)> = sectors
        .iter()
        .enumerate()
        .flat_map(|(s, sec)| (0..sec.eigenvalues.len()).map(move |c| (s, c)))
        .collect();
    order.sort_by(|&(sa, ca), &(sb, cb)| {
        sectors[sa].eigenvalues[ca]
            .total_cmp(&sectors[sb].eigenvalues[cb])
            .then(sa.cmp(&sb))
            .then(ca.cmp(&cb))
    });
    let result = SpectrumResult {
        rungs: h.space().rungs(),
        dim: h.dim(),
        sectors,
        order,
    };
    verify_residuals(h, &result)?;
    Ok(result)
}

fn verify_residuals(h: &HamiltonianOp, spectrum: &SpectrumResult) -> Result<()> {
    let scale = h.norm_bound();
    for sec in &spectrum.sectors {
        for c in 0..sec.eigenvalues.len() {
            let v: Vec<f64> = sec.eigenvectors.column(c).iter().cloned().collect();
            let hv = h.apply_in_sector(&sec.sector, &v);
            let mut res = 0.0;
            for (x, y) in hv.iter().zip(&v) {
                res += (x - sec.eigenvalues[c] * y).powi(2);
            }
            let res = res.sqrt();
            if res > 1e-10 * scale {
                return Err(Error::Convergence {
                    summary: format!(
                        "dense eigenpair in sector Sz={} fails the residual bound",
                        sec.sector.total_sz
                    ),
                    residual: res,
                    iterations: 0,
                });
            }
        }
    }
    Ok(())
}

/// Ground state and first-excitation gap.
#[derive(Debug, Clone)]
pub struct GroundState {
    pub energy: f64,
    /// Ground vector in the full 4^L space (lives in the S^z = 0 sector).
    pub vector: DVector<f64>,
    /// ε₁ − ε₀; from the full spectrum on the dense path, from scanning the
    /// S^z ∈ {0, ±1} sectors on the iterative path.
    pub gap: f64,
}

/// Compute ε₀, ψ₀ and the gap, choosing dense or Lanczos automatically.
pub fn ground_and_gap(h: &HamiltonianOp) -> Result<GroundState> {
    ground_and_gap_with_limit(h, DENSE_DIM_LIMIT)
}

/// As [`ground_and_gap`] with an explicit dense-vs-iterative threshold.
pub fn ground_and_gap_with_limit(h: &HamiltonianOp, dense_limit: usize) -> Result<GroundState> {
    if h.dim() <= dense_limit {
        let spectrum = full_spectrum_with_limit(h, dense_limit)?;
        spectrum.require_unique_ground()?;
        if spectrum.sector_sz(0) != 0 {
            return Err(Error::domain(format!(
                "ground state found in sector Sz={}, expected 0",
                spectrum.sector_sz(0)
            )));
        }
        return Ok(GroundState {
            energy: spectrum.ground_energy(),
            vector: spectrum.eigenvector_full(0),
            gap: spectrum.gap(),
        });
    }

    let scale = h.norm_bound();
    let space = h.space();
    let zero = space.sector(0)?;
    let report =
        lanczos::lowest_eigenpairs(|v| h.apply_in_sector(&zero, v), zero.len(), 2, scale, 1e-12)?;
    let e0 = report.eigenvalues[0];
    let mut first_excited = report.eigenvalues[1];
    for sz in [-1i32, 1i32] {
        let sector = space.sector(sz)?;
        let r = lanczos::lowest_eigenpairs(
            |v| h.apply_in_sector(&sector, v),
            sector.len(),
            1,
            scale,
            1e-12,
        )?;
        if r.eigenvalues[0] < first_excited {
            first_excited = r.eigenvalues[0];
        }
    }
    let gap = first_excited - e0;
    if gap <= DEGENERACY_TOL * e0.abs().max(1.0) {
        return Err(Error::domain(
            "ground state is degenerate within tolerance; perturbation sums are ill-defined"
                .to_string(),
        ));
    }
    let vector = DVector::from_vec(zero.embed(h.dim(), &report.eigenvectors[0]));
    Ok(GroundState {
        energy: e0,
        vector,
        gap,
    })
}

/// Closed-form gap estimate ε₁ − ε₀ ≈ J/2 + C·J·e^{−L/4}/L.
pub fn gap_estimate(rungs: usize, j: f64, c: f64) -> f64 {
    j / 2.0 + c * j * (-(rungs as f64) / 4.0).exp() / rungs as f64
}

/// Least-squares fit of the constant C against computed gaps.
#[derive(Debug, Clone)]
pub struct GapFit {
    pub c: f64,
    /// gap_L − estimate_L for each input point, in input order.
    pub residuals: Vec<f64>,
}

pub fn fit_gap_constant(gaps: &[(usize, f64)], j: f64) -> Result<GapFit> {
    if gaps.is_empty() {
        return Err(Error::domain("no gap data to fit".to_string()));
    }
    let mut num = 0.0;
    let mut den = 0.0;
    for &(l, gap) in gaps {
        let w = (-(l as f64) / 4.0).exp() / l as f64;
        num += w * (gap / j - 0.5);
        den += w * w;
    }
    let c = num / den;
    let residuals = gaps
        .iter()
        .map(|&(l, gap)| gap - gap_estimate(l, j, c))
        .collect();
    Ok(GapFit { c, residuals })
}
