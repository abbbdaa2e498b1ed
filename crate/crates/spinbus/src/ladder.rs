//! The bus Hamiltonian of two strongly coupled XXZ chains.
//!
//! H₀ = J Σ_{i=1,2} Σ_{j=1..L−1} (s^x s^x + s^y s^y + Δ_j s^z s^z) along each
//! chain, plus isotropic rung bonds J Σ_{j=1..L} s⃗_{1,j}·s⃗_{2,j}. The operator
//! is real symmetric in the product basis, commutes with total S^z, and is
//! applied matrix-free; dense blocks are materialized per sector only when a
//! solver asks for them.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{HilbertSpace, NodeLabel, SzSector};

/// An intra-chain bond between rungs `rung` and `rung+1` of one chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChainBond {
    pub chain: u8,
    pub rung: usize,
}

impl ChainBond {
    pub fn new(chain: u8, rung: usize) -> Self {
        ChainBond { chain, rung }
    }
}

/// Geometry and couplings of the bus.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderSpec {
    /// Rungs per chain, L ≥ 2.
    pub rungs: usize,
    /// Exchange energy J > 0.
    pub exchange: f64,
    /// Uniform intra-chain anisotropy Δ ∈ (0, 1].
    pub delta: f64,
    /// Per-bond anisotropy overrides Δ_j; bonds not listed use `delta`.
    pub bond_overrides: BTreeMap<ChainBond, f64>,
}

impl LadderSpec {
    pub fn new(rungs: usize, exchange: f64, delta: f64) -> Result<Self> {
        let spec = LadderSpec {
            rungs,
            exchange,
            delta,
            bond_overrides: BTreeMap::new(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.rungs < 2 {
            return Err(Error::domain(format!(
                "L = {} must be at least 2",
                self.rungs
            )));
        }
        if !self.exchange.is_finite() || self.exchange <= 0.0 {
            return Err(Error::domain(format!(
                "J = {} must be positive",
                self.exchange
            )));
        }
        if !self.delta.is_finite() || self.delta <= 0.0 || self.delta > 1.0 {
            return Err(Error::domain(format!(
                "Δ = {} outside the admissible interval (0, 1]",
                self.delta
            )));
        }
        for (&bond, &dj) in &self.bond_overrides {
            if bond.chain != 1 && bond.chain != 2 {
                return Err(Error::domain(format!(
                    "override chain {} not in {{1,2}}",
                    bond.chain
                )));
            }
            if bond.rung < 1 || bond.rung >= self.rungs {
                return Err(Error::domain(format!(
                    "override bond rung {} outside 1..={}",
                    bond.rung,
                    self.rungs - 1
                )));
            }
            if !dj.is_finite() || dj <= 0.0 {
                return Err(Error::domain(format!(
                    "override Δ_j = {dj} must be positive"
                )));
            }
        }
        Ok(())
    }

    /// Add or replace one bond override.
    pub fn with_override(mut self, bond: ChainBond, delta_j: f64) -> Result<Self> {
        self.bond_overrides.insert(bond, delta_j);
        self.validate()?;
        Ok(self)
    }

    /// Anisotropy in effect on an intra-chain bond.
    pub fn bond_delta(&self, bond: ChainBond) -> f64 {
        self.bond_overrides
            .get(&bond)
            .copied()
            .unwrap_or(self.delta)
    }

    pub fn space(&self) -> HilbertSpace {
        HilbertSpace::new(self.rungs).expect("validated rung count")
    }
}

/// Retune the anisotropy around two nodes: every intra-chain bond incident to
/// node `m` gets Δ_j = Δ(1+δ_m), likewise for `n`; rung bonds stay isotropic.
///
/// End nodes (rung 1 or L) touch one intra-chain bond, interior nodes two. If
/// both nodes share a bond the assignment is only accepted when the two
/// requested values coincide.
pub fn apply_fluctuations(
    spec: &LadderSpec,
    m: NodeLabel,
    delta_m: f64,
    n: NodeLabel,
    delta_n: f64,
) -> Result<LadderSpec> {
    if m == n {
        return Err(Error::domain(format!("nodes coincide: m = n = {}", m.0)));
    }
    for (label, d) in [(m, delta_m), (n, delta_n)] {
        if d.abs() > 0.1 {
            return Err(Error::domain(format!(
                "fluctuation δ = {d} at node {} exceeds the sanity bound 0.1",
                label.0
            )));
        }
    }
    let space = spec.space();
    let mut out = spec.clone();
    let mut assigned: BTreeMap<ChainBond, f64> = BTreeMap::new();
    for (label, d) in [(m, delta_m), (n, delta_n)] {
        let site = space.node_to_site(label)?;
        let mut bonds = Vec::new();
        if site.rung > 1 {
            bonds.push(ChainBond::new(site.chain, site.rung - 1));
        }
        if site.rung < spec.rungs {
            bonds.push(ChainBond::new(site.chain, site.rung));
        }
        let value = spec.delta * (1.0 + d);
        for bond in bonds {
            if let Some(&prev) = assigned.get(&bond) {
                if prev != value {
                    return Err(Error::domain(format!(
                        "nodes {} and {} both perturb bond (chain {}, rung {}) with conflicting values",
                        m.0, n.0, bond.chain, bond.rung
                    )));
                }
            }
            assigned.insert(bond, value);
            out.bond_overrides.insert(bond, value);
        }
    }
    out.validate()?;
    Ok(out)
}

/// One two-site bond of the assembled Hamiltonian, in bit positions.
#[derive(Debug, Clone, Copy)]
struct Bond {
    a: usize,
    b: usize,
    /// z-z coupling relative to the in-plane coupling (Δ_j on chain bonds, 1 on rungs).
    zz: f64,
}

/// Sector-blocked, matrix-free bus Hamiltonian.
#[derive(Debug, Clone)]
pub struct HamiltonianOp {
    spec: LadderSpec,
    space: HilbertSpace,
    bonds: Vec<Bond>,
}

/// Assemble H₀ for a validated ladder spec.
pub fn build_hamiltonian(spec: &LadderSpec) -> Result<HamiltonianOp> {
    spec.validate()?;
    let space = spec.space();
    let mut bonds = Vec::with_capacity(3 * spec.rungs - 2);
    for chain in [1u8, 2u8] {
        for rung in 1..spec.rungs {
            let a = space.site_bit(crate::hilbert::SiteIndex::new(chain, rung))?;
            let b = space.site_bit(crate::hilbert::SiteIndex::new(chain, rung + 1))?;
            bonds.push(Bond {
                a,
                b,
                zz: spec.bond_delta(ChainBond::new(chain, rung)),
            });
        }
    }
    for rung in 1..=spec.rungs {
        let a = space.site_bit(crate::hilbert::SiteIndex::new(1, rung))?;
        let b = space.site_bit(crate::hilbert::SiteIndex::new(2, rung))?;
        bonds.push(Bond { a, b, zz: 1.0 });
    }
    Ok(HamiltonianOp {
        spec: spec.clone(),
        space,
        bonds,
    })
}

impl HamiltonianOp {
    pub fn spec(&self) -> &LadderSpec {
        &self.spec
    }

    pub fn space(&self) -> &HilbertSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// H₀ v on a full-dimension real vector.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.dim(), "vector length mismatch");
        let j = self.spec.exchange;
        let mut out = vec![0.0; v.len()];
        for bond in &self.bonds {
            let ma = 1usize << bond.a;
            let mb = 1usize << bond.b;
            let zz = 0.25 * j * bond.zz;
            let hop = 0.5 * j;
            for (s, &amp) in v.iter().enumerate() {
                if amp == 0.0 {
                    continue;
                }
                let same = (s & ma != 0) == (s & mb != 0);
                if same {
                    out[s] += zz * amp;
                } else {
                    out[s] -= zz * amp;
                    out[s ^ (ma | mb)] += hop * amp;
                }
            }
        }
        out
    }

    /// H₀ v on a full-dimension complex vector.
    pub fn apply_complex(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim(), "vector length mismatch");
        let j = self.spec.exchange;
        let mut out = vec![Complex64::ZERO; v.len()];
        for bond in &self.bonds {
            let ma = 1usize << bond.a;
            let mb = 1usize << bond.b;
            let zz = 0.25 * j * bond.zz;
            let hop = 0.5 * j;
            for (s, &amp) in v.iter().enumerate() {
                let same = (s & ma != 0) == (s & mb != 0);
                if same {
                    out[s] += zz * amp;
                } else {
                    out[s] -= zz * amp;
                    out[s ^ (ma | mb)] += hop * amp;
                }
            }
        }
        out
    }

    /// H₀ v within one S^z sector (v indexed by `sector.members`).
    pub fn apply_in_sector(&self, sector: &SzSector, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), sector.len(), "sector vector length mismatch");
        let j = self.spec.exchange;
        let mut out = vec![0.0; v.len()];
        for bond in &self.bonds {
            let ma = 1usize << bond.a;
            let mb = 1usize << bond.b;
            let zz = 0.25 * j * bond.zz;
            let hop = 0.5 * j;
            for (idx, &amp) in v.iter().enumerate() {
                if amp == 0.0 {
                    continue;
                }
                let s = sector.members[idx];
                let same = (s & ma != 0) == (s & mb != 0);
                if same {
                    out[idx] += zz * amp;
                } else {
                    out[idx] -= zz * amp;
                    let t = s ^ (ma | mb);
                    let tpos = sector.position(t).expect("flip-flop stays in sector");
                    out[tpos] += hop * amp;
                }
            }
        }
        out
    }

    /// Dense matrix of the sector block.
    pub fn dense_in_sector(&self, sector: &SzSector) -> DMatrix<f64> {
        let n = sector.len();
        let j = self.spec.exchange;
        let mut m = DMatrix::zeros(n, n);
        for (col, &s) in sector.members.iter().enumerate() {
            for bond in &self.bonds {
                let ma = 1usize << bond.a;
                let mb = 1usize << bond.b;
                let same = (s & ma != 0) == (s & mb != 0);
                if same {
                    m[(col, col)] += 0.25 * j * bond.zz;
                } else {
                    m[(col, col)] -= 0.25 * j * bond.zz;
                    let t = s ^ (ma | mb);
                    let row = sector.position(t).expect("flip-flop stays in sector");
                    m[(row, col)] += 0.5 * j;
                }
            }
        }
        m
    }

    /// Dense matrix on the full 4^L space (small L only; testing and oracles).
    pub fn dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        let mut basis = vec![0.0; n];
        for col in 0..n {
            basis[col] = 1.0;
            let w = self.apply(&basis);
            basis[col] = 0.0;
            for (row, &x) in w.iter().enumerate() {
                m[(row, col)] = x;
            }
        }
        m
    }

    /// Cheap upper bound on the spectral norm, Σ_bonds J(1/2 + |Δ_j|/4).
    pub fn norm_bound(&self) -> f64 {
        let j = self.spec.exchange;
        self.bonds
            .iter()
            .map(|b| j * (0.5 + 0.25 * b.zz.abs()))
            .sum()
    }
}
