//! Product basis, S^z sectors, and matrix-free spin-1/2 operators for a
//! two-chain ladder of 2L spins.
//!
//! Sites are addressed as (chain, rung) with chain ∈ {1,2} and rung ∈ 1..=L.
//! Basis states are bitmasks over the 2L sites in chain-major order: chain-1
//! rungs 1..L occupy bits 0..L-1, chain-2 rungs 1..L occupy bits L..2L-1.
//! Bit value 1 is spin up (+1/2), so a mask `s` has total S^z = popcount(s) − L.
//!
//! Connecting nodes are numbered 1..2L along a boustrophedon path that walks
//! rung by rung, alternating the chain order: node 1=(1,1), 2=(2,1), 3=(2,2),
//! 4=(1,2), 5=(1,3), 6=(2,3), ...

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Spin component label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn name(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }
}

/// Lattice position of one bus spin: chain ∈ {1,2}, rung ∈ 1..=L.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SiteIndex {
    pub chain: u8,
    pub rung: usize,
}

impl SiteIndex {
    pub fn new(chain: u8, rung: usize) -> Self {
        SiteIndex { chain, rung }
    }
}

/// Connecting-node label along the boustrophedon path, 1..=2L.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NodeLabel(pub usize);

/// One total-S^z symmetry sector of the 4^L-dimensional product space.
///
/// `members` lists the basis bitmasks in ascending order; a sector vector is
/// indexed in that order.
#[derive(Debug, Clone)]
pub struct SzSector {
    pub total_sz: i32,
    pub members: Vec<usize>,
}

impl SzSector {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Index of a basis mask within the sector, if it belongs to it.
    pub fn position(&self, mask: usize) -> Option<usize> {
        self.members.binary_search(&mask).ok()
    }

    /// Embed a sector vector into the full 4^L-dimensional space.
    pub fn embed(&self, full_dim: usize, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.members.len(), "sector vector length mismatch");
        let mut out = vec![0.0; full_dim];
        for (i, &mask) in self.members.iter().enumerate() {
            out[mask] = v[i];
        }
        out
    }

    /// Restrict a full vector to this sector.
    pub fn project(&self, full: &[f64]) -> Vec<f64> {
        self.members.iter().map(|&m| full[m]).collect()
    }
}

/// The 4^L product Hilbert space of a ladder with L rungs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HilbertSpace {
    rungs: usize,
}

impl HilbertSpace {
    /// `rungs` is the number of rungs L; the space holds 2L spins.
    pub fn new(rungs: usize) -> Result<Self> {
        if rungs == 0 || rungs > 12 {
            return Err(Error::domain(format!(
                "rung count {rungs} outside supported range 1..=12"
            )));
        }
        Ok(HilbertSpace { rungs })
    }

    pub fn rungs(&self) -> usize {
        self.rungs
    }

    /// Number of spins, 2L.
    pub fn sites(&self) -> usize {
        2 * self.rungs
    }

    /// Full dimension 4^L.
    pub fn dim(&self) -> usize {
        1 << self.sites()
    }

    fn check_site(&self, site: SiteIndex) -> Result<()> {
        if site.chain != 1 && site.chain != 2 {
            return Err(Error::domain(format!(
                "chain {} not in {{1,2}}",
                site.chain
            )));
        }
        if site.rung < 1 || site.rung > self.rungs {
            return Err(Error::domain(format!(
                "rung {} outside 1..={}",
                site.rung, self.rungs
            )));
        }
        Ok(())
    }

    /// Bit position of a site in the canonical chain-major ordering.
    pub fn site_bit(&self, site: SiteIndex) -> Result<usize> {
        self.check_site(site)?;
        Ok((site.chain as usize - 1) * self.rungs + (site.rung - 1))
    }

    /// Map a node label to its lattice site along the boustrophedon path.
    ///
    /// Odd rungs are walked chain 1 → 2, even rungs chain 2 → 1, so that
    /// consecutive node labels are always nearest neighbours on the lattice.
    pub fn node_to_site(&self, node: NodeLabel) -> Result<SiteIndex> {
        let n = node.0;
        if n < 1 || n > self.sites() {
            return Err(Error::domain(format!(
                "node label {n} outside 1..={}",
                self.sites()
            )));
        }
        let rung = n.div_ceil(2);
        let first = n % 2 == 1;
        let chain = if rung % 2 == 1 {
            if first {
                1
            } else {
                2
            }
        } else if first {
            2
        } else {
            1
        };
        Ok(SiteIndex { chain, rung })
    }

    /// Inverse of [`node_to_site`](Self::node_to_site).
    pub fn site_to_node(&self, site: SiteIndex) -> Result<NodeLabel> {
        self.check_site(site)?;
        let first_chain = if site.rung % 2 == 1 { 1 } else { 2 };
        let n = if site.chain == first_chain {
            2 * site.rung - 1
        } else {
            2 * site.rung
        };
        Ok(NodeLabel(n))
    }

    /// Bit position of a node's site.
    pub fn node_bit(&self, node: NodeLabel) -> Result<usize> {
        self.site_bit(self.node_to_site(node)?)
    }

    /// Build the sector with the given total S^z (integer for 2L spins).
    pub fn sector(&self, total_sz: i32) -> Result<SzSector> {
        let l = self.rungs as i32;
        if total_sz.abs() > l {
            return Err(Error::domain(format!(
                "total Sz {total_sz} outside -{l}..={l}"
            )));
        }
        let ups = (l + total_sz) as u32;
        let members: Vec<usize> = (0..self.dim()).filter(|s| s.count_ones() == ups).collect();
        Ok(SzSector { total_sz, members })
    }

    /// All sectors, ordered by total S^z from -L to L.
    pub fn sectors(&self) -> Vec<SzSector> {
        let l = self.rungs as i32;
        (-l..=l)
            .map(|sz| self.sector(sz).expect("in-range sz"))
            .collect()
    }

    /// Total S^z of a basis mask.
    pub fn mask_sz(&self, mask: usize) -> i32 {
        mask.count_ones() as i32 - self.rungs as i32
    }

    /// Apply the spin-1/2 operator s^α at `site` to a full-dimension vector,
    /// without materializing a matrix.
    pub fn apply_spin(
        &self,
        site: SiteIndex,
        axis: Axis,
        v: &[Complex64],
    ) -> Result<Vec<Complex64>> {
        let bit = self.site_bit(site)?;
        if v.len() != self.dim() {
            return Err(Error::domain(format!(
                "vector length {} does not match dimension {}",
                v.len(),
                self.dim()
            )));
        }
        let mask = 1usize << bit;
        let mut out = vec![Complex64::ZERO; v.len()];
        match axis {
            Axis::Z => {
                for (s, &a) in v.iter().enumerate() {
                    out[s] = if s & mask != 0 { 0.5 * a } else { -0.5 * a };
                }
            }
            Axis::X => {
                for (s, &a) in v.iter().enumerate() {
                    out[s ^ mask] = 0.5 * a;
                }
            }
            Axis::Y => {
                // s^y|↑⟩ = (i/2)|↓⟩, s^y|↓⟩ = (−i/2)|↑⟩
                for (s, &a) in v.iter().enumerate() {
                    let c = if s & mask != 0 {
                        Complex64::new(0.0, 0.5)
                    } else {
                        Complex64::new(0.0, -0.5)
                    };
                    out[s ^ mask] = c * a;
                }
            }
        }
        Ok(out)
    }

    /// Real kernel W_α of the spin operator: s^x = W_x, s^z = W_z, and
    /// s^y = −i·W_y with W_y real antisymmetric. Keeps ground-state
    /// perturbation sums in real arithmetic: ⟨ψ₀|s_m^α|k⟩⟨k|s_n^α|ψ₀⟩ equals
    /// (W_αψ₀·ψ_k)(W_αψ₀·ψ_k) products for every axis when ψ's are real.
    pub fn apply_spin_real(&self, site: SiteIndex, axis: Axis, v: &[f64]) -> Result<Vec<f64>> {
        let bit = self.site_bit(site)?;
        if v.len() != self.dim() {
            return Err(Error::domain(format!(
                "vector length {} does not match dimension {}",
                v.len(),
                self.dim()
            )));
        }
        let mask = 1usize << bit;
        let mut out = vec![0.0; v.len()];
        match axis {
            Axis::Z => {
                for (s, &a) in v.iter().enumerate() {
                    out[s] = if s & mask != 0 { 0.5 * a } else { -0.5 * a };
                }
            }
            Axis::X => {
                for (s, &a) in v.iter().enumerate() {
                    out[s ^ mask] = 0.5 * a;
                }
            }
            Axis::Y => {
                // W_y|↑⟩ = −(1/2)|↓⟩, W_y|↓⟩ = +(1/2)|↑⟩
                for (s, &a) in v.iter().enumerate() {
                    out[s ^ mask] = if s & mask != 0 { -0.5 * a } else { 0.5 * a };
                }
            }
        }
        Ok(out)
    }
}
