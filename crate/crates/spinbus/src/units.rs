//! Presentation-layer unit conversion. The library works in ħ = 1 with
//! energies in units of the bus exchange; these helpers express times in
//! picoseconds for an exchange given in meV.

/// ħ in meV·ps.
pub const HBAR_MEV_PS: f64 = 0.6582119;

/// Convert a time expressed in ħ/E (E the energy unit) to picoseconds, for an
/// energy unit of `energy_mev` meV.
pub fn time_to_ps(t_hbar_over_energy: f64, energy_mev: f64) -> f64 {
    t_hbar_over_energy * HBAR_MEV_PS / energy_mev
}

/// Convert a time in picoseconds to ħ/E units.
pub fn time_from_ps(t_ps: f64, energy_mev: f64) -> f64 {
    t_ps * energy_mev / HBAR_MEV_PS
}
