//! The eight CLI commands: spectrum and figure-data sweeps, γ queries, gate
//! error, the adiabatic check, and the oracle validation suite.

use rayon::prelude::*;

use crate::cli::config::{GridSpec, SweepConfig};
use crate::cli::table::{Cell, ResultTable};
use crate::effective::{
    antiferro_ferro_profile, compute_coupling, gamma_resolvent, gamma_spectrum_sum, Backend,
};
use crate::error::{Error, Result};
use crate::gates;
use crate::hilbert::{Axis, NodeLabel};
use crate::ladder::build_hamiltonian;
use crate::oracle;
use crate::spectra::{analytic_spectrum_l2, full_spectrum, ground_and_gap};
use crate::units;

fn metadata(command: &str, cfg: &SweepConfig, backend: Backend) -> serde_json::Value {
    serde_json::json!({
        "command": command,
        "version": env!("CARGO_PKG_VERSION"),
        "backend": backend.name(),
        "config": serde_json::to_value(cfg).unwrap_or(serde_json::Value::Null),
    })
}

/// Eigenvalues of the configured ladder; at L=2 the analytic levels and the
/// analytic−numeric differences ride along.
pub fn cmd_spectrum(cfg: &SweepConfig) -> Result<ResultTable> {
    let spec = cfg.ladder_spec(2, 1.0, 1.0)?;
    let backend = cfg.backend()?;
    let h = build_hamiltonian(&spec)?;
    let spectrum = full_spectrum(&h)?;
    let analytic = if spec.rungs == 2 {
        Some(analytic_spectrum_l2(spec.delta, spec.exchange)?.eigenvalues())
    } else {
        None
    };
    let mut table = if analytic.is_some() {
        ResultTable::new(
            &["index", "sector_sz", "energy", "analytic", "abs_diff"],
            metadata("spectrum", cfg, backend),
        )
    } else {
        ResultTable::new(
            &["index", "sector_sz", "energy"],
            metadata("spectrum", cfg, backend),
        )
    };
    for k in 0..spectrum.len() {
        let e = spectrum.eigenvalue(k);
        let mut row = vec![
            Cell::from(k),
            Cell::from(spectrum.sector_sz(k) as i64),
            Cell::from(e),
        ];
        if let Some(ref a) = analytic {
            row.push(Cell::from(a[k]));
            row.push(Cell::from((a[k] - e).abs()));
        }
        table.push_row(row);
    }
    Ok(table)
}

/// Δ-sweep of γ^x_{1,2}, γ^z_{1,2} and Δ_eff at L=2, J=10, J_A=J_B=1.
pub fn cmd_fig1(cfg: &SweepConfig) -> Result<ResultTable> {
    let backend = cfg.backend()?;
    let grid = cfg.delta_grid.unwrap_or(GridSpec {
        start: 0.1,
        stop: 1.0,
        step: 0.05,
    });
    grid.validate("delta_grid")?;
    let [m, n] = cfg.node_pair([1, 2]);
    let (j_a, j_b) = cfg.couplings(1.0);
    let j = cfg.ladder.j.unwrap_or(10.0);
    let l = cfg.ladder.l.unwrap_or(2);

    let points: Result<Vec<(f64, f64, f64, f64)>> = grid
        .values()
        .par_iter()
        .map(|&delta| {
            let spec = crate::ladder::LadderSpec::new(l, j, delta)?;
            let c = compute_coupling(&spec, NodeLabel(m), NodeLabel(n), j_a, j_b, backend)?;
            Ok((delta, c.gamma_x, c.gamma_z, c.delta_eff))
        })
        .collect();
    let mut table = ResultTable::new(
        &["delta", "gamma_x", "gamma_z", "delta_eff"],
        metadata("fig1", cfg, backend),
    );
    for (delta, gx, gz, deff) in points? {
        table.push_row(vec![delta.into(), gx.into(), gz.into(), deff.into()]);
    }
    Ok(table)
}

/// Distance profile of γ^x_{1,n} at L=6, Δ=0.2 and the L-sweep of J^x_{1,2}.
/// Returns (profile table, L-sweep table).
pub fn cmd_fig2(cfg: &SweepConfig) -> Result<(ResultTable, ResultTable)> {
    let backend = cfg.backend()?;
    let (j_a, j_b) = cfg.couplings(1.0);
    let j = cfg.ladder.j.unwrap_or(10.0);
    let delta = cfg.ladder.delta.unwrap_or(0.2);
    let l = cfg.ladder.l.unwrap_or(6);
    let [m, _] = cfg.node_pair([1, 2]);

    let spec = crate::ladder::LadderSpec::new(l, j, delta)?;
    let profile = antiferro_ferro_profile(&spec, NodeLabel(m), j_a, j_b, backend)?;
    let mut table = ResultTable::new(
        &["n", "distance", "gamma_x", "sign"],
        metadata("fig2-profile", cfg, backend),
    );
    for p in &profile {
        table.push_row(vec![
            p.n.into(),
            p.distance.into(),
            p.gamma_x.into(),
            Cell::Int(if p.gamma_x >= 0.0 { 1 } else { -1 }),
        ]);
    }

    let [l_min, l_max] = cfg.l_range.unwrap_or([2, 6]);
    if l_min < 2 || l_max < l_min {
        return Err(Error::config(format!(
            "l_range [{l_min}, {l_max}] must satisfy 2 ≤ min ≤ max"
        )));
    }
    let sweep: Result<Vec<(usize, f64)>> = (l_min..=l_max)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&lv| {
            let spec = crate::ladder::LadderSpec::new(lv, j, delta)?;
            let c = compute_coupling(&spec, NodeLabel(1), NodeLabel(2), j_a, j_b, backend)?;
            Ok((lv, c.exchange(Axis::X)))
        })
        .collect();
    let mut lsweep = ResultTable::new(&["l", "exchange_x"], metadata("fig2-lsweep", cfg, backend));
    for (lv, jx) in sweep? {
        lsweep.push_row(vec![lv.into(), jx.into()]);
    }
    Ok((table, lsweep))
}

/// Fluctuation-error map on the (δ_m, δ_n) grid at L=4, Δ=0.2.
pub fn cmd_fig3(cfg: &SweepConfig) -> Result<ResultTable> {
    let backend = cfg.backend()?;
    let grid = cfg.fluct_grid.unwrap_or(GridSpec {
        start: -0.005,
        stop: 0.005,
        step: 0.0005,
    });
    grid.validate("fluct_grid")?;
    let (j_a, j_b) = cfg.couplings(1.0);
    let spec = cfg.ladder_spec(4, 10.0, 0.2)?;
    let [m, n] = cfg.node_pair([1, 2]);
    let reference = compute_coupling(&spec, NodeLabel(m), NodeLabel(n), j_a, j_b, backend)?;

    let deltas = grid.values();
    let mut pairs = Vec::with_capacity(deltas.len() * deltas.len());
    for &dm in &deltas {
        for &dn in &deltas {
            pairs.push((dm, dn));
        }
    }
    let rows: Result<Vec<Vec<Cell>>> = pairs
        .par_iter()
        .map(|&(dm, dn)| {
            let report = gates::gate_error_given_reference(&spec, &reference, dm, dn, backend)?;
            let log10 = if report.n_formula > 0.0 {
                report.n_formula.log10()
            } else {
                f64::NEG_INFINITY
            };
            Ok(vec![
                dm.into(),
                dn.into(),
                report.delta_x.into(),
                report.delta_z.into(),
                report.n_formula.into(),
                report.n_direct.into(),
                report.n_direct_raw.into(),
                log10.into(),
            ])
        })
        .collect();
    let mut table = ResultTable::new(
        &[
            "delta_m",
            "delta_n",
            "delta_x",
            "delta_z",
            "n_formula",
            "n_direct",
            "n_direct_raw",
            "log10_n_formula",
        ],
        metadata("fig3", cfg, backend),
    );
    for row in rows? {
        table.push_row(row);
    }
    Ok(table)
}

/// γ^α for the configured node pair, all axes, on the chosen backend.
pub fn cmd_gamma(cfg: &SweepConfig) -> Result<ResultTable> {
    let backend = cfg.backend()?;
    let spec = cfg.ladder_spec(2, 1.0, 1.0)?;
    let [m, n] = cfg.node_pair([1, 2]);
    let h = build_hamiltonian(&spec)?;
    let mut table = ResultTable::new(
        &["m", "n", "axis", "gamma", "backend"],
        metadata("gamma", cfg, backend),
    );
    match backend {
        Backend::SpectrumSum => {
            let spectrum = full_spectrum(&h)?;
            for axis in Axis::ALL {
                let g = gamma_spectrum_sum(&spectrum, NodeLabel(m), NodeLabel(n), axis)?;
                table.push_row(vec![
                    m.into(),
                    n.into(),
                    axis.name().into(),
                    g.into(),
                    backend.name().into(),
                ]);
            }
        }
        Backend::Resolvent => {
            let ground = ground_and_gap(&h)?;
            for axis in Axis::ALL {
                let g = gamma_resolvent(&h, &ground, NodeLabel(m), NodeLabel(n), axis)?;
                table.push_row(vec![
                    m.into(),
                    n.into(),
                    axis.name().into(),
                    g.into(),
                    backend.name().into(),
                ]);
            }
        }
    }
    Ok(table)
}

/// One fluctuation point: the full gate-error report.
pub fn cmd_gate_error(cfg: &SweepConfig) -> Result<ResultTable> {
    let backend = cfg.backend()?;
    let spec = cfg.ladder_spec(4, 10.0, 0.2)?;
    let [m, n] = cfg.node_pair([1, 2]);
    let (j_a, j_b) = cfg.couplings(1.0);
    let [dm, dn] = cfg.fluctuations.unwrap_or([0.001, -0.001]);
    let report = gates::gate_error(&spec, NodeLabel(m), NodeLabel(n), dm, dn, j_a, j_b, backend)?;
    let mut table = ResultTable::new(
        &[
            "delta_m",
            "delta_n",
            "delta_x",
            "delta_z",
            "n_formula",
            "n_direct",
            "n_direct_raw",
            "t_c",
            "t_c_ps",
        ],
        metadata("gate-error", cfg, backend),
    );
    let t_c_ps = cfg
        .energy_scale_mev
        .map(|mev| units::time_to_ps(report.t_c, mev))
        .unwrap_or(f64::NAN);
    table.push_row(vec![
        report.delta_m.into(),
        report.delta_n.into(),
        report.delta_x.into(),
        report.delta_z.into(),
        report.n_formula.into(),
        report.n_direct.into(),
        report.n_direct_raw.into(),
        report.t_c.into(),
        t_c_ps.into(),
    ]);
    Ok(table)
}

/// The adiabatic criterion for the configured pair and couplings.
pub fn cmd_adiabatic(cfg: &SweepConfig) -> Result<ResultTable> {
    let backend = cfg.backend()?;
    let spec = cfg.ladder_spec(2, 1.0, 1.0)?;
    let [m, n] = cfg.node_pair([1, 2]);
    let (j_a, j_b) = cfg.couplings(spec.exchange / 10.0);
    let report = gates::adiabatic_check(&spec, NodeLabel(m), NodeLabel(n), j_a, j_b, backend)?;
    let mut table = ResultTable::new(
        &[
            "gate_time",
            "gap",
            "product",
            "bound_product",
            "ratio",
            "pass",
            "gate_time_ps",
        ],
        metadata("adiabatic", cfg, backend),
    );
    let t_ps = cfg
        .energy_scale_mev
        .map(|mev| units::time_to_ps(report.gate_time, mev))
        .unwrap_or(f64::NAN);
    table.push_row(vec![
        report.gate_time.into(),
        report.gap.into(),
        report.product.into(),
        report.bound_product.into(),
        report.ratio.into(),
        Cell::Int(report.pass as i64),
        t_ps.into(),
    ]);
    Ok(table)
}

/// Oracle suite: effective-vs-exact splittings and scaling, gate synthesis
/// distances, golden γ values from both backends, the adiabatic ratio.
/// Returns the table plus the overall pass flag.
pub fn cmd_validate(cfg: &SweepConfig) -> Result<(ResultTable, bool)> {
    let backend = cfg.backend()?;
    let spec = cfg.ladder_spec(2, 1.0, 1.0)?;
    let [m, n] = cfg.node_pair([1, 2]);
    let j = spec.exchange;
    let (j_a, j_b) = cfg.couplings(j / 100.0);
    let tol_split = cfg.tolerances.splitting_rel.unwrap_or(0.05);
    let tol_gate = cfg.tolerances.gate_distance.unwrap_or(1e-8);
    let tol_backend = cfg.tolerances.backend_agreement.unwrap_or(1e-8);

    let mut table = ResultTable::new(
        &["check", "measured", "threshold", "pass"],
        metadata("validate", cfg, backend),
    );
    let mut all = true;
    let push = |table: &mut ResultTable, name: &str, measured: f64, threshold: f64, pass: bool| {
        table.push_row(vec![
            name.into(),
            measured.into(),
            threshold.into(),
            Cell::Int(pass as i64),
        ]);
        pass
    };

    // 1: effective model vs exact quadruplet splittings
    let v = oracle::validate_effective_spectrum(&spec, NodeLabel(m), NodeLabel(n), j_a, j_b)?;
    all &= push(
        &mut table,
        "effective_vs_exact_splitting_rel",
        v.max_rel_error,
        tol_split,
        v.max_rel_error < tol_split,
    );
    // 2: discrepancy shrinks when the coupling halves
    let v_half = oracle::validate_effective_spectrum(
        &spec,
        NodeLabel(m),
        NodeLabel(n),
        j_a / 2.0,
        j_b / 2.0,
    )?;
    let ratio = v.max_rel_error / v_half.max_rel_error;
    all &= push(
        &mut table,
        "splitting_error_scaling_ratio",
        ratio,
        8.0,
        (2.0..=8.0).contains(&ratio),
    );
    // 3: gate synthesis at the configured anisotropy
    let coupling = compute_coupling(&spec, NodeLabel(m), NodeLabel(n), 1.0, 1.0, backend)?;
    let cnot = gates::cnot(coupling.gamma_x, coupling.gamma_z, 1.0, 1.0)?;
    let d_cnot = cnot.distance_up_to_phase(&gates::cnot_target());
    all &= push(
        &mut table,
        "cnot_distance",
        d_cnot,
        tol_gate,
        d_cnot <= tol_gate,
    );
    let cpf = gates::cpf(coupling.gamma_x, coupling.gamma_z, 1.0, 1.0)?;
    let d_cpf = cpf.distance_up_to_phase(&gates::cpf_target());
    all &= push(
        &mut table,
        "cpf_distance",
        d_cpf,
        tol_gate,
        d_cpf <= tol_gate,
    );
    // 4: isotropic swap
    let iso = crate::ladder::LadderSpec::new(spec.rungs, j, 1.0)?;
    let ciso = compute_coupling(&iso, NodeLabel(m), NodeLabel(n), 1.0, 1.0, backend)?;
    let ts = gates::swap_time(ciso.gamma_x, 1.0, 1.0)?;
    let swap = gates::evolve_effective(ciso.gamma_x, ciso.gamma_z, 1.0, 1.0, ts)?;
    let d_swap = swap.distance_up_to_phase(&gates::swap_target());
    all &= push(&mut table, "swap_distance", d_swap, 1e-10, d_swap <= 1e-10);
    // 5: golden γ from both backends at Δ=1, L=2
    let gold = crate::ladder::LadderSpec::new(2, j, 1.0)?;
    let sum = compute_coupling(
        &gold,
        NodeLabel(1),
        NodeLabel(2),
        1.0,
        1.0,
        Backend::SpectrumSum,
    )?;
    let res = compute_coupling(
        &gold,
        NodeLabel(1),
        NodeLabel(2),
        1.0,
        1.0,
        Backend::Resolvent,
    )?;
    let worst_gold = (sum.gamma_x - 1.0 / (6.0 * j))
        .abs()
        .max((res.gamma_x - 1.0 / (6.0 * j)).abs());
    all &= push(
        &mut table,
        "golden_gamma_error",
        worst_gold,
        1e-10,
        worst_gold < 1e-10,
    );
    let agree = (sum.gamma_x - res.gamma_x)
        .abs()
        .max((sum.gamma_z - res.gamma_z).abs());
    all &= push(
        &mut table,
        "backend_agreement",
        agree,
        tol_backend,
        agree < tol_backend,
    );
    // 6: adiabatic ratio at J_A=J_B=J/10
    let adiabatic = gates::adiabatic_check(
        &iso,
        NodeLabel(m),
        NodeLabel(n),
        j / 10.0,
        j / 10.0,
        backend,
    )?;
    all &= push(
        &mut table,
        "adiabatic_ratio",
        adiabatic.ratio,
        200.0,
        (100.0..=200.0).contains(&adiabatic.ratio) && adiabatic.pass,
    );
    Ok((table, all))
}
