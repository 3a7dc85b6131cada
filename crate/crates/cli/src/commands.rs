use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use weberbox::acceptance::{self, AcceptanceOptions};
use weberbox::asymptotic::{sandwich_check, series_s};
use weberbox::bathtub::{assemble_wavefunction, default_reach, eigenvalues, spectrum_sweep};
use weberbox::hydrogen::{growth_prefactor, is_terminating, radial_asymptotic, xi_from_energy};
use weberbox::numerov::{coulomb_piecewise_levels_with, RadialCoulomb};

use crate::args::{AsymptoticsArgs, HydrogenArgs, OutputArgs, SpectrumArgs, VerifyArgs, WavefunctionArgs};
use crate::table::{self, Cell, Table};

/// Largest number of grid points any sweep will accept.
const MAX_POINTS: usize = 1_000_000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Numeric(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Numeric(_) | CliError::Io(_) => 3,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn require(ok: bool, msg: &str) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(usage(msg))
    }
}

/// `start, start + step, ...` up to `end` (inclusive within a small slack),
/// each point computed from its index so no rounding accumulates.
fn linear_grid(start: f64, end: f64, step: f64, what: &str) -> Result<Vec<f64>, CliError> {
    require(start.is_finite() && end.is_finite(), &format!("{what} range must be finite"))?;
    require(step.is_finite() && step > 0.0, &format!("{what} step must be positive"))?;
    require(end >= start, &format!("{what} range is empty"))?;
    let count = ((end - start) / step + 1e-9).floor() + 1.0;
    require(count <= MAX_POINTS as f64, &format!("{what} grid exceeds {MAX_POINTS} points"))?;
    Ok((0..count as usize).map(|i| start + i as f64 * step).collect())
}

fn emit(table: &Table, out: &OutputArgs, stem: &str, meta: Value) -> Result<(), CliError> {
    let path = out.path(stem);
    table.write(table::sink(&path)?, out.format, meta)?;
    log::info!("wrote {} rows to {}", table.rows.len(), path.display());
    Ok(())
}

fn meta(command: &str, parameters: Value, extra: Value) -> Value {
    let mut m = json!({
        "command": command,
        "version": env!("CARGO_PKG_VERSION"),
        "parameters": parameters,
    });
    if let (Value::Object(m), Value::Object(extra)) = (&mut m, extra) {
        m.extend(extra);
    }
    m
}

pub fn spectrum(a: &SpectrumArgs) -> Result<(), CliError> {
    require(a.l_min >= 0.0, "--l-min must be non-negative")?;
    let ls = linear_grid(a.l_min, a.l_max, a.l_step, "l")?;
    let rows = spectrum_sweep(&ls, a.n_max).map_err(|e| CliError::Numeric(format!("spectrum: {e}")))?;
    let mut t = Table::new(vec!["l", "n", "parity", "energy", "ratio_to_ground"]);
    for r in rows {
        t.push(vec![
            r.l.into(),
            r.n.into(),
            r.parity.as_str().into(),
            r.energy.into(),
            r.ratio_to_ground.into(),
        ]);
    }
    let meta = meta(
        "spectrum",
        json!({ "l_min": a.l_min, "l_max": a.l_max, "l_step": a.l_step, "n_max": a.n_max }),
        json!({ "tolerances": { "energy": 1e-10, "matching_residual": 1e-8 }, "grid": { "l_points": ls.len() } }),
    );
    emit(&t, &a.out, "spectrum", meta)
}

pub fn wavefunction(a: &WavefunctionArgs) -> Result<(), CliError> {
    require(a.l.is_finite() && a.l >= 0.0, "--l must be non-negative")?;
    require(a.h.is_finite() && a.h > 0.0, "--h must be positive")?;
    let states = eigenvalues(a.l, a.n).map_err(|e| CliError::Numeric(format!("eigenstate n = {} at l = {}: {e}", a.n, a.l)))?;
    let state = states[a.n];
    let e = state.energy.value();
    let z_max = match a.z_max {
        Some(z) => {
            require(z.is_finite() && z > 0.0, "--z-max must be positive")?;
            let steps = 2.0 * z / a.h;
            require(
                (steps - steps.round()).abs() <= 1e-9 * steps.max(1.0),
                "2 * z-max must be a whole number of steps h",
            )?;
            z
        }
        None => (default_reach(e, a.l) / a.h).ceil() * a.h,
    };
    require(2.0 * z_max / a.h <= MAX_POINTS as f64, "grid too fine")?;
    let mut wf = assemble_wavefunction(&state, -z_max, z_max, a.h).map_err(|e| CliError::Numeric(format!("wavefunction: {e}")))?;
    if a.max_norm {
        wf = wf.max_normalized();
    }
    let mut t = Table::new(vec!["z", "psi"]);
    // symmetric grid: z_i = (i - steps/2) h rounds once, so z = 0.01 prints as such
    let half = (wf.values.len() - 1) as f64 / 2.0;
    for (i, v) in wf.values.iter().enumerate() {
        t.push(vec![((i as f64 - half) * a.h).into(), (*v).into()]);
    }
    let meta = meta(
        "wavefunction",
        json!({ "l": a.l, "n": a.n, "z_max": z_max, "h": a.h, "max_norm": a.max_norm }),
        json!({
            "state": {
                "energy": e,
                "parity": state.parity.as_str(),
                "nodes": wf.sign_changes(),
                "norm": wf.norm,
                "normalization": if a.max_norm { "max" } else { "l2" },
            },
            "grid": { "z_min": -z_max, "z_max": z_max, "h": a.h, "points": wf.grid.len() },
        }),
    );
    emit(&t, &a.out, "wavefunction", meta)
}

pub fn asymptotics(a: &AsymptoticsArgs) -> Result<(), CliError> {
    require(!a.r_list.is_empty(), "--r-list is empty")?;
    require(a.r_list.iter().all(|r| r.is_finite()), "every r must be finite")?;
    require(a.omega_min > 0.0, "--omega-min must be positive")?;
    let omegas = linear_grid(a.omega_min, a.omega_max, a.omega_step, "omega")?;
    if a.sandwich {
        require(a.r_list.iter().all(|&r| r > 0.0), "--sandwich needs every r > 0")?;
        require(a.lambda > 0.0 && a.lambda < 1.0, "--lambda must lie in (0, 1)")?;
        require(a.sigma > 1.0 && a.sigma.is_finite(), "--sigma must exceed 1")?;
    }
    let points: Vec<(f64, f64)> = omegas
        .iter()
        .flat_map(|&w| a.r_list.iter().map(move |&r| (w, r)))
        .collect();
    let rows: Result<Vec<Vec<Cell>>, CliError> = points
        .par_iter()
        .map(|&(w, r)| {
            let rep = series_s(w, r).map_err(|e| CliError::Numeric(format!("omega = {w}, r = {r}: {e}")))?;
            let mut row: Vec<Cell> = vec![w.into(), r.into(), rep.normalized_ratio.into()];
            if a.sandwich {
                let s = sandwich_check(w, r, a.lambda, a.sigma)
                    .map_err(|e| CliError::Numeric(format!("omega = {w}, r = {r}: {e}")))?;
                row.extend([s.head_vanishes, s.tail_vanishes, s.lower, s.upper].map(Cell::from));
            }
            Ok(row)
        })
        .collect();
    let mut header = vec!["omega", "r", "normalized_ratio"];
    if a.sandwich {
        header.extend(["head", "tail", "lower", "upper"]);
    }
    let mut t = Table::new(header);
    rows?.into_iter().for_each(|r| t.push(r));
    let meta = meta(
        "asymptotics",
        json!({
            "r_list": a.r_list,
            "omega_min": a.omega_min, "omega_max": a.omega_max, "omega_step": a.omega_step,
            "sandwich": a.sandwich, "lambda": a.lambda, "sigma": a.sigma,
        }),
        json!({ "tolerances": { "series_tail": 1e-18 } }),
    );
    emit(&t, &a.out, "asymptotics", meta)
}

pub fn hydrogen(a: &HydrogenArgs) -> Result<(), CliError> {
    if a.piecewise {
        piecewise_levels(a)
    } else {
        growth_table(a)
    }
}

fn growth_table(a: &HydrogenArgs) -> Result<(), CliError> {
    let l = a.angular_momentum;
    let xi = a.xi.ok_or_else(|| usage("--xi is required without --piecewise"))?;
    let rho_max = a.rho_max.ok_or_else(|| usage("--rho-max is required without --piecewise"))?;
    require(xi.is_finite(), "--xi must be finite")?;
    if is_terminating(l, xi) {
        return Err(usage(format!(
            "xi = {xi} terminates the series for L = {l}; the growth law does not apply"
        )));
    }
    require(a.rho_min >= 1.0, "--rho-min must be at least 1")?;
    let rhos = linear_grid(a.rho_min, rho_max, a.rho_step, "rho")?;
    let rows: Result<Vec<Vec<Cell>>, CliError> = rhos
        .par_iter()
        .map(|&rho| {
            let r = radial_asymptotic(rho, l, xi, 1.0).map_err(|e| CliError::Numeric(format!("rho = {rho}: {e}")))?;
            Ok(vec![
                rho.into(),
                r.series_value().into(),
                r.predicted().into(),
                r.ratio.into(),
                r.normalized_ratio.into(),
                r.ln_series.into(),
                r.ln_predicted.into(),
            ])
        })
        .collect();
    let mut t = Table::new(vec![
        "rho",
        "series_value",
        "predicted",
        "ratio",
        "normalized_ratio",
        "ln_series_value",
        "ln_predicted",
    ]);
    rows?.into_iter().for_each(|r| t.push(r));
    let meta = meta(
        "hydrogen",
        json!({ "L": l, "xi": xi, "rho_min": a.rho_min, "rho_max": rho_max, "rho_step": a.rho_step, "c0": 1.0 }),
        json!({ "prefactor": growth_prefactor(l, xi).ok() }),
    );
    emit(&t, &a.out, "hydrogen", meta)
}

fn piecewise_levels(a: &HydrogenArgs) -> Result<(), CliError> {
    let l = a.angular_momentum;
    require(a.k.is_finite() && a.k > 0.0, "--k must be positive")?;
    require(a.r_core.is_finite() && a.r_core >= 0.0, "--R must be non-negative")?;
    require(a.levels >= 1, "--levels must be at least 1")?;
    require(a.h.is_finite() && a.h > 0.0 && a.h < 0.5, "--h must lie in (0, 0.5)")?;
    let pot = RadialCoulomb::new(a.k, a.r_core, l).map_err(|e| usage(e.to_string()))?;
    let levels = coulomb_piecewise_levels_with(a.k, a.r_core, l, a.levels, a.h)
        .map_err(|e| CliError::Numeric(format!("piecewise Coulomb levels: {e}")))?;
    let mut t = Table::new(vec!["N", "L", "energy", "xi", "hydrogen_energy", "mismatch", "converged"]);
    for (radial, s) in levels.iter().enumerate() {
        let e = s.energy.value();
        t.push(vec![
            radial.into(),
            l.into(),
            e.into(),
            xi_from_energy(a.k, e).into(),
            pot.hydrogen_level(radial + l as usize + 1).into(),
            s.mismatch.into(),
            s.converged.into(),
        ]);
    }
    let meta = meta(
        "hydrogen",
        json!({ "piecewise": true, "k": a.k, "R": a.r_core, "L": l, "levels": a.levels, "h": a.h }),
        json!({
            "units": "-u'' + V_eff u = E u; pure Coulomb levels are -k^2/(4 n^2) and xi = k / sqrt(-E)",
            "levels_found": levels.len(),
        }),
    );
    emit(&t, &a.out, "hydrogen_levels", meta)
}

pub fn verify(a: &VerifyArgs) -> Result<(), CliError> {
    let opts = AcceptanceOptions { quick: a.quick };
    let outcomes = acceptance::run_all(opts);
    for o in &outcomes {
        println!("{}", o.line());
    }
    let comparisons = acceptance::oracle_comparisons(acceptance::oracle_lengths(opts), 4)
        .map_err(CliError::Numeric)?;
    let mut t = Table::new(vec!["l", "n", "method_a", "method_b", "value_a", "value_b", "abs_diff"]);
    for c in &comparisons {
        t.push(vec![
            c.l.into(),
            c.n.into(),
            "series_matching".into(),
            "numerov_shooting".into(),
            c.series.into(),
            c.numerov.into(),
            c.abs_diff.into(),
        ]);
    }
    t.write_csv(table::sink(&a.comparison)?)?;

    let failed: Vec<String> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| format!("{}. {}", o.id, o.name))
        .collect();
    let report = json!({
        "meta": meta("verify", json!({ "quick": a.quick }), json!({})),
        "passed": failed.is_empty(),
        "criteria": outcomes,
        "comparison": comparisons,
    });
    table::write_json(&mut table::sink(&a.output)?, &report)?;
    let passed = outcomes.len() - failed.len();
    println!("{passed}/{} checks passed", outcomes.len());
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(failed.join("; ")))
    }
}
