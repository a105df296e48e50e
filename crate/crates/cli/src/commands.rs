//! Subcommand implementations, written against `io::Write` so tests can
//! capture output exactly as a terminal or file would receive it.

use crate::fmt::{fmt_sig, EVAL_SIG};
use crate::parse::{SpecError, Template};
use crate::scan::{csv_cell_fields, parse_grid, region_of, run_scan, CSV_HEADER};
use entwit::measures::concurrence;
use entwit::operator::BipartiteState;
use entwit::verify::{default_trials, run_suite, SUITE_NAMES};
use entwit::witness::{witness_gamma_with_tol, WitnessReport};
use std::io::Write;
use std::path::Path;

fn err<T>(msg: impl Into<String>) -> Result<T, SpecError> {
    Err(SpecError {
        message: msg.into(),
    })
}

fn io_fail(what: &str) -> impl Fn(std::io::Error) -> SpecError + '_ {
    move |e| SpecError {
        message: format!("{what}: {e}"),
    }
}

/// Resolves the RNG seed: `--seed` flag, else the `ENTWIT_SEED` environment
/// variable, else 0.
pub fn resolve_seed(flag: Option<u64>) -> Result<u64, SpecError> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("ENTWIT_SEED") {
        Ok(v) => v.trim().parse().map_err(|_| SpecError {
            message: format!("ENTWIT_SEED must be an unsigned 64-bit integer, found `{v}`"),
        }),
        Err(std::env::VarError::NotPresent) => Ok(0),
        Err(e) => err(format!("ENTWIT_SEED is not readable: {e}")),
    }
}

/// Validates the `--tol` override.
pub fn check_tol(tol: f64) -> Result<f64, SpecError> {
    if tol.is_finite() && tol >= 0.0 {
        Ok(tol)
    } else {
        err(format!("--tol must be a finite nonnegative real, found {tol}"))
    }
}

fn build_state(template: &Template, side: &str) -> Result<BipartiteState, SpecError> {
    let spec = template.build().map_err(|e| SpecError {
        message: format!("{side}: {}", e.message),
    })?;
    spec.build().map_err(|e| SpecError {
        message: format!("{side}: cannot build state: {e}"),
    })
}

/// One aligned output line: name, value at 12 significant digits, verdict.
fn witness_line(report: &WitnessReport, name: &str, value: Option<f64>) -> String {
    match value {
        Some(v) => format!(
            "  {name:<12} = {:<18} {}",
            fmt_sig(v, EVAL_SIG),
            if report.verdict_of(v).is_fired() {
                "fired"
            } else {
                "silent"
            }
        ),
        None => format!("  {name:<12} = n/a"),
    }
}

/// Evaluates the full witness family on one (source, target) pair and prints
/// a human-readable report; with `out`, also writes the pair's CSV cell row.
/// A fired witness proves the source cannot be converted to the target; the
/// exit code is 0 whenever the evaluation itself succeeds.
pub fn cmd_eval(
    rho_spec: &str,
    sigma_spec: &str,
    tol: f64,
    out_path: Option<&Path>,
    w: &mut dyn Write,
) -> Result<(), SpecError> {
    let tol = check_tol(tol)?;
    let rho_template = Template::parse(rho_spec).map_err(|e| SpecError {
        message: format!("--rho: {}", e.message),
    })?;
    let sigma_template = Template::parse(sigma_spec).map_err(|e| SpecError {
        message: format!("--sigma: {}", e.message),
    })?;
    let rho = build_state(&rho_template, "--rho")?;
    let sigma = build_state(&sigma_template, "--sigma")?;
    let report = witness_gamma_with_tol(&rho, &sigma, tol);
    let c_rho = concurrence(&rho).unwrap_or(f64::NAN);
    let c_sigma = concurrence(&sigma).unwrap_or(f64::NAN);

    let fail = io_fail("write failed");
    let dims = |s: &BipartiteState| format!("{}x{}", s.dims().0, s.dims().1);
    writeln!(w, "source: {rho_spec} [dims {}]", dims(&rho)).map_err(&fail)?;
    writeln!(w, "target: {sigma_spec} [dims {}]", dims(&sigma)).map_err(&fail)?;
    writeln!(w).map_err(&fail)?;
    let measure = |name: &str, v: f64| {
        if v.is_nan() {
            format!("  {name:<12} = n/a")
        } else {
            format!("  {name:<12} = {}", fmt_sig(v, EVAL_SIG))
        }
    };
    writeln!(w, "{}", measure("N(rho)", report.n_rho)).map_err(&fail)?;
    writeln!(w, "{}", measure("N(sigma)", report.n_sigma)).map_err(&fail)?;
    writeln!(
        w,
        "{}",
        measure("N~(rho)", report.n_tilde_rho.unwrap_or(f64::NAN))
    )
    .map_err(&fail)?;
    writeln!(w, "{}", measure("C(rho)", c_rho)).map_err(&fail)?;
    writeln!(w, "{}", measure("C(sigma)", c_sigma)).map_err(&fail)?;
    writeln!(w).map_err(&fail)?;
    for (name, value) in [
        ("W_N", Some(report.w_n)),
        ("W_wer_prime", report.w_wer_prime),
        ("W_iso_prime", report.w_iso_prime),
        ("W_wer", report.w_wer),
        ("W_iso", report.w_iso),
        ("W_gamma", Some(report.w_gamma)),
        ("W_2q", report.w_2q),
    ] {
        writeln!(w, "{}", witness_line(&report, name, value)).map_err(&fail)?;
    }
    if let Some(p) = report.wer_prefactor {
        writeln!(
            w,
            "\nnote: W_wer = min{{W_N, {} * W_wer_prime}}",
            fmt_sig(p, EVAL_SIG)
        )
        .map_err(&fail)?;
    }
    if let Some(reason) = report.degenerate {
        writeln!(w, "\nnote: {reason}").map_err(&fail)?;
    }
    let fired: Vec<&str> = report
        .components()
        .iter()
        .filter(|(_, v)| report.verdict_of(*v).is_fired())
        .map(|(n, _)| *n)
        .collect();
    let conc_fired =
        c_rho.is_finite() && c_sigma.is_finite() && c_rho - c_sigma < -report.fired_tol;
    writeln!(w).map_err(&fail)?;
    if fired.is_empty() {
        writeln!(w, "fired: none").map_err(&fail)?;
    } else {
        writeln!(w, "fired: {}", fired.join(", ")).map_err(&fail)?;
    }
    if conc_fired {
        writeln!(
            w,
            "concurrence: C(rho) < C(sigma), so the concurrence monotone excludes the conversion"
        )
        .map_err(&fail)?;
    }
    if fired.is_empty() && !conc_fired {
        writeln!(
            w,
            "verdict: no detector excludes the conversion (inconclusive)"
        )
        .map_err(&fail)?;
    } else {
        writeln!(w, "verdict: conversion source -> target is impossible").map_err(&fail)?;
    }
    writeln!(w, "region: {}", region_of(&report, c_rho, c_sigma)).map_err(&fail)?;

    if let Some(path) = out_path {
        let mut file =
            std::fs::File::create(path).map_err(io_fail("cannot create output file"))?;
        let header = CSV_HEADER
            .strip_prefix("x,y,")
            .expect("header starts with coordinates");
        writeln!(file, "{header}").map_err(io_fail("cannot write output file"))?;
        writeln!(file, "{}", csv_cell_fields(&report, c_rho, c_sigma))
            .map_err(io_fail("cannot write output file"))?;
    }
    Ok(())
}

/// Runs a grid scan and writes the CSV to `out_path` (or to `w` when absent).
pub fn cmd_scan(
    rho_spec: &str,
    sigma_spec: &str,
    grid_spec: &str,
    tol: f64,
    out_path: Option<&Path>,
    w: &mut dyn Write,
) -> Result<(), SpecError> {
    let tol = check_tol(tol)?;
    let rho_template = Template::parse(rho_spec).map_err(|e| SpecError {
        message: format!("--rho: {}", e.message),
    })?;
    let sigma_template = Template::parse(sigma_spec).map_err(|e| SpecError {
        message: format!("--sigma: {}", e.message),
    })?;
    let grid = parse_grid(grid_spec).map_err(|e| SpecError {
        message: format!("--grid: {}", e.message),
    })?;
    match out_path {
        Some(path) => {
            let mut file =
                std::fs::File::create(path).map_err(io_fail("cannot create output file"))?;
            run_scan(&rho_template, &sigma_template, &grid, tol, &mut file)
        }
        None => run_scan(&rho_template, &sigma_template, &grid, tol, w),
    }
}

/// Runs one verification suite, prints its report line, and returns whether
/// the suite passed (exit 0) or found violations (exit 1).
pub fn cmd_verify(
    suite: &str,
    trials: Option<usize>,
    seed: Option<u64>,
    w: &mut dyn Write,
) -> Result<bool, SpecError> {
    let Some(default) = default_trials(suite) else {
        return err(format!(
            "unknown suite `{suite}` (expected one of: {})",
            SUITE_NAMES.join(", ")
        ));
    };
    let trials = trials.unwrap_or(default);
    if trials == 0 {
        return err("--trials must be at least 1");
    }
    let seed = resolve_seed(seed)?;
    let report = run_suite(suite, seed, trials).map_err(|e| SpecError {
        message: format!("suite `{suite}` failed to run: {e}"),
    })?;
    writeln!(w, "{report}").map_err(io_fail("write failed"))?;
    Ok(report.passed())
}
