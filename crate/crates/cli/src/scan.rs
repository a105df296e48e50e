//! Parameter-grid scans: evaluate the witness family over a 2-D grid of
//! states, classify each cell by which detectors fire, and emit CSV.

use crate::fmt::{fmt_sig, CSV_SIG};
use crate::parse::{SpecError, Template};
use entwit::measures::{concurrence, negativity_profile};
use entwit::operator::BipartiteState;
use entwit::witness::{
    target_profile, witness_report_from_profiles, TargetProfile, Verdict, WitnessReport,
};
use std::io::Write;

/// CSV column header of a scan (also used for single-row eval output, minus
/// the two leading coordinates).
pub const CSV_HEADER: &str = "x,y,W_N,W_iso_prime,W_wer_prime,W_gamma,W_2q,C_rho,C_sigma,region";

/// One grid axis: a parameter name swept over `steps` evenly spaced values
/// from `lo` to `hi` inclusive.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl Axis {
    /// The k-th grid value, k ∈ [0, steps).
    pub fn value(&self, k: usize) -> f64 {
        self.lo + (self.hi - self.lo) * k as f64 / (self.steps - 1) as f64
    }
}

/// A two-axis scan grid: x binds the source's free parameter, y the target's.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanGrid {
    pub x: Axis,
    pub y: Axis,
}

fn err<T>(msg: impl Into<String>) -> Result<T, SpecError> {
    Err(SpecError {
        message: msg.into(),
    })
}

/// Parses `x=<name>:<lo>:<hi>:<n>,y=<name>:<lo>:<hi>:<n>`.
pub fn parse_grid(s: &str) -> Result<ScanGrid, SpecError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return err(format!(
            "grid must have exactly two axes `x=...,y=...`, found {} part(s)",
            parts.len()
        ));
    }
    let mut axes = Vec::with_capacity(2);
    for (expected, part) in ["x", "y"].iter().zip(parts.iter()) {
        let (label, body) = match part.split_once('=') {
            Some(kv) => kv,
            None => return err(format!("malformed axis `{part}` (expected {expected}=name:lo:hi:n)")),
        };
        if label != *expected {
            return err(format!(
                "expected axis `{expected}=`, found `{label}=` in `{part}`"
            ));
        }
        let fields: Vec<&str> = body.split(':').collect();
        if fields.len() != 4 {
            return err(format!(
                "axis `{part}` must be {expected}=name:lo:hi:n with 4 fields, found {}",
                fields.len()
            ));
        }
        let name = fields[0].to_string();
        if name.is_empty() {
            return err(format!("axis `{part}` has an empty parameter name"));
        }
        let lo: f64 = fields[1]
            .parse()
            .map_err(|_| SpecError {
                message: format!("bad axis bound `{}` in `{part}`", fields[1]),
            })?;
        let hi: f64 = fields[2]
            .parse()
            .map_err(|_| SpecError {
                message: format!("bad axis bound `{}` in `{part}`", fields[2]),
            })?;
        let steps: usize = fields[3]
            .parse()
            .map_err(|_| SpecError {
                message: format!("bad step count `{}` in `{part}`", fields[3]),
            })?;
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return err(format!("axis `{part}` needs finite lo < hi"));
        }
        if steps < 2 {
            return err(format!("axis `{part}` needs at least 2 steps"));
        }
        axes.push(Axis { name, lo, hi, steps });
    }
    let y = axes.pop().expect("two axes");
    let x = axes.pop().expect("two axes");
    Ok(ScanGrid { x, y })
}

/// Everything a scan needs per distinct state along one axis.
struct AxisState {
    coord: f64,
    state: BipartiteState,
    conc: f64,
}

fn axis_states(
    template: &Template,
    axis: &Axis,
    side: &str,
) -> Result<Vec<AxisState>, SpecError> {
    let free = template.free_params();
    if !free.iter().any(|p| p == &axis.name) {
        return err(format!(
            "{side} spec does not leave `{}` free (unset parameters: {})",
            axis.name,
            if free.is_empty() {
                "none".to_string()
            } else {
                free.join(", ")
            }
        ));
    }
    let mut out = Vec::with_capacity(axis.steps);
    for k in 0..axis.steps {
        let coord = axis.value(k);
        let bound = template.bind(&axis.name, coord)?;
        let spec = bound.build()?;
        let state = spec.build().map_err(|e| SpecError {
            message: format!("{side} state at {}={}: {e}", axis.name, fmt_sig(coord, CSV_SIG)),
        })?;
        let conc = concurrence(&state).unwrap_or(f64::NAN);
        out.push(AxisState { coord, state, conc });
    }
    Ok(out)
}

/// Which detectors exclude the conversion on a cell: the established
/// monotone comparisons (negativity, and concurrence when both states are
/// two-qubit) versus the sub-witnesses that go beyond them.
pub fn region_of(report: &WitnessReport, c_rho: f64, c_sigma: f64) -> &'static str {
    let fired = |v: Option<f64>| v.is_some_and(|v| Verdict::of(v, report.fired_tol).is_fired());
    let mono = fired(Some(report.w_n))
        || (c_rho.is_finite() && c_sigma.is_finite() && c_rho - c_sigma < -report.fired_tol);
    let new = fired(report.w_wer_prime) || fired(report.w_iso_prime) || fired(report.w_2q);
    match (new, mono) {
        (true, true) => "both",
        (true, false) => "new_only",
        (false, true) => "mono_only",
        (false, false) => "none",
    }
}

/// The CSV cell fields `W_N,...,region` shared by scans and single-pair
/// evaluation (everything after the two grid coordinates). Witness values
/// that are undefined for the pair print as `nan`, as do the concurrences
/// for non-two-qubit states.
pub fn csv_cell_fields(report: &WitnessReport, c_rho: f64, c_sigma: f64) -> String {
    let f = |v: Option<f64>| fmt_sig(v.unwrap_or(f64::NAN), CSV_SIG);
    format!(
        "{},{},{},{},{},{},{},{}",
        f(Some(report.w_n)),
        f(report.w_iso_prime),
        f(report.w_wer_prime),
        f(Some(report.w_gamma)),
        f(report.w_2q),
        fmt_sig(c_rho, CSV_SIG),
        fmt_sig(c_sigma, CSV_SIG),
        region_of(report, c_rho, c_sigma),
    )
}

/// Runs the scan and writes CSV to `out`. Row order is x-major: the first
/// `y.steps` rows share the first x value.
pub fn run_scan(
    rho_template: &Template,
    sigma_template: &Template,
    grid: &ScanGrid,
    fired_tol: f64,
    out: &mut dyn Write,
) -> Result<(), SpecError> {
    let sources = axis_states(rho_template, &grid.x, "source")?;
    let targets = axis_states(sigma_template, &grid.y, "target")?;

    let source_profiles: Vec<_> = sources
        .iter()
        .map(|s| negativity_profile(&s.state, fired_tol))
        .collect();
    let target_profiles: Vec<TargetProfile> =
        targets.iter().map(|t| target_profile(&t.state)).collect();

    let mut w = std::io::BufWriter::new(out);
    let fail = |e: std::io::Error| SpecError {
        message: format!("write failed: {e}"),
    };
    writeln!(w, "{CSV_HEADER}").map_err(fail)?;
    for (src, src_profile) in sources.iter().zip(source_profiles.iter()) {
        let rho_dims = src.state.dims();
        for (tgt, tgt_profile) in targets.iter().zip(target_profiles.iter()) {
            let report =
                witness_report_from_profiles(rho_dims, src_profile, tgt_profile, fired_tol);
            writeln!(
                w,
                "{},{},{}",
                fmt_sig(src.coord, CSV_SIG),
                fmt_sig(tgt.coord, CSV_SIG),
                csv_cell_fields(&report, src.conc, tgt.conc),
            )
            .map_err(fail)?;
        }
    }
    w.flush().map_err(fail)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parses_and_spaces_evenly() {
        let g = parse_grid("x=q:0:1:5,y=l0:0.5:1:3").unwrap();
        assert_eq!(g.x.name, "q");
        assert_eq!(g.x.value(0), 0.0);
        assert_eq!(g.x.value(4), 1.0);
        assert!((g.x.value(1) - 0.25).abs() < 1e-15);
        assert_eq!(g.y.steps, 3);
    }

    #[test]
    fn grid_rejects_malformed_input() {
        for bad in [
            "x=q:0:1:5",
            "x=q:0:1:5,y=l0:0.5:1:3,z=b:0:1:2",
            "y=q:0:1:5,x=l0:0.5:1:3",
            "x=q:1:0:5,y=l0:0.5:1:3",
            "x=q:0:1:1,y=l0:0.5:1:3",
            "x=q:0:one:5,y=l0:0.5:1:3",
            "x=q:0:1,y=l0:0.5:1:3",
            "x=:0:1:5,y=l0:0.5:1:3",
        ] {
            assert!(parse_grid(bad).is_err(), "accepted {bad}");
        }
    }

    #[test]
    fn scan_reports_region_structure() {
        // Tiny version of the pure-source/Werner-target scan: the axis ends
        // are anchors (α = −1 entangled target, α = 0 separable target).
        let rho = Template::parse("pure d=2").unwrap();
        let sigma = Template::parse("werner d=3").unwrap();
        let grid = parse_grid("x=l0:0.5:1:3,y=alpha:-1:0:3").unwrap();
        let mut buf = Vec::new();
        run_scan(&rho, &sigma, &grid, 1e-9, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 1 + 9);
        // Separable targets exclude nothing.
        for line in &lines[1..] {
            if line.split(',').nth(1) == Some("0") {
                assert!(line.ends_with(",none"), "unexpected region in {line}");
            }
        }
    }

    #[test]
    fn scan_rejects_axis_not_free_in_spec() {
        let rho = Template::parse("pure d=2 l0=0.7 l1=0.3").unwrap();
        let sigma = Template::parse("werner d=3").unwrap();
        let grid = parse_grid("x=l0:0.5:1:3,y=alpha:-1:0:3").unwrap();
        let mut buf = Vec::new();
        let e = run_scan(&rho, &sigma, &grid, 1e-9, &mut buf).unwrap_err();
        assert!(e.message.contains("does not leave `l0` free"), "{e}");
    }
}
