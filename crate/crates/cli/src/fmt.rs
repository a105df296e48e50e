//! Number formatting for CLI output: shortest round-trip decimals capped at
//! a fixed number of significant digits, locale-independent (dot separator).

/// Significant digits for human-readable evaluation output.
pub const EVAL_SIG: usize = 12;
/// Significant digits for CSV cells.
pub const CSV_SIG: usize = 10;

/// Formats `x` with at most `sig` significant digits, as the shortest string
/// that parses back to the rounded value.
///
/// Magnitudes in [1e-4, 1e15) print positionally (`0.25`, `0.103553390593`);
/// smaller and larger ones use scientific notation (`1.05e-13`) so near-zero
/// residuals stay legible. Zero prints as `0`, non-numbers as `nan`/`inf`.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    assert!(sig >= 1, "need at least one significant digit");
    if x.is_nan() {
        return "nan".into();
    }
    if x == 0.0 {
        return "0".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    let sci = format!("{:.*e}", sig - 1, x);
    let rounded: f64 = sci.parse().expect("scientific notation parses back");
    let abs = rounded.abs();
    if (1e-4..1e15).contains(&abs) {
        // `Display` prints the shortest decimal that round-trips, in
        // positional notation. The `sig`-digit string above also parses to
        // `rounded`, so the shortest form cannot exceed `sig` digits.
        format!("{rounded}")
    } else {
        trim_exp_mantissa(&sci)
    }
}

/// Strips trailing zeros (and a bare trailing dot) from the mantissa of a
/// `LowerExp`-formatted string: `1.50000000000e-13` → `1.5e-13`.
fn trim_exp_mantissa(s: &str) -> String {
    let (mantissa, exp) = s.split_once('e').expect("exponent marker");
    let mantissa = if mantissa.contains('.') {
        mantissa.trim_end_matches('0').trim_end_matches('.')
    } else {
        mantissa
    };
    format!("{mantissa}e{exp}")
}
