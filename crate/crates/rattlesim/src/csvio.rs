//! CSV emission: LF line endings, shortest round-trip decimals, empty
//! fields for missing values. Every file re-parses to the exact in-memory
//! values.

use crate::CliError;
use std::fs;
use std::path::Path;

/// Shortest decimal that parses back to the identical f64. Plain notation
/// in the human range, exponent notation outside it; both forms re-parse
/// bit-exactly.
pub fn fmt_f64(x: f64) -> String {
    let a = x.abs();
    if x != 0.0 && !(1e-4..1e16).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

pub fn fmt_opt_f64(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

/// Write `header` then `rows` to `path`, LF-terminated.
pub fn write_csv<I>(path: &Path, header: &str, rows: I) -> Result<(), CliError>
where
    I: IntoIterator<Item = String>,
{
    let mut out = String::with_capacity(4096);
    out.push_str(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| CliError::Io { path: path.display().to_string(), source: e })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting_round_trips_bit_exactly() {
        for &x in &[0.1, 1.0 / 3.0, 1e-300, -0.0, 6.02e23, 1500.0000000000002] {
            let s = fmt_f64(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{x} -> {s}");
            assert!(s.len() <= 24, "{s} unexpectedly long");
        }
        assert_eq!(fmt_opt_f64(None), "");
    }
}
