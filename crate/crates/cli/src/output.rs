use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use crate::Failure;

/// `%g`-style formatting with 6 significant digits.
pub fn format_g(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..6).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{m}e{sign}{:02}", exp.abs());
    }
    let decimals = (5 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Writes to the file when given, stdout otherwise.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    let io_err = |e: io::Error| Failure::Io(e.to_string());
    match path {
        Some(p) => {
            let mut f =
                File::create(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?;
            f.write_all(bytes).map_err(io_err)
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)
                .and_then(|_| out.flush())
                .map_err(io_err)
        }
    }
}
