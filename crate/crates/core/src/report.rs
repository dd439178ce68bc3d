//! Number formatting and artifact writing shared by the CSV/JSON reports.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::{extremal_distance_fd, extremal_distance_grotzsch, grotzsch_mu, GridDomain};

/// `x` with 12 significant digits; `inf`/`-inf` for infinities.
pub fn fmt_sig12(x: f64) -> String {
    fmt_sig(x, 12)
}

pub fn fmt_sig(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    let s = if (-5..15).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}"))
    } else {
        let s = format!("{x:.prec$e}", prec = digits - 1);
        match s.split_once('e') {
            Some((m, e)) => format!("{}e{e}", trim_zeros(m)),
            None => s,
        }
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// Writes `bytes` to a sibling temporary file and renames it over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let name = path.file_name().ok_or_else(|| Error::Io(format!("{} is not a file path", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Pretty JSON with a trailing newline.
pub fn json_bytes<T: Serialize + ?Sized>(value: &T) -> Result<Vec<u8>> {
    let mut out = serde_json::to_vec_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    out.push(b'\n');
    Ok(out)
}

/// One row of the Grötzsch invariant report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InvariantRow {
    pub r: f64,
    pub mu: f64,
    pub lambda_closed: f64,
    pub lambda_fd: f64,
    pub relerr: f64,
}

/// Closed-form and grid extremal distances of the Grötzsch ring at each `r`
/// on an `n`-interval grid.
pub fn invariant_rows(radii: &[f64], n: usize) -> Result<Vec<InvariantRow>> {
    radii
        .iter()
        .map(|&r| {
            let lambda_closed = extremal_distance_grotzsch(r)?;
            let lambda_fd = extremal_distance_fd(&GridDomain::grotzsch(r, n)?)?.lambda;
            Ok(InvariantRow {
                r,
                mu: grotzsch_mu(r)?,
                lambda_closed,
                lambda_fd,
                relerr: (lambda_fd - lambda_closed).abs() / lambda_closed,
            })
        })
        .collect()
}
