//! Recorded numeric values produced by this crate's own quadrature, stored as
//! tab-delimited text with 12 significant digits.
//!
//! Two tables live under `crates/core/fixtures/`: SWKB deviations of the Quesne
//! extension over a (λ, n) grid, and a key/value list of other reference numbers.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::catalog::{lookup, Params};
use crate::error::{Error, Result};
use crate::extended::{self, eta};
use crate::quantization::{self, Condition};

pub const DEVIATIONS_FILE: &str = "extended_deviations.tsv";
pub const REFERENCES_FILE: &str = "reference_values.tsv";

/// Quadrature tolerance used when generating fixtures.
pub const FIXTURE_TOL: f64 = 1e-12;

pub const LAMBDAS: [f64; 12] = [0.6, 0.75, 1.0, 1.5, 2.0, 3.0, 5.0, 10.0, 30.0, 100.0, 1e3, 1e6];
pub const LEVELS: [usize; 4] = [1, 2, 3, 4];

/// Directory holding the checked-in tables.
pub fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeviationRow {
    pub lambda: f64,
    pub n: usize,
    pub integral_over_pi: f64,
    pub deviation: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReferenceValue {
    pub key: String,
    pub value: f64,
}

fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn deviation_rows(tol: f64) -> Result<Vec<DeviationRow>> {
    let mut rows = Vec::new();
    for &lambda in &LAMBDAS {
        for &n in &LEVELS {
            let d = extended::extended_swkb_deviation(lambda, n, tol)?;
            rows.push(DeviationRow {
                lambda,
                n,
                integral_over_pi: d.integral_over_pi,
                deviation: d.deviation,
            });
        }
    }
    Ok(rows)
}

pub fn render_deviations(rows: &[DeviationRow]) -> String {
    let mut s = String::from("lambda\tn\tintegral_over_pi\tdeviation\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{}\t{}\t{}\t{}",
            sig12(r.lambda),
            r.n,
            sig12(r.integral_over_pi),
            sig12(r.deviation)
        );
    }
    s
}

fn field<T: std::str::FromStr>(cols: &[&str], i: usize, line: usize) -> Result<T> {
    cols.get(i)
        .and_then(|c| c.trim().parse().ok())
        .ok_or_else(|| Error::Fixture(format!("line {line}: bad column {i}")))
}

pub fn parse_deviations(text: &str) -> Result<Vec<DeviationRow>> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, h)) if h.split('\t').collect::<Vec<_>>() == ["lambda", "n", "integral_over_pi", "deviation"] => {}
        _ => return Err(Error::Fixture("missing or unexpected header".into())),
    }
    lines
        .map(|(i, l)| {
            let cols: Vec<&str> = l.split('\t').collect();
            if cols.len() != 4 {
                return Err(Error::Fixture(format!("line {}: expected 4 columns", i + 1)));
            }
            Ok(DeviationRow {
                lambda: field(&cols, 0, i + 1)?,
                n: field(&cols, 1, i + 1)?,
                integral_over_pi: field(&cols, 2, i + 1)?,
                deviation: field(&cols, 3, i + 1)?,
            })
        })
        .collect()
}

/// Other recorded numbers: plain-WKB errors, broken-phase turning points, one η value.
pub fn reference_values(tol: f64) -> Result<Vec<ReferenceValue>> {
    let mut out = Vec::new();
    let mut push = |k: &str, v: f64| out.push(ReferenceValue { key: k.to_string(), value: v });

    let osc = lookup("3d-oscillator")?;
    let p = Params::from_pairs(&[("omega", 1.0), ("ell", 3.0)]);
    let r = quantization::wkb_check(osc, &p, 1.0, 1, tol, false)?;
    push("wkb.3d-oscillator.omega=1,ell=3.n=1.integral", r.integral);
    let e = quantization::solve_semiclassical_energy(osc, &p, 1.0, 1, Condition::Wkb, tol)?;
    push("wkb.3d-oscillator.omega=1,ell=3.n=1.energy", e);

    let cou = lookup("coulomb")?;
    let p = Params::from_pairs(&[("e2", 2.0), ("ell", 1.0)]);
    let r = quantization::wkb_check(cou, &p, 1.0, 1, tol, false)?;
    push("wkb.coulomb.e2=2,ell=1.n=1.integral", r.integral);

    let p = Params::from_pairs(&[("omega", 1.0), ("ell", -3.0)]);
    let r = quantization::bswkb_check(osc, &p, 1.0, 0, tol)?;
    push("bswkb.3d-oscillator.omega=1,ell=-3.n=0.x_left", r.turning_points.0);
    push("bswkb.3d-oscillator.omega=1,ell=-3.n=0.x_right", r.turning_points.1);

    push("eta.lambda=3.n=1.z=sqrt6", eta(6f64.sqrt(), 3.0, 1)?);
    Ok(out)
}

pub fn render_references(rows: &[ReferenceValue]) -> String {
    let mut s = String::from("key\tvalue\n");
    for r in rows {
        let _ = writeln!(s, "{}\t{}", r.key, sig12(r.value));
    }
    s
}

pub fn parse_references(text: &str) -> Result<Vec<ReferenceValue>> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, "key\tvalue")) => {}
        _ => return Err(Error::Fixture("missing or unexpected header".into())),
    }
    lines
        .map(|(i, l)| {
            let cols: Vec<&str> = l.split('\t').collect();
            if cols.len() != 2 {
                return Err(Error::Fixture(format!("line {}: expected 2 columns", i + 1)));
            }
            Ok(ReferenceValue { key: cols[0].to_string(), value: field(&cols, 1, i + 1)? })
        })
        .collect()
}

pub fn load_deviations(dir: &Path) -> Result<Vec<DeviationRow>> {
    let p = dir.join(DEVIATIONS_FILE);
    let text = std::fs::read_to_string(&p).map_err(|e| Error::Fixture(format!("{}: {e}", p.display())))?;
    parse_deviations(&text)
}

pub fn load_references(dir: &Path) -> Result<Vec<ReferenceValue>> {
    let p = dir.join(REFERENCES_FILE);
    let text = std::fs::read_to_string(&p).map_err(|e| Error::Fixture(format!("{}: {e}", p.display())))?;
    parse_references(&text)
}

/// Recomputes both tables and writes them into `dir`.
pub fn regenerate(dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Fixture(format!("{}: {e}", dir.display())))?;
    let files = [
        (DEVIATIONS_FILE, render_deviations(&deviation_rows(FIXTURE_TOL)?)),
        (REFERENCES_FILE, render_references(&reference_values(FIXTURE_TOL)?)),
    ];
    let mut written = Vec::new();
    for (name, body) in files {
        let p = dir.join(name);
        std::fs::write(&p, body).map_err(|e| Error::Fixture(format!("{}: {e}", p.display())))?;
        written.push(p);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deviation_table_round_trips() {
        let rows = vec![
            DeviationRow { lambda: 3.0, n: 1, integral_over_pi: 0.999411, deviation: -5.89e-4 },
            DeviationRow { lambda: 1e6, n: 4, integral_over_pi: 4.0, deviation: 1e-13 },
        ];
        let back = parse_deviations(&render_deviations(&rows)).unwrap();
        assert_eq!(back, rows);
    }

    #[test]
    fn malformed_tables_are_rejected() {
        assert!(parse_deviations("a\tb\n").is_err());
        assert!(parse_deviations("lambda\tn\tintegral_over_pi\tdeviation\n1\t2\n").is_err());
        assert!(parse_references("key\tvalue\nx\tnot-a-number\n").is_err());
    }
}
