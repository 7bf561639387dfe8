use std::fmt::Write as _;
use std::str::FromStr;

use swkb::catalog::{self, Params, Side};
use swkb::error::{Error, Result};
use swkb::extended;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Curve {
    W,
    Vminus,
    Vplus,
    /// η(z) of the dimensionless Quesne integrand; reads `lambda` and `n` from the parameters.
    Eta,
}

impl FromStr for Curve {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "w" => Ok(Curve::W),
            "vminus" | "v-" => Ok(Curve::Vminus),
            "vplus" | "v+" => Ok(Curve::Vplus),
            "eta" => Ok(Curve::Eta),
            _ => Err(Error::Param(format!("unknown curve `{s}`; expected W, Vminus, Vplus or eta"))),
        }
    }
}

/// Tab-separated `x value` lines, one per grid point.
pub fn emit_curves(potential: &str, params: &Params, hbar: f64, what: Curve, grid: &[f64]) -> Result<String> {
    let mut out = String::new();
    let value: Box<dyn Fn(f64) -> Result<f64>> = match what {
        Curve::Eta => {
            let lambda = params.get("lambda").ok_or_else(|| Error::Param("eta needs `lambda`".into()))?;
            let n = params.get("n").unwrap_or(1.0);
            if n < 0.0 || n.fract() != 0.0 {
                return Err(Error::Param(format!("n must be a nonnegative integer, got {n}")));
            }
            Box::new(move |z| extended::eta(z, lambda, n as usize))
        }
        _ => {
            let sp = catalog::lookup(potential)?;
            sp.coords(params, hbar)?;
            Box::new(move |x| match what {
                Curve::W => catalog::evaluate_W(sp, x, params, hbar),
                Curve::Vminus => catalog::evaluate_partner(sp, x, params, hbar, Side::Minus),
                _ => catalog::evaluate_partner(sp, x, params, hbar, Side::Plus),
            })
        }
    };
    for &x in grid {
        let _ = writeln!(out, "{x:e}\t{:e}", value(x)?);
    }
    Ok(out)
}

/// `points` evenly spaced values on [lo, hi].
pub fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![0.5 * (lo + hi)],
        _ => {
            let h = (hi - lo) / (points - 1) as f64;
            (0..points).map(|i| lo + h * i as f64).collect()
        }
    }
}
