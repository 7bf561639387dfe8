//! Dimensionless SWKB integral for the Quesne extension of the 3-D oscillator.
//!
//! With ω = ħ = 1 and z = r the superpotential is
//! z/2 − λ/z + 2z/(z²+2λ−1) − 2z/(z²+2λ+1), λ = ℓ/ħ, and E_n = 2n. The SWKB
//! integral is ħ times ∫√η dz, so only λ and n matter.

use std::f64::consts::PI;

use crate::catalog::Domain;
use crate::error::{Error, Result};
use crate::quadrature;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DimensionlessSwkb {
    pub lambda: f64,
    pub n: usize,
    /// I/(ħπ).
    pub integral_over_pi: f64,
    /// I/(ħπ) − n.
    pub deviation: f64,
    pub turning_points: (f64, f64),
}

fn pole_check(z: f64, lambda: f64) -> Result<()> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Domain { x: z, lo: 0.0, hi: f64::INFINITY });
    }
    let z2 = z * z;
    for d in [z2 + 2.0 * lambda - 1.0, z2 + 2.0 * lambda + 1.0] {
        if d.abs() <= 1e-12 * z2.max(1.0) {
            return Err(Error::Pole(format!("z² + 2λ ± 1 vanishes at z = {z}, λ = {lambda}")));
        }
    }
    Ok(())
}

/// Kernel part z/2 − λ/z.
pub fn w_kernel(z: f64, lambda: f64) -> f64 {
    0.5 * z - lambda / z
}

/// Extension part 2z/(z²+2λ−1) − 2z/(z²+2λ+1).
pub fn w_extension(z: f64, lambda: f64) -> f64 {
    let z2 = z * z;
    2.0 * z / (z2 + 2.0 * lambda - 1.0) - 2.0 * z / (z2 + 2.0 * lambda + 1.0)
}

/// η(z, λ) = 2n − W(z)².
pub fn eta(z: f64, lambda: f64, n: usize) -> Result<f64> {
    pole_check(z, lambda)?;
    Ok(2.0 * n as f64 - (w_kernel(z, lambda) + w_extension(z, lambda)).powi(2))
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda > 0.5) || !lambda.is_finite() {
        return Err(Error::Param(format!("lambda must exceed 1/2, got {lambda}")));
    }
    Ok(())
}

fn deviation_of(
    w: impl Fn(f64) -> f64,
    lambda: f64,
    n: usize,
    tol: f64,
) -> Result<DimensionlessSwkb> {
    if n == 0 {
        return Err(Error::DegenerateInterval("n = 0 has a single turning point".into()));
    }
    let e = 2.0 * n as f64;
    let d = Domain { lo: 0.0, hi: f64::INFINITY };
    let f = |z: f64| w(z).powi(2);
    let pair = quadrature::find_turning_points(f, d, e)?;
    let action = quadrature::action_integral(|z| e - f(z), &pair, tol)?;
    let integral_over_pi = action.value / PI;
    Ok(DimensionlessSwkb {
        lambda,
        n,
        integral_over_pi,
        deviation: integral_over_pi - n as f64,
        turning_points: (pair.x_l, pair.x_r),
    })
}

/// ∫√η dz / π and its distance from n, for λ > ½.
///
/// Slightly above ½ (λ ≲ 0.56 for n = 1) η has four positive roots and the call
/// fails with `MoreThanTwoRoots`.
pub fn extended_swkb_deviation(lambda: f64, n: usize, tol: f64) -> Result<DimensionlessSwkb> {
    check_lambda(lambda)?;
    deviation_of(|z| w_kernel(z, lambda) + w_extension(z, lambda), lambda, n, tol)
}

/// Same integral with the extension dropped: the plain 3-D oscillator.
pub fn kernel_swkb_deviation(lambda: f64, n: usize, tol: f64) -> Result<DimensionlessSwkb> {
    check_lambda(lambda)?;
    deviation_of(|z| w_kernel(z, lambda), lambda, n, tol)
}
