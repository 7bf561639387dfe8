//! Turning points and action integrals ∫√F dx whose integrand vanishes like a
//! square root at both ends.
//!
//! The substitution `x = m + h·sin θ` turns `√F dx` into `√F·h·cos θ dθ`, which is
//! smooth on `[−π/2, π/2]`; composite Gauss–Legendre then converges spectrally.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::catalog::Domain;
use crate::error::{Error, Result};

/// Default quadrature tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;

const PANEL: usize = 20;
const NODE_CAP: usize = 1 << 20;
const MESH: usize = 2048;

/// Gauss–Legendre nodes and weights on [−1, 1], by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

fn panel_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(PANEL))
}

fn composite(f: &impl Fn(f64) -> f64, lo: f64, hi: f64, panels: usize) -> f64 {
    let (xs, ws) = panel_rule();
    let width = (hi - lo) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let a = lo + width * p as f64;
        let mid = a + 0.5 * width;
        let mut s = 0.0;
        for (x, w) in xs.iter().zip(ws) {
            s += w * f(mid + 0.5 * width * x);
        }
        total += 0.5 * width * s;
    }
    total
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ActionIntegral {
    pub value: f64,
    pub estimated_error: f64,
    pub node_count: usize,
}

/// ∫_a^b f over an interval whose integrand has square-root behaviour at the ends.
/// Panel count doubles until two successive estimates differ by ≤ tol·max(1, |I|).
pub fn endpoint_integral(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<ActionIntegral> {
    let m = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let g = |t: f64| {
        let x = m + h * t.sin();
        f(x) * h * t.cos()
    };
    let mut panels = 1;
    let mut prev = composite(&g, -FRAC_PI_2, FRAC_PI_2, panels);
    loop {
        panels *= 2;
        let nodes = panels * PANEL;
        if nodes > NODE_CAP {
            return Err(Error::NonConvergence { nodes: nodes / 2, change: f64::NAN });
        }
        let next = composite(&g, -FRAC_PI_2, FRAC_PI_2, panels);
        if !next.is_finite() {
            return Err(Error::NonConvergence { nodes, change: f64::NAN });
        }
        let change = (next - prev).abs();
        if change <= tol * next.abs().max(1.0) && panels >= 2 {
            return Ok(ActionIntegral { value: next, estimated_error: change, node_count: nodes });
        }
        if nodes * 2 > NODE_CAP {
            return Err(Error::NonConvergence { nodes, change });
        }
        prev = next;
    }
}

/// ∫√F between the turning points of `pair`. Values of F slightly below zero
/// (rounding near the ends) are clamped; anything below −10·tol is an error.
pub fn action_integral(f: impl Fn(f64) -> f64, pair: &TurningPair, tol: f64) -> Result<ActionIntegral> {
    if !(pair.x_r > pair.x_l) {
        return Err(Error::DegenerateInterval(format!(
            "x_L = {} is not below x_R = {}",
            pair.x_l, pair.x_r
        )));
    }
    let bad = std::cell::Cell::new(None);
    let integrand = |x: f64| {
        let v = f(x);
        if v < -10.0 * tol && bad.get().is_none() {
            bad.set(Some((x, v)));
        }
        if v > 0.0 {
            v.sqrt()
        } else {
            0.0
        }
    };
    let out = endpoint_integral(integrand, pair.x_l, pair.x_r, tol);
    if let Some((x, value)) = bad.get() {
        return Err(Error::NegativeIntegrand { x, value });
    }
    out
}

/// Adaptive Gauss–Legendre for smooth integrands; `a > b` flips the sign.
pub fn integrate_adaptive(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    if a > b {
        return integrate_adaptive(f, b, a, tol).map(|v| -v);
    }
    let whole = composite(&f, a, b, 1);
    let v = adapt(&f, a, b, whole, tol, 0)?;
    Ok(v)
}

fn adapt(f: &impl Fn(f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> Result<f64> {
    let m = 0.5 * (a + b);
    let left = composite(f, a, m, 1);
    let right = composite(f, m, b, 1);
    let change = (left + right - whole).abs();
    if !change.is_finite() {
        return Err(Error::NonConvergence { nodes: 0, change });
    }
    if change <= tol * (left + right).abs().max(1.0) {
        return Ok(left + right);
    }
    if depth >= 40 {
        return Err(Error::NonConvergence { nodes: 1 << depth, change });
    }
    Ok(adapt(f, a, m, left, tol, depth + 1)? + adapt(f, m, b, right, tol, depth + 1)?)
}

/// Bracketed roots of E − F with refinement metadata.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TurningPair {
    pub x_l: f64,
    pub x_r: f64,
    pub bracket_width: f64,
    /// F at the two roots.
    pub f_values: (f64, f64),
}

/// Scanning mesh: `x = tan θ` on ℝ, `r = e^t` on a half line, logistic clustering
/// toward both ends of a finite interval.
pub fn scan_mesh(d: Domain) -> Vec<f64> {
    let t = |i: usize| (i as f64 + 0.5) / MESH as f64;
    let pts: Vec<f64> = match (d.lo.is_finite(), d.hi.is_finite()) {
        (false, false) => (0..MESH).map(|i| (PI * (t(i) - 0.5)).tan()).collect(),
        (true, false) => (0..MESH).map(|i| d.lo + (-40.0 + 80.0 * t(i)).exp()).collect(),
        (false, true) => (0..MESH).map(|i| d.hi - (40.0 - 80.0 * t(i)).exp()).collect(),
        (true, true) => (0..MESH)
            .map(|i| {
                let s = -30.0 + 60.0 * t(i);
                d.lo + d.width() / (1.0 + (-s).exp())
            })
            .collect(),
    };
    pts.into_iter().filter(|&x| d.contains(x)).collect()
}

/// Roots of `g` found on the scanning mesh, plus whether `g > 0` at the outermost
/// mesh points (the allowed region touching an edge).
#[derive(Clone, Debug)]
pub struct RootScan {
    pub roots: Vec<(f64, f64)>,
    pub open_left: bool,
    pub open_right: bool,
}

fn positive(v: f64) -> bool {
    v > 0.0
}

pub fn scan_roots(g: &impl Fn(f64) -> f64, d: Domain) -> RootScan {
    scan_roots_on(g, scan_mesh(d))
}

/// Like [`scan_roots`], but mesh points failing `trusted` are dropped first. Used when
/// `g` loses all significant digits near an edge.
pub fn scan_roots_masked(
    g: &impl Fn(f64) -> f64,
    d: Domain,
    trusted: impl Fn(f64) -> bool,
) -> RootScan {
    scan_roots_on(g, scan_mesh(d).into_iter().filter(|&x| trusted(x)).collect())
}

fn scan_roots_on(g: &impl Fn(f64) -> f64, xs: Vec<f64>) -> RootScan {
    if xs.len() < 2 {
        return RootScan { roots: Vec::new(), open_left: false, open_right: false };
    }
    let vals: Vec<f64> = xs.iter().map(|&x| g(x)).collect();
    let mut roots = Vec::new();
    for i in 0..xs.len() - 1 {
        if positive(vals[i]) != positive(vals[i + 1]) {
            roots.push(refine(g, xs[i], xs[i + 1], vals[i], vals[i + 1]));
        }
    }
    if roots.is_empty() {
        // A narrow allowed region may fall between mesh points: look for a
        // positive maximum near the best mesh point.
        let (imax, _) = vals
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_nan())
            .fold((0, f64::NEG_INFINITY), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
        if imax > 0 && imax + 1 < xs.len() {
            let (xm, gm) = golden_max(g, xs[imax - 1], xs[imax + 1]);
            if gm > 0.0 {
                let gl = g(xs[imax - 1]);
                let gr = g(xs[imax + 1]);
                if !positive(gl) && !positive(gr) {
                    roots.push(refine(g, xs[imax - 1], xm, gl, gm));
                    roots.push(refine(g, xm, xs[imax + 1], gm, gr));
                }
            }
        }
    }
    RootScan {
        roots,
        open_left: vals.first().copied().is_some_and(positive),
        open_right: vals.last().copied().is_some_and(positive),
    }
}

fn golden_max(g: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut gc, mut gd) = (g(c), g(d));
    for _ in 0..200 {
        if (b - a).abs() <= 1e-15 * (a.abs() + b.abs()).max(1e-300) {
            break;
        }
        if gc > gd {
            b = d;
            d = c;
            gd = gc;
            c = b - r * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + r * (b - a);
            gd = g(d);
        }
    }
    if gc > gd {
        (c, gc)
    } else {
        (d, gd)
    }
}

/// Bisection to 1e-8 relative, three bracketed secant steps, then bisection down to
/// floating-point resolution. Returns (root, final bracket width).
fn refine(g: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, mut ga: f64, mut gb: f64) -> (f64, f64) {
    let pa = positive(ga);
    let bisect = |a: &mut f64, b: &mut f64, ga: &mut f64, gb: &mut f64| -> bool {
        let m = 0.5 * (*a + *b);
        if m <= *a || m >= *b {
            return false;
        }
        let gm = g(m);
        if positive(gm) == pa {
            *a = m;
            *ga = gm;
        } else {
            *b = m;
            *gb = gm;
        }
        true
    };
    for _ in 0..200 {
        if (b - a) <= 1e-8 * (1.0 + a.abs().max(b.abs())) {
            break;
        }
        if !bisect(&mut a, &mut b, &mut ga, &mut gb) {
            break;
        }
    }
    for _ in 0..3 {
        if !(ga.is_finite() && gb.is_finite()) || gb == ga {
            break;
        }
        let x = b - gb * (b - a) / (gb - ga);
        if !(x > a && x < b) {
            break;
        }
        let gx = g(x);
        if gx == 0.0 {
            return (x, b - a);
        }
        if positive(gx) == pa {
            a = x;
            ga = gx;
        } else {
            b = x;
            gb = gx;
        }
    }
    for _ in 0..2000 {
        if !bisect(&mut a, &mut b, &mut ga, &mut gb) {
            break;
        }
    }
    let root = if ga.abs() <= gb.abs() { a } else { b };
    (root, b - a)
}

/// The two roots of `E − F` on the domain.
pub fn find_turning_points(f: impl Fn(f64) -> f64, domain: Domain, e: f64) -> Result<TurningPair> {
    let g = |x: f64| e - f(x);
    let scan = scan_roots(&g, domain);
    match scan.roots.len() {
        2 => {
            let ((xl, wl), (xr, wr)) = (scan.roots[0], scan.roots[1]);
            Ok(TurningPair { x_l: xl, x_r: xr, bracket_width: wl.max(wr), f_values: (f(xl), f(xr)) })
        }
        0 => Err(Error::NoTurningPoints(format!(
            "E = {e} lies below F everywhere on the scanned domain"
        ))),
        1 => Err(Error::NoTurningPoints(format!(
            "single root at x = {}; the allowed region reaches the {} edge",
            scan.roots[0].0,
            if scan.open_left { "left" } else { "right" }
        ))),
        k => Err(Error::MoreThanTwoRoots(k)),
    }
}

/// Closed-form integrals of √((y2−y)(y−y1))/D(y) over [y1, y2].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClosedForm {
    I0,
    I1a,
    I1b,
    I2a,
    I2b,
    I3,
    I4,
    I5a,
    I5b,
}

impl ClosedForm {
    pub const ALL: [ClosedForm; 9] = [
        ClosedForm::I0,
        ClosedForm::I1a,
        ClosedForm::I1b,
        ClosedForm::I2a,
        ClosedForm::I2b,
        ClosedForm::I3,
        ClosedForm::I4,
        ClosedForm::I5a,
        ClosedForm::I5b,
    ];

    /// The denominator D(y).
    pub fn denominator(self, y: f64) -> f64 {
        match self {
            ClosedForm::I0 => 1.0,
            ClosedForm::I1a | ClosedForm::I1b => y,
            ClosedForm::I2a | ClosedForm::I2b => y * y,
            ClosedForm::I3 => 1.0 + y * y,
            ClosedForm::I4 => 1.0 - y * y,
            ClosedForm::I5a | ClosedForm::I5b => y * y - 1.0,
        }
    }

    pub fn valid(self, y1: f64, y2: f64) -> bool {
        if !(y1 < y2 && y1.is_finite() && y2.is_finite()) {
            return false;
        }
        match self {
            ClosedForm::I0 | ClosedForm::I3 => true,
            ClosedForm::I1a | ClosedForm::I2b => y1 > 0.0,
            ClosedForm::I1b | ClosedForm::I2a => y2 < 0.0,
            ClosedForm::I4 => y1 > -1.0 && y2 < 1.0,
            ClosedForm::I5a => y1 > 1.0,
            ClosedForm::I5b => y2 < -1.0,
        }
    }

    pub fn condition(self) -> &'static str {
        match self {
            ClosedForm::I0 | ClosedForm::I3 => "y1 < y2",
            ClosedForm::I1a | ClosedForm::I2b => "0 < y1 < y2",
            ClosedForm::I1b | ClosedForm::I2a => "y1 < y2 < 0",
            ClosedForm::I4 => "-1 < y1 < y2 < 1",
            ClosedForm::I5a => "1 < y1 < y2",
            ClosedForm::I5b => "y1 < y2 < -1",
        }
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for ClosedForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ClosedForm::ALL
            .iter()
            .copied()
            .find(|c| c.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Param(format!("unknown closed form `{s}`")))
    }
}

pub fn closed_form(form: ClosedForm, y1: f64, y2: f64) -> Result<f64> {
    if !form.valid(y1, y2) {
        return Err(Error::DomainMsg(format!(
            "{form} requires {}, got ({y1}, {y2})",
            form.condition()
        )));
    }
    let p = y1 * y2;
    Ok(match form {
        ClosedForm::I0 => PI / 8.0 * (y2 - y1).powi(2),
        ClosedForm::I1a => PI / 2.0 * (y1 + y2) - PI * p.sqrt(),
        ClosedForm::I1b => PI / 2.0 * (y1 + y2) + PI * p.sqrt(),
        ClosedForm::I2a => -PI * (y1 + y2 + 2.0 * p.sqrt()) / (2.0 * p.sqrt()),
        ClosedForm::I2b => PI * (y1 + y2 - 2.0 * p.sqrt()) / (2.0 * p.sqrt()),
        ClosedForm::I3 => {
            let s = (1.0 + y1 * y1).sqrt() * (1.0 + y2 * y2).sqrt() - p + 1.0;
            PI / 2f64.sqrt() * s.sqrt() - PI
        }
        ClosedForm::I4 => {
            PI / 2.0
                * (2.0 - ((1.0 - y1) * (1.0 - y2)).sqrt() - ((1.0 + y1) * (1.0 + y2)).sqrt())
        }
        ClosedForm::I5a => {
            PI / 2.0 * (((y1 + 1.0) * (y2 + 1.0)).sqrt() - ((y1 - 1.0) * (y2 - 1.0)).sqrt() - 2.0)
        }
        ClosedForm::I5b => {
            PI / 2.0 * (((y1 - 1.0) * (y2 - 1.0)).sqrt() - ((y1 + 1.0) * (y2 + 1.0)).sqrt() - 2.0)
        }
    })
}

/// The defining integral of `form` by quadrature.
pub fn closed_form_by_quadrature(form: ClosedForm, y1: f64, y2: f64, tol: f64) -> Result<f64> {
    if !form.valid(y1, y2) {
        return Err(Error::DomainMsg(format!("{form} requires {}", form.condition())));
    }
    let f = |y: f64| {
        let s = ((y2 - y) * (y - y1)).max(0.0).sqrt();
        s / form.denominator(y)
    };
    Ok(endpoint_integral(f, y1, y2, tol)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn legendre_rule_integrates_polynomials() {
        let (x, w) = gauss_legendre(PANEL);
        assert!(close(w.iter().sum::<f64>(), 2.0, 1e-14));
        // exact for degree 2n-1
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(38)).sum();
        assert!(close(s, 2.0 / 39.0, 1e-13));
        let (x3, w3) = gauss_legendre(3);
        assert!(close(x3[2], (0.6f64).sqrt(), 1e-15));
        assert!(close(w3[1], 8.0 / 9.0, 1e-15));
    }

    #[test]
    fn semicircle() {
        let pair = TurningPair { x_l: -1.0, x_r: 1.0, bracket_width: 0.0, f_values: (0.0, 0.0) };
        let v = action_integral(|x| 1.0 - x * x, &pair, 1e-12).unwrap();
        assert!(close(v.value, FRAC_PI_2, 1e-13));
        assert!(v.estimated_error <= 1e-12);
    }

    #[test]
    fn linear_w_turning_points() {
        let d = Domain { lo: f64::NEG_INFINITY, hi: f64::INFINITY };
        let p = find_turning_points(|x| x * x, d, 4.0).unwrap();
        assert!(close(p.x_l, -2.0, 1e-13) && close(p.x_r, 2.0, 1e-13));
        let v = action_integral(|x| 4.0 - x * x, &p, 1e-10).unwrap();
        assert!(close(v.value, 2.0 * PI, 1e-10));
    }

    #[test]
    fn morse_turning_points() {
        let d = Domain { lo: f64::NEG_INFINITY, hi: f64::INFINITY };
        let p = find_turning_points(|x| (5.0 - (-x).exp()).powi(2), d, 9.0).unwrap();
        assert!(close(p.x_l, -(8f64.ln()), 1e-13));
        assert!(close(p.x_r, -(2f64.ln()), 1e-13));
        assert!((p.f_values.0 - 9.0).abs() <= 1e-12 * 10.0);
    }

    #[test]
    fn below_minimum_is_an_error() {
        let d = Domain { lo: f64::NEG_INFINITY, hi: f64::INFINITY };
        assert!(matches!(
            find_turning_points(|x| 1.0 + x * x, d, 0.5),
            Err(Error::NoTurningPoints(_))
        ));
    }

    #[test]
    fn four_roots_reported() {
        let d = Domain { lo: f64::NEG_INFINITY, hi: f64::INFINITY };
        let r = find_turning_points(|x| (x * x - 4.0).powi(2), d, 1.0);
        assert_eq!(r, Err(Error::MoreThanTwoRoots(4)));
    }

    #[test]
    fn narrow_well_between_mesh_points() {
        let d = Domain { lo: f64::NEG_INFINITY, hi: f64::INFINITY };
        // allowed region of width ~2e-4 around x = 0.3
        let p = find_turning_points(|x| 1e4 * (x - 0.3).powi(2), d, 1e-4).unwrap();
        assert!(close(p.x_l, 0.3 - 1e-4, 1e-10));
        assert!(close(p.x_r, 0.3 + 1e-4, 1e-10));
    }

    #[test]
    fn closed_form_examples() {
        assert!(close(closed_form(ClosedForm::I0, -1.0, 1.0).unwrap(), FRAC_PI_2, 1e-15));
        let i4 = closed_form(ClosedForm::I4, -0.5, 0.5).unwrap();
        assert!(close(i4, PI * (1.0 - 3f64.sqrt() / 2.0), 1e-14));
        assert!(close(closed_form(ClosedForm::I1a, 1.0, 4.0).unwrap(), FRAC_PI_2, 1e-15));
        assert!(closed_form(ClosedForm::I1a, -1.0, 4.0).is_err());
        assert!(closed_form(ClosedForm::I4, -0.5, 1.5).is_err());
        assert!(closed_form(ClosedForm::I0, 2.0, 1.0).is_err());
    }

    #[test]
    fn adaptive_matches_antiderivative() {
        let v = integrate_adaptive(|x| x.exp(), 0.0, 3.0, 1e-13).unwrap();
        assert!(close(v, 3f64.exp() - 1.0, 1e-13));
        let back = integrate_adaptive(|x| x.exp(), 3.0, 0.0, 1e-13).unwrap();
        assert_eq!(back, -v);
    }

    #[test]
    fn parse_forms() {
        assert_eq!("i2b".parse::<ClosedForm>().unwrap(), ClosedForm::I2b);
        assert!("I9".parse::<ClosedForm>().is_err());
    }
}
