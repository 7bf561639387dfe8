//! Quantization conditions as forward checks (given E_n, evaluate the integral) and
//! as inverse solves (given the condition, find E).

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::catalog::{classify_phase_at, Coords, Params, Phase, Side, Superpotential};
use crate::error::{Error, Result};
use crate::quadrature::{self, ActionIntegral, TurningPair, DEFAULT_TOL};

/// Default pass threshold.
pub const DEFAULT_PASS_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    Wkb,
    LangerWkb,
    Swkb,
    Bswkb,
}

impl Condition {
    pub fn as_str(self) -> &'static str {
        match self {
            Condition::Wkb => "wkb",
            Condition::LangerWkb => "langer-wkb",
            Condition::Swkb => "swkb",
            Condition::Bswkb => "bswkb",
        }
    }

    /// Maslov index for the WKB family.
    pub fn maslov_nu(self) -> Option<f64> {
        match self {
            Condition::Wkb | Condition::LangerWkb => Some(0.5),
            _ => None,
        }
    }

    pub fn target(self, n: usize, hbar: f64) -> f64 {
        let n = n as f64;
        match self {
            Condition::Swkb => n * PI * hbar,
            _ => (n + 0.5) * PI * hbar,
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Condition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [Condition::Wkb, Condition::LangerWkb, Condition::Swkb, Condition::Bswkb]
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Param(format!("unknown condition `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuantizationResult {
    pub condition: Condition,
    pub n: usize,
    pub energy: f64,
    pub integral: f64,
    pub target: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tol: f64,
    pub pass: bool,
    pub maslov_nu: Option<f64>,
    pub turning_points: (f64, f64),
    pub nodes: usize,
}

impl QuantizationResult {
    fn new(
        condition: Condition,
        n: usize,
        energy: f64,
        hbar: f64,
        tol: f64,
        action: ActionIntegral,
        pair: TurningPair,
    ) -> Self {
        let target = condition.target(n, hbar);
        let abs_err = (action.value - target).abs();
        QuantizationResult {
            condition,
            n,
            energy,
            integral: action.value,
            target,
            abs_err,
            rel_err: if target != 0.0 { abs_err / target.abs() } else { abs_err },
            tol,
            pass: abs_err <= tol * target.abs().max(1.0),
            maslov_nu: condition.maslov_nu(),
            turning_points: (pair.x_l, pair.x_r),
            nodes: action.node_count,
        }
    }
}

fn quad_tol(tol: f64) -> f64 {
    DEFAULT_TOL.min(tol * 1e-2)
}

/// The function F in E − F(x) for a condition: W² for the SUSY conditions, V₋ for
/// WKB, V₋ + (ħ²/4)f1' for Langer-corrected WKB.
pub fn effective_potential<'a>(
    sp: &'a dyn Superpotential,
    c: &'a Coords,
    hbar: f64,
    condition: Condition,
) -> Result<Box<dyn Fn(f64) -> f64 + 'a>> {
    Ok(match condition {
        Condition::Swkb | Condition::Bswkb => Box::new(move |x| sp.w_at(x, c, hbar).powi(2)),
        Condition::Wkb => Box::new(move |x| sp.v_at(x, c, hbar, Side::Minus)),
        Condition::LangerWkb => {
            if sp.is_extended() {
                return Err(Error::NotApplicable(format!(
                    "{}: Langer term is defined for conventional entries",
                    sp.name()
                )));
            }
            let k = sp.kernel();
            Box::new(move |x| sp.v_at(x, c, hbar, Side::Minus) + k.langer_delta_v(x, hbar))
        }
    })
}

/// Integration limits for E − F. SUSY conditions need two genuine roots. The WKB
/// family may also stop at a finite domain edge where F → −∞ keeps the region open.
fn limits(
    f: &dyn Fn(f64) -> f64,
    scale: &dyn Fn(f64) -> f64,
    sp: &dyn Superpotential,
    e: f64,
    allow_edges: bool,
) -> Result<TurningPair> {
    let d = sp.domain();
    if !allow_edges {
        return quadrature::find_turning_points(f, d, e);
    }
    let g = |x: f64| e - f(x);
    // W² − ħW′ cancels catastrophically at singular edges; skip points where the
    // difference is below rounding level.
    let trusted = |x: f64| {
        (e - f(x)).abs() > 1e3 * f64::EPSILON * (scale(x) + e.abs())
    };
    let scan = quadrature::scan_roots_masked(&g, d, trusted);
    match (scan.roots.as_slice(), scan.open_left, scan.open_right) {
        ([(xl, wl), (xr, wr)], false, false) => {
            Ok(TurningPair { x_l: *xl, x_r: *xr, bracket_width: wl.max(*wr), f_values: (f(*xl), f(*xr)) })
        }
        ([(xr, wr)], true, false) if d.lo.is_finite() => {
            Ok(TurningPair { x_l: d.lo, x_r: *xr, bracket_width: *wr, f_values: (f64::NAN, f(*xr)) })
        }
        ([(xl, wl)], false, true) if d.hi.is_finite() => {
            Ok(TurningPair { x_l: *xl, x_r: d.hi, bracket_width: *wl, f_values: (f(*xl), f64::NAN) })
        }
        ([], true, true) if d.lo.is_finite() && d.hi.is_finite() => {
            Ok(TurningPair { x_l: d.lo, x_r: d.hi, bracket_width: 0.0, f_values: (f64::NAN, f64::NAN) })
        }
        _ => quadrature::find_turning_points(f, d, e),
    }
}

/// ∫√(E − F) for `condition` at energy `e`.
pub fn action_at(
    sp: &dyn Superpotential,
    c: &Coords,
    hbar: f64,
    condition: Condition,
    e: f64,
    quad_tol: f64,
) -> Result<(ActionIntegral, TurningPair)> {
    let f = effective_potential(sp, c, hbar, condition)?;
    let allow_edges = matches!(condition, Condition::Wkb | Condition::LangerWkb);
    let scale = |x: f64| {
        sp.w_at(x, c, hbar).powi(2)
            + hbar * sp.dw_at(x, c, hbar).abs()
            + sp.kernel().langer_delta_v(x, hbar).abs()
    };
    let pair = limits(&*f, &scale, sp, e, allow_edges)?;
    let action = quadrature::action_integral(|x| e - f(x), &pair, quad_tol)?;
    Ok((action, pair))
}

fn require_phase(sp: &dyn Superpotential, c: &Coords, hbar: f64, want: Phase) -> Result<()> {
    let report = classify_phase_at(sp, c, hbar)?;
    if report.phase != want {
        return Err(Error::Phase(format!(
            "{}: {} phase ({}), {want} required",
            sp.name(),
            report.phase,
            report.evidence
        )));
    }
    Ok(())
}

/// ∫√(E_n − W²) = nπħ in the unbroken phase.
pub fn swkb_check(
    sp: &dyn Superpotential,
    params: &Params,
    hbar: f64,
    n: usize,
    tol: f64,
) -> Result<QuantizationResult> {
    let c = sp.coords(params, hbar)?;
    swkb_check_at(sp, &c, hbar, n, tol)
}

pub fn swkb_check_at(
    sp: &dyn Superpotential,
    c: &Coords,
    hbar: f64,
    n: usize,
    tol: f64,
) -> Result<QuantizationResult> {
    require_phase(sp, c, hbar, Phase::Unbroken)?;
    if n == 0 {
        return Err(Error::DegenerateInterval(
            "E_0 = 0 makes both turning points coincide".into(),
        ));
    }
    let e = sp.kernel().energy(n, c, hbar, Phase::Unbroken)?;
    let (action, pair) = action_at(sp, c, hbar, Condition::Swkb, e, quad_tol(tol))?;
    Ok(QuantizationResult::new(Condition::Swkb, n, e, hbar, tol, action, pair))
}

/// ∫√(E_n − W²) = (n+½)πħ in the broken phase.
pub fn bswkb_check(
    sp: &dyn Superpotential,
    params: &Params,
    hbar: f64,
    n: usize,
    tol: f64,
) -> Result<QuantizationResult> {
    let c = sp.coords(params, hbar)?;
    bswkb_check_at(sp, &c, hbar, n, tol)
}

pub fn bswkb_check_at(
    sp: &dyn Superpotential,
    c: &Coords,
    hbar: f64,
    n: usize,
    tol: f64,
) -> Result<QuantizationResult> {
    require_phase(sp, c, hbar, Phase::Broken)?;
    let k = sp.kernel();
    let has_spectrum = k.level_count(c, hbar, Phase::Broken).is_ok();
    if !has_spectrum {
        // No closed-form levels: probe W² at an energy above its minimum to show
        // that the integral has no pair of limits.
        let f = |x: f64| sp.w_at(x, c, hbar).powi(2);
        let floor = quadrature::scan_mesh(sp.domain())
            .into_iter()
            .map(f)
            .filter(|v| v.is_finite())
            .fold(f64::INFINITY, f64::min);
        let probe = floor + (n as f64 + 0.5) * hbar * floor.abs().max(1.0);
        return match quadrature::find_turning_points(f, sp.domain(), probe) {
            Err(e) => Err(e),
            Ok(_) => Err(Error::Phase(format!(
                "class {} has no broken-phase spectrum",
                k.si_class
            ))),
        };
    }
    let e = k.energy(n, c, hbar, Phase::Broken)?;
    let (action, pair) = action_at(sp, c, hbar, Condition::Bswkb, e, quad_tol(tol))?;
    Ok(QuantizationResult::new(Condition::Bswkb, n, e, hbar, tol, action, pair))
}

/// ∫√(E_n − V₋ [− ΔV]) = (n+½)πħ with ν = ½.
pub fn wkb_check(
    sp: &dyn Superpotential,
    params: &Params,
    hbar: f64,
    n: usize,
    tol: f64,
    langer: bool,
) -> Result<QuantizationResult> {
    let c = sp.coords(params, hbar)?;
    wkb_check_at(sp, &c, hbar, n, tol, langer)
}

pub fn wkb_check_at(
    sp: &dyn Superpotential,
    c: &Coords,
    hbar: f64,
    n: usize,
    tol: f64,
    langer: bool,
) -> Result<QuantizationResult> {
    require_phase(sp, c, hbar, Phase::Unbroken)?;
    let e = sp.kernel().energy(n, c, hbar, Phase::Unbroken)?;
    let cond = if langer { Condition::LangerWkb } else { Condition::Wkb };
    let (action, pair) = action_at(sp, c, hbar, cond, e, quad_tol(tol))?;
    Ok(QuantizationResult::new(cond, n, e, hbar, tol, action, pair))
}

#[derive(Clone, Debug, PartialEq)]
pub struct LangerIdentity {
    pub n: usize,
    /// ∫√(E_n(a) − Ṽ(x, a)).
    pub corrected_wkb: f64,
    /// ∫√(E_{n+½}(ã) − W²(x, ã)), ã = a − ħ/2.
    pub shifted_swkb: f64,
    pub abs_diff: f64,
    pub tol: f64,
    pub pass: bool,
}

/// Compares the Langer-corrected WKB integral with the SWKB integral at the shifted
/// parameter ã = a − ħ/2 and half-integer level n + ½.
pub fn langer_identity_check(
    sp: &dyn Superpotential,
    params: &Params,
    hbar: f64,
    n: usize,
    tol: f64,
) -> Result<LangerIdentity> {
    if sp.is_extended() {
        return Err(Error::NotApplicable(format!("{} is not conventional", sp.name())));
    }
    let c = sp.coords(params, hbar)?;
    require_phase(sp, &c, hbar, Phase::Unbroken)?;
    let k = sp.kernel();
    let qt = quad_tol(tol);
    let e = k.energy(n, &c, hbar, Phase::Unbroken)?;
    let (lhs, _) = action_at(sp, &c, hbar, Condition::LangerWkb, e, qt)?;

    let ct = c.shifted(-0.5 * hbar);
    sp.check(&ct, hbar)
        .map_err(|e| Error::Param(format!("a − hbar/2 is not a valid point: {e}")))?;
    let half = k.g(ct.a + (n as f64 + 0.5) * hbar, &ct) - k.g(ct.a, &ct);
    let (rhs, _) = action_at(sp, &ct, hbar, Condition::Swkb, half, qt)?;

    let abs_diff = (lhs.value - rhs.value).abs();
    Ok(LangerIdentity {
        n,
        corrected_wkb: lhs.value,
        shifted_swkb: rhs.value,
        abs_diff,
        tol,
        pass: abs_diff <= tol * lhs.value.abs().max(1.0),
    })
}

/// Inverse solve: the energy at which `condition` holds for level `n`, bracketed
/// from the analytic neighbours E_{n−1}, E_{n+1}.
pub fn solve_semiclassical_energy(
    sp: &dyn Superpotential,
    params: &Params,
    hbar: f64,
    n: usize,
    condition: Condition,
    tol: f64,
) -> Result<f64> {
    let c = sp.coords(params, hbar)?;
    let phase = match condition {
        Condition::Bswkb => Phase::Broken,
        _ => Phase::Unbroken,
    };
    require_phase(sp, &c, hbar, phase)?;
    if condition == Condition::Swkb && n == 0 {
        return Err(Error::DegenerateInterval("the n = 0 SWKB target is a single point".into()));
    }
    let k = sp.kernel();
    let target = condition.target(n, hbar);
    let qt = quad_tol(tol).min(tol * 1e-2);
    let f = effective_potential(sp, &c, hbar, condition)?;
    let floor = quadrature::scan_mesh(sp.domain())
        .into_iter()
        .map(|x| f(x))
        .filter(|v| v.is_finite())
        .fold(f64::INFINITY, f64::min);

    let integral = |e: f64| -> Result<f64> {
        if e <= floor {
            return Ok(0.0);
        }
        match action_at(sp, &c, hbar, condition, e, qt) {
            Ok((a, _)) => Ok(a.value),
            Err(Error::NoTurningPoints(m)) if m.contains("below") => Ok(0.0),
            Err(e) => Err(e),
        }
    };

    let en = |m: usize| k.energy(m, &c, hbar, phase).ok();
    let mut lo = if n > 0 { en(n - 1).unwrap_or(floor) } else { floor };
    let mut hi = match (en(n + 1), en(n)) {
        (Some(e), _) => e,
        (None, Some(e)) => e + (e - lo).abs().max(hbar),
        _ => return Err(Error::BracketFailure(format!("level {n} has no analytic seed"))),
    };
    let mut f_lo = integral(lo)? - target;
    let mut f_hi = integral(hi)? - target;
    let mut grow = 0;
    while f_hi < 0.0 {
        grow += 1;
        if grow > 30 {
            return Err(Error::BracketFailure(format!("integral stays below target up to E = {hi}")));
        }
        let step = (hi - lo).abs().max(hbar);
        lo = hi;
        f_lo = f_hi;
        hi += step;
        f_hi = integral(hi).map_err(|e| Error::BracketFailure(format!("at E = {hi}: {e}")))? - target;
    }
    if f_lo > 0.0 {
        return Err(Error::BracketFailure(format!(
            "integral already exceeds the target at E = {lo}"
        )));
    }

    // Illinois-modified regula falsi.
    let mut side = 0i8;
    for _ in 0..200 {
        let e = if f_hi != f_lo { hi - f_hi * (hi - lo) / (f_hi - f_lo) } else { 0.5 * (lo + hi) };
        let e = if e > lo && e < hi { e } else { 0.5 * (lo + hi) };
        let fe = integral(e)? - target;
        if fe.abs() <= tol || (hi - lo) <= 4.0 * f64::EPSILON * e.abs().max(1.0) {
            return Ok(e);
        }
        if fe < 0.0 {
            lo = e;
            f_lo = fe;
            if side == -1 {
                f_hi *= 0.5;
            }
            side = -1;
        } else {
            hi = e;
            f_hi = fe;
            if side == 1 {
                f_lo *= 0.5;
            }
            side = 1;
        }
    }
    Err(Error::BracketFailure("no convergence in 200 iterations".into()))
}
