//! Conventional shape-invariant superpotentials, their two ħ-dependent extensions,
//! and numeric verifiers of the identities the catalog must satisfy.
//!
//! Parameters are addressed by name through [`Params`] and resolved into
//! [`Coords`]: the shape-invariance parameter `a` plus up to two fixed constants.
//! Stepping `a → a + ħ` is what the shape-invariance condition is about.

mod entries;
mod params;
pub mod presets;

use std::fmt;

use crate::error::{Error, Result};
use crate::quadrature;

pub use params::Params;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SiType {
    TypeI,
    TypeII,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SiClass {
    IA,
    IB,
    IIA,
    IIB1,
    IIB2,
    IIB3,
    IIIA,
    IIIB1,
    IIIB2,
    IIIB3,
}

impl fmt::Display for SiClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Open interval; either end may be infinite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Domain {
    pub lo: f64,
    pub hi: f64,
}

impl Domain {
    pub fn contains(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Resolved parameter point: shape-invariance parameter `a` and fixed constants `k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coords {
    pub a: f64,
    pub k: [f64; 2],
}

impl Coords {
    pub fn shifted(&self, da: f64) -> Coords {
        Coords { a: self.a + da, ..*self }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(v: f64) -> Sign {
        if v > 0.0 {
            Sign::Pos
        } else if v < 0.0 {
            Sign::Neg
        } else {
            Sign::Zero
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Neg => '-',
            Sign::Zero => '0',
            Sign::Pos => '+',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Phase {
    Unbroken,
    Broken,
    NoBoundStates,
}

impl Phase {
    /// `(-, +)` is unbroken, equal nonzero signs are broken. Anything else
    /// (reversed labeling, vanishing edge value) has no normalizable ground state
    /// on the `V_-` side as labeled.
    pub fn from_signs(left: Sign, right: Sign) -> Phase {
        match (left, right) {
            (Sign::Neg, Sign::Pos) => Phase::Unbroken,
            (Sign::Neg, Sign::Neg) | (Sign::Pos, Sign::Pos) => Phase::Broken,
            _ => Phase::NoBoundStates,
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Unbroken => "unbroken",
            Phase::Broken => "broken",
            Phase::NoBoundStates => "no-bound-states",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhaseReport {
    pub phase: Phase,
    pub sign_left: Sign,
    pub sign_right: Sign,
    pub evidence: String,
}

#[derive(Clone, Copy, Debug)]
pub struct ParamRule {
    pub name: &'static str,
    pub rule: &'static str,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Minus,
    Plus,
}

pub(crate) struct BrokenBranch {
    pub applies: fn(&Coords) -> bool,
    pub energy: fn(usize, &Coords, f64) -> f64,
    pub levels: fn(&Coords, f64) -> Option<usize>,
}

/// One conventional (ħ-independent) catalog entry.
pub struct SuperpotentialSpec {
    pub name: &'static str,
    pub title: &'static str,
    pub si_type: SiType,
    pub si_class: SiClass,
    pub param_schema: &'static [ParamRule],
    pub domain: Domain,
    /// Representative interior window used for sampling grids.
    pub window: (f64, f64),
    pub(crate) to_coords: fn(&[f64]) -> Coords,
    pub(crate) from_coords: fn(&Coords) -> Vec<f64>,
    pub(crate) valid: fn(&Coords) -> std::result::Result<(), String>,
    pub(crate) w: fn(f64, &Coords) -> f64,
    pub(crate) dw: fn(f64, &Coords) -> f64,
    pub(crate) f1: fn(f64) -> f64,
    pub(crate) df1: fn(f64) -> f64,
    pub(crate) f2: fn(f64, &Coords) -> f64,
    pub(crate) u: fn(f64, &Coords) -> f64,
    pub(crate) g: fn(f64, &Coords) -> f64,
    pub(crate) edge_signs: fn(&Coords) -> (Sign, Sign),
    pub(crate) levels: fn(&Coords, f64) -> Option<usize>,
    pub(crate) broken: Option<BrokenBranch>,
    pub(crate) constants: fn(&Coords) -> Vec<(&'static str, f64)>,
}

/// Kernel plus an ħ-dependent tail `W_h`.
pub struct ExtendedSpec {
    pub name: &'static str,
    pub title: &'static str,
    pub kernel: &'static SuperpotentialSpec,
    pub param_schema: &'static [ParamRule],
    pub(crate) to_coords: fn(&[f64]) -> Coords,
    pub(crate) valid: fn(&Coords, f64) -> std::result::Result<(), String>,
    pub(crate) w_h: fn(f64, &Coords, f64) -> f64,
    pub(crate) dw_h: fn(f64, &Coords, f64) -> f64,
    /// Closed forms for (W, W') of the whole superpotential where kernel and tail
    /// cancel; `None` outside that region.
    pub(crate) total: Option<fn(f64, &Coords, f64) -> Option<(f64, f64)>>,
    pub(crate) constants: fn(&Coords) -> Vec<(&'static str, f64)>,
}

/// Common view over conventional and extended entries.
pub trait Superpotential: Sync {
    fn name(&self) -> &'static str;
    fn param_schema(&self) -> &'static [ParamRule];
    /// The conventional entry itself, or the kernel of an extension.
    fn kernel(&self) -> &'static SuperpotentialSpec;
    fn is_extended(&self) -> bool;
    fn coords_unchecked(&self, values: &[f64]) -> Coords;
    fn check(&self, c: &Coords, hbar: f64) -> Result<()>;
    fn w_at(&self, x: f64, c: &Coords, hbar: f64) -> f64;
    fn dw_at(&self, x: f64, c: &Coords, hbar: f64) -> f64;
    fn class_constants(&self, c: &Coords) -> Vec<(&'static str, f64)>;

    fn domain(&self) -> Domain {
        self.kernel().domain
    }

    fn si_class(&self) -> SiClass {
        self.kernel().si_class
    }

    fn g_at(&self, a: f64, c: &Coords) -> f64 {
        (self.kernel().g)(a, c)
    }

    /// Validates and resolves named parameters.
    fn coords(&self, params: &Params, hbar: f64) -> Result<Coords> {
        check_hbar(hbar)?;
        let names: Vec<&str> = self.param_schema().iter().map(|r| r.name).collect();
        let values = params.ordered(&names)?;
        let c = self.coords_unchecked(&values);
        self.check(&c, hbar)?;
        Ok(c)
    }

    fn v_at(&self, x: f64, c: &Coords, hbar: f64, side: Side) -> f64 {
        let w = self.w_at(x, c, hbar);
        let dw = self.dw_at(x, c, hbar);
        match side {
            Side::Minus => w * w - hbar * dw,
            Side::Plus => w * w + hbar * dw,
        }
    }
}

impl Superpotential for SuperpotentialSpec {
    fn name(&self) -> &'static str {
        self.name
    }
    fn param_schema(&self) -> &'static [ParamRule] {
        self.param_schema
    }
    fn kernel(&self) -> &'static SuperpotentialSpec {
        lookup_conventional(self.name).expect("catalog entry")
    }
    fn is_extended(&self) -> bool {
        false
    }
    fn coords_unchecked(&self, values: &[f64]) -> Coords {
        (self.to_coords)(values)
    }
    fn check(&self, c: &Coords, _hbar: f64) -> Result<()> {
        (self.valid)(c).map_err(|m| Error::Param(format!("{}: {m}", self.name)))
    }
    fn w_at(&self, x: f64, c: &Coords, _hbar: f64) -> f64 {
        (self.w)(x, c)
    }
    fn dw_at(&self, x: f64, c: &Coords, _hbar: f64) -> f64 {
        (self.dw)(x, c)
    }
    fn class_constants(&self, c: &Coords) -> Vec<(&'static str, f64)> {
        (self.constants)(c)
    }
}

impl Superpotential for ExtendedSpec {
    fn name(&self) -> &'static str {
        self.name
    }
    fn param_schema(&self) -> &'static [ParamRule] {
        self.param_schema
    }
    fn kernel(&self) -> &'static SuperpotentialSpec {
        self.kernel
    }
    fn is_extended(&self) -> bool {
        true
    }
    fn coords_unchecked(&self, values: &[f64]) -> Coords {
        (self.to_coords)(values)
    }
    fn check(&self, c: &Coords, hbar: f64) -> Result<()> {
        (self.valid)(c, hbar).map_err(|m| Error::Param(format!("{}: {m}", self.name)))
    }
    fn w_at(&self, x: f64, c: &Coords, hbar: f64) -> f64 {
        if let Some((w, _)) = self.total.and_then(|t| t(x, c, hbar)) {
            return w;
        }
        (self.kernel.w)(x, c) + (self.w_h)(x, c, hbar)
    }
    fn dw_at(&self, x: f64, c: &Coords, hbar: f64) -> f64 {
        if let Some((_, dw)) = self.total.and_then(|t| t(x, c, hbar)) {
            return dw;
        }
        (self.kernel.dw)(x, c) + (self.dw_h)(x, c, hbar)
    }
    fn class_constants(&self, c: &Coords) -> Vec<(&'static str, f64)> {
        (self.constants)(c)
    }
}

impl ExtendedSpec {
    /// The ħ-dependent tail alone.
    pub fn w_h(&self, x: f64, params: &Params, hbar: f64) -> Result<f64> {
        let c = self.coords(params, hbar)?;
        check_x(self.domain(), x)?;
        Ok((self.w_h)(x, &c, hbar))
    }
}

impl SuperpotentialSpec {
    pub fn f1(&self, x: f64) -> f64 {
        (self.f1)(x)
    }

    pub fn f1_prime(&self, x: f64) -> f64 {
        (self.df1)(x)
    }

    pub fn f2(&self, x: f64, c: &Coords) -> f64 {
        (self.f2)(x, c)
    }

    pub fn u(&self, a: f64, c: &Coords) -> f64 {
        (self.u)(a, c)
    }

    pub fn g(&self, a: f64, c: &Coords) -> f64 {
        (self.g)(a, c)
    }

    /// Edge signs of W from the closed-form asymptotics, i.e. the per-class sign
    /// conditions. [`classify_phase`] finds the same thing numerically.
    pub fn documented_edge_signs(&self, c: &Coords) -> (Sign, Sign) {
        (self.edge_signs)(c)
    }

    pub fn documented_phase(&self, c: &Coords) -> Phase {
        let (l, r) = (self.edge_signs)(c);
        Phase::from_signs(l, r)
    }

    pub fn params_of(&self, c: &Coords) -> Params {
        let values = (self.from_coords)(c);
        let mut p = Params::new();
        for (rule, v) in self.param_schema.iter().zip(values) {
            p.set(rule.name, v);
        }
        p
    }

    pub fn has_broken_spectrum(&self) -> bool {
        self.broken.is_some()
    }

    /// Number of bound states of `V_-` in the given phase; `None` means infinitely many.
    pub fn level_count(&self, c: &Coords, hbar: f64, phase: Phase) -> Result<Option<usize>> {
        match phase {
            Phase::Unbroken => Ok((self.levels)(c, hbar)),
            Phase::Broken => match &self.broken {
                Some(b) if (b.applies)(c) => Ok((b.levels)(c, hbar)),
                Some(_) => Err(Error::Phase(format!(
                    "{}: these parameters are outside the broken branch with bound states",
                    self.name
                ))),
                None => Err(Error::Phase(format!(
                    "class {} has no broken-phase spectrum",
                    self.si_class
                ))),
            },
            Phase::NoBoundStates => Err(Error::Phase(format!(
                "{}: no bound states for these parameters",
                self.name
            ))),
        }
    }

    /// Analytic level `n` in coordinates; `phase` must match the parameters.
    pub fn energy(&self, n: usize, c: &Coords, hbar: f64, phase: Phase) -> Result<f64> {
        let actual = self.documented_phase(c);
        if actual != phase {
            return Err(Error::Phase(format!(
                "{}: parameters lie in the {actual} phase, {phase} requested",
                self.name
            )));
        }
        if let Some(count) = self.level_count(c, hbar, phase)? {
            if n >= count {
                return Err(Error::Range {
                    n,
                    detail: format!("{} has {count} levels here", self.name),
                });
            }
        }
        Ok(match phase {
            Phase::Unbroken => {
                let g = self.g;
                g(c.a + n as f64 * hbar, c) - g(c.a, c)
            }
            Phase::Broken => (self.broken.as_ref().expect("checked").energy)(n, c, hbar),
            Phase::NoBoundStates => unreachable!(),
        })
    }

    /// Langer term (ħ²/4)·f1'(x).
    pub fn langer_delta_v(&self, x: f64, hbar: f64) -> f64 {
        0.25 * hbar * hbar * (self.df1)(x)
    }
}

pub fn conventional() -> &'static [SuperpotentialSpec] {
    &entries::CONVENTIONAL
}

pub fn extended() -> &'static [ExtendedSpec] {
    &entries::EXTENDED
}

pub fn names() -> Vec<&'static str> {
    conventional()
        .iter()
        .map(|s| s.name)
        .chain(extended().iter().map(|s| s.name))
        .collect()
}

pub fn lookup_conventional(name: &str) -> Option<&'static SuperpotentialSpec> {
    conventional().iter().find(|s| s.name == name)
}

pub fn lookup_extended(name: &str) -> Option<&'static ExtendedSpec> {
    extended().iter().find(|s| s.name == name)
}

pub fn lookup(name: &str) -> Result<&'static dyn Superpotential> {
    if let Some(s) = lookup_conventional(name) {
        return Ok(s);
    }
    if let Some(s) = lookup_extended(name) {
        return Ok(s);
    }
    Err(Error::UnknownPotential(name.to_string()))
}

fn check_hbar(hbar: f64) -> Result<()> {
    if hbar > 0.0 && hbar.is_finite() {
        Ok(())
    } else {
        Err(Error::Param(format!("hbar must be positive, got {hbar}")))
    }
}

fn check_x(d: Domain, x: f64) -> Result<()> {
    if d.contains(x) {
        Ok(())
    } else {
        Err(Error::Domain { x, lo: d.lo, hi: d.hi })
    }
}

/// Uniform interior grid over the entry's sampling window.
pub fn interior_grid(sp: &dyn Superpotential, points: usize) -> Vec<f64> {
    let (lo, hi) = sp.kernel().window;
    linspace(lo, hi, points)
}

pub(crate) fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![0.5 * (lo + hi)];
    }
    let step = (hi - lo) / (points - 1) as f64;
    (0..points).map(|i| lo + step * i as f64).collect()
}

#[allow(non_snake_case)]
pub fn evaluate_W(sp: &dyn Superpotential, x: f64, params: &Params, hbar: f64) -> Result<f64> {
    let c = sp.coords(params, hbar)?;
    check_x(sp.domain(), x)?;
    Ok(sp.w_at(x, &c, hbar))
}

pub fn evaluate_partner(
    sp: &dyn Superpotential,
    x: f64,
    params: &Params,
    hbar: f64,
    side: Side,
) -> Result<f64> {
    let c = sp.coords(params, hbar)?;
    check_x(sp.domain(), x)?;
    Ok(sp.v_at(x, &c, hbar, side))
}

/// Central-difference W' with step 1e-6·(1+|x|); used to audit the analytic derivatives.
pub fn numeric_dw(sp: &dyn Superpotential, x: f64, c: &Coords, hbar: f64) -> f64 {
    let h = 1e-6 * (1.0 + x.abs());
    (sp.w_at(x + h, c, hbar) - sp.w_at(x - h, c, hbar)) / (2.0 * h)
}

const PROBES: usize = 40;

fn probe_point(d: Domain, left: bool, delta: f64) -> f64 {
    let edge = if left { d.lo } else { d.hi };
    if edge.is_finite() {
        if left {
            edge + delta
        } else {
            edge - delta
        }
    } else {
        let theta = std::f64::consts::FRAC_PI_2 - delta;
        if left {
            -theta.tan()
        } else {
            theta.tan()
        }
    }
}

fn edge_sign(
    sp: &dyn Superpotential,
    c: &Coords,
    hbar: f64,
    left: bool,
) -> Result<(Sign, f64, f64)> {
    let d = sp.domain();
    let edge = if left { d.lo } else { d.hi };
    let d0 = if edge.is_finite() { (0.1 * d.width()).min(1.0) } else { 0.1 };
    let mut signs = Vec::with_capacity(PROBES);
    let mut last = (0.0, 0.0);
    for k in 0..PROBES {
        let delta = d0 * 0.5f64.powi(k as i32);
        let x = probe_point(d, left, delta);
        let w = sp.w_at(x, c, hbar);
        if w.is_nan() || !d.contains(x) {
            break;
        }
        signs.push(Sign::of(w));
        last = (x, w);
    }
    // The sign is read off the tail of the probe sequence: the last three probes
    // must agree. A prefix that agrees is not enough, since W may cross zero far out.
    let n = signs.len();
    if n >= 3 && signs[n - 1] == signs[n - 2] && signs[n - 2] == signs[n - 3] {
        Ok((signs[n - 1], last.0, last.1))
    } else {
        Err(Error::IndeterminateSign { edge: if left { "left" } else { "right" } })
    }
}

pub fn classify_phase(sp: &dyn Superpotential, params: &Params, hbar: f64) -> Result<PhaseReport> {
    let c = sp.coords(params, hbar)?;
    classify_phase_at(sp, &c, hbar)
}

pub fn classify_phase_at(sp: &dyn Superpotential, c: &Coords, hbar: f64) -> Result<PhaseReport> {
    let (sl, xl, wl) = edge_sign(sp, c, hbar, true)?;
    let (sr, xr, wr) = edge_sign(sp, c, hbar, false)?;
    let phase = Phase::from_signs(sl, sr);
    let evidence = format!(
        "W({xl:.6e}) = {wl:.6e} [{}], W({xr:.6e}) = {wr:.6e} [{}]",
        sl.symbol(),
        sr.symbol()
    );
    Ok(PhaseReport { phase, sign_left: sl, sign_right: sr, evidence })
}

pub fn analytic_energy(
    sp: &dyn Superpotential,
    n: usize,
    params: &Params,
    hbar: f64,
    phase: Phase,
) -> Result<f64> {
    let c = sp.coords(params, hbar)?;
    sp.kernel().energy(n, &c, hbar, phase)
}

/// max over `grid` of the shape-invariance mismatch between `a` and `a + ħ`.
pub fn shape_invariance_residual(
    sp: &dyn Superpotential,
    params: &Params,
    hbar: f64,
    grid: &[f64],
) -> Result<f64> {
    let c = sp.coords(params, hbar)?;
    shape_invariance_residual_at(sp, &c, hbar, grid)
}

pub fn shape_invariance_residual_at(
    sp: &dyn Superpotential,
    c: &Coords,
    hbar: f64,
    grid: &[f64],
) -> Result<f64> {
    let c1 = c.shifted(hbar);
    sp.check(&c1, hbar)
        .map_err(|e| Error::Param(format!("a + hbar is not a valid point: {e}")))?;
    let d = sp.domain();
    let mut worst: f64 = 0.0;
    for &x in grid {
        check_x(d, x)?;
        let w0 = sp.w_at(x, c, hbar);
        let w1 = sp.w_at(x, &c1, hbar);
        let lhs = w0 * w0 + hbar * sp.dw_at(x, c, hbar) + sp.g_at(c.a, c);
        let rhs = w1 * w1 - hbar * sp.dw_at(x, &c1, hbar) + sp.g_at(c1.a, &c1);
        worst = worst.max((lhs - rhs).abs());
    }
    Ok(worst)
}

/// Scale for the shape-invariance tolerance: max(1, |g(a+ħ)|).
pub fn shape_invariance_scale(sp: &dyn Superpotential, c: &Coords, hbar: f64) -> f64 {
    let c1 = c.shifted(hbar);
    sp.g_at(c1.a, &c1).abs().max(1.0)
}

/// Steps for [`pde_constraint_residuals_with_step`].
#[derive(Clone, Copy, Debug)]
pub struct PdeSteps {
    /// Relative step for the first-order residual.
    pub first: f64,
    /// Relative a-step for the mixed third derivative.
    pub mixed_a: f64,
    /// Relative x-step for the mixed third derivative.
    pub mixed_x: f64,
}

impl Default for PdeSteps {
    fn default() -> Self {
        PdeSteps { first: 1e-5, mixed_a: 0.05, mixed_x: 1e-3 }
    }
}

pub fn pde_constraint_residuals(
    sp: &dyn Superpotential,
    params: &Params,
    grid: &[f64],
) -> Result<(f64, f64)> {
    pde_constraint_residuals_with_step(sp, params, grid, PdeSteps::default())
}

/// `r1 = max|W ∂aW − ∂xW + ġ/2|`, `r2 = max|∂³W/∂a²∂x|`. The a-derivatives are central
/// differences; ∂xW is analytic in r1 and a nested central difference in r2.
pub fn pde_constraint_residuals_with_step(
    sp: &dyn Superpotential,
    params: &Params,
    grid: &[f64],
    steps: PdeSteps,
) -> Result<(f64, f64)> {
    if sp.is_extended() {
        return Err(Error::NotApplicable(format!(
            "{} depends on hbar explicitly",
            sp.name()
        )));
    }
    let c = sp.coords(params, 1.0)?;
    let d = sp.domain();
    let w = |x: f64, a: f64| sp.w_at(x, &Coords { a, ..c }, 1.0);
    let ha = steps.first * (1.0 + c.a.abs());
    let gdot = (sp.g_at(c.a + ha, &c) - sp.g_at(c.a - ha, &c)) / (2.0 * ha);
    let ma = steps.mixed_a * (1.0 + c.a.abs());
    let mut r1: f64 = 0.0;
    let mut r2: f64 = 0.0;
    for &x in grid {
        check_x(d, x)?;
        let wa = (w(x, c.a + ha) - w(x, c.a - ha)) / (2.0 * ha);
        let res = w(x, c.a) * wa - sp.dw_at(x, &c, 1.0) + 0.5 * gdot;
        r1 = r1.max(res.abs());

        let hx = steps.mixed_x * (1.0 + x.abs());
        let dx = |a: f64| (w(x + hx, a) - w(x - hx, a)) / (2.0 * hx);
        let mixed = (dx(c.a + ma) - 2.0 * dx(c.a) + dx(c.a - ma)) / (ma * ma);
        r2 = r2.max(mixed.abs());
    }
    Ok((r1, r2))
}

/// `exp(−(1/ħ)∫_{x0}^{x} W dt)`, unnormalized.
pub fn ground_state_wavefunction(
    sp: &dyn Superpotential,
    params: &Params,
    hbar: f64,
    x: f64,
    x0: f64,
) -> Result<f64> {
    let c = sp.coords(params, hbar)?;
    let d = sp.domain();
    check_x(d, x)?;
    check_x(d, x0)?;
    let phase = sp.kernel().documented_phase(&c);
    if phase != Phase::Unbroken {
        return Err(Error::Phase(format!(
            "{}: ground state exp(-∫W/ħ) is not normalizable in the {phase} phase",
            sp.name()
        )));
    }
    let integral = quadrature::integrate_adaptive(|t| sp.w_at(t, &c, hbar), x0, x, 1e-13)?;
    Ok((-integral / hbar).exp())
}

/// Maps the restricted Morse extension onto Scarf II and returns the largest
/// pointwise mismatch of W over `grid` (after the shift x' = x − β).
pub fn restricted_extension_maps_to_scarf(
    p: f64,
    q: f64,
    a: f64,
    hbar: f64,
    grid: &[f64],
) -> Result<f64> {
    if q * hbar * hbar <= 0.0 {
        return Err(Error::Param(format!(
            "Q·hbar² = {} must be positive for a real shift",
            q * hbar * hbar
        )));
    }
    if a >= 0.0 {
        return Err(Error::Param("a must be negative".into()));
    }
    let ext = lookup_extended("morse-restricted-ext").expect("catalog entry");
    let scarf = lookup_conventional("scarf-hyp").expect("catalog entry");
    let ce = ext.coords(&Params::from_pairs(&[("P", p), ("Q", q), ("a", a)]), hbar)?;
    let beta = 0.5 * (q * hbar * hbar).ln();
    let p_prime = hbar * hbar * p;
    let big_b = (2.0 * p_prime - 1.0) * (-beta).exp() / 2.0;
    let cs = scarf.coords(&Params::from_pairs(&[("A", -a), ("B", big_b)]), hbar)?;
    let mut worst: f64 = 0.0;
    for &x in grid {
        let lhs = ext.w_at(x, &ce, hbar);
        let rhs = scarf.w_at(x - beta, &cs, hbar);
        worst = worst.max((lhs - rhs).abs());
    }
    Ok(worst)
}
