//! Projections from hypergeometric (type-I) to confluent (type-II) superpotentials.
//!
//! Each projection rescales the source parameters by a limit parameter, α → 0 or
//! β → ∞, and the source superpotential and spectrum approach the target's. The
//! source forms carry the extra α, β that the catalog entries fix at 1 and 0;
//! targets are evaluated through the catalog.

use std::f64::consts::{E, FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use crate::catalog::{lookup, Domain, Params, Phase, Superpotential};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProjectionName {
    P1a,
    P2a,
    P2b,
    P3b,
    P4c,
    P6c,
}

impl ProjectionName {
    pub const ALL: [ProjectionName; 6] = [
        ProjectionName::P1a,
        ProjectionName::P2a,
        ProjectionName::P2b,
        ProjectionName::P3b,
        ProjectionName::P4c,
        ProjectionName::P6c,
    ];
}

impl fmt::Display for ProjectionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for ProjectionName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ProjectionName::ALL
            .into_iter()
            .find(|p| p.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Param(format!("unknown projection `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitKind {
    /// β → ∞; successive samples step β by one.
    ParamToInfinity,
    /// α → 0; successive samples halve α.
    ParamToZero,
}

/// Source parameters in the two-scale form A, B, α, β.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SourceParams {
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
    pub beta: f64,
}

/// Mapped source point; the source is evaluated at x_target + shift.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mapped {
    pub source: SourceParams,
    pub shift: f64,
}

pub struct ProjectionSpec {
    pub name: ProjectionName,
    /// Catalog entry of the source at α = 1, β = 0.
    pub source: &'static str,
    pub target: &'static str,
    pub limit_kind: LimitKind,
    /// Redefinitions, in the order they are applied.
    pub cell: &'static [&'static str],
    pub target_params: &'static [&'static str],
    map: fn(&Params, f64) -> Result<Mapped>,
    w: fn(f64, &SourceParams) -> f64,
    energy: fn(usize, &SourceParams, f64) -> f64,
    levels: fn(&SourceParams, f64) -> Option<usize>,
    domain: fn(&SourceParams) -> Domain,
}

impl fmt::Debug for ProjectionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProjectionSpec")
            .field("name", &self.name)
            .field("source", &self.source)
            .field("target", &self.target)
            .field("limit_kind", &self.limit_kind)
            .finish()
    }
}

fn coth(x: f64) -> f64 {
    1.0 / x.tanh()
}

fn csch(x: f64) -> f64 {
    1.0 / x.sinh()
}

fn sech(x: f64) -> f64 {
    1.0 / x.cosh()
}

fn get(p: &Params, k: &str) -> Result<f64> {
    p.get(k).ok_or_else(|| Error::Param(format!("missing parameter `{k}`")))
}

fn morse_target(p: &Params) -> Result<(f64, f64)> {
    let a = get(p, "A")?;
    let b = p.get("B").unwrap_or(1.0);
    if !(b > 0.0) || !(a > 0.0) {
        return Err(Error::Param(format!("Morse target needs A > 0 and B > 0, got A={a}, B={b}")));
    }
    Ok((a, b))
}

fn pair(p: &Params, k1: &str, k2: &str) -> Result<(f64, f64)> {
    Ok((get(p, k1)?, get(p, k2)?))
}

// Two-parameter hyperbolic/trigonometric spectra.
fn e_down(n: usize, s: &SourceParams, hbar: f64) -> f64 {
    let m = n as f64 * s.alpha * hbar;
    s.a * s.a - (s.a - m).powi(2)
}

fn levels_down(s: &SourceParams, hbar: f64) -> Option<usize> {
    Some((s.a / (s.alpha * hbar)).ceil().max(0.0) as usize)
}

fn e_rm(n: usize, s: &SourceParams, hbar: f64, sign: f64) -> f64 {
    let an = s.a + n as f64 * s.alpha * hbar;
    sign * (s.a * s.a - an * an) + s.b * s.b / (s.a * s.a) - s.b * s.b / (an * an)
}

static PROJECTIONS: [ProjectionSpec; 6] = [
    ProjectionSpec {
        name: ProjectionName::P1a,
        source: "scarf-hyp",
        target: "morse",
        limit_kind: LimitKind::ParamToInfinity,
        cell: &["A → A", "B → −B e^β/2", "β → ∞"],
        target_params: &["A", "B"],
        map: |p, beta| {
            let (a, b) = morse_target(p)?;
            Ok(Mapped { source: SourceParams { a, b: -b * beta.exp() / 2.0, alpha: 1.0, beta }, shift: 0.0 })
        },
        w: |x, s| s.a * (x + s.beta).tanh() + s.b * sech(x + s.beta),
        energy: e_down,
        levels: |s, hbar| Some((s.a / hbar).ceil().max(0.0) as usize),
        domain: |_| Domain { lo: f64::NEG_INFINITY, hi: f64::INFINITY },
    },
    ProjectionSpec {
        name: ProjectionName::P2a,
        source: "poschl-teller",
        target: "morse",
        limit_kind: LimitKind::ParamToInfinity,
        cell: &["A → A", "B → B e^β/2, α → 1", "β → ∞, r → x"],
        target_params: &["A", "B"],
        map: |p, beta| {
            let (a, b) = morse_target(p)?;
            Ok(Mapped { source: SourceParams { a, b: b * beta.exp() / 2.0, alpha: 1.0, beta }, shift: 0.0 })
        },
        w: |r, s| s.a * coth(s.alpha * r + s.beta) - s.b * csch(s.alpha * r + s.beta),
        energy: e_down,
        levels: levels_down,
        domain: |s| Domain { lo: -s.beta / s.alpha, hi: f64::INFINITY },
    },
    ProjectionSpec {
        name: ProjectionName::P2b,
        source: "poschl-teller",
        target: "3d-oscillator",
        limit_kind: LimitKind::ParamToZero,
        cell: &["A → ω/α − αℓ/2", "B → ω/α + αℓ/2", "β → 0, α → 0"],
        target_params: &["omega", "ell"],
        map: |p, alpha| {
            let (w, l) = pair(p, "omega", "ell")?;
            Ok(Mapped {
                source: SourceParams { a: w / alpha - alpha * l / 2.0, b: w / alpha + alpha * l / 2.0, alpha, beta: 0.0 },
                shift: 0.0,
            })
        },
        w: |r, s| s.a * coth(s.alpha * r + s.beta) - s.b * csch(s.alpha * r + s.beta),
        energy: e_down,
        levels: levels_down,
        domain: |s| Domain { lo: -s.beta / s.alpha, hi: f64::INFINITY },
    },
    ProjectionSpec {
        name: ProjectionName::P3b,
        source: "scarf-trig",
        target: "3d-oscillator",
        limit_kind: LimitKind::ParamToZero,
        cell: &["A → ω/α + αℓ/2", "B → ω/α − αℓ/2", "x → r + π/(2α), α → 0"],
        target_params: &["omega", "ell"],
        map: |p, alpha| {
            let (w, l) = pair(p, "omega", "ell")?;
            Ok(Mapped {
                source: SourceParams { a: w / alpha + alpha * l / 2.0, b: w / alpha - alpha * l / 2.0, alpha, beta: 0.0 },
                shift: FRAC_PI_2 / alpha,
            })
        },
        w: |x, s| s.a * (s.alpha * x).tan() - s.b / (s.alpha * x).cos(),
        energy: |n, s, hbar| (s.a + n as f64 * s.alpha * hbar).powi(2) - s.a * s.a,
        levels: |_, _| None,
        // The shifted coordinate runs over the next period cell, where the same
        // closed form is regular.
        domain: |s| Domain { lo: FRAC_PI_2 / s.alpha, hi: 1.5 * PI / s.alpha },
    },
    ProjectionSpec {
        name: ProjectionName::P4c,
        source: "rosen-morse-trig",
        target: "coulomb",
        limit_kind: LimitKind::ParamToZero,
        cell: &["A → αℓ", "B → −(α/2)e²", "α → 0, x → r"],
        target_params: &["e2", "ell"],
        map: |p, alpha| {
            let (e2, l) = pair(p, "e2", "ell")?;
            Ok(Mapped { source: SourceParams { a: alpha * l, b: -alpha * e2 / 2.0, alpha, beta: 0.0 }, shift: 0.0 })
        },
        w: |x, s| -s.a / (s.alpha * x).tan() - s.b / s.a,
        energy: |n, s, hbar| e_rm(n, s, hbar, -1.0),
        levels: |_, _| None,
        domain: |s| Domain { lo: 0.0, hi: PI / s.alpha },
    },
    ProjectionSpec {
        name: ProjectionName::P6c,
        source: "eckart",
        target: "coulomb",
        limit_kind: LimitKind::ParamToZero,
        cell: &["A → αℓ", "B → (α/2)e²", "α → 0"],
        target_params: &["e2", "ell"],
        map: |p, alpha| {
            let (e2, l) = pair(p, "e2", "ell")?;
            Ok(Mapped { source: SourceParams { a: alpha * l, b: alpha * e2 / 2.0, alpha, beta: 0.0 }, shift: 0.0 })
        },
        w: |r, s| -s.a * coth(s.alpha * r) + s.b / s.a,
        energy: |n, s, hbar| e_rm(n, s, hbar, 1.0),
        levels: |s, hbar| {
            // levels while (A + nαħ)² < B
            let top = (s.b.sqrt() - s.a) / (s.alpha * hbar);
            Some(if top > 0.0 { top.ceil() as usize } else { 0 })
        },
        domain: |_| Domain { lo: 0.0, hi: f64::INFINITY },
    },
];

pub fn projections() -> &'static [ProjectionSpec] {
    &PROJECTIONS
}

pub fn projection(name: ProjectionName) -> &'static ProjectionSpec {
    PROJECTIONS.iter().find(|p| p.name == name).expect("every name has a spec")
}

/// Target parameters used by default and in the acceptance runs.
pub fn default_target(name: ProjectionName) -> Params {
    match name {
        ProjectionName::P1a | ProjectionName::P2a => Params::from_pairs(&[("A", 5.0), ("B", 1.0)]),
        ProjectionName::P2b | ProjectionName::P3b => Params::from_pairs(&[("omega", 1.0), ("ell", 3.0)]),
        ProjectionName::P4c | ProjectionName::P6c => Params::from_pairs(&[("e2", 2.0), ("ell", 1.0)]),
    }
}

/// Target-side window for pointwise comparison.
pub fn default_window(name: ProjectionName) -> (f64, f64) {
    match name {
        ProjectionName::P1a | ProjectionName::P2a => (-2.0, 2.0),
        _ => (0.5, 5.0),
    }
}

impl ProjectionSpec {
    fn check_eps(&self, eps: f64) -> std::result::Result<(), String> {
        let ok = match self.limit_kind {
            LimitKind::ParamToZero => eps > 0.0 && eps.is_finite(),
            LimitKind::ParamToInfinity => eps.is_finite() && eps > 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(format!("{}: limit parameter {eps} is at or beyond the limit", self.name))
        }
    }

    /// Source parameters for the given target point and limit parameter.
    pub fn map(&self, target: &Params, eps: f64) -> Result<Mapped> {
        self.check_eps(eps).map_err(Error::Param)?;
        (self.map)(target, eps)
    }

    pub fn source_w(&self, x: f64, s: &SourceParams) -> f64 {
        (self.w)(x, s)
    }

    pub fn source_energy(&self, n: usize, s: &SourceParams, hbar: f64) -> f64 {
        (self.energy)(n, s, hbar)
    }

    pub fn source_level_count(&self, s: &SourceParams, hbar: f64) -> Option<usize> {
        (self.levels)(s, hbar)
    }

    pub fn source_domain(&self, s: &SourceParams) -> Domain {
        (self.domain)(s)
    }

    fn target_sp(&self) -> &'static dyn Superpotential {
        lookup(self.target).expect("targets are catalog entries")
    }

    fn target_catalog_params(&self, target: &Params) -> Result<(Params, f64)> {
        if self.target == "morse" {
            // A − B e^{−x} is the catalog Morse shifted by ln B.
            let (a, b) = morse_target(target)?;
            Ok((Params::from_pairs(&[("A", a)]), b.ln()))
        } else {
            Ok((target.clone(), 0.0))
        }
    }

    pub fn target_w(&self, x: f64, target: &Params, hbar: f64) -> Result<f64> {
        let (p, shift) = self.target_catalog_params(target)?;
        let sp = self.target_sp();
        let c = sp.coords(&p, hbar)?;
        Ok(sp.w_at(x - shift, &c, hbar))
    }

    pub fn target_energy(&self, n: usize, target: &Params, hbar: f64) -> Result<f64> {
        let (p, _) = self.target_catalog_params(target)?;
        let sp = self.target_sp();
        let c = sp.coords(&p, hbar)?;
        sp.kernel().energy(n, &c, hbar, Phase::Unbroken)
    }
}

/// |E_n(source at eps) − E_n(target)| from the closed-form spectra.
pub fn spectral_limit_error(
    proj: &ProjectionSpec,
    target: &Params,
    n: usize,
    eps: f64,
    hbar: f64,
) -> Result<f64> {
    proj.check_eps(eps).map_err(|detail| Error::Range { n, detail })?;
    let m = (proj.map)(target, eps)?;
    if let Some(count) = proj.source_level_count(&m.source, hbar) {
        if n >= count {
            return Err(Error::Range {
                n,
                detail: format!("{} source has {count} levels at eps = {eps}", proj.name),
            });
        }
    }
    let et = proj.target_energy(n, target, hbar)?;
    Ok((proj.source_energy(n, &m.source, hbar) - et).abs())
}

/// max over `grid` of |W_source(x + shift) − W_target(x)|.
pub fn potential_limit_error(
    proj: &ProjectionSpec,
    target: &Params,
    eps: f64,
    grid: &[f64],
    hbar: f64,
) -> Result<f64> {
    let m = proj.map(target, eps)?;
    let sd = proj.source_domain(&m.source);
    let td = lookup(proj.target)?.domain();
    let mut worst = 0.0f64;
    for &x in grid {
        let xs = x + m.shift;
        if !td.contains(x) || !sd.contains(xs) {
            return Err(Error::DomainMsg(format!(
                "{}: x = {x} maps to {xs}, outside the source domain ({}, {}) at eps = {eps}",
                proj.name, sd.lo, sd.hi
            )));
        }
        let d = (proj.source_w(xs, &m.source) - proj.target_w(x, target, hbar)?).abs();
        worst = worst.max(d);
    }
    Ok(worst)
}

/// Successive limit parameters: α halving from `start`, or β stepping by one.
pub fn eps_sequence(kind: LimitKind, start: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| match kind {
            LimitKind::ParamToZero => start / 2f64.powi(i as i32),
            LimitKind::ParamToInfinity => start + i as f64,
        })
        .collect()
}

/// Error ratio expected between successive samples.
pub fn expected_ratio(kind: LimitKind) -> f64 {
    match kind {
        LimitKind::ParamToZero => 4.0,
        LimitKind::ParamToInfinity => E,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LimitTrend {
    pub projection: ProjectionName,
    pub eps: Vec<f64>,
    pub errors: Vec<f64>,
    /// errors[i] / errors[i+1].
    pub ratios: Vec<f64>,
    pub expected_ratio: f64,
    pub pass: bool,
}

/// Ratios within this relative distance of the expected one count as matching.
pub const RATIO_TOL: f64 = 0.15;

fn trend(proj: &ProjectionSpec, eps: Vec<f64>, errors: Vec<f64>, expected: f64) -> LimitTrend {
    let ratios: Vec<f64> = errors.windows(2).map(|w| w[0] / w[1]).collect();
    let pass = !ratios.is_empty()
        && errors.windows(2).all(|w| w[1] < w[0])
        && ratios.iter().all(|r| r.is_finite() && (r / expected - 1.0).abs() <= RATIO_TOL);
    LimitTrend { projection: proj.name, eps, errors, ratios, expected_ratio: expected, pass }
}

pub fn default_start(kind: LimitKind) -> f64 {
    match kind {
        LimitKind::ParamToZero => 1e-1,
        LimitKind::ParamToInfinity => 4.0,
    }
}

/// Spectral errors for level `n` at `count` successive limit parameters.
pub fn spectral_trend(
    proj: &ProjectionSpec,
    target: &Params,
    n: usize,
    hbar: f64,
    count: usize,
) -> Result<LimitTrend> {
    let eps = eps_sequence(proj.limit_kind, default_start(proj.limit_kind), count);
    let errors = eps
        .iter()
        .map(|&e| spectral_limit_error(proj, target, n, e, hbar))
        .collect::<Result<Vec<_>>>()?;
    Ok(trend(proj, eps, errors, expected_ratio(proj.limit_kind)))
}

/// Pointwise superpotential errors on `grid` at `count` successive limit
/// parameters, judged against the same expected ratio.
pub fn potential_trend(
    proj: &ProjectionSpec,
    target: &Params,
    grid: &[f64],
    hbar: f64,
    count: usize,
) -> Result<LimitTrend> {
    let eps = eps_sequence(proj.limit_kind, default_start(proj.limit_kind), count);
    let errors = eps
        .iter()
        .map(|&e| potential_limit_error(proj, target, e, grid, hbar))
        .collect::<Result<Vec<_>>>()?;
    Ok(trend(proj, eps, errors, expected_ratio(proj.limit_kind)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::linspace;

    #[test]
    fn p6c_spectral_example() {
        let p = projection(ProjectionName::P6c);
        let t = Params::from_pairs(&[("e2", 2.0), ("ell", 1.0)]);
        let err = spectral_limit_error(p, &t, 1, 1e-3, 1.0).unwrap();
        assert!((err - 3e-6).abs() < 1e-12, "{err}");
    }

    #[test]
    fn p2b_is_quadratic() {
        let p = projection(ProjectionName::P2b);
        let t = Params::from_pairs(&[("omega", 1.0), ("ell", 3.0)]);
        let a = spectral_limit_error(p, &t, 2, 1e-2, 1.0).unwrap();
        let b = spectral_limit_error(p, &t, 2, 5e-3, 1.0).unwrap();
        assert!((a / b - 4.0).abs() < 1e-3, "{}", a / b);
    }

    #[test]
    fn at_the_limit_is_a_range_error() {
        for p in projections() {
            let eps = match p.limit_kind {
                LimitKind::ParamToZero => 0.0,
                LimitKind::ParamToInfinity => f64::INFINITY,
            };
            let r = spectral_limit_error(p, &default_target(p.name), 1, eps, 1.0);
            assert!(matches!(r, Err(Error::Range { .. })), "{}", p.name);
        }
    }

    #[test]
    fn source_forms_match_catalog_at_unit_scale() {
        let s = SourceParams { a: 4.0, b: 1.5, alpha: 1.0, beta: 0.0 };
        for p in projections() {
            let sp = lookup(p.source).unwrap();
            let c = sp.coords(&Params::from_pairs(&[("A", s.a), ("B", s.b)]), 1.0).unwrap();
            for x in crate::catalog::interior_grid(sp, 50) {
                let (w1, w2) = (p.source_w(x, &s), sp.w_at(x, &c, 1.0));
                assert!((w1 - w2).abs() < 1e-12 * w2.abs().max(1.0), "{} x={x}: {w1} vs {w2}", p.name);
            }
        }
    }

    #[test]
    fn potential_limits_converge() {
        for p in projections() {
            let t = default_target(p.name);
            let (lo, hi) = default_window(p.name);
            let grid = linspace(lo, hi, 41);
            let (far, near) = match p.limit_kind {
                LimitKind::ParamToZero => (1e-1, 1e-3),
                LimitKind::ParamToInfinity => (4.0, 12.0),
            };
            let e1 = potential_limit_error(p, &t, far, &grid, 1.0).unwrap();
            let e2 = potential_limit_error(p, &t, near, &grid, 1.0).unwrap();
            assert!(e2 < e1 && e2 < 1e-4, "{}: {e1} -> {e2}", p.name);
        }
    }

    #[test]
    fn p1a_potential_tail_bound() {
        let p = projection(ProjectionName::P1a);
        let t = default_target(p.name);
        let grid = linspace(-2.0, 2.0, 81);
        let e10 = potential_limit_error(p, &t, 10.0, &grid, 1.0).unwrap();
        assert!(e10 <= (-10f64).exp());
    }

    #[test]
    fn domain_mismatch_is_reported() {
        let p = projection(ProjectionName::P2a);
        let t = default_target(p.name);
        // r > −β at β = 1 excludes x = −2.
        assert!(matches!(
            potential_limit_error(p, &t, 1.0, &[-2.0, 0.0], 1.0),
            Err(Error::DomainMsg(_))
        ));
    }

    #[test]
    fn names_parse() {
        for n in ProjectionName::ALL {
            assert_eq!(n.to_string().parse::<ProjectionName>().unwrap(), n);
        }
    }
}
