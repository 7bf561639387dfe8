//! Numerov bound-state solver on a uniform grid.
//!
//! Only potential values enter here, never the superpotential, so the spectra it
//! returns can be held against the closed forms without circularity. Levels are
//! located by counting sign changes of the Dirichlet shooting solution, which is
//! monotone in E, then bisecting on the count.

use std::sync::Arc;

use crate::catalog::{classify_phase_at, Domain, Params, Phase, Side, Superpotential};
use crate::error::{Error, Result};
use crate::quadrature;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryKind {
    /// The domain ends here; ψ = 0 is exact.
    HardWall,
    /// Infinite side truncated where the tail has decayed.
    DecayingTail,
    /// Singular edge (centrifugal or trigonometric wall) offset by `r_min`.
    CentrifugalRegularized,
}

pub type Sampler = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// V on x_i = x0 + i·h, i = 0..N−1. ψ vanishes at x_0 and x_{N−1}.
#[derive(Clone)]
pub struct GridPotential {
    pub x0: f64,
    pub h: f64,
    pub v: Vec<f64>,
    pub left: BoundaryKind,
    pub right: BoundaryKind,
    sampler: Option<Sampler>,
}

impl std::fmt::Debug for GridPotential {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GridPotential")
            .field("x0", &self.x0)
            .field("h", &self.h)
            .field("len", &self.v.len())
            .field("left", &self.left)
            .field("right", &self.right)
            .finish()
    }
}

/// Smallest grid accepted.
pub const MIN_POINTS: usize = 2001;

impl GridPotential {
    /// Fixed values. Refinement checks then compare h with 2h.
    pub fn from_values(
        x0: f64,
        h: f64,
        v: Vec<f64>,
        left: BoundaryKind,
        right: BoundaryKind,
    ) -> Result<Self> {
        let g = GridPotential { x0, h, v, left, right, sampler: None };
        g.validate()?;
        Ok(g)
    }

    /// Samples `f` on [lo, hi] with `n` points; the sampler is kept so the grid can
    /// be refined.
    pub fn sample(
        f: Sampler,
        lo: f64,
        hi: f64,
        n: usize,
        left: BoundaryKind,
        right: BoundaryKind,
    ) -> Result<Self> {
        if !(hi > lo) || n < 2 {
            return Err(Error::DegenerateInterval(format!("grid [{lo}, {hi}] with {n} points")));
        }
        let h = (hi - lo) / (n - 1) as f64;
        let v = (0..n).map(|i| f(lo + i as f64 * h)).collect();
        let g = GridPotential { x0: lo, h, v, left, right, sampler: Some(f) };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        if self.v.len() < MIN_POINTS {
            return Err(Error::DomainMsg(format!(
                "grid has {} points, at least {MIN_POINTS} required",
                self.v.len()
            )));
        }
        if let Some(i) = self.v.iter().position(|v| !v.is_finite()) {
            return Err(Error::DomainMsg(format!("V is not finite at x = {}", self.x(i))));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v.is_empty()
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.h
    }

    pub fn hi(&self) -> f64 {
        self.x(self.v.len() - 1)
    }

    /// Continuum threshold: the lower edge value of V over tail edges, +∞ if both
    /// edges are walls.
    pub fn threshold(&self) -> f64 {
        let mut t = f64::INFINITY;
        if self.left == BoundaryKind::DecayingTail {
            t = t.min(self.v[0]);
        }
        if self.right == BoundaryKind::DecayingTail {
            t = t.min(*self.v.last().unwrap());
        }
        t
    }

    /// Same interval at half the spacing, if a sampler is available.
    pub fn refined(&self) -> Option<Self> {
        let f = self.sampler.clone()?;
        let n = 2 * self.v.len() - 1;
        GridPotential::sample(f, self.x0, self.hi(), n, self.left, self.right).ok()
    }

    /// Every other point: spacing 2h. Requires an odd length.
    fn coarsened(&self) -> Option<Self> {
        if self.v.len() % 2 == 0 || (self.v.len() + 1) / 2 < 3 {
            return None;
        }
        Some(GridPotential {
            x0: self.x0,
            h: 2.0 * self.h,
            v: self.v.iter().step_by(2).copied().collect(),
            left: self.left,
            right: self.right,
            sampler: None,
        })
    }
}

/// Numerov weight k_i = h²(V_i − E)/(12ħ²).
fn weights(pot: &GridPotential, hbar: f64, e: f64) -> impl Iterator<Item = f64> + '_ {
    let s = pot.h * pot.h / (12.0 * hbar * hbar);
    pot.v.iter().map(move |&v| s * (v - e))
}

/// Indices [i0, i1] where the recurrence is well conditioned (k < ½); outside, ψ is
/// held at zero.
fn active_range(k: &[f64]) -> Option<(usize, usize)> {
    let inner = &k[1..k.len() - 1];
    let i0 = inner.iter().position(|&k| k < 0.5)? + 1;
    let i1 = inner.iter().rposition(|&k| k < 0.5)? + 1;
    (i1 > i0 + 1).then_some((i0, i1))
}

const RESCALE: f64 = 1e150;

/// Number of grid eigenvalues below `e`.
pub fn count_below(pot: &GridPotential, hbar: f64, e: f64) -> usize {
    let k: Vec<f64> = weights(pot, hbar, e).collect();
    let Some((i0, i1)) = active_range(&k) else { return 0 };
    // ψ_{i0-1} = 0 at the effective left wall, ψ_{i1+1} = 0 at the right one.
    let mut prev = 0.0;
    let mut cur = 1.0;
    let mut nodes = 0;
    let mut kp = k[i0 - 1];
    for i in i0..=i1 {
        // At i1 the wall value the recurrence would need decides the last crossing;
        // only its sign matters.
        let kn = if i == i1 { 0.0 } else { k[i + 1] };
        let next = (2.0 * (1.0 + 5.0 * k[i]) * cur - (1.0 - kp) * prev) / (1.0 - kn);
        if next == 0.0 || (next < 0.0) != (cur < 0.0) {
            nodes += 1;
        }
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            prev /= RESCALE;
            cur /= RESCALE;
        }
        kp = k[i];
    }
    nodes
}

/// Grid eigenvalue with node count `n`, by bisection on `count_below`.
fn grid_level(pot: &GridPotential, hbar: f64, n: usize, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 1e-12 * mid.abs().max(1.0) {
            break;
        }
        if count_below(pot, hbar, mid) > n {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

fn grid_spectrum(pot: &GridPotential, hbar: f64, count: usize) -> Result<Vec<f64>> {
    let vmin = pot.v.iter().copied().fold(f64::INFINITY, f64::min);
    let threshold = pot.threshold();
    let mut top = if threshold.is_finite() {
        threshold
    } else {
        let span = pot.hi() - pot.x0;
        vmin + 1.0 + (hbar * std::f64::consts::PI * count as f64 / span).powi(2) * 4.0
    };
    let found = count_below(pot, hbar, top);
    if found < count {
        if threshold.is_finite() {
            return Err(Error::InsufficientBoundStates { found, wanted: count });
        }
        let mut tries = 0;
        while count_below(pot, hbar, top) < count {
            top = vmin + 2.0 * (top - vmin);
            tries += 1;
            if tries > 200 {
                return Err(Error::InsufficientBoundStates { found, wanted: count });
            }
        }
    }
    let mut out = Vec::with_capacity(count);
    let mut lo = vmin;
    for n in 0..count {
        let e = grid_level(pot, hbar, n, lo, top);
        out.push(e);
        lo = e;
    }
    Ok(out)
}

fn level_tol(e: f64) -> f64 {
    1e-7 * e.abs().max(1.0)
}

/// Upper bound on grid points during refinement.
pub const MAX_POINTS: usize = 1 << 22;

/// The lowest `count` eigenvalues, ordered by node count. The grid is refined until
/// consecutive spacings agree to 1e−7·max(1, |E|); the returned values are the
/// Richardson extrapolation of the last pair.
pub fn solve_bound_states(pot: &GridPotential, hbar: f64, count: usize) -> Result<Vec<f64>> {
    if !(hbar > 0.0 && hbar.is_finite()) {
        return Err(Error::Param(format!("hbar must be positive, got {hbar}")));
    }
    if pot.sampler.is_none() {
        let coarse = pot
            .coarsened()
            .ok_or_else(|| Error::DomainMsg("fixed grids need an odd number of points".into()))?;
        let fine = grid_spectrum(pot, hbar, count)?;
        let rough = grid_spectrum(&coarse, hbar, count)?;
        return extrapolate(&rough, &fine);
    }
    let mut grid = pot.clone();
    let mut coarse = grid_spectrum(&grid, hbar, count)?;
    loop {
        let next = grid.refined().expect("sampler present");
        let fine = grid_spectrum(&next, hbar, count)?;
        match extrapolate(&coarse, &fine) {
            Ok(v) => return Ok(v),
            Err(e) if next.len() * 2 > MAX_POINTS => return Err(e),
            Err(_) => {
                grid = next;
                coarse = fine;
            }
        }
    }
}

fn extrapolate(coarse: &[f64], fine: &[f64]) -> Result<Vec<f64>> {
    for (n, (c, f)) in coarse.iter().zip(fine).enumerate() {
        let shift = (f - c).abs();
        if shift > level_tol(*f) {
            return Err(Error::GridTooCoarse { level: n, shift });
        }
    }
    Ok(coarse.iter().zip(fine).map(|(c, f)| f + (f - c) / 15.0).collect())
}

/// Eigenfunction on the grid at energy `e`, integrated outward and inward and
/// joined at the rightmost classical turning point. Normalized to max |ψ| = 1.
pub fn eigenfunction(pot: &GridPotential, hbar: f64, e: f64) -> Vec<f64> {
    let k: Vec<f64> = weights(pot, hbar, e).collect();
    let n = k.len();
    let mut psi = vec![0.0; n];
    let Some((i0, i1)) = active_range(&k) else { return psi };
    let m = (i0 + 1..i1).rev().find(|&i| k[i] <= 0.0).unwrap_or((i0 + i1) / 2).max(i0 + 1);
    let step = |a: f64, b: f64, ka: f64, kb: f64, kc: f64| (2.0 * (1.0 + 5.0 * kb) * b - (1.0 - ka) * a) / (1.0 - kc);

    psi[i0] = 1.0;
    for i in i0..m {
        psi[i + 1] = step(psi[i - 1], psi[i], k[i - 1], k[i], k[i + 1]);
        if psi[i + 1].abs() > RESCALE {
            psi[..=i + 1].iter_mut().for_each(|p| *p /= RESCALE);
        }
    }
    let left_m = psi[m];

    let mut inward = vec![0.0; n];
    inward[i1] = 1.0;
    for i in (m + 1..=i1).rev() {
        inward[i - 1] = step(inward[i + 1], inward[i], k[i + 1], k[i], k[i - 1]);
        if inward[i - 1].abs() > RESCALE {
            inward[i - 1..].iter_mut().for_each(|p| *p /= RESCALE);
        }
    }
    let scale = if inward[m] != 0.0 { left_m / inward[m] } else { 0.0 };
    for i in m + 1..=i1 {
        psi[i] = inward[i] * scale;
    }
    let max = psi.iter().fold(0.0f64, |a, p| a.max(p.abs()));
    if max > 0.0 {
        psi.iter_mut().for_each(|p| *p /= max);
    }
    psi
}

/// Interior sign changes, ignoring samples below 1e−10 of the maximum.
pub fn count_nodes(psi: &[f64]) -> usize {
    let max = psi.iter().fold(0.0f64, |a, p| a.max(p.abs()));
    let floor = 1e-10 * max;
    let mut last = 0.0f64;
    let mut nodes = 0;
    for &p in psi {
        if p.abs() < floor {
            continue;
        }
        if last != 0.0 && (p < 0.0) != (last < 0.0) {
            nodes += 1;
        }
        last = p;
    }
    nodes
}

/// Grid construction knobs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridConfig {
    pub points: usize,
    /// Offset from a singular or wall edge.
    pub r_min: f64,
    /// Required ∫κ dx beyond the outer turning point on a decaying side.
    pub tail_action: f64,
    /// Minimum extension past a turning point, as a fraction of the classical width.
    pub spread: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig { points: 4001, r_min: 1e-6, tail_action: 25.0, spread: 0.5 }
    }
}

/// Distance along an infinite side until ∫√(V − E)/ħ reaches `tail`, starting at
/// the turning point `x_t` and moving in direction `dir`.
fn tail_edge(v: &dyn Fn(f64) -> f64, x_t: f64, dir: f64, e: f64, hbar: f64, tail: f64, min_ext: f64) -> f64 {
    let mut x = x_t;
    let mut acc = 0.0;
    let mut dx = (min_ext * 1e-3).max(1e-4);
    while acc < tail {
        let kappa = ((v(x + dir * 0.5 * dx) - e).max(0.0)).sqrt() / hbar;
        acc += kappa * dx;
        x += dir * dx;
        if (x - x_t).abs() > 1e6 {
            break;
        }
        dx = (dx * 1.05).min(0.05 * (1.0 + (x - x_t).abs()));
    }
    let min_edge = x_t + dir * min_ext;
    if dir > 0.0 {
        x.max(min_edge)
    } else {
        x.min(min_edge)
    }
}

/// Grid for `v` over `domain` able to hold levels up to `e_max`.
pub fn build_grid(
    v: Sampler,
    domain: Domain,
    e_max: f64,
    hbar: f64,
    cfg: &GridConfig,
) -> Result<GridPotential> {
    let f = |x: f64| e_max - v(x);
    let scan = quadrature::scan_roots(&f, domain);
    let (xl, xr) = match (scan.roots.first(), scan.roots.last()) {
        (Some(&(a, _)), Some(&(b, _))) if scan.roots.len() >= 2 => (a, b),
        _ => {
            return Err(Error::NoTurningPoints(format!(
                "E = {e_max} does not have a classically allowed region bounded on both sides"
            )))
        }
    };
    let width = xr - xl;
    let min_ext = cfg.spread * width;
    let vf = |x: f64| v(x);
    let (lo, left) = if domain.lo.is_finite() {
        let tail = tail_edge(&vf, xl, -1.0, e_max, hbar, cfg.tail_action, min_ext);
        if tail <= domain.lo + cfg.r_min {
            (domain.lo + cfg.r_min, BoundaryKind::CentrifugalRegularized)
        } else {
            (tail, BoundaryKind::DecayingTail)
        }
    } else {
        (tail_edge(&vf, xl, -1.0, e_max, hbar, cfg.tail_action, min_ext), BoundaryKind::DecayingTail)
    };
    let (hi, right) = if domain.hi.is_finite() {
        let tail = tail_edge(&vf, xr, 1.0, e_max, hbar, cfg.tail_action, min_ext);
        if tail >= domain.hi - cfg.r_min {
            (domain.hi - cfg.r_min, BoundaryKind::CentrifugalRegularized)
        } else {
            (tail, BoundaryKind::DecayingTail)
        }
    } else {
        (tail_edge(&vf, xr, 1.0, e_max, hbar, cfg.tail_action, min_ext), BoundaryKind::DecayingTail)
    };
    // Values at r_min can be enormous; cap them so the grid stays finite. Such
    // points are excluded by the active-range rule anyway.
    let cap = 1e200;
    let capped: Sampler = Arc::new(move |x| {
        let y = v(x);
        if y.is_nan() {
            cap
        } else {
            y.clamp(-cap, cap)
        }
    });
    GridPotential::sample(capped, lo, hi, cfg.points.max(MIN_POINTS), left, right)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumComparison {
    pub potential: String,
    pub phase: Phase,
    pub analytic: Vec<f64>,
    pub numeric: Vec<f64>,
    /// |numeric − analytic| / max(1, |analytic|).
    pub rel_err: Vec<f64>,
    /// For extended entries: the kernel's closed-form levels.
    pub kernel_analytic: Option<Vec<f64>>,
    pub kernel_rel_err: Option<Vec<f64>>,
    pub tol: f64,
    pub pass: bool,
}

fn rel(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| (x - y).abs() / y.abs().max(1.0)).collect()
}

/// Numeric spectrum of V₋ against the closed-form levels in the phase the
/// parameters select.
pub fn compare_spectra(
    sp: &dyn Superpotential,
    params: &Params,
    hbar: f64,
    count: usize,
    tol: f64,
) -> Result<SpectrumComparison> {
    compare_spectra_with(sp, params, hbar, count, tol, &GridConfig::default())
}

pub fn compare_spectra_with(
    sp: &dyn Superpotential,
    params: &Params,
    hbar: f64,
    count: usize,
    tol: f64,
    cfg: &GridConfig,
) -> Result<SpectrumComparison> {
    let c = sp.coords(params, hbar)?;
    let phase = classify_phase_at(sp, &c, hbar)?.phase;
    if phase == Phase::NoBoundStates {
        return Err(Error::Phase(format!("{}: no bound states", sp.name())));
    }
    let k = sp.kernel();
    let analytic = (0..count)
        .map(|n| k.energy(n, &c, hbar, phase))
        .collect::<Result<Vec<_>>>()?;
    let e_max = *analytic.last().ok_or_else(|| Error::Param("count must be positive".into()))?;

    let sp_static: &'static dyn Superpotential = crate::catalog::lookup(sp.name())?;
    let v: Sampler = Arc::new(move |x| sp_static.v_at(x, &c, hbar, Side::Minus));
    let grid = build_grid(v, sp.domain(), e_max, hbar, cfg)?;
    let numeric = solve_bound_states(&grid, hbar, count)?;

    let rel_err = rel(&numeric, &analytic);
    let (kernel_analytic, kernel_rel_err) = if sp.is_extended() {
        // The kernel at the same coordinates carries the reference spectrum.
        let kc = c;
        let ka = (0..count)
            .map(|n| k.energy(n, &kc, hbar, k.documented_phase(&kc)))
            .collect::<Result<Vec<_>>>()?;
        let kr = rel(&numeric, &ka);
        (Some(ka), Some(kr))
    } else {
        (None, None)
    };
    let pass = rel_err.iter().chain(kernel_rel_err.iter().flatten()).all(|&r| r <= tol);
    Ok(SpectrumComparison {
        potential: sp.name().to_string(),
        phase,
        analytic,
        numeric,
        rel_err,
        kernel_analytic,
        kernel_rel_err,
        tol,
        pass,
    })
}
