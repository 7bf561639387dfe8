//! Turns a configuration into independent jobs and runs them.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use swkb::catalog::{self, presets, Params, Superpotential};
use swkb::extended;
use swkb::quadrature::{closed_form, closed_form_by_quadrature, ClosedForm};
use swkb::quantization::{self, QuantizationResult};
use swkb::transforms::{self, ProjectionName};

use crate::config::{Check, ConfigError, RunConfig};
use crate::report::{sort_records, Record, Report, Summary};

type Job = Box<dyn FnOnce() -> Vec<Record> + Send>;

const APPC_PAIRS: usize = 100;
const SI_PERTURBATIONS: usize = 3;
const SI_GRID_POINTS: usize = 200;

/// Validates `cfg`, runs every requested check and assembles the sorted report.
pub fn run(cfg: &RunConfig) -> Result<Report, ConfigError> {
    cfg.validate()?;
    let jobs = jobs(cfg)?;
    let timings = cfg.timings;
    let exec = move |job: Job| {
        let t = Instant::now();
        let mut recs = job();
        if timings {
            let ms = t.elapsed().as_millis() as u64 / recs.len().max(1) as u64;
            recs.iter_mut().for_each(|r| r.runtime_ms = ms);
        }
        recs
    };
    let nested: Vec<Vec<Record>> = if cfg.workers == 1 {
        jobs.into_iter().map(exec).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .map_err(|e| ConfigError::Invalid(format!("worker pool: {e}")))?;
        pool.install(|| jobs.into_par_iter().map(exec).collect())
    };
    let mut records: Vec<Record> = nested.into_iter().flatten().collect();
    sort_records(&mut records);
    let summary = Summary::of(&records);
    Ok(Report { config_echo: cfg.echo(), records, summary })
}

fn jobs(cfg: &RunConfig) -> Result<Vec<Job>, ConfigError> {
    let pots = cfg.resolved_potentials()?;
    let mut out: Vec<Job> = Vec::new();
    for &check in &cfg.checks {
        match check {
            Check::Swkb | Check::Wkb | Check::LangerWkb | Check::LangerIdentity => {
                for &p in &pots {
                    if let Some(params) = point(cfg, p, presets::default_params(p)) {
                        levels_jobs(cfg, check, p, params, &mut out);
                    }
                }
            }
            Check::Bswkb => {
                for &p in &pots {
                    let preset = presets::broken(p).into_iter().next();
                    if let Some(params) = point(cfg, p, preset) {
                        levels_jobs(cfg, check, p, params, &mut out);
                    }
                }
            }
            Check::Oracle => {
                for &p in &pots {
                    let preset = presets::oracle(p).or_else(|| presets::default_params(p));
                    if let Some(params) = point(cfg, p, preset) {
                        out.push(oracle_job(cfg, p, params, "oracle"));
                    }
                    if !cfg.params.contains_key(p) {
                        if let Some(params) = presets::oracle_broken(p) {
                            out.push(oracle_job(cfg, p, params, "oracle-broken"));
                        }
                    }
                }
            }
            Check::ShapeInvariance => {
                for &p in &pots {
                    if let Some(params) = point(cfg, p, presets::default_params(p)) {
                        out.push(shape_invariance_job(cfg, p, params));
                    }
                    if p == "morse-restricted-ext" {
                        out.push(restricted_map_job(cfg));
                    }
                }
            }
            Check::Extended => {
                let (lo, hi) = cfg.levels(check);
                for &lambda in &cfg.lambdas {
                    for n in lo..=hi {
                        out.push(extended_job(cfg, lambda, n));
                    }
                }
            }
            Check::Projections => {
                let n = cfg.n_range.map_or(1, |r| r.0);
                for name in ProjectionName::ALL {
                    out.push(projection_job(cfg, name, n));
                }
            }
            Check::Appc => {
                for (i, form) in ClosedForm::ALL.into_iter().enumerate() {
                    out.push(appc_job(cfg, form, i as u64));
                }
            }
        }
    }
    Ok(out)
}

fn point(cfg: &RunConfig, name: &str, preset: Option<Params>) -> Option<Params> {
    cfg.params.get(name).cloned().or(preset)
}

fn lookup(name: &str) -> &'static dyn Superpotential {
    catalog::lookup(name).expect("names are validated before jobs are built")
}

fn base(sp: &dyn Superpotential, params: &Params, hbar: f64, condition: &str, n: Option<usize>, tol: f64) -> Record {
    let mut r = Record::new(sp.name(), condition, n, tol);
    r.class = sp.kernel().si_class.to_string();
    r.params = params.to_string();
    r.phase = match catalog::classify_phase(sp, params, hbar) {
        Ok(p) => p.phase.to_string(),
        Err(e) => format!("unknown ({e})"),
    };
    r
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

fn from_quantization(mut r: Record, q: &QuantizationResult) -> Record {
    r.integral = Some(q.integral);
    r.target = Some(q.target);
    r.abs_err = Some(q.abs_err);
    r.rel_err = finite(q.rel_err);
    r.pass = q.pass;
    r.detail = format!(
        "energy={:e} turning_points=({:e}, {:e}) quad_nodes={}",
        q.energy, q.turning_points.0, q.turning_points.1, q.nodes
    );
    r
}

fn levels_jobs(cfg: &RunConfig, check: Check, name: &'static str, params: Params, out: &mut Vec<Job>) {
    let (lo, hi) = cfg.levels(check);
    let tol = cfg.tol_for(check);
    let hbar = cfg.hbar;
    for n in lo..=hi {
        let params = params.clone();
        out.push(Box::new(move || {
            let sp = lookup(name);
            let r = base(sp, &params, hbar, check.as_str(), Some(n), tol);
            let res = match check {
                Check::Swkb => quantization::swkb_check(sp, &params, hbar, n, tol),
                Check::Bswkb => quantization::bswkb_check(sp, &params, hbar, n, tol),
                Check::Wkb => quantization::wkb_check(sp, &params, hbar, n, tol, false),
                Check::LangerWkb => quantization::wkb_check(sp, &params, hbar, n, tol, true),
                Check::LangerIdentity => {
                    return vec![match quantization::langer_identity_check(sp, &params, hbar, n, tol) {
                        Ok(li) => Record {
                            integral: Some(li.corrected_wkb),
                            target: Some(li.shifted_swkb),
                            abs_err: Some(li.abs_diff),
                            rel_err: Some(li.abs_diff / li.corrected_wkb.abs().max(1.0)),
                            pass: li.pass,
                            detail: "integral: corrected WKB; target: SWKB at a - hbar/2, level n + 1/2".into(),
                            ..r
                        },
                        Err(e) => r.failed(e),
                    }];
                }
                _ => unreachable!("level checks only"),
            };
            vec![match res {
                Ok(q) => from_quantization(r, &q),
                Err(e) => r.failed(e),
            }]
        }));
    }
}

fn oracle_job(cfg: &RunConfig, name: &'static str, params: Params, condition: &'static str) -> Job {
    let (lo, hi) = cfg.levels(Check::Oracle);
    let tol = cfg.tol_for(Check::Oracle);
    let hbar = cfg.hbar;
    Box::new(move || {
        let sp = lookup(name);
        let records = |n| base(sp, &params, hbar, condition, Some(n), tol);
        match swkb::oracle::compare_spectra(sp, &params, hbar, hi + 1, tol) {
            Ok(cmp) => (lo..=hi)
                .map(|n| {
                    let mut r = records(n);
                    r.integral = Some(cmp.numeric[n]);
                    r.target = Some(cmp.analytic[n]);
                    r.abs_err = Some((cmp.numeric[n] - cmp.analytic[n]).abs());
                    r.rel_err = Some(cmp.rel_err[n]);
                    r.pass = cmp.rel_err[n] <= tol;
                    r.detail = format!("integral: numeric level; target: closed form; phase={}", cmp.phase);
                    if let (Some(ka), Some(kr)) = (&cmp.kernel_analytic, &cmp.kernel_rel_err) {
                        r.pass &= kr[n] <= tol;
                        r.detail.push_str(&format!("; kernel level={:e} kernel_rel_err={:e}", ka[n], kr[n]));
                    }
                    r
                })
                .collect(),
            Err(e) => (lo..=hi).map(|n| records(n).failed(&e)).collect(),
        }
    })
}

/// Deterministic per-name stream: FNV-1a of the name mixed into the seed.
fn stream(seed: u64, name: &str) -> ChaCha8Rng {
    let h = name
        .bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3));
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

fn perturb(sp: &dyn Superpotential, p: &Params, hbar: f64, rng: &mut ChaCha8Rng) -> Option<Params> {
    for _ in 0..50 {
        let mut q = Params::new();
        for (k, v) in p.iter() {
            q.set(k, v * (1.0 + rng.gen_range(-0.1..0.1)));
        }
        let c = match sp.coords(&q, hbar) {
            Ok(c) => c,
            Err(_) => continue,
        };
        if sp.check(&c.shifted(hbar), hbar).is_ok() {
            return Some(q);
        }
    }
    None
}

fn shape_invariance_job(cfg: &RunConfig, name: &'static str, params: Params) -> Job {
    let tol = cfg.tol_for(Check::ShapeInvariance);
    let hbar = cfg.hbar;
    let seed = cfg.seed;
    Box::new(move || {
        let sp = lookup(name);
        let grid = catalog::interior_grid(sp, SI_GRID_POINTS);
        let mut rng = stream(seed, name);
        let mut points = vec![params.clone()];
        points.extend((0..SI_PERTURBATIONS).filter_map(|_| perturb(sp, &params, hbar, &mut rng)));
        points
            .iter()
            .map(|p| {
                let r = base(sp, p, hbar, "shape-invariance", None, tol);
                let scale = sp.coords(p, hbar).map(|c| catalog::shape_invariance_scale(sp, &c, hbar));
                match (catalog::shape_invariance_residual(sp, p, hbar, &grid), scale) {
                    (Ok(res), Ok(scale)) => Record {
                        integral: Some(res),
                        target: Some(0.0),
                        abs_err: Some(res),
                        rel_err: Some(res / scale),
                        pass: res <= tol * scale,
                        detail: format!("grid={SI_GRID_POINTS} scale={scale:e}"),
                        ..r
                    },
                    (Err(e), _) | (_, Err(e)) => r.failed(e),
                }
            })
            .collect()
    })
}

fn restricted_map_job(cfg: &RunConfig) -> Job {
    let tol = cfg.tol.unwrap_or(1e-10);
    let hbar = cfg.hbar;
    Box::new(move || {
        let sp = lookup("morse-restricted-ext");
        let params = presets::default_params("morse-restricted-ext").expect("preset");
        let r = base(sp, &params, hbar, "restricted-map", None, tol);
        let get = |k| params.get(k).expect("preset has every parameter");
        let grid = catalog::interior_grid(sp, SI_GRID_POINTS);
        vec![match catalog::restricted_extension_maps_to_scarf(get("P"), get("Q"), get("a"), hbar, &grid) {
            Ok(d) => Record {
                integral: Some(d),
                target: Some(0.0),
                abs_err: Some(d),
                rel_err: Some(d),
                pass: d <= tol,
                detail: "max |W_ext(x) - W_scarf-hyp(x - beta)| over the sampling window".into(),
                ..r
            },
            Err(e) => r.failed(e),
        }]
    })
}

fn extended_job(cfg: &RunConfig, lambda: f64, n: usize) -> Job {
    let tol = cfg.tol_for(Check::Extended);
    let quad = tol.min(1e-8) * 1e-2;
    Box::new(move || {
        let mut r = Record::new("quesne-extended", "swkb-dimensionless", Some(n), tol);
        r.class = "IIIA".into();
        r.phase = "unbroken".into();
        r.params = format!("lambda={lambda}");
        vec![match extended::extended_swkb_deviation(lambda, n, quad) {
            Ok(d) => Record {
                integral: Some(d.integral_over_pi),
                target: Some(n as f64),
                abs_err: Some(d.deviation.abs()),
                rel_err: Some(d.deviation.abs() / n as f64),
                pass: d.deviation.abs() <= tol,
                detail: format!(
                    "deviation={:e} turning_points=({:e}, {:e}) quad_tol={quad:e}",
                    d.deviation, d.turning_points.0, d.turning_points.1
                ),
                ..r
            },
            Err(e) => r.failed(e),
        }]
    })
}

fn fmt_list(v: &[f64]) -> String {
    let items: Vec<String> = v.iter().map(|x| format!("{x:e}")).collect();
    format!("[{}]", items.join(", "))
}

fn projection_job(cfg: &RunConfig, name: ProjectionName, n: usize) -> Job {
    let tol = cfg.tol_for(Check::Projections);
    let hbar = cfg.hbar;
    Box::new(move || {
        let proj = transforms::projection(name);
        let target = transforms::default_target(name);
        let mut r = Record::new(&name.to_string(), "spectral-limit", Some(n), tol);
        r.class = format!("{} -> {}", proj.source, proj.target);
        r.phase = "unbroken".into();
        r.params = target.to_string();
        vec![match transforms::spectral_trend(proj, &target, n, hbar, 4) {
            Ok(t) => {
                let dev = t.ratios.iter().map(|q| (q / t.expected_ratio - 1.0).abs()).fold(0.0f64, |m, d| {
                    if d.is_nan() || m.is_nan() {
                        f64::NAN
                    } else {
                        m.max(d)
                    }
                });
                Record {
                    integral: t.ratios.last().copied().and_then(finite),
                    target: Some(t.expected_ratio),
                    abs_err: finite(dev * t.expected_ratio),
                    rel_err: finite(dev),
                    pass: t.pass,
                    detail: format!(
                        "integral: last error ratio; eps={} errors={} ratios={}",
                        fmt_list(&t.eps),
                        fmt_list(&t.errors),
                        fmt_list(&t.ratios)
                    ),
                    ..r
                }
            }
            Err(e) => r.failed(e),
        }]
    })
}

/// Draws a valid (y1, y2) pair for `form`.
pub fn sample_pair(form: ClosedForm, rng: &mut ChaCha8Rng) -> (f64, f64) {
    let (lo, hi) = match form {
        ClosedForm::I0 | ClosedForm::I3 => (-5.0, 5.0),
        ClosedForm::I1a | ClosedForm::I2b => (0.05, 6.0),
        ClosedForm::I1b | ClosedForm::I2a => (-6.0, -0.05),
        ClosedForm::I4 => (-0.95, 0.95),
        ClosedForm::I5a => (1.05, 6.0),
        ClosedForm::I5b => (-6.0, -1.05),
    };
    loop {
        let a = rng.gen_range(lo..hi);
        let b = rng.gen_range(lo..hi);
        let (y1, y2) = if a < b { (a, b) } else { (b, a) };
        if y2 - y1 > 1e-3 && form.valid(y1, y2) {
            return (y1, y2);
        }
    }
}

fn appc_job(cfg: &RunConfig, form: ClosedForm, index: u64) -> Job {
    let tol = cfg.tol_for(Check::Appc);
    let seed = cfg.seed;
    Box::new(move || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(index));
        let mut r = Record::new(&form.to_string(), "appc", None, tol);
        r.class = "closed-form".into();
        r.params = format!("pairs={APPC_PAIRS}");
        let mut worst: Option<(f64, f64, f64, (f64, f64))> = None;
        for _ in 0..APPC_PAIRS {
            let (y1, y2) = sample_pair(form, &mut rng);
            let res = closed_form(form, y1, y2).and_then(|c| Ok((c, closed_form_by_quadrature(form, y1, y2, 1e-12)?)));
            let (c, q) = match res {
                Ok(v) => v,
                Err(e) => return vec![r.failed(format!("({y1:e}, {y2:e}): {e}"))],
            };
            let rel = (c - q).abs() / c.abs().max(1.0);
            if worst.map_or(true, |w| rel > w.2) {
                worst = Some((c, q, rel, (y1, y2)));
            }
        }
        let (c, q, rel, (y1, y2)) = worst.expect("at least one pair");
        r.integral = Some(c);
        r.target = Some(q);
        r.abs_err = Some((c - q).abs());
        r.rel_err = Some(rel);
        r.pass = rel <= tol;
        r.detail = format!("integral: closed form; target: quadrature; worst pair=({y1:e}, {y2:e})");
        vec![r]
    })
}
