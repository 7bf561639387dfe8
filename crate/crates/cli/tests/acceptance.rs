//! The ten acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fail.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use swkb::catalog::{self, presets, Params};
use swkb::extended;
use swkb::oracle;
use swkb::quantization::{self, QuantizationResult};
use swkb_cli::{run, Check, Report, RunConfig};

type Outcome = Result<String, String>;

const HBAR: f64 = 1.0;

fn conventional() -> impl Iterator<Item = &'static str> {
    catalog::conventional().iter().map(|s| s.name)
}

fn within(q: &QuantizationResult, rel: f64) -> bool {
    q.abs_err <= rel * q.target
}

fn budget(t: Instant, limit: Duration) -> Result<Duration, String> {
    let el = t.elapsed();
    if el <= limit {
        Ok(el)
    } else {
        Err(format!("took {el:.1?}, limit {limit:?}"))
    }
}

fn failed_records(rep: &Report) -> Vec<String> {
    rep.records
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("{} {} n={:?}: {}", r.potential, r.condition, r.n, r.detail))
        .collect()
}

fn swkb_unbroken() -> Outcome {
    let t = Instant::now();
    let mut count = 0;
    for name in conventional() {
        let sp = catalog::lookup(name).unwrap();
        for p in presets::unbroken(name) {
            for n in 1..=8 {
                let q = quantization::swkb_check(sp, &p, HBAR, n, 1e-8).map_err(|e| format!("{name} {p} n={n}: {e}"))?;
                if !within(&q, 1e-8) || (q.target - n as f64 * PI * HBAR).abs() > 1e-15 * q.target {
                    return Err(format!("{name} {p} n={n}: |I - n pi hbar| = {:e}", q.abs_err));
                }
                count += 1;
            }
        }
    }
    let el = budget(t, Duration::from_secs(60))?;
    Ok(format!("{count} integrals in {el:.1?}"))
}

fn bswkb_broken() -> Outcome {
    let mut count = 0;
    for name in ["3d-oscillator", "scarf-trig", "poschl-teller"] {
        let sp = catalog::lookup(name).unwrap();
        let pts = presets::broken(name);
        if pts.is_empty() {
            return Err(format!("{name}: no broken points"));
        }
        for p in pts {
            for n in 0..=8 {
                let q = quantization::bswkb_check(sp, &p, HBAR, n, 1e-8).map_err(|e| format!("{name} {p} n={n}: {e}"))?;
                if !within(&q, 1e-8) {
                    return Err(format!("{name} {p} n={n}: |I - (n+1/2) pi hbar| = {:e}", q.abs_err));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} integrals"))
}

fn langer_wkb() -> Outcome {
    let mut count = 0;
    for name in conventional() {
        let sp = catalog::lookup(name).unwrap();
        for p in presets::unbroken(name) {
            for n in 0..=8 {
                let q = quantization::wkb_check(sp, &p, HBAR, n, 1e-8, true).map_err(|e| format!("{name} {p} n={n}: {e}"))?;
                if !within(&q, 1e-8) {
                    return Err(format!("{name} {p} n={n}: corrected WKB off by {:e}", q.abs_err));
                }
                count += 1;
            }
        }
    }
    for name in ["harmonic", "morse"] {
        let sp = catalog::lookup(name).unwrap();
        let p = presets::default_params(name).unwrap();
        for n in 0..=8 {
            let q = quantization::wkb_check(sp, &p, HBAR, n, 1e-8, false).map_err(|e| format!("{name} n={n}: {e}"))?;
            if !within(&q, 1e-8) {
                return Err(format!("plain WKB {name} n={n} off by {:e}", q.abs_err));
            }
        }
    }
    let cou = catalog::lookup("coulomb").unwrap();
    let p = Params::from_pairs(&[("e2", 2.0), ("ell", 1.0)]);
    let q = quantization::wkb_check(cou, &p, HBAR, 1, 1e-8, false).map_err(|e| format!("plain WKB coulomb: {e}"))?;
    let margin = q.abs_err / (1e-8 * q.target);
    if margin <= 100.0 {
        return Err(format!("plain WKB coulomb misses by only {margin:.1}x tolerance"));
    }
    Ok(format!("{count} corrected integrals; plain coulomb misses by {margin:.2e}x tolerance"))
}

fn langer_identity() -> Outcome {
    let mut worst = 0.0f64;
    for name in conventional() {
        let sp = catalog::lookup(name).unwrap();
        let p = presets::default_params(name).unwrap();
        for n in 0..=5 {
            let li = quantization::langer_identity_check(sp, &p, HBAR, n, 1e-9).map_err(|e| format!("{name} n={n}: {e}"))?;
            if li.abs_diff > 1e-9 {
                return Err(format!("{name} n={n}: sides differ by {:e}", li.abs_diff));
            }
            worst = worst.max(li.abs_diff);
        }
    }
    Ok(format!("largest difference {worst:.2e}"))
}

fn oracle_concordance() -> Outcome {
    let t = Instant::now();
    let mut worst = 0.0f64;
    for name in conventional() {
        let sp = catalog::lookup(name).unwrap();
        let p = presets::oracle(name).unwrap();
        let c = oracle::compare_spectra(sp, &p, HBAR, 5, 1e-6).map_err(|e| format!("{name}: {e}"))?;
        if !c.pass {
            return Err(format!("{name}: rel errors {:?}", c.rel_err));
        }
        worst = c.rel_err.iter().fold(worst, |m, r| m.max(*r));
    }
    for name in ["3d-oscillator", "scarf-trig", "poschl-teller"] {
        let sp = catalog::lookup(name).unwrap();
        let p = presets::oracle_broken(name).unwrap();
        let c = oracle::compare_spectra(sp, &p, HBAR, 5, 1e-6).map_err(|e| format!("{name} broken: {e}"))?;
        if !c.pass || c.phase != catalog::Phase::Broken {
            return Err(format!("{name} broken ({}): rel errors {:?}", c.phase, c.rel_err));
        }
        if name == "3d-oscillator" {
            let (w, l) = (p.get("omega").unwrap(), p.get("ell").unwrap());
            for (n, e) in c.numeric.iter().enumerate() {
                let exact = (2.0 * n as f64 + 1.0) * HBAR * w - 2.0 * l * w;
                if (e - exact).abs() > 1e-6 * exact.abs().max(1.0) {
                    return Err(format!("broken oscillator n={n}: {e} vs {exact}"));
                }
            }
        }
        worst = c.rel_err.iter().fold(worst, |m, r| m.max(*r));
    }
    let el = budget(t, Duration::from_secs(300))?;
    Ok(format!("largest relative error {worst:.2e} in {el:.1?}"))
}

fn extended_non_exact() -> Outcome {
    let mut devs = Vec::new();
    for n in 1..=4 {
        let d = extended::extended_swkb_deviation(3.0, n, 1e-12).map_err(|e| format!("n={n}: {e}"))?;
        if d.deviation.abs() <= 1e-6 {
            return Err(format!("n={n}: deviation only {:e}", d.deviation));
        }
        devs.push(format!("{:.3e}", d.deviation));
    }
    let sp = catalog::lookup("quesne-extended").unwrap();
    let p = Params::from_pairs(&[("omega", 1.0), ("ell", 3.0)]);
    let c = oracle::compare_spectra(sp, &p, HBAR, 5, 1e-6).map_err(|e| format!("oracle: {e}"))?;
    let kr = c.kernel_rel_err.clone().unwrap_or_default();
    if kr.len() != 5 || kr.iter().any(|r| *r > 1e-6) {
        return Err(format!("extended and kernel spectra differ: {kr:?}"));
    }
    Ok(format!("deviations {}; isospectral to {:.1e}", devs.join(", "), kr.iter().fold(0.0f64, |m, r| m.max(*r))))
}

fn suite(checks: Vec<Check>, potentials: Vec<&str>) -> Result<Report, String> {
    let cfg = RunConfig {
        potentials: potentials.into_iter().map(String::from).collect(),
        checks,
        ..RunConfig::default()
    };
    run(&cfg).map_err(|e| e.to_string())
}

fn appc() -> Outcome {
    let rep = suite(vec![Check::Appc], vec!["all"])?;
    let bad = failed_records(&rep);
    if rep.records.len() != 9 || !bad.is_empty() {
        return Err(format!("{} forms, failures: {bad:?}", rep.records.len()));
    }
    let worst = rep.records.iter().filter_map(|r| r.rel_err).fold(0.0f64, f64::max);
    Ok(format!("9 forms x 100 pairs, largest scaled difference {worst:.2e}"))
}

fn shape_invariance() -> Outcome {
    let rep = suite(vec![Check::ShapeInvariance], catalog::names())?;
    let bad = failed_records(&rep);
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }
    let mapped = rep.records.iter().any(|r| r.condition == "restricted-map" && r.pass);
    let covered: std::collections::BTreeSet<&str> = rep.records.iter().map(|r| r.potential.as_str()).collect();
    if !mapped || covered.len() != catalog::names().len() {
        return Err(format!("coverage: {covered:?}, restricted map checked: {mapped}"));
    }
    Ok(format!("{} residuals and the restricted map within tolerance", rep.records.len() - 1))
}

fn projection_limits() -> Outcome {
    let rep = suite(vec![Check::Projections], vec!["all"])?;
    let bad: Vec<String> = rep
        .records
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("{} ({})", r.potential, r.detail))
        .collect();
    if rep.records.len() != 6 || !bad.is_empty() {
        return Err(format!("{} of {} projections off trend: {}", bad.len(), rep.records.len(), bad.join("; ")));
    }
    Ok("six projections on trend".into())
}

fn determinism() -> Outcome {
    let cfg = |workers| RunConfig {
        checks: vec![Check::Swkb, Check::Bswkb, Check::LangerIdentity, Check::ShapeInvariance, Check::Extended, Check::Appc],
        n_range: Some((1, 4)),
        seed: 11,
        workers,
        ..RunConfig::default()
    };
    let a = run(&cfg(1)).map_err(|e| e.to_string())?.to_json();
    let b = run(&cfg(4)).map_err(|e| e.to_string())?.to_json();
    let c = run(&cfg(1)).map_err(|e| e.to_string())?.to_json();
    if a != b || a != c {
        return Err("reports differ between runs".into());
    }
    Ok(format!("{} bytes identical across serial, parallel and repeat", a.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("SWKB exact, unbroken phase", swkb_unbroken),
        ("BSWKB exact, broken phase", bswkb_broken),
        ("Langer-corrected WKB exact", langer_wkb),
        ("Langer identity", langer_identity),
        ("oracle concordance", oracle_concordance),
        ("extended non-exactness and isospectrality", extended_non_exact),
        ("closed-form integrals", appc),
        ("shape-invariance residuals", shape_invariance),
        ("projection limits", projection_limits),
        ("deterministic reports", determinism),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg}", i + 1),
            Err(msg) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
