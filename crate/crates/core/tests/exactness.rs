mod common;

use std::f64::consts::PI;

use swkb::catalog::{self, lookup, presets, Params, Phase, Side, Superpotential};
use swkb::error::Error;
use swkb::quantization::{
    bswkb_check, langer_identity_check, solve_semiclassical_energy, swkb_check, wkb_check, Condition,
};

const TOL: f64 = 1e-8;

#[test]
fn swkb_exact_for_every_conventional_entry() {
    for spec in catalog::conventional() {
        for params in presets::unbroken(spec.name) {
            for n in 1..=8 {
                let r = swkb_check(spec, &params, 1.0, n, TOL)
                    .unwrap_or_else(|e| panic!("{} {params} n={n}: {e}", spec.name));
                assert!(r.pass, "{} {params} n={n}: {r:?}", spec.name);
            }
        }
    }
}

#[test]
fn swkb_integrals_agree_with_independent_quadrature() {
    for spec in catalog::conventional() {
        let params = presets::default_params(spec.name).unwrap();
        let c = spec.coords(&params, 1.0).unwrap();
        let d = spec.domain;
        for n in [1, 4, 8] {
            let e = spec.energy(n, &c, 1.0, Phase::Unbroken).unwrap();
            let ours = swkb_check(spec, &params, 1.0, n, TOL).unwrap().integral;
            let theirs = common::action(|x| spec.w_at(x, &c, 1.0).powi(2), e, d.lo, d.hi);
            assert!((theirs - n as f64 * PI).abs() <= 1e-8 * n as f64 * PI, "{} n={n}: {theirs}", spec.name);
            assert!((ours - theirs).abs() <= 1e-9 * theirs, "{} n={n}: {ours} vs {theirs}", spec.name);
        }
    }
}

#[test]
fn bswkb_exact_in_the_broken_classes() {
    let mut seen = 0;
    for spec in catalog::conventional() {
        for params in presets::broken(spec.name) {
            for n in 0..=8 {
                let r = bswkb_check(spec, &params, 1.0, n, TOL)
                    .unwrap_or_else(|e| panic!("{} {params} n={n}: {e}", spec.name));
                assert!(r.pass, "{} {params} n={n}: {r:?}", spec.name);
                let c = spec.coords(&params, 1.0).unwrap();
                let d = spec.domain;
                let theirs = common::action(|x| spec.w_at(x, &c, 1.0).powi(2), r.energy, d.lo, d.hi);
                assert!((theirs - r.integral).abs() <= 1e-9 * theirs, "{} n={n}", spec.name);
                seen += 1;
            }
        }
    }
    assert_eq!(seen, 3 * 3 * 9);
}

#[test]
fn broken_turning_points_solve_the_quartic() {
    // (r/2 + 3/r)² = 7  ⇔  r⁴ − 16r² + 36 = 0
    let r = bswkb_check(
        lookup("3d-oscillator").unwrap(),
        &Params::from_pairs(&[("omega", 1.0), ("ell", -3.0)]),
        1.0,
        0,
        TOL,
    )
    .unwrap();
    let (l, h) = ((8.0 - 28f64.sqrt()).sqrt(), (8.0 + 28f64.sqrt()).sqrt());
    assert!((r.turning_points.0 - l).abs() < 1e-12);
    assert!((r.turning_points.1 - h).abs() < 1e-12);
}

#[test]
fn broken_request_without_spectrum_has_no_turning_points() {
    let r = bswkb_check(lookup("morse").unwrap(), &Params::from_pairs(&[("A", -2.0)]), 1.0, 1, TOL);
    assert!(matches!(r, Err(Error::NoTurningPoints(_))), "{r:?}");
}

#[test]
fn langer_corrected_wkb_exact() {
    for spec in catalog::conventional() {
        for params in presets::unbroken(spec.name) {
            for n in 0..=8 {
                let r = wkb_check(spec, &params, 1.0, n, TOL, true)
                    .unwrap_or_else(|e| panic!("{} {params} n={n}: {e}", spec.name));
                assert!(r.pass, "{} {params} n={n}: {r:?}", spec.name);
            }
        }
    }
}

#[test]
fn langer_integrals_agree_with_independent_quadrature() {
    for spec in catalog::conventional() {
        let params = presets::default_params(spec.name).unwrap();
        let c = spec.coords(&params, 1.0).unwrap();
        let d = spec.domain;
        for n in [0, 3] {
            let e = spec.energy(n, &c, 1.0, Phase::Unbroken).unwrap();
            let v = |x: f64| spec.v_at(x, &c, 1.0, Side::Minus) + 0.25 * spec.f1_prime(x);
            let theirs = common::action(v, e, d.lo, d.hi);
            assert!(
                (theirs - (n as f64 + 0.5) * PI).abs() <= 1e-8 * (n as f64 + 0.5) * PI,
                "{} n={n}: {theirs}",
                spec.name
            );
        }
    }
}

#[test]
fn plain_wkb_exact_without_correction_for_harmonic_and_morse() {
    for name in ["harmonic", "morse"] {
        for params in presets::unbroken(name) {
            for n in 0..=8 {
                let r = wkb_check(lookup(name).unwrap(), &params, 1.0, n, TOL, false).unwrap();
                assert!(r.pass, "{name} {params} n={n}: {r:?}");
            }
        }
    }
}

#[test]
fn plain_wkb_misses_coulomb_by_a_wide_margin() {
    let r = wkb_check(
        lookup("coulomb").unwrap(),
        &Params::from_pairs(&[("e2", 2.0), ("ell", 1.0)]),
        1.0,
        1,
        TOL,
        false,
    )
    .unwrap();
    assert!(!r.pass);
    assert!(r.abs_err > 100.0 * TOL * r.target, "{r:?}");
    // V₋ = 1 − 2/r, E = 3/4: ∫₀⁸ √(2/r − 1/4) dr = (π/2)·2/(1/2) = 2π
    assert!((r.integral - 2.0 * PI).abs() < 1e-8);
}

#[test]
fn plain_wkb_energy_for_the_oscillator() {
    // V₋ = r²/4 + 6/r² − 7/2; ∫√(E − V₋) = (π/2)(E + 7/2 − √6)
    let osc = lookup("3d-oscillator").unwrap();
    let p = Params::from_pairs(&[("omega", 1.0), ("ell", 3.0)]);
    let e = solve_semiclassical_energy(osc, &p, 1.0, 1, Condition::Wkb, 1e-11).unwrap();
    assert!((e - (3.0 + 6f64.sqrt() - 3.5)).abs() < 1e-8, "{e}");
    assert!((e - 2.0).abs() > 1e-3);
    let langer = solve_semiclassical_energy(osc, &p, 1.0, 1, Condition::LangerWkb, 1e-11).unwrap();
    assert!((langer - 2.0).abs() < 1e-8, "{langer}");
}

#[test]
fn langer_identity_holds_for_every_entry() {
    for spec in catalog::conventional() {
        let params = presets::default_params(spec.name).unwrap();
        for n in 0..=5 {
            let r = langer_identity_check(spec, &params, 1.0, n, 1e-9)
                .unwrap_or_else(|e| panic!("{} n={n}: {e}", spec.name));
            assert!(r.pass, "{} n={n}: {r:?}", spec.name);
        }
    }
}

#[test]
fn inverse_solves_recover_the_analytic_levels() {
    for spec in catalog::conventional() {
        let params = presets::default_params(spec.name).unwrap();
        let c = spec.coords(&params, 1.0).unwrap();
        for n in [1, 3] {
            let want = spec.energy(n, &c, 1.0, Phase::Unbroken).unwrap();
            for cond in [Condition::Swkb, Condition::LangerWkb] {
                let e = solve_semiclassical_energy(spec, &params, 1.0, n, cond, 1e-11).unwrap();
                assert!((e - want).abs() <= 1e-7 * want.abs().max(1.0), "{} {cond} n={n}: {e} vs {want}", spec.name);
            }
        }
    }
}

#[test]
fn swkb_rejects_broken_parameters_and_ground_state() {
    let osc = lookup("3d-oscillator").unwrap();
    let broken = Params::from_pairs(&[("omega", 1.0), ("ell", -3.0)]);
    assert!(matches!(swkb_check(osc, &broken, 1.0, 1, TOL), Err(Error::Phase(_))));
    let p = presets::default_params("harmonic").unwrap();
    assert!(matches!(
        swkb_check(lookup("harmonic").unwrap(), &p, 1.0, 0, TOL),
        Err(Error::DegenerateInterval(_))
    ));
}
