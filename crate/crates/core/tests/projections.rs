use std::f64::consts::{E, FRAC_PI_2};

use swkb::catalog::Params;
use swkb::transforms::{
    default_target, default_window, potential_limit_error, potential_trend, projection, projections,
    spectral_limit_error, spectral_trend, LimitKind, ProjectionName,
};

fn grid(name: ProjectionName) -> Vec<f64> {
    let (lo, hi) = default_window(name);
    (0..=40).map(|i| lo + (hi - lo) * i as f64 / 40.0).collect()
}

#[test]
fn parameter_maps_follow_the_table_cells() {
    let t = Params::from_pairs(&[("e2", 2.0), ("ell", 1.5)]);
    let alpha = 0.01;
    let m = projection(ProjectionName::P6c).map(&t, alpha).unwrap();
    assert_eq!((m.source.a, m.source.b), (alpha * 1.5, alpha / 2.0 * 2.0));
    let m = projection(ProjectionName::P4c).map(&t, alpha).unwrap();
    assert_eq!((m.source.a, m.source.b), (alpha * 1.5, -alpha / 2.0 * 2.0));

    let t = Params::from_pairs(&[("omega", 2.0), ("ell", 3.0)]);
    let m = projection(ProjectionName::P2b).map(&t, alpha).unwrap();
    assert_eq!((m.source.a, m.source.b, m.source.beta), (2.0 / alpha - alpha * 1.5, 2.0 / alpha + alpha * 1.5, 0.0));
    let m = projection(ProjectionName::P3b).map(&t, alpha).unwrap();
    assert_eq!((m.source.a, m.source.b), (2.0 / alpha + alpha * 1.5, 2.0 / alpha - alpha * 1.5));
    assert_eq!(m.shift, FRAC_PI_2 / alpha);

    let t = Params::from_pairs(&[("A", 5.0), ("B", 2.0)]);
    let beta = 6.0;
    let m = projection(ProjectionName::P1a).map(&t, beta).unwrap();
    assert_eq!((m.source.a, m.source.b), (5.0, -2.0 * beta.exp() / 2.0));
    let m = projection(ProjectionName::P2a).map(&t, beta).unwrap();
    assert_eq!((m.source.a, m.source.b, m.source.alpha), (5.0, 2.0 * beta.exp() / 2.0, 1.0));

    assert_eq!(projection(ProjectionName::P6c).cell, ["A → αℓ", "B → (α/2)e²", "α → 0"]);
}

#[test]
fn algebraic_limits_are_quadratic() {
    for p in projections().iter().filter(|p| p.limit_kind == LimitKind::ParamToZero) {
        let t = spectral_trend(p, &default_target(p.name), 1, 1.0, 4).unwrap();
        assert!(t.pass, "{}: {t:?}", p.name);
        let q = potential_trend(p, &default_target(p.name), &grid(p.name), 1.0, 4).unwrap();
        assert!(q.pass, "{}: {q:?}", p.name);
    }
}

#[test]
fn p6c_error_formula() {
    // α²|ℓ² − (ℓ+n)²| once the e⁴ parts cancel
    let p = projection(ProjectionName::P6c);
    let t = Params::from_pairs(&[("e2", 2.0), ("ell", 1.0)]);
    for alpha in [1e-1, 1e-2, 1e-3] {
        let err = spectral_limit_error(p, &t, 1, alpha, 1.0).unwrap();
        assert!((err - 3.0 * alpha * alpha).abs() <= 1e-12, "{alpha}: {err}");
    }
}

#[test]
fn exponential_potential_limits_decay_as_e_to_minus_two_beta() {
    for name in [ProjectionName::P1a, ProjectionName::P2a] {
        let p = projection(name);
        let t = default_target(name);
        let g = grid(name);
        let e1 = potential_limit_error(p, &t, 8.0, &g, 1.0).unwrap();
        let e2 = potential_limit_error(p, &t, 9.0, &g, 1.0).unwrap();
        assert!(((e1 / e2) / (E * E) - 1.0).abs() < 0.02, "{name}: {}", e1 / e2);
    }
}

#[test]
fn exponential_spectra_coincide_at_every_beta() {
    for name in [ProjectionName::P1a, ProjectionName::P2a] {
        let p = projection(name);
        for beta in [4.0, 8.0, 16.0] {
            for n in 0..4 {
                assert_eq!(spectral_limit_error(p, &default_target(name), n, beta, 1.0).unwrap(), 0.0);
            }
        }
    }
}

#[test]
fn spectral_errors_shrink_monotonically() {
    for p in projections().iter().filter(|p| p.limit_kind == LimitKind::ParamToZero) {
        let t = default_target(p.name);
        let errs: Vec<f64> = [1e-1, 1e-2, 1e-3, 1e-4]
            .iter()
            .map(|&a| spectral_limit_error(p, &t, 2, a, 1.0).unwrap())
            .collect();
        assert!(errs.windows(2).all(|w| w[1] < w[0]), "{}: {errs:?}", p.name);
    }
}
