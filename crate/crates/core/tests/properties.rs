mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use swkb::catalog::{self, presets, Domain, Phase, Superpotential};
use swkb::error::Error;
use swkb::quadrature::{
    action_integral, closed_form, closed_form_by_quadrature, find_turning_points, ClosedForm,
};
use swkb::quantization::{action_at, swkb_check, Condition};

fn entry() -> impl Strategy<Value = usize> {
    0..catalog::conventional().len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hbar_scaling(i in entry(), n in 1usize..=4, hbar in 0.2f64..0.5, pick in 0usize..3) {
        let spec = &catalog::conventional()[i];
        let params = presets::unbroken(spec.name)[pick].clone();
        let r1 = swkb_check(spec, &params, hbar, n, 1e-9).unwrap();
        let r2 = swkb_check(spec, &params, 2.0 * hbar, n, 1e-9).unwrap();
        let t = r2.target / r1.target;
        let q = r2.integral / r1.integral;
        prop_assert!((t / q - 1.0).abs() <= 1e-9, "{} target ratio {t}, integral ratio {q}", spec.name);
    }

    #[test]
    fn integral_increases_with_energy(i in entry(), mut fr in proptest::collection::vec(0.0f64..1.0, 5)) {
        let spec = &catalog::conventional()[i];
        let params = presets::default_params(spec.name).unwrap();
        let c = spec.coords(&params, 1.0).unwrap();
        let e1 = spec.energy(1, &c, 1.0, Phase::Unbroken).unwrap();
        let e8 = spec.energy(8, &c, 1.0, Phase::Unbroken).unwrap();
        fr.sort_by(f64::total_cmp);
        fr.dedup_by(|a, b| (*a - *b).abs() < 1e-6);
        let vals: Vec<f64> = fr
            .iter()
            .map(|f| action_at(spec, &c, 1.0, Condition::Swkb, e1 + f * (e8 - e1), 1e-10).unwrap().0.value)
            .collect();
        prop_assert!(vals.windows(2).all(|w| w[1] > w[0]), "{}: {vals:?}", spec.name);
    }

    #[test]
    fn action_scales_under_dilation(c in prop::sample::select(vec![2.0f64, 10.0]), e in 0.5f64..20.0) {
        // F(x) = x² + x⁴ at x and F(x/c) on the stretched axis
        let d = Domain { lo: f64::NEG_INFINITY, hi: f64::INFINITY };
        let f = |x: f64| x * x + x.powi(4);
        let g = |x: f64| f(x / c);
        let p1 = find_turning_points(f, d, e).unwrap();
        let p2 = find_turning_points(g, d, e).unwrap();
        let i1 = action_integral(|x| e - f(x), &p1, 1e-12).unwrap().value;
        let i2 = action_integral(|x| e - g(x), &p2, 1e-12).unwrap().value;
        prop_assert!((i2 - c * i1).abs() <= 1e-10 * i2);
    }

    #[test]
    fn below_the_minimum_is_never_a_silent_zero(i in entry(), depth in 0.01f64..5.0) {
        let spec = &catalog::conventional()[i];
        let params = presets::default_params(spec.name).unwrap();
        let c = spec.coords(&params, 1.0).unwrap();
        let f = |x: f64| spec.w_at(x, &c, 1.0).powi(2);
        let mesh = swkb::quadrature::scan_mesh(spec.domain);
        let k = (1..mesh.len() - 1).min_by(|&a, &b| f(mesh[a]).total_cmp(&f(mesh[b]))).unwrap();
        let (mut a, mut b) = (mesh[k - 1], mesh[k + 1]);
        for _ in 0..200 {
            let (m1, m2) = (a + (b - a) / 3.0, b - (b - a) / 3.0);
            if f(m1) < f(m2) { b = m2 } else { a = m1 }
        }
        let floor = f(0.5 * (a + b));
        let r = find_turning_points(|x| spec.w_at(x, &c, 1.0).powi(2), spec.domain, floor - depth);
        prop_assert!(matches!(r, Err(Error::NoTurningPoints(_))), "{}: {r:?}", spec.name);
    }
}

fn sample(form: ClosedForm, rng: &mut ChaCha8Rng) -> (f64, f64) {
    loop {
        let (lo, hi) = match form {
            ClosedForm::I0 | ClosedForm::I3 => (-5.0, 5.0),
            ClosedForm::I1a | ClosedForm::I2b => (0.05, 6.0),
            ClosedForm::I1b | ClosedForm::I2a => (-6.0, -0.05),
            ClosedForm::I4 => (-0.95, 0.95),
            ClosedForm::I5a => (1.05, 6.0),
            ClosedForm::I5b => (-6.0, -1.05),
        };
        let a = rng.gen_range(lo..hi);
        let b = rng.gen_range(lo..hi);
        let (y1, y2) = if a < b { (a, b) } else { (b, a) };
        if y2 - y1 > 1e-3 && form.valid(y1, y2) {
            return (y1, y2);
        }
    }
}

#[test]
fn closed_forms_match_quadrature_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for form in ClosedForm::ALL {
        for _ in 0..100 {
            let (y1, y2) = sample(form, &mut rng);
            let exact = closed_form(form, y1, y2).unwrap();
            let quad = closed_form_by_quadrature(form, y1, y2, 1e-12).unwrap();
            assert!((exact - quad).abs() <= 1e-10 * (1.0 + exact.abs()), "{form} ({y1}, {y2}): {exact} vs {quad}");
            // and against the test-side quadrature
            let ts = common::tanh_sinh(|y| ((y2 - y) * (y - y1)).max(0.0).sqrt() / form.denominator(y), y1, y2);
            assert!((exact - ts).abs() <= 1e-10 * (1.0 + exact.abs()), "{form} ({y1}, {y2}): {exact} vs {ts}");
        }
    }
}

#[test]
fn closed_forms_reject_invalid_arguments() {
    for form in ClosedForm::ALL {
        assert!(closed_form(form, 1.0, 1.0).is_err());
    }
    assert!(closed_form(ClosedForm::I4, 0.0, 1.5).is_err());
    assert!(closed_form(ClosedForm::I1a, -1.0, 2.0).is_err());
}
