//! Test-only numerics kept separate from the library: tanh-sinh quadrature and a
//! scan-and-bisect root finder.
#![allow(dead_code)]

use std::f64::consts::FRAC_PI_2;

/// Tanh-sinh quadrature on [a, b], halving the step until two levels agree.
pub fn tanh_sinh(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let half = 0.5 * (b - a);
    let eval = |t: f64| -> f64 {
        let u = FRAC_PI_2 * t.sinh();
        let c = u.cosh();
        // distance from the nearer endpoint, computed without cancellation
        let d = half / (u.abs().exp() * c);
        let x = if t < 0.0 { a + d } else { b - d };
        if d <= 0.0 || x <= a || x >= b {
            return 0.0;
        }
        let w = half * FRAC_PI_2 * t.cosh() / (c * c);
        w * f(x)
    };
    let tmax = 4.0;
    let mut h = 0.5;
    let mut sum = eval(0.0);
    let mut k = 1;
    while k as f64 * h <= tmax {
        sum += eval(k as f64 * h) + eval(-(k as f64) * h);
        k += 1;
    }
    let mut prev = sum * h;
    for _ in 0..12 {
        h *= 0.5;
        let mut k = 1;
        while k as f64 * h <= tmax {
            sum += eval(k as f64 * h) + eval(-(k as f64) * h);
            k += 2;
        }
        let cur = sum * h;
        if (cur - prev).abs() <= 1e-14 * cur.abs().max(1.0) {
            return cur;
        }
        prev = cur;
    }
    prev
}

pub fn bisect(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut glo = g(lo);
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let gm = g(mid);
        if (gm > 0.0) == (glo > 0.0) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Sign changes of g along a fine sweep of (lo, hi), refined by bisection.
pub fn roots(g: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Vec<f64> {
    let map = |u: f64| -> f64 {
        match (lo.is_finite(), hi.is_finite()) {
            (true, true) => lo + u * (hi - lo),
            (true, false) => lo + (u / (1.0 - u)).powi(2),
            (false, true) => hi - (u / (1.0 - u)).powi(2),
            (false, false) => (std::f64::consts::PI * (u - 0.5)).tan(),
        }
    };
    let n = 40_000;
    let mut out = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for i in 1..n {
        let x = map(i as f64 / n as f64);
        let v = g(x);
        if !v.is_finite() {
            prev = None;
            continue;
        }
        if let Some((xp, vp)) = prev {
            if (vp > 0.0) != (v > 0.0) {
                out.push(bisect(&g, xp, x));
            }
        }
        prev = Some((x, v));
    }
    out
}

/// ∫√(E − F) between the outermost roots of E − F.
pub fn action(f: impl Fn(f64) -> f64, e: f64, lo: f64, hi: f64) -> f64 {
    let r = roots(|x| e - f(x), lo, hi);
    assert!(r.len() >= 2, "expected two roots, found {r:?}");
    let (a, b) = (r[0], r[r.len() - 1]);
    tanh_sinh(|x| (e - f(x)).max(0.0).sqrt(), a, b)
}
