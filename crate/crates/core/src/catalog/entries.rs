use std::f64::consts::FRAC_PI_2;
use std::f64::consts::PI;

use super::{
    BrokenBranch, Coords, Domain, ExtendedSpec, ParamRule, SiClass, SiType, Sign,
    SuperpotentialSpec,
};

const INF: f64 = f64::INFINITY;

fn coth(x: f64) -> f64 {
    1.0 / x.tanh()
}
fn csch(x: f64) -> f64 {
    1.0 / x.sinh()
}
fn sech(x: f64) -> f64 {
    1.0 / x.cosh()
}
fn cot(x: f64) -> f64 {
    x.cos() / x.sin()
}
fn csc(x: f64) -> f64 {
    1.0 / x.sin()
}
fn sec(x: f64) -> f64 {
    1.0 / x.cos()
}

/// Number of levels n = 0, 1, … with n < x.
fn below(x: f64) -> Option<usize> {
    Some(if x > 0.0 { x.ceil() as usize } else { 0 })
}

fn unbounded(_: &Coords, _: f64) -> Option<usize> {
    None
}

fn nonzero(v: f64, name: &str) -> Result<(), String> {
    if v == 0.0 {
        Err(format!("{name} must be nonzero"))
    } else {
        Ok(())
    }
}

fn positive(v: f64, name: &str) -> Result<(), String> {
    if v > 0.0 {
        Ok(())
    } else {
        Err(format!("{name} must be positive"))
    }
}

fn any(_: &Coords) -> Result<(), String> {
    Ok(())
}

fn no_consts(_: &Coords) -> Vec<(&'static str, f64)> {
    Vec::new()
}

fn neg_a_only(v: &[f64]) -> Coords {
    Coords { a: -v[0], k: [0.0; 2] }
}
fn a_then_k(v: &[f64]) -> Coords {
    Coords { a: v[0], k: [v[1], 0.0] }
}
fn neg_a_then_k(v: &[f64]) -> Coords {
    Coords { a: -v[0], k: [v[1], 0.0] }
}
fn k_then_a(v: &[f64]) -> Coords {
    Coords { a: v[1], k: [v[0], 0.0] }
}

pub(super) static CONVENTIONAL: [SuperpotentialSpec; 10] = [
    SuperpotentialSpec {
        name: "harmonic",
        title: "harmonic oscillator",
        si_type: SiType::TypeII,
        si_class: SiClass::IA,
        param_schema: &[ParamRule { name: "omega", rule: "omega > 0" }],
        domain: Domain { lo: -INF, hi: INF },
        window: (-3.0, 3.0),
        to_coords: |v| Coords { a: 0.0, k: [v[0], 0.0] },
        from_coords: |c| vec![c.k[0]],
        valid: |c| positive(c.k[0], "omega"),
        w: |x, c| 0.5 * c.k[0] * x,
        dw: |_, c| 0.5 * c.k[0],
        f1: |_| 0.0,
        df1: |_| 0.0,
        f2: |x, c| 0.5 * c.k[0] * x,
        u: |_, _| 0.0,
        g: |a, c| c.k[0] * a,
        edge_signs: |_| (Sign::Neg, Sign::Pos),
        levels: unbounded,
        broken: None,
        constants: |c| vec![("omega", c.k[0])],
    },
    SuperpotentialSpec {
        name: "morse",
        title: "Morse",
        si_type: SiType::TypeII,
        si_class: SiClass::IB,
        param_schema: &[ParamRule { name: "A", rule: "A != 0" }],
        domain: Domain { lo: -INF, hi: INF },
        window: (-2.0, 4.0),
        to_coords: neg_a_only,
        from_coords: |c| vec![-c.a],
        valid: |c| nonzero(c.a, "A"),
        w: |x, c| -c.a - (-x).exp(),
        dw: |x, _| (-x).exp(),
        f1: |_| -1.0,
        df1: |_| 0.0,
        f2: |x, _| -(-x).exp(),
        u: |_, _| 0.0,
        g: |a, _| -a * a,
        edge_signs: |c| (Sign::Neg, Sign::of(-c.a)),
        levels: |c, h| below(-c.a / h),
        broken: None,
        constants: |_| vec![("alpha", -1.0), ("B", 1.0)],
    },
    SuperpotentialSpec {
        name: "coulomb",
        title: "Coulomb",
        si_type: SiType::TypeII,
        si_class: SiClass::IIA,
        param_schema: &[
            ParamRule { name: "e2", rule: "e2 > 0" },
            ParamRule { name: "ell", rule: "ell != 0" },
        ],
        domain: Domain { lo: 0.0, hi: INF },
        window: (0.2, 6.0),
        to_coords: |v| Coords { a: v[1], k: [0.5 * v[0], 0.0] },
        from_coords: |c| vec![2.0 * c.k[0], c.a],
        valid: |c| positive(c.k[0], "e2").and(nonzero(c.a, "ell")),
        w: |r, c| -c.a / r + c.k[0] / c.a,
        dw: |r, c| c.a / (r * r),
        f1: |r| -1.0 / r,
        df1: |r| 1.0 / (r * r),
        f2: |_, _| 0.0,
        u: |a, c| c.k[0] / a,
        g: |a, c| -c.k[0] * c.k[0] / (a * a),
        edge_signs: |c| (Sign::of(-c.a), Sign::of(c.k[0] / c.a)),
        levels: unbounded,
        broken: None,
        constants: |c| vec![("B", c.k[0])],
    },
    SuperpotentialSpec {
        name: "rosen-morse-trig",
        title: "Rosen-Morse I (trigonometric)",
        si_type: SiType::TypeI,
        si_class: SiClass::IIB1,
        param_schema: &[
            ParamRule { name: "A", rule: "A != 0" },
            ParamRule { name: "B", rule: "any" },
        ],
        domain: Domain { lo: 0.0, hi: PI },
        window: (0.2, PI - 0.2),
        to_coords: a_then_k,
        from_coords: |c| vec![c.a, c.k[0]],
        valid: |c| nonzero(c.a, "A"),
        w: |x, c| -c.a * cot(x) - c.k[0] / c.a,
        dw: |x, c| c.a * csc(x).powi(2),
        f1: |x| -cot(x),
        df1: |x| csc(x).powi(2),
        f2: |_, _| 0.0,
        u: |a, c| -c.k[0] / a,
        g: |a, c| a * a - c.k[0] * c.k[0] / (a * a),
        edge_signs: |c| (Sign::of(-c.a), Sign::of(c.a)),
        levels: unbounded,
        broken: None,
        constants: |c| vec![("B", c.k[0]), ("lambda", -1.0)],
    },
    SuperpotentialSpec {
        name: "rosen-morse-hyp",
        title: "Rosen-Morse II (hyperbolic)",
        si_type: SiType::TypeI,
        si_class: SiClass::IIB2,
        param_schema: &[
            ParamRule { name: "A", rule: "A != 0" },
            ParamRule { name: "B", rule: "any" },
        ],
        domain: Domain { lo: -INF, hi: INF },
        window: (-3.0, 3.0),
        to_coords: neg_a_then_k,
        from_coords: |c| vec![-c.a, c.k[0]],
        valid: |c| nonzero(c.a, "A"),
        w: |x, c| -c.a * x.tanh() - c.k[0] / c.a,
        dw: |x, c| -c.a * sech(x).powi(2),
        f1: |x| -x.tanh(),
        df1: |x| -sech(x).powi(2),
        f2: |_, _| 0.0,
        u: |a, c| -c.k[0] / a,
        g: |a, c| -a * a - c.k[0] * c.k[0] / (a * a),
        edge_signs: |c| {
            let big_a = -c.a;
            let b_over_a = c.k[0] / big_a;
            (Sign::of(-big_a + b_over_a), Sign::of(big_a + b_over_a))
        },
        levels: |c, h| {
            let big_a = -c.a;
            if big_a <= 0.0 {
                return Some(0);
            }
            below((big_a - c.k[0].abs().sqrt()) / h)
        },
        broken: None,
        constants: |c| vec![("B", c.k[0]), ("lambda", 1.0)],
    },
    SuperpotentialSpec {
        name: "eckart",
        title: "Eckart",
        si_type: SiType::TypeI,
        si_class: SiClass::IIB3,
        param_schema: &[
            ParamRule { name: "A", rule: "A != 0" },
            ParamRule { name: "B", rule: "any" },
        ],
        domain: Domain { lo: 0.0, hi: INF },
        window: (0.2, 6.0),
        to_coords: a_then_k,
        from_coords: |c| vec![c.a, c.k[0]],
        valid: |c| nonzero(c.a, "A"),
        w: |r, c| -c.a * coth(r) + c.k[0] / c.a,
        dw: |r, c| c.a * csch(r).powi(2),
        f1: |r| -coth(r),
        df1: |r| csch(r).powi(2),
        f2: |_, _| 0.0,
        u: |a, c| c.k[0] / a,
        g: |a, c| -a * a - c.k[0] * c.k[0] / (a * a),
        edge_signs: |c| (Sign::of(-c.a), Sign::of(-c.a + c.k[0] / c.a)),
        levels: |c, h| {
            if c.a <= 0.0 || c.k[0] <= 0.0 {
                return Some(0);
            }
            below((c.k[0].sqrt() - c.a) / h)
        },
        broken: None,
        constants: |c| vec![("B", c.k[0])],
    },
    SuperpotentialSpec {
        name: "3d-oscillator",
        title: "three-dimensional oscillator",
        si_type: SiType::TypeII,
        si_class: SiClass::IIIA,
        param_schema: &[
            ParamRule { name: "omega", rule: "omega > 0" },
            ParamRule { name: "ell", rule: "any" },
        ],
        domain: Domain { lo: 0.0, hi: INF },
        window: (0.2, 6.0),
        to_coords: k_then_a,
        from_coords: |c| vec![c.k[0], c.a],
        valid: |c| positive(c.k[0], "omega"),
        w: |r, c| 0.5 * c.k[0] * r - c.a / r,
        dw: |r, c| 0.5 * c.k[0] + c.a / (r * r),
        f1: |r| -1.0 / r,
        df1: |r| 1.0 / (r * r),
        f2: |r, c| 0.5 * c.k[0] * r,
        u: |_, _| 0.0,
        g: |a, c| 2.0 * c.k[0] * a,
        edge_signs: |c| (Sign::of(-c.a), Sign::Pos),
        levels: unbounded,
        broken: Some(BrokenBranch {
            applies: |c| c.a < 0.0,
            energy: |n, c, h| (2.0 * n as f64 + 1.0) * h * c.k[0] - 2.0 * c.a * c.k[0],
            levels: unbounded,
        }),
        constants: |c| vec![("omega", c.k[0])],
    },
    SuperpotentialSpec {
        name: "scarf-trig",
        title: "Scarf I (trigonometric)",
        si_type: SiType::TypeI,
        si_class: SiClass::IIIB1,
        param_schema: &[
            ParamRule { name: "A", rule: "any" },
            ParamRule { name: "B", rule: "any" },
        ],
        domain: Domain { lo: -FRAC_PI_2, hi: FRAC_PI_2 },
        window: (-1.3, 1.3),
        to_coords: a_then_k,
        from_coords: |c| vec![c.a, c.k[0]],
        valid: any,
        w: |x, c| c.a * x.tan() - c.k[0] * sec(x),
        dw: |x, c| c.a * sec(x).powi(2) - c.k[0] * sec(x) * x.tan(),
        f1: |x| x.tan(),
        df1: |x| sec(x).powi(2),
        f2: |x, c| -c.k[0] * sec(x),
        u: |_, _| 0.0,
        g: |a, _| a * a,
        edge_signs: |c| (Sign::of(-c.a - c.k[0]), Sign::of(c.a - c.k[0])),
        levels: unbounded,
        broken: Some(BrokenBranch {
            applies: |c| c.a.abs() < c.k[0].abs(),
            energy: |n, c, h| (c.k[0].abs() + (n as f64 + 0.5) * h).powi(2) - c.a * c.a,
            levels: unbounded,
        }),
        constants: |c| vec![("B", c.k[0]), ("alpha", 1.0)],
    },
    SuperpotentialSpec {
        name: "scarf-hyp",
        title: "Scarf II (hyperbolic)",
        si_type: SiType::TypeI,
        si_class: SiClass::IIIB2,
        param_schema: &[
            ParamRule { name: "A", rule: "A != 0" },
            ParamRule { name: "B", rule: "any" },
        ],
        domain: Domain { lo: -INF, hi: INF },
        window: (-3.0, 3.0),
        to_coords: neg_a_then_k,
        from_coords: |c| vec![-c.a, c.k[0]],
        valid: |c| nonzero(c.a, "A"),
        w: |x, c| -c.a * x.tanh() + c.k[0] * sech(x),
        dw: |x, c| -c.a * sech(x).powi(2) - c.k[0] * sech(x) * x.tanh(),
        f1: |x| -x.tanh(),
        df1: |x| -sech(x).powi(2),
        f2: |x, c| c.k[0] * sech(x),
        u: |_, _| 0.0,
        g: |a, _| -a * a,
        edge_signs: |c| (Sign::of(c.a), Sign::of(-c.a)),
        levels: |c, h| below(-c.a / h),
        broken: None,
        constants: |c| vec![("B", c.k[0])],
    },
    SuperpotentialSpec {
        name: "poschl-teller",
        title: "generalized Pöschl-Teller",
        si_type: SiType::TypeI,
        si_class: SiClass::IIIB3,
        param_schema: &[
            ParamRule { name: "A", rule: "A != 0" },
            ParamRule { name: "B", rule: "any" },
        ],
        domain: Domain { lo: 0.0, hi: INF },
        window: (0.2, 6.0),
        to_coords: neg_a_then_k,
        from_coords: |c| vec![-c.a, c.k[0]],
        valid: |c| nonzero(c.a, "A"),
        w: |r, c| -c.a * coth(r) - c.k[0] * csch(r),
        dw: |r, c| c.a * csch(r).powi(2) + c.k[0] * csch(r) * coth(r),
        f1: |r| -coth(r),
        df1: |r| csch(r).powi(2),
        f2: |r, c| -c.k[0] * csch(r),
        u: |_, _| 0.0,
        g: |a, _| -a * a,
        edge_signs: |c| (Sign::of(-c.a - c.k[0]), Sign::of(-c.a)),
        levels: |c, h| below(-c.a / h),
        broken: Some(BrokenBranch {
            applies: |c| {
                let big_a = -c.a;
                big_a * c.k[0] > 0.0 && big_a.abs() > c.k[0].abs()
            },
            energy: |n, c, h| c.a * c.a - (c.k[0].abs() - (n as f64 + 0.5) * h).powi(2),
            levels: |c, h| below(c.k[0].abs() / h - 0.5),
        }),
        constants: |c| vec![("B", c.k[0])],
    },
];

// ħ-dependent tails of the two extended entries.

fn quesne_wh(r: f64, c: &Coords, h: f64) -> f64 {
    let (w, l) = (c.k[0], c.a);
    let q = w * r * r + 2.0 * l;
    2.0 * w * r * h / (q - h) - 2.0 * w * r * h / (q + h)
}

fn quesne_dwh(r: f64, c: &Coords, h: f64) -> f64 {
    let (w, l) = (c.k[0], c.a);
    let term = |s: f64| {
        let d = w * r * r + s;
        2.0 * w * h * (s - w * r * r) / (d * d)
    };
    term(2.0 * l - h) - term(2.0 * l + h)
}

/// (n, n', d, d') with n/d equal to the rational tail divided by ħ². Numerator and
/// denominator share a scale factor chosen per side so nothing overflows.
fn restricted_parts(x: f64, c: &Coords, h: f64) -> (f64, f64, f64, f64) {
    let (a, p, q) = (c.a, c.k[0], c.k[1]);
    let hh = h * h;
    if x >= 0.0 {
        // scaled by e^{-2x}
        let e1 = (-x).exp();
        let e2 = e1 * e1;
        let e3 = e2 * e1;
        let n = 2.0 * p * e1 + 2.0 * a * q * e2 + q * e3;
        let dn = -2.0 * p * e1 - 4.0 * a * q * e2 - 3.0 * q * e3;
        let d = 1.0 + q * hh * e2;
        let dd = -2.0 * q * hh * e2;
        (n, dn, d, dd)
    } else {
        // scaled by e^{x}
        let e1 = x.exp();
        let e2 = e1 * e1;
        let e3 = e2 * e1;
        let n = 2.0 * p * e2 + 2.0 * a * q * e1 + q;
        let dn = 4.0 * p * e2 + 2.0 * a * q * e1;
        let d = e3 + q * hh * e1;
        let dd = 3.0 * e3 + q * hh * e1;
        (n, dn, d, dd)
    }
}

fn restricted_wh(x: f64, c: &Coords, h: f64) -> f64 {
    let (n, _, d, _) = restricted_parts(x, c, h);
    h * h * n / d
}

fn restricted_dwh(x: f64, c: &Coords, h: f64) -> f64 {
    let (n, dn, d, dd) = restricted_parts(x, c, h);
    h * h * (dn * d - n * dd) / (d * d)
}

/// For x < 0 the e^{-x} growth of kernel and tail cancels; with S = Qħ² + e^{2x},
/// W = −a − e^x/S + ħ²(2aQ + 2Pe^x)/S.
fn restricted_total(x: f64, c: &Coords, h: f64) -> Option<(f64, f64)> {
    if x >= 0.0 {
        return None;
    }
    let (a, p, q) = (c.a, c.k[0], c.k[1]);
    let hh = h * h;
    let e1 = x.exp();
    let e2 = e1 * e1;
    let s = q * hh + e2;
    let num = 2.0 * a * q + 2.0 * p * e1;
    let w = -a - e1 / s + hh * num / s;
    let dw = -e1 * (q * hh - e2) / (s * s) + hh * (2.0 * p * e1 * s - 2.0 * e2 * num) / (s * s);
    Some((w, dw))
}

pub(super) static EXTENDED: [ExtendedSpec; 2] = [
    ExtendedSpec {
        name: "quesne-extended",
        title: "Quesne extension of the three-dimensional oscillator",
        kernel: &CONVENTIONAL[6],
        param_schema: &[
            ParamRule { name: "omega", rule: "omega > 0" },
            ParamRule { name: "ell", rule: "ell > hbar/2" },
        ],
        to_coords: k_then_a,
        valid: |c, h| {
            positive(c.k[0], "omega")?;
            if c.a > 0.5 * h {
                Ok(())
            } else {
                Err("ell must exceed hbar/2".into())
            }
        },
        w_h: quesne_wh,
        dw_h: quesne_dwh,
        total: None,
        constants: |c| vec![("omega", c.k[0])],
    },
    ExtendedSpec {
        name: "morse-restricted-ext",
        title: "restricted isospectral extension of Morse",
        kernel: &CONVENTIONAL[1],
        param_schema: &[
            ParamRule { name: "P", rule: "any" },
            ParamRule { name: "Q", rule: "Q > 0" },
            ParamRule { name: "a", rule: "a < 0" },
        ],
        to_coords: |v| Coords { a: v[2], k: [v[0], v[1]] },
        valid: |c, _| {
            positive(c.k[1], "Q")?;
            if c.a < 0.0 {
                Ok(())
            } else {
                Err("a must be negative".into())
            }
        },
        w_h: restricted_wh,
        dw_h: restricted_dwh,
        total: Some(restricted_total),
        constants: no_consts,
    },
];
