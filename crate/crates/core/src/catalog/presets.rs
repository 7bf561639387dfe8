//! Parameter points used as defaults by the batch driver and by the test suites.
//!
//! Unbroken points support at least nine levels (n = 0..8) wherever the spectrum is
//! finite. Oracle points keep the first five levels comfortably below threshold.

use super::Params;

type Point = &'static [(&'static str, f64)];

const UNBROKEN: &[(&str, [Point; 3])] = &[
    ("harmonic", [&[("omega", 1.0)], &[("omega", 2.0)], &[("omega", 0.5)]]),
    ("morse", [&[("A", 10.0)], &[("A", 12.5)], &[("A", 20.0)]]),
    (
        "coulomb",
        [&[("e2", 2.0), ("ell", 1.0)], &[("e2", 4.0), ("ell", 2.0)], &[("e2", 3.0), ("ell", 1.5)]],
    ),
    (
        "rosen-morse-trig",
        [&[("A", 2.0), ("B", 1.0)], &[("A", 3.0), ("B", -2.0)], &[("A", 5.0), ("B", 4.0)]],
    ),
    (
        "rosen-morse-hyp",
        [&[("A", 12.0), ("B", 10.0)], &[("A", 15.0), ("B", -20.0)], &[("A", 11.0), ("B", 5.0)]],
    ),
    (
        "eckart",
        [&[("A", 3.0), ("B", 150.0)], &[("A", 1.0), ("B", 100.0)], &[("A", 2.0), ("B", 200.0)]],
    ),
    (
        "3d-oscillator",
        [
            &[("omega", 1.0), ("ell", 3.0)],
            &[("omega", 2.0), ("ell", 1.0)],
            &[("omega", 0.5), ("ell", 5.0)],
        ],
    ),
    (
        "scarf-trig",
        [&[("A", 4.0), ("B", 1.0)], &[("A", 3.0), ("B", -2.0)], &[("A", 6.0), ("B", 5.0)]],
    ),
    (
        "scarf-hyp",
        [&[("A", 10.0), ("B", 1.0)], &[("A", 12.0), ("B", -3.0)], &[("A", 9.5), ("B", 5.0)]],
    ),
    (
        "poschl-teller",
        [&[("A", 10.0), ("B", 12.0)], &[("A", 9.0), ("B", 20.0)], &[("A", 12.0), ("B", 13.0)]],
    ),
    (
        "quesne-extended",
        [
            &[("omega", 1.0), ("ell", 3.0)],
            &[("omega", 2.0), ("ell", 1.5)],
            &[("omega", 0.5), ("ell", 5.0)],
        ],
    ),
    (
        "morse-restricted-ext",
        [
            &[("P", 1.0), ("Q", 1.0), ("a", -5.0)],
            &[("P", 3.0), ("Q", 4.0), ("a", -2.0)],
            &[("P", 0.5), ("Q", 2.0), ("a", -10.0)],
        ],
    ),
];

const BROKEN: &[(&str, [Point; 3])] = &[
    (
        "3d-oscillator",
        [
            &[("omega", 1.0), ("ell", -3.0)],
            &[("omega", 2.0), ("ell", -1.0)],
            &[("omega", 0.5), ("ell", -2.0)],
        ],
    ),
    (
        "scarf-trig",
        [&[("A", 1.0), ("B", 3.0)], &[("A", -2.0), ("B", 4.0)], &[("A", 0.5), ("B", -2.0)]],
    ),
    (
        "poschl-teller",
        [&[("A", 12.0), ("B", 10.0)], &[("A", 15.0), ("B", 9.0)], &[("A", -14.0), ("B", -11.0)]],
    ),
];

const ORACLE: &[(&str, Point)] = &[
    ("harmonic", &[("omega", 1.0)]),
    ("morse", &[("A", 5.0)]),
    ("coulomb", &[("e2", 4.0), ("ell", 2.0)]),
    ("rosen-morse-trig", &[("A", 3.0), ("B", 2.0)]),
    ("rosen-morse-hyp", &[("A", 6.0), ("B", 3.0)]),
    ("eckart", &[("A", 2.0), ("B", 60.0)]),
    ("3d-oscillator", &[("omega", 1.0), ("ell", 3.0)]),
    ("scarf-trig", &[("A", 4.0), ("B", 1.0)]),
    ("scarf-hyp", &[("A", 6.0), ("B", 2.0)]),
    ("poschl-teller", &[("A", 6.0), ("B", 8.0)]),
    ("quesne-extended", &[("omega", 1.0), ("ell", 3.0)]),
    ("morse-restricted-ext", &[("P", 1.0), ("Q", 1.0), ("a", -5.0)]),
];

const ORACLE_BROKEN: &[(&str, Point)] = &[
    ("3d-oscillator", &[("omega", 1.0), ("ell", -3.0)]),
    ("scarf-trig", &[("A", 1.0), ("B", 3.0)]),
    ("poschl-teller", &[("A", 12.0), ("B", 10.0)]),
];

fn find3(table: &[(&str, [Point; 3])], name: &str) -> Vec<Params> {
    table
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, pts)| pts.iter().map(|p| Params::from_pairs(p)).collect())
        .unwrap_or_default()
}

fn find1(table: &[(&str, Point)], name: &str) -> Option<Params> {
    table.iter().find(|(n, _)| *n == name).map(|(_, p)| Params::from_pairs(p))
}

/// Three unbroken points.
pub fn unbroken(name: &str) -> Vec<Params> {
    find3(UNBROKEN, name)
}

/// Three broken points for the classes with a broken-phase spectrum; empty otherwise.
pub fn broken(name: &str) -> Vec<Params> {
    find3(BROKEN, name)
}

/// The point used for oracle comparisons in the unbroken phase.
pub fn oracle(name: &str) -> Option<Params> {
    find1(ORACLE, name)
}

pub fn oracle_broken(name: &str) -> Option<Params> {
    find1(ORACLE_BROKEN, name)
}

/// Default point for a potential: the first unbroken preset.
pub fn default_params(name: &str) -> Option<Params> {
    unbroken(name).into_iter().next()
}
