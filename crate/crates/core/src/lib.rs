//! Shape-invariant superpotentials and the semiclassical quantization conditions
//! that are exact for them.
//!
//! * [`catalog`]: the ten conventional superpotentials and two ħ-dependent extensions.
//! * [`quadrature`]: turning points, endpoint-singular action integrals, closed forms.
//! * [`quantization`]: SWKB, broken-phase SWKB, WKB and Langer-corrected WKB checks.
//! * [`oracle`]: a Numerov shooting solver that only sees potential values.
//! * [`extended`]: the dimensionless SWKB integral of the Quesne extension.
//! * [`transforms`]: projections from type-I onto type-II superpotentials as limits.
//! * [`fixtures`]: the recorded deviation table.
//!
//! ```
//! use swkb::catalog::{self, Params};
//! use swkb::quantization::swkb_check;
//!
//! let osc = catalog::lookup("3d-oscillator").unwrap();
//! let p = Params::from_pairs(&[("omega", 1.0), ("ell", 3.0)]);
//! let r = swkb_check(osc, &p, 1.0, 2, 1e-8).unwrap();
//! assert!(r.pass);
//! assert!((r.integral - 2.0 * std::f64::consts::PI).abs() < 1e-8);
//! ```

pub mod catalog;
pub mod error;
pub mod extended;
pub mod fixtures;
pub mod oracle;
pub mod quadrature;
pub mod quantization;
pub mod transforms;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/catalog.md")]
    mod catalog {}
    #[doc = include_str!("../../../book/src/quadrature.md")]
    mod quadrature {}
    #[doc = include_str!("../../../book/src/quantization.md")]
    mod quantization {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/extended.md")]
    mod extended {}
    #[doc = include_str!("../../../book/src/projections.md")]
    mod projections {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
