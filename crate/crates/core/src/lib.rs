//! Cone-manifold volumes and A-polynomials of the double twist links
//! `L_m = J(2m+1, 2m+1)`.
//!
//! The link group has a two-generator presentation, and its nonabelian
//! SL(2,C) representations are written in closed form with Chebyshev
//! polynomials of the second kind. On top of that the crate computes:
//!
//! * the canonical-component polynomial `R_{L_m}(s, z)` and the trace
//!   identities that hold on it ([`charvariety`]);
//! * the volume of the cone-manifold `E_{L_m}(α)` by root continuation and
//!   adaptive quadrature, cyclic-cover volumes, and the largest hyperbolic
//!   cone angle ([`volume`]);
//! * the A-polynomial of the canonical component, with an independent
//!   elimination oracle ([`apoly`]);
//! * seeded identity suites over all of the above ([`verify`]).
//!
//! ```
//! use std::f64::consts::PI;
//! use twistlink::volume::{volume, VolumeStatus};
//!
//! let v = volume(1, 2.0 * PI / 5.0, 1e-9).unwrap();
//! assert_eq!(v.status, VolumeStatus::Hyperbolic);
//! assert!((v.volume - 2.239812948162922).abs() < 1e-8);
//! ```

pub mod apoly;
pub mod charvariety;
pub mod chebyshev;
pub mod error;
pub mod matrix;
pub mod polyring;
pub mod quadrature;
pub mod rootfinder;
pub mod verify;
pub mod volume;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/chebyshev.md")]
    mod chebyshev {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/representations.md")]
    mod representations {}
    #[doc = include_str!("../../../book/src/roots.md")]
    mod roots {}
    #[doc = include_str!("../../../book/src/volume.md")]
    mod volume {}
    #[doc = include_str!("../../../book/src/apolynomial.md")]
    mod apolynomial {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
