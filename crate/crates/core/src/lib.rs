//! Differential calculus of local analytic Moufang loops, evaluated numerically.
//!
//! The crate computes, at sampled points of concrete loops, the auxiliary
//! functions `u`, `v`, `w` generating left, right and middle translations,
//! their secondary (commutator) tensors, the Yamaguti functions and the
//! structure constants, and then checks the identities tying them together:
//! generalized Lie equations, generalized Maurer-Cartan equations, the
//! Yamagutian decomposition, the second-order Lie equations and their
//! integrability conditions.
//!
//! All derivatives are exact forward-mode jets ([`jet`]); a central-difference
//! oracle ([`jet::fd_oracle`]) exists only as an independent cross-check.
//!
//! ```
//! use moufang::{atlas::LoopChart, tensors::PointTensors};
//!
//! let octonion = LoopChart::builtin("octonion").unwrap();
//! let g = [0.1, -0.05, 0.02, 0.0, 0.03, 0.0, -0.01];
//! let t = PointTensors::compute(&octonion, &g).unwrap();
//! // u + v + w = 0 by construction
//! let sum = &t.aux.u + &t.aux.v + &t.aux.w;
//! assert!(sum.iter().all(|x| x.abs() < 1e-14));
//! ```

#![allow(clippy::needless_range_loop)]

pub mod atlas;
pub mod error;
pub mod jet;
pub mod report;
pub mod suites;
pub mod tensors;

pub use error::{Error, Result};
