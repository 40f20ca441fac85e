//! A numerical laboratory for spherically symmetric irrotational compressible
//! flow with tracked shock fronts.
//!
//! The crate has three layers:
//!
//! * model problems: exact (Hopf-Lax) and finite-volume Burgers solvers with
//!   N-wave profiles and shock extraction ([`burgers`]), and the null-coordinate
//!   geometry of the Minkowski and Burgers model metrics with their multiplier
//!   currents ([`geometry`], [`multipliers`]);
//! * the physical solver: an equation-of-state layer ([`eos`]) and a
//!   three-region front-tracking scheme that enforces the restricted
//!   Rankine-Hugoniot conditions (mass flux continuity and potential
//!   continuity) at two tracked fronts ([`fronttrack`]);
//! * diagnostics: power/log-law fitters for the Landau decay rate, shock
//!   separation, and front-position limits ([`diagnostics`]), orchestrated by
//!   a small CLI ([`config`], [`cli`]).

pub mod burgers;
pub mod cli;
pub mod config;
pub mod diagnostics;
pub mod eos;
pub mod error;
pub mod fronttrack;
pub mod geometry;
pub mod multipliers;
pub mod output;

pub use error::{Error, Result};
