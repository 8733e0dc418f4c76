//! Scattering forces in highly twisted Laguerre-Gaussian beams, the charged
//! droplet balance they mirror, and the dynamics connecting the two.
//!
//! The crate is organised around the comparison it computes:
//!
//! - [`lgmode`] evaluates the beam amplitude and phase, stable at extreme
//!   winding numbers through log-domain accumulation;
//! - [`atomforce`] turns the phase gradient into the scattering force on a
//!   two-level atom and splits the on-ring axial force into a constant push,
//!   a twist-induced reduction, and a velocity damping;
//! - [`millikan`] models the charged droplet between capacitor plates whose
//!   balance the atom mimics;
//! - [`analogy`] pairs the two force balances quantitatively;
//! - [`dynamics`] integrates the resulting motion with interchangeable
//!   force models selected by name.

// Test oracles are recorded at the full 17 digits an f64 round-trips at,
// so their provenance stays greppable; do not shorten them.
#![allow(clippy::excessive_precision)]

pub mod analogy;
pub mod atomforce;
pub mod cli;
pub mod config;
pub mod constants;
pub mod dynamics;
pub mod error;
pub mod geometry;
pub mod lgmode;
pub mod millikan;
pub mod report;

pub use error::{Error, Result};
