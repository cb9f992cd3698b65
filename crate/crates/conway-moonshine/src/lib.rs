//! Exact arithmetic for Conway moonshine.
//!
//! The crate builds the objects attached to the Conway group acting on the
//! 24-dimensional Leech lattice: Frame shapes and their eta quotients, the
//! graded super traces `T^s_g` and `T^s_{g,tw}`, the 2^12-dimensional spinor
//! module, the binary Golay code and the Leech lattice itself. Every identity
//! that can be checked by finite computation is checked with exact rational or
//! cyclotomic arithmetic; floating point only appears in [`modgroups`] where
//! series are evaluated on the upper half-plane.

pub mod classdata;
pub mod cliffordcm;
pub mod cyclotomic;
pub mod error;
pub mod fockoracle;
pub mod frameshape;
pub mod lattice;
pub mod modgroups;
pub mod moonshine;
pub mod numbers;
pub mod qseries;

pub use cyclotomic::CycNumber;
pub use error::{Error, Result};
pub use frameshape::FrameShape;
pub use qseries::{CycSeries, QSeries, Scalar, Series};
