//! Cavity-modified quantum transition state theory under vibrational strong
//! coupling (VSC).
//!
//! The crate builds the mass-weighted Hessians of a reactant well and a
//! parabolic barrier dressed by a single cavity mode, extracts the polariton
//! normal-mode frequencies, and turns them into rate correction factors:
//! the full multi-dimensional factor `κ`, its zero-point-energy (ZPE) and
//! Grote–Hynes limits, the centroid (parabolic tunneling) variant, and the
//! branching ratio of two competing channels. Closed-form perturbative
//! expansions are provided alongside the exact spectra for calibration.
//!
//! Units: `ħ = 1` and every frequency is measured in a user-chosen reference
//! frequency (usually the bare vibrational frequency `ω`). Inverse
//! temperature `β` is then in inverse reference units.
//!
//! The crate is `no_std` + `alloc`; enable the `std` feature to get the
//! `std::error::Error` integration through `core::error::Error`. Math
//! functions always come from `libm`, so results are bit-identical with or
//! without `std`.
#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

mod error;
pub mod hessian;
mod math;
pub mod model;
pub mod perturbation;
pub mod rates;
pub mod spectrum;

pub use error::{Error, Result};
pub use hessian::{HessianKind, HessianTag, SymmetricMatrix};
pub use model::{CavitySetup, CouplingMode, CouplingSet, ReactionParams};
pub use perturbation::{PerturbativeReport, Region};
pub use rates::{ChannelSpec, CorrectionBreakdown, SharedConditions};
pub use spectrum::{BarrierSpectrum, WellSpectrum};
