//! Exact Gaussian-state simulation of loss-tolerant multi-phase estimation
//! with parametrically amplified continuous-variable entangled states.
//!
//! The crate propagates means and covariances of multimode Gaussian states
//! through squeezers, beam splitters, passive unitary networks,
//! phase-sensitive amplifiers, and loss channels, then evaluates
//! phase-estimation sensitivities of joint homodyne currents — for a
//! two-mode entangled pair and for a four-mode square cluster state.
//! Printed closed-form curves are evaluated alongside the exact results for
//! comparison, with their known irregularities catalogued rather than
//! patched.
//!
//! Modules:
//! - [`gaussian`]: states, symplectic maps, loss channels, diagnostics.
//! - [`homodyne`]: joint detector currents, moments, sensitivities, sampling.
//! - [`analytic`]: closed forms as printed, shot-noise references, the
//!   discrepancy catalogue.
//! - [`epr`]: the two-mode pipeline and its loss sweep.
//! - [`cluster`]: the four-mode square-cluster pipeline and its sweeps.
//! - [`sweep`]: grids, result tables, deterministic parallel evaluation.

pub use nalgebra;

pub mod analytic;
pub mod cluster;
pub mod epr;
pub mod error;
pub mod gaussian;
pub mod homodyne;
pub mod sweep;

pub use analytic::{ClusterParams, EprParams, Sign};
pub use error::{Error, Result};
pub use gaussian::{GaussianState, LossConvention, Quadrature, SymplecticOp};
pub use homodyne::{HomodyneReadout, ReadoutTerm, SensitivityResult, SlopeMethod};
pub use sweep::{Grid, SweepTable};
