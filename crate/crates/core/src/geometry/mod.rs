//! Flat-torus geometry with a ring-valued zweibein.
//!
//! Grid functions are plain `Vec<R>` in the flat index order of
//! [`TorusGrid`]. One-forms are stored as coordinate components `[A₁, A₂]`.

mod frame;
mod grid;
mod ops;
pub mod text;

pub use frame::{
    cartan_residual, coframe_metric_volume, coframe_torsion, levi_civita_form, CoframeData,
    FrameField, FrameGeometry,
};
pub use grid::{Bundle, DerivativeMode, SpinPhase, TorusGrid, ALIASING_TOLERANCE};
pub use ops::{
    curvature_of_torsion, differential, dirac_apply, divergence, frame_components, gradient,
    integrate, partial_derivative, partial_spinor, spin_cov_deriv,
};

use thiserror::Error;

/// Coordinate components of a one-form.
pub type OneForm<R> = [Vec<R>; 2];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("frame is degenerate or reverses orientation at grid point {index}")]
    NonOrientedFrame { index: usize },
    #[error("connection solve is singular at grid point {index}")]
    SingularSolve { index: usize },
    #[error("grid function has {found} points, expected {expected}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("content at the top of the band along axis {axis} (relative weight {ratio:.3e})")]
    AliasingDetected { axis: usize, ratio: f64 },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("grid text: {0}")]
    Parse(String),
}
