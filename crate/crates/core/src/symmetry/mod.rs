//! Weyl, super-Weyl and supersymmetry transformations and the exact
//! first-variation engine.

mod currents;
mod report;
mod sample;
mod susy;
mod transform;
mod weyl;

pub use currents::{
    basic_spinor_variation, basic_variation_densities, susy_current, varform1_check,
    variation_identities, SusyCurrents, VariationIdentityReport,
};
pub use report::{config_digest, deformed, difference_quotient, SusyVariationReport};
pub use sample::{FrameChoice, Sample, SampleConfig};
pub use susy::{
    first_variation, spinor_torsion, susy_varied_fields, SusyCoefficients, TorsionMode,
    VariedFields,
};
pub use transform::TransformationSpec;
pub use weyl::{super_weyl_shift, weyl_rescale, weyl_weight_search, ConformalWeights};

use thiserror::Error;

use crate::fields::{FieldError, GravitinoField, MapField, TwistedSpinorField};
use crate::functionals::FunctionalError;
use crate::geometry::{FrameGeometry, GeometryError, OneForm};
use crate::grassmann::Ring;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymmetryError {
    #[error("parity mismatch: {0}")]
    ParityMismatch(&'static str),
    #[error("map has {0} components but the spinor has {1}")]
    ShapeMismatch(usize, usize),
    #[error("the symplectic target must be two-dimensional, got {0}")]
    TargetDimension(usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Functional(#[from] FunctionalError),
}

/// Matter and supergravity fields (φ, ψ, χ, A); the frame lives in the
/// accompanying [`FrameGeometry`].
#[derive(Debug, Clone, PartialEq)]
pub struct SuperFields<R> {
    pub phi: MapField<R>,
    pub psi: TwistedSpinorField<R>,
    pub chi: GravitinoField<R>,
    pub a: OneForm<R>,
}

impl<R: Ring> SuperFields<R> {
    fn check(&self, geom: &FrameGeometry<R>) -> Result<(), SymmetryError> {
        if self.phi.dim() != self.psi.dim() {
            return Err(SymmetryError::ShapeMismatch(self.phi.dim(), self.psi.dim()));
        }
        let grid = &geom.grid;
        for c in &self.phi.comps {
            grid.check_len(c)?;
        }
        for c in &self.psi.comps {
            grid.check_len(c)?;
        }
        for mu in 0..2 {
            grid.check_len(&self.chi.coord[mu])?;
            grid.check_len(&self.a[mu])?;
        }
        Ok(())
    }
}
