//! Field containers, trigonometric constructors and the torsion/gravitino
//! correspondence.

mod modes;
mod torsion;

pub use modes::{
    make_trig_field, random_table, FieldKind, GeneratorBlocks, ModeRecord, ModeTable, RandomModes,
    TrigField,
};
pub use torsion::{
    factorize_torsion, factorize_torsion_at, gravitino_split, holomorphy_residual,
    pairing_recovery, q_part, torsion_from_gravitino, Factorization,
};

use thiserror::Error;

use crate::clifford::{MajoranaSpinor, SpinorForm};
use crate::geometry::{FrameGeometry, GeometryError, TorusGrid};
use crate::grassmann::{RealLinear, Ring};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FieldError {
    #[error("generator {generator} is outside the block reserved for {kind} fields")]
    GeneratorBudgetExceeded {
        generator: usize,
        kind: &'static str,
    },
    #[error("wavenumber {wavenumber} along axis {axis} exceeds the band limit {limit}")]
    AliasingDetected {
        axis: usize,
        wavenumber: f64,
        limit: f64,
    },
    #[error("invalid mode record: {0}")]
    InvalidMode(String),
    #[error("mode table line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Spinor field on the grid.
pub type SpinorField<R> = Vec<MajoranaSpinor<R>>;

/// φ: torus → ℝ^d, stored as `comps[a][point]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MapField<R> {
    pub comps: Vec<Vec<R>>,
}

/// ψ ∈ 𝕊* ⊗ φ*Tℝ^d, stored as `comps[a][point]` with the two spinor
/// components taken in the dual frame.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistedSpinorField<R> {
    pub comps: Vec<SpinorField<R>>,
}

/// Spinor-valued one-form χ with coordinate components `coord[μ][point]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GravitinoField<R> {
    pub coord: [SpinorField<R>; 2],
}

impl<R: Ring> MapField<R> {
    pub fn zero(grid: &TorusGrid, dim: usize, template: &R) -> Self {
        Self {
            comps: vec![vec![template.zero_like(); grid.len()]; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn map<S>(&self, f: impl Fn(&R) -> S) -> MapField<S> {
        MapField {
            comps: self
                .comps
                .iter()
                .map(|c| c.iter().map(&f).collect())
                .collect(),
        }
    }
}

impl<R: Ring> TwistedSpinorField<R> {
    pub fn zero(grid: &TorusGrid, dim: usize, template: &R) -> Self {
        Self {
            comps: vec![vec![MajoranaSpinor::zero_like(template); grid.len()]; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn map<S>(&self, f: impl Fn(&R) -> S) -> TwistedSpinorField<S> {
        TwistedSpinorField {
            comps: self
                .comps
                .iter()
                .map(|c| c.iter().map(|s| s.map(&f)).collect())
                .collect(),
        }
    }
}

impl<R: RealLinear> GravitinoField<R> {
    pub fn zero(grid: &TorusGrid, template: &R) -> Self {
        let z = vec![MajoranaSpinor::zero_like(template); grid.len()];
        Self {
            coord: [z.clone(), z],
        }
    }

    pub fn map<S>(&self, f: impl Fn(&R) -> S) -> GravitinoField<S> {
        GravitinoField {
            coord: [0, 1].map(|m| self.coord[m].iter().map(|s| s.map(&f)).collect()),
        }
    }

    /// χ(e_k) = e_k^μ χ_μ at a point, as a frame-slot form.
    pub fn frame_form(&self, geom: &FrameGeometry<R>, idx: usize) -> SpinorForm<R> {
        let e = &geom.frame.e;
        let slot = |k: usize| {
            self.coord[0][idx].left_mul(&e[k][0][idx]) + self.coord[1][idx].left_mul(&e[k][1][idx])
        };
        SpinorForm::from_slots([slot(0), slot(1)])
    }

    /// Inverse of [`frame_form`](Self::frame_form): χ_μ = ê^k_μ χ(e_k).
    pub fn from_frame_forms(geom: &FrameGeometry<R>, forms: &[SpinorForm<R>]) -> Self {
        let h = &geom.coframe;
        let coord = [0, 1].map(|m| {
            forms
                .iter()
                .enumerate()
                .map(|(idx, z)| {
                    z.slot(0).left_mul(&h[0][m][idx]) + z.slot(1).left_mul(&h[1][m][idx])
                })
                .collect()
        });
        Self { coord }
    }

    pub fn frame_forms(&self, geom: &FrameGeometry<R>) -> Vec<SpinorForm<R>> {
        (0..geom.len())
            .map(|idx| self.frame_form(geom, idx))
            .collect()
    }
}
