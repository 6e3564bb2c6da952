use super::{
    first_variation, super_weyl_shift, susy_varied_fields, weyl_rescale, ConformalWeights,
    SuperFields, SusyCoefficients, SymmetryError, TorsionMode,
};
use crate::fields::SpinorField;
use crate::functionals::{super_action, ActionBreakdown};
use crate::geometry::FrameGeometry;
use crate::grassmann::GrassmannElement;

type G = GrassmannElement;

/// A transformation of the super action's fields together with its parameters.
#[derive(Debug, Clone)]
pub enum TransformationSpec {
    Weyl {
        u: Vec<f64>,
        weights: ConformalWeights,
    },
    SuperWeyl {
        s: SpinorField<G>,
    },
    SusyBasic {
        s: SpinorField<G>,
    },
    SusyFull {
        s: SpinorField<G>,
        torsion: TorsionMode,
    },
}

impl TransformationSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Weyl { .. } => "weyl",
            Self::SuperWeyl { .. } => "super_weyl",
            Self::SusyBasic { .. } => "susy_basic",
            Self::SusyFull { .. } => "susy_full",
        }
    }

    /// Change of the super action, term by term: the finite difference
    /// after − before for the Weyl kinds, the ε-coefficient for the
    /// supersymmetry kinds.
    pub fn action_change(
        &self,
        geom: &FrameGeometry<G>,
        fields: &SuperFields<G>,
    ) -> Result<ActionBreakdown<G>, SymmetryError> {
        let action = |g: &FrameGeometry<G>, f: &SuperFields<G>| {
            super_action(g, &f.phi, &f.psi, &f.chi, &f.a)
        };
        match self {
            Self::Weyl { u, weights } => {
                let (g, f) = weyl_rescale(geom, fields, u, *weights)?;
                Ok(action(&g, &f)?.difference(&action(geom, fields)?))
            }
            Self::SuperWeyl { s } => {
                let f = SuperFields {
                    chi: super_weyl_shift(geom, &fields.chi, s)?,
                    ..fields.clone()
                };
                Ok(action(geom, &f)?.difference(&action(geom, fields)?))
            }
            Self::SusyBasic { s } => {
                let v = susy_varied_fields(
                    geom,
                    fields,
                    s,
                    SusyCoefficients::BASIC,
                    TorsionMode::Independent,
                )?;
                Ok(first_variation(&v)?.terms)
            }
            Self::SusyFull { s, torsion } => {
                let v = susy_varied_fields(geom, fields, s, SusyCoefficients::FULL, *torsion)?;
                Ok(first_variation(&v)?.terms)
            }
        }
    }
}
