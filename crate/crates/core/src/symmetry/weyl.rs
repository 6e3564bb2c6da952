use num_rational::Rational64;
use num_traits::ToPrimitive;

use super::{SuperFields, SymmetryError};
use crate::clifford::{theta_insert, SpinorForm};
use crate::fields::{GravitinoField, SpinorField};
use crate::functionals::super_action;
use crate::geometry::{FrameField, FrameGeometry};
use crate::grassmann::RealLinear;

/// Conformal weights: under e_k ↦ e^{−u}e_k a field of weight w picks up e^{w·u}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConformalWeights {
    pub phi: Rational64,
    pub psi: Rational64,
    /// Weight of the coordinate components χ_μ.
    pub chi: Rational64,
}

impl Default for ConformalWeights {
    fn default() -> Self {
        Self {
            phi: Rational64::new(0, 1),
            psi: Rational64::new(-1, 2),
            chi: Rational64::new(1, 2),
        }
    }
}

impl ConformalWeights {
    /// Every table with weights in {−1, −½, 0, ½, 1}.
    pub fn candidates() -> Vec<Self> {
        let values: Vec<Rational64> = (-2..=2).map(|n| Rational64::new(n, 2)).collect();
        let mut out = Vec::with_capacity(125);
        for &phi in &values {
            for &psi in &values {
                for &chi in &values {
                    out.push(Self { phi, psi, chi });
                }
            }
        }
        out
    }
}

fn factor(u: f64, w: Rational64) -> f64 {
    (w.to_f64().unwrap_or(0.0) * u).exp()
}

/// Rescale the frame by e^{−u} and the fields by their conformal weights.
/// The torsion form is left unchanged.
pub fn weyl_rescale<R: RealLinear>(
    geom: &FrameGeometry<R>,
    fields: &SuperFields<R>,
    u: &[f64],
    weights: ConformalWeights,
) -> Result<(FrameGeometry<R>, SuperFields<R>), SymmetryError> {
    geom.grid.check_len(u)?;
    fields.check(geom)?;
    let e = &geom.frame.e;
    let frame = FrameField {
        e: [0, 1].map(|k| {
            [0, 1].map(|m| {
                e[k][m]
                    .iter()
                    .zip(u)
                    .map(|(v, u)| v.scale((-u).exp()))
                    .collect()
            })
        }),
    };
    let scaled = |c: &[R], w: Rational64| -> Vec<R> {
        c.iter()
            .zip(u)
            .map(|(v, u)| v.scale(factor(*u, w)))
            .collect()
    };
    let scaled_spinors = |c: &SpinorField<R>, w: Rational64| -> SpinorField<R> {
        c.iter()
            .zip(u)
            .map(|(v, u)| v.scale(factor(*u, w)))
            .collect()
    };
    let out = SuperFields {
        phi: crate::fields::MapField {
            comps: fields
                .phi
                .comps
                .iter()
                .map(|c| scaled(c, weights.phi))
                .collect(),
        },
        psi: crate::fields::TwistedSpinorField {
            comps: fields
                .psi
                .comps
                .iter()
                .map(|c| scaled_spinors(c, weights.psi))
                .collect(),
        },
        chi: GravitinoField {
            coord: [0, 1].map(|m| scaled_spinors(&fields.chi.coord[m], weights.chi)),
        },
        a: fields.a.clone(),
    };
    Ok((FrameGeometry::new(&geom.grid, frame)?, out))
}

/// χ(v) ↦ χ(v) + γ(v♭)𝔰, i.e. χ(e_i) gains γ^i𝔰.
pub fn super_weyl_shift<R: RealLinear>(
    geom: &FrameGeometry<R>,
    chi: &GravitinoField<R>,
    s: &SpinorField<R>,
) -> Result<GravitinoField<R>, SymmetryError> {
    geom.grid.check_len(s)?;
    if s.iter()
        .any(|v| v.0.iter().any(|c| c.parity_max()[0] > 0.0))
    {
        return Err(SymmetryError::ParityMismatch(
            "super-Weyl parameter must be odd",
        ));
    }
    let forms: Vec<SpinorForm<R>> = (0..geom.len())
        .map(|idx| {
            let z = chi.frame_form(geom, idx);
            // γ(·)𝔰 = 2·δ_Θ𝔰 lies in the 𝔭-image
            z + theta_insert(&s[idx]).scale(2.0)
        })
        .collect();
    Ok(GravitinoField::from_frame_forms(geom, &forms))
}

/// Total super action drift under [`weyl_rescale`] for every candidate
/// weight table, in [`ConformalWeights::candidates`] order.
pub fn weyl_weight_search<R: RealLinear>(
    geom: &FrameGeometry<R>,
    fields: &SuperFields<R>,
    u: &[f64],
) -> Result<Vec<(ConformalWeights, f64)>, SymmetryError> {
    let f = fields;
    let before = super_action(geom, &f.phi, &f.psi, &f.chi, &f.a)?.total;
    ConformalWeights::candidates()
        .into_iter()
        .map(|w| {
            let (g, f) = weyl_rescale(geom, fields, u, w)?;
            let after = super_action(&g, &f.phi, &f.psi, &f.chi, &f.a)?.total;
            Ok((w, (after - &before).max_abs()))
        })
        .collect()
}
