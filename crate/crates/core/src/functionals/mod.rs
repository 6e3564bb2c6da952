//! Integrands and integrated functionals on the torus.
//!
//! Every functional has a `*_density` companion returning the pointwise
//! integrand, so pointwise identities can be checked before integration.

mod breakdown;

pub use breakdown::{ActionBreakdown, BreakdownParseError, TERM_NAMES};

use thiserror::Error;

use crate::clifford::{apply, omega, project_q, symplectic_dual, MajoranaSpinor, GAMMA};
use crate::fields::{FieldError, GravitinoField, MapField, TwistedSpinorField};
use crate::geometry::{
    curvature_of_torsion, differential, dirac_apply, integrate, FrameGeometry, GeometryError,
    OneForm,
};
use crate::grassmann::{RealLinear, Ring};

/// Weight of the mixed coupling in the super action total.
pub const MIXED_WEIGHT: f64 = 4.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FunctionalError {
    #[error("target dimensions differ: {0} vs {1}")]
    ShapeMismatch(usize, usize),
    #[error("symplectic target pairing needs an even target dimension, got {0}")]
    OddTarget(usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Fiber pairing on the target factor of E.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetPairing {
    /// Flat metric δ_{ab}.
    Euclidean,
    /// Standard symplectic form ω₂ = Σ dx^{2c}∧dx^{2c+1}.
    Symplectic,
}

/// (z, z')_E = Σ_a ε^{kl} z_k^a z'^a_l: symplectic on the spinor factor,
/// Euclidean on the target. Symmetric for odd inputs.
pub fn pairing_e<R: Ring>(
    z: &[MajoranaSpinor<R>],
    w: &[MajoranaSpinor<R>],
) -> Result<R, FunctionalError> {
    pairing_e_with(TargetPairing::Euclidean, z, w)
}

pub fn pairing_e_with<R: Ring>(
    target: TargetPairing,
    z: &[MajoranaSpinor<R>],
    w: &[MajoranaSpinor<R>],
) -> Result<R, FunctionalError> {
    if z.len() != w.len() {
        return Err(FunctionalError::ShapeMismatch(z.len(), w.len()));
    }
    let Some(first) = z.first() else {
        return Err(FunctionalError::ShapeMismatch(0, 0));
    };
    let mut acc = first.0[0].zero_like();
    match target {
        TargetPairing::Euclidean => {
            for (a, b) in z.iter().zip(w) {
                acc += &omega(a, b);
            }
        }
        TargetPairing::Symplectic => {
            if !z.len().is_multiple_of(2) {
                return Err(FunctionalError::OddTarget(z.len()));
            }
            for c in 0..z.len() / 2 {
                acc += &omega(&z[2 * c], &w[2 * c + 1]);
                acc = acc - &omega(&z[2 * c + 1], &w[2 * c]);
            }
        }
    }
    Ok(acc)
}

fn target_slice<R: Clone>(field: &[Vec<R>], idx: usize) -> Vec<R> {
    field.iter().map(|c| c[idx].clone()).collect()
}

/// Σ_a Σ_k (dφ^a(e_k))².
pub fn harmonic_density<R: RealLinear>(
    geom: &FrameGeometry<R>,
    phi: &MapField<R>,
) -> Result<Vec<R>, FunctionalError> {
    let e = &geom.frame.e;
    let mut out = vec![e[0][0][0].zero_like(); geom.len()];
    for comp in &phi.comps {
        let d = differential(&geom.grid, comp)?;
        for (idx, slot) in out.iter_mut().enumerate() {
            for k in 0..2 {
                let v = e[k][0][idx].clone() * &d[0][idx] + &(e[k][1][idx].clone() * &d[1][idx]);
                *slot += &(v.clone() * &v);
            }
        }
    }
    Ok(out)
}

pub fn harmonic_energy<R: RealLinear>(
    geom: &FrameGeometry<R>,
    phi: &MapField<R>,
) -> Result<R, FunctionalError> {
    Ok(integrate(geom, &harmonic_density(geom, phi)?)?)
}

/// Dψ for every target component.
pub fn dirac_field<R: RealLinear>(
    geom: &FrameGeometry<R>,
    psi: &TwistedSpinorField<R>,
    a: &OneForm<R>,
) -> Result<TwistedSpinorField<R>, FunctionalError> {
    Ok(TwistedSpinorField {
        comps: psi
            .comps
            .iter()
            .map(|c| dirac_apply(geom, c, a))
            .collect::<Result<_, _>>()?,
    })
}

/// Pointwise (ψ, Dψ)_E with the given target pairing.
pub fn dirac_density_with<R: RealLinear>(
    target: TargetPairing,
    geom: &FrameGeometry<R>,
    psi: &TwistedSpinorField<R>,
    a: &OneForm<R>,
) -> Result<Vec<R>, FunctionalError> {
    let dpsi = dirac_field(geom, psi, a)?;
    (0..geom.len())
        .map(|idx| {
            pairing_e_with(
                target,
                &target_slice(&psi.comps, idx),
                &target_slice(&dpsi.comps, idx),
            )
        })
        .collect()
}

pub fn dirac_density<R: RealLinear>(
    geom: &FrameGeometry<R>,
    psi: &TwistedSpinorField<R>,
    a: &OneForm<R>,
) -> Result<Vec<R>, FunctionalError> {
    dirac_density_with(TargetPairing::Euclidean, geom, psi, a)
}

/// ((ψ, Dψ)) = ∫ (ψ, D_A ψ)_E dvol.
pub fn dirac_action<R: RealLinear>(
    geom: &FrameGeometry<R>,
    psi: &TwistedSpinorField<R>,
    a: &OneForm<R>,
) -> Result<R, FunctionalError> {
    Ok(integrate(geom, &dirac_density(geom, psi, a)?)?)
}

/// ∫ (ψ, D_A φ)_E dvol for two different spinor fields.
pub fn dirac_cross_action<R: RealLinear>(
    geom: &FrameGeometry<R>,
    psi: &TwistedSpinorField<R>,
    phi: &TwistedSpinorField<R>,
    a: &OneForm<R>,
) -> Result<R, FunctionalError> {
    if psi.dim() != phi.dim() {
        return Err(FunctionalError::ShapeMismatch(psi.dim(), phi.dim()));
    }
    let dphi = dirac_field(geom, phi, a)?;
    let density = (0..geom.len())
        .map(|idx| {
            pairing_e(
                &target_slice(&psi.comps, idx),
                &target_slice(&dphi.comps, idx),
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(integrate(geom, &density)?)
}

/// Dirac action of a commuting spinor with values in a symplectic target.
pub fn symplectic_target_dirac_action(
    geom: &FrameGeometry<f64>,
    psi: &TwistedSpinorField<f64>,
    a: &OneForm<f64>,
) -> Result<f64, FunctionalError> {
    Ok(integrate(
        geom,
        &dirac_density_with(TargetPairing::Symplectic, geom, psi, a)?,
    )?)
}

/// (χ, 𝔮χ) = Σ_i ω(χ(e_i), 𝔮(χ)(e_i)) at every point.
pub fn gravitino_square<R: RealLinear>(geom: &FrameGeometry<R>, chi: &GravitinoField<R>) -> Vec<R> {
    (0..geom.len())
        .map(|idx| {
            let z = chi.frame_form(geom, idx);
            let q = project_q(&z);
            omega(&z.slot(0), &q.slot(0)) + &omega(&z.slot(1), &q.slot(1))
        })
        .collect()
}

fn psi_square<R: RealLinear>(
    psi: &TwistedSpinorField<R>,
    idx: usize,
) -> Result<R, FunctionalError> {
    let v = target_slice(&psi.comps, idx);
    pairing_e(&v, &v)
}

/// −(χ, 𝔮χ)·(ψ, ψ)_E. The sign makes the super action stationary under
/// supersymmetry with the variation weights in [`crate::symmetry::SusyCoefficients::FULL`].
pub fn quartic_density<R: RealLinear>(
    geom: &FrameGeometry<R>,
    chi: &GravitinoField<R>,
    psi: &TwistedSpinorField<R>,
) -> Result<Vec<R>, FunctionalError> {
    let sq = gravitino_square(geom, chi);
    sq.into_iter()
        .enumerate()
        .map(|(idx, c)| Ok(-(c * &psi_square(psi, idx)?)))
        .collect()
}

pub fn coupling_quartic<R: RealLinear>(
    geom: &FrameGeometry<R>,
    chi: &GravitinoField<R>,
    psi: &TwistedSpinorField<R>,
) -> Result<R, FunctionalError> {
    Ok(integrate(geom, &quartic_density(geom, chi, psi)?)?)
}

/// 𝔮(χ)(grad φ)^a = Σ_i 𝔮(χ)(e_i)·dφ^a(e_i) at every point.
pub fn q_gravitino_gradient<R: RealLinear>(
    geom: &FrameGeometry<R>,
    chi: &GravitinoField<R>,
    phi: &MapField<R>,
) -> Result<Vec<Vec<MajoranaSpinor<R>>>, FunctionalError> {
    let e = &geom.frame.e;
    let qs: Vec<_> = (0..geom.len())
        .map(|idx| project_q(&chi.frame_form(geom, idx)))
        .collect();
    phi.comps
        .iter()
        .map(|comp| {
            let d = differential(&geom.grid, comp)?;
            Ok((0..geom.len())
                .map(|idx| {
                    let dk = |k: usize| {
                        e[k][0][idx].clone() * &d[0][idx] + &(e[k][1][idx].clone() * &d[1][idx])
                    };
                    qs[idx].slot(0).right_mul(&dk(0)) + qs[idx].slot(1).right_mul(&dk(1))
                })
                .collect())
        })
        .collect()
}

/// (𝔮(χ)(grad φ)~, ψ)_E, the spinor mapped into 𝕊* by s ↦ ω(·, s).
pub fn mixed_density<R: RealLinear>(
    geom: &FrameGeometry<R>,
    chi: &GravitinoField<R>,
    phi: &MapField<R>,
    psi: &TwistedSpinorField<R>,
) -> Result<Vec<R>, FunctionalError> {
    if phi.dim() != psi.dim() {
        return Err(FunctionalError::ShapeMismatch(phi.dim(), psi.dim()));
    }
    let v = q_gravitino_gradient(geom, chi, phi)?;
    (0..geom.len())
        .map(|idx| {
            let dual: Vec<MajoranaSpinor<R>> = v
                .iter()
                .map(|c| -MajoranaSpinor(symplectic_dual(&c[idx]).0))
                .collect();
            pairing_e(&dual, &target_slice(&psi.comps, idx))
        })
        .collect()
}

pub fn coupling_mixed<R: RealLinear>(
    geom: &FrameGeometry<R>,
    chi: &GravitinoField<R>,
    phi: &MapField<R>,
    psi: &TwistedSpinorField<R>,
) -> Result<R, FunctionalError> {
    Ok(integrate(geom, &mixed_density(geom, chi, phi, psi)?)?)
}

/// ½ Σ ε_{kl} M_{kl}(χ) with M_{kl} = Σ_{ij} ω(χ_i, γ^jγ^i 𝔰_k)·ω(𝔰_l, χ_j): the
/// coefficient of (ψ, ψ)_E in Σ_a ω(χ_i, γ^jγ^iψ^a)·ω(ψ^a, χ_j) for odd ψ.
pub fn ruled_out_coefficient<R: RealLinear>(z: &crate::clifford::SpinorForm<R>) -> R {
    let template = &z.0[0][0];
    let basis = [
        MajoranaSpinor::basis(0, template),
        MajoranaSpinor::basis(1, template),
    ];
    let mut acc = template.zero_like();
    for i in 0..2 {
        for j in 0..2 {
            for (k, l, sign) in [(0, 1, 1.0), (1, 0, -1.0)] {
                let x = apply(&GAMMA[j], &apply(&GAMMA[i], &basis[k]));
                let m = omega(&z.slot(i), &x) * &omega(&basis[l], &z.slot(j));
                acc += &m.scale(0.5 * sign);
            }
        }
    }
    acc
}

pub fn ruled_out_density<R: RealLinear>(
    geom: &FrameGeometry<R>,
    chi: &GravitinoField<R>,
    psi: &TwistedSpinorField<R>,
) -> Result<Vec<R>, FunctionalError> {
    (0..geom.len())
        .map(|idx| Ok(ruled_out_coefficient(&chi.frame_form(geom, idx)) * &psi_square(psi, idx)?))
        .collect()
}

/// The coupling excluded by super-Weyl invariance, kept as a witness.
pub fn coupling_ruled_out<R: RealLinear>(
    geom: &FrameGeometry<R>,
    chi: &GravitinoField<R>,
    psi: &TwistedSpinorField<R>,
) -> Result<R, FunctionalError> {
    Ok(integrate(geom, &ruled_out_density(geom, chi, psi)?)?)
}

/// Full super action with its per-term breakdown; the mixed entry carries
/// its weight [`MIXED_WEIGHT`].
pub fn super_action<R: RealLinear>(
    geom: &FrameGeometry<R>,
    phi: &MapField<R>,
    psi: &TwistedSpinorField<R>,
    chi: &GravitinoField<R>,
    a: &OneForm<R>,
) -> Result<ActionBreakdown<R>, FunctionalError> {
    if phi.dim() != psi.dim() {
        return Err(FunctionalError::ShapeMismatch(phi.dim(), psi.dim()));
    }
    let zero = geom.density[0].zero_like();
    Ok(ActionBreakdown::new(
        harmonic_energy(geom, phi)?,
        dirac_action(geom, psi, a)?,
        coupling_quartic(geom, chi, psi)?,
        coupling_mixed(geom, chi, phi, psi)?.scale(MIXED_WEIGHT),
        zero.clone(),
        zero,
    ))
}

/// Torsion functionals: Dirac + ‖F_A‖² (and, with a map, the harmonic
/// energy plus the scalar curvature term, which vanishes on the flat torus).
pub fn dym_dhym_action<R: RealLinear>(
    geom: &FrameGeometry<R>,
    phi: Option<&MapField<R>>,
    psi: &TwistedSpinorField<R>,
    a: &OneForm<R>,
) -> Result<ActionBreakdown<R>, FunctionalError> {
    let zero = geom.density[0].zero_like();
    let harmonic = match phi {
        Some(phi) => harmonic_energy(geom, phi)?,
        None => zero.clone(),
    };
    let f = curvature_of_torsion(&geom.grid, a)?;
    let f_sq: Vec<R> = f
        .iter()
        .zip(&geom.inverse_density)
        .map(|(f, inv)| {
            let v = f.clone() * inv;
            v.clone() * &v
        })
        .collect();
    Ok(ActionBreakdown::new(
        harmonic,
        dirac_action(geom, psi, a)?,
        zero.clone(),
        zero.clone(),
        integrate(geom, &f_sq)?,
        zero,
    ))
}

#[cfg(test)]
mod tests;
