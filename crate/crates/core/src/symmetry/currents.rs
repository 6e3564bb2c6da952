use super::SymmetryError;
use crate::clifford::{apply, symplectic_dual, MajoranaSpinor, GAMMA};
use crate::fields::{MapField, SpinorField, TwistedSpinorField};
use crate::functionals::{dirac_density_with, harmonic_density, pairing_e_with, TargetPairing};
use crate::geometry::{divergence, gradient, integrate, FrameGeometry};
use crate::grassmann::{Dual, RealLinear, Ring};

/// Vector fields (coordinate components) and bulk densities of the
/// supersymmetry variation of ‖dφ‖² + (ψ, Dψ)_E with parameter 𝔰:
///
/// δ‖dφ‖² = bulk_phi + Div J_φ, J_φ = 2 Σ_a ψ^a(𝔰) grad φ^a,
/// δ(ψ, Dψ) = bulk_psi + Div J_ψ, J_ψ = −(ψ, γ(·)δψ)_E,
/// J_susy = ½(J_φ + J_ψ).
#[derive(Debug, Clone)]
pub struct SusyCurrents<R> {
    pub j_phi: [Vec<R>; 2],
    pub j_psi: [Vec<R>; 2],
    pub j_susy: [Vec<R>; 2],
    /// −2 Σ_a ψ^a(𝔰) Δφ^a
    pub bulk_phi: Vec<R>,
    /// 2 (ψ, 𝔰̃ ⊗ Δφ)_E
    pub bulk_psi: Vec<R>,
}

fn spinor_value<R: Ring>(psi: &MajoranaSpinor<R>, s: &MajoranaSpinor<R>) -> R {
    psi.0[0].clone() * &s.0[0] + &(psi.0[1].clone() * &s.0[1])
}

fn target_slice<R: Clone>(field: &[Vec<R>], idx: usize) -> Vec<R> {
    field.iter().map(|c| c[idx].clone()).collect()
}

/// δψ^a = Σ_j γ^j e_j(φ^a) 𝔰̃.
pub fn basic_spinor_variation<R: RealLinear>(
    geom: &FrameGeometry<R>,
    phi: &MapField<R>,
    s: &SpinorField<R>,
) -> Result<TwistedSpinorField<R>, SymmetryError> {
    let e = &geom.frame.e;
    let comps = phi
        .comps
        .iter()
        .map(|c| {
            let d = crate::geometry::differential(&geom.grid, c)?;
            Ok((0..geom.len())
                .map(|idx| {
                    let s_dual = MajoranaSpinor(symplectic_dual(&s[idx]).0);
                    let mut acc = MajoranaSpinor::zero_like(&c[idx]);
                    for j in 0..2 {
                        let dj = e[j][0][idx].clone() * &d[0][idx]
                            + &(e[j][1][idx].clone() * &d[1][idx]);
                        acc = acc + apply(&GAMMA[j], &s_dual).right_mul(&dj);
                    }
                    acc
                })
                .collect())
        })
        .collect::<Result<_, SymmetryError>>()?;
    Ok(TwistedSpinorField { comps })
}

/// Currents and bulk densities for the variation δφ = ψ(𝔰), δψ = γ(dφ)𝔰̃.
pub fn susy_current<R: RealLinear>(
    target: TargetPairing,
    geom: &FrameGeometry<R>,
    phi: &MapField<R>,
    psi: &TwistedSpinorField<R>,
    s: &SpinorField<R>,
) -> Result<SusyCurrents<R>, SymmetryError> {
    if phi.dim() != psi.dim() {
        return Err(SymmetryError::ShapeMismatch(phi.dim(), psi.dim()));
    }
    geom.grid.check_len(s)?;
    let n = geom.len();
    let zero = geom.density[0].zero_like();
    let e = &geom.frame.e;
    let dpsi = basic_spinor_variation(geom, phi, s)?;

    let mut j_phi: [Vec<R>; 2] = [vec![zero.clone(); n], vec![zero.clone(); n]];
    let mut bulk_phi = vec![zero.clone(); n];
    let mut laplacians = Vec::with_capacity(phi.dim());
    for (phi_a, psi_a) in phi.comps.iter().zip(&psi.comps) {
        let grad = gradient(geom, phi_a)?;
        let lap = divergence(geom, &grad)?;
        for idx in 0..n {
            let v = spinor_value(&psi_a[idx], &s[idx]);
            for mu in 0..2 {
                j_phi[mu][idx] += &(v.clone() * &grad[mu][idx]).scale(2.0);
            }
            bulk_phi[idx] += &(v * &lap[idx]).scale(-2.0);
        }
        laplacians.push(lap);
    }

    let mut j_psi: [Vec<R>; 2] = [Vec::with_capacity(n), Vec::with_capacity(n)];
    let mut bulk_psi = Vec::with_capacity(n);
    for idx in 0..n {
        let p = target_slice(&psi.comps, idx);
        let mut frame = Vec::with_capacity(2);
        for k in 0..2 {
            let g: Vec<_> = dpsi
                .comps
                .iter()
                .map(|c| apply(&GAMMA[k], &c[idx]))
                .collect();
            frame.push(-pairing_e_with(target, &p, &g)?);
        }
        for (mu, out) in j_psi.iter_mut().enumerate() {
            out.push(e[0][mu][idx].clone() * &frame[0] + &(e[1][mu][idx].clone() * &frame[1]));
        }
        let s_dual = MajoranaSpinor(symplectic_dual(&s[idx]).0);
        let rhs: Vec<_> = laplacians
            .iter()
            .map(|l| s_dual.right_mul(&l[idx]))
            .collect();
        bulk_psi.push(pairing_e_with(target, &p, &rhs)?.scale(2.0));
    }

    let j_susy = [0, 1].map(|mu| {
        j_phi[mu]
            .iter()
            .zip(&j_psi[mu])
            .map(|(a, b)| (a.clone() + b).scale(0.5))
            .collect()
    });
    Ok(SusyCurrents {
        j_phi,
        j_psi,
        j_susy,
        bulk_phi,
        bulk_psi,
    })
}

/// Pointwise ε-coefficients of δ‖dφ‖² and δ(ψ, Dψ) under δφ = ψ(𝔰),
/// δψ = γ(dφ)𝔰̃, computed with dual numbers.
pub fn basic_variation_densities<R: RealLinear>(
    target: TargetPairing,
    geom: &FrameGeometry<R>,
    phi: &MapField<R>,
    psi: &TwistedSpinorField<R>,
    s: &SpinorField<R>,
) -> Result<[Vec<R>; 2], SymmetryError> {
    let dpsi = basic_spinor_variation(geom, phi, s)?;
    let dgeom = FrameGeometry::new(&geom.grid, geom.frame.map(|v| Dual::constant(v.clone())))?;
    let dphi = MapField {
        comps: phi
            .comps
            .iter()
            .zip(&psi.comps)
            .map(|(c, p)| {
                c.iter()
                    .zip(p)
                    .zip(s)
                    .map(|((v, p), s)| Dual::new(v.clone(), spinor_value(p, s)))
                    .collect()
            })
            .collect(),
    };
    let dpsi = TwistedSpinorField {
        comps: psi
            .comps
            .iter()
            .zip(&dpsi.comps)
            .map(|(c, d)| {
                c.iter()
                    .zip(d)
                    .map(|(v, d)| {
                        MajoranaSpinor([
                            Dual::new(v.0[0].clone(), d.0[0].clone()),
                            Dual::new(v.0[1].clone(), d.0[1].clone()),
                        ])
                    })
                    .collect()
            })
            .collect(),
    };
    let zero = geom.density[0].zero_like();
    let a = [
        vec![Dual::constant(zero.clone()); geom.len()],
        vec![Dual::constant(zero); geom.len()],
    ];
    let h = harmonic_density(&dgeom, &dphi)?;
    let d = dirac_density_with(target, &dgeom, &dpsi, &a)?;
    Ok([
        h.into_iter().map(|v| v.variation).collect(),
        d.into_iter().map(|v| v.variation).collect(),
    ])
}

/// Residuals of the two pointwise variation identities and the integrated
/// variation of ‖dφ‖² + (ψ, Dψ)_E.
#[derive(Debug, Clone)]
pub struct VariationIdentityReport<R> {
    /// max |δ‖dφ‖² − bulk_phi − Div J_φ|
    pub harmonic_residual: f64,
    /// max |δ(ψ,Dψ) − bulk_psi − Div J_ψ|
    pub dirac_residual: f64,
    /// ∫ (δ‖dφ‖² + δ(ψ,Dψ)) dvol
    pub total_variation: R,
    /// max over the three currents of |∫ Div J dvol|
    pub divergence_integral: f64,
    /// max |δ(‖dφ‖² + (ψ,Dψ)) − bulk − 2 Div J_susy|
    pub susy_current_residual: f64,
}

pub fn variation_identities<R: RealLinear>(
    target: TargetPairing,
    geom: &FrameGeometry<R>,
    phi: &MapField<R>,
    psi: &TwistedSpinorField<R>,
    s: &SpinorField<R>,
) -> Result<VariationIdentityReport<R>, SymmetryError> {
    let [dh, dd] = basic_variation_densities(target, geom, phi, psi, s)?;
    let c = susy_current(target, geom, phi, psi, s)?;
    let div_phi = divergence(geom, &c.j_phi)?;
    let div_psi = divergence(geom, &c.j_psi)?;
    let div_susy = divergence(geom, &c.j_susy)?;
    let max_residual =
        |it: &mut dyn Iterator<Item = R>| it.map(|v| v.max_abs()).fold(0.0, f64::max);
    let harmonic_residual =
        max_residual(&mut (0..geom.len()).map(|i| dh[i].clone() - &c.bulk_phi[i] - &div_phi[i]));
    let dirac_residual =
        max_residual(&mut (0..geom.len()).map(|i| dd[i].clone() - &c.bulk_psi[i] - &div_psi[i]));
    let susy_current_residual = max_residual(&mut (0..geom.len()).map(|i| {
        dh[i].clone() + &dd[i] - &c.bulk_phi[i] - &c.bulk_psi[i] - &div_susy[i].scale(2.0)
    }));
    let total: Vec<R> = dh.iter().zip(&dd).map(|(a, b)| a.clone() + b).collect();
    let divergence_integral = [&div_phi, &div_psi, &div_susy]
        .into_iter()
        .map(|d| integrate(geom, d).map(|v| v.max_abs()))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok(VariationIdentityReport {
        harmonic_residual,
        dirac_residual,
        total_variation: integrate(geom, &total)?,
        divergence_integral,
        susy_current_residual,
    })
}

/// Variation identities for a real spinor with values in the symplectic
/// plane and a constant real parameter 𝔰₀.
pub fn varform1_check(
    geom: &FrameGeometry<f64>,
    phi: &MapField<f64>,
    psi: &TwistedSpinorField<f64>,
    s0: MajoranaSpinor<f64>,
) -> Result<VariationIdentityReport<f64>, SymmetryError> {
    if psi.dim() != 2 {
        return Err(SymmetryError::TargetDimension(psi.dim()));
    }
    let s = vec![s0; geom.len()];
    variation_identities(TargetPairing::Symplectic, geom, phi, psi, &s)
}
