use super::{config_digest, SuperFields, SusyVariationReport, SymmetryError};
use crate::clifford::{apply, omega, symplectic_dual, MajoranaSpinor, GAMMA, GAMMA12};
use crate::fields::{
    torsion_from_gravitino, GravitinoField, MapField, SpinorField, TwistedSpinorField,
};
use crate::functionals::super_action;
use crate::geometry::{frame_components, partial_spinor, FrameField, FrameGeometry, OneForm};
use crate::grassmann::{Dual, GrassmannElement, RealLinear, Ring};

/// Weights of the individual pieces of the supersymmetry variation
///
/// δφ = m·ψ(𝔰)
/// δψ = γ(e_jφ)𝔰̃·g − γ(ev(ψ,χ)(e_j))𝔰̃·v
/// δe_k = f·Σ_j ω(γ^j𝔰, χ(e_k)) e_j
/// δχ = c·(∂𝔰 + ½Γ γ¹γ²𝔰) + t·½Ã γ¹γ²𝔰 with Ã = −2⋆A (see [`spinor_torsion`])
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SusyCoefficients {
    pub map: f64,
    pub spinor_gradient: f64,
    pub spinor_ev: f64,
    pub frame: f64,
    pub gravitino: f64,
    pub torsion: f64,
}

impl SusyCoefficients {
    /// Pinned weights under which the full action is stationary.
    pub const FULL: Self = Self {
        map: 1.0,
        spinor_gradient: 1.0,
        spinor_ev: 1.0,
        frame: -2.0,
        gravitino: 1.0,
        torsion: 1.0,
    };

    /// Only δφ and the gradient part of δψ.
    pub const BASIC: Self = Self {
        map: 1.0,
        spinor_gradient: 1.0,
        spinor_ev: 0.0,
        frame: 0.0,
        gravitino: 0.0,
        torsion: 0.0,
    };

    pub const ZERO: Self = Self {
        map: 0.0,
        spinor_gradient: 0.0,
        spinor_ev: 0.0,
        frame: 0.0,
        gravitino: 0.0,
        torsion: 0.0,
    };

    /// Each piece alone with unit weight, in declaration order.
    pub fn pieces() -> [(&'static str, Self); 6] {
        let z = Self::ZERO;
        [
            ("map", Self { map: 1.0, ..z }),
            (
                "spinor_gradient",
                Self {
                    spinor_gradient: 1.0,
                    ..z
                },
            ),
            (
                "spinor_ev",
                Self {
                    spinor_ev: 1.0,
                    ..z
                },
            ),
            ("frame", Self { frame: 1.0, ..z }),
            (
                "gravitino",
                Self {
                    gravitino: 1.0,
                    ..z
                },
            ),
            ("torsion", Self { torsion: 1.0, ..z }),
        ]
    }
}

/// How the torsion form responds to the variation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorsionMode {
    /// A is held fixed.
    Independent,
    /// A = torsion_from_gravitino(χ), varied through the chain rule.
    Slaved,
}

/// Fields and frame after a supersymmetry variation, as value + ε·variation.
#[derive(Debug, Clone)]
pub struct VariedFields {
    pub geometry: FrameGeometry<Dual<GrassmannElement>>,
    pub fields: SuperFields<Dual<GrassmannElement>>,
}

fn lift(value: &GrassmannElement, variation: GrassmannElement) -> Dual<GrassmannElement> {
    Dual::new(value.clone(), variation)
}

fn lift_spinor(
    v: &MajoranaSpinor<GrassmannElement>,
    d: MajoranaSpinor<GrassmannElement>,
) -> MajoranaSpinor<Dual<GrassmannElement>> {
    let [d0, d1] = d.0;
    MajoranaSpinor([lift(&v.0[0], d0), lift(&v.0[1], d1)])
}

/// Frame components e_j(f) = e_j^μ ∂_μ f.
fn frame_derivative<R: RealLinear>(
    geom: &FrameGeometry<R>,
    f: &[R],
) -> Result<[Vec<R>; 2], SymmetryError> {
    let d = crate::geometry::differential(&geom.grid, f)?;
    let e = &geom.frame.e;
    Ok([0, 1].map(|j| {
        (0..geom.len())
            .map(|idx| e[j][0][idx].clone() * &d[0][idx] + &(e[j][1][idx].clone() * &d[1][idx]))
            .collect()
    }))
}

/// Ã = −2⋆A, the rotation rate by which the torsion A turns spinors in the
/// gravitino variation; ⋆ê¹ = ê², ⋆ê² = −ê¹.
pub fn spinor_torsion<R: RealLinear>(geom: &FrameGeometry<R>, a: &OneForm<R>) -> OneForm<R> {
    let h = &geom.coframe;
    [0, 1].map(|mu| {
        (0..geom.len())
            .map(|idx| {
                let [a1, a2] = frame_components(geom, [&a[0][idx], &a[1][idx]], idx);
                (h[0][mu][idx].clone() * &a2 - &(h[1][mu][idx].clone() * &a1)).scale(2.0)
            })
            .collect()
    })
}

/// Apply the supersymmetry variation with parameter 𝔰 to (φ, ψ, e, χ, A).
pub fn susy_varied_fields(
    geom: &FrameGeometry<GrassmannElement>,
    fields: &SuperFields<GrassmannElement>,
    s: &SpinorField<GrassmannElement>,
    coeffs: SusyCoefficients,
    torsion: TorsionMode,
) -> Result<VariedFields, SymmetryError> {
    fields.check(geom)?;
    geom.grid.check_len(s)?;
    for v in s {
        if v.0.iter().any(|c| c.parity_max()[0] > 0.0) {
            return Err(SymmetryError::ParityMismatch(
                "variation spinor must be odd",
            ));
        }
    }
    let n = geom.len();
    let zero = geom.density[0].zero_like();
    let e = &geom.frame.e;
    let chi_frame = fields.chi.frame_forms(geom);
    let s_dual: Vec<MajoranaSpinor<GrassmannElement>> = s
        .iter()
        .map(|v| MajoranaSpinor(symplectic_dual(v).0))
        .collect();

    let mut phi_comps = Vec::with_capacity(fields.phi.dim());
    let mut psi_comps = Vec::with_capacity(fields.psi.dim());
    for (phi_a, psi_a) in fields.phi.comps.iter().zip(&fields.psi.comps) {
        let dphi = frame_derivative(geom, phi_a)?;
        phi_comps.push(
            (0..n)
                .map(|idx| {
                    let p = &psi_a[idx];
                    let d = p.0[0].clone() * &s[idx].0[0] + &(p.0[1].clone() * &s[idx].0[1]);
                    lift(&phi_a[idx], d.scale(coeffs.map))
                })
                .collect(),
        );
        psi_comps.push(
            (0..n)
                .map(|idx| {
                    let p = &psi_a[idx];
                    let mut d = MajoranaSpinor::zero_like(&zero);
                    for j in 0..2 {
                        let chi_j = chi_frame[idx].slot(j);
                        let ev = p.0[0].clone() * &chi_j.0[0] + &(p.0[1].clone() * &chi_j.0[1]);
                        let coef = dphi[j][idx].scale(coeffs.spinor_gradient)
                            - &ev.scale(coeffs.spinor_ev);
                        d = d + apply(&GAMMA[j], &s_dual[idx]).right_mul(&coef);
                    }
                    lift_spinor(p, d)
                })
                .collect(),
        );
    }

    let frame_points = (0..n)
        .map(|idx| {
            [0, 1].map(|k| {
                let chi_k = chi_frame[idx].slot(k);
                let w =
                    [0, 1].map(|j| omega(&apply(&GAMMA[j], &s[idx]), &chi_k).scale(coeffs.frame));
                [0, 1].map(|m| {
                    let d = w[0].clone() * &e[0][m][idx] + &(w[1].clone() * &e[1][m][idx]);
                    lift(&e[k][m][idx], d)
                })
            })
        })
        .collect();
    let frame = FrameField::from_points(frame_points);

    let gamma = &geom.connection;
    let a = &match torsion {
        TorsionMode::Independent => fields.a.clone(),
        TorsionMode::Slaved => torsion_from_gravitino(geom, &fields.chi),
    };
    let a = &spinor_torsion(geom, a);
    let chi_coord = [0, 1].map(|mu| -> Result<Vec<_>, SymmetryError> {
        let ds = partial_spinor(&geom.grid, s, mu)?;
        Ok((0..n)
            .map(|idx| {
                let js = apply(&GAMMA12, &s[idx]);
                let d = (ds[idx].clone() + js.left_mul(&gamma[mu][idx]).scale(0.5))
                    .scale(coeffs.gravitino)
                    + js.left_mul(&a[mu][idx]).scale(0.5 * coeffs.torsion);
                lift_spinor(&fields.chi.coord[mu][idx], d)
            })
            .collect())
    });
    let [c0, c1] = chi_coord;
    let chi = GravitinoField { coord: [c0?, c1?] };

    let geometry = FrameGeometry::new(&geom.grid, frame)?;
    let a_dual: OneForm<Dual<GrassmannElement>> = match torsion {
        TorsionMode::Independent => a
            .clone()
            .map(|c| c.into_iter().map(Dual::constant).collect()),
        TorsionMode::Slaved => torsion_from_gravitino(&geometry, &chi),
    };
    Ok(VariedFields {
        geometry,
        fields: SuperFields {
            phi: MapField { comps: phi_comps },
            psi: TwistedSpinorField { comps: psi_comps },
            chi,
            a: a_dual,
        },
    })
}

/// ε-coefficient of the super action, term by term.
pub fn first_variation(varied: &VariedFields) -> Result<SusyVariationReport, SymmetryError> {
    let f = &varied.fields;
    let b = super_action(&varied.geometry, &f.phi, &f.psi, &f.chi, &f.a)?;
    let digest = config_digest(&varied.geometry, f, &[]);
    Ok(SusyVariationReport::new(
        b.map(|d| d.variation.clone()),
        digest,
    ))
}
