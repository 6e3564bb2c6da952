use num_complex::Complex64;

use super::{FieldError, GravitinoField, SpinorField};
use crate::clifford::{
    decompose_form, metric, omega, project_q, quantize, theta_insert, MajoranaSpinor, SpinorForm,
};
use crate::geometry::{frame_components, integrate, spin_cov_deriv, FrameGeometry, OneForm};
use crate::grassmann::RealLinear;

/// Output of [`factorize_torsion`].
#[derive(Debug, Clone)]
pub struct Factorization {
    pub chi: GravitinoField<f64>,
    /// The spin-1/2 generator 𝔰 at every point.
    pub spinor: SpinorField<f64>,
    /// The spin-3/2 part 𝔤 at every point, as frame-slot forms.
    pub spin_three_halves: Vec<SpinorForm<f64>>,
    /// Grid points where √a jumps across the negative real axis.
    pub branch_cut: Vec<usize>,
}

/// Pointwise factorization for a one-form with frame components `a_frame`.
///
/// With a = a₁ − i·a₂ and √a on the principal branch, 𝔰 = Re√a·𝔰₁ − Im√a·𝔰₂,
/// 𝔤 has coefficients Re and Im of ā/√a, and χ = √(2/3)(δ_Θ𝔰 + 𝔤) in frame
/// slots. Then ⟨δ_γχ, χ(e_j)⟩ = a_j.
pub fn factorize_torsion_at(
    a_frame: [f64; 2],
) -> (MajoranaSpinor<f64>, SpinorForm<f64>, SpinorForm<f64>) {
    let a = Complex64::new(a_frame[0], -a_frame[1]);
    if a.norm() == 0.0 {
        let z = SpinorForm([[0.0; 2]; 2]);
        return (MajoranaSpinor([0.0, 0.0]), z.clone(), z);
    }
    let root = a.sqrt();
    let s = MajoranaSpinor([root.re, -root.im]);
    let c = a.conj() / root;
    // 𝔤(e₁) = Re c·𝔰₁ + Im c·𝔰₂, 𝔤(e₂) = Im c·𝔰₁ − Re c·𝔰₂
    let g = SpinorForm([[c.re, c.im], [c.im, -c.re]]);
    let chi = (theta_insert(&s) + g.clone()).scale((2.0f64 / 3.0).sqrt());
    (s, g, chi)
}

/// Factor a real torsion one-form (coordinate components) through a
/// commuting gravitino.
pub fn factorize_torsion(
    geom: &FrameGeometry<f64>,
    a: &OneForm<f64>,
) -> Result<Factorization, FieldError> {
    geom.grid.check_len(&a[0])?;
    geom.grid.check_len(&a[1])?;
    let n = geom.len();
    let mut spinor = Vec::with_capacity(n);
    let mut g_part = Vec::with_capacity(n);
    let mut forms = Vec::with_capacity(n);
    let mut a_complex = Vec::with_capacity(n);
    for idx in 0..n {
        let af = frame_components(geom, [&a[0][idx], &a[1][idx]], idx);
        a_complex.push(Complex64::new(af[0], -af[1]));
        let (s, g, chi) = factorize_torsion_at(af);
        spinor.push(s);
        g_part.push(g);
        forms.push(chi);
    }
    let [n1, n2] = geom.grid.sizes();
    let crosses = |p: Complex64, q: Complex64| p.re < 0.0 && q.re < 0.0 && p.im * q.im < 0.0;
    let mut branch_cut = Vec::new();
    for i in 0..n1 {
        for j in 0..n2 {
            let idx = geom.grid.index(i, j);
            let right = geom.grid.index((i + 1) % n1, j);
            let up = geom.grid.index(i, (j + 1) % n2);
            if crosses(a_complex[idx], a_complex[right]) || crosses(a_complex[idx], a_complex[up]) {
                branch_cut.push(idx);
            }
        }
    }
    Ok(Factorization {
        chi: GravitinoField::from_frame_forms(geom, &forms),
        spinor,
        spin_three_halves: g_part,
        branch_cut,
    })
}

/// A_μ = ⟨δ_γχ, χ_μ⟩ with the spinor metric (commuting gravitino).
pub fn pairing_recovery(geom: &FrameGeometry<f64>, chi: &GravitinoField<f64>) -> OneForm<f64> {
    let mut out: OneForm<f64> = Default::default();
    for idx in 0..geom.len() {
        let q = quantize(&chi.frame_form(geom, idx));
        for (mu, comp) in out.iter_mut().enumerate() {
            comp.push(metric(&q, &chi.coord[mu][idx]));
        }
    }
    out
}

/// A_μ = ω(δ_γχ, χ_μ), the torsion induced by an odd gravitino.
pub fn torsion_from_gravitino<R: RealLinear>(
    geom: &FrameGeometry<R>,
    chi: &GravitinoField<R>,
) -> OneForm<R> {
    let mut out: OneForm<R> = Default::default();
    for idx in 0..geom.len() {
        let q = quantize(&chi.frame_form(geom, idx));
        for (mu, comp) in out.iter_mut().enumerate() {
            comp.push(omega(&q, &chi.coord[mu][idx]));
        }
    }
    out
}

/// Pointwise split χ = δ_Θ𝔰 + 𝔤 of the frame-slot form.
pub fn gravitino_split<R: RealLinear>(
    geom: &FrameGeometry<R>,
    chi: &GravitinoField<R>,
) -> (SpinorField<R>, Vec<SpinorForm<R>>) {
    (0..geom.len())
        .map(|idx| decompose_form(&chi.frame_form(geom, idx)))
        .unzip()
}

/// Spin-3/2 part 𝔮(χ) in frame slots.
pub fn q_part<R: RealLinear>(
    geom: &FrameGeometry<R>,
    chi: &GravitinoField<R>,
) -> Vec<SpinorForm<R>> {
    (0..geom.len())
        .map(|idx| project_q(&chi.frame_form(geom, idx)))
        .collect()
}

/// L² norm of 𝔮(∇^A s); vanishes exactly for holomorphic spinors.
pub fn holomorphy_residual(
    geom: &FrameGeometry<f64>,
    s: &SpinorField<f64>,
    a: &OneForm<f64>,
) -> Result<f64, FieldError> {
    let nabla = spin_cov_deriv(geom, s, a)?;
    let e = &geom.frame.e;
    let density: Vec<f64> = (0..geom.len())
        .map(|idx| {
            let slot =
                |k: usize| nabla[0][idx].scale(e[k][0][idx]) + nabla[1][idx].scale(e[k][1][idx]);
            let q = project_q(&SpinorForm::from_slots([slot(0), slot(1)]));
            q.0.iter().flatten().map(|c| c * c).sum()
        })
        .collect();
    Ok(integrate(geom, &density)?.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{DerivativeMode, FrameField, TorusGrid};
    use std::f64::consts::PI;

    fn recovery_residual(a_frame: [f64; 2]) -> f64 {
        let (_, _, chi) = factorize_torsion_at(a_frame);
        let q = quantize(&chi);
        (0..2)
            .map(|j| (metric(&q, &chi.slot(j)) - a_frame[j]).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn zero_torsion_gives_zero_gravitino() {
        let (s, g, chi) = factorize_torsion_at([0.0, 0.0]);
        assert_eq!(s.max_abs() + g.max_abs() + chi.max_abs(), 0.0);
    }

    #[test]
    fn unit_dx1_uses_the_first_frame_spinor() {
        let (s, g, _) = factorize_torsion_at([1.0, 0.0]);
        assert_eq!(s, MajoranaSpinor([1.0, 0.0]));
        assert!(recovery_residual([1.0, 0.0]) < 1e-14);
        // ⟨𝔰, 𝔤(e_j)⟩ = a_j
        assert!((metric(&s, &g.slot(0)) - 1.0).abs() < 1e-15);
        assert!(metric(&s, &g.slot(1)).abs() < 1e-15);
    }

    #[test]
    fn spin_three_halves_part_is_traceless() {
        for a in [[0.3, 1.2], [-0.7, 0.4], [2.0, -1.0]] {
            let (_, g, _) = factorize_torsion_at(a);
            assert!(quantize(&g).max_abs() < 1e-14);
            assert!(recovery_residual(a) < 1e-14);
        }
    }

    #[test]
    fn recovery_on_a_grid() {
        let grid = TorusGrid::unit(16, DerivativeMode::Spectral).unwrap();
        let geom = FrameGeometry::flat(&grid, &0.0).unwrap();
        let a = [
            grid.sample(|[x, _]| (2.0 * PI * x + 1.2).sin() + 1.5),
            vec![0.0; grid.len()],
        ];
        let f = factorize_torsion(&geom, &a).unwrap();
        assert!(f.branch_cut.is_empty());
        let back = pairing_recovery(&geom, &f.chi);
        for mu in 0..2 {
            for (x, y) in back[mu].iter().zip(&a[mu]) {
                assert!((x - y).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn recovery_with_a_conformal_frame() {
        let grid = TorusGrid::unit(16, DerivativeMode::Spectral).unwrap();
        let u = grid.sample(|[x, y]| 0.3 * (2.0 * PI * (x + y)).cos());
        let geom = FrameGeometry::new(&grid, FrameField::conformal(&grid, &u, &0.0)).unwrap();
        let a = [
            grid.sample(|[x, _]| 0.5 + x),
            grid.sample(|[_, y]| 0.2 * y - 0.4),
        ];
        let f = factorize_torsion(&geom, &a).unwrap();
        let back = pairing_recovery(&geom, &f.chi);
        for mu in 0..2 {
            for (x, y) in back[mu].iter().zip(&a[mu]) {
                assert!((x - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn winding_torsion_reports_the_branch_cut() {
        let grid = TorusGrid::unit(16, DerivativeMode::Spectral).unwrap();
        let geom = FrameGeometry::flat(&grid, &0.0).unwrap();
        let a = [
            grid.sample(|[x, _]| (2.0 * PI * x).cos()),
            grid.sample(|[x, _]| -(2.0 * PI * x).sin()),
        ];
        assert!(!factorize_torsion(&geom, &a).unwrap().branch_cut.is_empty());
    }
}
