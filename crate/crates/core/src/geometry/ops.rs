use super::frame::FrameGeometry;
use super::grid::{Bundle, TorusGrid};
use super::{GeometryError, OneForm};
use crate::clifford::{apply, MajoranaSpinor, GAMMA, GAMMA12};
use crate::grassmann::{tree_sum, RealLinear};

/// ∂f/∂x^{mu+1} of a scalar grid.
pub fn partial_derivative<R: RealLinear>(
    grid: &TorusGrid,
    f: &[R],
    mu: usize,
    bundle: Bundle,
) -> Result<Vec<R>, GeometryError> {
    grid.derivative(f, mu, bundle)
}

/// Componentwise ∂_μ of a spinor grid.
pub fn partial_spinor<R: RealLinear>(
    grid: &TorusGrid,
    s: &[MajoranaSpinor<R>],
    mu: usize,
) -> Result<Vec<MajoranaSpinor<R>>, GeometryError> {
    let a: Vec<R> = s.iter().map(|v| v.0[0].clone()).collect();
    let b: Vec<R> = s.iter().map(|v| v.0[1].clone()).collect();
    let da = grid.derivative(&a, mu, Bundle::Spinor)?;
    let db = grid.derivative(&b, mu, Bundle::Spinor)?;
    Ok(da
        .into_iter()
        .zip(db)
        .map(|(x, y)| MajoranaSpinor([x, y]))
        .collect())
}

/// Both coordinate derivatives of a scalar tensor grid.
pub fn differential<R: RealLinear>(grid: &TorusGrid, f: &[R]) -> Result<OneForm<R>, GeometryError> {
    Ok([
        grid.derivative(f, 0, Bundle::Tensor)?,
        grid.derivative(f, 1, Bundle::Tensor)?,
    ])
}

/// Frame components α(e_k) = e_k^μ α_μ of a one-form at a point.
pub fn frame_components<R: RealLinear>(
    geom: &FrameGeometry<R>,
    alpha: [&R; 2],
    idx: usize,
) -> [R; 2] {
    let e = &geom.frame.e;
    [0, 1].map(|k| e[k][0][idx].clone() * alpha[0] + &(e[k][1][idx].clone() * alpha[1]))
}

/// ∇^A_μ s = ∂_μ s + ½(Γ_μ + A_μ)γ¹γ² s in coordinate components.
pub fn spin_cov_deriv<R: RealLinear>(
    geom: &FrameGeometry<R>,
    s: &[MajoranaSpinor<R>],
    a: &OneForm<R>,
) -> Result<[Vec<MajoranaSpinor<R>>; 2], GeometryError> {
    let grid = &geom.grid;
    grid.check_len(s)?;
    grid.check_len(&a[0])?;
    grid.check_len(&a[1])?;
    let mut out: [Vec<MajoranaSpinor<R>>; 2] = Default::default();
    for mu in 0..2 {
        let ds = partial_spinor(grid, s, mu)?;
        out[mu] = ds
            .into_iter()
            .enumerate()
            .map(|(idx, d)| {
                let c = (geom.connection[mu][idx].clone() + &a[mu][idx]).scale(0.5);
                d + apply(&GAMMA12, &s[idx]).left_mul(&c)
            })
            .collect();
    }
    Ok(out)
}

/// Dirac operator γ^k ∇^A_{e_k} on one target component of a twisted spinor.
pub fn dirac_apply<R: RealLinear>(
    geom: &FrameGeometry<R>,
    psi: &[MajoranaSpinor<R>],
    a: &OneForm<R>,
) -> Result<Vec<MajoranaSpinor<R>>, GeometryError> {
    let nabla = spin_cov_deriv(geom, psi, a)?;
    let e = &geom.frame.e;
    Ok((0..geom.len())
        .map(|idx| {
            let along = |k: usize| {
                nabla[0][idx].left_mul(&e[k][0][idx]) + nabla[1][idx].left_mul(&e[k][1][idx])
            };
            apply(&GAMMA[0], &along(0)) + apply(&GAMMA[1], &along(1))
        })
        .collect())
}

/// F₁₂ = ∂₁A₂ − ∂₂A₁.
pub fn curvature_of_torsion<R: RealLinear>(
    grid: &TorusGrid,
    a: &OneForm<R>,
) -> Result<Vec<R>, GeometryError> {
    let d1 = grid.derivative(&a[1], 0, Bundle::Tensor)?;
    let d2 = grid.derivative(&a[0], 1, Bundle::Tensor)?;
    Ok(d1.into_iter().zip(d2).map(|(x, y)| x - y).collect())
}

/// ∫ f dvol with a fixed-order tree reduction.
pub fn integrate<R: RealLinear>(geom: &FrameGeometry<R>, f: &[R]) -> Result<R, GeometryError> {
    geom.grid.check_len(f)?;
    let terms: Vec<R> = f
        .iter()
        .zip(&geom.density)
        .map(|(v, rho)| v.clone() * rho)
        .collect();
    Ok(tree_sum(&terms)
        .expect("grid is never empty")
        .scale(geom.grid.cell_area()))
}

/// Div J = ρ⁻¹ ∂_μ(ρ J^μ) for a vector field with coordinate components.
pub fn divergence<R: RealLinear>(
    geom: &FrameGeometry<R>,
    j: &[Vec<R>; 2],
) -> Result<Vec<R>, GeometryError> {
    let grid = &geom.grid;
    let mut acc: Option<Vec<R>> = None;
    for (mu, comp) in j.iter().enumerate() {
        grid.check_len(comp)?;
        let weighted: Vec<R> = comp
            .iter()
            .zip(&geom.density)
            .map(|(v, r)| r.clone() * v)
            .collect();
        let d = grid.derivative(&weighted, mu, Bundle::Tensor)?;
        acc = Some(match acc {
            None => d,
            Some(prev) => prev.into_iter().zip(d).map(|(x, y)| x + y).collect(),
        });
    }
    Ok(acc
        .expect("two components")
        .into_iter()
        .zip(&geom.inverse_density)
        .map(|(v, inv)| inv.clone() * &v)
        .collect())
}

/// grad φ with coordinate components g^{μν}∂_νφ.
pub fn gradient<R: RealLinear>(
    geom: &FrameGeometry<R>,
    phi: &[R],
) -> Result<[Vec<R>; 2], GeometryError> {
    let d = differential(&geom.grid, phi)?;
    let mut out: [Vec<R>; 2] = Default::default();
    for idx in 0..geom.len() {
        let ginv = geom.inverse_metric(idx);
        for mu in 0..2 {
            out[mu].push(ginv[mu][0].clone() * &d[0][idx] + &(ginv[mu][1].clone() * &d[1][idx]));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::geometry::{DerivativeMode, FrameField};

    #[test]
    fn constant_spinor_has_no_covariant_derivative_on_flat_frame() {
        let grid = TorusGrid::unit(8, DerivativeMode::Spectral).unwrap();
        let geom = FrameGeometry::flat(&grid, &0.0).unwrap();
        let s = vec![MajoranaSpinor([0.3, -1.2]); grid.len()];
        let zero = [vec![0.0; grid.len()], vec![0.0; grid.len()]];
        let d = spin_cov_deriv(&geom, &s, &zero).unwrap();
        assert!(d.iter().flatten().all(|v| v.max_abs() < 1e-14));
        let a = [vec![0.8; grid.len()], vec![0.0; grid.len()]];
        let d = spin_cov_deriv(&geom, &s, &a).unwrap();
        let expect = apply(&GAMMA12, &s[0]).scale(0.4);
        assert!(d[0]
            .iter()
            .all(|v| (v.clone() - expect.clone()).max_abs() < 1e-14));
        assert!(d[1].iter().all(|v| v.max_abs() < 1e-14));
    }

    #[test]
    fn dirac_of_a_sine_mode() {
        let grid = TorusGrid::new([16, 8], [2.0, 1.0], DerivativeMode::Spectral).unwrap();
        let geom = FrameGeometry::flat(&grid, &0.0).unwrap();
        let s = MajoranaSpinor([0.7, 0.2]);
        let k = 2.0 * PI / 2.0;
        let psi: Vec<_> = grid.sample(|[x, _]| s.scale((k * x).sin()));
        let zero = [vec![0.0; grid.len()], vec![0.0; grid.len()]];
        let d = dirac_apply(&geom, &psi, &zero).unwrap();
        for (idx, v) in d.iter().enumerate() {
            let x = grid.point(idx)[0];
            let e = apply(&GAMMA[0], &s).scale(k * (k * x).cos());
            assert!((v.clone() - e).max_abs() < 1e-12);
        }
    }

    #[test]
    fn dirac_squared_is_the_laplacian() {
        let grid = TorusGrid::unit(16, DerivativeMode::Spectral).unwrap();
        let geom = FrameGeometry::flat(&grid, &0.0).unwrap();
        let tau = 2.0 * PI;
        let psi: Vec<_> = grid.sample(|[x, y]| {
            MajoranaSpinor([
                (tau * x).sin() * (2.0 * tau * y).cos(),
                (tau * (x + y)).cos(),
            ])
        });
        let zero = [vec![0.0; grid.len()], vec![0.0; grid.len()]];
        let dd = dirac_apply(&geom, &dirac_apply(&geom, &psi, &zero).unwrap(), &zero).unwrap();
        for (idx, v) in dd.iter().enumerate() {
            let [x, y] = grid.point(idx);
            let expect = MajoranaSpinor([
                -5.0 * tau * tau * (tau * x).sin() * (2.0 * tau * y).cos(),
                -2.0 * tau * tau * (tau * (x + y)).cos(),
            ]);
            assert!((v.clone() - expect).max_abs() < 1e-10 * 5.0 * tau * tau);
        }
    }

    #[test]
    fn conformal_frame_volume_and_connection() {
        let grid = TorusGrid::unit(32, DerivativeMode::Spectral).unwrap();
        let tau = 2.0 * PI;
        let u = grid.sample(|[x, y]| 0.1 * (tau * x).sin() + 0.05 * (tau * y).cos());
        let geom = FrameGeometry::new(&grid, FrameField::conformal(&grid, &u, &0.0)).unwrap();
        for idx in 0..grid.len() {
            let [x, y] = grid.point(idx);
            assert!((geom.density[idx] - (2.0 * u[idx]).exp()).abs() < 1e-13);
            let du1 = 0.1 * tau * (tau * x).cos();
            let du2 = -0.05 * tau * (tau * y).sin();
            assert!((geom.connection[0][idx] - du2).abs() < 1e-10);
            assert!((geom.connection[1][idx] + du1).abs() < 1e-10);
        }
    }

    #[test]
    fn divergence_integrates_to_zero_in_every_mode() {
        for mode in [
            DerivativeMode::Spectral,
            DerivativeMode::Fd2,
            DerivativeMode::Fd4,
        ] {
            let grid = TorusGrid::unit(32, mode).unwrap();
            let tau = 2.0 * PI;
            let u = grid.sample(|[x, y]| 0.2 * (tau * (x - y)).sin());
            let geom = FrameGeometry::new(&grid, FrameField::conformal(&grid, &u, &0.0)).unwrap();
            let j = [
                grid.sample(|[x, y]| (tau * x).cos() + (tau * y).sin() * 0.3),
                grid.sample(|[x, y]| (2.0 * tau * x + tau * y).sin()),
            ];
            let div = divergence(&geom, &j).unwrap();
            assert!(integrate(&geom, &div).unwrap().abs() < 1e-13, "{mode:?}");
        }
    }

    #[test]
    fn curvature_of_closed_forms_vanishes() {
        let grid = TorusGrid::unit(16, DerivativeMode::Spectral).unwrap();
        let tau = 2.0 * PI;
        let u = grid.sample(|[x, y]| (tau * x).sin() * (tau * y).cos());
        let a = differential(&grid, &u).unwrap();
        let f = curvature_of_torsion(&grid, &a).unwrap();
        assert!(f.iter().all(|v| v.abs() < 1e-10));
        let a = [grid.sample(|[_, y]| (tau * y).sin()), vec![0.0; grid.len()]];
        let f = curvature_of_torsion(&grid, &a).unwrap();
        for (idx, v) in f.iter().enumerate() {
            let y = grid.point(idx)[1];
            assert!((v + tau * (tau * y).cos()).abs() < 1e-12);
        }
    }
}
