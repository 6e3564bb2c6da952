use super::grid::{Bundle, TorusGrid};
use super::{GeometryError, OneForm};
use crate::grassmann::RealLinear;

/// Zweibein components `e[k][μ] = e_k^μ` on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameField<R> {
    pub e: [[Vec<R>; 2]; 2],
}

impl<R: RealLinear> FrameField<R> {
    /// e_k = ∂_k everywhere.
    pub fn flat(grid: &TorusGrid, template: &R) -> Self {
        Self::conformal(grid, &vec![0.0; grid.len()], template)
    }

    /// e_k = e^{−u} ∂_k.
    pub fn conformal(grid: &TorusGrid, u: &[f64], template: &R) -> Self {
        let diag: Vec<R> = u.iter().map(|u| template.real_like((-u).exp())).collect();
        let zero = vec![template.zero_like(); grid.len()];
        Self {
            e: [[diag.clone(), zero.clone()], [zero, diag]],
        }
    }

    pub fn at(&self, idx: usize) -> [[R; 2]; 2] {
        [0, 1].map(|k| [0, 1].map(|m| self.e[k][m][idx].clone()))
    }

    pub fn from_points(points: Vec<[[R; 2]; 2]>) -> Self {
        let pick = |k: usize, m: usize| points.iter().map(|p| p[k][m].clone()).collect::<Vec<_>>();
        Self {
            e: [[pick(0, 0), pick(0, 1)], [pick(1, 0), pick(1, 1)]],
        }
    }

    pub fn map<S>(&self, f: impl Fn(&R) -> S) -> FrameField<S> {
        FrameField {
            e: [0, 1].map(|k| [0, 1].map(|m| self.e[k][m].iter().map(&f).collect())),
        }
    }

    pub fn len(&self) -> usize {
        self.e[0][0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Pointwise coframe ê^k_μ, metric g_{μν} and volume density det ê.
#[derive(Debug, Clone)]
pub struct CoframeData<R> {
    pub coframe: [[Vec<R>; 2]; 2],
    pub metric: [[Vec<R>; 2]; 2],
    pub density: Vec<R>,
}

pub fn coframe_metric_volume<R: RealLinear>(
    grid: &TorusGrid,
    frame: &FrameField<R>,
) -> Result<CoframeData<R>, GeometryError> {
    for k in 0..2 {
        for m in 0..2 {
            grid.check_len(&frame.e[k][m])?;
        }
    }
    let n = grid.len();
    let mut coframe: [[Vec<R>; 2]; 2] = Default::default();
    let mut metric: [[Vec<R>; 2]; 2] = Default::default();
    let mut density = Vec::with_capacity(n);
    for idx in 0..n {
        let [[a, b], [c, d]] = frame.at(idx);
        let det = a.clone() * &d - &(b.clone() * &c);
        if det.body() <= 0.0 {
            return Err(GeometryError::NonOrientedFrame { index: idx });
        }
        let inv = det
            .inverse()
            .ok_or(GeometryError::NonOrientedFrame { index: idx })?;
        // ê = (eᵀ)⁻¹
        let hat = [[d * &inv, -(c * &inv)], [-(b * &inv), a * &inv]];
        for mu in 0..2 {
            for nu in 0..2 {
                let g = hat[0][mu].clone() * &hat[0][nu] + &(hat[1][mu].clone() * &hat[1][nu]);
                metric[mu][nu].push(g);
            }
        }
        for (k, row) in hat.into_iter().enumerate() {
            for (mu, v) in row.into_iter().enumerate() {
                coframe[k][mu].push(v);
            }
        }
        density.push(inv);
    }
    Ok(CoframeData {
        coframe,
        metric,
        density,
    })
}

/// Levi-Civita connection form Γ_μ from dê¹ = −Γ∧ê², dê² = Γ∧ê¹.
pub fn levi_civita_form<R: RealLinear>(
    grid: &TorusGrid,
    frame: &FrameField<R>,
) -> Result<OneForm<R>, GeometryError> {
    let data = coframe_metric_volume(grid, frame)?;
    solve_cartan(grid, &data.coframe)
}

/// Exterior derivative (dê^k)₁₂ = ∂₁ê^k₂ − ∂₂ê^k₁ of each coframe one-form.
pub fn coframe_torsion<R: RealLinear>(
    grid: &TorusGrid,
    coframe: &[[Vec<R>; 2]; 2],
) -> Result<[Vec<R>; 2], GeometryError> {
    let mut out: [Vec<R>; 2] = Default::default();
    for k in 0..2 {
        let d1 = grid.derivative(&coframe[k][1], 0, Bundle::Tensor)?;
        let d2 = grid.derivative(&coframe[k][0], 1, Bundle::Tensor)?;
        out[k] = d1.into_iter().zip(d2).map(|(a, b)| a - b).collect();
    }
    Ok(out)
}

fn solve_cartan<R: RealLinear>(
    grid: &TorusGrid,
    coframe: &[[Vec<R>; 2]; 2],
) -> Result<OneForm<R>, GeometryError> {
    let t = coframe_torsion(grid, coframe)?;
    let mut g1 = Vec::with_capacity(grid.len());
    let mut g2 = Vec::with_capacity(grid.len());
    for idx in 0..grid.len() {
        let h = |k: usize, m: usize| coframe[k][m][idx].clone();
        // Rows: T¹ = −Γ₁ê²₂ + Γ₂ê²₁ and T² = Γ₁ê¹₂ − Γ₂ê¹₁.
        let m00 = -h(1, 1);
        let m01 = h(1, 0);
        let m10 = h(0, 1);
        let m11 = -h(0, 0);
        let det = m00.clone() * &m11 - &(m01.clone() * &m10);
        if det.body().abs() < 1e-300 {
            return Err(GeometryError::SingularSolve { index: idx });
        }
        let inv = det
            .inverse()
            .ok_or(GeometryError::SingularSolve { index: idx })?;
        let (t1, t2) = (&t[0][idx], &t[1][idx]);
        g1.push((t1.clone() * &m11 - &(m01 * t2)) * &inv);
        g2.push((m00 * t2 - &(m10 * t1)) * &inv);
    }
    Ok([g1, g2])
}

/// Residuals of both Cartan equations for a given Γ, maximal coefficient.
pub fn cartan_residual<R: RealLinear>(
    grid: &TorusGrid,
    frame: &FrameField<R>,
    gamma: &OneForm<R>,
) -> Result<f64, GeometryError> {
    let data = coframe_metric_volume(grid, frame)?;
    let h = &data.coframe;
    let t = coframe_torsion(grid, h)?;
    let mut worst = 0.0f64;
    for idx in 0..grid.len() {
        let wedge = |k: usize| {
            gamma[0][idx].clone() * &h[k][1][idx] - &(gamma[1][idx].clone() * &h[k][0][idx])
        };
        let r1 = t[0][idx].clone() + &wedge(1);
        let r2 = t[1][idx].clone() - &wedge(0);
        worst = worst.max(r1.max_abs()).max(r2.max_abs());
    }
    Ok(worst)
}

/// Derived geometry of a frame: everything downstream operators need.
#[derive(Debug, Clone)]
pub struct FrameGeometry<R> {
    pub grid: TorusGrid,
    pub frame: FrameField<R>,
    pub coframe: [[Vec<R>; 2]; 2],
    pub metric: [[Vec<R>; 2]; 2],
    pub density: Vec<R>,
    pub inverse_density: Vec<R>,
    pub connection: OneForm<R>,
}

impl<R: RealLinear> FrameGeometry<R> {
    pub fn new(grid: &TorusGrid, frame: FrameField<R>) -> Result<Self, GeometryError> {
        let data = coframe_metric_volume(grid, &frame)?;
        let connection = solve_cartan(grid, &data.coframe)?;
        let inverse_density = (0..grid.len())
            .map(|idx| {
                let [[a, b], [c, d]] = frame.at(idx);
                a * &d - &(b * &c)
            })
            .collect();
        Ok(Self {
            grid: grid.clone(),
            frame,
            coframe: data.coframe,
            metric: data.metric,
            density: data.density,
            inverse_density,
            connection,
        })
    }

    pub fn flat(grid: &TorusGrid, template: &R) -> Result<Self, GeometryError> {
        Self::new(grid, FrameField::flat(grid, template))
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// Inverse metric g^{μν} = Σ_k e_k^μ e_k^ν at a point.
    pub fn inverse_metric(&self, idx: usize) -> [[R; 2]; 2] {
        let e = &self.frame.e;
        [0, 1].map(|m| {
            [0, 1].map(|n| {
                e[0][m][idx].clone() * &e[0][n][idx] + &(e[1][m][idx].clone() * &e[1][n][idx])
            })
        })
    }
}
