use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use super::GeometryError;
use crate::grassmann::RealLinear;

/// Relative Fourier weight above which the top of the band counts as saturated.
pub const ALIASING_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DerivativeMode {
    Spectral,
    Fd2,
    Fd4,
}

impl DerivativeMode {
    pub fn name(self) -> &'static str {
        match self {
            Self::Spectral => "spectral",
            Self::Fd2 => "fd2",
            Self::Fd4 => "fd4",
        }
    }
}

impl std::str::FromStr for DerivativeMode {
    type Err = GeometryError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "spectral" => Ok(Self::Spectral),
            "fd2" => Ok(Self::Fd2),
            "fd4" => Ok(Self::Fd4),
            other => Err(GeometryError::InvalidGrid(format!(
                "unknown derivative mode `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpinPhase {
    #[default]
    Periodic,
    Antiperiodic,
}

/// Which boundary conditions a grid function obeys: tensors are periodic,
/// spinors pick up the spin-structure phases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bundle {
    Tensor,
    Spinor,
}

struct Plans {
    forward: [Arc<dyn Fft<f64>>; 2],
    inverse: [Arc<dyn Fft<f64>>; 2],
}

/// Uniform grid on the flat torus [0, L₁) × [0, L₂).
///
/// Point `(i, j)` sits at `(i·h₁, j·h₂)` and has flat index `i·N₂ + j`.
#[derive(Clone)]
pub struct TorusGrid {
    sizes: [usize; 2],
    periods: [f64; 2],
    mode: DerivativeMode,
    spin: [SpinPhase; 2],
    plans: Arc<Plans>,
}

impl fmt::Debug for TorusGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TorusGrid")
            .field("sizes", &self.sizes)
            .field("periods", &self.periods)
            .field("mode", &self.mode)
            .field("spin", &self.spin)
            .finish()
    }
}

impl PartialEq for TorusGrid {
    fn eq(&self, other: &Self) -> bool {
        self.sizes == other.sizes
            && self.periods == other.periods
            && self.mode == other.mode
            && self.spin == other.spin
    }
}

impl TorusGrid {
    pub fn new(
        sizes: [usize; 2],
        periods: [f64; 2],
        mode: DerivativeMode,
    ) -> Result<Self, GeometryError> {
        for (&n, &l) in sizes.iter().zip(&periods) {
            if n < 4 {
                return Err(GeometryError::InvalidGrid(format!(
                    "grid size {n} is too small"
                )));
            }
            if mode == DerivativeMode::Spectral && (n % 2 != 0 || n < 8) {
                return Err(GeometryError::InvalidGrid(format!(
                    "spectral mode needs even sizes >= 8, got {n}"
                )));
            }
            if !(l.is_finite() && l > 0.0) {
                return Err(GeometryError::InvalidGrid(format!(
                    "period {l} must be positive"
                )));
            }
        }
        let mut planner = FftPlanner::new();
        let plans = Plans {
            forward: sizes.map(|n| planner.plan_fft_forward(n)),
            inverse: sizes.map(|n| planner.plan_fft_inverse(n)),
        };
        Ok(Self {
            sizes,
            periods,
            mode,
            spin: [SpinPhase::Periodic; 2],
            plans: Arc::new(plans),
        })
    }

    /// Unit torus [0,1)² with `n × n` points.
    pub fn unit(n: usize, mode: DerivativeMode) -> Result<Self, GeometryError> {
        Self::new([n, n], [1.0, 1.0], mode)
    }

    pub fn with_spin(mut self, spin: [SpinPhase; 2]) -> Self {
        self.spin = spin;
        self
    }

    pub fn with_mode(mut self, mode: DerivativeMode) -> Result<Self, GeometryError> {
        if mode == DerivativeMode::Spectral {
            Self::new(self.sizes, self.periods, mode).map(|g| g.with_spin(self.spin))
        } else {
            self.mode = mode;
            Ok(self)
        }
    }

    pub fn sizes(&self) -> [usize; 2] {
        self.sizes
    }

    pub fn periods(&self) -> [f64; 2] {
        self.periods
    }

    pub fn mode(&self) -> DerivativeMode {
        self.mode
    }

    pub fn spin(&self) -> [SpinPhase; 2] {
        self.spin
    }

    pub fn spacing(&self) -> [f64; 2] {
        [0, 1].map(|a| self.periods[a] / self.sizes[a] as f64)
    }

    /// Area element h₁h₂ of the quadrature.
    pub fn cell_area(&self) -> f64 {
        let [h1, h2] = self.spacing();
        h1 * h2
    }

    pub fn len(&self) -> usize {
        self.sizes[0] * self.sizes[1]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.sizes[1] + j
    }

    pub fn point(&self, idx: usize) -> [f64; 2] {
        let [h1, h2] = self.spacing();
        let (i, j) = (idx / self.sizes[1], idx % self.sizes[1]);
        [i as f64 * h1, j as f64 * h2]
    }

    /// Evaluate `f` at every grid point.
    pub fn sample<R>(&self, f: impl Fn([f64; 2]) -> R) -> Vec<R> {
        (0..self.len()).map(|idx| f(self.point(idx))).collect()
    }

    pub fn check_len<T>(&self, f: &[T]) -> Result<(), GeometryError> {
        if f.len() == self.len() {
            Ok(())
        } else {
            Err(GeometryError::ShapeMismatch {
                expected: self.len(),
                found: f.len(),
            })
        }
    }

    fn antiperiodic(&self, axis: usize, bundle: Bundle) -> bool {
        bundle == Bundle::Spinor && self.spin[axis] == SpinPhase::Antiperiodic
    }

    /// ∂f/∂x^{axis+1} computed coefficient by coefficient.
    pub fn derivative<R: RealLinear>(
        &self,
        f: &[R],
        axis: usize,
        bundle: Bundle,
    ) -> Result<Vec<R>, GeometryError> {
        self.check_len(f)?;
        let mut grids: BTreeMap<u32, Vec<f64>> = BTreeMap::new();
        for (idx, v) in f.iter().enumerate() {
            v.for_each_coeff(|k, c| {
                grids.entry(k).or_insert_with(|| vec![0.0; f.len()])[idx] += c;
            });
        }
        let anti = self.antiperiodic(axis, bundle);
        let derived: Vec<(u32, Vec<f64>)> = match self.mode {
            DerivativeMode::Spectral => {
                let spectra: Vec<(u32, Vec<Complex64>)> = grids
                    .into_iter()
                    .map(|(k, g)| (k, self.forward_lines(&g, axis, anti)))
                    .collect();
                self.guard_aliasing(&spectra, axis, anti)?;
                spectra
                    .into_iter()
                    .map(|(k, s)| (k, self.spectral_finish(s, axis, anti)))
                    .collect()
            }
            DerivativeMode::Fd2 | DerivativeMode::Fd4 => grids
                .into_iter()
                .map(|(k, g)| (k, self.finite_difference(&g, axis, anti)))
                .collect(),
        };
        let mut per_point: Vec<Vec<(u32, f64)>> = vec![Vec::new(); f.len()];
        for (k, g) in &derived {
            for (idx, &c) in g.iter().enumerate() {
                if c != 0.0 {
                    per_point[idx].push((*k, c));
                }
            }
        }
        Ok(f.iter()
            .zip(&per_point)
            .map(|(template, coeffs)| R::from_coeffs(template, coeffs))
            .collect())
    }

    fn line_geometry(&self, axis: usize) -> (usize, usize, usize) {
        // (length, stride, number of lines)
        if axis == 0 {
            (self.sizes[0], self.sizes[1], self.sizes[1])
        } else {
            (self.sizes[1], 1, self.sizes[0])
        }
    }

    fn line_start(&self, axis: usize, line: usize) -> usize {
        if axis == 0 {
            line
        } else {
            line * self.sizes[1]
        }
    }

    /// Forward transform of every line along `axis`, after removing the
    /// half-integer phase for antiperiodic data. Output is line-major.
    fn forward_lines(&self, g: &[f64], axis: usize, anti: bool) -> Vec<Complex64> {
        let (n, stride, lines) = self.line_geometry(axis);
        let mut out = Vec::with_capacity(n * lines);
        for line in 0..lines {
            let start = self.line_start(axis, line);
            out.extend((0..n).map(|m| {
                let v = Complex64::new(g[start + m * stride], 0.0);
                if anti {
                    v * Complex64::from_polar(1.0, -PI * m as f64 / n as f64)
                } else {
                    v
                }
            }));
        }
        for chunk in out.chunks_mut(n) {
            self.plans.forward[axis].process(chunk);
        }
        out
    }

    fn guard_aliasing(
        &self,
        spectra: &[(u32, Vec<Complex64>)],
        axis: usize,
        anti: bool,
    ) -> Result<(), GeometryError> {
        let n = self.sizes[axis];
        let mut scale = 0.0f64;
        let mut tail = 0.0f64;
        for (_, s) in spectra {
            for (pos, c) in s.iter().enumerate() {
                let m = pos % n;
                let a = c.norm();
                scale = scale.max(a);
                let top = m == n / 2 || (anti && m == n / 2 - 1);
                if top {
                    tail = tail.max(a);
                }
            }
        }
        if scale > 0.0 && tail > ALIASING_TOLERANCE * scale {
            return Err(GeometryError::AliasingDetected {
                axis,
                ratio: tail / scale,
            });
        }
        Ok(())
    }

    fn spectral_finish(&self, mut s: Vec<Complex64>, axis: usize, anti: bool) -> Vec<f64> {
        let n = self.sizes[axis];
        let l = self.periods[axis];
        let shift = if anti { 0.5 } else { 0.0 };
        for chunk in s.chunks_mut(n) {
            for (m, c) in chunk.iter_mut().enumerate() {
                let k = if m < n / 2 {
                    m as f64
                } else {
                    m as f64 - n as f64
                };
                let wave = if !anti && m == n / 2 {
                    0.0
                } else {
                    2.0 * PI * (k + shift) / l
                };
                *c *= Complex64::new(0.0, wave / n as f64);
            }
            self.plans.inverse[axis].process(chunk);
        }
        let (_, stride, lines) = self.line_geometry(axis);
        let mut out = vec![0.0; n * lines];
        for (line, chunk) in s.chunks(n).enumerate() {
            let start = self.line_start(axis, line);
            for (m, c) in chunk.iter().enumerate() {
                let v = if anti {
                    *c * Complex64::from_polar(1.0, PI * m as f64 / n as f64)
                } else {
                    *c
                };
                out[start + m * stride] = v.re;
            }
        }
        out
    }

    fn finite_difference(&self, g: &[f64], axis: usize, anti: bool) -> Vec<f64> {
        let (n, stride, lines) = self.line_geometry(axis);
        let h = self.spacing()[axis];
        let mut out = vec![0.0; g.len()];
        for line in 0..lines {
            let start = self.line_start(axis, line);
            let at = |m: isize| -> f64 {
                let wraps = m.div_euclid(n as isize);
                let r = m.rem_euclid(n as isize) as usize;
                let v = g[start + r * stride];
                if anti && wraps % 2 != 0 {
                    -v
                } else {
                    v
                }
            };
            for m in 0..n as isize {
                let d = match self.mode {
                    DerivativeMode::Fd2 => (at(m + 1) - at(m - 1)) / (2.0 * h),
                    _ => (8.0 * (at(m + 1) - at(m - 1)) - (at(m + 2) - at(m - 2))) / (12.0 * h),
                };
                out[start + m as usize * stride] = d;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::{GrassmannElement, Ring};

    fn max_err(a: &[f64], b: &[f64]) -> f64 {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn spectral_derivative_of_trig_modes() {
        let grid = TorusGrid::new([16, 12], [2.0, 3.0], DerivativeMode::Spectral).unwrap();
        let tau = 2.0 * PI;
        let f = grid.sample(|[x, y]| (tau * 3.0 * x / 2.0).sin() * (tau * y / 3.0).cos());
        let d1 = grid.derivative(&f, 0, Bundle::Tensor).unwrap();
        let d2 = grid.derivative(&f, 1, Bundle::Tensor).unwrap();
        let e1 = grid.sample(|[x, y]| tau * 1.5 * (tau * 1.5 * x).cos() * (tau * y / 3.0).cos());
        let e2 = grid.sample(|[x, y]| -(tau / 3.0) * (tau * 1.5 * x).sin() * (tau * y / 3.0).sin());
        assert!(max_err(&d1, &e1) < 1e-12);
        assert!(max_err(&d2, &e2) < 1e-12);
    }

    #[test]
    fn antiperiodic_half_modes() {
        let grid = TorusGrid::unit(16, DerivativeMode::Spectral)
            .unwrap()
            .with_spin([SpinPhase::Antiperiodic, SpinPhase::Periodic]);
        let f = grid.sample(|[x, _]| (PI * x).cos() + (3.0 * PI * x).sin());
        let d = grid.derivative(&f, 0, Bundle::Spinor).unwrap();
        let e = grid.sample(|[x, _]| -PI * (PI * x).sin() + 3.0 * PI * (3.0 * PI * x).cos());
        assert!(max_err(&d, &e) < 1e-12);
    }

    #[test]
    fn nyquist_content_is_rejected() {
        let grid = TorusGrid::unit(8, DerivativeMode::Spectral).unwrap();
        let f = grid.sample(|[x, _]| (2.0 * PI * 4.0 * x).cos());
        assert!(matches!(
            grid.derivative(&f, 0, Bundle::Tensor),
            Err(GeometryError::AliasingDetected { axis: 0, .. })
        ));
    }

    #[test]
    fn finite_differences_converge_at_their_order() {
        let errs = |mode, n| {
            let grid = TorusGrid::unit(n, mode).unwrap();
            let f = grid.sample(|[x, _]| (2.0 * PI * x).sin());
            let d = grid.derivative(&f, 0, Bundle::Tensor).unwrap();
            let e = grid.sample(|[x, _]| 2.0 * PI * (2.0 * PI * x).cos());
            max_err(&d, &e)
        };
        let r2 = errs(DerivativeMode::Fd2, 32) / errs(DerivativeMode::Fd2, 64);
        let r4 = errs(DerivativeMode::Fd4, 32) / errs(DerivativeMode::Fd4, 64);
        assert!((r2 - 4.0).abs() < 0.1, "{r2}");
        assert!((r4 - 16.0).abs() < 0.5, "{r4}");
    }

    #[test]
    fn grassmann_coefficients_are_differentiated_separately() {
        let grid = TorusGrid::unit(8, DerivativeMode::Spectral).unwrap();
        let th = GrassmannElement::<f64>::generator(1, 3).unwrap();
        let f = grid.sample(|[x, _]| th.scale((2.0 * PI * x).sin()) + &th.real_like(1.0));
        let d = grid.derivative(&f, 0, Bundle::Tensor).unwrap();
        for (idx, v) in d.iter().enumerate() {
            let x = grid.point(idx)[0];
            assert!(v.body().abs() < 1e-13);
            let c = v.coefficient(crate::grassmann::Blade::generator(1));
            assert!((c - 2.0 * PI * (2.0 * PI * x).cos()).abs() < 1e-12);
        }
    }
}
