use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Scalar ring used for field components.
///
/// Zero and one are produced from an existing value (`zero_like`) because a
/// Grassmann element carries its generator count at run time.
pub trait Ring:
    Clone
    + Debug
    + Send
    + Sync
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
{
    fn zero_like(&self) -> Self;

    /// The real number `x` embedded in the same ring as `self`.
    fn real_like(&self, x: f64) -> Self;

    fn one_like(&self) -> Self {
        self.real_like(1.0)
    }

    /// Multiplication by a real constant.
    fn scale(&self, k: f64) -> Self;

    /// Largest absolute real coefficient.
    fn max_abs(&self) -> f64;

    /// Real part of the scalar (body) coefficient.
    fn body(&self) -> f64;

    /// Multiplicative inverse, `None` when the body vanishes.
    fn inverse(&self) -> Option<Self>;
}

/// A ring that is a finite-dimensional real vector space with a distinguished
/// basis. Derivative engines act coefficient by coefficient through this view.
pub trait RealLinear: Ring {
    /// Visit every stored `(basis key, coefficient)` pair.
    fn for_each_coeff<F: FnMut(u32, f64)>(&self, f: F);

    /// Rebuild an element in the ring of `template` from basis coefficients.
    fn from_coeffs(template: &Self, coeffs: &[(u32, f64)]) -> Self;

    /// Whether basis key `key` is an odd element of the grading.
    fn key_is_odd(key: u32) -> bool;

    /// Largest absolute coefficient over even and odd basis keys respectively.
    fn parity_max(&self) -> [f64; 2] {
        let mut m = [0.0f64; 2];
        self.for_each_coeff(|k, c| {
            let slot = usize::from(Self::key_is_odd(k));
            m[slot] = m[slot].max(c.abs());
        });
        m
    }
}

impl Ring for f64 {
    fn zero_like(&self) -> Self {
        0.0
    }
    fn real_like(&self, x: f64) -> Self {
        x
    }
    fn scale(&self, k: f64) -> Self {
        self * k
    }
    fn max_abs(&self) -> f64 {
        self.abs()
    }
    fn body(&self) -> f64 {
        *self
    }
    fn inverse(&self) -> Option<Self> {
        (*self != 0.0).then(|| 1.0 / self)
    }
}

impl RealLinear for f64 {
    fn for_each_coeff<F: FnMut(u32, f64)>(&self, mut f: F) {
        if *self != 0.0 {
            f(0, *self);
        }
    }
    fn from_coeffs(_template: &Self, coeffs: &[(u32, f64)]) -> Self {
        coeffs.iter().map(|&(_, c)| c).sum()
    }
    fn key_is_odd(_key: u32) -> bool {
        false
    }
}

impl Ring for num_complex::Complex64 {
    fn zero_like(&self) -> Self {
        num_complex::Complex64::new(0.0, 0.0)
    }
    fn real_like(&self, x: f64) -> Self {
        num_complex::Complex64::new(x, 0.0)
    }
    fn scale(&self, k: f64) -> Self {
        self * k
    }
    fn max_abs(&self) -> f64 {
        self.re.abs().max(self.im.abs())
    }
    fn body(&self) -> f64 {
        self.re
    }
    fn inverse(&self) -> Option<Self> {
        (self.norm() != 0.0).then(|| 1.0 / self)
    }
}

/// Pairwise sum in a fixed tree order, so results do not depend on how the
/// caller chunked or parallelized the work that produced `items`.
pub fn tree_sum<R: Ring>(items: &[R]) -> Option<R> {
    match items.len() {
        0 => None,
        1 => Some(items[0].clone()),
        n => {
            let (lo, hi) = items.split_at(n / 2);
            let a = tree_sum(lo)?;
            let b = tree_sum(hi)?;
            Some(a + &b)
        }
    }
}
