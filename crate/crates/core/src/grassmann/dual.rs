use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use super::element::GrassmannElement;
use super::ring::{RealLinear, Ring};

/// `value + ε·variation` with ε even and ε² = 0.
///
/// Evaluating a functional on dual-valued fields yields its exact first
/// variation in the `variation` slot.
#[derive(Debug, Clone, PartialEq)]
pub struct Dual<R> {
    pub value: R,
    pub variation: R,
}

pub type DualScalar = Dual<GrassmannElement>;

const VARIATION_KEY: u32 = 1 << 31;

impl<R: Ring> Dual<R> {
    pub fn new(value: R, variation: R) -> Self {
        Self { value, variation }
    }

    /// Embed with zero variation.
    pub fn constant(value: R) -> Self {
        let variation = value.zero_like();
        Self { value, variation }
    }
}

impl<R: Ring> Add for Dual<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self + &rhs
    }
}

impl<'a, R: Ring> Add<&'a Self> for Dual<R> {
    type Output = Self;
    fn add(self, rhs: &'a Self) -> Self {
        Self {
            value: self.value + &rhs.value,
            variation: self.variation + &rhs.variation,
        }
    }
}

impl<'a, R: Ring> AddAssign<&'a Self> for Dual<R> {
    fn add_assign(&mut self, rhs: &'a Self) {
        self.value += &rhs.value;
        self.variation += &rhs.variation;
    }
}

impl<R: Ring> Sub for Dual<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self - &rhs
    }
}

impl<'a, R: Ring> Sub<&'a Self> for Dual<R> {
    type Output = Self;
    fn sub(self, rhs: &'a Self) -> Self {
        Self {
            value: self.value - &rhs.value,
            variation: self.variation - &rhs.variation,
        }
    }
}

impl<R: Ring> Neg for Dual<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            value: -self.value,
            variation: -self.variation,
        }
    }
}

impl<R: Ring> Mul for Dual<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self * &rhs
    }
}

impl<'a, R: Ring> Mul<&'a Self> for Dual<R> {
    type Output = Self;
    fn mul(self, rhs: &'a Self) -> Self {
        // Order of factors is kept: the underlying ring need not commute.
        let variation = self.value.clone() * &rhs.variation + &(self.variation * &rhs.value);
        Self {
            value: self.value * &rhs.value,
            variation,
        }
    }
}

impl<R: Ring> Ring for Dual<R> {
    fn zero_like(&self) -> Self {
        Self::constant(self.value.zero_like())
    }
    fn real_like(&self, x: f64) -> Self {
        Self::constant(self.value.real_like(x))
    }
    fn scale(&self, k: f64) -> Self {
        Self {
            value: self.value.scale(k),
            variation: self.variation.scale(k),
        }
    }
    fn max_abs(&self) -> f64 {
        self.value.max_abs().max(self.variation.max_abs())
    }
    fn body(&self) -> f64 {
        self.value.body()
    }
    fn inverse(&self) -> Option<Self> {
        // (a + εb)⁻¹ = a⁻¹ − ε a⁻¹ b a⁻¹
        let inv = self.value.inverse()?;
        let variation = -(inv.clone() * &self.variation * &inv);
        Some(Self {
            value: inv,
            variation,
        })
    }
}

impl<R: RealLinear> RealLinear for Dual<R> {
    fn for_each_coeff<F: FnMut(u32, f64)>(&self, mut f: F) {
        self.value.for_each_coeff(&mut f);
        self.variation
            .for_each_coeff(|k, c| f(k | VARIATION_KEY, c));
    }

    fn from_coeffs(template: &Self, coeffs: &[(u32, f64)]) -> Self {
        let (var, val): (Vec<_>, Vec<_>) = coeffs.iter().partition(|(k, _)| k & VARIATION_KEY != 0);
        let var: Vec<_> = var
            .into_iter()
            .map(|(k, c)| (k & !VARIATION_KEY, c))
            .collect();
        Self {
            value: R::from_coeffs(&template.value, &val),
            variation: R::from_coeffs(&template.variation, &var),
        }
    }

    fn key_is_odd(key: u32) -> bool {
        R::key_is_odd(key & !VARIATION_KEY)
    }
}
