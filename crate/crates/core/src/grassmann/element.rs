use std::fmt::{self, Debug, Display};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_rational::Rational64;
use num_traits::{One, Zero};

use super::ring::{RealLinear, Ring};
use super::GrassmannError;

pub const MAX_GENERATORS: usize = 16;

/// Real coefficient type of a Grassmann element: `f64` for field computations,
/// `Rational64` for exact pointwise algebra checks.
pub trait Coefficient:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;
    /// Multiplicative inverse; only called on nonzero values.
    fn recip(&self) -> Self;
}

impl Coefficient for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn recip(&self) -> Self {
        1.0 / self
    }
}

impl Coefficient for Rational64 {
    /// Exact for dyadic rationals such as 0.5 or 0.25; other values are
    /// approximated.
    fn from_f64(x: f64) -> Self {
        Rational64::approximate_float(x).unwrap_or_else(Rational64::zero)
    }
    fn to_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
    fn recip(&self) -> Self {
        Rational64::recip(self)
    }
}

/// A monomial θ_{i1}θ_{i2}… with i1 < i2 < …, stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Blade(pub u16);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    pub fn generator(i: usize) -> Blade {
        Blade(1 << i)
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_odd(self) -> bool {
        self.grade() % 2 == 1
    }

    /// Generator indices in increasing order.
    pub fn indices(self) -> Vec<usize> {
        (0..16).filter(|i| self.0 & (1 << i) != 0).collect()
    }

    /// Sign picked up when reordering `self · rhs` into canonical order, or
    /// `None` if the two share a generator (the product vanishes).
    pub fn product_sign(self, rhs: Blade) -> Option<i32> {
        if self.0 & rhs.0 != 0 {
            return None;
        }
        let mut swaps = 0u32;
        let mut bits = rhs.0;
        while bits != 0 {
            let j = bits.trailing_zeros();
            swaps += (u32::from(self.0) >> (j + 1)).count_ones();
            bits &= bits - 1;
        }
        Some(if swaps.is_multiple_of(2) { 1 } else { -1 })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Element of the exterior algebra Λ_N over the reals.
///
/// Terms are kept sorted by blade with no stored zeros, so structural equality
/// is algebraic equality.
#[derive(Clone, PartialEq)]
pub struct GrassmannElement<C: Coefficient = f64> {
    generators: u8,
    terms: Vec<(Blade, C)>,
}

impl<C: Coefficient> GrassmannElement<C> {
    pub fn zero(generators: usize) -> Self {
        assert!(generators <= MAX_GENERATORS, "too many generators");
        Self {
            generators: generators as u8,
            terms: Vec::new(),
        }
    }

    pub fn scalar(value: C, generators: usize) -> Self {
        let mut out = Self::zero(generators);
        if !value.is_zero() {
            out.terms.push((Blade::SCALAR, value));
        }
        out
    }

    /// The generator θ_index.
    pub fn generator(index: usize, generators: usize) -> Result<Self, GrassmannError> {
        if generators > MAX_GENERATORS {
            return Err(GrassmannError::TooManyGenerators(generators));
        }
        if index >= generators {
            return Err(GrassmannError::GeneratorOutOfRange {
                index,
                count: generators as u8,
            });
        }
        Ok(Self {
            generators: generators as u8,
            terms: vec![(Blade::generator(index), C::one())],
        })
    }

    /// Build from arbitrary `(blade, coefficient)` pairs; duplicates are summed.
    pub fn from_terms(
        generators: usize,
        terms: impl IntoIterator<Item = (Blade, C)>,
    ) -> Result<Self, GrassmannError> {
        if generators > MAX_GENERATORS {
            return Err(GrassmannError::TooManyGenerators(generators));
        }
        let limit = if generators == 16 {
            u32::MAX
        } else {
            1u32 << generators
        };
        let mut raw: Vec<(Blade, C)> = Vec::new();
        for (b, c) in terms {
            if u32::from(b.0) >= limit {
                let index = 15 - b.0.leading_zeros() as usize;
                return Err(GrassmannError::GeneratorOutOfRange {
                    index,
                    count: generators as u8,
                });
            }
            raw.push((b, c));
        }
        Ok(Self {
            generators: generators as u8,
            terms: normalize(raw),
        })
    }

    pub fn generator_count(&self) -> usize {
        usize::from(self.generators)
    }

    pub fn terms(&self) -> &[(Blade, C)] {
        &self.terms
    }

    pub fn coefficient(&self, blade: Blade) -> C {
        self.terms
            .binary_search_by_key(&blade, |t| t.0)
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| C::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the empty monomial.
    pub fn body(&self) -> C {
        self.coefficient(Blade::SCALAR)
    }

    /// Nilpotent part: everything except the body.
    pub fn soul(&self) -> Self {
        Self {
            generators: self.generators,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| *b != Blade::SCALAR)
                .cloned()
                .collect(),
        }
    }

    /// Split into the even (Λ⁺) and odd (Λ⁻) parts.
    pub fn parity_split(&self) -> (Self, Self) {
        let (odd, even): (Vec<_>, Vec<_>) =
            self.terms.iter().cloned().partition(|(b, _)| b.is_odd());
        (
            Self {
                generators: self.generators,
                terms: even,
            },
            Self {
                generators: self.generators,
                terms: odd,
            },
        )
    }

    /// `Some(parity)` when every stored monomial has the same parity. Zero is
    /// reported as even.
    pub fn parity(&self) -> Option<Parity> {
        let odd = self.terms.iter().filter(|(b, _)| b.is_odd()).count();
        if odd == 0 {
            Some(Parity::Even)
        } else if odd == self.terms.len() {
            Some(Parity::Odd)
        } else {
            None
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, GrassmannError> {
        self.check(rhs)?;
        let mut raw = self.terms.clone();
        raw.extend(rhs.terms.iter().cloned());
        Ok(Self {
            generators: self.generators,
            terms: normalize(raw),
        })
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, GrassmannError> {
        self.check(rhs)?;
        let mut raw = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                if let Some(sign) = a.product_sign(*b) {
                    let c = ca.clone() * cb.clone();
                    raw.push((Blade(a.0 | b.0), if sign < 0 { -c } else { c }));
                }
            }
        }
        Ok(Self {
            generators: self.generators,
            terms: normalize(raw),
        })
    }

    /// Inverse via the terminating geometric series in the nilpotent soul.
    pub fn inverse(&self) -> Result<Self, GrassmannError> {
        let body = self.body();
        if body.is_zero() {
            return Err(GrassmannError::NoBody);
        }
        let inv_body = body.recip();
        // a = b(1 + n) with n = soul/b; a⁻¹ = b⁻¹ Σ (−n)^k
        let minus_n = self.soul().map_coeffs(|c| -(c * inv_body.clone()));
        let one = Self::scalar(C::one(), self.generator_count());
        let mut acc = one.clone();
        let mut power = one;
        loop {
            power = power.checked_mul(&minus_n)?;
            if power.is_zero() {
                break;
            }
            acc = acc.checked_add(&power)?;
        }
        Ok(acc.map_coeffs(|c| c * inv_body.clone()))
    }

    /// Apply `f` to every coefficient, dropping any that become zero.
    pub fn map_coeffs(&self, f: impl Fn(C) -> C) -> Self {
        Self {
            generators: self.generators,
            terms: self
                .terms
                .iter()
                .map(|(b, c)| (*b, f(c.clone())))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Drop coefficients with magnitude at or below `tol`.
    pub fn pruned(&self, tol: f64) -> Self {
        Self {
            generators: self.generators,
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| c.to_f64().abs() > tol)
                .cloned()
                .collect(),
        }
    }

    fn check(&self, rhs: &Self) -> Result<(), GrassmannError> {
        if self.generators != rhs.generators {
            Err(GrassmannError::GeneratorMismatch(
                self.generators,
                rhs.generators,
            ))
        } else {
            Ok(())
        }
    }
}

fn normalize<C: Coefficient>(mut raw: Vec<(Blade, C)>) -> Vec<(Blade, C)> {
    raw.sort_by_key(|t| t.0);
    let mut out: Vec<(Blade, C)> = Vec::with_capacity(raw.len());
    for (b, c) in raw {
        match out.last_mut() {
            Some(last) if last.0 == b => {
                last.1 = last.1.clone() + c;
            }
            _ => out.push((b, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

impl<C: Coefficient> Debug for GrassmannElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<C: Coefficient> Display for GrassmannElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c:?}")?;
            for g in b.indices() {
                write!(f, "·θ{}", g + 1)?;
            }
        }
        Ok(())
    }
}

// Operators panic on generator-count mismatch; use the `checked_*` methods
// where the counts are not already known to agree.

impl<C: Coefficient> Add for GrassmannElement<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self + &rhs
    }
}

impl<'a, C: Coefficient> Add<&'a Self> for GrassmannElement<C> {
    type Output = Self;
    fn add(self, rhs: &'a Self) -> Self {
        self.checked_add(rhs).expect("grassmann add")
    }
}

impl<'a, C: Coefficient> AddAssign<&'a Self> for GrassmannElement<C> {
    fn add_assign(&mut self, rhs: &'a Self) {
        *self = self.checked_add(rhs).expect("grassmann add");
    }
}

impl<C: Coefficient> Neg for GrassmannElement<C> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map_coeffs(|c| -c)
    }
}

impl<C: Coefficient> Sub for GrassmannElement<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + &(-rhs)
    }
}

impl<'a, C: Coefficient> Sub<&'a Self> for GrassmannElement<C> {
    type Output = Self;
    fn sub(self, rhs: &'a Self) -> Self {
        self + &(-rhs.clone())
    }
}

impl<C: Coefficient> Mul for GrassmannElement<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("grassmann mul")
    }
}

impl<'a, C: Coefficient> Mul<&'a Self> for GrassmannElement<C> {
    type Output = Self;
    fn mul(self, rhs: &'a Self) -> Self {
        self.checked_mul(rhs).expect("grassmann mul")
    }
}

impl<C: Coefficient> Ring for GrassmannElement<C> {
    fn zero_like(&self) -> Self {
        Self::zero(self.generator_count())
    }
    fn real_like(&self, x: f64) -> Self {
        Self::scalar(C::from_f64(x), self.generator_count())
    }
    fn scale(&self, k: f64) -> Self {
        let k = C::from_f64(k);
        self.map_coeffs(|c| c * k.clone())
    }
    fn max_abs(&self) -> f64 {
        self.terms
            .iter()
            .map(|(_, c)| c.to_f64().abs())
            .fold(0.0, f64::max)
    }
    fn body(&self) -> f64 {
        GrassmannElement::body(self).to_f64()
    }
    fn inverse(&self) -> Option<Self> {
        GrassmannElement::inverse(self).ok()
    }
}

impl RealLinear for GrassmannElement<f64> {
    fn for_each_coeff<F: FnMut(u32, f64)>(&self, mut f: F) {
        for (b, c) in &self.terms {
            f(u32::from(b.0), *c);
        }
    }

    fn from_coeffs(template: &Self, coeffs: &[(u32, f64)]) -> Self {
        Self {
            generators: template.generators,
            terms: normalize(coeffs.iter().map(|&(k, c)| (Blade(k as u16), c)).collect()),
        }
    }

    fn key_is_odd(key: u32) -> bool {
        key.count_ones() % 2 == 1
    }
}
