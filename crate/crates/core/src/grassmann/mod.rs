//! Finite-dimensional real Grassmann algebra and the ring abstraction shared by
//! every field type in the crate.
//!
//! Fields are generic over a [`Ring`]: plain `f64` for classical checks,
//! [`GrassmannElement`] for anticommuting fields, and [`Dual`] on top of either
//! when the exact first variation of a functional is wanted.

mod dual;
mod element;
mod ring;

pub use dual::{Dual, DualScalar};
pub use element::{Blade, Coefficient, GrassmannElement, Parity, MAX_GENERATORS};
pub use ring::{tree_sum, RealLinear, Ring};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrassmannError {
    #[error("generator count mismatch: {0} vs {1}")]
    GeneratorMismatch(u8, u8),
    #[error("element has no body (vanishing scalar part) and cannot be inverted")]
    NoBody,
    #[error("generator index {index} out of range for an algebra with {count} generators")]
    GeneratorOutOfRange { index: usize, count: u8 },
    #[error("generator count {0} exceeds the supported maximum of {MAX_GENERATORS}")]
    TooManyGenerators(usize),
}
