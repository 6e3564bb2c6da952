#![allow(clippy::needless_range_loop)]

pub mod clifford;
pub mod fields;
pub mod functionals;
pub mod geometry;
pub mod grassmann;
pub mod symmetry;
