//! Automorphisms of C^n built from affine maps, shears and over-shears, and the
//! one-parameter groups they embed in.
//!
//! Words are stored in application order: `[e1, e2, …, em]` acts as
//! `em ∘ … ∘ e2 ∘ e1`, so `e1` touches the point first. Coordinate indices
//! (`axis`) are 0-based throughout, including in serialized files.

mod elementary;
mod flow;
pub mod matrix;
mod polynomial;
mod serial;
mod word;

use num_complex::Complex64;
use rand::Rng;
use thiserror::Error;

pub use elementary::{ComplexPoint, ElementaryAutomorphism};
pub use flow::{flow_at, recognize_flow, OneParameterFlow};
pub use matrix::{expm, matrix_log, CMatrix, MatrixLog};
pub use polynomial::MultivariatePolynomial;
pub use serial::TermRepr;
pub use word::{eval_word, expand_polynomial, henon_word, invert_word, AutomorphismWord};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("non-finite coordinate or coefficient")]
    NonFinite,
    #[error("singular affine matrix")]
    SingularMatrix,
    #[error("axis {axis} out of range for dimension {dimension}")]
    AxisOutOfRange { axis: usize, dimension: usize },
    #[error("shear polynomial involves its own axis variable z{}", .axis + 1)]
    PolynomialInvolvesAxis { axis: usize },
    #[error("word contains an over-shear and has no polynomial expansion")]
    TranscendentalWord,
    #[error("matrix is not diagonalizable (eigenvector condition {condition:e})")]
    NonDiagonalizable { condition: f64 },
    #[error("no known one-parameter group: {0}")]
    NoKnownFlow(String),
}

/// Relative residual `‖a − b‖ / (1 + ‖a‖)` in the Euclidean norm.
pub fn relative_residual(a: &[Complex64], b: &[Complex64]) -> f64 {
    let diff: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum();
    let size: f64 = a.iter().map(|x| x.norm_sqr()).sum();
    diff.sqrt() / (1.0 + size.sqrt())
}

/// Uniform sample from the polydisc `{|z_i| < radius}`.
pub fn sample_polydisc<R: Rng + ?Sized>(rng: &mut R, n: usize, radius: f64) -> Vec<Complex64> {
    (0..n).map(|_| sample_disc(rng, radius)).collect()
}

/// Uniform sample from the disc `{|z| < radius}`.
pub fn sample_disc<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> Complex64 {
    let r = radius * rng.random::<f64>().sqrt();
    let theta = 2.0 * std::f64::consts::PI * rng.random::<f64>();
    Complex64::from_polar(r, theta)
}

/// Seed used wherever an operation samples points internally (flow
/// recognition, word equality).
pub const INTERNAL_SAMPLE_SEED: u64 = 0x5eed_f10;

/// Sample count and relative tolerance for deciding equality of maps.
pub const EQUALITY_SAMPLES: usize = 100;
pub const EQUALITY_TOL: f64 = 1e-9;
