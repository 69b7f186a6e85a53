use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("grid size {n} must be even and at least 16")]
    InvalidGrid { n: usize },

    #[error("spectral parameter z = {z} lies inside the essential band [{e_min}, {e_max}]")]
    InBand { z: f64, e_min: f64, e_max: f64 },

    #[error("spectral parameter z = {z} is within 1e-8 of the band edge {edge} without being equal to it")]
    NearEdge { z: f64, edge: f64 },

    #[error("non-finite value: {what}")]
    NonFinite { what: &'static str },

    #[error("matrix is not symmetric (entry ({row}, {col}) differs from its transpose by {diff:e})")]
    NonSymmetric { row: usize, col: usize, diff: f64 },

    #[error("box half-width {l} is below the minimum of 10")]
    InvalidBox { l: usize },

    #[error("swap-parity sectors need K1 = K2, got K = ({k1}, {k2})")]
    InvalidSector { k1: f64, k2: f64 },

    #[error("determinant does not approach 1 before |z - edge| = {reach:e}")]
    NoTail { reach: f64 },

    #[error("eigensolver failed to converge on a {n}x{n} matrix")]
    EigenFailure { n: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
