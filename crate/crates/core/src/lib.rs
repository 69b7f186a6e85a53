//! Bound states of the two-boson lattice fiber Hamiltonian on Z² with
//! on-site, nearest-neighbour and next-nearest-neighbour interactions.
//!
//! Bound states are located as zeros of Lippmann–Schwinger determinants
//! ([`determinant`], [`zeros`]), the coupling plane is partitioned by the
//! band-edge threshold curves ([`phase`]), and every count can be checked
//! against a truncated position-space diagonalization ([`oracle`]).
//!
//! All numerical routines are generic over [`Scalar`] (`f32` or `f64`); the
//! aliases at the crate root fix the double-precision instantiations.

pub mod determinant;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod oracle;
pub mod phase;
pub mod quadrature;
pub mod scalar;
pub mod zeros;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use determinant::{count_bound_states, det2, det5, det7, Gram2Table, Gram7Table};
pub use lattice::{essential_band, LatticeVector};
pub use phase::{classify, Count, RegionLabel, Side};
pub use quadrature::{edge_constants, gram2, gram7, GridSpec};
pub use zeros::{find_zeros, ScanOptions};

pub type Couplings = lattice::CouplingParams<f64>;
pub type Couplings32 = lattice::CouplingParams<f32>;
pub type Momentum = lattice::Quasimomentum<f64>;
pub type Momentum32 = lattice::Quasimomentum<f32>;
pub type TorusPoint = lattice::TorusPoint<f64>;
pub type Band = lattice::EssentialBand<f64>;
pub type Gram2 = quadrature::GramMatrix2<f64>;
pub type Gram7 = quadrature::GramMatrix7<f64>;
pub type EdgeConstants = quadrature::EdgeConstants<f64>;
pub type EdgeConstants32 = quadrature::EdgeConstants<f32>;
pub type ZeroReport = zeros::ZeroReport<f64>;
pub type PhaseCurve = phase::PhaseCurve<f64>;
pub type OracleReport = oracle::OracleReport<f64>;
pub type BoxMatrix = linalg::SquareMatrix<f64>;
