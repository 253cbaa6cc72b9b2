//! Exact Hilbert functions of generic configurations of linear spaces,
//! points, jet points, degenerate conics and sundials in projective space.
//!
//! Everything is generic over a [`field::Field`]; [`PrimeField`] is the
//! default workhorse and [`RationalField`] the exact cross-check.

pub mod apolarity;
pub mod error;
pub mod family;
pub mod field;
pub mod geometry;
pub mod matrix;
pub mod polyspace;
pub mod postulation;
pub mod schemes;
pub mod suites;

pub use error::{Error, Result};
pub use family::{ConfigTemplate, Family, Fixed};
pub use field::{Field, Mode, PrimeField, RationalField};
pub use geometry::{GenericSampler, ProjPoint, Subspace};
pub use matrix::ExactMatrix;
pub use postulation::Engine;
pub use schemes::{Component, Configuration};

pub type PrimeMatrix = ExactMatrix<PrimeField>;
pub type RationalMatrix = ExactMatrix<RationalField>;
pub type PrimeConfiguration = Configuration<PrimeField>;
pub type RationalConfiguration = Configuration<RationalField>;
pub type PrimeEngine = Engine<PrimeField>;
pub type RationalEngine = Engine<RationalField>;
