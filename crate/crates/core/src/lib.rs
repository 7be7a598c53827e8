//! Double-Toeplitz LCD codes over finite fields.
//!
//! The crate builds codes with generator `[I_n | T]` where `T` is a symmetric
//! tridiagonal Toeplitz matrix, decides the LCD property from the spectrum of
//! `T` (read off the roots of Dickson polynomials of the second kind), checks
//! every such verdict against a direct `G·Gᵀ` computation, and lifts LCD codes
//! over `F_{q^s}` to LCD codes over `F_q` through trace isometries.

pub mod algebra;
pub mod codes;
pub mod concat;
pub mod dickson;
pub mod dtcode;
pub mod error;
pub mod galois;
pub mod reproduce;

pub use algebra::{Matrix, Poly};
pub use codes::{LinearCode, WeightDistribution, DEFAULT_BUDGET};
pub use concat::{ConcatenatedCode, IsometryMap};
pub use dickson::{FactorizationProfile, RootMultiset};
pub use dtcode::{CorollaryDiagnosis, DTParams, ForbiddenSet, SpectralContext};
pub use error::{Error, Result};
pub use galois::{Embedding, FieldElement, FiniteField};
pub use reproduce::ReproduceReport;
