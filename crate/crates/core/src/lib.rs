//! Exact q-series engine for products that factor alternating sums of
//! Virasoro minimal-model characters.
//!
//! The crate builds both sides of each factorization identity exactly
//! (products via q-Pochhammer expansion, sums via the Rocha-Caridi bosonic
//! formula), certifies them coefficient by coefficient, and scans the
//! sign-pattern conjectures for the product coefficients.

pub mod error;
pub mod minimal_model;
pub mod pairs;
pub mod params;
pub mod qseries;
pub mod scanner;
pub mod verifier;

pub use error::{Error, Result};
pub use minimal_model::{CharacterLabel, MinimalModel};
pub use pairs::{enumerate_pairs, ContributingPair, PairType};
pub use params::{FactorizationParams, ProductParams, Scheme};
pub use qseries::{Coefficient, Rational, ShiftedSeries, SignedMonomial};
pub use scanner::{Coverage, SignReport};
pub use verifier::{IdentityCertificate, IdentityKind, SignVariant};
