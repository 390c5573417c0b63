//! Phantom morphisms and covers at finite scale.
//!
//! Finite modules over `Z/n`, representations of the quiver `A2` (a single
//! arrow), ideals of morphisms with decidable membership, precovers and
//! covers, and filtrations of phantom representations by small pure
//! subrepresentations. All arithmetic is exact.

pub mod approx;
pub mod error;
pub mod filtration;
pub mod finmod;
pub mod ideals;
pub mod linalg;
pub mod manifest;
pub mod oracle;
pub mod rep_a2;
pub mod sample;
pub mod suite;

pub use error::{Error, Result};
