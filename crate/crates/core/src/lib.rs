//! Exact computations on finitely presented groups: Fox calculus, multivariable
//! Alexander polynomials, characteristic-variety membership, twisted Betti
//! ranks, multiplicity bounds, quasi-projectivity obstructions and the closed
//! forms for Seifert links.
//!
//! The crate is `no_std` and only needs `alloc`. All arithmetic is exact:
//! integers and rationals are arbitrary precision and character values live in
//! cyclotomic fields.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod alexander;
pub mod cyclofield;
mod error;
pub mod intlinalg;
pub mod jumploci;
pub mod laurent;
pub mod obstruct;
pub mod presentation;
pub mod seifert;
pub mod upoly;

pub use error::{Error, Result};

pub use alexander::AlexanderMatrix;
pub use cyclofield::{Character, CycloNumber};
pub use intlinalg::AbelianStructure;
pub use laurent::{FactoredPoly, LaurentPoly};
pub use presentation::{GroupPresentation, Word};

/// Hard limits on problem size. Exceeding one yields [`Error::CapExceeded`].
pub mod caps {
    /// Largest row or column count for which minors are enumerated.
    pub const MAX_MINOR_DIM: usize = 8;
    /// Largest cyclotomic conductor.
    pub const MAX_CONDUCTOR: u32 = 240;
    /// Largest total degree examined when computing orders of vanishing.
    pub const MAX_TOTAL_DEGREE: u32 = 64;
}
