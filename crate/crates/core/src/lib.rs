//! Symplectic characters of the graded Lie algebra attached to the lower
//! central series of a closed genus-g surface group.
//!
//! The crate computes the Sp(2g)-character of each graded piece in closed
//! form ([`formulas`]), decomposes it into irreducibles ([`spdecomp`]), and
//! cross-checks everything against a brute-force model of the one-relator
//! Lie algebra built inside tensor powers ([`lieoracle`]).

pub mod charring;
pub mod cli;
pub mod error;
pub mod formulas;
pub mod lieoracle;
pub mod rational;
pub mod series;
pub mod spdecomp;

pub use charring::{CharRing, PowerTracePoly, SymCharacter, SymplecticMatrix};
pub use error::{Error, Result};
pub use rational::Rational;
