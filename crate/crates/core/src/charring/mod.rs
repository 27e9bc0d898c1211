//! The character ring of Sp(2g) in two interchangeable forms.
//!
//! [`SymCharacter`] stores a class function as a hyperoctahedral-invariant
//! Laurent polynomial in the eigenvalue variables `x_1..x_g`; this is the
//! form used for decomposition into irreducibles. [`PowerTracePoly`] stores
//! it as a polynomial in the power traces `q_d = tr(M^d)`, which is the form
//! that can be evaluated exactly at an integer matrix. Conversion runs one
//! way, power-trace to Laurent.

pub(crate) mod laurent;
mod matrix;
mod power_trace;

pub use laurent::CharTerm;
pub use laurent::{dominant, Exponents, SymCharacter};
pub use matrix::SymplecticMatrix;
pub use power_trace::{to_laurent, PowerTracePoly, PtMonomial, PtTerm};

use std::fmt::Debug;

use crate::error::Result;
use crate::rational::Rational;

/// Operations shared by both character representations, so that series and
/// verifiers can run over either one.
pub trait CharRing: Clone + PartialEq + Debug + Send + Sync + Sized {
    fn genus(&self) -> usize;

    fn zero(genus: usize) -> Self;

    /// `c` times the trivial character.
    fn constant(genus: usize, c: Rational) -> Self;

    fn one(genus: usize) -> Self {
        Self::constant(genus, Rational::from_integer(1.into()))
    }

    /// The standard character `chi_V` of the 2g-dimensional defining module.
    fn standard(genus: usize) -> Result<Self>;

    fn checked_add(&self, other: &Self) -> Result<Self>;

    fn checked_sub(&self, other: &Self) -> Result<Self>;

    fn checked_mul(&self, other: &Self) -> Result<Self>;

    fn scale(&self, c: &Rational) -> Self;

    fn checked_pow(&self, exponent: i64) -> Result<Self> {
        if exponent < 0 {
            return crate::error::invalid_arg(format!("negative power {exponent}"));
        }
        let mut acc = Self::one(self.genus());
        let mut base = self.clone();
        let mut e = exponent as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Adams operation `psi^d`: precomposition with the d-th power map.
    fn adams(&self, d: i64) -> Result<Self>;

    fn is_zero(&self) -> bool;

    /// Whether the value is a virtual character, i.e. has integer
    /// coefficients in the eigenvalue basis.
    fn is_integral(&self) -> bool;

    /// Value at the identity matrix.
    fn dimension(&self) -> Rational;

    fn to_laurent(&self) -> SymCharacter;
}

pub(crate) fn check_genus(genus: usize) -> Result<()> {
    if genus == 0 {
        return crate::error::invalid_arg("genus must be at least 1");
    }
    Ok(())
}

pub(crate) fn check_same_genus(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(crate::error::Error::IncompatibleOperands(format!(
            "genus {a} vs genus {b}"
        )));
    }
    Ok(())
}

/// `make_standard_character`: chi_V = sum_i (x_i + x_i^-1).
pub fn make_standard_character(genus: usize) -> Result<SymCharacter> {
    SymCharacter::standard(genus)
}
