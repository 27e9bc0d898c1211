//! Brute-force model of the one-relator Lie algebra.
//!
//! The free Lie algebra on `V` (2g letters) is realized inside the tensor
//! powers `V^{⊗N}` through standard bracketings of Lyndon words. The ideal
//! generated by `rho = sum_i [a_i, b_i]` is built layer by layer,
//! `r_2 = span(rho)` and `r_{n+1} = [V, r_n]`, which exhausts the ideal
//! because the free Lie algebra is generated in degree 1. The graded piece
//! in degree N is then `L_N / r_N`, and traces on it are differences of
//! traces on the two invariant subspaces.

mod lyndon;
mod subspace;
mod tensor;

pub use lyndon::{is_lyndon, lyndon_words, Bracketer, LyndonWord};
pub use subspace::GradedSubspace;
pub use tensor::{decode, encode, letter_to_basis, TensorElement};

use rayon::prelude::*;
use serde::Serialize;

use crate::charring::{
    check_genus, check_same_genus, PowerTracePoly, PtMonomial, SymplecticMatrix,
};
use crate::error::{invalid_arg, Error, Result};
use crate::formulas::{chi_piece, divisors, mobius};
use crate::rational::{format_rational, int, Rational};

/// Default cap on the number of word coordinates `(2g)^N`.
pub const DEFAULT_BUDGET: u64 = 20_000;

/// Dimension of the degree-`n` piece of the free Lie algebra on `letters`
/// generators: `(1/n) sum_{d|n} mu(d) letters^{n/d}`.
pub fn witt_count(letters: u64, n: u64) -> u64 {
    let s: i128 = divisors(n)
        .into_iter()
        .map(|d| mobius(d).expect("d >= 1") as i128 * (letters as i128).pow((n / d) as u32))
        .sum();
    (s / n as i128) as u64
}

/// Character of the degree-N piece of the free Lie algebra on `V`:
/// `(1/N) sum_{d|N} mu(d) q_d^{N/d}`.
pub fn free_lie_character(genus: usize, n: u64) -> Result<PowerTracePoly> {
    check_genus(genus)?;
    if n < 1 {
        return invalid_arg("free Lie pieces start in degree 1");
    }
    let terms = divisors(n).into_iter().filter_map(|d| {
        let mu = mobius(d).expect("d >= 1");
        (mu != 0).then(|| {
            (
                PtMonomial::power(d as u32, (n / d) as u32),
                Rational::new(mu.into(), (n as i64).into()),
            )
        })
    });
    PowerTracePoly::from_terms(genus, terms)
}

pub fn lyndon_basis(genus: usize, n: usize) -> Result<Vec<LyndonWord>> {
    check_genus(genus)?;
    lyndon_words(2 * genus as u32, n)
}

/// `rho = sum_i (a_i b_i - b_i a_i)` in `V^{⊗2}`.
pub fn relation_element(genus: usize) -> Result<TensorElement> {
    check_genus(genus)?;
    let k = 2 * genus as u32;
    let mut terms = Vec::new();
    for i in 0..genus as u8 {
        terms.push((vec![2 * i, 2 * i + 1], int(1)));
        terms.push((vec![2 * i + 1, 2 * i], int(-1)));
    }
    TensorElement::from_words(k, 2, terms)
}

fn coordinates(genus: usize, n: usize) -> Option<u64> {
    (2 * genus as u64).checked_pow(n as u32)
}

/// Per-matrix outcome of a trace comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceCheck {
    pub matrix: usize,
    pub oracle: String,
    pub formula: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterReport {
    pub genus: usize,
    pub degree: usize,
    pub pass: bool,
    pub checks: Vec<TraceCheck>,
}

/// Layers `L_1..L_n` and `r_1..r_n`, extended on demand.
#[derive(Clone, Debug)]
pub struct LieOracle {
    genus: usize,
    budget: u64,
    free: Vec<GradedSubspace>,
    ideal: Vec<GradedSubspace>,
}

impl LieOracle {
    pub fn new(genus: usize, budget: u64) -> Result<Self> {
        check_genus(genus)?;
        Ok(LieOracle {
            genus,
            budget,
            free: Vec::new(),
            ideal: Vec::new(),
        })
    }

    /// Oracle with every layer up to `max_degree` already built.
    pub fn build(genus: usize, max_degree: usize, budget: u64) -> Result<Self> {
        let mut o = Self::new(genus, budget)?;
        o.extend_to(max_degree)?;
        Ok(o)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    fn letters(&self) -> u32 {
        2 * self.genus as u32
    }

    pub fn max_degree(&self) -> usize {
        self.free.len()
    }

    pub fn check_budget(&self, n: usize) -> Result<()> {
        match coordinates(self.genus, n) {
            Some(c) if c <= self.budget => Ok(()),
            c => Err(Error::ResourceLimit(format!(
                "degree {n} at genus {} needs {} tensor coordinates, over the budget of {}; use a smaller degree",
                self.genus,
                c.map_or_else(|| "more than 2^64".to_string(), |c| c.to_string()),
                self.budget
            ))),
        }
    }

    pub fn extend_to(&mut self, n: usize) -> Result<()> {
        if n <= self.max_degree() {
            return Ok(());
        }
        self.check_budget(n)?;
        let k = self.letters();
        let start = self.max_degree() + 1;
        let new_free = (start..=n)
            .into_par_iter()
            .map(|d| {
                let mut br = Bracketer::new(k);
                let elems: Vec<TensorElement> = lyndon_words(k, d)?
                    .iter()
                    .map(|w| br.bracketing(w))
                    .collect();
                GradedSubspace::span(k, d, elems.iter())
            })
            .collect::<Result<Vec<_>>>()?;
        self.free.extend(new_free);
        for d in start..=n {
            let layer = match d {
                1 => GradedSubspace::new(k, 1),
                2 => GradedSubspace::span(k, 2, [&relation_element(self.genus)?])?,
                _ => {
                    let prev = self.ideal[d - 2].basis();
                    let candidates: Vec<TensorElement> = (0..k as u8)
                        .into_par_iter()
                        .flat_map_iter(|l| {
                            let x = TensorElement::letter(k, l);
                            prev.iter().map(move |w| x.bracket(w)).collect::<Vec<_>>()
                        })
                        .collect();
                    GradedSubspace::span(k, d, candidates.iter())?
                }
            };
            self.ideal.push(layer);
        }
        Ok(())
    }

    fn layer_index(&self, n: usize) -> Result<usize> {
        if n < 1 || n > self.max_degree() {
            return invalid_arg(format!(
                "degree {n} outside the built range 1..={}",
                self.max_degree()
            ));
        }
        Ok(n - 1)
    }

    /// `L_n`, the degree-n piece of the free Lie algebra inside `V^{⊗n}`.
    pub fn free_lie(&self, n: usize) -> Result<&GradedSubspace> {
        Ok(&self.free[self.layer_index(n)?])
    }

    /// `r_n`, the degree-n piece of the ideal generated by `rho`.
    pub fn ideal(&self, n: usize) -> Result<&GradedSubspace> {
        Ok(&self.ideal[self.layer_index(n)?])
    }

    pub fn quotient_dimension(&self, n: usize) -> Result<usize> {
        Ok(self.free_lie(n)?.dim() - self.ideal(n)?.dim())
    }

    /// Trace of `M` on `L_n / r_n`; always an integer.
    pub fn quotient_trace(&self, n: usize, m: &SymplecticMatrix) -> Result<Rational> {
        check_same_genus(self.genus, m.genus())?;
        let t = self.free_lie(n)?.trace_of(m) - self.ideal(n)?.trace_of(m);
        if !t.is_integer() {
            return Err(Error::InternalConsistency(format!(
                "trace {} on the degree-{n} quotient is not an integer",
                format_rational(&t)
            )));
        }
        Ok(t)
    }

    /// `[r, r]_n = sum_{i+j=n} [r_i, r_j]`.
    pub fn ideal_commutator(&self, n: usize) -> Result<GradedSubspace> {
        self.layer_index(n)?;
        let k = self.letters();
        let mut brackets = Vec::new();
        for i in 2..=n / 2 {
            let j = n - i;
            let left = self.ideal(i)?.basis();
            let right = self.ideal(j)?.basis();
            for u in &left {
                for w in &right {
                    brackets.push(u.bracket(w));
                }
            }
        }
        GradedSubspace::span(k, n, brackets.iter())
    }

    /// Compares the oracle trace with the closed-form character at each
    /// matrix.
    pub fn verify_character(
        &self,
        n: usize,
        matrices: &[SymplecticMatrix],
    ) -> Result<CharacterReport> {
        let chi = chi_piece(self.genus, n as u64)?;
        let checks = matrices
            .par_iter()
            .enumerate()
            .map(|(i, m)| {
                let oracle = self.quotient_trace(n, m)?;
                let formula = chi.evaluate_at_matrix(m)?;
                Ok(TraceCheck {
                    matrix: i,
                    pass: oracle == formula,
                    oracle: format_rational(&oracle),
                    formula: format_rational(&formula),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CharacterReport {
            genus: self.genus,
            degree: n,
            pass: checks.iter().all(|c| c.pass),
            checks,
        })
    }
}

/// Echelonized `L_n`.
pub fn free_lie_subspace(genus: usize, n: usize) -> Result<GradedSubspace> {
    if n < 1 {
        return invalid_arg("free Lie pieces start in degree 1");
    }
    let o = LieOracle::build(genus, n, u64::MAX)?;
    Ok(o.free[n - 1].clone())
}

/// Echelonized `r_n`, `n >= 2`.
pub fn ideal_subspace(genus: usize, n: usize) -> Result<GradedSubspace> {
    if n < 2 {
        return invalid_arg("the ideal starts in degree 2");
    }
    let o = LieOracle::build(genus, n, u64::MAX)?;
    Ok(o.ideal[n - 1].clone())
}

pub fn quotient_dimension(genus: usize, n: usize) -> Result<usize> {
    LieOracle::build(genus, n.max(1), DEFAULT_BUDGET)?.quotient_dimension(n)
}

pub fn quotient_trace(genus: usize, n: usize, m: &SymplecticMatrix) -> Result<Rational> {
    LieOracle::build(genus, n.max(1), DEFAULT_BUDGET)?.quotient_trace(n, m)
}

/// End-to-end check of the closed-form character against the oracle.
pub fn verify_character(
    genus: usize,
    n: usize,
    matrices: &[SymplecticMatrix],
    budget: u64,
) -> Result<CharacterReport> {
    LieOracle::build(genus, n.max(1), budget)?.verify_character(n, matrices)
}
