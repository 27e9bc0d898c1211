use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::{check_genus, check_same_genus, CharRing, SymCharacter, SymplecticMatrix};
use crate::error::{invalid_arg, Error, Result};
use crate::rational::{format_rational, int, parse_rational, Rational};

/// A monomial `q_{d_1}^{e_1} q_{d_2}^{e_2} ...`, stored as `(d, e)` pairs with
/// strictly increasing `d` and positive `e`. The empty monomial is 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PtMonomial(SmallVec<[(u32, u32); 4]>);

impl PtMonomial {
    pub fn one() -> Self {
        PtMonomial(SmallVec::new())
    }

    /// `q_d^e`.
    pub fn power(d: u32, e: u32) -> Self {
        if e == 0 {
            return Self::one();
        }
        PtMonomial(smallvec::smallvec![(d, e)])
    }

    pub fn from_pairs(pairs: &[(u32, u32)]) -> Result<Self> {
        let mut m: BTreeMap<u32, u32> = BTreeMap::new();
        for &(d, e) in pairs {
            if d == 0 {
                return invalid_arg("power-trace symbols start at q_1");
            }
            *m.entry(d).or_insert(0) += e;
        }
        Ok(PtMonomial(m.into_iter().filter(|&(_, e)| e > 0).collect()))
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.0
    }

    /// Weighted degree, `q_d` having degree `d`.
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&(d, e)| d as u64 * e as u64).sum()
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = SmallVec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        PtMonomial(out)
    }
}

impl fmt::Debug for PtMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PtMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, &(d, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "q{d}")?;
            } else {
                write!(f, "q{d}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A class function written as a polynomial in the power traces
/// `q_d = tr(M^d)` of the defining representation.
#[derive(Clone, PartialEq, Eq)]
pub struct PowerTracePoly {
    genus: usize,
    terms: BTreeMap<PtMonomial, Rational>,
}

/// Serialized power-trace term: `{monomial: [[d, e], ...], coefficient: "p/q"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PtTerm {
    pub monomial: Vec<[u32; 2]>,
    pub coefficient: String,
}

impl PowerTracePoly {
    pub fn from_terms<I>(genus: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (PtMonomial, Rational)>,
    {
        check_genus(genus)?;
        let mut map: BTreeMap<PtMonomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            *map.entry(m).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(PowerTracePoly { genus, terms: map })
    }

    /// The bare symbol `q_d`.
    pub fn symbol(genus: usize, d: u32) -> Result<Self> {
        if d == 0 {
            return invalid_arg("power-trace symbols start at q_1");
        }
        Self::from_terms(genus, [(PtMonomial::power(d, 1), int(1))])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PtMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &PtMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether every coefficient in the power-trace basis is an integer.
    /// This is stronger than [`CharRing::is_integral`].
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Largest `d` with `q_d` present.
    pub fn max_symbol(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|&(d, _)| d))
            .max()
            .unwrap_or(0)
    }

    /// Substitutes values for `q_1..q_D` (index 0 holds `q_1`).
    pub fn substitute(&self, power_traces: &[Rational]) -> Result<Rational> {
        let need = self.max_symbol() as usize;
        if power_traces.len() < need {
            return invalid_arg(format!(
                "need values for q_1..q_{need}, got {}",
                power_traces.len()
            ));
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for &(d, e) in m.pairs() {
                v *= num_traits::pow(power_traces[d as usize - 1].clone(), e as usize);
            }
            total += v;
        }
        Ok(total)
    }

    /// Exact value at a symplectic integer matrix, via `q_d = tr(M^d)`.
    pub fn evaluate_at_matrix(&self, m: &SymplecticMatrix) -> Result<Rational> {
        check_same_genus(self.genus, m.genus())?;
        let traces: Vec<Rational> = m
            .power_traces(self.max_symbol() as usize)
            .into_iter()
            .map(Rational::from_integer)
            .collect();
        self.substitute(&traces)
    }

    /// Like [`evaluate_at_matrix`](Self::evaluate_at_matrix), for values that
    /// are known to be genuine characters: a non-integer result is reported
    /// as an internal consistency failure.
    pub fn evaluate_character_at_matrix(&self, m: &SymplecticMatrix) -> Result<BigInt> {
        let v = self.evaluate_at_matrix(m)?;
        if !v.is_integer() {
            return Err(Error::InternalConsistency(format!(
                "character value {} at a symplectic matrix is not an integer",
                format_rational(&v)
            )));
        }
        Ok(v.to_integer())
    }

    pub fn to_serial(&self) -> Vec<PtTerm> {
        self.terms
            .iter()
            .map(|(m, c)| PtTerm {
                monomial: m.pairs().iter().map(|&(d, e)| [d, e]).collect(),
                coefficient: format_rational(c),
            })
            .collect()
    }

    pub fn from_serial(genus: usize, terms: &[PtTerm]) -> Result<Self> {
        let parsed = terms
            .iter()
            .map(|t| {
                let pairs: Vec<(u32, u32)> = t.monomial.iter().map(|p| (p[0], p[1])).collect();
                Ok((
                    PtMonomial::from_pairs(&pairs)?,
                    parse_rational(&t.coefficient)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(genus, parsed)
    }
}

/// `p_d = sum_i (x_i^d + x_i^-d)`.
fn power_sum_laurent(genus: usize, d: u32) -> SymCharacter {
    SymCharacter::standard(genus)
        .and_then(|v| v.adams(d as i64))
        .expect("genus validated at construction")
}

impl CharRing for PowerTracePoly {
    fn genus(&self) -> usize {
        self.genus
    }

    fn zero(genus: usize) -> Self {
        PowerTracePoly {
            genus,
            terms: BTreeMap::new(),
        }
    }

    fn constant(genus: usize, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(PtMonomial::one(), c);
        }
        PowerTracePoly { genus, terms }
    }

    fn standard(genus: usize) -> Result<Self> {
        Self::symbol(genus, 1)
    }

    fn checked_add(&self, other: &Self) -> Result<Self> {
        check_same_genus(self.genus, other.genus)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            *terms.entry(m.clone()).or_insert_with(Rational::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(PowerTracePoly {
            genus: self.genus,
            terms,
        })
    }

    fn checked_sub(&self, other: &Self) -> Result<Self> {
        check_same_genus(self.genus, other.genus)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            *terms.entry(m.clone()).or_insert_with(Rational::zero) -= c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(PowerTracePoly {
            genus: self.genus,
            terms,
        })
    }

    fn checked_mul(&self, other: &Self) -> Result<Self> {
        check_same_genus(self.genus, other.genus)?;
        let mut acc: HashMap<PtMonomial, Rational> = HashMap::new();
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                *acc.entry(m.mul(n)).or_insert_with(Rational::zero) += c * d;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(PowerTracePoly {
            genus: self.genus,
            terms,
        })
    }

    fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.genus);
        }
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        PowerTracePoly {
            genus: self.genus,
            terms,
        }
    }

    fn adams(&self, d: i64) -> Result<Self> {
        if d < 1 {
            return invalid_arg(format!("Adams index must be positive, got {d}"));
        }
        let d = u32::try_from(d)
            .map_err(|_| Error::InvalidArgument(format!("Adams index {d} too large")))?;
        // q_e -> q_{ed} is injective and order-preserving on symbols.
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mapped = PtMonomial(m.0.iter().map(|&(e, k)| (e * d, k)).collect());
                (mapped, c.clone())
            })
            .collect();
        Ok(PowerTracePoly {
            genus: self.genus,
            terms,
        })
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn is_integral(&self) -> bool {
        self.has_integer_coefficients() || self.to_laurent().is_integral()
    }

    fn dimension(&self) -> Rational {
        let two_g = int(2 * self.genus as i64);
        let traces = vec![two_g; self.max_symbol() as usize];
        self.substitute(&traces).expect("all symbols supplied")
    }

    /// Substitutes `q_d -> sum_i (x_i^d + x_i^-d)` and expands.
    fn to_laurent(&self) -> SymCharacter {
        let g = self.genus;
        let mut powers: HashMap<(u32, u32), SymCharacter> = HashMap::new();
        let mut total = SymCharacter::zero(g);
        for (m, c) in &self.terms {
            let mut term = SymCharacter::constant(g, c.clone());
            for &(d, e) in m.pairs() {
                let p = powers
                    .entry((d, e))
                    .or_insert_with(|| {
                        power_sum_laurent(g, d)
                            .checked_pow(e as i64)
                            .expect("same genus")
                    })
                    .clone();
                term = term.checked_mul(&p).expect("same genus");
            }
            total = total.checked_add(&term).expect("same genus");
        }
        total
    }
}

/// `to_laurent` as a free function.
pub fn to_laurent(p: &PowerTracePoly) -> SymCharacter {
    p.to_laurent()
}

impl fmt::Display for PowerTracePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest-degree monomials first.
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then(a.0.cmp(b.0)));
        for (i, (m, c)) in v.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if m.0.is_empty() {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PowerTracePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PowerTracePoly[g={}]({})", self.genus, self)
    }
}
