//! Irreducible characters of Sp(2g) and decomposition of virtual characters.
//!
//! Irreducible characters come from the type-C Weyl character formula,
//! evaluated as an exact Laurent division of the alternating sum over the
//! hyperoctahedral group. Decomposition strips highest weights greedily.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::charring::laurent::signed_permutations;
use crate::charring::{dominant, CharRing, Exponents, SymCharacter};
use crate::error::{invalid_arg, Error, Result};
use crate::rational::{int, Rational};

/// Highest weight of an irreducible Sp(2g) representation: a weakly
/// decreasing sequence of at most `genus` nonnegative parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    genus: usize,
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>, genus: usize) -> Result<Self> {
        crate::charring::check_genus(genus)?;
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return invalid_arg(format!("partition {parts:?} is not weakly decreasing"));
        }
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.len() > genus {
            return invalid_arg(format!(
                "partition {parts:?} has more than {genus} nonzero parts"
            ));
        }
        Ok(Partition { genus, parts })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Nonzero parts.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Parts padded with zeros to length `genus`.
    pub fn padded(&self) -> Vec<u32> {
        let mut p = self.parts.clone();
        p.resize(self.genus, 0);
        p
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    fn shifted_by_rho(&self) -> Vec<i32> {
        let g = self.genus;
        self.padded()
            .iter()
            .enumerate()
            .map(|(i, &p)| p as i32 + (g - i) as i32)
            .collect()
    }

    /// All partitions with `size` boxes and at most `genus` parts.
    pub fn all_of_size(size: u32, genus: usize) -> Vec<Partition> {
        fn rec(rem: u32, max: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if rem == 0 {
                out.push(cur.clone());
                return;
            }
            if slots == 0 {
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, slots - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(size, size, genus, &mut Vec::new(), &mut out);
        out.into_iter()
            .map(|parts| Partition { genus, parts })
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.padded().iter().map(|p| p.to_string()).collect();
        write!(f, "({})", cells.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Weyl dimension formula for type C_g.
pub fn irrep_dimension(lambda: &Partition) -> BigInt {
    let l = lambda.shifted_by_rho();
    let rho = Partition {
        genus: lambda.genus,
        parts: vec![],
    }
    .shifted_by_rho();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..l.len() {
        num *= l[i];
        den *= rho[i];
        for j in i + 1..l.len() {
            num *= (l[i] - l[j]) * (l[i] + l[j]);
            den *= (rho[i] - rho[j]) * (rho[i] + rho[j]);
        }
    }
    num / den
}

/// `sum_{w in W} sign(w) x^{w(exponents)}`.
fn alternant(exponents: &[i32]) -> BTreeMap<Exponents, Rational> {
    let g = exponents.len();
    let mut out = BTreeMap::new();
    for (perm, signs, sign) in signed_permutations(g) {
        let e: Exponents = (0..g).map(|i| signs[i] * exponents[perm[i]]).collect();
        *out.entry(e).or_insert_with(Rational::zero) += int(sign as i64);
    }
    out.retain(|_, c: &mut Rational| !c.is_zero());
    out
}

/// Exact Laurent long division under lexicographic order.
fn exact_divide(
    numerator: BTreeMap<Exponents, Rational>,
    divisor: &BTreeMap<Exponents, Rational>,
) -> Result<BTreeMap<Exponents, Rational>> {
    let (lead_d, lead_c) = divisor.iter().next_back().expect("nonzero divisor");
    let trail_d = divisor.keys().next().expect("nonzero divisor");
    let lowest_quotient: Option<Exponents> = numerator
        .keys()
        .next()
        .map(|t| t.iter().zip(trail_d.iter()).map(|(a, b)| a - b).collect());
    let mut rem = numerator;
    let mut quotient = BTreeMap::new();
    while let Some((e, c)) = rem.iter().next_back() {
        let q_exp: Exponents = e.iter().zip(lead_d.iter()).map(|(a, b)| a - b).collect();
        if lowest_quotient.as_ref().is_some_and(|low| q_exp < *low) {
            return Err(Error::InternalConsistency(
                "Weyl character division left a nonzero remainder".into(),
            ));
        }
        let q_c = c / lead_c;
        for (f, d) in divisor {
            let key: Exponents = q_exp.iter().zip(f.iter()).map(|(a, b)| a + b).collect();
            let slot = rem.entry(key.clone()).or_insert_with(Rational::zero);
            *slot -= &q_c * d;
            if slot.is_zero() {
                rem.remove(&key);
            }
        }
        quotient.insert(q_exp, q_c);
    }
    Ok(quotient)
}

/// Irreducible characters behind a shared cache. Cloning shares the cache.
#[derive(Clone, Default)]
pub struct Decomposer {
    cache: Arc<RwLock<HashMap<Partition, Arc<SymCharacter>>>>,
}

impl Decomposer {
    pub fn new() -> Self {
        Self::default()
    }

    /// Character of the irreducible representation with highest weight
    /// `lambda`, as a ratio of alternants.
    pub fn irreducible_character(&self, lambda: &Partition) -> Result<Arc<SymCharacter>> {
        if let Some(hit) = self.cache.read().expect("cache lock").get(lambda) {
            return Ok(hit.clone());
        }
        let chi = Arc::new(weyl_character(lambda)?);
        self.cache
            .write()
            .expect("cache lock")
            .entry(lambda.clone())
            .or_insert_with(|| chi.clone());
        Ok(chi)
    }

    /// Greedy highest-weight decomposition into irreducibles, in emission
    /// order (decreasing highest weight).
    pub fn decompose(&self, chi: &SymCharacter) -> Result<Vec<(Partition, BigInt)>> {
        if !chi.is_integral() {
            return invalid_arg("only integral characters can be decomposed");
        }
        if !chi.is_weyl_invariant() {
            return invalid_arg("character is not Weyl-invariant");
        }
        let genus = chi.genus();
        let mut rest = chi.clone();
        let mut out = Vec::new();
        let mut last: Option<Exponents> = None;
        while let Some((e, c)) = rest.leading_term() {
            let e = e.clone();
            if dominant(&e) != e {
                return Err(Error::InternalConsistency(format!(
                    "leading monomial {e:?} is not dominant"
                )));
            }
            if last.as_ref().is_some_and(|prev| e >= *prev) {
                return Err(Error::InternalConsistency(format!(
                    "leading weight {e:?} did not decrease during decomposition"
                )));
            }
            let mult = c.to_integer();
            let lambda = Partition::new(e.iter().map(|&x| x as u32).collect(), genus)?;
            let irr = self.irreducible_character(&lambda)?;
            rest = rest.checked_sub(&irr.scale(&Rational::from_integer(mult.clone())))?;
            out.push((lambda, mult));
            last = Some(e);
        }
        Ok(out)
    }

    /// `sum_lambda m_lambda chi_lambda`.
    pub fn reconstruct(&self, genus: usize, parts: &[(Partition, BigInt)]) -> Result<SymCharacter> {
        let mut acc = SymCharacter::zero(genus);
        for (lambda, m) in parts {
            let irr = self.irreducible_character(lambda)?;
            acc = acc.checked_add(&irr.scale(&Rational::from_integer(m.clone())))?;
        }
        Ok(acc)
    }
}

fn weyl_character(lambda: &Partition) -> Result<SymCharacter> {
    let g = lambda.genus;
    let rho = Partition {
        genus: g,
        parts: vec![],
    }
    .shifted_by_rho();
    let num = alternant(&lambda.shifted_by_rho());
    let den = alternant(&rho);
    let quotient = exact_divide(num, &den)?;
    let chi = SymCharacter::from_btree_unchecked(g, quotient);
    let highest: Exponents = lambda.padded().iter().map(|&p| p as i32).collect();
    let lead_ok = chi
        .leading_term()
        .is_some_and(|(e, c)| *e == highest && c.is_one());
    if !lead_ok || !chi.is_integral() || !chi.is_weyl_invariant() {
        return Err(Error::InternalConsistency(format!(
            "Weyl character for {lambda} failed its postconditions"
        )));
    }
    Ok(chi)
}

/// Character of the irreducible representation with highest weight `lambda`.
pub fn irreducible_character(lambda: &Partition) -> Result<SymCharacter> {
    weyl_character(lambda)
}

/// One-shot decomposition with a private cache.
pub fn decompose(chi: &SymCharacter) -> Result<Vec<(Partition, BigInt)>> {
    Decomposer::new().decompose(chi)
}

/// Serialized decomposition entry: `{partition: [...], multiplicity: n}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompTerm {
    pub partition: Vec<u32>,
    pub multiplicity: i64,
}

pub fn to_serial(parts: &[(Partition, BigInt)]) -> Result<Vec<DecompTerm>> {
    parts
        .iter()
        .map(|(lambda, m)| {
            let multiplicity = m.to_i64().ok_or_else(|| {
                Error::ResourceLimit(format!("multiplicity {m} does not fit in 64 bits"))
            })?;
            Ok(DecompTerm {
                partition: lambda.padded(),
                multiplicity,
            })
        })
        .collect()
}
