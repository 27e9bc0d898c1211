use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::{check_genus, check_same_genus, CharRing};
use crate::error::{invalid_arg, Error, Result};
use crate::rational::{format_rational, int, parse_rational, Rational};

/// Exponent vector of a Laurent monomial `x_1^e_1 ... x_g^e_g`.
pub type Exponents = SmallVec<[i32; 4]>;

/// Representative of the Weyl orbit of `e` in the dominant chamber:
/// absolute values sorted into weakly decreasing order.
pub fn dominant(e: &[i32]) -> Exponents {
    let mut d: Exponents = e.iter().map(|x| x.abs()).collect();
    d.sort_unstable_by(|a, b| b.cmp(a));
    d
}

/// A virtual character of Sp(2g) as a Laurent polynomial in the eigenvalue
/// variables, invariant under permutations and inversions of the variables.
///
/// The full Weyl orbit of every monomial is stored, so equality is plain
/// structural equality.
#[derive(Clone, PartialEq, Eq)]
pub struct SymCharacter {
    genus: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl SymCharacter {
    /// Builds a character from explicit terms. Repeated exponents are summed;
    /// the result must be Weyl-invariant.
    pub fn from_terms<I>(genus: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i32>, Rational)>,
    {
        check_genus(genus)?;
        let mut map: BTreeMap<Exponents, Rational> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != genus {
                return invalid_arg(format!(
                    "exponent vector {e:?} has length {} but genus is {genus}",
                    e.len()
                ));
            }
            *map.entry(Exponents::from_vec(e))
                .or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        let chi = SymCharacter { genus, terms: map };
        if !chi.is_weyl_invariant() {
            return invalid_arg("terms are not invariant under the Weyl group of type C");
        }
        Ok(chi)
    }

    /// Sums `c * (orbit sum of x^e)` over the given dominant exponents.
    pub fn from_orbit_sums<I>(genus: usize, orbit_coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i32>, Rational)>,
    {
        check_genus(genus)?;
        let mut acc: HashMap<Exponents, Rational> = HashMap::new();
        for (e, c) in orbit_coeffs {
            if e.len() != genus {
                return invalid_arg(format!(
                    "exponent vector {e:?} does not match genus {genus}"
                ));
            }
            for w in weyl_orbit(&e) {
                *acc.entry(w).or_insert_with(Rational::zero) += &c;
            }
        }
        Ok(Self::from_map(genus, acc))
    }

    pub(crate) fn from_map(genus: usize, map: HashMap<Exponents, Rational>) -> Self {
        let terms = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        SymCharacter { genus, terms }
    }

    /// Caller guarantees Weyl invariance.
    pub(crate) fn from_btree_unchecked(
        genus: usize,
        mut terms: BTreeMap<Exponents, Rational>,
    ) -> Self {
        terms.retain(|_, c| !c.is_zero());
        SymCharacter { genus, terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[i32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lexicographically largest monomial. For an invariant character this
    /// is always dominant.
    pub fn leading_term(&self) -> Option<(&Exponents, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Checks invariance under the generators of the hyperoctahedral group:
    /// adjacent transpositions and the sign flip of the first coordinate.
    pub fn is_weyl_invariant(&self) -> bool {
        let g = self.genus;
        self.terms.iter().all(|(e, c)| {
            let mut flipped = e.clone();
            flipped[0] = -flipped[0];
            if self.terms.get(&flipped) != Some(c) {
                return false;
            }
            (0..g.saturating_sub(1)).all(|i| {
                let mut swapped = e.clone();
                swapped.swap(i, i + 1);
                self.terms.get(&swapped) == Some(c)
            })
        })
    }

    /// Exact value at the eigenvalues `x_1..x_g` (the other half of the
    /// spectrum being their inverses).
    pub fn evaluate(&self, eigenvalues: &[Rational]) -> Result<Rational> {
        if eigenvalues.len() != self.genus {
            return invalid_arg(format!(
                "expected {} eigenvalues, got {}",
                self.genus,
                eigenvalues.len()
            ));
        }
        if eigenvalues.iter().any(Zero::is_zero) {
            return invalid_arg("eigenvalues must be nonzero");
        }
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (x, &k) in eigenvalues.iter().zip(e.iter()) {
                m *= x.pow(k);
            }
            total += m;
        }
        Ok(total)
    }

    /// Terms in canonical order: by dominant representative, then by the
    /// exponent vector itself, highest first.
    pub fn canonical_terms(&self) -> Vec<(&Exponents, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| (dominant(b.0), b.0).cmp(&(dominant(a.0), a.0)));
        v
    }

    pub fn to_serial(&self) -> Vec<CharTerm> {
        self.canonical_terms()
            .into_iter()
            .map(|(e, c)| CharTerm {
                exponents: e.to_vec(),
                coefficient: format_rational(c),
            })
            .collect()
    }

    pub fn from_serial(genus: usize, terms: &[CharTerm]) -> Result<Self> {
        let parsed = terms
            .iter()
            .map(|t| Ok((t.exponents.clone(), parse_rational(&t.coefficient)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(genus, parsed)
    }
}

/// Serialized Laurent term: `{exponents: [...], coefficient: "p/q"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharTerm {
    pub exponents: Vec<i32>,
    pub coefficient: String,
}

impl CharRing for SymCharacter {
    fn genus(&self) -> usize {
        self.genus
    }

    fn zero(genus: usize) -> Self {
        SymCharacter {
            genus,
            terms: BTreeMap::new(),
        }
    }

    fn constant(genus: usize, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Exponents::from_elem(0, genus), c);
        }
        SymCharacter { genus, terms }
    }

    fn standard(genus: usize) -> Result<Self> {
        check_genus(genus)?;
        let mut terms = BTreeMap::new();
        for i in 0..genus {
            for s in [1, -1] {
                let mut e = Exponents::from_elem(0, genus);
                e[i] = s;
                terms.insert(e, int(1));
            }
        }
        Ok(SymCharacter { genus, terms })
    }

    fn checked_add(&self, other: &Self) -> Result<Self> {
        check_same_genus(self.genus, other.genus)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            *terms.entry(e.clone()).or_insert_with(Rational::zero) += c;
        }
        Ok(Self::from_btree_unchecked(self.genus, terms))
    }

    fn checked_sub(&self, other: &Self) -> Result<Self> {
        check_same_genus(self.genus, other.genus)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            *terms.entry(e.clone()).or_insert_with(Rational::zero) -= c;
        }
        Ok(Self::from_btree_unchecked(self.genus, terms))
    }

    fn checked_mul(&self, other: &Self) -> Result<Self> {
        check_same_genus(self.genus, other.genus)?;
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc: HashMap<Exponents, Rational> = HashMap::with_capacity(large.terms.len() * 2);
        let mut buf = Exponents::from_elem(0, self.genus);
        for (e, c) in &small.terms {
            for (f, d) in &large.terms {
                for i in 0..buf.len() {
                    buf[i] = e[i] + f[i];
                }
                let prod = c * d;
                match acc.get_mut(&buf) {
                    Some(v) => *v += prod,
                    None => {
                        acc.insert(buf.clone(), prod);
                    }
                }
            }
        }
        Ok(Self::from_map(self.genus, acc))
    }

    fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.genus);
        }
        let terms = self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect();
        SymCharacter {
            genus: self.genus,
            terms,
        }
    }

    fn adams(&self, d: i64) -> Result<Self> {
        if d < 1 {
            return invalid_arg(format!("Adams index must be positive, got {d}"));
        }
        let d = i32::try_from(d)
            .map_err(|_| Error::InvalidArgument(format!("Adams index {d} too large")))?;
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().map(|x| x * d).collect(), c.clone()))
            .collect();
        Ok(SymCharacter {
            genus: self.genus,
            terms,
        })
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    fn dimension(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    fn to_laurent(&self) -> SymCharacter {
        self.clone()
    }
}

/// All distinct images of `e` under signed permutations.
pub(crate) fn weyl_orbit(e: &[i32]) -> Vec<Exponents> {
    let mut out: Vec<Exponents> = signed_permutations(e.len())
        .map(|(perm, signs, _)| (0..e.len()).map(|i| signs[i] * e[perm[i]]).collect())
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Iterates the hyperoctahedral group of rank `g` as
/// `(permutation, sign flips, determinant sign)`.
pub(crate) fn signed_permutations(g: usize) -> impl Iterator<Item = (Vec<usize>, Vec<i32>, i32)> {
    permutations(g).into_iter().flat_map(move |(perm, psign)| {
        (0u32..(1u32 << g)).map(move |mask| {
            let signs: Vec<i32> = (0..g)
                .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                .collect();
            let flips = mask.count_ones() as i32;
            let sign = if flips % 2 == 0 { psign } else { -psign };
            (perm.clone(), signs, sign)
        })
    })
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i32)> {
    // Heap's algorithm; each step is one transposition.
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = vec![(a.clone(), 1)];
    let mut c = vec![0usize; n];
    let mut sign = 1;
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            sign = -sign;
            out.push((a.clone(), sign));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

impl fmt::Display for SymCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.canonical_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let constant = e.iter().all(|&k| k == 0);
            if constant {
                write!(f, "{}", format_rational(&mag))?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{}*", format_rational(&mag))?;
            }
            let mut first = true;
            for (j, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                if k == 1 {
                    write!(f, "x{}", j + 1)?;
                } else {
                    write!(f, "x{}^{}", j + 1, k)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SymCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymCharacter[g={}]({})", self.genus, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn chi_v(g: usize) -> SymCharacter {
        SymCharacter::standard(g).unwrap()
    }

    #[test]
    fn standard_character_terms() {
        let v1 = chi_v(1);
        assert_eq!(v1.len(), 2);
        assert_eq!(v1.coefficient(&[1]), int(1));
        assert_eq!(v1.coefficient(&[-1]), int(1));
        let v2 = chi_v(2);
        assert_eq!(v2.len(), 4);
        assert_eq!(v2.coefficient(&[0, -1]), int(1));
        assert_eq!(chi_v(3).dimension(), int(6));
        assert!(matches!(
            SymCharacter::standard(0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn square_of_standard_genus_one() {
        let v = chi_v(1);
        let sq = v.checked_mul(&v).unwrap();
        let expect = SymCharacter::from_terms(
            1,
            vec![(vec![2], int(1)), (vec![0], int(2)), (vec![-2], int(1))],
        )
        .unwrap();
        assert_eq!(sq, expect);
        assert_eq!(chi_v(2).checked_pow(2).unwrap().dimension(), int(16));
    }

    #[test]
    fn additive_inverse_is_zero() {
        let v = chi_v(2);
        assert!(v.checked_add(&v.scale(&int(-1))).unwrap().is_zero());
    }

    #[test]
    fn genus_mismatch_and_negative_power() {
        assert!(matches!(
            chi_v(1).checked_mul(&chi_v(2)),
            Err(Error::IncompatibleOperands(_))
        ));
        assert!(matches!(
            chi_v(1).checked_pow(-1),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn adams_substitutes_powers() {
        let a = chi_v(1).adams(2).unwrap();
        let expect =
            SymCharacter::from_terms(1, vec![(vec![2], int(1)), (vec![-2], int(1))]).unwrap();
        assert_eq!(a, expect);
        for d in 1..6 {
            assert_eq!(chi_v(3).adams(d).unwrap().dimension(), int(6));
        }
        assert!(chi_v(1).adams(0).is_err());
    }

    #[test]
    fn evaluate_standard_at_three() {
        assert_eq!(chi_v(1).evaluate(&[int(3)]).unwrap(), ratio(10, 3));
        assert!(chi_v(1).evaluate(&[int(0)]).is_err());
        assert!(chi_v(2).evaluate(&[int(1)]).is_err());
    }

    #[test]
    fn rejects_non_invariant_terms() {
        assert!(SymCharacter::from_terms(1, vec![(vec![1], int(1))]).is_err());
        assert!(
            SymCharacter::from_terms(2, vec![(vec![1, 0], int(1)), (vec![-1, 0], int(1))]).is_err()
        );
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(weyl_orbit(&[1, 0]).len(), 4);
        assert_eq!(weyl_orbit(&[2, 1]).len(), 8);
        assert_eq!(weyl_orbit(&[1, 1, 1]).len(), 8);
        assert_eq!(signed_permutations(3).count(), 48);
        let total: i32 = signed_permutations(3).map(|(_, _, s)| s).sum();
        assert_eq!(total, 0);
    }

    #[test]
    fn serial_round_trip() {
        let chi = chi_v(2).checked_pow(3).unwrap().scale(&ratio(1, 3));
        let back = SymCharacter::from_serial(2, &chi.to_serial()).unwrap();
        assert_eq!(back, chi);
    }
}
