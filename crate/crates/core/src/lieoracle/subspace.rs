use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::tensor::{axpy, decode, from_hashmap, letter_to_basis, SparseVec, TensorElement};
use crate::charring::SymplecticMatrix;
use crate::error::{invalid_arg, Result};
use crate::rational::Rational;

/// A subspace of `V^{⊗N}` held as an exact reduced row-echelon basis over
/// the word coordinates.
///
/// Rows are keyed by pivot column. Every row has coefficient 1 at its pivot
/// and 0 at every other pivot, so the echelon form is canonical and two
/// subspaces are equal exactly when their row maps are equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedSubspace {
    letters: u32,
    degree: usize,
    rows: BTreeMap<u64, SparseVec>,
}

impl GradedSubspace {
    pub fn new(letters: u32, degree: usize) -> Self {
        GradedSubspace {
            letters,
            degree,
            rows: BTreeMap::new(),
        }
    }

    /// Echelonized span of the given elements.
    pub fn span<'a, I>(letters: u32, degree: usize, elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a TensorElement>,
    {
        let mut s = Self::new(letters, degree);
        for e in elements {
            s.insert(e)?;
        }
        Ok(s)
    }

    pub fn letters(&self) -> u32 {
        self.letters
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = u64> + '_ {
        self.rows.keys().copied()
    }

    /// Basis rows in pivot order.
    pub fn basis(&self) -> Vec<TensorElement> {
        self.rows
            .values()
            .map(|r| TensorElement::from_sparse(self.letters, self.degree, r.clone()))
            .collect()
    }

    fn check_shape(&self, v: &TensorElement) -> Result<()> {
        if v.letters() != self.letters || v.degree() != self.degree {
            return invalid_arg(format!(
                "element of degree {} over {} letters does not live in degree {} over {} letters",
                v.degree(),
                v.letters(),
                self.degree,
                self.letters
            ));
        }
        Ok(())
    }

    /// Remainder of `v` after eliminating every pivot column.
    fn reduce(&self, v: &[(u64, Rational)]) -> SparseVec {
        // Rows vanish on foreign pivots, so each pivot coefficient of v can
        // be cleared independently.
        let hits: Vec<(&SparseVec, &Rational)> = v
            .iter()
            .filter_map(|(w, c)| self.rows.get(w).map(|row| (row, c)))
            .collect();
        if hits.is_empty() {
            return v.to_vec();
        }
        if hits.len() == 1 {
            return axpy(v, &-hits[0].1, hits[0].0);
        }
        let mut acc: HashMap<u64, Rational> = v.iter().cloned().collect();
        for (row, c) in hits {
            for (w, r) in row {
                *acc.entry(*w).or_insert_with(Rational::zero) -= c * r;
            }
        }
        from_hashmap(acc)
    }

    pub fn contains(&self, v: &TensorElement) -> Result<bool> {
        self.check_shape(v)?;
        Ok(self.reduce(v.sparse()).is_empty())
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &TensorElement) -> Result<bool> {
        self.check_shape(v)?;
        let rem = self.reduce(v.sparse());
        let Some((pivot, lead)) = rem.first().cloned() else {
            return Ok(false);
        };
        let inv = lead.recip();
        let new_row: SparseVec = rem.into_iter().map(|(w, c)| (w, c * &inv)).collect();
        debug_assert!(new_row[0].1.is_one());
        for row in self.rows.values_mut() {
            if let Ok(i) = row.binary_search_by_key(&pivot, |(w, _)| *w) {
                let c = -row[i].1.clone();
                *row = axpy(row, &c, &new_row);
            }
        }
        self.rows.insert(pivot, new_row);
        Ok(true)
    }

    pub fn is_subspace_of(&self, other: &GradedSubspace) -> bool {
        self.letters == other.letters
            && self.degree == other.degree
            && self.rows.values().all(|r| other.reduce(r).is_empty())
    }

    /// Whether `M` maps the subspace into itself.
    pub fn is_invariant_under(&self, m: &SymplecticMatrix) -> bool {
        self.basis()
            .iter()
            .all(|b| self.reduce(b.act(m).sparse()).is_empty())
    }

    /// Trace of `M` restricted to this subspace, assuming it is invariant.
    ///
    /// With a reduced echelon basis `b_i` (pivots `p_i`) the coordinate of
    /// `M b_i` along `b_i` is just `(M b_i)[p_i]`, so only one entry of each
    /// image is needed.
    pub fn trace_of(&self, m: &SymplecticMatrix) -> Rational {
        let k = self.letters;
        let g = (k / 2) as usize;
        // entry[r][c] = M[basis(r)][basis(c)] over letters
        let entry: Vec<Vec<Rational>> = (0..k as u8)
            .map(|r| {
                (0..k as u8)
                    .map(|c| {
                        Rational::from_integer(
                            m.entry(letter_to_basis(r, g), letter_to_basis(c, g))
                                .clone(),
                        )
                    })
                    .collect()
            })
            .collect();
        let mut total = Rational::zero();
        for (pivot, row) in &self.rows {
            let p = decode(*pivot, k, self.degree);
            for (w, c) in row {
                let u = decode(*w, k, self.degree);
                let mut prod = c.clone();
                for (pr, uc) in p.iter().zip(u.iter()) {
                    let e = &entry[*pr as usize][*uc as usize];
                    if e.is_zero() {
                        prod = Rational::zero();
                        break;
                    }
                    prod *= e;
                }
                total += prod;
            }
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn word(letters: u32, w: &[u8]) -> TensorElement {
        TensorElement::from_words(letters, w.len(), [(w.to_vec(), int(1))]).unwrap()
    }

    #[test]
    fn rref_is_canonical() {
        let a = word(2, &[0, 1]);
        let b = word(2, &[1, 0]);
        let s1 = GradedSubspace::span(2, 2, [&a.add(&b), &a.sub(&b)]).unwrap();
        let s2 = GradedSubspace::span(2, 2, [&b, &a]).unwrap();
        assert_eq!(s1, s2);
        assert_eq!(s1.dim(), 2);
    }

    #[test]
    fn dependent_rows_do_not_grow() {
        let a = word(2, &[0, 1]);
        let b = word(2, &[1, 1]);
        let mut s = GradedSubspace::new(2, 2);
        assert!(s.insert(&a.add(&b)).unwrap());
        assert!(s.insert(&a).unwrap());
        assert!(!s.insert(&b).unwrap());
        assert!(s.contains(&b.sub(&a)).unwrap());
        assert!(!s.contains(&word(2, &[0, 0])).unwrap());
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let mut s = GradedSubspace::new(2, 2);
        assert!(s.insert(&word(2, &[0])).is_err());
    }

    #[test]
    fn trace_of_identity_is_dimension() {
        let a = word(4, &[0, 3]);
        let b = word(4, &[2, 1]).add(&word(4, &[1, 2]));
        let s = GradedSubspace::span(4, 2, [&a, &b]).unwrap();
        let id = SymplecticMatrix::identity(2).unwrap();
        assert_eq!(s.trace_of(&id), int(2));
    }

    #[test]
    fn trace_on_whole_tensor_square() {
        // trace of M (x) M on V (x) V is tr(M)^2
        let m = SymplecticMatrix::from_rows(1, vec![vec![2, 1], vec![1, 1]]).unwrap();
        let all: Vec<TensorElement> = (0..4u8).map(|i| word(2, &[i / 2, i % 2])).collect();
        let s = GradedSubspace::span(2, 2, all.iter()).unwrap();
        assert!(s.is_invariant_under(&m));
        assert_eq!(s.trace_of(&m), int(9));
    }
}
