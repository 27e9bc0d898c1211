use std::collections::HashMap;

use num_traits::Zero;

use crate::charring::SymplecticMatrix;
use crate::error::{invalid_arg, Result};
use crate::rational::Rational;

/// Sparse coordinates over the word basis, sorted by word index.
pub type SparseVec = Vec<(u64, Rational)>;

/// Words of length `n` over `k` letters are encoded base `k`, most
/// significant letter first, so numeric order is lexicographic order.
pub fn encode(word: &[u8], k: u32) -> u64 {
    word.iter().fold(0u64, |acc, &l| acc * k as u64 + l as u64)
}

pub fn decode(mut index: u64, k: u32, n: usize) -> Vec<u8> {
    let mut out = vec![0u8; n];
    for slot in out.iter_mut().rev() {
        *slot = (index % k as u64) as u8;
        index /= k as u64;
    }
    out
}

/// `y + a x`.
pub(crate) fn axpy(y: &[(u64, Rational)], a: &Rational, x: &[(u64, Rational)]) -> SparseVec {
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        let take_y = j == x.len() || (i < y.len() && y[i].0 < x[j].0);
        let take_x = i == y.len() || (j < x.len() && x[j].0 < y[i].0);
        if take_y {
            out.push(y[i].clone());
            i += 1;
        } else if take_x {
            out.push((x[j].0, a * &x[j].1));
            j += 1;
        } else {
            let v = &y[i].1 + a * &x[j].1;
            if !v.is_zero() {
                out.push((y[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub(crate) fn from_hashmap(map: HashMap<u64, Rational>) -> SparseVec {
    let mut v: SparseVec = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    v.sort_unstable_by_key(|(w, _)| *w);
    v
}

/// A homogeneous element of the tensor power `V^{⊗N}` with rational
/// coordinates on words. Letters are ordered `a_1 < b_1 < ... < a_g < b_g`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorElement {
    letters: u32,
    degree: usize,
    terms: SparseVec,
}

impl TensorElement {
    pub fn zero(letters: u32, degree: usize) -> Self {
        TensorElement {
            letters,
            degree,
            terms: Vec::new(),
        }
    }

    pub fn letter(letters: u32, l: u8) -> Self {
        TensorElement {
            letters,
            degree: 1,
            terms: vec![(l as u64, Rational::from_integer(1.into()))],
        }
    }

    pub fn from_words<I>(letters: u32, degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u8>, Rational)>,
    {
        let mut acc = HashMap::new();
        for (w, c) in terms {
            if w.len() != degree {
                return invalid_arg(format!("word {w:?} does not have length {degree}"));
            }
            if w.iter().any(|&l| l as u32 >= letters) {
                return invalid_arg(format!("word {w:?} uses a letter outside the alphabet"));
            }
            *acc.entry(encode(&w, letters))
                .or_insert_with(Rational::zero) += c;
        }
        Ok(TensorElement {
            letters,
            degree,
            terms: from_hashmap(acc),
        })
    }

    pub(crate) fn from_sparse(letters: u32, degree: usize, terms: SparseVec) -> Self {
        TensorElement {
            letters,
            degree,
            terms,
        }
    }

    pub fn letters(&self) -> u32 {
        self.letters
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn sparse(&self) -> &[(u64, Rational)] {
        &self.terms
    }

    pub fn words(&self) -> impl Iterator<Item = (Vec<u8>, &Rational)> + '_ {
        self.terms
            .iter()
            .map(|(w, c)| (decode(*w, self.letters, self.degree), c))
    }

    pub fn coefficient(&self, word: &[u8]) -> Rational {
        let idx = encode(word, self.letters);
        match self.terms.binary_search_by_key(&idx, |(w, _)| *w) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// Concatenation product in the tensor algebra.
    pub fn concat(&self, other: &Self) -> Self {
        let shift = (other.letters as u64).pow(other.degree as u32);
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (u, c) in &self.terms {
            for (w, d) in &other.terms {
                terms.push((u * shift + w, c * d));
            }
        }
        // Already sorted: u-major with w increasing, and w < shift.
        TensorElement {
            letters: self.letters,
            degree: self.degree + other.degree,
            terms,
        }
    }

    /// Commutator `[x, y] = xy - yx`.
    pub fn bracket(&self, other: &Self) -> Self {
        let xy = self.concat(other);
        let yx = other.concat(self);
        let minus_one = Rational::from_integer((-1).into());
        TensorElement {
            letters: self.letters,
            degree: xy.degree,
            terms: axpy(&xy.terms, &minus_one, &yx.terms),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let minus_one = Rational::from_integer((-1).into());
        TensorElement {
            letters: self.letters,
            degree: self.degree,
            terms: axpy(&self.terms, &minus_one, &other.terms),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let one = Rational::from_integer(1.into());
        TensorElement {
            letters: self.letters,
            degree: self.degree,
            terms: axpy(&self.terms, &one, &other.terms),
        }
    }

    /// Diagonal action of `M` on every tensor factor.
    pub fn act(&self, m: &SymplecticMatrix) -> Self {
        let k = self.letters;
        let g = (k / 2) as usize;
        // images[l] = nonzero (letter', M[basis(letter')][basis(l)])
        let images: Vec<Vec<(u64, Rational)>> = (0..k as u8)
            .map(|l| {
                let col = letter_to_basis(l, g);
                (0..k as u8)
                    .filter_map(|r| {
                        let e = m.entry(letter_to_basis(r, g), col);
                        (!e.is_zero()).then(|| (r as u64, Rational::from_integer(e.clone())))
                    })
                    .collect()
            })
            .collect();
        let mut total: HashMap<u64, Rational> = HashMap::new();
        for (w, c) in &self.terms {
            let letters = decode(*w, k, self.degree);
            let mut partial: Vec<(u64, Rational)> = vec![(0, c.clone())];
            for &l in &letters {
                let mut next = Vec::with_capacity(partial.len() * images[l as usize].len());
                for (prefix, pc) in &partial {
                    for (r, mc) in &images[l as usize] {
                        next.push((prefix * k as u64 + r, pc * mc));
                    }
                }
                partial = next;
            }
            for (w2, c2) in partial {
                *total.entry(w2).or_insert_with(Rational::zero) += c2;
            }
        }
        TensorElement {
            letters: k,
            degree: self.degree,
            terms: from_hashmap(total),
        }
    }
}

/// Letter `2i` is `a_{i+1}`, letter `2i+1` is `b_{i+1}`; the matrix basis
/// is ordered `(a_1..a_g, b_1..b_g)`.
pub fn letter_to_basis(l: u8, genus: usize) -> usize {
    let i = (l / 2) as usize;
    if l.is_multiple_of(2) {
        i
    } else {
        genus + i
    }
}
