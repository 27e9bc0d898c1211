use std::collections::HashMap;
use std::fmt;

use super::tensor::TensorElement;
use crate::error::{invalid_arg, Result};

/// A word strictly smaller than each of its proper rotations.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LyndonWord(Vec<u8>);

impl LyndonWord {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if !is_lyndon(&letters) {
            return invalid_arg(format!("{letters:?} is not a Lyndon word"));
        }
        Ok(LyndonWord(letters))
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Standard factorization `w = u v`, `v` the longest proper Lyndon
    /// suffix. `None` for single letters.
    pub fn standard_factorization(&self) -> Option<(LyndonWord, LyndonWord)> {
        let w = &self.0;
        (1..w.len())
            .find(|&i| is_lyndon(&w[i..]))
            .map(|i| (LyndonWord(w[..i].to_vec()), LyndonWord(w[i..].to_vec())))
    }
}

impl fmt::Debug for LyndonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "{s}")
    }
}

pub fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &[&w[i..], &w[..i]].concat()[..])
}

/// Lyndon words of length exactly `n` over `k` letters in lexicographic
/// order (Duval's generation algorithm).
pub fn lyndon_words(k: u32, n: usize) -> Result<Vec<LyndonWord>> {
    if n < 1 {
        return invalid_arg("Lyndon words have positive length");
    }
    if k < 1 {
        return invalid_arg("the alphabet must be nonempty");
    }
    let k = k as u8;
    let mut out = Vec::new();
    let mut w: Vec<u8> = vec![0];
    loop {
        if w.len() == n {
            out.push(LyndonWord(w.clone()));
        }
        // extend periodically to length n
        let m = w.len();
        while w.len() < n {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&(k - 1)) {
            w.pop();
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    Ok(out)
}

/// Standard bracketing of Lyndon words as tensor elements, memoized on
/// subwords.
pub struct Bracketer {
    letters: u32,
    memo: HashMap<Vec<u8>, TensorElement>,
}

impl Bracketer {
    pub fn new(letters: u32) -> Self {
        Bracketer {
            letters,
            memo: HashMap::new(),
        }
    }

    pub fn bracketing(&mut self, w: &LyndonWord) -> TensorElement {
        if let Some(t) = self.memo.get(w.letters()) {
            return t.clone();
        }
        let t = match w.standard_factorization() {
            None => TensorElement::letter(self.letters, w.letters()[0]),
            Some((u, v)) => {
                let pu = self.bracketing(&u);
                let pv = self.bracketing(&v);
                pu.bracket(&pv)
            }
        };
        self.memo.insert(w.letters().to_vec(), t.clone());
        t
    }
}
