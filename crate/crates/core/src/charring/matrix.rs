#![allow(clippy::needless_range_loop)]

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::check_genus;
use crate::error::{invalid_arg, Error, Result};

/// An integer matrix preserving the symplectic form, in the basis order
/// `(a_1, ..., a_g, b_1, ..., b_g)` with `J(a_i, b_i) = 1`, `J(b_i, a_i) = -1`.
#[derive(Clone, PartialEq, Eq)]
pub struct SymplecticMatrix {
    genus: usize,
    rows: Vec<Vec<BigInt>>,
}

fn form(genus: usize, i: usize, j: usize) -> i64 {
    if i < genus && j == i + genus {
        1
    } else if i >= genus && j + genus == i {
        -1
    } else {
        0
    }
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

impl SymplecticMatrix {
    pub fn from_rows(genus: usize, rows: Vec<Vec<i64>>) -> Result<Self> {
        Self::from_big_rows(
            genus,
            rows.into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect(),
        )
    }

    /// Validates the shape and `M^T J M = J`.
    pub fn from_big_rows(genus: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        check_genus(genus)?;
        let n = 2 * genus;
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMatrix(format!(
                "expected a {n}x{n} matrix for genus {genus}"
            )));
        }
        let m = SymplecticMatrix { genus, rows };
        if let Some((i, j, v)) = m.form_defect() {
            return Err(Error::InvalidMatrix(format!(
                "M^T J M - J has entry {v} at ({i}, {j}); matrix is not symplectic"
            )));
        }
        Ok(m)
    }

    pub fn identity(genus: usize) -> Result<Self> {
        check_genus(genus)?;
        let n = 2 * genus;
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(SymplecticMatrix { genus, rows })
    }

    /// The symplectic transvection `x -> x + w(v, x) v`, i.e. `I + v v^T J`.
    pub fn transvection(genus: usize, v: &[i64]) -> Result<Self> {
        check_genus(genus)?;
        let n = 2 * genus;
        if v.len() != n {
            return invalid_arg(format!("transvection vector must have length {n}"));
        }
        let mut rows = Self::identity(genus)?.rows;
        for i in 0..n {
            for j in 0..n {
                // (v v^T J)_{ij} = v_i * sum_k v_k J_{kj}
                let vj: i64 = (0..n).map(|k| v[k] * form(genus, k, j)).sum();
                rows[i][j] += BigInt::from(v[i] * vj);
            }
        }
        Self::from_big_rows(genus, rows)
    }

    /// Block matrix acting by `blocks[i]` (determinant 1) on the pair
    /// `(a_i, b_i)`.
    pub fn from_sl2_blocks(blocks: &[[[i64; 2]; 2]]) -> Result<Self> {
        let g = blocks.len();
        check_genus(g)?;
        let mut rows = vec![vec![0i64; 2 * g]; 2 * g];
        for (i, b) in blocks.iter().enumerate() {
            rows[i][i] = b[0][0];
            rows[i][g + i] = b[0][1];
            rows[g + i][i] = b[1][0];
            rows[g + i][g + i] = b[1][1];
        }
        Self::from_rows(g, rows)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn dim(&self) -> usize {
        2 * self.genus
    }

    pub fn entry(&self, row: usize, col: usize) -> &BigInt {
        &self.rows[row][col]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        super::check_same_genus(self.genus, other.genus)?;
        Ok(SymplecticMatrix {
            genus: self.genus,
            rows: mat_mul(&self.rows, &other.rows),
        })
    }

    pub fn trace(&self) -> BigInt {
        (0..self.dim()).map(|i| &self.rows[i][i]).sum()
    }

    /// `[tr(M), tr(M^2), ..., tr(M^max_power)]`.
    pub fn power_traces(&self, max_power: usize) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(max_power);
        let mut p = self.rows.clone();
        for k in 1..=max_power {
            if k > 1 {
                p = mat_mul(&p, &self.rows);
            }
            out.push((0..self.dim()).map(|i| &p[i][i]).sum());
        }
        out
    }

    /// First nonzero entry of `M^T J M - J`, if any.
    fn form_defect(&self) -> Option<(usize, usize, BigInt)> {
        let n = self.dim();
        let g = self.genus;
        // (J M)_{kj} = sum_l J_{kl} M_{lj}; J has one nonzero per row.
        let jm: Vec<Vec<BigInt>> = (0..n)
            .map(|k| {
                let (l, s) = if k < g { (k + g, 1) } else { (k - g, -1) };
                self.rows[l].iter().map(|x| x * s).collect()
            })
            .collect();
        for i in 0..n {
            for j in 0..n {
                let mut v = BigInt::zero();
                for k in 0..n {
                    v += &self.rows[k][i] * &jm[k][j];
                }
                v -= form(g, i, j);
                if !v.is_zero() {
                    return Some((i, j, v));
                }
            }
        }
        None
    }
}

impl fmt::Debug for SymplecticMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymplecticMatrix[g={}](", self.genus)?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_symplectic() {
        for g in 1..4 {
            let id = SymplecticMatrix::identity(g).unwrap();
            assert!(id.form_defect().is_none());
            assert_eq!(id.trace(), BigInt::from(2 * g as i64));
        }
    }

    #[test]
    fn rejects_off_diagonal_perturbation() {
        let mut rows = vec![vec![0i64; 4]; 4];
        for i in 0..4 {
            rows[i][i] = 1;
        }
        rows[0][1] = 1;
        let err = SymplecticMatrix::from_rows(2, rows).unwrap_err();
        assert!(matches!(err, Error::InvalidMatrix(ref m) if m.contains("at (")));
    }

    #[test]
    fn rejects_wrong_shape() {
        assert!(SymplecticMatrix::from_rows(1, vec![vec![1, 0, 0]]).is_err());
    }

    #[test]
    fn genus_one_symplectic_is_sl2() {
        assert!(SymplecticMatrix::from_rows(1, vec![vec![2, 1], vec![1, 1]]).is_ok());
        assert!(SymplecticMatrix::from_rows(1, vec![vec![2, 0], vec![0, 1]]).is_err());
    }

    #[test]
    fn transvections_are_symplectic() {
        let t = SymplecticMatrix::transvection(2, &[1, -2, 3, 1]).unwrap();
        let u = SymplecticMatrix::transvection(2, &[0, 1, 1, 0]).unwrap();
        let p = t.multiply(&u).unwrap();
        assert!(p.form_defect().is_none());
    }

    #[test]
    fn power_traces_of_unipotent() {
        let m = SymplecticMatrix::from_rows(1, vec![vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(m.power_traces(3), vec![BigInt::from(2); 3]);
        let h = SymplecticMatrix::from_rows(1, vec![vec![2, 1], vec![1, 1]]).unwrap();
        // tr(M^k) = L_{2k} (Lucas numbers): 3, 7, 18
        assert_eq!(
            h.power_traces(3),
            vec![BigInt::from(3), BigInt::from(7), BigInt::from(18)]
        );
    }
}
