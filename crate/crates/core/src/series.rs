//! Truncated power series in `t` with character-ring coefficients.
//!
//! Every Euler–Poincaré series `h(M; t) = sum_i chi_i t^i` lives here.
//! A series carries an explicit inclusive truncation order; arithmetic on
//! two series truncates to the smaller order and never extends it.

use rayon::prelude::*;
use serde::Serialize;

use crate::charring::{check_genus, check_same_genus, CharRing};
use crate::error::{invalid_arg, Error, Result};
use crate::rational::{int, Rational};

#[derive(Clone, PartialEq, Debug)]
pub struct CharSeries<R> {
    genus: usize,
    coeffs: Vec<R>,
}

impl<R: CharRing> CharSeries<R> {
    /// Coefficients of `t^0 .. t^order`; the order is `coeffs.len() - 1`.
    pub fn new(genus: usize, coeffs: Vec<R>) -> Result<Self> {
        check_genus(genus)?;
        if coeffs.is_empty() {
            return Err(Error::InvalidSeries(
                "a series needs at least the constant term".into(),
            ));
        }
        for c in &coeffs {
            check_same_genus(genus, c.genus())?;
        }
        Ok(CharSeries { genus, coeffs })
    }

    pub fn zero(genus: usize, order: usize) -> Self {
        CharSeries {
            genus,
            coeffs: vec![R::zero(genus); order + 1],
        }
    }

    pub fn one(genus: usize, order: usize) -> Self {
        let mut s = Self::zero(genus, order);
        s.coeffs[0] = R::one(genus);
        s
    }

    /// Sparse constructor: unspecified degrees are zero, degrees beyond
    /// `order` are dropped.
    pub fn from_terms(genus: usize, order: usize, terms: Vec<(usize, R)>) -> Result<Self> {
        check_genus(genus)?;
        let mut s = Self::zero(genus, order);
        for (deg, c) in terms {
            check_same_genus(genus, c.genus())?;
            if deg <= order {
                s.coeffs[deg] = s.coeffs[deg].checked_add(&c)?;
            }
        }
        Ok(s)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &R {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order()) + 1;
        CharSeries {
            genus: self.genus,
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    fn common(&self, other: &Self) -> Result<usize> {
        check_same_genus(self.genus, other.genus)?;
        Ok(self.order().min(other.order()))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let order = self.common(other)?;
        let coeffs = (0..=order)
            .map(|n| self.coeffs[n].checked_add(&other.coeffs[n]))
            .collect::<Result<_>>()?;
        Ok(CharSeries {
            genus: self.genus,
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let order = self.common(other)?;
        let coeffs = (0..=order)
            .map(|n| self.coeffs[n].checked_sub(&other.coeffs[n]))
            .collect::<Result<_>>()?;
        Ok(CharSeries {
            genus: self.genus,
            coeffs,
        })
    }

    /// Cauchy product; this is the tensor product of graded modules.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let order = self.common(other)?;
        let coeffs = (0..=order)
            .into_par_iter()
            .map(|n| {
                sum_of(
                    self.genus,
                    (0..=n).map(|k| self.coeffs[k].checked_mul(&other.coeffs[n - k])),
                )
            })
            .collect::<Result<_>>()?;
        Ok(CharSeries {
            genus: self.genus,
            coeffs,
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CharSeries {
            genus: self.genus,
            coeffs: self.coeffs.iter().map(|x| x.scale(c)).collect(),
        }
    }

    /// Multiplies by `t^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let mut s = Self::zero(self.genus, self.order());
        for n in k..=self.order() {
            s.coeffs[n] = self.coeffs[n - k].clone();
        }
        s
    }

    fn require_constant(&self, expect_one: bool, what: &str) -> Result<()> {
        let c0 = &self.coeffs[0];
        let ok = if expect_one {
            *c0 == R::one(self.genus)
        } else {
            c0.is_zero()
        };
        if !ok {
            let need = if expect_one { "1" } else { "0" };
            return Err(Error::InvalidSeries(format!(
                "{what} requires constant term {need}"
            )));
        }
        Ok(())
    }

    /// Multiplicative inverse of a series with constant term 1.
    pub fn inverse(&self) -> Result<Self> {
        self.require_constant(true, "inverse")?;
        let mut b: Vec<R> = Vec::with_capacity(self.coeffs.len());
        b.push(R::one(self.genus));
        for n in 1..=self.order() {
            let s = sum_of(
                self.genus,
                (1..=n)
                    .into_par_iter()
                    .map(|k| self.coeffs[k].checked_mul(&b[n - k]))
                    .collect::<Vec<_>>(),
            )?;
            b.push(s.scale(&int(-1)));
        }
        Ok(CharSeries {
            genus: self.genus,
            coeffs: b,
        })
    }

    /// Formal logarithm of a series with constant term 1, via
    /// `n b_n = n a_n - sum_{k<n} k b_k a_{n-k}`.
    pub fn log(&self) -> Result<Self> {
        self.require_constant(true, "log")?;
        let a = &self.coeffs;
        let mut b: Vec<R> = Vec::with_capacity(a.len());
        b.push(R::zero(self.genus));
        for n in 1..=self.order() {
            let conv = sum_of(
                self.genus,
                (1..n)
                    .into_par_iter()
                    .map(|k| Ok(b[k].checked_mul(&a[n - k])?.scale(&int(k as i64))))
                    .collect::<Vec<_>>(),
            )?;
            let nb = a[n].scale(&int(n as i64)).checked_sub(&conv)?;
            b.push(nb.scale(&Rational::new(1.into(), (n as i64).into())));
        }
        Ok(CharSeries {
            genus: self.genus,
            coeffs: b,
        })
    }

    /// Formal exponential of a series with constant term 0, via
    /// `n b_n = sum_{k=1}^{n} k a_k b_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        self.require_constant(false, "exp")?;
        let a = &self.coeffs;
        let mut b: Vec<R> = Vec::with_capacity(a.len());
        b.push(R::one(self.genus));
        for n in 1..=self.order() {
            let conv = sum_of(
                self.genus,
                (1..=n)
                    .into_par_iter()
                    .filter(|&k| !a[k].is_zero())
                    .map(|k| Ok(a[k].checked_mul(&b[n - k])?.scale(&int(k as i64))))
                    .collect::<Vec<_>>(),
            )?;
            b.push(conv.scale(&Rational::new(1.into(), (n as i64).into())));
        }
        Ok(CharSeries {
            genus: self.genus,
            coeffs: b,
        })
    }

    /// Coefficientwise dimension (value at the identity).
    pub fn dimensions(&self) -> Vec<Rational> {
        self.coeffs.iter().map(CharRing::dimension).collect()
    }

    pub fn map<S: CharRing>(&self, f: impl Fn(&R) -> S + Sync + Send) -> CharSeries<S>
    where
        R: Sync,
    {
        CharSeries {
            genus: self.genus,
            coeffs: self.coeffs.par_iter().map(f).collect(),
        }
    }

    /// First degree at which the two series differ, up to the common order.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let order = self.order().min(other.order());
        (0..=order).find(|&n| self.coeffs[n] != other.coeffs[n])
    }
}

fn sum_of<R: CharRing>(genus: usize, items: impl IntoIterator<Item = Result<R>>) -> Result<R> {
    let mut acc = R::zero(genus);
    for x in items {
        acc = acc.checked_add(&x?)?;
    }
    Ok(acc)
}

/// `h(U(g); t) = 1 / (1 - t chi_V + t^2)`.
pub fn ueg_series<R: CharRing>(genus: usize, order: usize) -> Result<CharSeries<R>> {
    let v = R::standard(genus)?;
    let denom = CharSeries::from_terms(
        genus,
        order,
        vec![
            (0, R::one(genus)),
            (1, v.scale(&int(-1))),
            (2, R::one(genus)),
        ],
    )?;
    denom.inverse()
}

/// `h(U(F(V)); t) = 1 / (1 - t chi_V)`, the tensor algebra on `V`.
pub fn ufree_series<R: CharRing>(genus: usize, order: usize) -> Result<CharSeries<R>> {
    let v = R::standard(genus)?;
    let denom = CharSeries::from_terms(
        genus,
        order,
        vec![(0, R::one(genus)), (1, v.scale(&int(-1)))],
    )?;
    denom.inverse()
}

/// Series of the symmetric algebra on a module with character `chi` placed
/// in degree `degree`: `exp(sum_{d>=1} psi^d(chi) / d * t^{degree*d})`.
pub fn sym_series<R: CharRing>(chi: &R, degree: usize, order: usize) -> Result<CharSeries<R>> {
    if degree < 1 {
        return invalid_arg("placement degree must be at least 1");
    }
    if !chi.is_integral() {
        return invalid_arg("symmetric powers need an integral character");
    }
    let genus = chi.genus();
    let mut terms = Vec::new();
    let mut d = 1;
    while degree * d <= order {
        let c = chi
            .adams(d as i64)?
            .scale(&Rational::new(1.into(), (d as i64).into()));
        terms.push((degree * d, c));
        d += 1;
    }
    let s = CharSeries::from_terms(genus, order, terms)?.exp()?;
    if let Some(n) = s.coeffs.iter().position(|c| !c.is_integral()) {
        return Err(Error::InternalConsistency(format!(
            "symmetric-power character in degree {n} is not integral"
        )));
    }
    Ok(s)
}

/// JSON form: `{"order": T, "coefficients": [...]}` with coefficients
/// serialized by `f`.
#[derive(Debug, Clone, Serialize)]
pub struct SeriesSerial<T> {
    pub order: usize,
    pub coefficients: Vec<T>,
}

impl<R: CharRing> CharSeries<R> {
    pub fn to_serial<T>(&self, f: impl Fn(&R) -> T) -> SeriesSerial<T> {
        SeriesSerial {
            order: self.order(),
            coefficients: self.coeffs.iter().map(f).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charring::{PowerTracePoly, SymCharacter};

    type L = SymCharacter;

    fn dims<R: CharRing>(s: &CharSeries<R>) -> Vec<Rational> {
        s.dimensions()
    }

    #[test]
    fn geometric_series() {
        let s = CharSeries::from_terms(2, 4, vec![(0, L::one(2)), (1, L::constant(2, int(-1)))])
            .unwrap();
        let inv = s.inverse().unwrap();
        for n in 0..=4 {
            assert_eq!(*inv.coeff(n), L::one(2));
        }
    }

    #[test]
    fn log_of_exp_is_identity() {
        let v = L::standard(2).unwrap();
        let s = CharSeries::from_terms(2, 5, vec![(1, v.clone())]).unwrap();
        assert_eq!(s.exp().unwrap().log().unwrap(), s);
    }

    #[test]
    fn inverse_times_self_is_one() {
        let u = ueg_series::<L>(2, 6).unwrap();
        let denom = u.inverse().unwrap();
        assert_eq!(u.checked_mul(&denom).unwrap(), CharSeries::one(2, 6));
    }

    #[test]
    fn constant_term_checks() {
        let s = CharSeries::from_terms(1, 3, vec![(0, L::constant(1, int(2)))]).unwrap();
        assert!(matches!(s.inverse(), Err(Error::InvalidSeries(_))));
        assert!(matches!(s.log(), Err(Error::InvalidSeries(_))));
        assert!(matches!(s.exp(), Err(Error::InvalidSeries(_))));
    }

    #[test]
    fn mixed_orders_truncate_to_minimum() {
        let a = ueg_series::<PowerTracePoly>(2, 5).unwrap();
        let b = ufree_series::<PowerTracePoly>(2, 3).unwrap();
        assert_eq!(a.checked_mul(&b).unwrap().order(), 3);
        assert_eq!(a.checked_add(&b).unwrap().order(), 3);
        let c = ufree_series::<PowerTracePoly>(1, 3).unwrap();
        assert!(matches!(
            a.checked_add(&c),
            Err(Error::IncompatibleOperands(_))
        ));
    }

    #[test]
    fn ueg_genus_two_dimensions() {
        // u_n = 4 u_{n-1} - u_{n-2}
        let mut u = vec![1i64, 4];
        for n in 2..=5 {
            u.push(4 * u[n - 1] - u[n - 2]);
        }
        assert_eq!(u, vec![1, 4, 15, 56, 209, 780]);
        let s = ueg_series::<L>(2, 5).unwrap();
        assert_eq!(dims(&s), u.iter().map(|&x| int(x)).collect::<Vec<_>>());
        let v = L::standard(2).unwrap();
        assert_eq!(
            *s.coeff(2),
            v.checked_mul(&v).unwrap().checked_sub(&L::one(2)).unwrap()
        );
    }

    #[test]
    fn ueg_torus_is_n_plus_one() {
        let s = ueg_series::<L>(1, 8).unwrap();
        for n in 0..=8 {
            assert_eq!(s.coeff(n).dimension(), int(n as i64 + 1));
        }
    }

    #[test]
    fn ufree_is_powers_of_standard() {
        let s = ufree_series::<PowerTracePoly>(3, 5).unwrap();
        let v = PowerTracePoly::standard(3).unwrap();
        for n in 0..=5 {
            assert_eq!(*s.coeff(n), v.checked_pow(n as i64).unwrap());
        }
    }

    #[test]
    fn sym_of_trivial_is_geometric() {
        let s = sym_series(&L::one(3), 1, 4).unwrap();
        for n in 0..=4 {
            assert_eq!(*s.coeff(n), L::one(3));
        }
    }

    #[test]
    fn sym_of_standard_torus_by_direct_expansion() {
        // Sym^n of the 2-dim module with eigenvalues x, 1/x: sum_j x^j x^-(n-j).
        let s = sym_series(&L::standard(1).unwrap(), 1, 7).unwrap();
        for n in 0..=7i32 {
            let direct = L::from_terms(1, (0..=n).map(|j| (vec![2 * j - n], int(1)))).unwrap();
            assert_eq!(*s.coeff(n as usize), direct);
        }
    }

    #[test]
    fn sym_in_degree_two_counts_monomials() {
        let chi = L::standard(2).unwrap().checked_pow(2).unwrap(); // dim 16
        let s = sym_series(&chi, 2, 8).unwrap();
        let binom = |n: i64, k: i64| (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1));
        for k in 0..=4 {
            assert_eq!(
                s.coeff(2 * k).dimension(),
                int(binom(16 + k as i64 - 1, k as i64))
            );
            if 2 * k < 8 {
                assert!(s.coeff(2 * k + 1).is_zero());
            }
        }
    }

    #[test]
    fn sym_rejects_bad_input() {
        let v = L::standard(1).unwrap();
        assert!(sym_series(&v, 0, 3).is_err());
        assert!(sym_series(&v.scale(&crate::rational::ratio(1, 2)), 1, 3).is_err());
    }
}
