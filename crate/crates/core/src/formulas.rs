//! Closed-form characters of the graded pieces and the series identities
//! that tie them to the enveloping-algebra series.
//!
//! With `-log(1 - t chi_V + t^2) = sum_N A_N t^N`, the character of the
//! degree-N piece is
//!
//! ```text
//! N chi_N = sum_{d | N} mu(N/d) d psi^{N/d}(A_d)
//! ```
//!
//! where `psi^k` is the Adams operation. Everything is produced in
//! power-trace form; `to_laurent` gives the eigenvalue form.

use rayon::prelude::*;
use serde::Serialize;

use crate::charring::{CharRing, PowerTracePoly, PtMonomial, SymCharacter};
use crate::error::{invalid_arg, Error, Result};
use crate::rational::{int, Rational};
use crate::series::{sym_series, ueg_series, ufree_series, CharSeries};

/// Möbius function.
pub fn mobius(n: u64) -> Result<i64> {
    if n < 1 {
        return invalid_arg("the Möbius function is defined for n >= 1");
    }
    let mut n = n;
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return Ok(0);
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    Ok(mu)
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn binomial(n: u64, k: u64) -> Rational {
    let mut acc = num_bigint::BigInt::from(1);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    Rational::from_integer(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AMethod {
    /// `A_N = sum_k q_1^{N-2k} C(N-k, k) (-1)^k / (N-k)`.
    Binomial,
    /// `A_N = s_N / N` with `s_0 = 2`, `s_1 = q_1`, `s_N = q_1 s_{N-1} - s_{N-2}`:
    /// the power sums of the two roots of `z^2 - q_1 z + 1`.
    Recurrence,
}

/// The coefficient `A_N` of `t^N` in `-log(1 - t chi_V + t^2)`.
pub fn a_coeff(genus: usize, n: u64, method: AMethod) -> Result<PowerTracePoly> {
    if n < 1 {
        return invalid_arg("A_N is defined for N >= 1");
    }
    match method {
        AMethod::Binomial => {
            let terms = (0..=n / 2).map(|k| {
                let mut c = binomial(n - k, k) / int((n - k) as i64);
                if k % 2 == 1 {
                    c = -c;
                }
                (PtMonomial::power(1, (n - 2 * k) as u32), c)
            });
            PowerTracePoly::from_terms(genus, terms)
        }
        AMethod::Recurrence => {
            let s = root_power_sum(genus, n)?;
            Ok(s.scale(&Rational::new(1.into(), (n as i64).into())))
        }
    }
}

/// `s_N = alpha^N + beta^N` where `alpha + beta = q_1`, `alpha beta = 1`.
/// Equal to `N A_N`, hence integral.
pub fn root_power_sum(genus: usize, n: u64) -> Result<PowerTracePoly> {
    let q1 = PowerTracePoly::standard(genus)?;
    let mut prev = PowerTracePoly::constant(genus, int(2));
    let mut cur = q1.clone();
    if n == 0 {
        return Ok(prev);
    }
    for _ in 1..n {
        let next = q1.checked_mul(&cur)?.checked_sub(&prev)?;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// The character `chi_N` of the degree-N graded piece, in power-trace form.
///
/// Fails with an internal consistency error if the result is not a virtual
/// character (non-integral in the eigenvalue basis).
pub fn chi_piece(genus: usize, n: u64) -> Result<PowerTracePoly> {
    let chi = chi_piece_unchecked(genus, n)?;
    if !chi.to_laurent().is_integral() {
        return Err(Error::InternalConsistency(format!(
            "chi_{n} at genus {genus} is not integral after division by {n}"
        )));
    }
    Ok(chi)
}

fn chi_piece_unchecked(genus: usize, n: u64) -> Result<PowerTracePoly> {
    if n < 1 {
        return invalid_arg("graded pieces start in degree 1");
    }
    let mut acc = PowerTracePoly::zero(genus);
    for d in divisors(n) {
        let mu = mobius(n / d)?;
        if mu == 0 {
            continue;
        }
        let a = a_coeff(genus, d, AMethod::Recurrence)?.adams((n / d) as i64)?;
        acc = acc.checked_add(&a.scale(&int(mu * d as i64)))?;
    }
    Ok(acc.scale(&Rational::new(1.into(), (n as i64).into())))
}

/// `chi_1 .. chi_max`, computed concurrently, in degree order.
pub fn chi_pieces(genus: usize, max: u64) -> Result<Vec<PowerTracePoly>> {
    (1..=max)
        .into_par_iter()
        .map(|n| chi_piece(genus, n))
        .collect()
}

/// Dirichlet-convolution side of the log identity:
/// `sum_{d i = n} psi^d(chi_i) / d`, with `pieces[i-1] = chi_i`.
pub fn a_from_pieces<R: CharRing>(pieces: &[R], n: u64) -> Result<R> {
    if n < 1 || n as usize > pieces.len() {
        return invalid_arg(format!("need pieces chi_1..chi_{n}"));
    }
    let genus = pieces[0].genus();
    let mut acc = R::zero(genus);
    for d in divisors(n) {
        let i = (n / d) as usize;
        let term = pieces[i - 1]
            .adams(d as i64)?
            .scale(&Rational::new(1.into(), (d as i64).into()));
        acc = acc.checked_add(&term)?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeCheck {
    pub degree: usize,
    pub pass: bool,
}

/// Outcome of an identity check; failures are data, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub genus: usize,
    pub order: usize,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure_degree: Option<usize>,
    #[serde(skip)]
    pub degrees: Vec<DegreeCheck>,
}

impl IdentityReport {
    fn from_checks(identity: &str, genus: usize, order: usize, degrees: Vec<DegreeCheck>) -> Self {
        let first_failure_degree = degrees.iter().find(|d| !d.pass).map(|d| d.degree);
        IdentityReport {
            identity: identity.to_string(),
            genus,
            order,
            pass: first_failure_degree.is_none(),
            first_failure_degree,
            degrees,
        }
    }
}

fn check_order(order: usize) -> Result<()> {
    if order < 1 {
        return invalid_arg("verification order must be at least 1");
    }
    Ok(())
}

fn laurent_pieces(genus: usize, order: usize) -> Result<Vec<SymCharacter>> {
    let pieces = chi_pieces(genus, order as u64)?;
    Ok(pieces.par_iter().map(CharRing::to_laurent).collect())
}

/// Checks, degree by degree in the eigenvalue basis, that the logarithm of
/// `1/(1 - t chi_V + t^2)` has coefficients `A_N` and that these equal
/// `sum_{d i = N} psi^d(chi_i)/d`.
pub fn verify_log_identity(genus: usize, order: usize) -> Result<IdentityReport> {
    check_order(order)?;
    let log = ueg_series::<SymCharacter>(genus, order)?.log()?;
    let pieces = laurent_pieces(genus, order)?;
    let checks = (1..=order)
        .into_par_iter()
        .map(|n| {
            let from_pieces = a_from_pieces(&pieces, n as u64)?;
            let closed = a_coeff(genus, n as u64, AMethod::Binomial)?.to_laurent();
            let c = log.coeff(n);
            Ok(DegreeCheck {
                degree: n,
                pass: *c == from_pieces && *c == closed,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IdentityReport::from_checks("log", genus, order, checks))
}

/// Checks `prod_i h(Sym(g_i); t) = 1/(1 - t chi_V + t^2)` to the given order.
pub fn verify_pbw(genus: usize, order: usize) -> Result<IdentityReport> {
    check_order(order)?;
    let pieces = laurent_pieces(genus, order)?;
    let factors = pieces
        .par_iter()
        .enumerate()
        .map(|(i, chi)| sym_series(chi, i + 1, order))
        .collect::<Result<Vec<_>>>()?;
    let mut prod = CharSeries::<SymCharacter>::one(genus, order);
    for f in &factors {
        prod = prod.checked_mul(f)?;
    }
    let target = ueg_series::<SymCharacter>(genus, order)?;
    Ok(IdentityReport::from_checks(
        "pbw",
        genus,
        order,
        degree_checks(&prod, &target),
    ))
}

/// Checks `1/(1 - t chi_V) = h / (1 - t^2 h)` with `h = 1/(1 - t chi_V + t^2)`.
pub fn verify_labute_series(genus: usize, order: usize) -> Result<IdentityReport> {
    check_order(order)?;
    let h = ueg_series::<SymCharacter>(genus, order)?;
    let free = ufree_series::<SymCharacter>(genus, order)?;
    // h(U(r)) = 1 / (1 - t^2 h)
    let u_r = CharSeries::one(genus, order)
        .checked_sub(&h.shift(2))?
        .inverse()?;
    let rhs = h.checked_mul(&u_r)?;
    Ok(IdentityReport::from_checks(
        "labute",
        genus,
        order,
        degree_checks(&free, &rhs),
    ))
}

fn degree_checks<R: CharRing>(a: &CharSeries<R>, b: &CharSeries<R>) -> Vec<DegreeCheck> {
    let order = a.order().min(b.order());
    (0..=order)
        .map(|n| DegreeCheck {
            degree: n,
            pass: a.coeff(n) == b.coeff(n),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn q(g: usize, d: u32, e: u32) -> PowerTracePoly {
        PowerTracePoly::from_terms(g, [(PtMonomial::power(d, e), int(1))]).unwrap()
    }

    fn konst(g: usize, c: Rational) -> PowerTracePoly {
        PowerTracePoly::constant(g, c)
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(12).unwrap(), 0);
        assert_eq!(mobius(30).unwrap(), -1);
        assert_eq!(mobius(7).unwrap(), -1);
        assert_eq!(mobius(6).unwrap(), 1);
        assert!(mobius(0).is_err());
    }

    #[test]
    fn mobius_divisor_sums_vanish() {
        for b in 1..=1000u64 {
            let s: i64 = divisors(b).into_iter().map(|d| mobius(d).unwrap()).sum();
            assert_eq!(s, if b == 1 { 1 } else { 0 }, "B = {b}");
        }
    }

    #[test]
    fn divisors_sorted() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    #[test]
    fn low_a_coefficients() {
        for g in 1..=3 {
            for m in [AMethod::Binomial, AMethod::Recurrence] {
                assert_eq!(a_coeff(g, 1, m).unwrap(), q(g, 1, 1));
                let a2 = q(g, 1, 2)
                    .scale(&ratio(1, 2))
                    .checked_sub(&konst(g, int(1)))
                    .unwrap();
                assert_eq!(a_coeff(g, 2, m).unwrap(), a2);
                let a3 = q(g, 1, 3)
                    .scale(&ratio(1, 3))
                    .checked_sub(&q(g, 1, 1))
                    .unwrap();
                assert_eq!(a_coeff(g, 3, m).unwrap(), a3);
            }
        }
        assert!(a_coeff(2, 0, AMethod::Binomial).is_err());
    }

    #[test]
    fn n_times_a_at_identity_genus_two() {
        // s_N = 4 s_{N-1} - s_{N-2}, s_0 = 2, s_1 = 4
        let mut s = vec![2i64, 4];
        for n in 2..=6 {
            s.push(4 * s[n - 1] - s[n - 2]);
        }
        assert_eq!(&s[1..], &[4, 14, 52, 194, 724, 2702]);
        for n in 1..=6u64 {
            let a = a_coeff(2, n, AMethod::Binomial).unwrap();
            assert_eq!(a.dimension() * int(n as i64), int(s[n as usize]));
        }
    }

    #[test]
    fn first_two_pieces() {
        assert_eq!(chi_piece(3, 1).unwrap(), q(3, 1, 1));
        let chi2 = q(2, 1, 2)
            .checked_sub(&q(2, 2, 1))
            .unwrap()
            .checked_sub(&konst(2, int(2)))
            .unwrap()
            .scale(&ratio(1, 2));
        assert_eq!(chi_piece(2, 2).unwrap(), chi2);
        assert!(chi_piece(2, 0).is_err());
    }

    #[test]
    fn torus_pieces_vanish_above_one() {
        assert_eq!(chi_piece(1, 1).unwrap().dimension(), int(2));
        for n in 2..=8 {
            assert!(chi_piece(1, n).unwrap().to_laurent().is_zero(), "N = {n}");
        }
    }

    #[test]
    fn genus_two_dimensions() {
        // (1/N) sum_{d|N} mu(N/d) s_d with s from the integer recurrence
        let mut s = vec![2i64, 4];
        for n in 2..=6 {
            s.push(4 * s[n - 1] - s[n - 2]);
        }
        let oracle: Vec<i64> = (1..=6u64)
            .map(|n| {
                let t: i64 = divisors(n)
                    .into_iter()
                    .map(|d| mobius(n / d).unwrap() * s[d as usize])
                    .sum();
                t / n as i64
            })
            .collect();
        assert_eq!(oracle, vec![4, 5, 16, 45, 144, 440]);
        let dims: Vec<Rational> = chi_pieces(2, 6)
            .unwrap()
            .iter()
            .map(|c| c.dimension())
            .collect();
        assert_eq!(dims, oracle.iter().map(|&x| int(x)).collect::<Vec<_>>());
    }

    #[test]
    fn second_piece_dimension_formula() {
        for g in 1..=4usize {
            let expect = 2 * g * g - g - 1;
            assert_eq!(chi_piece(g, 2).unwrap().dimension(), int(expect as i64));
        }
    }

    #[test]
    fn mobius_round_trip_recovers_a() {
        let pieces = chi_pieces(2, 8).unwrap();
        for n in 1..=8u64 {
            assert_eq!(
                a_from_pieces(&pieces, n).unwrap(),
                a_coeff(2, n, AMethod::Binomial).unwrap()
            );
        }
    }

    #[test]
    fn verifiers_pass_small() {
        assert!(verify_pbw(1, 8).unwrap().pass);
        assert!(verify_log_identity(2, 6).unwrap().pass);
        assert!(verify_labute_series(2, 8).unwrap().pass);
        assert!(verify_pbw(2, 0).is_err());
    }

    #[test]
    fn report_serialization_omits_absent_failure() {
        let r = verify_labute_series(1, 3).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            r#"{"identity":"labute","genus":1,"order":3,"pass":true}"#
        );
    }
}
