mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use surface_lie::formulas::chi_piece;
use surface_lie::lieoracle::{
    free_lie_character, relation_element, verify_character, LieOracle, DEFAULT_BUDGET,
};
use surface_lie::rational::int;
use surface_lie::series::{sym_series, ufree_series, CharSeries};
use surface_lie::{CharRing, Error, SymCharacter, SymplecticMatrix};

#[test]
fn pbw_for_the_free_lie_algebra() {
    for g in 1..=2 {
        let order = 6;
        let mut product = CharSeries::<SymCharacter>::one(g, order);
        for i in 1..=order {
            let chi = free_lie_character(g, i as u64).unwrap().to_laurent();
            product = product
                .checked_mul(&sym_series(&chi, i, order).unwrap())
                .unwrap();
        }
        assert_eq!(product, ufree_series(g, order).unwrap(), "genus {g}");
    }
}

#[test]
fn layers_are_invariant_under_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let o = LieOracle::build(2, 5, DEFAULT_BUDGET).unwrap();
    for _ in 0..4 {
        let m = common::random_symplectic(2, &mut rng);
        for n in 2..=5 {
            let r = o.ideal(n).unwrap();
            assert!(r.is_invariant_under(&m), "r_{n}");
            assert!(r.is_subspace_of(o.free_lie(n).unwrap()));
        }
    }
}

#[test]
fn dimensions_agree_for_genus_three() {
    let o = LieOracle::build(3, 4, DEFAULT_BUDGET).unwrap();
    for n in 1..=4 {
        let formula = chi_piece(3, n as u64).unwrap().dimension();
        assert_eq!(
            formula,
            int(o.quotient_dimension(n).unwrap() as i64),
            "N = {n}"
        );
    }
    assert!(o
        .free_lie(2)
        .unwrap()
        .contains(&relation_element(3).unwrap())
        .unwrap());
}

#[test]
fn torus_traces_vanish() {
    let m = SymplecticMatrix::from_rows(1, vec![vec![2, 1], vec![1, 1]]).unwrap();
    for n in 1..=6 {
        let report = verify_character(1, n, std::slice::from_ref(&m), DEFAULT_BUDGET).unwrap();
        assert!(report.pass);
        let expected = if n == 1 { "3" } else { "0" };
        assert_eq!(report.checks[0].oracle, expected);
    }
}

#[test]
fn budget_error_names_the_size() {
    match verify_character(3, 6, &[], DEFAULT_BUDGET) {
        Err(Error::ResourceLimit(msg)) => assert!(msg.contains("46656"), "{msg}"),
        other => panic!("expected a resource limit, got {other:?}"),
    }
    assert!(verify_character(2, 7, &[], DEFAULT_BUDGET).is_ok());
}
