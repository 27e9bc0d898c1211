#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use surface_lie::SymplecticMatrix;

const SL2: [[[i64; 2]; 2]; 5] = [
    [[1, 0], [0, 1]],
    [[1, 1], [0, 1]],
    [[1, 0], [-1, 1]],
    [[0, -1], [1, 0]],
    [[2, 1], [1, 1]],
];

/// A product of a random block matrix and a few random transvections.
pub fn random_symplectic(genus: usize, rng: &mut ChaCha8Rng) -> SymplecticMatrix {
    let blocks: Vec<[[i64; 2]; 2]> = (0..genus)
        .map(|_| SL2[rng.gen_range(0..SL2.len())])
        .collect();
    let mut m = SymplecticMatrix::from_sl2_blocks(&blocks).unwrap();
    for _ in 0..rng.gen_range(1..=3) {
        let v: Vec<i64> = (0..2 * genus).map(|_| rng.gen_range(-1..=1)).collect();
        m = m
            .multiply(&SymplecticMatrix::transvection(genus, &v).unwrap())
            .unwrap();
    }
    m
}

/// Unipotent matrices that are not diagonalizable.
pub fn transvections(genus: usize) -> Vec<SymplecticMatrix> {
    let mut e = vec![0i64; 2 * genus];
    e[0] = 1;
    let mut f = vec![1i64; 2 * genus];
    f[genus] = -1;
    vec![
        SymplecticMatrix::transvection(genus, &e).unwrap(),
        SymplecticMatrix::transvection(genus, &f).unwrap(),
    ]
}
