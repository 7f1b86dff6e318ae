//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quiverdef::corpus::{build, Family, Params};
use quiverdef::{Algebra, Field, Matrix, Representation};

pub fn d3r(field: Field) -> Arc<Algebra> {
    build(Family::D3R, &Params(vec![1, 2, 2, 2]), field).expect("corpus algebra")
}

pub fn random_matrix(field: Field, rows: usize, cols: usize, seed: u64) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..rows * cols).map(|_| rng.gen_range(0..field.p())).collect();
    Matrix::from_vec(field, rows, cols, data)
}

pub fn module(alg: &Arc<Algebra>, word: &str) -> Representation {
    Representation::string_module(alg, word).expect("string module")
}
