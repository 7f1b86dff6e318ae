//! Exact arithmetic over prime fields and dense matrices.

mod field;
mod matrix;
mod subspace;

pub use field::{Field, FieldElem, MAX_CHARACTERISTIC};
pub use matrix::{Elimination, Matrix, Rref};
pub use subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("{0} is not a supported prime characteristic")]
    NotPrime(u32),
    #[error("characteristic mismatch: GF({0}) vs GF({1})")]
    CharacteristicMismatch(u32, u32),
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn matrix_strategy() -> impl Strategy<Value = Matrix> {
        (prop::sample::select(vec![2u32, 3, 5]), 1usize..7, 1usize..7).prop_flat_map(
            |(p, r, c)| {
                prop::collection::vec(0..p, r * c).prop_map(move |data| {
                    Matrix::from_vec(Field::new(p).unwrap(), r, c, data)
                })
            },
        )
    }

    proptest! {
        #[test]
        fn rank_nullity(a in matrix_strategy()) {
            let k = a.kernel();
            prop_assert_eq!(a.rank() + k.cols(), a.cols());
            prop_assert!(a.mul(&k).is_zero());
            prop_assert_eq!(k.rank(), k.cols());
        }

        #[test]
        fn solve_reproduces_rhs(a in matrix_strategy(), seed in any::<u64>()) {
            let f = a.field();
            let x0: Vec<u32> = (0..a.cols()).map(|i| ((seed >> (i % 60)) as u32) % f.p()).collect();
            let b = a.mul_vec(&x0);
            let x = a.solve(&b).unwrap().expect("consistent by construction");
            prop_assert_eq!(a.mul_vec(&x), b);
        }

        #[test]
        fn reduction_is_deterministic(a in matrix_strategy()) {
            let r1 = a.rref();
            let r2 = a.clone().rref();
            prop_assert_eq!(r1.reduced, r2.reduced);
            prop_assert_eq!(r1.pivots, r2.pivots);
        }
    }
}
