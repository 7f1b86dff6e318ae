use serde::Serialize;

use crate::linalg::Matrix;
use crate::module::{is_isomorphic, Representation};

use super::{DeformError, TruncatedLift};

/// Maximal number of candidate coefficient tuples evaluated.
pub const BRUTE_FORCE_BUDGET: usize = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BruteForceResult {
    NoNontrivialFirstOrder,
    /// Lifts with nontrivial first-order part exist over `k[t]/(t^m)` but not beyond.
    MaxOrder { m: usize },
    UnobstructedUpTo { n: usize },
}

fn unknown_shapes(v: &Representation) -> Vec<(usize, usize)> {
    let alg = v.algebra();
    alg.arrows()
        .iter()
        .map(|a| (v.dims()[a.target], v.dims()[a.source]))
        .collect()
}

fn candidate(v: &Representation, shapes: &[(usize, usize)], mut code: u64) -> Vec<Matrix> {
    let f = v.field();
    let p = f.p() as u64;
    shapes
        .iter()
        .map(|&(r, c)| {
            let data = (0..r * c)
                .map(|_| {
                    let x = (code % p) as u32;
                    code /= p;
                    x
                })
                .collect();
            Matrix::from_vec(f, r, c, data)
        })
        .collect()
}

/// Enumerates every coefficient tuple order by order, keeping the lifts
/// whose first-order part gives a non-split self-extension. Independent of
/// the linearized solver: relations are evaluated directly and splitness is
/// decided by an isomorphism test.
pub fn brute_force_obstruction_order(
    v: &Representation,
    max_order: usize,
) -> Result<BruteForceResult, DeformError> {
    if v.dim() > 4 || max_order < 2 {
        return Err(DeformError::OracleOutOfRange);
    }
    let shapes = unknown_shapes(v);
    let unknowns: usize = shapes.iter().map(|&(r, c)| r * c).sum();
    let p = v.field().p() as u64;
    let per_lift = p
        .checked_pow(unknowns as u32)
        .filter(|&n| n <= BRUTE_FORCE_BUDGET as u64)
        .ok_or(DeformError::OracleOutOfRange)?;
    let mut spent = 0usize;
    let mut charge = |n: u64| -> Result<(), DeformError> {
        spent += n as usize;
        if spent > BRUTE_FORCE_BUDGET {
            Err(DeformError::BudgetExceeded { explored: spent })
        } else {
            Ok(())
        }
    };

    let split = v.direct_sum(v).expect("same algebra");
    let base = TruncatedLift::trivial(v, 1);
    let mut level = Vec::new();
    charge(per_lift)?;
    for code in 0..per_lift {
        let l = base.with_top(&candidate(v, &shapes, code));
        if l.is_valid() {
            let (m, _) = l.as_representation();
            if is_isomorphic(&m, &split, code).is_no() {
                level.push(l);
            }
        }
    }
    if level.is_empty() {
        return Ok(BruteForceResult::NoNontrivialFirstOrder);
    }
    for n in 2..max_order {
        let mut next = Vec::new();
        for l in &level {
            charge(per_lift)?;
            for code in 0..per_lift {
                let cand = l.with_top(&candidate(v, &shapes, code));
                let top_ok = cand
                    .relation_values(n + 1)
                    .iter()
                    .all(|r| r[n].is_zero());
                if top_ok {
                    next.push(cand);
                }
            }
        }
        if next.is_empty() {
            return Ok(BruteForceResult::MaxOrder { m: n });
        }
        level = next;
    }
    Ok(BruteForceResult::UnobstructedUpTo { n: max_order })
}
