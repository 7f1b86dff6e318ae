use std::sync::Arc;

use crate::algebra::Algebra;
use crate::linalg::Matrix;
use crate::module::{hom_space, is_isomorphic, same_algebra, ModuleMap, Representation};

use super::{projective_cover, strip_projectives, HomalgError};

/// Right multiplication by arrow `α: i → j`, as a map `A e_j → A e_i`.
pub(crate) fn right_multiplication(alg: &Arc<Algebra>, a: usize) -> ModuleMap {
    let arr = &alg.arrows()[a];
    let (i, j) = (arr.source, arr.target);
    let (pj_dims, pj_index) = crate::module::projective_basis(alg, j);
    let (pi_dims, pi_index) = crate::module::projective_basis(alg, i);
    let f = alg.field();
    let mut comps: Vec<Matrix> = pj_dims
        .iter()
        .zip(&pi_dims)
        .map(|(&s, &t)| Matrix::zeros(f, t, s))
        .collect();
    let ab = alg.arrow_basis_index(a);
    for (x, slot) in pj_index.iter().enumerate() {
        let Some((w, col)) = *slot else { continue };
        for (z, c) in alg.product(x, ab) {
            let (w2, row) = pi_index[z].expect("x·α starts at i");
            debug_assert_eq!(w2, w);
            comps[w].set(row, col, c);
        }
    }
    ModuleMap { components: comps }
}

/// `ν(M) = D Hom_A(M, A)`.
pub fn nakayama(m: &Representation) -> Representation {
    let alg = m.algebra();
    let f = m.field();
    let nv = alg.num_vertices();
    let homs: Vec<_> = (0..nv)
        .map(|j| hom_space(m, &Representation::projective(alg, j)))
        .collect();
    let dims: Vec<usize> = homs.iter().map(|h| h.dim()).collect();
    let maps = alg
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arr)| {
            let rho = right_multiplication(alg, a);
            // C: Hom(M, P_j) → Hom(M, P_i); ν gets Cᵀ: D Hom(M,P_i) → D Hom(M,P_j)
            let (i, j) = (arr.source, arr.target);
            let mut c = Matrix::zeros(f, dims[i], dims[j]);
            for (col, h) in homs[j].maps.iter().enumerate() {
                let coords = homs[i]
                    .coordinates(&h.then(&rho))
                    .expect("composite is a module map");
                for (row, x) in coords.into_iter().enumerate() {
                    c.set(row, col, x);
                }
            }
            c.transpose()
        })
        .collect();
    Representation::new(alg, dims, maps).expect("Nakayama functor yields a module")
}

/// `π` with `injective(j) ≅ projective(π(j))`, if the algebra is self-injective.
pub fn nakayama_permutation(alg: &Arc<Algebra>) -> Option<Vec<usize>> {
    let nv = alg.num_vertices();
    let projectives: Vec<Representation> =
        (0..nv).map(|i| Representation::projective(alg, i)).collect();
    (0..nv)
        .map(|j| {
            let inj = Representation::injective(alg, j);
            projectives
                .iter()
                .position(|p| is_isomorphic(&inj, p, j as u64).is_yes())
        })
        .collect()
}

pub fn is_self_injective(alg: &Arc<Algebra>) -> bool {
    nakayama_permutation(alg).is_some()
}

/// `ν(P_i) ≅ P_i` for every vertex.
pub fn is_symmetric(alg: &Arc<Algebra>) -> bool {
    (0..alg.num_vertices()).all(|i| {
        let p = Representation::projective(alg, i);
        is_isomorphic(&nakayama(&p), &p, i as u64).is_yes()
    })
}

fn require_self_injective(alg: &Arc<Algebra>) -> Result<(), HomalgError> {
    if is_self_injective(alg) {
        Ok(())
    } else {
        Err(HomalgError::NotSelfInjective(alg.name().to_string()))
    }
}

/// `τ M = Ω² ν M` with projective summands removed.
pub fn ar_translate(m: &Representation) -> Result<Representation, HomalgError> {
    require_self_injective(m.algebra())?;
    Ok(ar_translate_unchecked(m))
}

pub(crate) fn ar_translate_unchecked(m: &Representation) -> Representation {
    let nu = strip_projectives(&nakayama(m)).core;
    let o1 = strip_projectives(&projective_cover(&nu).syzygy).core;
    strip_projectives(&projective_cover(&o1).syzygy).core
}

fn dualize<F>(m: &Representation, op_fn: F) -> Representation
where
    F: Fn(&Representation) -> Representation,
{
    let alg = m.algebra();
    let op = alg.opposite();
    let dm = m.dual_over(&op);
    let out = op_fn(&dm);
    debug_assert!(same_algebra(out.algebra(), &op));
    out.dual_over(alg)
}

/// `Ω⁻¹ M = D Ω D M`, computed through the opposite algebra.
pub fn cosyzygy(m: &Representation) -> Representation {
    dualize(m, |d| strip_projectives(&projective_cover(&strip_projectives(d).core).syzygy).core)
}

/// `τ⁻¹ M = D τ D M`.
pub fn inverse_ar_translate(m: &Representation) -> Result<Representation, HomalgError> {
    require_self_injective(m.algebra())?;
    Ok(dualize(m, ar_translate_unchecked))
}
