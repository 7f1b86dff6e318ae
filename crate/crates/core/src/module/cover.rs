use std::sync::Arc;

use crate::algebra::Algebra;
use crate::linalg::{Matrix, Subspace};

use super::{projective_basis, ModuleMap, Representation};

/// Minimal projective cover `π: ⊕ A e_{v_j} → M`, generated by lifts `g_j`
/// of a basis of the top of `M`.
#[derive(Clone, Debug)]
pub struct Cover {
    /// `(vertex, vector in M_vertex)` for each generator.
    pub generators: Vec<(usize, Vec<u32>)>,
    pub projective: Representation,
    pub map: ModuleMap,
}

impl Cover {
    /// Vertices of the indecomposable summands, in order.
    pub fn summand_vertices(&self) -> Vec<usize> {
        self.generators.iter().map(|(v, _)| *v).collect()
    }
}

/// Radical of `M` at each vertex, as a subspace.
pub fn radical_subspaces(m: &Representation) -> Vec<Subspace> {
    let alg = m.algebra();
    let f = m.field();
    (0..alg.num_vertices())
        .map(|v| {
            let mut s = Subspace::new(f, m.dims()[v]);
            for (a, arr) in alg.arrows().iter().enumerate() {
                if arr.target == v {
                    for col in m.arrow_matrix(a).columns() {
                        s.insert(&col);
                    }
                }
            }
            s
        })
        .collect()
}

pub fn projective_cover(m: &Representation) -> Cover {
    let mut generators = Vec::new();
    for (v, rad) in radical_subspaces(m).iter().enumerate() {
        for k in rad.complement_indices() {
            let mut g = vec![0; m.dims()[v]];
            g[k] = 1;
            generators.push((v, g));
        }
    }
    cover_from_generators(m, generators)
}

/// `⊕ A e_{v_j} → M` sending `e_{v_j}` to `g_j`; surjective iff the `g_j` generate `M`.
pub(crate) fn cover_from_generators(
    m: &Representation,
    generators: Vec<(usize, Vec<u32>)>,
) -> Cover {
    let f = m.field();
    let alg: &Arc<Algebra> = m.algebra();
    let nv = alg.num_vertices();
    let mut projective = Representation::zero(alg);
    let mut columns: Vec<Vec<Vec<u32>>> = vec![Vec::new(); nv];
    for (v, g) in &generators {
        let p = Representation::projective(alg, *v);
        let (_, index) = projective_basis(alg, *v);
        let mut cols: Vec<Vec<Vec<u32>>> = (0..nv).map(|w| vec![Vec::new(); p.dims()[w]]).collect();
        for (x, slot) in index.iter().enumerate() {
            if let Some((w, pos)) = slot {
                cols[*w][*pos] = m.apply_word(&alg.basis()[x].word, g);
            }
        }
        for w in 0..nv {
            columns[w].append(&mut cols[w]);
        }
        projective = projective.direct_sum(&p).expect("same algebra");
    }
    let components = (0..nv)
        .map(|w| {
            if columns[w].is_empty() {
                Matrix::zeros(f, m.dims()[w], 0)
            } else {
                Matrix::from_columns(f, m.dims()[w], &columns[w])
            }
        })
        .collect();
    Cover {
        generators,
        projective,
        map: ModuleMap { components },
    }
}
