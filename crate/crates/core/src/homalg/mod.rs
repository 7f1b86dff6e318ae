//! Projective covers, syzygies, Ext, stable Hom and projective summands.

mod nakayama;
mod orbit;

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::linalg::{Matrix, Subspace};
use crate::module::{hom_space, projective_cover as module_cover, Cover, HomBasis, ModuleMap, Representation};

pub(crate) use nakayama::right_multiplication;
pub use nakayama::{
    ar_translate, cosyzygy, inverse_ar_translate, is_self_injective, is_symmetric, nakayama,
    nakayama_permutation,
};
pub use orbit::{orbit_probe, OrbitFunctor, OrbitReport, OrbitResult, DEFAULT_ORBIT_CAP};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomalgError {
    #[error("algebra {0} is not self-injective")]
    NotSelfInjective(String),
    #[error("isomorphism test inconclusive at step {step}")]
    Inconclusive { step: usize },
}

/// `0 → ΩM → P → M → 0` with `P` a minimal projective cover.
#[derive(Clone, Debug)]
pub struct ProjectivePresentation {
    pub module: Representation,
    pub cover: Cover,
    pub syzygy: Representation,
    /// `ΩM ↪ P`.
    pub inclusion: ModuleMap,
}

impl ProjectivePresentation {
    /// Top multiplicities `m_i`, one per vertex.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.module.algebra().num_vertices()];
        for v in self.cover.summand_vertices() {
            m[v] += 1;
        }
        m
    }
}

pub fn projective_cover(m: &Representation) -> ProjectivePresentation {
    let cover = module_cover(m);
    let ker = cover.map.kernel(&cover.projective);
    ProjectivePresentation {
        module: m.clone(),
        cover,
        syzygy: ker.module,
        inclusion: ker.inclusion,
    }
}

/// `Ωⁿ M` with projective summands stripped at every stage.
pub fn syzygy(m: &Representation, n: usize) -> Representation {
    let mut cur = strip_projectives(m).core;
    for _ in 0..n {
        if cur.is_zero() {
            break;
        }
        cur = strip_projectives(&projective_cover(&cur).syzygy).core;
    }
    cur
}

/// The stages of a minimal projective resolution `… → P₁ → P₀ → M`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub stages: Vec<ProjectivePresentation>,
}

impl Resolution {
    pub fn new(m: &Representation, length: usize) -> Self {
        let mut stages = Vec::with_capacity(length);
        let mut cur = m.clone();
        for _ in 0..length {
            let st = projective_cover(&cur);
            cur = st.syzygy.clone();
            stages.push(st);
        }
        Resolution { stages }
    }

    /// `Ωⁿ M` as an honest kernel (no stripping), for `1 ≤ n ≤ length`.
    pub fn syzygy(&self, n: usize) -> &Representation {
        &self.stages[n - 1].syzygy
    }

    /// `P_n`.
    pub fn projective(&self, n: usize) -> &Representation {
        &self.stages[n].cover.projective
    }
}

/// `Extⁿ(M, N)` with representative cocycles `ΩⁿM → N`.
#[derive(Clone, Debug)]
pub struct ExtGroup {
    pub degree: usize,
    pub dim: usize,
    pub hom: HomBasis,
    /// Cocycles whose classes form a basis.
    pub basis: Vec<ModuleMap>,
    pub syzygy: Representation,
    pub projective: Representation,
    pub inclusion: ModuleMap,
    image: Subspace,
}

impl ExtGroup {
    /// Coordinates of the class of a cocycle `ΩⁿM → N`.
    pub fn class_of(&self, cocycle: &ModuleMap) -> Option<Vec<u32>> {
        let c = self.hom.coordinates(cocycle)?;
        let r = self.image.reduce(&c);
        // basis cocycles are standard vectors at the complement indices
        let keep = self.image.complement_indices();
        Some(keep.iter().map(|&i| r[i]).collect())
    }

    /// Whether the cocycle is a coboundary, i.e. factors through `ΩⁿM ↪ P_{n−1}`.
    pub fn is_coboundary(&self, cocycle: &ModuleMap) -> bool {
        self.class_of(cocycle).is_some_and(|c| c.iter().all(|&x| x == 0))
    }
}

pub fn ext(m: &Representation, n_mod: &Representation, n: usize) -> ExtGroup {
    assert!(n >= 1, "Ext degree must be at least 1");
    let res = Resolution::new(m, n);
    ext_from_resolution(&res, n_mod, n)
}

pub fn ext_from_resolution(res: &Resolution, n_mod: &Representation, n: usize) -> ExtGroup {
    let stage = &res.stages[n - 1];
    let omega = &stage.syzygy;
    let p = &stage.cover.projective;
    let f = omega.field();
    let hom = hom_space(omega, n_mod);
    let from_p = hom_space(p, n_mod);
    let mut image = Subspace::new(f, hom.dim());
    for g in &from_p.maps {
        let restricted = stage.inclusion.then(g);
        let c = hom.coordinates(&restricted).expect("restriction is a module map");
        image.insert(&c);
    }
    let basis: Vec<ModuleMap> = image
        .complement_indices()
        .iter()
        .map(|&i| hom.maps[i].clone())
        .collect();
    ExtGroup {
        degree: n,
        dim: basis.len(),
        hom,
        basis,
        syzygy: omega.clone(),
        projective: p.clone(),
        inclusion: stage.inclusion.clone(),
        image,
    }
}

pub fn ext_dim(m: &Representation, n_mod: &Representation, n: usize) -> usize {
    ext(m, n_mod, n).dim
}

/// The extension `0 → N → E → M → 0` classified by a cocycle `φ: ΩM → N`,
/// as the pushout of `0 → ΩM → P → M → 0` along `φ`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub middle: Representation,
    /// Upper-right blocks `Φ_a: M_s → N_t` in the basis `N ⊕ (section of M)`.
    pub blocks: Vec<Matrix>,
}

pub fn extension_from_cocycle(
    m: &Representation,
    n_mod: &Representation,
    pres: &ProjectivePresentation,
    phi: &ModuleMap,
) -> Extension {
    let f = m.field();
    let alg = m.algebra();
    let nv = alg.num_vertices();
    let p = &pres.cover.projective;
    let sum = n_mod.direct_sum(p).expect("same algebra");
    // relations (φ(k), −ι(k)) for k ∈ ΩM
    let rel = phi.stack(&pres.inclusion.neg());
    let q = rel.cokernel(&sum);
    // basis of E: images of N, then lifts of M's basis through P
    let n_in_e: Vec<Matrix> = (0..nv)
        .map(|v| {
            let top = Matrix::identity(f, n_mod.dims()[v]);
            let zero = Matrix::zeros(f, p.dims()[v], n_mod.dims()[v]);
            q.projection.components[v].mul(&top.vstack(&zero))
        })
        .collect();
    let sections: Vec<Matrix> = (0..nv)
        .map(|v| {
            let pi = &pres.cover.map.components[v];
            let elim = pi.elimination();
            let cols: Vec<Vec<u32>> = (0..m.dims()[v])
                .map(|k| {
                    let mut e = vec![0; m.dims()[v]];
                    e[k] = 1;
                    let mut x = vec![0; n_mod.dims()[v]];
                    x.extend(elim.solve(&e).expect("cover is surjective"));
                    q.projection.components[v].mul_vec(&x)
                })
                .collect();
            if cols.is_empty() {
                Matrix::zeros(f, q.module.dims()[v], 0)
            } else {
                Matrix::from_columns(f, q.module.dims()[v], &cols)
            }
        })
        .collect();
    let changes: Vec<Matrix> = (0..nv).map(|v| n_in_e[v].hstack(&sections[v])).collect();
    let inverses: Vec<Matrix> = changes
        .iter()
        .map(|c| c.inverse().expect("N ⊕ section spans E"))
        .collect();
    let maps: Vec<Matrix> = alg
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arr)| {
            inverses[arr.target]
                .mul(q.module.arrow_matrix(a))
                .mul(&changes[arr.source])
        })
        .collect();
    let blocks = alg
        .arrows()
        .iter()
        .zip(&maps)
        .map(|(arr, mat)| {
            mat.block(
                0,
                n_mod.dims()[arr.source],
                n_mod.dims()[arr.target],
                m.dims()[arr.source],
            )
        })
        .collect();
    let dims = (0..nv).map(|v| n_mod.dims()[v] + m.dims()[v]).collect();
    Extension {
        middle: Representation::new(alg, dims, maps).expect("pushout is a module"),
        blocks,
    }
}

/// `dim Hom(M,N)` minus the maps factoring through a projective.
pub fn stable_hom_dim(m: &Representation, n: &Representation) -> usize {
    let hom = hom_space(m, n);
    if hom.dim() == 0 {
        return 0;
    }
    let cover = module_cover(n);
    let through = hom_space(m, &cover.projective);
    let f = m.field();
    let mut image = Subspace::new(f, hom.dim());
    for g in &through.maps {
        let c = hom.coordinates(&g.then(&cover.map)).expect("composite is a module map");
        image.insert(&c);
    }
    hom.dim() - image.dim()
}

pub fn stable_end_dim(m: &Representation) -> usize {
    stable_hom_dim(m, m)
}

/// `M ≅ core ⊕ ⊕_j P_{v_j}` with explicit maps.
#[derive(Clone, Debug)]
pub struct Stripped {
    pub core: Representation,
    /// `core ↪ M`.
    pub core_inclusion: ModuleMap,
    /// Vertices of the split projective summands.
    pub projectives: Vec<usize>,
    /// `⊕_j P_{v_j} → M`.
    pub projective_inclusion: ModuleMap,
}

pub fn strip_projectives(m: &Representation) -> Stripped {
    let alg = Arc::clone(m.algebra());
    let f = m.field();
    let nv = alg.num_vertices();
    let mut core = m.clone();
    let mut core_inclusion = ModuleMap::identity(m);
    let mut projectives = Vec::new();
    let mut proj_sum = Representation::zero(&alg);
    let mut projective_inclusion = ModuleMap::zero(&proj_sum, m);
    loop {
        let mut changed = false;
        for i in 0..nv {
            if core.dims()[i] == 0 {
                continue;
            }
            let pi = Representation::projective(&alg, i);
            let hom = hom_space(&core, &pi);
            if hom.dim() == 0 {
                continue;
            }
            // position of e_i in (P_i)_i is 0: idempotents precede paths
            let di = core.dims()[i];
            let mut pairing = Matrix::zeros(f, hom.dim(), di);
            for (k, g) in hom.maps.iter().enumerate() {
                for l in 0..di {
                    pairing.set(k, l, g.components[i].get(0, l));
                }
            }
            let r = pairing.rank();
            if r == 0 {
                continue;
            }
            let rows = pairing.transpose().rref().pivots;
            let cols = pairing.rref().pivots;
            let chosen: Vec<&ModuleMap> = rows.iter().map(|&k| &hom.maps[k]).collect();
            // G: core → P_i^r
            let mut g = chosen[0].clone();
            for h in &chosen[1..] {
                g = g.stack(h);
            }
            // s: P_i^r → core, e_i ↦ m_l for the chosen columns
            let mut s_parts = Vec::with_capacity(r);
            for &l in &cols {
                let mut gen = vec![0; di];
                gen[l] = 1;
                let cov = crate::module::cover_from_generators(&core, vec![(i, gen)]);
                s_parts.push(cov.map);
            }
            let mut s = s_parts[0].clone();
            for h in &s_parts[1..] {
                s = s.join(h);
            }
            let pr = Representation::direct_sum_all(&alg, std::iter::repeat_n(&pi, r))
                .expect("same algebra");
            let ker = g.kernel(&core);
            let s_in_m = s.then(&core_inclusion);
            projective_inclusion = projective_inclusion.join(&s_in_m);
            proj_sum = proj_sum.direct_sum(&pr).expect("same algebra");
            projectives.extend(std::iter::repeat_n(i, r));
            core_inclusion = ker.inclusion.then(&core_inclusion);
            core = ker.module;
            changed = true;
        }
        if !changed {
            break;
        }
    }
    Stripped {
        core,
        core_inclusion,
        projectives,
        projective_inclusion,
    }
}

pub fn is_projective(m: &Representation) -> bool {
    strip_projectives(m).core.is_zero()
}

/// `dim Ext¹(S_i, S_j)` for all vertex pairs.
pub fn simple_ext_quiver(alg: &Arc<Algebra>) -> Vec<Vec<usize>> {
    let nv = alg.num_vertices();
    let simples: Vec<Representation> = (0..nv).map(|i| Representation::simple(alg, i)).collect();
    (0..nv)
        .map(|i| (0..nv).map(|j| ext_dim(&simples[i], &simples[j], 1)).collect())
        .collect()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::module::is_isomorphic;
    use crate::testutil::d3r;

    #[test]
    fn cover_of_simple_is_projective() {
        let a = d3r();
        let s0 = Representation::simple(&a, 0);
        let pres = projective_cover(&s0);
        assert_eq!(pres.multiplicities(), vec![1, 0, 0]);
        let p0 = Representation::projective(&a, 0);
        assert!(is_isomorphic(&pres.cover.projective, &p0, 0).is_yes());
        assert_eq!(pres.syzygy.dim(), p0.dim() - 1);
        let pp = projective_cover(&p0);
        assert!(pp.syzygy.is_zero());
    }

    #[test]
    fn ext_matches_arrow_count() {
        let a = d3r();
        let q = simple_ext_quiver(&a);
        for i in 0..3 {
            for j in 0..3 {
                let arrows = a.arrows().iter().filter(|x| x.source == i && x.target == j).count();
                assert_eq!(q[i][j], arrows, "Ext^1(S{i}, S{j})");
            }
        }
    }

    #[test]
    fn ext_of_projective_vanishes() {
        let a = d3r();
        let s0 = Representation::simple(&a, 0);
        for i in 0..3 {
            let p = Representation::projective(&a, i);
            assert_eq!(ext_dim(&p, &s0, 1), 0);
            assert_eq!(ext_dim(&p, &s0, 2), 0);
        }
    }

    #[test]
    fn stable_end_values() {
        let a = d3r();
        let s0 = Representation::simple(&a, 0);
        assert_eq!(stable_end_dim(&s0), 1);
        assert_eq!(stable_hom_dim(&Representation::projective(&a, 1), &s0), 0);
    }

    #[test]
    fn stripping() {
        let a = d3r();
        let s0 = Representation::simple(&a, 0);
        let p0 = Representation::projective(&a, 0);
        let p1 = Representation::projective(&a, 1);
        let st = strip_projectives(&p0);
        assert!(st.core.is_zero());
        assert_eq!(st.projectives, vec![0]);
        let st = strip_projectives(&s0);
        assert_eq!(st.core, s0);
        assert!(st.projectives.is_empty());
        let m = s0.direct_sum(&p1).unwrap();
        let st = strip_projectives(&m);
        assert_eq!(st.projectives, vec![1]);
        assert!(is_isomorphic(&st.core, &s0, 0).is_yes());
        let both = st.core_inclusion.join(&st.projective_inclusion);
        assert!(both.is_invertible());
        assert!(both.is_natural(&st.core.direct_sum(&p1).unwrap(), &m));
    }

    #[test]
    fn ext_agrees_with_stable_hom_of_syzygy() {
        let a = d3r();
        let mods: Vec<Representation> = ["@0", "@1", "beta", "delta*beta", "lambda"]
            .iter()
            .map(|w| Representation::string_module(&a, w).unwrap())
            .collect();
        for m in &mods {
            let om = syzygy(m, 1);
            for n in &mods {
                assert_eq!(ext_dim(m, n, 1), stable_hom_dim(&om, n));
            }
        }
    }

    #[test]
    fn extension_middle_term() {
        let a = d3r();
        let s0 = Representation::simple(&a, 0);
        let s1 = Representation::simple(&a, 1);
        let pres = projective_cover(&s0);
        let e = ext(&s0, &s1, 1);
        assert_eq!(e.dim, 1);
        let ext = extension_from_cocycle(&s0, &s1, &pres, &e.basis[0]);
        let beta = Representation::string_module(&a, "beta").unwrap();
        assert!(is_isomorphic(&ext.middle, &beta, 0).is_yes());
    }
}
