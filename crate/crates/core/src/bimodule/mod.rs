//! Bimodules as modules over `Γ ⊗ Λᵒᵖ`, tensor functors and Morita-type checks.

mod graded;
mod tilting;

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Algebra, TensorStructure};
use crate::deform::{versal_classify, DeformError, VersalReport};
use crate::homalg::{
    cosyzygy, is_projective, is_self_injective, projective_cover, stable_end_dim, strip_projectives,
};
use crate::linalg::Subspace;
use crate::module::{hom_dim, is_isomorphic, same_algebra, IsoResult, ModuleMap, Representation};

use graded::{block_diag_all, Graded, Tensor};

pub use tilting::{dual_bimodule, dual_complex, total_tensor, verify_nice_tilting, TiltingReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BimoduleError {
    #[error("module is not over a tensor product algebra")]
    NotBimodule,
    #[error("algebras do not match for this tensor product")]
    AlgebraMismatch,
    #[error("algebra {0} is not self-injective")]
    NotSelfInjective(String),
    #[error("tensor product violates a relation: {0}")]
    Relations(String),
    #[error("not a stable equivalence of Morita type")]
    NotStableMorita,
    #[error(transparent)]
    Deform(#[from] DeformError),
}

/// Outcome of a check whose iso tests may be inconclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Holds,
    Fails,
    Inconclusive,
}

impl Check {
    fn from_iso(r: &IsoResult) -> Check {
        match r {
            IsoResult::Yes(_) => Check::Holds,
            IsoResult::No => Check::Fails,
            IsoResult::Unknown => Check::Inconclusive,
        }
    }

    fn all(checks: impl IntoIterator<Item = Check>) -> Check {
        let mut out = Check::Holds;
        for c in checks {
            match c {
                Check::Fails => return Check::Fails,
                Check::Inconclusive => out = Check::Inconclusive,
                Check::Holds => {}
            }
        }
        out
    }

    fn of(b: bool) -> Check {
        if b {
            Check::Holds
        } else {
            Check::Fails
        }
    }
}

/// A `Γ`-`Λ`-bimodule, stored as a module over `Γ ⊗ Λᵒᵖ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bimodule {
    module: Representation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Certificates {
    pub left_projective: bool,
    pub right_projective: bool,
}

impl Bimodule {
    pub fn new(module: Representation) -> Result<Self, BimoduleError> {
        if module.algebra().tensor_structure().is_none() {
            return Err(BimoduleError::NotBimodule);
        }
        Ok(Bimodule { module })
    }

    pub fn module(&self) -> &Representation {
        &self.module
    }

    pub fn structure(&self) -> &TensorStructure {
        self.module.algebra().tensor_structure().expect("checked at construction")
    }

    /// `Γ`.
    pub fn left_algebra(&self) -> &Arc<Algebra> {
        &self.structure().left
    }

    /// `Λᵒᵖ`.
    pub fn right_algebra_op(&self) -> &Arc<Algebra> {
        &self.structure().right
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// `X` as a left `Γ`-module.
    pub fn left_restriction(&self) -> Representation {
        let g = Graded::of_bimodule(self);
        let dims = g.dims.iter().map(|row| row.iter().sum()).collect();
        let maps = g.left_maps.iter().map(|per_j| block_diag_all(g.field(), per_j)).collect();
        Representation::unchecked(&g.left, dims, maps).expect("block shapes")
    }

    /// `X` as a left `Λᵒᵖ`-module.
    pub fn right_restriction(&self) -> Representation {
        let g = Graded::of_bimodule(self);
        let nr = g.right_op.num_vertices();
        let dims = (0..nr).map(|j| g.dims.iter().map(|row| row[j]).sum()).collect();
        let maps = g.right_maps.iter().map(|per_i| block_diag_all(g.field(), per_i)).collect();
        Representation::unchecked(&g.right_op, dims, maps).expect("block shapes")
    }

    pub fn certificates(&self) -> Certificates {
        Certificates {
            left_projective: is_projective(&self.left_restriction()),
            right_projective: is_projective(&self.right_restriction()),
        }
    }
}

/// `A` over `A ⊗ Aᵒᵖ`.
pub fn regular_bimodule(a: &Arc<Algebra>) -> Bimodule {
    let env = a.enveloping();
    let f = a.field();
    let n = a.num_vertices();
    let mut dims = vec![vec![0; n]; n];
    let mut pos = Vec::with_capacity(a.dim());
    for b in a.basis() {
        pos.push(dims[b.target][b.source]);
        dims[b.target][b.source] += 1;
    }
    let zeros = |r: usize, c: usize| crate::linalg::Matrix::zeros(f, r, c);
    let mut left_maps = Vec::new();
    for (ai, arr) in a.arrows().iter().enumerate() {
        let ab = a.arrow_basis_index(ai);
        let mut per_j: Vec<_> = (0..n).map(|j| zeros(dims[arr.target][j], dims[arr.source][j])).collect();
        for (z, b) in a.basis().iter().enumerate() {
            if b.target != arr.source {
                continue;
            }
            for (w, c) in a.product(ab, z) {
                per_j[b.source].set(pos[w], pos[z], c);
            }
        }
        left_maps.push(per_j);
    }
    let mut right_maps = Vec::new();
    for (bi, arr) in a.arrows().iter().enumerate() {
        let ab = a.arrow_basis_index(bi);
        let mut per_i: Vec<_> = (0..n).map(|i| zeros(dims[i][arr.source], dims[i][arr.target])).collect();
        for (z, b) in a.basis().iter().enumerate() {
            if b.source != arr.target {
                continue;
            }
            for (w, c) in a.product(z, ab) {
                per_i[b.target].set(pos[w], pos[z], c);
            }
        }
        right_maps.push(per_i);
    }
    let ts = env.tensor_structure().expect("enveloping algebra");
    let g = Graded {
        left: Arc::clone(&ts.left),
        right_op: Arc::clone(&ts.right),
        dims,
        left_maps,
        right_maps,
    };
    g.to_bimodule(&env).expect("multiplication is associative")
}

/// `X ⊗_Λ M` as a `Γ`-module.
pub fn tensor_bimodule_module(x: &Bimodule, m: &Representation) -> Result<Representation, BimoduleError> {
    let t = Tensor::new(&Graded::of_bimodule(x), &Graded::of_module(m))?;
    Ok(t.result.to_module())
}

/// `X ⊗_Λ φ` for a module map `φ: M → N`.
pub fn tensor_bimodule_map(
    x: &Bimodule,
    phi: &ModuleMap,
    m: &Representation,
    n: &Representation,
) -> Result<ModuleMap, BimoduleError> {
    let gx = Graded::of_bimodule(x);
    let src = Tensor::new(&gx, &Graded::of_module(m))?;
    let tgt = Tensor::new(&gx, &Graded::of_module(n))?;
    let id = gx.identity_blocks();
    let phi_blocks: Vec<_> = phi.components.iter().map(|c| vec![c.clone()]).collect();
    let comps = Tensor::induced(&src, &tgt, &id, &phi_blocks);
    Ok(ModuleMap {
        components: comps.into_iter().map(|mut row| row.remove(0)).collect(),
    })
}

/// `Y ⊗ X` over the algebra on the right of `Y` and the left of `X`.
pub fn tensor_bimodules(y: &Bimodule, x: &Bimodule) -> Result<Bimodule, BimoduleError> {
    let gy = Graded::of_bimodule(y);
    let gx = Graded::of_bimodule(x);
    let t = Tensor::new(&gy, &gx)?;
    let env = Algebra::tensor(y.left_algebra(), x.right_algebra_op()).map_err(|_| BimoduleError::AlgebraMismatch)?;
    t.result.to_bimodule(&env)
}

/// `f ⊗ g: Y ⊗ X → Y' ⊗ X'`.
pub fn tensor_bimodule_maps(
    f: &ModuleMap,
    g: &ModuleMap,
    (y, y2): (&Bimodule, &Bimodule),
    (x, x2): (&Bimodule, &Bimodule),
) -> Result<ModuleMap, BimoduleError> {
    let src = Tensor::new(&Graded::of_bimodule(y), &Graded::of_bimodule(x))?;
    let tgt = Tensor::new(&Graded::of_bimodule(y2), &Graded::of_bimodule(x2))?;
    let fy = graded::split_map(y.structure(), f);
    let gx = graded::split_map(x.structure(), g);
    let comps = Tensor::induced(&src, &tgt, &fy, &gx);
    let ts_y = y.structure();
    let ts_x = x.structure();
    let (na, nc) = (ts_y.left.num_vertices(), ts_x.right.num_vertices());
    let mut components = Vec::with_capacity(na * nc);
    for row in comps {
        components.extend(row);
    }
    Ok(ModuleMap { components })
}

/// `dim(X ⊗_k M) − rank(X ⊗ Λ ⊗ M → X ⊗ M)`, summed over the full basis of `Λ`.
pub fn tensor_dim_via_coequalizer(x: &Bimodule, m: &Representation) -> Result<usize, BimoduleError> {
    let g = Graded::of_bimodule(x);
    let lam = m.algebra();
    if !same_algebra(&g.right_op, &lam.opposite()) {
        return Err(BimoduleError::AlgebraMismatch);
    }
    let f = m.field();
    let (ng, nl) = (g.left.num_vertices(), lam.num_vertices());
    let mut total = 0;
    for i in 0..ng {
        let mut offs = Vec::with_capacity(nl);
        let mut amb = 0;
        for j in 0..nl {
            offs.push(amb);
            amb += g.dims[i][j] * m.dims()[j];
        }
        let mut image = Subspace::new(f, amb);
        for b in lam.basis() {
            let (s, t) = (b.source, b.target);
            let (dx, dm) = (g.dims[i][t], m.dims()[s]);
            if dx * dm == 0 {
                continue;
            }
            let op_word: Vec<usize> = b.word.iter().rev().copied().collect();
            let r = g.right_word(i, t, &op_word);
            let l = m.word_matrix(s, &b.word);
            let xr = r.kron(&crate::linalg::Matrix::identity(f, dm));
            let xl = crate::linalg::Matrix::identity(f, dx).kron(&l);
            for c in 0..dx * dm {
                let mut v = vec![0; amb];
                for row in 0..xr.rows() {
                    v[offs[s] + row] = f.add(v[offs[s] + row], xr.get(row, c));
                }
                for row in 0..xl.rows() {
                    v[offs[t] + row] = f.sub(v[offs[t] + row], xl.get(row, c));
                }
                image.insert(&v);
            }
        }
        total += amb - image.dim();
    }
    Ok(total)
}

/// `Ω` of the regular bimodule, projective summands removed.
pub fn bimodule_syzygy(a: &Arc<Algebra>) -> Result<Bimodule, BimoduleError> {
    if !is_self_injective(a) {
        return Err(BimoduleError::NotSelfInjective(a.name().to_string()));
    }
    let reg = regular_bimodule(a);
    let pres = projective_cover(reg.module());
    Bimodule::new(strip_projectives(&pres.syzygy).core)
}

/// `Ω⁻¹` of the regular bimodule.
pub fn bimodule_cosyzygy(a: &Arc<Algebra>) -> Result<Bimodule, BimoduleError> {
    if !is_self_injective(a) {
        return Err(BimoduleError::NotSelfInjective(a.name().to_string()));
    }
    Bimodule::new(cosyzygy(regular_bimodule(a).module()))
}

#[derive(Clone, Debug, Serialize)]
pub struct MoritaReport {
    pub x: Certificates,
    pub y: Certificates,
    /// Iso test of the core of `Y ⊗_Γ X` against `Λ`.
    pub yx_core: Check,
    pub yx_projective_summands: usize,
    pub xy_core: Check,
    pub xy_projective_summands: usize,
    pub verdict: Check,
}

fn core_is_regular(t: &Bimodule, reg: &Bimodule) -> (Check, usize) {
    let s = strip_projectives(t.module());
    (Check::from_iso(&is_isomorphic(&s.core, reg.module(), 0)), s.projectives.len())
}

/// Checks that `X` (`Γ`-`Λ`) and `Y` (`Λ`-`Γ`) induce a stable equivalence of Morita type.
pub fn verify_stable_morita(x: &Bimodule, y: &Bimodule) -> Result<MoritaReport, BimoduleError> {
    let xc = x.certificates();
    let yc = y.certificates();
    let yx = tensor_bimodules(y, x)?;
    let xy = tensor_bimodules(x, y)?;
    let (yx_core, yx_projective_summands) = core_is_regular(&yx, &regular_bimodule(y.left_algebra()));
    let (xy_core, xy_projective_summands) = core_is_regular(&xy, &regular_bimodule(x.left_algebra()));
    let verdict = Check::all([
        Check::of(xc.left_projective && xc.right_projective && yc.left_projective && yc.right_projective),
        yx_core,
        xy_core,
    ]);
    Ok(MoritaReport {
        x: xc,
        y: yc,
        yx_core,
        yx_projective_summands,
        xy_core,
        xy_projective_summands,
        verdict,
    })
}

/// A verified stable equivalence of Morita type.
#[derive(Clone, Debug)]
pub struct MoritaPair {
    pub x: Bimodule,
    pub y: Bimodule,
    pub report: MoritaReport,
}

impl MoritaPair {
    pub fn new(x: Bimodule, y: Bimodule) -> Result<Self, BimoduleError> {
        let report = verify_stable_morita(&x, &y)?;
        if report.verdict != Check::Holds {
            return Err(BimoduleError::NotStableMorita);
        }
        Ok(MoritaPair { x, y, report })
    }

    /// `(Ω_{Λᵉ}Λ, Ω⁻¹_{Λᵉ}Λ)` over a self-injective algebra.
    pub fn syzygy(a: &Arc<Algebra>) -> Result<Self, BimoduleError> {
        MoritaPair::new(bimodule_syzygy(a)?, bimodule_cosyzygy(a)?)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SideInvariants {
    pub dims: Vec<usize>,
    pub end_dim: usize,
    pub stable_end_dim: usize,
    pub versal: VersalReport,
}

impl SideInvariants {
    pub fn of(v: &Representation, max_order: usize) -> Result<Self, BimoduleError> {
        Ok(SideInvariants {
            dims: v.dims().to_vec(),
            end_dim: hom_dim(v, v),
            stable_end_dim: stable_end_dim(v),
            versal: versal_classify(v, max_order)?,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TransferReport {
    pub source: SideInvariants,
    /// Invariants of the core of `X ⊗_Λ V`.
    pub target: SideInvariants,
    pub projectives_stripped: usize,
    pub end_equal: bool,
    pub stable_end_equal: bool,
    pub versal_equal: bool,
}

impl TransferReport {
    /// Equality of the invariants a stable equivalence preserves.
    /// `dim End` is reported but not required to agree.
    pub fn equal(&self) -> bool {
        self.stable_end_equal && self.versal_equal
    }
}

pub fn transfer_invariants(
    pair: &MoritaPair,
    v: &Representation,
    max_order: usize,
) -> Result<TransferReport, BimoduleError> {
    let image = tensor_bimodule_module(&pair.x, v)?;
    let stripped = strip_projectives(&image);
    let source = SideInvariants::of(v, max_order)?;
    let target = SideInvariants::of(&stripped.core, max_order)?;
    Ok(TransferReport {
        projectives_stripped: stripped.projectives.len(),
        end_equal: source.end_dim == target.end_dim,
        stable_end_equal: source.stable_end_dim == target.stable_end_dim,
        versal_equal: source.versal.same_invariants(&target.versal),
        source,
        target,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deform::Verdict;
    use crate::homalg::syzygy;
    use crate::testutil::d3r;

    #[test]
    fn regular_bimodule_basics() {
        let a = d3r();
        let r = regular_bimodule(&a);
        assert_eq!(r.dim(), a.dim());
        let c = r.certificates();
        assert!(c.left_projective && c.right_projective);
        let left = r.left_restriction();
        let free: Vec<_> = (0..3).map(|i| Representation::projective(&a, i)).collect();
        let sum = Representation::direct_sum_all(&a, &free).unwrap();
        assert!(is_isomorphic(&left, &sum, 0).is_yes());
    }

    #[test]
    fn regular_is_unit_for_tensor() {
        let a = d3r();
        let r = regular_bimodule(&a);
        for w in ["@0", "beta", "delta*beta", "rho^-*beta", "lambda"] {
            let m = Representation::string_module(&a, w).unwrap();
            let t = tensor_bimodule_module(&r, &m).unwrap();
            assert!(is_isomorphic(&t, &m, 0).is_yes(), "{w}");
            assert_eq!(tensor_dim_via_coequalizer(&r, &m).unwrap(), m.dim());
        }
    }

    #[test]
    fn syzygy_bimodule_transfers_syzygies() {
        let a = d3r();
        let x = bimodule_syzygy(&a).unwrap();
        let c = x.certificates();
        assert!(c.left_projective && c.right_projective);
        for w in ["@0", "@1", "beta"] {
            let m = Representation::string_module(&a, w).unwrap();
            let t = tensor_bimodule_module(&x, &m).unwrap();
            assert_eq!(tensor_dim_via_coequalizer(&x, &m).unwrap(), t.dim());
            let core = strip_projectives(&t).core;
            assert!(is_isomorphic(&core, &syzygy(&m, 1), 0).is_yes(), "{w}");
        }
    }

    #[test]
    fn cover_bookkeeping() {
        let a = d3r();
        let pres = projective_cover(regular_bimodule(&a).module());
        assert_eq!(pres.cover.projective.dim() - a.dim(), pres.syzygy.dim());
    }

    #[test]
    fn stable_morita_checks() {
        let a = d3r();
        let r = regular_bimodule(&a);
        assert_eq!(verify_stable_morita(&r, &r).unwrap().verdict, Check::Holds);
        let pair = MoritaPair::syzygy(&a).unwrap();
        assert_eq!(pair.report.verdict, Check::Holds);
        let p = Bimodule::new(Representation::projective(r.module().algebra(), 0)).unwrap();
        assert_eq!(verify_stable_morita(&p, &p).unwrap().verdict, Check::Fails);
    }

    #[test]
    fn corrupted_bimodule_rejected() {
        let a = d3r();
        let r = regular_bimodule(&a);
        let m = r.module();
        let mut maps = m.arrow_matrices().to_vec();
        let k = maps.iter().position(|x| x.rows() * x.cols() > 0).unwrap();
        let v = maps[k].get(0, 0);
        maps[k].set(0, 0, 1 - v);
        let bad = Representation::new(m.algebra(), m.dims().to_vec(), maps.clone());
        if let Ok(bad) = bad {
            let x = Bimodule::new(bad).unwrap();
            assert_ne!(verify_stable_morita(&x, &r).unwrap().verdict, Check::Holds);
        }
    }

    #[test]
    fn transfer_of_simple_and_projective() {
        let a = d3r();
        let pair = MoritaPair::syzygy(&a).unwrap();
        let s = Representation::simple(&a, 0);
        let rep = transfer_invariants(&pair, &s, 8).unwrap();
        assert!(rep.equal());
        assert_eq!(rep.target.versal.verdict, Verdict::Truncated { m: 2 });
        let p = Representation::projective(&a, 1);
        let rep = transfer_invariants(&pair, &p, 8).unwrap();
        assert!(rep.target.dims.iter().all(|&d| d == 0));
        assert_eq!(rep.source.versal.verdict, Verdict::Trivial);
        assert_eq!(rep.target.versal.verdict, Verdict::Trivial);
    }

    #[test]
    fn identity_transfer() {
        let a = d3r();
        let r = regular_bimodule(&a);
        let pair = MoritaPair::new(r.clone(), r).unwrap();
        let m = Representation::string_module(&a, "delta*beta").unwrap();
        let rep = transfer_invariants(&pair, &m, 8).unwrap();
        assert!(rep.equal() && rep.end_equal);
    }
}
