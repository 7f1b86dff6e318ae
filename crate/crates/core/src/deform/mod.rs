//! Lifts of modules over truncated polynomial rings `k[t]/(tⁿ)` and the
//! obstruction calculus.

mod brute;
mod versal;

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::homalg::{ext, extension_from_cocycle, projective_cover};
use crate::linalg::{Elimination, Field, Matrix, Subspace};
use crate::module::Representation;

pub use brute::{brute_force_obstruction_order, BruteForceResult, BRUTE_FORCE_BUDGET};
pub use versal::{versal_classify, Verdict, VersalReport, BRANCH_CAP, DEFAULT_MAX_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeformError {
    #[error("search budget exceeded after {explored} branches")]
    BudgetExceeded { explored: usize },
    #[error("malformed lift: {0}")]
    MalformedLift(String),
    #[error("brute force needs total dimension ≤ 4, p = 2 and order ≤ 4")]
    OracleOutOfRange,
    #[error("maximal order must be at least 3")]
    OrderTooSmall,
}

/// `k[t]/(tⁿ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedCoefficientRing {
    pub order: usize,
    pub characteristic: u32,
}

impl TruncatedCoefficientRing {
    pub fn new(field: Field, order: usize) -> Self {
        assert!(order >= 1);
        TruncatedCoefficientRing {
            order,
            characteristic: field.p(),
        }
    }

    pub fn is_dual_numbers(&self) -> bool {
        self.order == 2
    }
}

/// Arrow matrices `X_a = Σ_k t^k X_a^{(k)}` over `k[t]/(tⁿ)` with `X_a^{(0)} = V_a`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedLift {
    pub base: Representation,
    pub order: usize,
    /// `coeffs[a][k] = X_a^{(k)}`, `0 ≤ k < order`.
    pub coeffs: Vec<Vec<Matrix>>,
}

/// Truncated product of polynomial matrices.
fn poly_mul(a: &[Matrix], b: &[Matrix], order: usize) -> Vec<Matrix> {
    let (rows, cols) = (a[0].rows(), b[0].cols());
    let f = a[0].field();
    let mut out = vec![Matrix::zeros(f, rows, cols); order];
    for (i, x) in a.iter().enumerate().take(order) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order - i) {
            if !y.is_zero() {
                let p = x.mul(y);
                out[i + j].add_assign_scaled(&p, 1);
            }
        }
    }
    out
}

impl TruncatedLift {
    /// `V ⊗ k[t]/(tⁿ)` with all higher coefficients zero.
    pub fn trivial(base: &Representation, order: usize) -> Self {
        let f = base.field();
        let coeffs = base
            .arrow_matrices()
            .iter()
            .map(|m| {
                let mut c = vec![m.clone()];
                c.extend((1..order).map(|_| Matrix::zeros(f, m.rows(), m.cols())));
                c
            })
            .collect();
        TruncatedLift {
            base: base.clone(),
            order,
            coeffs,
        }
    }

    /// `X_a = V_a + t E_a`.
    pub fn first_order(base: &Representation, perturbation: &[Matrix]) -> Self {
        let mut l = TruncatedLift::trivial(base, 2);
        for (a, e) in perturbation.iter().enumerate() {
            l.coeffs[a][1] = e.clone();
        }
        l
    }

    pub fn ring(&self) -> TruncatedCoefficientRing {
        TruncatedCoefficientRing::new(self.base.field(), self.order)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        self.base.algebra()
    }

    fn word_poly(&self, w: &[usize], order: usize) -> Vec<Matrix> {
        let alg = self.algebra();
        let f = self.base.field();
        let s = alg.arrows()[w[0]].source;
        let d = self.base.dims()[s];
        let mut acc = vec![Matrix::identity(f, d)];
        acc.extend((1..order).map(|_| Matrix::zeros(f, d, d)));
        for &a in w {
            let x: Vec<Matrix> = (0..order)
                .map(|k| {
                    self.coeffs[a].get(k).cloned().unwrap_or_else(|| {
                        let m = &self.coeffs[a][0];
                        Matrix::zeros(f, m.rows(), m.cols())
                    })
                })
                .collect();
            acc = poly_mul(&x, &acc, order);
        }
        acc
    }

    /// Coefficients of every relation evaluated in `k[t]/(t^order)`.
    pub fn relation_values(&self, order: usize) -> Vec<Vec<Matrix>> {
        let alg = self.algebra();
        alg.relations()
            .iter()
            .filter(|r| !r.terms.is_empty())
            .map(|r| {
                let mut acc: Option<Vec<Matrix>> = None;
                for (c, w) in &r.terms {
                    let p = self.word_poly(w, order);
                    match acc.as_mut() {
                        None => acc = Some(p.iter().map(|m| m.scale(*c)).collect()),
                        Some(v) => {
                            for (x, y) in v.iter_mut().zip(&p) {
                                x.add_assign_scaled(y, *c);
                            }
                        }
                    }
                }
                acc.expect("nonempty relation")
            })
            .collect()
    }

    /// Whether every relation vanishes modulo `t^order`.
    pub fn is_valid(&self) -> bool {
        self.coeffs.iter().all(|c| c.len() == self.order)
            && self
                .coeffs
                .iter()
                .zip(self.base.arrow_matrices())
                .all(|(c, m)| &c[0] == m)
            && self
                .relation_values(self.order)
                .iter()
                .all(|v| v.iter().all(Matrix::is_zero))
    }

    /// Reduction modulo `t^k`.
    pub fn truncate(&self, k: usize) -> TruncatedLift {
        TruncatedLift {
            base: self.base.clone(),
            order: k,
            coeffs: self.coeffs.iter().map(|c| c[..k].to_vec()).collect(),
        }
    }

    pub fn with_top(&self, top: &[Matrix]) -> TruncatedLift {
        let mut l = self.clone();
        l.order += 1;
        for (c, y) in l.coeffs.iter_mut().zip(top) {
            c.push(y.clone());
        }
        l
    }

    /// The lift as a representation of dimension `n · dim V` with the
    /// `t`-action recorded separately: basis `v ⊗ t^k`, block `k`.
    pub fn as_representation(&self) -> (Representation, Vec<Matrix>) {
        let alg = self.algebra();
        let f = self.base.field();
        let n = self.order;
        let dims: Vec<usize> = self.base.dims().iter().map(|d| d * n).collect();
        let maps = alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arr)| {
                let (dt, ds) = (self.base.dims()[arr.target], self.base.dims()[arr.source]);
                let mut m = Matrix::zeros(f, dt * n, ds * n);
                for i in 0..n {
                    for k in 0..n - i {
                        // t^i ⊗ v ↦ Σ_k t^{i+k} X^{(k)} v
                        m.set_block((i + k) * dt, i * ds, &self.coeffs[a][k]);
                    }
                }
                m
            })
            .collect();
        let t = self
            .base
            .dims()
            .iter()
            .map(|&d| {
                let mut m = Matrix::zeros(f, d * n, d * n);
                for i in 0..n.saturating_sub(1) {
                    m.set_block((i + 1) * d, i * d, &Matrix::identity(f, d));
                }
                m
            })
            .collect();
        (
            Representation::new(alg, dims, maps).expect("valid lift gives a module"),
            t,
        )
    }
}

/// The first-order data at `V`: the linearized relation map `D`, cocycles
/// `ker D`, and the gauge subspace of coboundaries `h_t V_a − V_a h_s`.
#[derive(Clone, Debug)]
pub struct Linearization {
    pub field: Field,
    /// Offset of arrow `a`'s block in the unknown vector.
    pub offsets: Vec<usize>,
    pub shapes: Vec<(usize, usize)>,
    pub d: Matrix,
    elimination: Elimination,
    pub cocycles: Matrix,
    pub gauge: Subspace,
    /// Cocycles completing the gauge subspace to `ker D`.
    pub complement: Vec<Vec<u32>>,
}

impl Linearization {
    pub fn new(v: &Representation) -> Self {
        let alg = v.algebra();
        let f = v.field();
        let dims = v.dims();
        let shapes: Vec<(usize, usize)> = alg
            .arrows()
            .iter()
            .map(|a| (dims[a.target], dims[a.source]))
            .collect();
        let mut offsets = Vec::with_capacity(shapes.len());
        let mut total = 0;
        for &(r, c) in &shapes {
            offsets.push(total);
            total += r * c;
        }
        let rels: Vec<_> = alg.relations().iter().filter(|r| !r.terms.is_empty()).collect();
        let rows: usize = rels
            .iter()
            .map(|r| {
                let w = &r.terms[0].1;
                dims[alg.arrows()[w[w.len() - 1]].target] * dims[alg.arrows()[w[0]].source]
            })
            .sum();
        let mut d = Matrix::zeros(f, rows, total);
        let mut r0 = 0;
        for r in rels {
            let w0 = &r.terms[0].1;
            let (s, t) = (alg.arrows()[w0[0]].source, alg.arrows()[w0[w0.len() - 1]].target);
            let (dt, ds) = (dims[t], dims[s]);
            for (c, w) in &r.terms {
                let l = w.len();
                // prefix[p] = V(a_1..a_p), suffix[p] = V(a_{p+2}..a_l) (0-based)
                let mut prefix = vec![Matrix::identity(f, ds)];
                for &a in w {
                    let next = v.arrow_matrix(a).mul(prefix.last().unwrap());
                    prefix.push(next);
                }
                let mut suffix = vec![Matrix::identity(f, dt); l + 1];
                for p in (0..l).rev() {
                    let a = w[p];
                    suffix[p] = suffix[p + 1].mul(v.arrow_matrix(a));
                }
                for p in 0..l {
                    let a = w[p];
                    let left = &suffix[p + 1];
                    let right = &prefix[p];
                    let (ar, ac) = shapes[a];
                    for i in 0..dt {
                        for k in 0..ar {
                            let lik = left.get(i, k);
                            if lik == 0 {
                                continue;
                            }
                            let lik = f.mul(lik, *c);
                            for lcol in 0..ac {
                                for j in 0..ds {
                                    let rlj = right.get(lcol, j);
                                    if rlj != 0 {
                                        d.add_at(
                                            r0 + i * ds + j,
                                            offsets[a] + k * ac + lcol,
                                            f.mul(lik, rlj),
                                        );
                                    }
                                }
                            }
                        }
                    }
                }
            }
            r0 += dt * ds;
        }
        let cocycles = d.kernel();
        let mut gauge = Subspace::new(f, total);
        for v_idx in 0..alg.num_vertices() {
            let n = dims[v_idx];
            for k in 0..n {
                for l in 0..n {
                    let mut col = vec![0; total];
                    for (a, arr) in alg.arrows().iter().enumerate() {
                        let m = v.arrow_matrix(a);
                        let (ar, ac) = shapes[a];
                        if arr.target == v_idx {
                            // E_kl V_a: row k gets row l of V_a
                            for j in 0..ac {
                                let x = m.get(l, j);
                                if x != 0 {
                                    let idx = offsets[a] + k * ac + j;
                                    col[idx] = f.add(col[idx], x);
                                }
                            }
                        }
                        if arr.source == v_idx {
                            // −V_a E_kl: column l gets −column k of V_a
                            for i in 0..ar {
                                let x = m.get(i, k);
                                if x != 0 {
                                    let idx = offsets[a] + i * ac + l;
                                    col[idx] = f.sub(col[idx], x);
                                }
                            }
                        }
                    }
                    gauge.insert(&col);
                }
            }
        }
        let mut span = gauge.clone();
        let complement = cocycles
            .columns()
            .into_iter()
            .filter(|z| span.insert(z))
            .collect();
        let elimination = d.elimination();
        Linearization {
            field: f,
            offsets,
            shapes,
            d,
            elimination,
            cocycles,
            gauge,
            complement,
        }
    }

    /// `dim ker D − dim gauge`, which equals `dim Ext¹(V, V)`.
    pub fn tangent_dim(&self) -> usize {
        self.complement.len()
    }

    pub fn unknowns(&self) -> usize {
        self.d.cols()
    }

    pub fn flatten(&self, mats: &[Matrix]) -> Vec<u32> {
        mats.iter().flat_map(|m| m.data().iter().copied()).collect()
    }

    pub fn unflatten(&self, x: &[u32]) -> Vec<Matrix> {
        self.shapes
            .iter()
            .zip(&self.offsets)
            .map(|(&(r, c), &o)| Matrix::from_vec(self.field, r, c, x[o..o + r * c].to_vec()))
            .collect()
    }

    pub fn is_gauge(&self, mats: &[Matrix]) -> bool {
        self.gauge.contains(&self.flatten(mats))
    }

    /// Relation defect vector of a lift of order `n` at degree `n`.
    fn defect(&self, lift: &TruncatedLift) -> Vec<u32> {
        let n = lift.order;
        lift.relation_values(n + 1)
            .iter()
            .flat_map(|v| v[n].data().to_vec())
            .collect()
    }
}

/// Solutions for the next coefficient: `particular + span(kernel)`, with the
/// gauge part of the kernel flagged.
#[derive(Clone, Debug)]
pub enum Extension {
    Obstructed,
    Family {
        particular: Vec<Matrix>,
        /// Representatives of `ker D / gauge`.
        free: Vec<Vec<Matrix>>,
        /// Basis of the gauge subspace.
        gauge: Vec<Vec<Matrix>>,
    },
}

/// Solves `D·x = −b(L)` for the order-`n+1` coefficient of a lift `L` of order `n`.
pub fn extend_lift(lift: &TruncatedLift, lin: &Linearization) -> Result<Extension, DeformError> {
    if !lift.is_valid() {
        return Err(DeformError::MalformedLift("relations fail at the current order".into()));
    }
    Ok(extend_unchecked(lift, lin))
}

fn extend_unchecked(lift: &TruncatedLift, lin: &Linearization) -> Extension {
    let f = lin.field;
    let b: Vec<u32> = lin.defect(lift).into_iter().map(|x| f.neg(x)).collect();
    match lin.elimination.solve(&b) {
        None => Extension::Obstructed,
        Some(x) => Extension::Family {
            particular: lin.unflatten(&x),
            free: lin.complement.iter().map(|z| lin.unflatten(z)).collect(),
            gauge: lin.gauge.basis().iter().map(|g| lin.unflatten(g)).collect(),
        },
    }
}

/// One first-order lift per basis cocycle of `Ext¹(V, V)`, built from the
/// extension classified by the cocycle.
pub fn first_order_lifts(v: &Representation) -> Vec<TruncatedLift> {
    if v.is_zero() {
        return Vec::new();
    }
    let e = ext(v, v, 1);
    let pres = projective_cover(v);
    e.basis
        .iter()
        .map(|phi| {
            let ext = extension_from_cocycle(v, v, &pres, phi);
            TruncatedLift::first_order(v, &ext.blocks)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::ext_dim;
    use crate::testutil::d3r;

    #[test]
    fn trivial_lift_extends_by_zero() {
        let a = d3r();
        let v = Representation::simple(&a, 0);
        let lin = Linearization::new(&v);
        let l = TruncatedLift::trivial(&v, 3);
        match extend_lift(&l, &lin).unwrap() {
            Extension::Family { particular, .. } => assert!(particular.iter().all(Matrix::is_zero)),
            Extension::Obstructed => panic!("trivial lift must extend"),
        }
    }

    #[test]
    fn linearization_tangent_matches_ext() {
        let a = d3r();
        for w in ["@0", "@1", "@2", "beta", "delta*beta", "lambda*delta"] {
            let v = Representation::string_module(&a, w).unwrap();
            let lin = Linearization::new(&v);
            assert_eq!(lin.tangent_dim(), ext_dim(&v, &v, 1), "{w}");
            for g in lin.gauge.basis() {
                assert!(lin.d.mul_vec(g).iter().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn first_order_lifts_are_valid() {
        let a = d3r();
        let s0 = Representation::simple(&a, 0);
        let lifts = first_order_lifts(&s0);
        assert_eq!(lifts.len(), 1);
        let lin = Linearization::new(&s0);
        for l in &lifts {
            assert!(l.is_valid());
            let e: Vec<Matrix> = l.coeffs.iter().map(|c| c[1].clone()).collect();
            assert!(!lin.is_gauge(&e));
        }
        let p = Representation::projective(&a, 0);
        assert!(first_order_lifts(&p).is_empty());
    }

    #[test]
    fn lift_as_module() {
        let a = d3r();
        let s0 = Representation::simple(&a, 0);
        let l = &first_order_lifts(&s0)[0];
        let (m, t) = l.as_representation();
        assert_eq!(m.dim(), 2);
        assert_eq!(t.len(), 3);
    }
}
