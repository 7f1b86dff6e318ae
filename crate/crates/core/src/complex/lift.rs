use crate::linalg::Matrix;
use crate::module::{cover_from_generators, ModuleMap, Representation};

use super::{BoundedComplex, ChainMap, Cochain, ComplexError, HomComplex, ProjectiveResolution};

/// A complex with a commuting nilpotent action `t`, viewed over `k[t]/(tⁿ)`.
#[derive(Clone, Debug)]
pub struct TruncatedComplex {
    pub complex: BoundedComplex,
    pub t: ChainMap,
    pub order: usize,
}

impl TruncatedComplex {
    pub fn new(complex: BoundedComplex, t: ChainMap, order: usize) -> Result<Self, ComplexError> {
        check_action(&complex, &t)?;
        Ok(TruncatedComplex { complex, t, order })
    }

    /// `V ⊗ k[t]/(tⁿ)`, basis `v ⊗ tᵏ` in block `k`.
    pub fn trivial(v: &BoundedComplex, order: usize) -> Self {
        let alg = v.algebra();
        let f = alg.field();
        let terms: Vec<Representation> = v
            .degrees()
            .map(|n| Representation::direct_sum_all(alg, std::iter::repeat_n(&v.term(n), order)).expect("same algebra"))
            .collect();
        let diffs = (v.low()..v.high())
            .map(|n| {
                let d = v.diff(n);
                let mut acc = d.clone();
                for _ in 1..order {
                    acc = acc.block_diag(&d);
                }
                acc
            })
            .collect();
        let complex = BoundedComplex::new(alg, v.low(), terms, diffs).expect("termwise sum of a complex");
        let t = ChainMap {
            low: v.low(),
            components: v
                .degrees()
                .map(|n| {
                    let dims = v.term(n).dims().to_vec();
                    ModuleMap {
                        components: dims
                            .iter()
                            .map(|&d| {
                                let mut m = Matrix::zeros(f, d * order, d * order);
                                for k in 0..order.saturating_sub(1) {
                                    m.set_block((k + 1) * d, k * d, &Matrix::identity(f, d));
                                }
                                m
                            })
                            .collect(),
                    }
                })
                .collect(),
        };
        TruncatedComplex { complex, t, order }
    }

    /// `M / tM` with the induced differential.
    pub fn reduce_mod_t(&self) -> BoundedComplex {
        let c = &self.complex;
        let quots: Vec<_> = c
            .degrees()
            .map(|n| c.term(n).quotient(&self.t.component(c, c, n).components))
            .collect();
        let f = c.algebra().field();
        let diffs = (c.low()..c.high())
            .map(|n| {
                let k = (n - c.low()) as usize;
                let (q0, q1) = (&quots[k], &quots[k + 1]);
                let d = c.diff(n);
                ModuleMap {
                    components: (0..q0.projection.components.len())
                        .map(|v| {
                            let p0 = &q0.projection.components[v];
                            let elim = p0.elimination();
                            let cols: Vec<Vec<u32>> = (0..p0.rows())
                                .map(|i| {
                                    let mut e = vec![0; p0.rows()];
                                    e[i] = 1;
                                    let s = elim.solve(&e).expect("projection is onto");
                                    q1.projection.components[v].mul_vec(&d.components[v].mul_vec(&s))
                                })
                                .collect();
                            if cols.is_empty() {
                                Matrix::zeros(f, q1.module.dims()[v], 0)
                            } else {
                                Matrix::from_columns(f, q1.module.dims()[v], &cols)
                            }
                        })
                        .collect(),
                }
            })
            .collect();
        BoundedComplex::new(
            c.algebra(),
            c.low(),
            quots.into_iter().map(|q| q.module).collect(),
            diffs,
        )
        .expect("reduction of a complex")
    }

    /// Termwise freeness over `k[t]/(tⁿ)`.
    pub fn is_termwise_free(&self) -> bool {
        let c = &self.complex;
        c.degrees().all(|n| {
            let t = self.t.component(c, c, n);
            t.components.iter().all(|m| {
                let nullity = m.cols() - m.rank();
                m.cols() == self.order * nullity && power_is_zero(m, self.order)
            })
        })
    }

    /// Every `Hⁱ` free over `k[t]/(tⁿ)`: `dim H = n · dim ker(t|H)`.
    pub fn is_proflat(&self) -> bool {
        self.is_proflat_from(self.complex.low())
    }

    /// Freeness of `Hⁱ` for `i ≥ from` only.
    pub fn is_proflat_from(&self, from: i64) -> bool {
        let c = &self.complex;
        let f = c.algebra().field();
        (from.max(c.low())..=c.high()).all(|n| {
            let z = c.cycles(n);
            let b = c.boundaries(n);
            let t = self.t.component(c, c, n);
            let mut dim_h = 0;
            let mut dim_ker = 0;
            for v in 0..z.len() {
                let (zv, bv) = (&z[v], &b[v]);
                dim_h += zv.dim() - bv.dim();
                if zv.dim() == 0 {
                    continue;
                }
                let cols: Vec<Vec<u32>> = zv
                    .basis()
                    .iter()
                    .map(|x| bv.reduce(&t.components[v].mul_vec(x)))
                    .collect();
                let m = Matrix::from_columns(f, zv.ambient(), &cols);
                dim_ker += (zv.dim() - m.rank()) - bv.dim();
            }
            dim_h == self.order * dim_ker
        })
    }
}

fn power_is_zero(m: &Matrix, n: usize) -> bool {
    let mut acc = Matrix::identity(m.field(), m.rows());
    for _ in 0..n {
        acc = acc.mul(m);
    }
    acc.is_zero()
}

fn check_action(c: &BoundedComplex, t: &ChainMap) -> Result<(), ComplexError> {
    match t.check(c, c) {
        Ok(()) => Ok(()),
        Err(ComplexError::NotAChainMap(n)) => Err(ComplexError::ActionNotCommuting(n)),
        Err(e) => Err(e),
    }
}

/// Whether every cohomology group of `M` is free over `k[t]/(tⁿ)`.
pub fn proflat_check(m: &BoundedComplex, t: &ChainMap, n: usize) -> Result<bool, ComplexError> {
    check_action(m, t)?;
    Ok(TruncatedComplex {
        complex: m.clone(),
        t: t.clone(),
        order: n,
    }
    .is_proflat())
}

/// `M = P ⊕ P` with `d(a, b) = (d a, α̃ a + d b)` and `ε(a, b) = (0, a)`,
/// where `α̃: P → P[1]` lifts the cocycle `α: P → V[1]` through `π`.
#[derive(Clone, Debug)]
pub struct FirstOrderQuasiLift {
    pub complex: BoundedComplex,
    pub epsilon: ChainMap,
    /// `M → V`, `(a, b) ↦ π(a)`.
    pub reduction: ChainMap,
    pub lifted_class: Vec<ModuleMap>,
    pub resolution: ProjectiveResolution,
}

impl FirstOrderQuasiLift {
    pub fn certified_from(&self) -> i64 {
        self.resolution.certified_from
    }

    pub fn as_truncated(&self) -> TruncatedComplex {
        TruncatedComplex {
            complex: self.complex.clone(),
            t: self.epsilon.clone(),
            order: 2,
        }
    }

    pub fn verify(&self) -> Result<(), ComplexError> {
        let m = &self.complex;
        let v = &self.resolution.target;
        check_action(m, &self.epsilon)?;
        self.reduction.check(m, v)?;
        for n in m.degrees() {
            let e = self.epsilon.component(m, m, n);
            if !e.then(&e).is_zero() {
                return Err(ComplexError::Precondition(format!("ε² ≠ 0 in degree {n}")));
            }
            if !e.then(&self.reduction.component(m, v, n)).is_zero() {
                return Err(ComplexError::Precondition(format!("reduction does not kill εM in degree {n}")));
            }
        }
        if !self.as_truncated().is_termwise_free() {
            return Err(ComplexError::Precondition("terms are not free over k[ε]".into()));
        }
        Ok(())
    }
}

fn generator_positions(res: &ProjectiveResolution, n: i64) -> Vec<(usize, usize)> {
    let alg = res.complex.algebra();
    let mut used = vec![0; alg.num_vertices()];
    res.generators_at(n)
        .iter()
        .map(|&v| {
            let pos = used[v];
            let dims = Representation::projective(alg, v).dims().to_vec();
            for (u, d) in used.iter_mut().zip(dims) {
                *u += d;
            }
            (v, pos)
        })
        .collect()
}

pub fn first_order_quasilift(
    res: &ProjectiveResolution,
    alpha: &Cochain,
) -> Result<FirstOrderQuasiLift, ComplexError> {
    let p = &res.complex;
    let v = &res.target;
    let alg = p.algebra();
    let f = alg.field();
    if alpha.degree != 1 {
        return Err(ComplexError::Precondition("class must have degree 1".into()));
    }
    let hom = HomComplex::new(p, v);
    if !hom.is_cocycle(alpha) {
        return Err(ComplexError::NotAChainMap(alpha.low));
    }
    let mut lifted: Vec<ModuleMap> = Vec::new();
    let mut above = ModuleMap::zero(&p.term(p.high() + 1), &p.term(p.high() + 2));
    for n in p.degrees().rev() {
        let next = p.term(n + 1);
        let d_next = p.diff(n + 1);
        let pi_next = res.qis.component(p, v, n + 1);
        let d = p.diff(n);
        let a = alpha.component(p, v, n);
        let mut gens = Vec::new();
        for (vtx, pos) in generator_positions(res, n) {
            let mut g = vec![0; p.term(n).dims()[vtx]];
            g[pos] = 1;
            let dg = d.components[vtx].mul_vec(&g);
            let mut target: Vec<u32> = above.components[vtx]
                .mul_vec(&dg)
                .into_iter()
                .map(|x| f.neg(x))
                .collect();
            target.extend(a.components[vtx].mul_vec(&g));
            let system = d_next.components[vtx].vstack(&pi_next.components[vtx]);
            let y = system
                .solve(&target)
                .expect("shapes agree")
                .ok_or(ComplexError::LiftFailed(n))?;
            gens.push((vtx, y));
        }
        let map = if gens.is_empty() {
            ModuleMap::zero(&p.term(n), &next)
        } else {
            cover_from_generators(&next, gens).map
        };
        lifted.push(map.clone());
        above = map;
    }
    lifted.reverse();

    let low = p.low();
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    let mut eps = Vec::new();
    let mut red = Vec::new();
    for n in p.degrees() {
        let pn = p.term(n);
        terms.push(pn.direct_sum(&pn).expect("same algebra"));
        let zero = ModuleMap::zero(&pn, &pn);
        eps.push(zero.stack(&ModuleMap::identity(&pn)).join(&zero.stack(&zero)));
        let pi = res.qis.component(p, v, n);
        red.push(pi.join(&ModuleMap::zero(&pn, &v.term(n))));
        if n < p.high() {
            let pn1 = p.term(n + 1);
            let dn = p.diff(n);
            let k = (n - low) as usize;
            let col_a = dn.stack(&lifted[k]);
            let col_b = ModuleMap::zero(&pn, &pn1).stack(&dn);
            diffs.push(col_a.join(&col_b));
        }
    }
    let complex = BoundedComplex::new(alg, low, terms, diffs)?;
    let lift = FirstOrderQuasiLift {
        complex,
        epsilon: ChainMap { low, components: eps },
        reduction: ChainMap { low, components: red },
        lifted_class: lifted,
        resolution: res.clone(),
    };
    lift.verify()?;
    Ok(lift)
}
