use serde::Serialize;

use crate::homalg::ext_dim;
use crate::linalg::{Matrix, Subspace};
use crate::module::{hom_dim, hom_space, HomBasis, ModuleMap, Representation};

use super::{resolve_complex, BoundedComplex, ComplexError, ProjectiveResolution};

/// A degree-`k` element of `Hom•(P, W)`: maps `Pⁿ → Wⁿ⁺ᵏ` for `n ≥ low`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain {
    pub degree: i64,
    pub low: i64,
    pub components: Vec<ModuleMap>,
}

impl Cochain {
    pub fn component(&self, p: &BoundedComplex, w: &BoundedComplex, n: i64) -> ModuleMap {
        let k = n - self.low;
        if k >= 0 && (k as usize) < self.components.len() {
            self.components[k as usize].clone()
        } else {
            ModuleMap::zero(&p.term(n), &w.term(n + self.degree))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(ModuleMap::is_zero)
    }

    /// `Σ cⱼ bⱼ` over cochains of one shape.
    pub fn combine(basis: &[Cochain], coeffs: &[u32]) -> Cochain {
        let mut acc = basis[0].scale(coeffs[0]);
        for (b, &c) in basis.iter().zip(coeffs).skip(1) {
            if c != 0 {
                acc.components = acc
                    .components
                    .iter()
                    .zip(&b.components)
                    .map(|(x, y)| x.add(&y.scale(c)))
                    .collect();
            }
        }
        acc
    }

    pub fn scale(&self, c: u32) -> Cochain {
        Cochain {
            degree: self.degree,
            low: self.low,
            components: self.components.iter().map(|m| m.scale(c)).collect(),
        }
    }
}

/// `Hom•(P, W)` with `D φ = d_W φ − (−1)^k φ d_P`.
#[derive(Clone, Debug)]
pub struct HomComplex {
    pub source: BoundedComplex,
    pub target: BoundedComplex,
}

struct Blocks {
    degree: i64,
    blocks: Vec<(i64, HomBasis)>,
    offsets: Vec<usize>,
    dim: usize,
}

impl Blocks {
    fn position(&self, n: i64) -> Option<usize> {
        self.blocks.iter().position(|(m, _)| *m == n)
    }
}

impl HomComplex {
    pub fn new(source: &BoundedComplex, target: &BoundedComplex) -> Self {
        HomComplex {
            source: source.clone(),
            target: target.clone(),
        }
    }

    fn blocks(&self, k: i64) -> Blocks {
        let mut blocks = Vec::new();
        let mut offsets = Vec::new();
        let mut dim = 0;
        for n in self.source.degrees() {
            let (Some(p), Some(w)) = (self.source.term_ref(n), self.target.term_ref(n + k)) else {
                continue;
            };
            if p.is_zero() || w.is_zero() {
                continue;
            }
            let h = hom_space(p, w);
            if h.dim() > 0 {
                offsets.push(dim);
                dim += h.dim();
                blocks.push((n, h));
            }
        }
        Blocks {
            degree: k,
            blocks,
            offsets,
            dim,
        }
    }

    fn cochain(&self, b: &Blocks, coords: &[u32]) -> Cochain {
        let low = self.source.low();
        let components = self
            .source
            .degrees()
            .map(|n| match b.position(n) {
                Some(j) => {
                    let h = &b.blocks[j].1;
                    h.combine(&coords[b.offsets[j]..b.offsets[j] + h.dim()])
                }
                None => ModuleMap::zero(&self.source.term(n), &self.target.term(n + b.degree)),
            })
            .collect();
        Cochain {
            degree: b.degree,
            low,
            components,
        }
    }

    fn coordinates(&self, b: &Blocks, c: &Cochain) -> Option<Vec<u32>> {
        let mut out = vec![0; b.dim];
        for n in self.source.degrees() {
            let comp = c.component(&self.source, &self.target, n);
            match b.position(n) {
                Some(j) => {
                    let x = b.blocks[j].1.coordinates(&comp)?;
                    out[b.offsets[j]..b.offsets[j] + x.len()].copy_from_slice(&x);
                }
                None if !comp.is_zero() => return None,
                None => {}
            }
        }
        Some(out)
    }

    /// `D φ` for a degree-`k` cochain.
    pub fn differential_of(&self, c: &Cochain) -> Cochain {
        let (p, w) = (&self.source, &self.target);
        let k = c.degree;
        let sign_neg = k.rem_euclid(2) == 0;
        let components = p
            .degrees()
            .map(|n| {
                let a = c.component(p, w, n).then(&w.diff(n + k));
                let b = p.diff(n).then(&c.component(p, w, n + 1));
                if sign_neg {
                    a.add(&b.neg())
                } else {
                    a.add(&b)
                }
            })
            .collect();
        Cochain {
            degree: k + 1,
            low: p.low(),
            components,
        }
    }

    fn differential_matrix(&self, from: &Blocks, to: &Blocks) -> Matrix {
        let f = self.source.algebra().field();
        let mut m = Matrix::zeros(f, to.dim, from.dim);
        for col in 0..from.dim {
            let mut e = vec![0; from.dim];
            e[col] = 1;
            let d = self.differential_of(&self.cochain(from, &e));
            let y = self
                .coordinates(to, &d)
                .expect("D maps cochains to cochains");
            for (row, x) in y.into_iter().enumerate() {
                m.set(row, col, x);
            }
        }
        m
    }

    /// Cocycle representatives of a basis of `Hᵏ`, and the coboundaries.
    pub fn cohomology(&self, k: i64) -> (Vec<Cochain>, usize) {
        let f = self.source.algebra().field();
        let prev = self.blocks(k - 1);
        let cur = self.blocks(k);
        let next = self.blocks(k + 1);
        let dk = self.differential_matrix(&cur, &next);
        let dprev = self.differential_matrix(&prev, &cur);
        let mut span = Subspace::spanned_by(f, cur.dim, dprev.columns().iter());
        let boundaries = span.dim();
        let reps: Vec<Cochain> = if cur.dim == 0 {
            Vec::new()
        } else {
            dk.kernel()
                .columns()
                .into_iter()
                .filter(|z| span.insert(z))
                .map(|z| self.cochain(&cur, &z))
                .collect()
        };
        (reps, boundaries)
    }

    pub fn cohomology_dim(&self, k: i64) -> usize {
        self.cohomology(k).0.len()
    }

    /// Whether a degree-`k` cochain is a cocycle.
    pub fn is_cocycle(&self, c: &Cochain) -> bool {
        self.differential_of(c).is_zero()
    }
}

/// `Hom_D(V, W[i])` computed from a truncated resolution of `V`.
#[derive(Clone, Debug)]
pub struct DerivedExt {
    pub degree: i64,
    pub dim: usize,
    pub resolution: ProjectiveResolution,
    pub hom: HomComplex,
    /// Cocycles `Pⁿ → Wⁿ⁺ⁱ` representing a basis.
    pub basis: Vec<Cochain>,
}

/// Depth at which the truncation no longer affects `Hⁱ Hom(P, W)`.
pub fn required_depth(v: &BoundedComplex, w: &BoundedComplex, i: i64) -> usize {
    let default = i.unsigned_abs() as i64 + 3;
    let needed = v.low() - w.low() + i + 2;
    default.max(needed).max(2) as usize
}

pub fn derived_ext_at_depth(v: &BoundedComplex, w: &BoundedComplex, i: i64, depth: usize) -> DerivedExt {
    let resolution = resolve_complex(v, depth);
    let hom = HomComplex::new(&resolution.complex, w);
    let (basis, _) = hom.cohomology(i);
    DerivedExt {
        degree: i,
        dim: basis.len(),
        resolution,
        hom,
        basis,
    }
}

pub fn derived_ext(v: &BoundedComplex, w: &BoundedComplex, i: i64) -> DerivedExt {
    derived_ext_at_depth(v, w, i, required_depth(v, w, i))
}

pub fn derived_ext_dim(v: &BoundedComplex, w: &BoundedComplex, i: i64) -> usize {
    derived_ext(v, w, i).dim
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexTangent {
    pub t_f: usize,
    /// Classes inducing zero on cohomology `Hⁱ → Hⁱ⁺¹`.
    pub t_f_proflat: usize,
}

/// Derived `Ext¹(V, V)` and a basis of the classes inducing zero maps
/// `Hⁱ(V) → Hⁱ⁺¹(V)` on cohomology.
pub fn proflat_classes(v: &BoundedComplex) -> (DerivedExt, Vec<Cochain>) {
    let e = derived_ext(v, v, 1);
    let p = &e.resolution.complex;
    let f = v.algebra().field();
    let mut columns: Vec<Vec<u32>> = Vec::new();
    for alpha in &e.basis {
        let mut col = Vec::new();
        for i in v.degrees() {
            let cycles = p.cycles(i);
            let bounds = v.boundaries(i + 1);
            let a = alpha.component(p, v, i);
            for (vtx, z) in cycles.iter().enumerate() {
                for zb in z.basis() {
                    let y = a.components[vtx].mul_vec(zb);
                    col.extend(bounds[vtx].reduce(&y));
                }
            }
        }
        columns.push(col);
    }
    let classes = if e.basis.is_empty() {
        Vec::new()
    } else if columns[0].is_empty() {
        e.basis.clone()
    } else {
        Matrix::from_columns(f, columns[0].len(), &columns)
            .kernel()
            .columns()
            .iter()
            .map(|c| Cochain::combine(&e.basis, c))
            .collect()
    };
    (e, classes)
}

pub fn complex_tangent(v: &BoundedComplex) -> ComplexTangent {
    let (e, classes) = proflat_classes(v);
    ComplexTangent {
        t_f: e.dim,
        t_f_proflat: classes.len(),
    }
}

/// `Σᵢ dim Ext¹(Hⁱ, Hⁱ)`, the tangent dimension of split deformations.
pub fn split_tangent_dim(v: &BoundedComplex) -> usize {
    v.degrees()
        .map(|n| {
            let h = v.cohomology_at(n);
            if h.is_zero() {
                0
            } else {
                ext_dim(&h, &h, 1)
            }
        })
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoTermReport {
    pub n: usize,
    pub ext_n: usize,
    pub ext_n_plus_1: usize,
    /// `Extⁿ = 0` and `Extⁿ⁺¹ ≠ 0`.
    pub endomorphisms_scalar_possible: bool,
    pub tangent: ComplexTangent,
    /// `dim Ext¹(U₋ₙ, U₋ₙ) + dim Ext¹(U₀, U₀)`.
    pub ext1_sum: usize,
}

/// The two-term complex `U₋ₙ[n] ⊕ U₀` with zero differential.
pub fn two_term_analysis(
    u0: &Representation,
    u_n: &Representation,
    n: usize,
) -> Result<TwoTermReport, ComplexError> {
    if n == 0 {
        return Err(ComplexError::Precondition("n must be at least 1".into()));
    }
    for (name, u) in [("U_0", u0), ("U_-n", u_n)] {
        let e = hom_dim(u, u);
        if e != 1 {
            return Err(ComplexError::Precondition(format!("dim End({name}) = {e}, expected 1")));
        }
    }
    let ext_n = ext_dim(u0, u_n, n);
    let ext_n_plus_1 = ext_dim(u0, u_n, n + 1);
    let v = BoundedComplex::concentrated(u_n, -(n as i64))
        .direct_sum(&BoundedComplex::concentrated(u0, 0));
    Ok(TwoTermReport {
        n,
        ext_n,
        ext_n_plus_1,
        endomorphisms_scalar_possible: ext_n == 0 && ext_n_plus_1 != 0,
        tangent: complex_tangent(&v),
        ext1_sum: ext_dim(u_n, u_n, 1) + ext_dim(u0, u0, 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::d3r;

    #[test]
    fn module_case() {
        let a = d3r();
        for w in ["@0", "beta", "delta*beta"] {
            let v = Representation::string_module(&a, w).unwrap();
            let c = BoundedComplex::concentrated(&v, 0);
            assert_eq!(derived_ext_dim(&c, &c, 0), hom_dim(&v, &v), "{w}");
            assert_eq!(derived_ext_dim(&c, &c, 1), ext_dim(&v, &v, 1), "{w}");
            assert_eq!(derived_ext_dim(&c, &c, 2), ext_dim(&v, &v, 2), "{w}");
        }
    }

    #[test]
    fn depth_independent() {
        let a = d3r();
        let v = Representation::simple(&a, 0);
        let c = BoundedComplex::concentrated(&v, 0);
        let d = required_depth(&c, &c, 1);
        assert_eq!(
            derived_ext_at_depth(&c, &c, 1, d).dim,
            derived_ext_at_depth(&c, &c, 1, d + 1).dim
        );
    }

    #[test]
    fn acyclic_source() {
        let a = d3r();
        let m = Representation::string_module(&a, "beta").unwrap();
        let c = BoundedComplex::two_term(0, &m, &m, ModuleMap::identity(&m)).unwrap();
        let w = BoundedComplex::concentrated(&Representation::simple(&a, 0), 0);
        for i in 0..3 {
            assert_eq!(derived_ext_dim(&c, &w, i), 0);
        }
    }

    #[test]
    fn split_complex_tangent() {
        let a = d3r();
        let s0 = Representation::simple(&a, 0);
        let v = BoundedComplex::concentrated(&s0, 0).direct_sum(&BoundedComplex::concentrated(&s0, -1));
        let t = complex_tangent(&v);
        let mut expect = 0;
        for i in [-1i64, 0] {
            for j in [-1i64, 0] {
                let e = 1 + i - j;
                expect += match e {
                    0 => hom_dim(&s0, &s0),
                    e if e > 0 => ext_dim(&s0, &s0, e as usize),
                    _ => 0,
                };
            }
        }
        assert_eq!(t.t_f, expect);
        // Ext¹ on each summand plus Ext²(S₀, S₀) from degree 0 to degree −1
        assert_eq!(t.t_f_proflat, 2 * ext_dim(&s0, &s0, 1) + ext_dim(&s0, &s0, 2));
        assert_eq!(split_tangent_dim(&v), 2 * ext_dim(&s0, &s0, 1));
    }

    #[test]
    fn one_term_tangent() {
        let a = d3r();
        let v = Representation::simple(&a, 1);
        let t = complex_tangent(&BoundedComplex::concentrated(&v, 0));
        assert_eq!(t.t_f, 1);
        assert_eq!(t.t_f_proflat, 1);
    }
}
