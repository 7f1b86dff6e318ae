use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{Field, Matrix};

use super::cover::projective_cover;
use super::{projective_basis, same_algebra, ModuleMap, Representation};

/// Random samples tried before falling back to exhaustion.
pub const ISO_SAMPLES: usize = 64;
/// Exhaustive search is used when `p^{dim Hom} ≤` this bound.
pub const ISO_EXHAUSTION_LIMIT: u64 = 1 << 20;

/// Above this many unknowns the naturality system is replaced by the
/// presentation-based solver.
const NAIVE_UNKNOWN_LIMIT: usize = 600;

/// A basis of `Hom(M, N)` with a coordinate solver.
#[derive(Clone, Debug)]
pub struct HomBasis {
    pub maps: Vec<ModuleMap>,
    zero: ModuleMap,
    pivots: Vec<usize>,
    inverse: Matrix,
}

impl HomBasis {
    fn new(field: Field, zero: ModuleMap, maps: Vec<ModuleMap>) -> Self {
        let d = maps.len();
        let flat: Vec<Vec<u32>> = maps.iter().map(ModuleMap::flatten).collect();
        let len = flat.first().map_or(0, Vec::len);
        let rows = Matrix::from_vec(field, d, len, flat.concat());
        let pivots = rows.rref().pivots;
        let square = rows.select_columns(&pivots);
        let inverse = square.inverse().expect("basis is linearly independent");
        HomBasis {
            maps,
            zero,
            pivots,
            inverse,
        }
    }

    pub fn dim(&self) -> usize {
        self.maps.len()
    }

    /// Coordinates of `f` in this basis, or `None` if `f` is not in the span.
    pub fn coordinates(&self, f: &ModuleMap) -> Option<Vec<u32>> {
        let flat = f.flatten();
        let at: Vec<u32> = self.pivots.iter().map(|&c| flat[c]).collect();
        // row vector `at` = coords · square, so coords = at · square⁻¹
        let coords = self.inverse.transpose().mul_vec(&at);
        (self.combine(&coords).flatten() == flat).then_some(coords)
    }

    pub fn combine(&self, coeffs: &[u32]) -> ModuleMap {
        let mut acc = self.zero.clone();
        for (m, &c) in self.maps.iter().zip(coeffs) {
            if c != 0 {
                for (a, b) in acc.components.iter_mut().zip(&m.components) {
                    a.add_assign_scaled(b, c);
                }
            }
        }
        acc
    }
}

/// Basis of `Hom_A(M, N)`.
pub fn hom_space(m: &Representation, n: &Representation) -> HomBasis {
    assert!(same_algebra(m.algebra(), n.algebra()), "Hom across different algebras");
    let unknowns: usize = m.dims().iter().zip(n.dims()).map(|(a, b)| a * b).sum();
    let maps = if unknowns <= NAIVE_UNKNOWN_LIMIT {
        naturality_solutions(m, n)
    } else {
        presentation_solutions(m, n)
    };
    let zero = ModuleMap::zero(m, n);
    if maps.is_empty() {
        return HomBasis {
            maps,
            zero,
            pivots: Vec::new(),
            inverse: Matrix::zeros(m.field(), 0, 0),
        };
    }
    HomBasis::new(m.field(), zero, maps)
}

pub fn hom_dim(m: &Representation, n: &Representation) -> usize {
    hom_space(m, n).dim()
}

/// Kernel of the assembled naturality system `f_t M_a − N_a f_s = 0`.
pub(crate) fn naturality_solutions(m: &Representation, n: &Representation) -> Vec<ModuleMap> {
    let f = m.field();
    let alg = m.algebra();
    let (md, nd) = (m.dims(), n.dims());
    let mut offs = Vec::with_capacity(md.len());
    let mut total = 0;
    for v in 0..md.len() {
        offs.push(total);
        total += md[v] * nd[v];
    }
    let rows: usize = alg
        .arrows()
        .iter()
        .map(|a| nd[a.target] * md[a.source])
        .sum();
    let mut sys = Matrix::zeros(f, rows, total);
    let mut r0 = 0;
    for (a, arr) in alg.arrows().iter().enumerate() {
        let (s, t) = (arr.source, arr.target);
        let ma = m.arrow_matrix(a);
        let na = n.arrow_matrix(a);
        for r in 0..nd[t] {
            for c in 0..md[s] {
                let row = r0 + r * md[s] + c;
                // (f_t M_a)[r,c] = Σ_k f_t[r,k] M_a[k,c]
                for k in 0..md[t] {
                    let x = ma.get(k, c);
                    if x != 0 {
                        sys.add_at(row, offs[t] + r * md[t] + k, x);
                    }
                }
                // (N_a f_s)[r,c] = Σ_k N_a[r,k] f_s[k,c]
                for k in 0..nd[s] {
                    let x = na.get(r, k);
                    if x != 0 {
                        sys.add_at(row, offs[s] + k * md[s] + c, f.neg(x));
                    }
                }
            }
        }
        r0 += nd[t] * md[s];
    }
    let ker = sys.kernel();
    (0..ker.cols())
        .map(|j| ModuleMap::from_flat(f, m, n, &ker.column(j)))
        .collect()
}

/// Hom via a projective presentation of `M`: a map is determined by the
/// images `n_j ∈ N_{v_j}` of the top generators, subject to every element
/// of the kernel of the cover mapping to zero.
pub(crate) fn presentation_solutions(m: &Representation, n: &Representation) -> Vec<ModuleMap> {
    let f = m.field();
    let alg = m.algebra();
    let nv = alg.num_vertices();
    let cover = projective_cover(m);
    let gens = cover.summand_vertices();
    let mut unk_off = Vec::with_capacity(gens.len());
    let mut total = 0;
    for &v in &gens {
        unk_off.push(total);
        total += n.dims()[v];
    }
    if total == 0 {
        return Vec::new();
    }
    // Action of each basis element of A e_{v_j} on N, laid out per vertex of P0.
    // entries[w] lists, for each basis vector of P0_w, (generator j, matrix N(x)).
    let mut entries: Vec<Vec<(usize, Matrix)>> = vec![Vec::new(); nv];
    for (j, &v) in gens.iter().enumerate() {
        let (pdims, index) = projective_basis(alg, v);
        let mut per: Vec<Vec<Option<Matrix>>> = pdims.iter().map(|&d| vec![None; d]).collect();
        for (x, slot) in index.iter().enumerate() {
            if let Some((w, pos)) = slot {
                per[*w][*pos] = Some(n.element_matrix(x));
            }
        }
        for w in 0..nv {
            for mat in per[w].drain(..) {
                entries[w].push((j, mat.expect("every slot filled")));
            }
        }
    }
    let mut blocks = Vec::new();
    for w in 0..nv {
        let ker = cover.map.components[w].kernel();
        for kc in 0..ker.cols() {
            let k = ker.column(kc);
            let mut block = Matrix::zeros(f, n.dims()[w], total);
            for (idx, (j, mat)) in entries[w].iter().enumerate() {
                let c = k[idx];
                if c == 0 {
                    continue;
                }
                let v = gens[*j];
                for r in 0..n.dims()[w] {
                    for col in 0..n.dims()[v] {
                        let x = mat.get(r, col);
                        if x != 0 {
                            block.add_at(r, unk_off[*j] + col, f.mul(c, x));
                        }
                    }
                }
            }
            blocks.push(block);
        }
    }
    let sys = blocks
        .into_iter()
        .fold(Matrix::zeros(f, 0, total), |acc, b| acc.vstack(&b));
    let sol = sys.kernel();
    // sections s_w: M_w → P0_w with π_w s_w = 1
    let sections: Vec<Matrix> = (0..nv)
        .map(|w| {
            let pi = &cover.map.components[w];
            let elim = pi.elimination();
            let cols: Vec<Vec<u32>> = (0..m.dims()[w])
                .map(|k| {
                    let mut e = vec![0; m.dims()[w]];
                    e[k] = 1;
                    elim.solve(&e).expect("cover is surjective")
                })
                .collect();
            Matrix::from_columns(f, pi.cols(), &cols)
        })
        .collect();
    (0..sol.cols())
        .map(|s| {
            let x = sol.column(s);
            let components = (0..nv)
                .map(|w| {
                    let cols: Vec<Vec<u32>> = entries[w]
                        .iter()
                        .map(|(j, mat)| {
                            let v = gens[*j];
                            mat.mul_vec(&x[unk_off[*j]..unk_off[*j] + n.dims()[v]])
                        })
                        .collect();
                    let fw = Matrix::from_columns(f, n.dims()[w], &cols);
                    fw.mul(&sections[w])
                })
                .collect();
            ModuleMap { components }
        })
        .collect()
}

#[derive(Clone, Debug)]
pub enum IsoResult {
    Yes(ModuleMap),
    No,
    Unknown,
}

impl IsoResult {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsoResult::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, IsoResult::No)
    }

    pub fn label(&self) -> &'static str {
        match self {
            IsoResult::Yes(_) => "yes",
            IsoResult::No => "no",
            IsoResult::Unknown => "unknown",
        }
    }
}

pub fn is_isomorphic(m: &Representation, n: &Representation, seed: u64) -> IsoResult {
    if !same_algebra(m.algebra(), n.algebra()) || m.dims() != n.dims() {
        return IsoResult::No;
    }
    if m.is_zero() {
        return IsoResult::Yes(ModuleMap::identity(m));
    }
    if m == n {
        return IsoResult::Yes(ModuleMap::identity(m));
    }
    let h = hom_space(m, n);
    if h.dim() == 0 || h.dim() != hom_dim(n, m) || h.dim() != hom_dim(m, m) {
        return IsoResult::No;
    }
    let f = m.field();
    let p = f.p();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ISO_SAMPLES {
        let coeffs: Vec<u32> = (0..h.dim()).map(|_| rng.gen_range(0..p)).collect();
        let cand = h.combine(&coeffs);
        if cand.is_invertible() {
            return IsoResult::Yes(cand);
        }
    }
    let limit_exp = (ISO_EXHAUSTION_LIMIT as f64).log(p as f64);
    if (h.dim() as f64) > limit_exp + 1e-9 {
        return IsoResult::Unknown;
    }
    let mut coeffs = vec![0u32; h.dim()];
    loop {
        let mut i = 0;
        while i < coeffs.len() {
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
        if i == coeffs.len() {
            return IsoResult::No;
        }
        let cand = h.combine(&coeffs);
        if cand.is_invertible() {
            return IsoResult::Yes(cand);
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::testutil::d3r;
    use super::*;

    fn corpus_modules(a: &std::sync::Arc<crate::algebra::Algebra>) -> Vec<Representation> {
        let mut out: Vec<Representation> = (0..3)
            .flat_map(|i| {
                [
                    Representation::simple(a, i),
                    Representation::projective(a, i),
                    Representation::injective(a, i),
                ]
            })
            .collect();
        for w in ["beta", "delta", "lambda", "delta*beta", "lambda*delta", "beta*lambda", "alpha", "rho^-*beta"] {
            if let Ok(m) = Representation::string_module(a, w) {
                out.push(m);
            }
        }
        out
    }

    #[test]
    fn hom_from_projective_is_vertex_space() {
        let a = d3r();
        for m in corpus_modules(&a) {
            for i in 0..3 {
                assert_eq!(hom_dim(&Representation::projective(&a, i), &m), m.dims()[i]);
            }
        }
    }

    #[test]
    fn basic_hom_dims() {
        let a = d3r();
        let s = |i| Representation::simple(&a, i);
        assert_eq!(hom_dim(&s(0), &s(1)), 0);
        assert_eq!(hom_dim(&Representation::projective(&a, 0), &s(0)), 1);
        let both = s(0).direct_sum(&s(1)).unwrap();
        assert_eq!(hom_dim(&both, &both), 2);
    }

    #[test]
    fn two_solvers_agree() {
        let a = d3r();
        let ms = corpus_modules(&a);
        for m in &ms {
            for n in &ms {
                let x = naturality_solutions(m, n);
                let y = presentation_solutions(m, n);
                assert_eq!(x.len(), y.len());
                let hb = hom_space(m, n);
                for g in &y {
                    assert!(g.is_natural(m, n));
                    assert!(hb.coordinates(g).is_some());
                }
            }
        }
    }

    #[test]
    fn iso_with_conjugate() {
        let a = d3r();
        let f = a.field();
        let m = Representation::projective(&a, 0);
        let changes: Vec<Matrix> = m
            .dims()
            .iter()
            .map(|&d| {
                let mut g = Matrix::identity(f, d);
                for i in 0..d {
                    for j in (i + 1)..d {
                        g.set(i, j, ((i + 2 * j) % 2) as u32);
                    }
                }
                g
            })
            .collect();
        let c = m.conjugate(&changes);
        match is_isomorphic(&m, &c, 1) {
            IsoResult::Yes(w) => {
                assert!(w.is_natural(&m, &c));
                assert!(w.is_invertible());
            }
            other => panic!("expected yes, got {other:?}"),
        }
        assert!(is_isomorphic(&Representation::simple(&a, 0), &Representation::simple(&a, 1), 0).is_no());
        let x = Representation::string_module(&a, "beta").unwrap();
        let y = Representation::simple(&a, 0).direct_sum(&Representation::simple(&a, 1)).unwrap();
        assert!(is_isomorphic(&x, &y, 0).is_no());
    }
}
