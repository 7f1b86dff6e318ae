use std::sync::Arc;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::complex::BoundedComplex;
use crate::homalg::right_multiplication;
use crate::linalg::{Field, Matrix};
use crate::module::{hom_space, is_isomorphic, HomBasis, ModuleMap, Representation};

use super::graded::{split_map, Graded};
use super::{regular_bimodule, tensor_bimodule_maps, tensor_bimodules, Bimodule, BimoduleError, Check};

/// `Hom_Γ(X, Γ)` with the bases used to build it.
struct Dual {
    bimodule: Bimodule,
    /// `[j][i]`: `Hom_Γ(X e_j, Γ e_i)`.
    homs: Vec<Vec<HomBasis>>,
}

/// `X e_j` as a left `Γ`-module.
fn column(g: &Graded, j: usize) -> Representation {
    let dims = g.dims.iter().map(|row| row[j]).collect();
    let maps = g.left_maps.iter().map(|per_j| per_j[j].clone()).collect();
    Representation::unchecked(&g.left, dims, maps).expect("restriction shapes")
}

/// Matrix of `f ↦ op(f)` between two Hom bases.
fn induced(f: Field, src: &HomBasis, tgt: &HomBasis, op: impl Fn(&ModuleMap) -> ModuleMap) -> Matrix {
    let mut out = Matrix::zeros(f, tgt.dim(), src.dim());
    for (col, h) in src.maps.iter().enumerate() {
        let coords = tgt.coordinates(&op(h)).expect("composite is a module map");
        for (row, x) in coords.into_iter().enumerate() {
            out.set(row, col, x);
        }
    }
    out
}

/// The algebra `Λ ⊗ Γᵒᵖ` carrying `Hom_Γ(X, Γ)` for `X` over `Γ ⊗ Λᵒᵖ`.
fn dual_envelope(x_env: &Arc<Algebra>) -> Arc<Algebra> {
    let ts = x_env.tensor_structure().expect("bimodule algebra");
    Algebra::tensor(&ts.right.opposite(), &ts.left.opposite()).expect("same field")
}

fn dual_with(x: &Bimodule, env: &Arc<Algebra>) -> Result<Dual, BimoduleError> {
    let g = Graded::of_bimodule(x);
    let gamma = &g.left;
    let f = g.field();
    let (ng, nl) = (gamma.num_vertices(), g.right_op.num_vertices());
    let cols: Vec<Representation> = (0..nl).map(|j| column(&g, j)).collect();
    let projs: Vec<Representation> = (0..ng).map(|i| Representation::projective(gamma, i)).collect();
    let homs: Vec<Vec<HomBasis>> = cols
        .iter()
        .map(|c| projs.iter().map(|p| hom_space(c, p)).collect())
        .collect();
    let dims = homs.iter().map(|row| row.iter().map(HomBasis::dim).collect()).collect();
    // Λ-arrow b runs from the target to the source of its opposite arrow
    let left_maps = g
        .right_op
        .arrows()
        .iter()
        .enumerate()
        .map(|(b, arr)| {
            let rho = ModuleMap {
                components: g.right_maps[b].clone(),
            };
            let (s, t) = (arr.target, arr.source);
            (0..ng)
                .map(|i| induced(f, &homs[s][i], &homs[t][i], |h| rho.then(h)))
                .collect()
        })
        .collect();
    let right_maps = gamma
        .arrows()
        .iter()
        .enumerate()
        .map(|(c, arr)| {
            let rho = right_multiplication(gamma, c);
            let (u, w) = (arr.source, arr.target);
            (0..nl)
                .map(|j| induced(f, &homs[j][w], &homs[j][u], |h| h.then(&rho)))
                .collect()
        })
        .collect();
    let ts = env.tensor_structure().expect("bimodule algebra");
    let dual = Graded {
        left: Arc::clone(&ts.left),
        right_op: Arc::clone(&ts.right),
        dims,
        left_maps,
        right_maps,
    };
    Ok(Dual {
        bimodule: dual.to_bimodule(env)?,
        homs,
    })
}

/// `Hom_Γ(X, Γ)` as a `Λ`-`Γ`-bimodule.
pub fn dual_bimodule(x: &Bimodule) -> Result<Bimodule, BimoduleError> {
    let env = dual_envelope(x.module().algebra());
    Ok(dual_with(x, &env)?.bimodule)
}

/// `φ*: Hom_Γ(X', Γ) → Hom_Γ(X, Γ)` for `φ: X → X'`.
fn dual_map(x: &Bimodule, dx: &Dual, dx2: &Dual, phi: &ModuleMap) -> ModuleMap {
    let ts = x.structure();
    let split = split_map(ts, phi);
    let (ng, nl) = (ts.left.num_vertices(), ts.right.num_vertices());
    let env = dx.bimodule.module().algebra();
    let dts = env.tensor_structure().expect("bimodule algebra");
    let mut components = vec![Matrix::zeros(x.module().field(), 0, 0); env.num_vertices()];
    for j in 0..nl {
        let phi_j = ModuleMap {
            components: (0..ng).map(|i| split[i][j].clone()).collect(),
        };
        for i in 0..ng {
            components[dts.vertex(j, i)] = induced(x.module().field(), &dx2.homs[j][i], &dx.homs[j][i], |h| phi_j.then(h));
        }
    }
    ModuleMap { components }
}

/// `P̃ⁿ = Hom_Γ(P⁻ⁿ, Γ)` with the transposed differentials.
pub fn dual_complex(p: &BoundedComplex) -> Result<BoundedComplex, BimoduleError> {
    let env = dual_envelope(p.algebra());
    let bims: Vec<Bimodule> = p
        .degrees()
        .map(|n| Bimodule::new(p.term(n)))
        .collect::<Result<_, _>>()?;
    let duals: Vec<Dual> = bims.iter().map(|b| dual_with(b, &env)).collect::<Result<_, _>>()?;
    let low = p.low();
    let mut terms: Vec<Representation> = duals.iter().map(|d| d.bimodule.module().clone()).collect();
    terms.reverse();
    let mut diffs = Vec::new();
    // d̃^{−n−1} = (dⁿ)*, listed from the lowest degree of P̃
    for k in (0..bims.len().saturating_sub(1)).rev() {
        diffs.push(dual_map(&bims[k], &duals[k], &duals[k + 1], &p.diff(low + k as i64)));
    }
    BoundedComplex::new(&env, -p.high(), terms, diffs).map_err(|e| BimoduleError::Relations(e.to_string()))
}

/// Places `blocks[(row, col)]` into a map between direct sums.
fn assemble(
    f: Field,
    src: &[Representation],
    tgt: &[Representation],
    blocks: &[(usize, usize, ModuleMap)],
    nv: usize,
) -> ModuleMap {
    let offsets = |parts: &[Representation]| -> Vec<Vec<usize>> {
        let mut acc = vec![0; nv];
        let mut out = Vec::with_capacity(parts.len() + 1);
        for p in parts {
            out.push(acc.clone());
            for (a, d) in acc.iter_mut().zip(p.dims()) {
                *a += d;
            }
        }
        out.push(acc);
        out
    };
    let so = offsets(src);
    let to = offsets(tgt);
    let mut components: Vec<Matrix> = (0..nv)
        .map(|v| Matrix::zeros(f, to[tgt.len()][v], so[src.len()][v]))
        .collect();
    for (r, c, m) in blocks {
        for (v, comp) in m.components.iter().enumerate() {
            components[v].set_block(to[*r][v], so[*c][v], comp);
        }
    }
    ModuleMap { components }
}

/// Total complex of `P ⊗ Q` with `d = d_P ⊗ 1 + (−1)^a 1 ⊗ d_Q`.
pub fn total_tensor(p: &BoundedComplex, q: &BoundedComplex) -> Result<BoundedComplex, BimoduleError> {
    let pt = p.algebra().tensor_structure().ok_or(BimoduleError::NotBimodule)?;
    let qt = q.algebra().tensor_structure().ok_or(BimoduleError::NotBimodule)?;
    let env = Algebra::tensor(&pt.left, &qt.right).map_err(|_| BimoduleError::AlgebraMismatch)?;
    let f = env.field();
    let nv = env.num_vertices();
    let pb: Vec<Bimodule> = p.degrees().map(|n| Bimodule::new(p.term(n))).collect::<Result<_, _>>()?;
    let qb: Vec<Bimodule> = q.degrees().map(|n| Bimodule::new(q.term(n))).collect::<Result<_, _>>()?;
    let (low, high) = (p.low() + q.low(), p.high() + q.high());
    // pieces[m − low]: (a, b, P^a ⊗ Q^b)
    let mut pieces: Vec<Vec<(i64, i64, Bimodule)>> = Vec::new();
    for m in low..=high {
        let mut row = Vec::new();
        for a in p.degrees() {
            let b = m - a;
            if b < q.low() || b > q.high() {
                continue;
            }
            let t = tensor_bimodules(&pb[(a - p.low()) as usize], &qb[(b - q.low()) as usize])?;
            row.push((a, b, t));
        }
        pieces.push(row);
    }
    let terms_parts: Vec<Vec<Representation>> = pieces
        .iter()
        .map(|row| {
            row.iter()
                .map(|(_, _, t)| t.module().with_algebra(&env).expect("same envelope"))
                .collect()
        })
        .collect();
    let terms: Vec<Representation> = terms_parts
        .iter()
        .map(|parts| Representation::direct_sum_all(&env, parts).expect("same envelope"))
        .collect();
    let mut diffs = Vec::new();
    for k in 0..pieces.len().saturating_sub(1) {
        let mut blocks = Vec::new();
        for (c, (a, b, _)) in pieces[k].iter().enumerate() {
            let (ia, ib) = ((a - p.low()) as usize, (b - q.low()) as usize);
            for (r, (a2, b2, _)) in pieces[k + 1].iter().enumerate() {
                let map = if *a2 == a + 1 && b2 == b {
                    tensor_bimodule_maps(
                        &p.diff(*a),
                        &ModuleMap::identity(qb[ib].module()),
                        (&pb[ia], &pb[ia + 1]),
                        (&qb[ib], &qb[ib]),
                    )?
                } else if a2 == a && *b2 == b + 1 {
                    let m = tensor_bimodule_maps(
                        &ModuleMap::identity(pb[ia].module()),
                        &q.diff(*b),
                        (&pb[ia], &pb[ia]),
                        (&qb[ib], &qb[ib + 1]),
                    )?;
                    if a.rem_euclid(2) == 1 {
                        m.neg()
                    } else {
                        m
                    }
                } else {
                    continue;
                };
                blocks.push((r, c, map));
            }
        }
        diffs.push(assemble(f, &terms_parts[k], &terms_parts[k + 1], &blocks, nv));
    }
    BoundedComplex::new(&env, low, terms, diffs).map_err(|e| BimoduleError::Relations(e.to_string()))
}

#[derive(Clone, Debug, Serialize)]
pub struct TiltingReport {
    pub terms_certified: bool,
    /// Degrees where `P ⊗_Λ P̃` has cohomology.
    pub forward_support: Vec<i64>,
    pub forward_h0: Check,
    pub backward_support: Vec<i64>,
    pub backward_h0: Check,
    pub verdict: Check,
}

fn support(c: &BoundedComplex) -> Vec<i64> {
    c.degrees().filter(|&n| c.cohomology_dim(n) != 0).collect()
}

fn concentrated_regular(c: &BoundedComplex, a: &Arc<Algebra>) -> (Vec<i64>, Check) {
    let s = support(c);
    if s != [0] {
        return (s, Check::Fails);
    }
    let h = c.cohomology_at(0);
    (s, Check::from_iso(&is_isomorphic(&h, regular_bimodule(a).module(), 0)))
}

/// Checks that `P ⊗_Λ P̃ ≅ Γ` and `P̃ ⊗_Γ P ≅ Λ`, with `P̃ = Hom_Γ(P, Γ)`.
pub fn verify_nice_tilting(p: &BoundedComplex) -> Result<TiltingReport, BimoduleError> {
    let mut terms_certified = true;
    for n in p.degrees() {
        let c = Bimodule::new(p.term(n))?.certificates();
        terms_certified &= c.left_projective && c.right_projective;
    }
    let q = dual_complex(p)?;
    let forward = total_tensor(p, &q)?;
    let backward = total_tensor(&q, p)?;
    let pt = p.algebra().tensor_structure().ok_or(BimoduleError::NotBimodule)?;
    let qt = q.algebra().tensor_structure().expect("dual is a bimodule complex");
    let (forward_support, forward_h0) = concentrated_regular(&forward, &pt.left);
    let (backward_support, backward_h0) = concentrated_regular(&backward, &qt.left);
    Ok(TiltingReport {
        terms_certified,
        verdict: Check::all([Check::of(terms_certified), forward_h0, backward_h0]),
        forward_support,
        forward_h0,
        backward_support,
        backward_h0,
    })
}
