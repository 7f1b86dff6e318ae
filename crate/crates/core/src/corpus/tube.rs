//! Search for a module on the boundary of a 3-tube and its two successors.

use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::deform::{versal_classify, VersalReport};
use crate::homalg::{
    ext, extension_from_cocycle, inverse_ar_translate, orbit_probe, projective_cover, stable_end_dim,
    strip_projectives, syzygy, OrbitFunctor, OrbitResult,
};
use crate::module::{is_isomorphic, IsoResult, Representation};

use super::CorpusError;

type Letter = (usize, bool);

fn ends(alg: &Algebra, (a, inv): Letter) -> (usize, usize) {
    let arr = &alg.arrows()[a];
    if inv {
        (arr.target, arr.source)
    } else {
        (arr.source, arr.target)
    }
}

fn render(alg: &Algebra, w: &[Letter]) -> String {
    let parts: Vec<String> = w
        .iter()
        .rev()
        .map(|&(a, inv)| {
            let n = &alg.arrows()[a].name;
            if inv {
                format!("{n}^-")
            } else {
                n.clone()
            }
        })
        .collect();
    parts.join("*")
}

fn reversed(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|&(a, inv)| (a, !inv)).collect()
}

/// String modules of dimension at most `max_dim`, one per word up to
/// inversion, in order of increasing dimension. Simples are written `@v`.
pub fn string_modules(alg: &Arc<Algebra>, max_dim: usize) -> Vec<(String, Representation)> {
    let mut out: Vec<(String, Representation)> = (0..alg.num_vertices())
        .map(|v| (format!("@{}", alg.vertex_names()[v]), Representation::simple(alg, v)))
        .collect();
    let mut seen: HashSet<Vec<Letter>> = HashSet::new();
    let letters: Vec<Letter> = (0..alg.arrows().len()).flat_map(|a| [(a, false), (a, true)]).collect();
    let mut layer: Vec<Vec<Letter>> = letters.iter().map(|&l| vec![l]).collect();
    for _ in 1..max_dim {
        let mut next = Vec::new();
        for w in layer {
            let text = render(alg, &w);
            let Ok(m) = Representation::string_module(alg, &text) else {
                continue;
            };
            let canon = std::cmp::min(w.clone(), reversed(&w));
            let fresh = seen.insert(canon);
            let end = ends(alg, *w.last().unwrap()).1;
            for &l in &letters {
                let last = *w.last().unwrap();
                if ends(alg, l).0 != end || (l.0 == last.0 && l.1 != last.1) {
                    continue;
                }
                let mut x = w.clone();
                x.push(l);
                next.push(x);
            }
            if fresh {
                out.push((text, m));
            }
        }
        layer = next;
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct TubeReport {
    pub u0_word: String,
    pub dims: [Vec<usize>; 3],
    pub stable_end: [usize; 3],
    pub tau_periods: [Option<usize>; 3],
    pub versal: [VersalReport; 3],
    /// `Ω U_0 ≇ τ^k U_0` for `k = 0, 1, 2`.
    pub omega_leaves_tube: bool,
    pub candidates_examined: usize,
}

fn tau_period(m: &Representation, seed: u64) -> Option<usize> {
    match orbit_probe(m, OrbitFunctor::Tau, 3, seed).ok()?.result {
        OrbitResult::Periodic { preperiod: 0, period } => Some(period),
        _ => None,
    }
}

fn iso(a: &Representation, b: &Representation, seed: u64) -> Result<bool, CorpusError> {
    match is_isomorphic(a, b, seed) {
        IsoResult::Yes(_) => Ok(true),
        IsoResult::No => Ok(false),
        IsoResult::Unknown => Err(CorpusError::Search("isomorphism test inconclusive".into())),
    }
}

/// Cores of the nonsplit extensions `0 → n → E → m → 0` for the basis
/// classes of `Ext¹(m, n)` and their sum.
fn extension_cores(m: &Representation, n: &Representation) -> Vec<Representation> {
    let e = ext(m, n, 1);
    let pres = projective_cover(m);
    let mut cocycles = e.basis.clone();
    if e.basis.len() > 1 {
        let sum = e.basis[1..].iter().fold(e.basis[0].clone(), |acc, c| acc.add(c));
        cocycles.push(sum);
    }
    cocycles
        .iter()
        .map(|phi| strip_projectives(&extension_from_cocycle(m, n, &pres, phi).middle).core)
        .collect()
}

/// `U_1` and `U_2` above a boundary module `u0` of a 3-tube.
pub fn tube_modules(u0: &Representation, seed: u64) -> Result<[Representation; 3], CorpusError> {
    let err = |e: crate::homalg::HomalgError| CorpusError::Search(e.to_string());
    let t1 = inverse_ar_translate(u0).map_err(err)?;
    let t2 = inverse_ar_translate(&t1).map_err(err)?;
    let u1 = extension_cores(&t1, u0)
        .into_iter()
        .find(|c| stable_end_dim(c) == 1)
        .ok_or_else(|| CorpusError::Search("no indecomposable extension of τ⁻¹U₀ by U₀".into()))?;
    for c in extension_cores(&t2, &u1) {
        if stable_end_dim(&c) != 1 || c.dim() != u1.dim() + t2.dim() {
            continue;
        }
        if iso(&c, &u1, seed)? {
            continue;
        }
        return Ok([u0.clone(), u1, c]);
    }
    Err(CorpusError::Search("no indecomposable extension of τ⁻²U₀ by U₁".into()))
}

/// Finds the smallest string module with stable endomorphism ring `k` and
/// τ-period 3 whose AR sequence has an indecomposable middle term, builds
/// `U_1, U_2` and classifies all three.
pub fn tube_report(alg: &Arc<Algebra>, max_dim: usize, max_order: usize, seed: u64) -> Result<TubeReport, CorpusError> {
    let mut examined = 0;
    for (word, m) in string_modules(alg, max_dim) {
        examined += 1;
        if stable_end_dim(&m) != 1 || tau_period(&m, seed) != Some(3) {
            continue;
        }
        let Ok(us) = tube_modules(&m, seed) else {
            continue;
        };
        let mut leaves = true;
        let omega = strip_projectives(&syzygy(&m, 1)).core;
        let mut t = m.clone();
        for _ in 0..3 {
            if iso(&omega, &t, seed)? {
                leaves = false;
            }
            t = crate::homalg::ar_translate(&t).map_err(|e| CorpusError::Search(e.to_string()))?;
        }
        let versal = [0, 1, 2].map(|i| versal_classify(&us[i], max_order).map(|r| r.labelled(format!("U{i}"))));
        let [v0, v1, v2] = versal;
        let de = |e: crate::deform::DeformError| CorpusError::Search(e.to_string());
        return Ok(TubeReport {
            u0_word: word,
            dims: [0, 1, 2].map(|i| us[i].dims().to_vec()),
            stable_end: [0, 1, 2].map(|i| stable_end_dim(&us[i])),
            tau_periods: [0, 1, 2].map(|i| tau_period(&us[i], seed)),
            versal: [v0.map_err(de)?, v1.map_err(de)?, v2.map_err(de)?],
            omega_leaves_tube: leaves,
            candidates_examined: examined,
        });
    }
    Err(CorpusError::Search(format!(
        "no boundary module of a 3-tube among {examined} string modules of dimension ≤ {max_dim}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::d3r;

    #[test]
    fn enumeration_is_deduplicated() {
        let a = d3r();
        let mods = string_modules(&a, 2);
        // three simples and the six arrows
        assert_eq!(mods.len(), 9);
        assert!(mods.iter().all(|(_, m)| m.dim() <= 2));
    }
}
