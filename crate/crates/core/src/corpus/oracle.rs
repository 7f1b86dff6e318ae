//! Dimension of `kQ/I` by linear algebra on truncated path spaces.
//!
//! Independent of the Gröbner-basis construction: zero relations cut the
//! path space, the remaining relations are spread by two-sided
//! multiplication inside `kQ/J^{L+1}` and the rank is taken directly.
//! Once two consecutive truncations agree, `J^{L+1} ⊆ I + J^{L+2}` and so
//! by admissibility the quotient is the algebra itself.

use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::{AlgebraPresentation, Word};
use crate::linalg::{Field, Subspace};

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    /// Path length bound `L` at which the dimensions stabilised.
    pub cap: usize,
    /// `dim kQ/(I + J^{L+1})` and `dim kQ/(I + J^{L+2})`.
    pub dims: (usize, usize),
    pub dimension: Option<usize>,
}

struct Paths {
    /// Paths avoiding every zero relation, keyed by (start vertex, word).
    index: HashMap<(usize, Word), usize>,
    list: Vec<(usize, Word)>,
}

fn contains_sub(w: &[usize], pat: &[usize]) -> bool {
    pat.len() <= w.len() && w.windows(pat.len()).any(|x| x == pat)
}

fn clean_paths(pres: &AlgebraPresentation, zeros: &[Word], cap: usize) -> Paths {
    let nv = pres.vertices.len();
    let mut list: Vec<(usize, Word)> = (0..nv).map(|v| (v, Vec::new())).collect();
    let mut frontier: Vec<(usize, usize, Word)> = (0..nv).map(|v| (v, v, Vec::new())).collect();
    for _ in 0..cap {
        let mut next = Vec::new();
        for (start, end, w) in &frontier {
            for a in 0..pres.arrows.len() {
                if pres.arrow_source(a) != *end {
                    continue;
                }
                let mut x = w.clone();
                x.push(a);
                if zeros.iter().any(|z| x.ends_with(z)) {
                    continue;
                }
                next.push((*start, pres.arrow_target(a), x));
            }
        }
        list.extend(next.iter().map(|(s, _, w)| (*s, w.clone())));
        frontier = next;
    }
    let index = list.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    Paths { index, list }
}

/// `dim kQ/(I + J^{cap+1})`.
pub fn truncated_dimension(pres: &AlgebraPresentation, field: Field, cap: usize) -> usize {
    let mut zeros: Vec<Word> = Vec::new();
    let mut others: Vec<Vec<(u32, Word)>> = Vec::new();
    for rel in &pres.relations {
        let mut terms: Vec<(u32, Word)> = Vec::new();
        for t in &rel.terms {
            let c = field.reduce(t.coeff);
            match terms.iter_mut().find(|(_, w)| *w == t.path) {
                Some(e) => e.0 = field.add(e.0, c),
                None => terms.push((c, t.path.clone())),
            }
        }
        terms.retain(|(c, _)| *c != 0);
        match terms.len() {
            0 => {}
            1 => zeros.push(terms.pop().unwrap().1),
            _ => others.push(terms),
        }
    }
    let paths = clean_paths(pres, &zeros, cap);
    let n = paths.list.len();
    let end_of = |s: usize, w: &[usize]| w.last().map_or(s, |&a| pres.arrow_target(a));
    let mut image = Subspace::new(field, n);
    for terms in &others {
        let first = &terms[0].1;
        let (src, tgt) = (pres.arrow_source(first[0]), end_of(0, first));
        let shortest = terms.iter().map(|(_, w)| w.len()).min().unwrap_or(0);
        for (vs, v) in paths.list.iter().filter(|(s, w)| end_of(*s, w) == src) {
            for (_, u) in paths.list.iter().filter(|(s, _)| *s == tgt) {
                if v.len() + shortest + u.len() > cap {
                    continue;
                }
                let mut vec = vec![0; n];
                let mut any = false;
                for (c, w) in terms {
                    let full: Word = v.iter().chain(w).chain(u).copied().collect();
                    if full.len() > cap || zeros.iter().any(|z| contains_sub(&full, z)) {
                        continue;
                    }
                    let i = paths.index[&(*vs, full)];
                    vec[i] = field.add(vec[i], *c);
                    any = true;
                }
                if any {
                    image.insert(&vec);
                }
            }
        }
    }
    n - image.dim()
}

/// Raises the truncation from `start` until two consecutive values agree.
pub fn oracle_dimension(pres: &AlgebraPresentation, field: Field, start: usize, max_cap: usize) -> OracleReport {
    let mut cap = start.max(1);
    let mut prev = truncated_dimension(pres, field, cap);
    loop {
        let next = truncated_dimension(pres, field, cap + 1);
        if next == prev || cap + 1 >= max_cap {
            return OracleReport {
                cap,
                dims: (prev, next),
                dimension: (next == prev).then_some(prev),
            };
        }
        cap += 1;
        prev = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ArrowDecl, Composition};

    fn pres(arrows: &[(&str, &str, &str)], rels: &[&str]) -> AlgebraPresentation {
        AlgebraPresentation::new(
            "t",
            Composition::Function,
            vec!["0".into(), "1".into()],
            arrows
                .iter()
                .map(|(n, s, t)| ArrowDecl {
                    name: n.to_string(),
                    source: s.to_string(),
                    target: t.to_string(),
                })
                .collect(),
            rels,
        )
        .unwrap()
    }

    #[test]
    fn truncated_polynomial_ring() {
        let p = pres(&[("x", "0", "0")], &["x^3"]);
        assert_eq!(truncated_dimension(&p, Field::gf2(), 1), 3);
        let r = oracle_dimension(&p, Field::gf2(), 1, 20);
        assert_eq!(r.dimension, Some(4));
    }

    #[test]
    fn commutative_square_of_loops() {
        // k[x,y]/(x^2, y^2) at one vertex plus an isolated vertex
        let p = pres(&[("x", "0", "0"), ("y", "0", "0")], &["x^2", "y^2", "x*y - y*x"]);
        let r = oracle_dimension(&p, Field::new(3).unwrap(), 1, 20);
        assert_eq!(r.dimension, Some(5));
    }
}
