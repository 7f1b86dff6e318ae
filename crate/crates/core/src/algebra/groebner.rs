//! Noncommutative Buchberger completion for path algebras under the
//! degree-lexicographic order. Paths are words in application order.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, VecDeque};

use crate::linalg::Field;

use super::AlgebraError;

/// Path ordered by length first, then lexicographically by arrow index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DegLex(pub Vec<usize>);

impl Ord for DegLex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for DegLex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    pub terms: BTreeMap<DegLex, u32>,
}

impl Poly {
    pub fn from_terms(field: Field, terms: impl IntoIterator<Item = (i64, Vec<usize>)>) -> Self {
        let mut p = Poly::default();
        for (c, w) in terms {
            p.add_term(field, DegLex(w), field.reduce(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn tip(&self) -> Option<&DegLex> {
        self.terms.keys().next_back()
    }

    fn add_term(&mut self, field: Field, w: DegLex, c: u32) {
        if c == 0 {
            return;
        }
        match self.terms.entry(w) {
            Entry::Occupied(mut o) => {
                let v = field.add(*o.get(), c);
                if v == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
        }
    }

    fn make_monic(&mut self, field: Field) {
        if let Some((_, &c)) = self.terms.iter().next_back() {
            let inv = field.inv(c);
            for v in self.terms.values_mut() {
                *v = field.mul(*v, inv);
            }
        }
    }

    /// `prefix ++ self ++ suffix` termwise, scaled by `c`.
    fn wrapped(&self, field: Field, prefix: &[usize], suffix: &[usize], c: u32) -> Poly {
        let mut out = Poly::default();
        for (w, &v) in &self.terms {
            let mut word = Vec::with_capacity(prefix.len() + w.0.len() + suffix.len());
            word.extend_from_slice(prefix);
            word.extend_from_slice(&w.0);
            word.extend_from_slice(suffix);
            out.add_term(field, DegLex(word), field.mul(v, c));
        }
        out
    }

    fn add_poly(&mut self, field: Field, other: &Poly) {
        for (w, &v) in &other.terms {
            self.add_term(field, w.clone(), v);
        }
    }
}

fn find_subword(hay: &[usize], needle: &[usize]) -> Option<usize> {
    if needle.len() > hay.len() {
        return None;
    }
    (0..=hay.len() - needle.len()).find(|&i| &hay[i..i + needle.len()] == needle)
}

/// A reduced Gröbner basis of a two-sided ideal.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    field: Field,
    elements: Vec<Poly>,
}

impl GroebnerBasis {
    /// Completes `generators`. Fails if a tip longer than `max_len` appears or
    /// the pair budget is exhausted.
    pub fn complete(
        field: Field,
        generators: Vec<Poly>,
        max_len: usize,
    ) -> Result<GroebnerBasis, AlgebraError> {
        const PAIR_BUDGET: usize = 2_000_000;
        let mut gb = GroebnerBasis {
            field,
            elements: Vec::new(),
        };
        let mut queue: VecDeque<Poly> = generators.into_iter().collect();
        let mut steps = 0usize;
        while let Some(f) = queue.pop_front() {
            steps += 1;
            if steps > PAIR_BUDGET {
                return Err(AlgebraError::NotFiniteDimensional { max_len });
            }
            let mut f = gb.reduce(&f);
            if f.is_zero() {
                continue;
            }
            f.make_monic(field);
            let tip = f.tip().expect("nonzero").0.clone();
            if tip.len() > max_len {
                return Err(AlgebraError::NotFiniteDimensional { max_len });
            }
            let mut kept = Vec::with_capacity(gb.elements.len());
            for g in gb.elements.drain(..) {
                let gt = &g.tip().expect("nonzero").0;
                if find_subword(gt, &tip).is_some() {
                    queue.push_back(g);
                } else {
                    kept.push(g);
                }
            }
            gb.elements = kept;
            for g in gb.elements.iter().chain(std::iter::once(&f)) {
                for s in overlaps(field, &f, g) {
                    queue.push_back(s);
                }
                if !std::ptr::eq(g, &f) {
                    for s in overlaps(field, g, &f) {
                        queue.push_back(s);
                    }
                }
            }
            gb.elements.push(f);
        }
        // interreduce tails
        let n = gb.elements.len();
        for i in 0..n {
            let g = gb.elements[i].clone();
            let tip = g.tip().unwrap().clone();
            let mut tail = g.clone();
            tail.terms.remove(&tip);
            let others = GroebnerBasis {
                field,
                elements: gb.elements.clone(),
            };
            let mut reduced = others.reduce(&tail);
            reduced.terms.insert(tip, 1);
            gb.elements[i] = reduced;
        }
        gb.elements.sort_by(|a, b| a.tip().cmp(&b.tip()));
        Ok(gb)
    }

    pub fn elements(&self) -> &[Poly] {
        &self.elements
    }

    pub fn tips(&self) -> impl Iterator<Item = &[usize]> {
        self.elements.iter().map(|g| g.tip().unwrap().0.as_slice())
    }

    /// Full reduction to normal form.
    pub fn reduce(&self, f: &Poly) -> Poly {
        let field = self.field;
        let mut work = f.clone();
        let mut result = Poly::default();
        while let Some((w, c)) = work.terms.pop_last() {
            let mut hit = None;
            for g in &self.elements {
                let t = &g.tip().unwrap().0;
                if let Some(pos) = find_subword(&w.0, t) {
                    hit = Some((g, pos, t.len()));
                    break;
                }
            }
            match hit {
                None => {
                    result.terms.insert(w, c);
                }
                Some((g, pos, len)) => {
                    let prefix = &w.0[..pos];
                    let suffix = &w.0[pos + len..];
                    let mut tail = g.clone();
                    let t = tail.tip().unwrap().clone();
                    tail.terms.remove(&t);
                    let sub = tail.wrapped(field, prefix, suffix, field.neg(c));
                    work.add_poly(field, &sub);
                }
            }
        }
        result
    }

    /// Whether `w` contains some tip, i.e. is not a normal form.
    pub fn is_reducible(&self, w: &[usize]) -> bool {
        self.tips().any(|t| find_subword(w, t).is_some())
    }

    /// Whether some tip is a suffix of `w`.
    pub fn has_tip_suffix(&self, w: &[usize]) -> bool {
        self.tips().any(|t| t.len() <= w.len() && &w[w.len() - t.len()..] == t)
    }
}

/// S-polynomials from proper overlaps where a suffix of tip(f) is a prefix of tip(g).
fn overlaps(field: Field, f: &Poly, g: &Poly) -> Vec<Poly> {
    let s = &f.tip().unwrap().0;
    let t = &g.tip().unwrap().0;
    let mut out = Vec::new();
    for k in 1..s.len().min(t.len()) {
        if s[s.len() - k..] == t[..k] {
            let suffix = &t[k..];
            let prefix = &s[..s.len() - k];
            let mut sp = f.wrapped(field, &[], suffix, 1);
            sp.add_poly(field, &g.wrapped(field, prefix, &[], field.neg(1)));
            if !sp.is_zero() {
                out.push(sp);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deglex_prefers_length() {
        assert!(DegLex(vec![5]) < DegLex(vec![0, 0]));
        assert!(DegLex(vec![0, 1]) < DegLex(vec![0, 2]));
    }

    #[test]
    fn overlap_generates_consequence() {
        // arrows: 0 = x (loop), relations x^2 - x^3 style truncated by x^3 = 0
        let f = Field::gf2();
        let gens = vec![
            Poly::from_terms(f, [(1, vec![0, 0, 0])]),
            Poly::from_terms(f, [(1, vec![0, 0]), (1, vec![0, 0, 0])]),
        ];
        let gb = GroebnerBasis::complete(f, gens, 10).unwrap();
        // x^2 = x^3 = x^4 = ... = 0
        assert!(gb.is_reducible(&[0, 0]));
        assert!(!gb.is_reducible(&[0]));
    }
}
