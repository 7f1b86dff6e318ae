//! Finite-dimensional quotients kQ/I of path algebras.
//!
//! Paths are stored as words in *application order*: the first arrow of the
//! word acts first. A product `x·y` in the algebra applies `y` first, so its
//! word is `word(y) ++ word(x)`.

mod groebner;
mod presentation;
mod tensor;

use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::Field;

pub use groebner::{DegLex, GroebnerBasis, Poly};
pub use presentation::{AlgebraPresentation, ArrowDecl, Composition, ParsedRelation, Term};
pub use tensor::{TensorArrow, TensorStructure};

/// Path in application order.
pub type Word = Vec<usize>;

/// Sparse vector in the basis of an algebra: sorted `(index, coefficient)` pairs.
pub type SparseVec = Vec<(usize, u32)>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("malformed presentation: {0}")]
    Format(String),
    #[error("relation parse error: {0}")]
    Parse(String),
    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("in relation {relation:?}: {then} cannot follow {first}")]
    NotComposable {
        relation: String,
        first: String,
        then: String,
    },
    #[error("relation {0:?} contains a path of length < 2")]
    NotAdmissible(String),
    #[error("relation {0:?} mixes paths with different endpoints")]
    InconsistentEndpoints(String),
    #[error("not finite-dimensional within max_len = {max_len}")]
    NotFiniteDimensional { max_len: usize },
    #[error("characteristic mismatch: GF({0}) vs GF({1})")]
    CharacteristicMismatch(u32, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A relation with coefficients already reduced into the field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub label: String,
    pub terms: Vec<(u32, Word)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub word: Word,
    pub source: usize,
    pub target: usize,
    /// Radical layer the element was built in (path length).
    pub degree: usize,
}

#[derive(Clone, Debug)]
enum Products {
    Table(Vec<Vec<SparseVec>>),
    Tensor(Arc<Algebra>, Arc<Algebra>),
    Opposite(Arc<Algebra>),
}

/// A finite-dimensional algebra given by a quiver, relations, a basis of
/// paths and structure constants.
#[derive(Clone, Debug)]
pub struct Algebra {
    field: Field,
    name: String,
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<Relation>,
    basis: Vec<BasisElement>,
    idempotents: Vec<usize>,
    products: Products,
    arrow_basis: Vec<usize>,
    presentation: Option<AlgebraPresentation>,
    tensor: Option<TensorStructure>,
}

pub const DEFAULT_MAX_LEN: usize = 64;

impl Algebra {
    /// Builds the algebra presented by `pres` over `field`.
    pub fn build(
        pres: &AlgebraPresentation,
        field: Field,
        max_len: usize,
    ) -> Result<Arc<Algebra>, AlgebraError> {
        let nv = pres.vertices.len();
        let arrows: Vec<Arrow> = (0..pres.arrows.len())
            .map(|a| Arrow {
                name: pres.arrows[a].name.clone(),
                source: pres.arrow_source(a),
                target: pres.arrow_target(a),
            })
            .collect();
        let relations: Vec<Relation> = pres
            .relations
            .iter()
            .map(|r| Relation {
                label: r.source.clone(),
                terms: r
                    .terms
                    .iter()
                    .map(|t| (field.reduce(t.coeff), t.path.clone()))
                    .filter(|(c, _)| *c != 0)
                    .collect(),
            })
            .collect();
        for r in &relations {
            if r.terms.iter().any(|(_, w)| w.len() < 2) {
                return Err(AlgebraError::NotAdmissible(r.label.clone()));
            }
        }
        let gens: Vec<Poly> = relations
            .iter()
            .map(|r| {
                Poly::from_terms(
                    field,
                    r.terms.iter().map(|(c, w)| (*c as i64, w.clone())),
                )
            })
            .filter(|p| !p.is_zero())
            .collect();
        let gb = GroebnerBasis::complete(field, gens, max_len)?;

        // normal forms, layer by layer
        let mut basis: Vec<BasisElement> = (0..nv)
            .map(|v| BasisElement {
                word: vec![],
                source: v,
                target: v,
                degree: 0,
            })
            .collect();
        let mut layer: Vec<BasisElement> = Vec::new();
        for (a, arr) in arrows.iter().enumerate() {
            if !gb.is_reducible(&[a]) {
                layer.push(BasisElement {
                    word: vec![a],
                    source: arr.source,
                    target: arr.target,
                    degree: 1,
                });
            }
        }
        let mut len = 1;
        while !layer.is_empty() {
            if len + 1 >= max_len {
                return Err(AlgebraError::NotFiniteDimensional { max_len });
            }
            let mut next = Vec::new();
            for b in &layer {
                for (a, arr) in arrows.iter().enumerate() {
                    if arr.source != b.target {
                        continue;
                    }
                    let mut w = b.word.clone();
                    w.push(a);
                    if !gb.has_tip_suffix(&w) {
                        next.push(BasisElement {
                            word: w,
                            source: b.source,
                            target: arr.target,
                            degree: len + 1,
                        });
                    }
                }
            }
            layer.sort_by_key(|x| DegLex(x.word.clone()));
            basis.append(&mut layer);
            layer = next;
            len += 1;
        }

        let index: HashMap<Word, usize> = basis
            .iter()
            .enumerate()
            .filter(|(_, b)| !b.word.is_empty())
            .map(|(i, b)| (b.word.clone(), i))
            .collect();
        let to_sparse = |p: &Poly| -> SparseVec {
            let mut v: SparseVec = p
                .terms
                .iter()
                .map(|(w, &c)| (*index.get(&w.0).expect("normal form in basis"), c))
                .collect();
            v.sort();
            v
        };
        let n = basis.len();
        let mut products = vec![vec![SparseVec::new(); n]; n];
        for x in 0..n {
            for y in 0..n {
                let (bx, by) = (&basis[x], &basis[y]);
                if by.target != bx.source {
                    continue;
                }
                products[x][y] = if bx.word.is_empty() {
                    vec![(y, 1)]
                } else if by.word.is_empty() {
                    vec![(x, 1)]
                } else {
                    let mut w = by.word.clone();
                    w.extend_from_slice(&bx.word);
                    to_sparse(&gb.reduce(&Poly::from_terms(field, [(1, w)])))
                };
            }
        }
        let arrow_basis = (0..arrows.len())
            .map(|a| *index.get(&vec![a]).expect("arrows survive admissible relations"))
            .collect();
        Ok(Arc::new(Algebra {
            field,
            name: pres.name.clone(),
            vertices: pres.vertices.clone(),
            arrows,
            relations,
            basis,
            idempotents: (0..nv).collect(),
            products: Products::Table(products),
            arrow_basis,
            presentation: Some(pres.clone()),
            tensor: None,
        }))
    }

    /// The one-vertex algebra k.
    pub fn ground(field: Field) -> Arc<Algebra> {
        let pres = AlgebraPresentation::new(
            "k",
            Composition::Function,
            vec!["0".into()],
            vec![],
            &[],
        )
        .expect("trivial presentation");
        Algebra::build(&pres, field, DEFAULT_MAX_LEN).expect("k is finite-dimensional")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn presentation(&self) -> Option<&AlgebraPresentation> {
        self.presentation.as_ref()
    }

    pub fn tensor_structure(&self) -> Option<&TensorStructure> {
        self.tensor.as_ref()
    }

    /// Basis index of the idempotent at vertex `v`.
    pub fn idempotent(&self, v: usize) -> usize {
        self.idempotents[v]
    }

    pub fn arrow_basis_index(&self, a: usize) -> usize {
        self.arrow_basis[a]
    }

    /// `basis[x] · basis[y]` (apply `y` first).
    pub fn product(&self, x: usize, y: usize) -> SparseVec {
        match &self.products {
            Products::Table(t) => t[x][y].clone(),
            Products::Opposite(a) => a.product(y, x),
            Products::Tensor(a, b) => {
                let db = b.dim();
                let u = a.product(x / db, y / db);
                if u.is_empty() {
                    return u;
                }
                let v = b.product(x % db, y % db);
                let f = self.field;
                let mut out = Vec::with_capacity(u.len() * v.len());
                for &(i, c) in &u {
                    for &(j, d) in &v {
                        out.push((i * db + j, f.mul(c, d)));
                    }
                }
                out
            }
        }
    }

    pub fn multiply(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let f = self.field;
        let mut acc: HashMap<usize, u32> = HashMap::new();
        for &(x, a) in u {
            for &(y, b) in v {
                for (z, c) in self.product(x, y) {
                    let e = acc.entry(z).or_insert(0);
                    *e = f.add(*e, f.mul(f.mul(a, b), c));
                }
            }
        }
        let mut out: SparseVec = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        out.sort();
        out
    }

    /// Radical basis: every non-idempotent basis element.
    pub fn radical_basis(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim()).filter(|&i| self.basis[i].degree > 0)
    }

    /// Largest path length among basis elements.
    pub fn loewy_bound(&self) -> usize {
        self.basis.iter().map(|b| b.degree).max().unwrap_or(0)
    }

    pub fn basis_label(&self, i: usize) -> String {
        let b = &self.basis[i];
        if b.word.is_empty() {
            return format!("e{}", self.vertices[b.source]);
        }
        match &self.presentation {
            Some(p) => p.format_path(&b.word),
            None => b
                .word
                .iter()
                .rev()
                .map(|&a| self.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join("*"),
        }
    }

    /// Checks associativity on all basis triples when `dim ≤ exhaustive_dim`,
    /// otherwise on `samples` random triples. Returns the first failing triple.
    pub fn check_associativity(
        &self,
        exhaustive_dim: usize,
        samples: usize,
        seed: u64,
    ) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        let check = |x: usize, y: usize, z: usize| {
            let xy = self.product(x, y);
            let yz = self.product(y, z);
            self.multiply(&xy, &vec![(z, 1)]) == self.multiply(&vec![(x, 1)], &yz)
        };
        if n <= exhaustive_dim {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if !check(x, y, z) {
                            return Some((x, y, z));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let (x, y, z) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !check(x, y, z) {
                    return Some((x, y, z));
                }
            }
        }
        None
    }

    /// The opposite algebra, transported along the reversed-word basis.
    pub fn opposite(self: &Arc<Self>) -> Arc<Algebra> {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow {
                name: a.name.clone(),
                source: a.target,
                target: a.source,
            })
            .collect();
        let relations = self
            .relations
            .iter()
            .map(|r| Relation {
                label: match r.label.strip_prefix("op(").and_then(|l| l.strip_suffix(')')) {
                    Some(inner) => inner.to_string(),
                    None => format!("op({})", r.label),
                },
                terms: r
                    .terms
                    .iter()
                    .map(|(c, w)| (*c, w.iter().rev().copied().collect()))
                    .collect(),
            })
            .collect();
        let basis = self
            .basis
            .iter()
            .map(|b| BasisElement {
                word: b.word.iter().rev().copied().collect(),
                source: b.target,
                target: b.source,
                degree: b.degree,
            })
            .collect();
        let products = match &self.products {
            Products::Table(t) => {
                let n = self.dim();
                Products::Table(
                    (0..n)
                        .map(|x| (0..n).map(|y| t[y][x].clone()).collect())
                        .collect(),
                )
            }
            Products::Opposite(a) => a.products.clone(),
            Products::Tensor(..) => Products::Opposite(Arc::clone(self)),
        };
        Arc::new(Algebra {
            field: self.field,
            name: match self.name.strip_suffix("^op") {
                Some(inner) => inner.to_string(),
                None => format!("{}^op", self.name),
            },
            vertices: self.vertices.clone(),
            arrows,
            relations,
            basis,
            idempotents: self.idempotents.clone(),
            products,
            arrow_basis: self.arrow_basis.clone(),
            presentation: self.presentation.as_ref().map(|p| p.opposite()),
            tensor: None,
        })
    }

    /// Whether the multiplication tables agree under the identity bijection of bases.
    pub fn same_structure(&self, other: &Algebra) -> bool {
        let n = self.dim();
        self.field == other.field
            && n == other.dim()
            && self.idempotents == other.idempotents
            && (0..n).all(|x| (0..n).all(|y| self.product(x, y) == other.product(x, y)))
    }
}

/// Reduced-form element of an algebra given by its basis coefficients.
pub fn sparse_from_dense(v: &[u32]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i, c))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow(n: &str, s: &str, t: &str) -> ArrowDecl {
        ArrowDecl {
            name: n.into(),
            source: s.into(),
            target: t.into(),
        }
    }

    pub(crate) fn d3r_1222() -> AlgebraPresentation {
        AlgebraPresentation::new(
            "D3R",
            Composition::Function,
            vec!["0".into(), "1".into(), "2".into()],
            vec![
                arrow("alpha", "0", "0"),
                arrow("beta", "0", "1"),
                arrow("delta", "1", "2"),
                arrow("lambda", "2", "0"),
                arrow("rho", "1", "1"),
                arrow("xi", "2", "2"),
            ],
            &[
                "alpha*lambda",
                "lambda*xi",
                "xi*delta",
                "delta*rho",
                "rho*beta",
                "beta*alpha",
                "alpha^2 - lambda*delta*beta",
                "rho^2 - beta*lambda*delta",
                "xi^2 - delta*beta*lambda",
            ],
        )
        .unwrap()
    }

    #[test]
    fn trivial_algebra_has_dim_one() {
        let k = Algebra::ground(Field::gf2());
        assert_eq!(k.dim(), 1);
        assert_eq!(k.product(0, 0), vec![(0, 1)]);
    }

    #[test]
    fn d3r_basic_shape() {
        let a = Algebra::build(&d3r_1222(), Field::gf2(), 28).unwrap();
        assert_eq!(a.num_vertices(), 3);
        assert_eq!(a.dim(), 15);
        assert!(a.check_associativity(40, 0, 0).is_none());
    }

    #[test]
    fn idempotents_are_orthogonal_and_sum_to_one() {
        let a = Algebra::build(&d3r_1222(), Field::new(3).unwrap(), 28).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { vec![(i, 1)] } else { vec![] };
                assert_eq!(a.product(i, j), expect);
            }
        }
        let one: SparseVec = (0..3).map(|i| (i, 1)).collect();
        for x in 0..a.dim() {
            assert_eq!(a.multiply(&one, &vec![(x, 1)]), vec![(x, 1)]);
            assert_eq!(a.multiply(&vec![(x, 1)], &one), vec![(x, 1)]);
        }
    }

    #[test]
    fn infinite_dimensional_is_rejected() {
        let pres = AlgebraPresentation::new(
            "k[x]",
            Composition::Function,
            vec!["0".into()],
            vec![arrow("x", "0", "0")],
            &[],
        )
        .unwrap();
        assert!(matches!(
            Algebra::build(&pres, Field::gf2(), 16),
            Err(AlgebraError::NotFiniteDimensional { .. })
        ));
    }

    #[test]
    fn larger_cap_does_not_change_basis() {
        let f = Field::gf2();
        let a = Algebra::build(&d3r_1222(), f, 12).unwrap();
        let b = Algebra::build(&d3r_1222(), f, 40).unwrap();
        assert_eq!(a.basis(), b.basis());
    }

    #[test]
    fn opposite_twice_is_identity_on_structure() {
        let a = Algebra::build(&d3r_1222(), Field::gf2(), 28).unwrap();
        let op = a.opposite();
        assert_eq!(op.dim(), a.dim());
        assert!(op.check_associativity(40, 0, 0).is_none());
        assert!(op.opposite().same_structure(&a));
    }
}
