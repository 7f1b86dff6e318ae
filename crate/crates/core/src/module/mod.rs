//! Finitely generated left modules as quiver representations.

mod cover;
mod hom;
mod map;
mod sub;

use std::sync::Arc;

use crate::algebra::{Algebra, Word};
use crate::linalg::{Field, Matrix};

pub use hom::{hom_dim, hom_space, is_isomorphic, HomBasis, IsoResult, ISO_EXHAUSTION_LIMIT, ISO_SAMPLES};
pub use map::ModuleMap;
pub use cover::{projective_cover, radical_subspaces, Cover};
pub(crate) use cover::cover_from_generators;
pub use sub::{Quotient, Sub, TopSocle};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModuleError {
    #[error("relation {relation:?} violated at vertex {vertex}, column {column}")]
    RelationViolated {
        relation: String,
        vertex: usize,
        column: usize,
    },
    #[error("arrow {arrow}: expected a {expected:?} matrix, found {found:?}")]
    Shape {
        arrow: String,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("expected {expected} entries in the dimension vector, found {found}")]
    DimensionVector { expected: usize, found: usize },
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("bad string word {word:?}: {reason}")]
    BadWord { word: String, reason: String },
    #[error("not a module map: {0}")]
    NotNatural(String),
}

/// Whether two algebra handles describe the same quiver algebra.
pub fn same_algebra(a: &Algebra, b: &Algebra) -> bool {
    std::ptr::eq(a, b)
        || (a.field() == b.field()
            && a.dim() == b.dim()
            && a.vertex_names() == b.vertex_names()
            && a.arrows() == b.arrows()
            && a.relations() == b.relations())
}

/// A representation: one vector space per vertex, one matrix per arrow
/// shaped `dim(target) × dim(source)`.
#[derive(Clone, Debug)]
pub struct Representation {
    algebra: Arc<Algebra>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.dims == other.dims && self.maps == other.maps
    }
}

impl Representation {
    /// Validates shapes and relations.
    pub fn new(
        algebra: &Arc<Algebra>,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Result<Self, ModuleError> {
        let m = Representation::unchecked(algebra, dims, maps)?;
        m.check_relations()?;
        Ok(m)
    }

    /// Validates shapes only.
    pub fn unchecked(
        algebra: &Arc<Algebra>,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Result<Self, ModuleError> {
        if dims.len() != algebra.num_vertices() {
            return Err(ModuleError::DimensionVector {
                expected: algebra.num_vertices(),
                found: dims.len(),
            });
        }
        if maps.len() != algebra.arrows().len() {
            return Err(ModuleError::DimensionVector {
                expected: algebra.arrows().len(),
                found: maps.len(),
            });
        }
        for (arr, m) in algebra.arrows().iter().zip(&maps) {
            let expected = (dims[arr.target], dims[arr.source]);
            if m.shape() != expected {
                return Err(ModuleError::Shape {
                    arrow: arr.name.clone(),
                    expected,
                    found: m.shape(),
                });
            }
        }
        Ok(Representation {
            algebra: Arc::clone(algebra),
            dims,
            maps,
        })
    }

    pub fn check_relations(&self) -> Result<(), ModuleError> {
        let f = self.field();
        for r in self.algebra.relations() {
            let Some((_, w0)) = r.terms.first() else {
                continue;
            };
            let (s, t) = self.word_endpoints(w0);
            let mut acc = Matrix::zeros(f, self.dims[t], self.dims[s]);
            for (c, w) in &r.terms {
                acc.add_assign_scaled(&self.word_matrix(s, w), *c);
            }
            if let Some(column) = (0..acc.cols()).find(|&j| (0..acc.rows()).any(|i| acc.get(i, j) != 0)) {
                return Err(ModuleError::RelationViolated {
                    relation: r.label.clone(),
                    vertex: s,
                    column,
                });
            }
        }
        Ok(())
    }

    fn word_endpoints(&self, w: &[usize]) -> (usize, usize) {
        let arrows = self.algebra.arrows();
        (arrows[w[0]].source, arrows[*w.last().unwrap()].target)
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Self {
        Representation::with_zero_maps(algebra, vec![0; algebra.num_vertices()])
    }

    fn with_zero_maps(algebra: &Arc<Algebra>, dims: Vec<usize>) -> Self {
        let f = algebra.field();
        let maps = algebra
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(f, dims[a.target], dims[a.source]))
            .collect();
        Representation {
            algebra: Arc::clone(algebra),
            dims,
            maps,
        }
    }

    pub fn simple(algebra: &Arc<Algebra>, i: usize) -> Self {
        let mut dims = vec![0; algebra.num_vertices()];
        dims[i] = 1;
        Representation::with_zero_maps(algebra, dims)
    }

    /// `A e_i`: basis = algebra basis elements starting at `i`, acted on by left multiplication.
    pub fn projective(algebra: &Arc<Algebra>, i: usize) -> Self {
        let (dims, index) = projective_basis(algebra, i);
        let f = algebra.field();
        let maps = algebra
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arr)| {
                let mut m = Matrix::zeros(f, dims[arr.target], dims[arr.source]);
                let ab = algebra.arrow_basis_index(a);
                for (x, slot) in index.iter().enumerate() {
                    let Some((v, col)) = *slot else { continue };
                    if v != arr.source {
                        continue;
                    }
                    for (z, c) in algebra.product(ab, x) {
                        let (_, row) = index[z].expect("product stays in A e_i");
                        m.set(row, col, c);
                    }
                }
                m
            })
            .collect();
        Representation {
            algebra: Arc::clone(algebra),
            dims,
            maps,
        }
    }

    /// `D(e_i A)`, the dual of the projective right module at `i`.
    pub fn injective(algebra: &Arc<Algebra>, i: usize) -> Self {
        let op = algebra.opposite();
        Representation::projective(&op, i).dual_over(algebra)
    }

    /// The k-dual, as a representation of `target`, which must be the
    /// opposite quiver of this one's algebra.
    pub fn dual_over(&self, target: &Arc<Algebra>) -> Self {
        assert_eq!(target.num_vertices(), self.algebra.num_vertices());
        for (x, y) in target.arrows().iter().zip(self.algebra.arrows()) {
            assert!(x.source == y.target && x.target == y.source, "opposite quiver expected");
        }
        Representation {
            algebra: Arc::clone(target),
            dims: self.dims.clone(),
            maps: self.maps.iter().map(Matrix::transpose).collect(),
        }
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Self, ModuleError> {
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(ModuleError::AlgebraMismatch);
        }
        Ok(Representation {
            algebra: Arc::clone(&self.algebra),
            dims: self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect(),
            maps: self
                .maps
                .iter()
                .zip(&other.maps)
                .map(|(a, b)| a.block_diag(b))
                .collect(),
        })
    }

    pub fn direct_sum_all<'a>(
        algebra: &Arc<Algebra>,
        parts: impl IntoIterator<Item = &'a Representation>,
    ) -> Result<Self, ModuleError> {
        let mut acc = Representation::zero(algebra);
        for p in parts {
            acc = acc.direct_sum(p)?;
        }
        Ok(acc)
    }

    /// String module from a word in function order, e.g. `"delta*beta"` or
    /// `"beta^-*lambda"`. Inverse letters carry the suffix `^-`. The word
    /// `"@v"` is the simple module at vertex `v`.
    pub fn string_module(algebra: &Arc<Algebra>, word: &str) -> Result<Self, ModuleError> {
        let bad = |reason: &str| ModuleError::BadWord {
            word: word.to_string(),
            reason: reason.to_string(),
        };
        let text = word.trim();
        if let Some(v) = text.strip_prefix('@') {
            let i = algebra
                .vertex_index(v.trim())
                .ok_or_else(|| bad("unknown vertex"))?;
            return Ok(Representation::simple(algebra, i));
        }
        let mut letters = Vec::new();
        for tok in text.split('*').rev() {
            let tok = tok.trim();
            let (name, inverse) = match tok.strip_suffix("^-") {
                Some(n) => (n.trim(), true),
                None => (tok, false),
            };
            let a = algebra
                .arrow_index(name)
                .ok_or_else(|| bad(&format!("unknown arrow {name:?}")))?;
            letters.push((a, inverse));
        }
        if letters.is_empty() {
            return Err(bad("empty word"));
        }
        for w in letters.windows(2) {
            if w[0].0 == w[1].0 && w[0].1 != w[1].1 {
                return Err(bad("letter followed by its inverse"));
            }
        }
        let arrows = algebra.arrows();
        let ends = |(a, inv): (usize, bool)| {
            if inv {
                (arrows[a].target, arrows[a].source)
            } else {
                (arrows[a].source, arrows[a].target)
            }
        };
        let mut points = vec![ends(letters[0]).0];
        for &l in &letters {
            let (s, t) = ends(l);
            if *points.last().unwrap() != s {
                return Err(bad("letters are not composable"));
            }
            points.push(t);
        }
        let nv = algebra.num_vertices();
        let mut dims = vec![0; nv];
        let mut slot = Vec::with_capacity(points.len());
        for &v in &points {
            slot.push(dims[v]);
            dims[v] += 1;
        }
        let mut m = Representation::with_zero_maps(algebra, dims);
        for (i, &(a, inv)) in letters.iter().enumerate() {
            let (from, to) = if inv { (i + 1, i) } else { (i, i + 1) };
            m.maps[a].set(slot[to], slot[from], 1);
        }
        m.check_relations()?;
        Ok(m)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn arrow_matrix(&self, a: usize) -> &Matrix {
        &self.maps[a]
    }

    pub fn arrow_matrices(&self) -> &[Matrix] {
        &self.maps
    }

    /// Offsets of each vertex block in the flattened total space.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.dims
            .iter()
            .map(|&d| {
                let o = acc;
                acc += d;
                o
            })
            .collect()
    }

    /// Matrix of a path (application order) starting at vertex `s`.
    pub fn word_matrix(&self, s: usize, w: &[usize]) -> Matrix {
        let mut m = Matrix::identity(self.field(), self.dims[s]);
        for &a in w {
            m = self.maps[a].mul(&m);
        }
        m
    }

    /// Applies a path to a vector at its source vertex.
    pub fn apply_word(&self, w: &[usize], v: &[u32]) -> Vec<u32> {
        let mut x = v.to_vec();
        for &a in w {
            x = self.maps[a].mul_vec(&x);
        }
        x
    }

    /// Action of the algebra basis element `z` as a map from its source to its target space.
    pub fn element_matrix(&self, z: usize) -> Matrix {
        let b = &self.algebra.basis()[z];
        self.word_matrix(b.source, &b.word)
    }

    /// Conjugate by per-vertex basis changes: `M'_a = g_t M_a g_s⁻¹`.
    pub fn conjugate(&self, changes: &[Matrix]) -> Representation {
        let inverses: Vec<Matrix> = changes
            .iter()
            .map(|g| g.inverse().expect("invertible basis change"))
            .collect();
        let maps = self
            .algebra
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(arr, m)| changes[arr.target].mul(m).mul(&inverses[arr.source]))
            .collect();
        Representation {
            algebra: Arc::clone(&self.algebra),
            dims: self.dims.clone(),
            maps,
        }
    }

    /// Same data, reinterpreted over an algebra with an identical quiver.
    pub fn with_algebra(&self, algebra: &Arc<Algebra>) -> Result<Representation, ModuleError> {
        Representation::new(algebra, self.dims.clone(), self.maps.clone())
    }
}

/// Dimension vector of `A e_i` and, for every algebra basis element, its
/// `(vertex, position)` in that module when it starts at `i`.
pub(crate) fn projective_basis(
    algebra: &Algebra,
    i: usize,
) -> (Vec<usize>, Vec<Option<(usize, usize)>>) {
    let mut dims = vec![0; algebra.num_vertices()];
    let index = algebra
        .basis()
        .iter()
        .map(|b| {
            (b.source == i).then(|| {
                let pos = dims[b.target];
                dims[b.target] += 1;
                (b.target, pos)
            })
        })
        .collect();
    (dims, index)
}

/// Convenience: the word of a string module parsed without building it.
pub fn arrow_word(algebra: &Algebra, text: &str) -> Option<Word> {
    text.split('*')
        .rev()
        .map(|t| algebra.arrow_index(t.trim()))
        .collect()
}
