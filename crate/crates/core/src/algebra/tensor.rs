use std::sync::Arc;

use super::{Algebra, AlgebraError, Arrow, BasisElement, Products, Relation, Word};

/// Arrow of the quiver of `A ⊗ B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorArrow {
    /// `a ⊗ e_j`: `(s(a), j) → (t(a), j)`.
    Left { arrow: usize, vertex: usize },
    /// `e_i ⊗ b`: `(i, s(b)) → (i, t(b))`.
    Right { vertex: usize, arrow: usize },
}

/// Bookkeeping that identifies `A ⊗ B` with its factors.
#[derive(Clone, Debug)]
pub struct TensorStructure {
    pub left: Arc<Algebra>,
    pub right: Arc<Algebra>,
    pub arrows: Vec<TensorArrow>,
}

impl TensorStructure {
    pub fn vertex(&self, i: usize, j: usize) -> usize {
        i * self.right.num_vertices() + j
    }

    pub fn split_vertex(&self, v: usize) -> (usize, usize) {
        let nb = self.right.num_vertices();
        (v / nb, v % nb)
    }

    pub fn element(&self, x: usize, y: usize) -> usize {
        x * self.right.dim() + y
    }

    pub fn split_element(&self, z: usize) -> (usize, usize) {
        let db = self.right.dim();
        (z / db, z % db)
    }

    pub fn left_arrow(&self, a: usize, j: usize) -> usize {
        a * self.right.num_vertices() + j
    }

    pub fn right_arrow(&self, i: usize, b: usize) -> usize {
        self.left.arrows().len() * self.right.num_vertices() + i * self.right.arrows().len() + b
    }
}

impl Algebra {
    /// `A ⊗ B` with componentwise multiplication.
    pub fn tensor(a: &Arc<Algebra>, b: &Arc<Algebra>) -> Result<Arc<Algebra>, AlgebraError> {
        if a.field != b.field {
            return Err(AlgebraError::CharacteristicMismatch(a.field.p(), b.field.p()));
        }
        let (na, nb) = (a.num_vertices(), b.num_vertices());
        let vertex = |i: usize, j: usize| i * nb + j;
        let mut vertices = Vec::with_capacity(na * nb);
        for i in 0..na {
            for j in 0..nb {
                vertices.push(format!("{}|{}", a.vertices[i], b.vertices[j]));
            }
        }
        let mut arrows = Vec::new();
        let mut kinds = Vec::new();
        for (ai, arr) in a.arrows.iter().enumerate() {
            for j in 0..nb {
                arrows.push(Arrow {
                    name: format!("{}|{}", arr.name, b.vertices[j]),
                    source: vertex(arr.source, j),
                    target: vertex(arr.target, j),
                });
                kinds.push(TensorArrow::Left { arrow: ai, vertex: j });
            }
        }
        for i in 0..na {
            for (bi, arr) in b.arrows.iter().enumerate() {
                arrows.push(Arrow {
                    name: format!("{}|{}", a.vertices[i], arr.name),
                    source: vertex(i, arr.source),
                    target: vertex(i, arr.target),
                });
                kinds.push(TensorArrow::Right { vertex: i, arrow: bi });
            }
        }
        let structure = TensorStructure {
            left: Arc::clone(a),
            right: Arc::clone(b),
            arrows: kinds,
        };
        let left_word = |w: &Word, j: usize| -> Word {
            w.iter().map(|&x| structure.left_arrow(x, j)).collect()
        };
        let right_word = |i: usize, w: &Word| -> Word {
            w.iter().map(|&y| structure.right_arrow(i, y)).collect()
        };

        let mut relations = Vec::new();
        for r in &a.relations {
            for j in 0..nb {
                relations.push(Relation {
                    label: format!("({})|{}", r.label, b.vertices[j]),
                    terms: r.terms.iter().map(|(c, w)| (*c, left_word(w, j))).collect(),
                });
            }
        }
        for i in 0..na {
            for r in &b.relations {
                relations.push(Relation {
                    label: format!("{}|({})", a.vertices[i], r.label),
                    terms: r.terms.iter().map(|(c, w)| (*c, right_word(i, w))).collect(),
                });
            }
        }
        let minus_one = a.field.neg(1);
        for (ai, x) in a.arrows.iter().enumerate() {
            for (bi, y) in b.arrows.iter().enumerate() {
                relations.push(Relation {
                    label: format!("[{},{}]", x.name, y.name),
                    terms: vec![
                        (
                            1,
                            vec![
                                structure.right_arrow(x.source, bi),
                                structure.left_arrow(ai, y.target),
                            ],
                        ),
                        (
                            minus_one,
                            vec![
                                structure.left_arrow(ai, y.source),
                                structure.right_arrow(x.target, bi),
                            ],
                        ),
                    ],
                });
            }
        }

        let mut basis = Vec::with_capacity(a.dim() * b.dim());
        for bx in &a.basis {
            for by in &b.basis {
                let mut word = left_word(&bx.word, by.source);
                word.extend(right_word(bx.target, &by.word));
                basis.push(BasisElement {
                    word,
                    source: vertex(bx.source, by.source),
                    target: vertex(bx.target, by.target),
                    degree: bx.degree + by.degree,
                });
            }
        }
        let mut idempotents = vec![0; na * nb];
        for i in 0..na {
            for j in 0..nb {
                idempotents[vertex(i, j)] = structure.element(a.idempotent(i), b.idempotent(j));
            }
        }
        let mut arrow_basis = vec![0; arrows.len()];
        for (k, kind) in structure.arrows.iter().enumerate() {
            arrow_basis[k] = match *kind {
                TensorArrow::Left { arrow, vertex } => {
                    structure.element(a.arrow_basis[arrow], b.idempotent(vertex))
                }
                TensorArrow::Right { vertex, arrow } => {
                    structure.element(a.idempotent(vertex), b.arrow_basis[arrow])
                }
            };
        }
        Ok(Arc::new(Algebra {
            field: a.field,
            name: format!("{}⊗{}", a.name, b.name),
            vertices,
            arrows,
            relations,
            basis,
            idempotents,
            products: Products::Tensor(Arc::clone(a), Arc::clone(b)),
            arrow_basis,
            presentation: None,
            tensor: Some(structure),
        }))
    }

    /// The enveloping algebra `A ⊗ Aᵒᵖ`.
    pub fn enveloping(self: &Arc<Self>) -> Arc<Algebra> {
        Algebra::tensor(self, &self.opposite()).expect("same field")
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::d3r_1222;
    use super::*;
    use crate::linalg::Field;

    #[test]
    fn ground_tensor_is_identity() {
        let f = Field::gf2();
        let a = Algebra::build(&d3r_1222(), f, 28).unwrap();
        let t = Algebra::tensor(&Algebra::ground(f), &a).unwrap();
        assert_eq!(t.dim(), a.dim());
        assert!(t.same_structure(&a));
    }

    #[test]
    fn enveloping_dimension_and_associativity() {
        let a = Algebra::build(&d3r_1222(), Field::gf2(), 28).unwrap();
        let e = a.enveloping();
        assert_eq!(e.dim(), a.dim() * a.dim());
        assert_eq!(e.num_vertices(), 9);
        assert!(e.check_associativity(0, 100, 7).is_none());
        let one: Vec<(usize, u32)> = (0..9).map(|v| (e.idempotent(v), 1)).collect();
        for z in [0, 17, 100, e.dim() - 1] {
            assert_eq!(e.multiply(&one, &vec![(z, 1)]), vec![(z, 1)]);
        }
    }

    #[test]
    fn arrow_basis_matches_words() {
        let a = Algebra::build(&d3r_1222(), Field::gf2(), 28).unwrap();
        let e = a.enveloping();
        for k in 0..e.arrows().len() {
            assert_eq!(e.basis()[e.arrow_basis_index(k)].word, vec![k]);
        }
    }
}
