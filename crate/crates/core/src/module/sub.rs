use crate::linalg::{Matrix, Subspace};

use super::cover::radical_subspaces;
use super::{ModuleMap, Representation};

/// A subrepresentation with its inclusion.
#[derive(Clone, Debug)]
pub struct Sub {
    pub module: Representation,
    pub inclusion: ModuleMap,
}

/// A quotient with its projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub module: Representation,
    pub projection: ModuleMap,
}

#[derive(Clone, Debug)]
pub struct TopSocle {
    pub top: Representation,
    pub socle: Representation,
    pub radical: Sub,
}

impl Representation {
    /// Subrepresentation spanned vertex-wise by the columns of `spans`,
    /// which must be closed under the arrows. Columns are reduced to a basis.
    pub fn subrepresentation(&self, spans: &[Matrix]) -> Sub {
        let f = self.field();
        let alg = self.algebra();
        let bases: Vec<Matrix> = spans
            .iter()
            .zip(self.dims())
            .map(|(s, &d)| {
                if s.cols() == 0 {
                    Matrix::zeros(f, d, 0)
                } else {
                    s.column_space()
                }
            })
            .collect();
        let elims: Vec<_> = bases.iter().map(Matrix::elimination).collect();
        let maps = alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arr)| {
                let img = self.arrow_matrix(a).mul(&bases[arr.source]);
                let cols: Vec<Vec<u32>> = img
                    .columns()
                    .iter()
                    .map(|c| elims[arr.target].solve(c).expect("span closed under arrows"))
                    .collect();
                from_cols(f, bases[arr.target].cols(), &cols)
            })
            .collect();
        let module = Representation {
            algebra: self.algebra().clone(),
            dims: bases.iter().map(Matrix::cols).collect(),
            maps,
        };
        Sub {
            module,
            inclusion: ModuleMap { components: bases },
        }
    }

    /// Quotient by a vertex-wise closed subspace given by spanning columns.
    pub fn quotient(&self, spans: &[Matrix]) -> Quotient {
        let f = self.field();
        let subs: Vec<Subspace> = spans
            .iter()
            .zip(self.dims())
            .map(|(s, &d)| Subspace::spanned_by(f, d, s.columns().iter()))
            .collect();
        let projection: Vec<Matrix> = subs
            .iter()
            .map(|s| {
                let keep = s.complement_indices();
                let d = s.ambient();
                let mut p = Matrix::zeros(f, keep.len(), d);
                for k in 0..d {
                    let mut e = vec![0; d];
                    e[k] = 1;
                    let r = s.reduce(&e);
                    for (i, &c) in keep.iter().enumerate() {
                        p.set(i, k, r[c]);
                    }
                }
                p
            })
            .collect();
        let alg = self.algebra();
        let maps = alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arr)| {
                let keep = subs[arr.source].complement_indices();
                let lifted = self.arrow_matrix(a).select_columns(&keep);
                projection[arr.target].mul(&lifted)
            })
            .collect();
        let module = Representation {
            algebra: alg.clone(),
            dims: projection.iter().map(Matrix::rows).collect(),
            maps,
        };
        Quotient {
            module,
            projection: ModuleMap {
                components: projection,
            },
        }
    }

    pub fn radical(&self) -> Sub {
        let spans: Vec<Matrix> = radical_subspaces(self)
            .iter()
            .map(Subspace::to_columns)
            .collect();
        self.subrepresentation(&spans)
    }

    /// Vertex-wise intersection of the kernels of all outgoing arrows.
    pub fn socle(&self) -> Sub {
        let f = self.field();
        let alg = self.algebra();
        let spans: Vec<Matrix> = (0..alg.num_vertices())
            .map(|v| {
                let d = self.dims()[v];
                let mut stacked = Matrix::zeros(f, 0, d);
                for (a, arr) in alg.arrows().iter().enumerate() {
                    if arr.source == v {
                        stacked = stacked.vstack(self.arrow_matrix(a));
                    }
                }
                stacked.kernel()
            })
            .collect();
        self.subrepresentation(&spans)
    }

    pub fn top_socle(&self) -> TopSocle {
        let radical = self.radical();
        let top = self.quotient(&radical.inclusion.components).module;
        TopSocle {
            top,
            socle: self.socle().module,
            radical,
        }
    }

    /// Whether `M` is semisimple, i.e. all arrows act by zero.
    pub fn is_semisimple(&self) -> bool {
        self.arrow_matrices().iter().all(Matrix::is_zero)
    }
}

impl ModuleMap {
    pub fn kernel(&self, source: &Representation) -> Sub {
        let spans: Vec<Matrix> = self.components.iter().map(Matrix::kernel).collect();
        source.subrepresentation(&spans)
    }

    pub fn image(&self, target: &Representation) -> Sub {
        target.subrepresentation(&self.components)
    }

    pub fn cokernel(&self, target: &Representation) -> Quotient {
        target.quotient(&self.components)
    }
}

fn from_cols(f: crate::linalg::Field, rows: usize, cols: &[Vec<u32>]) -> Matrix {
    if cols.is_empty() {
        Matrix::zeros(f, rows, 0)
    } else {
        Matrix::from_columns(f, rows, cols)
    }
}
