use std::sync::Arc;

use crate::algebra::{Algebra, TensorStructure};
use crate::linalg::{Field, Matrix, Subspace};
use crate::module::{same_algebra, ModuleMap, Representation};

use super::{Bimodule, BimoduleError};

pub(crate) fn block_diag_all(f: Field, blocks: &[Matrix]) -> Matrix {
    blocks.iter().fold(Matrix::zeros(f, 0, 0), |acc, b| acc.block_diag(b))
}

/// Components of a bimodule map split as `[i][j]`.
pub(crate) fn split_map(ts: &TensorStructure, f: &ModuleMap) -> Vec<Vec<Matrix>> {
    let (na, nb) = (ts.left.num_vertices(), ts.right.num_vertices());
    (0..na)
        .map(|i| (0..nb).map(|j| f.components[ts.vertex(i, j)].clone()).collect())
        .collect()
}

/// A bimodule cut into its pieces `e_i X e_j`.
#[derive(Clone, Debug)]
pub(crate) struct Graded {
    pub left: Arc<Algebra>,
    pub right_op: Arc<Algebra>,
    pub dims: Vec<Vec<usize>>,
    /// `[a][j]`: `X_(s a, j) → X_(t a, j)`.
    pub left_maps: Vec<Vec<Matrix>>,
    /// `[b][i]` for arrows `b` of the right opposite algebra.
    pub right_maps: Vec<Vec<Matrix>>,
}

impl Graded {
    pub fn field(&self) -> Field {
        self.left.field()
    }

    pub fn of_bimodule(x: &Bimodule) -> Self {
        let ts = x.structure();
        let m = x.module();
        let (na, nb) = (ts.left.num_vertices(), ts.right.num_vertices());
        Graded {
            left: Arc::clone(&ts.left),
            right_op: Arc::clone(&ts.right),
            dims: (0..na)
                .map(|i| (0..nb).map(|j| m.dims()[ts.vertex(i, j)]).collect())
                .collect(),
            left_maps: (0..ts.left.arrows().len())
                .map(|a| (0..nb).map(|j| m.arrow_matrix(ts.left_arrow(a, j)).clone()).collect())
                .collect(),
            right_maps: (0..ts.right.arrows().len())
                .map(|b| (0..na).map(|i| m.arrow_matrix(ts.right_arrow(i, b)).clone()).collect())
                .collect(),
        }
    }

    /// A left module as a bimodule over the ground field on the right.
    pub fn of_module(m: &Representation) -> Self {
        Graded {
            left: Arc::clone(m.algebra()),
            right_op: Algebra::ground(m.field()),
            dims: m.dims().iter().map(|&d| vec![d]).collect(),
            left_maps: m.arrow_matrices().iter().map(|x| vec![x.clone()]).collect(),
            right_maps: Vec::new(),
        }
    }

    pub fn identity_blocks(&self) -> Vec<Vec<Matrix>> {
        let f = self.field();
        self.dims
            .iter()
            .map(|row| row.iter().map(|&d| Matrix::identity(f, d)).collect())
            .collect()
    }

    /// Right action of a word of the opposite algebra at left vertex `i`.
    pub fn right_word(&self, i: usize, start: usize, word: &[usize]) -> Matrix {
        let mut m = Matrix::identity(self.field(), self.dims[i][start]);
        for &b in word {
            m = self.right_maps[b][i].mul(&m);
        }
        m
    }

    pub fn to_module(&self) -> Representation {
        debug_assert_eq!(self.right_op.num_vertices(), 1);
        let dims = self.dims.iter().map(|row| row[0]).collect();
        let maps = self.left_maps.iter().map(|per_j| per_j[0].clone()).collect();
        let m = Representation::unchecked(&self.left, dims, maps).expect("induced shapes");
        debug_assert!(m.check_relations().is_ok());
        m
    }

    pub fn to_bimodule(&self, env: &Arc<Algebra>) -> Result<Bimodule, BimoduleError> {
        let ts = env.tensor_structure().ok_or(BimoduleError::NotBimodule)?;
        let nb = self.right_op.num_vertices();
        let mut dims = vec![0; env.num_vertices()];
        for (i, row) in self.dims.iter().enumerate() {
            for (j, &d) in row.iter().enumerate() {
                dims[ts.vertex(i, j)] = d;
            }
        }
        let f = self.field();
        let mut maps = vec![Matrix::zeros(f, 0, 0); env.arrows().len()];
        for (a, per_j) in self.left_maps.iter().enumerate() {
            for (j, m) in per_j.iter().enumerate().take(nb) {
                maps[ts.left_arrow(a, j)] = m.clone();
            }
        }
        for (b, per_i) in self.right_maps.iter().enumerate() {
            for (i, m) in per_i.iter().enumerate() {
                maps[ts.right_arrow(i, b)] = m.clone();
            }
        }
        let m = Representation::new(env, dims, maps).map_err(|e| BimoduleError::Relations(e.to_string()))?;
        Bimodule::new(m)
    }
}

/// `⊕_j Y_(i,j) ⊗ X_(j,k)` modulo the balancing relations.
#[derive(Clone, Debug)]
pub(crate) struct Piece {
    pub offsets: Vec<usize>,
    pub total: usize,
    pub keep: Vec<usize>,
    /// Projection onto the quotient in the coordinates `keep`.
    pub proj: Matrix,
}

impl Piece {
    fn new(f: Field, blocks: &[usize], relations: &Subspace) -> Self {
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut total = 0;
        for &b in blocks {
            offsets.push(total);
            total += b;
        }
        let keep = relations.complement_indices();
        let mut proj = Matrix::zeros(f, keep.len(), total);
        let mut e = vec![0; total];
        for c in 0..total {
            e[c] = 1;
            let r = relations.reduce(&e);
            for (row, &k) in keep.iter().enumerate() {
                proj.set(row, c, r[k]);
            }
            e[c] = 0;
        }
        Piece {
            offsets,
            total,
            keep,
            proj,
        }
    }
}

pub(crate) struct Tensor {
    pub result: Graded,
    /// `[i][k]`.
    pub pieces: Vec<Vec<Piece>>,
    y_dims: Vec<Vec<usize>>,
    x_dims: Vec<Vec<usize>>,
}

impl Tensor {
    pub fn new(y: &Graded, x: &Graded) -> Result<Self, BimoduleError> {
        if !same_algebra(&y.right_op, &x.left.opposite()) {
            return Err(BimoduleError::AlgebraMismatch);
        }
        let f = x.field();
        let nm = x.left.num_vertices();
        let na = y.left.num_vertices();
        let nc = x.right_op.num_vertices();
        let mut pieces = Vec::with_capacity(na);
        for i in 0..na {
            let mut row = Vec::with_capacity(nc);
            for k in 0..nc {
                let blocks: Vec<usize> = (0..nm).map(|j| y.dims[i][j] * x.dims[j][k]).collect();
                let total: usize = blocks.iter().sum();
                let mut offs = Vec::with_capacity(nm);
                let mut acc = 0;
                for &b in &blocks {
                    offs.push(acc);
                    acc += b;
                }
                let mut rel = Subspace::new(f, total);
                for (b, arr) in x.left.arrows().iter().enumerate() {
                    let (s, t) = (arr.source, arr.target);
                    let (dy, dx) = (y.dims[i][t], x.dims[s][k]);
                    if dy * dx == 0 {
                        continue;
                    }
                    // (y·b) ⊗ x − y ⊗ (b·x)
                    let r = y.right_maps[b][i].kron(&Matrix::identity(f, dx));
                    let l = Matrix::identity(f, dy).kron(&x.left_maps[b][k]);
                    for c in 0..dy * dx {
                        let mut v = vec![0; total];
                        for q in 0..r.rows() {
                            v[offs[s] + q] = f.add(v[offs[s] + q], r.get(q, c));
                        }
                        for q in 0..l.rows() {
                            v[offs[t] + q] = f.sub(v[offs[t] + q], l.get(q, c));
                        }
                        rel.insert(&v);
                    }
                }
                row.push(Piece::new(f, &blocks, &rel));
            }
            pieces.push(row);
        }
        let dims: Vec<Vec<usize>> = pieces
            .iter()
            .map(|row| row.iter().map(|p| p.keep.len()).collect())
            .collect();
        let left_maps = y
            .left
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arr)| {
                (0..nc)
                    .map(|k| {
                        let (src, tgt) = (&pieces[arr.source][k], &pieces[arr.target][k]);
                        let mut big = Matrix::zeros(f, tgt.total, src.total);
                        for j in 0..nm {
                            let blk = y.left_maps[a][j].kron(&Matrix::identity(f, x.dims[j][k]));
                            big.set_block(tgt.offsets[j], src.offsets[j], &blk);
                        }
                        tgt.proj.mul(&big.select_columns(&src.keep))
                    })
                    .collect()
            })
            .collect();
        let right_maps = x
            .right_op
            .arrows()
            .iter()
            .enumerate()
            .map(|(c, arr)| {
                (0..na)
                    .map(|i| {
                        let (src, tgt) = (&pieces[i][arr.source], &pieces[i][arr.target]);
                        let mut big = Matrix::zeros(f, tgt.total, src.total);
                        for j in 0..nm {
                            let blk = Matrix::identity(f, y.dims[i][j]).kron(&x.right_maps[c][j]);
                            big.set_block(tgt.offsets[j], src.offsets[j], &blk);
                        }
                        tgt.proj.mul(&big.select_columns(&src.keep))
                    })
                    .collect()
            })
            .collect();
        Ok(Tensor {
            result: Graded {
                left: Arc::clone(&y.left),
                right_op: Arc::clone(&x.right_op),
                dims,
                left_maps,
                right_maps,
            },
            pieces,
            y_dims: y.dims.clone(),
            x_dims: x.dims.clone(),
        })
    }

    /// Components `[i][k]` of `f ⊗ g` between two tensor products.
    pub fn induced(src: &Tensor, tgt: &Tensor, fy: &[Vec<Matrix>], gx: &[Vec<Matrix>]) -> Vec<Vec<Matrix>> {
        let f = src.result.field();
        let nm = src.x_dims.len();
        src.pieces
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(k, sp)| {
                        let tp = &tgt.pieces[i][k];
                        let mut big = Matrix::zeros(f, tp.total, sp.total);
                        for j in 0..nm {
                            debug_assert_eq!(fy[i][j].cols(), src.y_dims[i][j]);
                            debug_assert_eq!(gx[j][k].cols(), src.x_dims[j][k]);
                            big.set_block(tp.offsets[j], sp.offsets[j], &fy[i][j].kron(&gx[j][k]));
                        }
                        tp.proj.mul(&big.select_columns(&sp.keep))
                    })
                    .collect()
            })
            .collect()
    }
}
