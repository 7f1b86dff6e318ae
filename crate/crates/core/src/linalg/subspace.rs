use super::{Field, Matrix};

/// A subspace of `F^n` kept in reduced echelon form, for incremental
/// membership tests and complement construction.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(field: Field, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn spanned_by<'a>(
        field: Field,
        ambient: usize,
        vectors: impl IntoIterator<Item = &'a Vec<u32>>,
    ) -> Self {
        let mut s = Subspace::new(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn from_columns(m: &Matrix) -> Self {
        let cols = m.columns();
        Subspace::spanned_by(m.field(), m.rows(), cols.iter())
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residue of `v` after clearing every pivot coordinate.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ambient);
        let f = self.field;
        let mut w = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let a = w[c];
            if a != 0 {
                let m = f.neg(a);
                for (x, &y) in w.iter_mut().zip(row) {
                    if y != 0 {
                        *x = f.add(*x, f.mul(m, y));
                    }
                }
            }
        }
        w
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is not in the span.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        if self.reduce(v).iter().any(|&x| x != 0) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c]).collect())
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let f = self.field;
        let mut w = self.reduce(v);
        let Some(c) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(w[c]);
        for x in w.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let a = row[c];
            if a != 0 {
                let m = f.neg(a);
                for (x, &y) in row.iter_mut().zip(&w) {
                    if y != 0 {
                        *x = f.add(*x, f.mul(m, y));
                    }
                }
            }
        }
        let pos = self.pivots.partition_point(|&p| p < c);
        self.pivots.insert(pos, c);
        self.rows.insert(pos, w);
        true
    }

    /// Standard basis vectors completing this subspace to the ambient space.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    pub fn to_columns(&self) -> Matrix {
        Matrix::from_columns(self.field, self.ambient, &self.rows)
    }
}
