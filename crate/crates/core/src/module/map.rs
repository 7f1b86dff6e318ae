use crate::linalg::{Field, Matrix};

use super::{ModuleError, Representation};

/// A vertex-wise linear map between representations. Component `v` is a
/// `dim N_v × dim M_v` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub components: Vec<Matrix>,
}

impl ModuleMap {
    pub fn zero(m: &Representation, n: &Representation) -> Self {
        let f = m.field();
        ModuleMap {
            components: m
                .dims()
                .iter()
                .zip(n.dims())
                .map(|(&a, &b)| Matrix::zeros(f, b, a))
                .collect(),
        }
    }

    pub fn identity(m: &Representation) -> Self {
        let f = m.field();
        ModuleMap {
            components: m.dims().iter().map(|&d| Matrix::identity(f, d)).collect(),
        }
    }

    /// Checks shapes and all naturality squares `f_t M_a = N_a f_s`.
    pub fn check(&self, m: &Representation, n: &Representation) -> Result<(), ModuleError> {
        let alg = m.algebra();
        if self.components.len() != alg.num_vertices() {
            return Err(ModuleError::NotNatural("wrong number of components".into()));
        }
        for (v, c) in self.components.iter().enumerate() {
            if c.shape() != (n.dims()[v], m.dims()[v]) {
                return Err(ModuleError::NotNatural(format!("component {v} has wrong shape")));
            }
        }
        for (a, arr) in alg.arrows().iter().enumerate() {
            let lhs = self.components[arr.target].mul(m.arrow_matrix(a));
            let rhs = n.arrow_matrix(a).mul(&self.components[arr.source]);
            if lhs != rhs {
                return Err(ModuleError::NotNatural(format!("square at arrow {} fails", arr.name)));
            }
        }
        Ok(())
    }

    pub fn is_natural(&self, m: &Representation, n: &Representation) -> bool {
        self.check(m, n).is_ok()
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &ModuleMap) -> ModuleMap {
        ModuleMap {
            components: self
                .components
                .iter()
                .zip(&g.components)
                .map(|(f, g)| g.mul(f))
                .collect(),
        }
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: u32) -> ModuleMap {
        ModuleMap {
            components: self.components.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn neg(&self) -> ModuleMap {
        ModuleMap {
            components: self.components.iter().map(Matrix::neg).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Matrix::is_zero)
    }

    pub fn is_invertible(&self) -> bool {
        self.components.iter().all(Matrix::is_invertible)
    }

    pub fn inverse(&self) -> Option<ModuleMap> {
        Some(ModuleMap {
            components: self
                .components
                .iter()
                .map(Matrix::inverse)
                .collect::<Option<Vec<_>>>()?,
        })
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(Matrix::rank).sum()
    }

    /// Row-major concatenation of all components.
    pub fn flatten(&self) -> Vec<u32> {
        self.components
            .iter()
            .flat_map(|c| c.data().iter().copied())
            .collect()
    }

    pub fn from_flat(field: Field, m: &Representation, n: &Representation, data: &[u32]) -> Self {
        let mut pos = 0;
        let components = m
            .dims()
            .iter()
            .zip(n.dims())
            .map(|(&c, &r)| {
                let block = data[pos..pos + r * c].to_vec();
                pos += r * c;
                Matrix::from_vec(field, r, c, block)
            })
            .collect();
        ModuleMap { components }
    }

    /// Applies the map to a flattened element of the source.
    pub fn apply(&self, m: &Representation, x: &[u32]) -> Vec<u32> {
        let offs = m.offsets();
        let mut out = Vec::new();
        for (v, c) in self.components.iter().enumerate() {
            out.extend(c.mul_vec(&x[offs[v]..offs[v] + m.dims()[v]]));
        }
        out
    }

    /// Block matrix `[f; g]` into a direct sum of targets.
    pub fn stack(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.vstack(b))
                .collect(),
        }
    }

    /// Block matrix `[f g]` out of a direct sum of sources.
    pub fn join(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.hstack(b))
                .collect(),
        }
    }

    pub fn block_diag(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.block_diag(b))
                .collect(),
        }
    }
}
