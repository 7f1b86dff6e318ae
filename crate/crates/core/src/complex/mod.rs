//! Bounded cochain complexes of representations.
//!
//! Cohomological grading: `d^n: C^n → C^{n+1}`. `C[i]^n = C^{n+i}` with
//! differential `(−1)^i d`, and `cone(f)^n = A^{n+1} ⊕ B^n` with
//! `d(a, b) = (−d a, f a + d b)`.

mod derived;
mod lift;
mod resolve;

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::linalg::{Matrix, Subspace};
use crate::module::{same_algebra, ModuleMap, Representation};

pub use derived::{
    complex_tangent, derived_ext, derived_ext_at_depth, derived_ext_dim, proflat_classes,
    required_depth, split_tangent_dim, two_term_analysis, Cochain, ComplexTangent, DerivedExt,
    HomComplex, TwoTermReport,
};
pub use lift::{first_order_quasilift, proflat_check, FirstOrderQuasiLift, TruncatedComplex};
pub use resolve::{resolve_complex, ProjectiveResolution};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("d∘d ≠ 0 at degree {0}")]
    NotAComplex(i64),
    #[error("differential at degree {0} is not a module map of the right shape")]
    BadDifferential(i64),
    #[error("terms lie over different algebras")]
    AlgebraMismatch,
    #[error("not a chain map at degree {0}")]
    NotAChainMap(i64),
    #[error("t-action does not commute with the differential at degree {0}")]
    ActionNotCommuting(i64),
    #[error("lifting failed at degree {0}")]
    LiftFailed(i64),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

#[derive(Clone, Debug)]
pub struct BoundedComplex {
    algebra: Arc<Algebra>,
    low: i64,
    terms: Vec<Representation>,
    /// `diffs[k]: terms[k] → terms[k+1]`.
    diffs: Vec<ModuleMap>,
}

impl PartialEq for BoundedComplex {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra)
            && self.low == other.low
            && self.terms == other.terms
            && self.diffs == other.diffs
    }
}

impl BoundedComplex {
    pub fn new(
        algebra: &Arc<Algebra>,
        low: i64,
        terms: Vec<Representation>,
        diffs: Vec<ModuleMap>,
    ) -> Result<Self, ComplexError> {
        if terms.iter().any(|t| !same_algebra(t.algebra(), algebra)) {
            return Err(ComplexError::AlgebraMismatch);
        }
        if diffs.len() + 1 != terms.len().max(1) {
            return Err(ComplexError::BadDifferential(low));
        }
        let c = BoundedComplex {
            algebra: algebra.clone(),
            low,
            terms,
            diffs,
        };
        for (k, d) in c.diffs.iter().enumerate() {
            if d.check(&c.terms[k], &c.terms[k + 1]).is_err() {
                return Err(ComplexError::BadDifferential(low + k as i64));
            }
        }
        for k in 1..c.diffs.len() {
            if !c.diffs[k - 1].then(&c.diffs[k]).is_zero() {
                return Err(ComplexError::NotAComplex(low + k as i64 - 1));
            }
        }
        Ok(c)
    }

    /// `V[−n]`: `V` in degree `n`.
    pub fn concentrated(v: &Representation, degree: i64) -> Self {
        BoundedComplex {
            algebra: v.algebra().clone(),
            low: degree,
            terms: vec![v.clone()],
            diffs: Vec::new(),
        }
    }

    pub fn two_term(
        low: i64,
        source: &Representation,
        target: &Representation,
        d: ModuleMap,
    ) -> Result<Self, ComplexError> {
        BoundedComplex::new(source.algebra(), low, vec![source.clone(), target.clone()], vec![d])
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.terms.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.low..=self.high()
    }

    pub fn term(&self, n: i64) -> Representation {
        self.term_ref(n)
            .cloned()
            .unwrap_or_else(|| Representation::zero(&self.algebra))
    }

    pub fn term_ref(&self, n: i64) -> Option<&Representation> {
        if n < self.low {
            None
        } else {
            self.terms.get((n - self.low) as usize)
        }
    }

    /// `d^n: C^n → C^{n+1}`, zero outside the range.
    pub fn diff(&self, n: i64) -> ModuleMap {
        if n >= self.low && n < self.high() {
            self.diffs[(n - self.low) as usize].clone()
        } else {
            ModuleMap::zero(&self.term(n), &self.term(n + 1))
        }
    }

    pub fn total_dim(&self) -> usize {
        self.terms.iter().map(Representation::dim).sum()
    }

    pub fn shift(&self, i: i64) -> Self {
        let diffs = self
            .diffs
            .iter()
            .map(|d| if i % 2 != 0 { d.neg() } else { d.clone() })
            .collect();
        BoundedComplex {
            algebra: self.algebra.clone(),
            low: self.low - i,
            terms: self.terms.clone(),
            diffs,
        }
    }

    /// Termwise direct sum over the union of the degree ranges.
    pub fn direct_sum(&self, other: &BoundedComplex) -> Self {
        let low = self.low.min(other.low);
        let high = self.high().max(other.high());
        let terms: Vec<Representation> = (low..=high)
            .map(|n| self.term(n).direct_sum(&other.term(n)).expect("same algebra"))
            .collect();
        let diffs = (low..high)
            .map(|n| self.diff(n).block_diag(&other.diff(n)))
            .collect();
        BoundedComplex {
            algebra: self.algebra.clone(),
            low,
            terms,
            diffs,
        }
    }

    /// `Hⁿ = ker dⁿ / im dⁿ⁻¹` with the induced arrow action.
    pub fn cohomology_at(&self, n: i64) -> Representation {
        let c = self.term(n);
        let ker = self.diff(n).kernel(&c);
        let prev = self.diff(n - 1);
        let f = c.field();
        let spans: Vec<Matrix> = ker
            .inclusion
            .components
            .iter()
            .zip(&prev.components)
            .map(|(inc, d)| {
                let elim = inc.elimination();
                let cols: Vec<Vec<u32>> = d
                    .columns()
                    .iter()
                    .map(|col| elim.solve(col).expect("boundaries are cycles"))
                    .collect();
                if cols.is_empty() {
                    Matrix::zeros(f, inc.cols(), 0)
                } else {
                    Matrix::from_columns(f, inc.cols(), &cols)
                }
            })
            .collect();
        ker.module.quotient(&spans).module
    }

    /// `(n, Hⁿ)` for every degree in the range.
    pub fn cohomology(&self) -> Vec<(i64, Representation)> {
        self.degrees().map(|n| (n, self.cohomology_at(n))).collect()
    }

    /// `dim_k Hⁿ`, by ranks only.
    pub fn cohomology_dim(&self, n: i64) -> usize {
        let c = self.term(n);
        let dn = self.diff(n);
        let dp = self.diff(n - 1);
        c.dim() - dn.rank() - dp.rank()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|n| {
                let h = self.cohomology_dim(n) as i64;
                if n.rem_euclid(2) == 0 {
                    h
                } else {
                    -h
                }
            })
            .sum()
    }

    pub fn is_acyclic(&self) -> bool {
        self.degrees().all(|n| self.cohomology_dim(n) == 0)
    }

    /// Cycles `Zⁿ` vertexwise as a subspace of `Cⁿ_v`.
    pub(crate) fn cycles(&self, n: i64) -> Vec<Subspace> {
        let f = self.algebra.field();
        self.diff(n)
            .components
            .iter()
            .zip(self.term(n).dims())
            .map(|(d, &dim)| Subspace::spanned_by(f, dim, d.kernel().columns().iter()))
            .collect()
    }

    /// Boundaries `Bⁿ = im dⁿ⁻¹` vertexwise.
    pub(crate) fn boundaries(&self, n: i64) -> Vec<Subspace> {
        let f = self.algebra.field();
        self.diff(n - 1)
            .components
            .iter()
            .zip(self.term(n).dims())
            .map(|(d, &dim)| Subspace::spanned_by(f, dim, d.columns().iter()))
            .collect()
    }
}

/// Degreewise maps `fⁿ: Aⁿ → Bⁿ` for `n` in the source range.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap {
    pub low: i64,
    pub components: Vec<ModuleMap>,
}

impl ChainMap {
    pub fn component(&self, source: &BoundedComplex, target: &BoundedComplex, n: i64) -> ModuleMap {
        if n >= self.low && n < self.low + self.components.len() as i64 {
            self.components[(n - self.low) as usize].clone()
        } else {
            ModuleMap::zero(&source.term(n), &target.term(n))
        }
    }

    pub fn identity(c: &BoundedComplex) -> Self {
        ChainMap {
            low: c.low,
            components: c.terms.iter().map(ModuleMap::identity).collect(),
        }
    }

    pub fn zero(a: &BoundedComplex, b: &BoundedComplex) -> Self {
        ChainMap {
            low: a.low,
            components: a.degrees().map(|n| ModuleMap::zero(&a.term(n), &b.term(n))).collect(),
        }
    }

    pub fn check(&self, a: &BoundedComplex, b: &BoundedComplex) -> Result<(), ComplexError> {
        for n in a.low - 1..=a.high() {
            let f0 = self.component(a, b, n);
            let f1 = self.component(a, b, n + 1);
            if f0.check(&a.term(n), &b.term(n)).is_err() {
                return Err(ComplexError::NotAChainMap(n));
            }
            let lhs = a.diff(n).then(&f1);
            let rhs = f0.then(&b.diff(n));
            if lhs != rhs {
                return Err(ComplexError::NotAChainMap(n));
            }
        }
        Ok(())
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &ChainMap, a: &BoundedComplex, b: &BoundedComplex, c: &BoundedComplex) -> ChainMap {
        ChainMap {
            low: a.low,
            components: a
                .degrees()
                .map(|n| self.component(a, b, n).then(&g.component(b, c, n)))
                .collect(),
        }
    }
}

/// Mapping cone of a chain map `f: A → B`.
pub fn cone(f: &ChainMap, a: &BoundedComplex, b: &BoundedComplex) -> Result<BoundedComplex, ComplexError> {
    f.check(a, b)?;
    let low = (a.low - 1).min(b.low);
    let high = (a.high() - 1).max(b.high());
    let terms: Vec<Representation> = (low..=high)
        .map(|n| a.term(n + 1).direct_sum(&b.term(n)).expect("same algebra"))
        .collect();
    let diffs = (low..high)
        .map(|n| {
            let from_a = a.diff(n + 1).neg().stack(&f.component(a, b, n + 1));
            let from_b = ModuleMap::zero(&b.term(n), &a.term(n + 2)).stack(&b.diff(n));
            from_a.join(&from_b)
        })
        .collect();
    BoundedComplex::new(&a.algebra, low, terms, diffs)
}
