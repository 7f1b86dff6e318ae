use std::fmt;
use std::time::Instant;

use serde::Serialize;

use crate::homalg::{is_projective, is_self_injective, stable_end_dim};
use crate::linalg::Matrix;
use crate::module::{hom_dim, Representation};

use super::{extend_unchecked, first_order_lifts, DeformError, Extension, Linearization, TruncatedLift};

pub const DEFAULT_MAX_ORDER: usize = 8;
/// Maximal number of lifts visited by one classification.
pub const BRANCH_CAP: usize = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    /// `R = k`: no nontrivial first-order deformations.
    Trivial,
    /// `R = k[[t]]/(t^m)`, certified.
    Truncated { m: usize },
    /// A lift with nontrivial first-order part exists over `k[t]/(t^n)`.
    SmoothToOrder { n: usize },
    /// `dim Ext¹(V,V) ≥ 2`; the ring is not determined here.
    TangentDimAtLeast2 { d: usize },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Trivial => write!(f, "k"),
            Verdict::Truncated { m } => write!(f, "k[t]/(t^{m})"),
            Verdict::SmoothToOrder { n } => write!(f, "k[[t]] (certified to order {n})"),
            Verdict::TangentDimAtLeast2 { d } => write!(f, "tangent dimension {d}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VersalReport {
    pub module: String,
    /// Characteristic of the ground field.
    pub field: u32,
    pub tangent_dim: usize,
    pub verdict: Verdict,
    /// Certification order `N`.
    pub order: usize,
    /// Whether the versal ring is universal; see [`is_universal`].
    pub universal: bool,
    pub branches_explored: usize,
    pub elapsed_ms: u128,
}

impl VersalReport {
    pub fn labelled(mut self, module: impl Into<String>) -> Self {
        self.module = module.into();
        self
    }

    /// Equality of everything except labels and timing.
    pub fn same_invariants(&self, other: &VersalReport) -> bool {
        self.field == other.field
            && self.tangent_dim == other.tangent_dim
            && self.verdict == other.verdict
            && self.order == other.order
            && self.universal == other.universal
    }
}

/// `R = k` always pro-represents; otherwise `End(V) = k`, or `V` has
/// stable endomorphism ring `k` over a self-injective algebra.
pub fn is_universal(v: &Representation, tangent_dim: usize) -> bool {
    if tangent_dim == 0 {
        return true;
    }
    if hom_dim(v, v) == 1 {
        return true;
    }
    !is_projective(v) && is_self_injective(v.algebra()) && stable_end_dim(v) == 1
}

pub fn versal_classify(v: &Representation, max_order: usize) -> Result<VersalReport, DeformError> {
    if max_order < 3 {
        return Err(DeformError::OrderTooSmall);
    }
    let start = Instant::now();
    let lin = Linearization::new(v);
    let d = lin.tangent_dim();
    let mut branches = 0;
    let verdict = match d {
        0 => Verdict::Trivial,
        1 => {
            let lift = first_order_lifts(v)
                .into_iter()
                .next()
                .expect("one-dimensional tangent space has a cocycle");
            search(&lift, &lin, max_order, &mut branches)?
        }
        d => Verdict::TangentDimAtLeast2 { d },
    };
    Ok(VersalReport {
        module: String::new(),
        field: v.field().p(),
        tangent_dim: d,
        verdict,
        order: max_order,
        universal: is_universal(v, d),
        branches_explored: branches,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Depth-first over coset representatives modulo the gauge subspace.
fn search(
    first: &TruncatedLift,
    lin: &Linearization,
    max_order: usize,
    branches: &mut usize,
) -> Result<Verdict, DeformError> {
    let f = lin.field;
    let mut best = first.order;
    let mut stack = vec![first.clone()];
    while let Some(lift) = stack.pop() {
        *branches += 1;
        if *branches > BRANCH_CAP {
            return Err(DeformError::BudgetExceeded { explored: *branches - 1 });
        }
        best = best.max(lift.order);
        if lift.order >= max_order {
            return Ok(Verdict::SmoothToOrder { n: max_order });
        }
        let Extension::Family { particular, free, .. } = extend_unchecked(&lift, lin) else {
            continue;
        };
        let k = free.len();
        let p = f.p() as usize;
        let total = p.checked_pow(k as u32).unwrap_or(usize::MAX);
        if total > BRANCH_CAP {
            return Err(DeformError::BudgetExceeded { explored: *branches });
        }
        for idx in 0..total {
            let mut top: Vec<Matrix> = particular.clone();
            let mut rest = idx;
            for z in &free {
                let c = (rest % p) as u32;
                rest /= p;
                if c != 0 {
                    for (y, zz) in top.iter_mut().zip(z) {
                        y.add_assign_scaled(zz, c);
                    }
                }
            }
            stack.push(lift.with_top(&top));
        }
    }
    Ok(Verdict::Truncated { m: best })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::d3r;

    #[test]
    fn projective_is_trivial() {
        let a = d3r();
        let r = versal_classify(&Representation::projective(&a, 0), 8).unwrap();
        assert_eq!(r.verdict, Verdict::Trivial);
        assert!(r.universal);
    }

    #[test]
    fn order_below_three_rejected() {
        let a = d3r();
        let s = Representation::simple(&a, 0);
        assert!(matches!(versal_classify(&s, 2), Err(DeformError::OrderTooSmall)));
    }

    #[test]
    fn simple_at_loop_with_square_relation() {
        // S_1 over D3R^{1,2,2,2}: ρ² = βλδ acts by zero on S_1, so t² is forced
        let a = d3r();
        let s = Representation::simple(&a, 1);
        let r = versal_classify(&s, 8).unwrap();
        assert_eq!(r.tangent_dim, 1);
        assert_eq!(r.verdict, Verdict::Truncated { m: 2 });
        assert!(r.universal);
    }

    #[test]
    fn uniserial_table() {
        let a = d3r();
        for (w, expect) in [
            ("@0", Verdict::Truncated { m: 2 }),
            ("@2", Verdict::Truncated { m: 2 }),
            ("beta", Verdict::Trivial),
            ("lambda", Verdict::Trivial),
            ("delta*beta", Verdict::Trivial),
            ("beta*lambda", Verdict::Trivial),
        ] {
            let v = Representation::string_module(&a, w).unwrap();
            assert_eq!(versal_classify(&v, 8).unwrap().verdict, expect, "{w}");
        }
    }
}
