use crate::module::{projective_cover, ModuleMap, Representation};

use super::{cone, BoundedComplex, ChainMap};

/// A bounded-above complex of projectives `P`, brutally truncated below,
/// with a chain map `π: P → C` inducing isomorphisms `Hⁿ(P) ≅ Hⁿ(C)` for
/// `n ≥ certified_from`.
#[derive(Clone, Debug)]
pub struct ProjectiveResolution {
    pub complex: BoundedComplex,
    pub target: BoundedComplex,
    pub qis: ChainMap,
    /// Summand vertices of each `Pⁿ`, lowest degree first.
    pub generators: Vec<Vec<usize>>,
    pub certified_from: i64,
}

impl ProjectiveResolution {
    pub fn generators_at(&self, n: i64) -> &[usize] {
        let k = n - self.complex.low();
        if k < 0 {
            &[]
        } else {
            self.generators.get(k as usize).map_or(&[], Vec::as_slice)
        }
    }
}

fn split_rows(m: &ModuleMap, top: &Representation) -> (ModuleMap, ModuleMap) {
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for (c, &t) in m.components.iter().zip(top.dims()) {
        upper.push(c.block(0, 0, t, c.cols()));
        lower.push(c.block(t, 0, c.rows() - t, c.cols()));
    }
    (ModuleMap { components: upper }, ModuleMap { components: lower })
}

/// Builds `Pⁿ` from the top down as the projective cover of the pullback
/// `Qⁿ = {(p, c) ∈ Pⁿ⁺¹ ⊕ Cⁿ : d p = 0, π p = d c}`.
pub fn resolve_complex(c: &BoundedComplex, depth: usize) -> ProjectiveResolution {
    assert!(depth >= 2, "resolution depth must be at least 2");
    let alg = c.algebra();
    let low = c.low() - depth as i64;
    let mut p1 = Representation::zero(alg);
    let mut p2 = Representation::zero(alg);
    let mut d1 = ModuleMap::zero(&p1, &p2);
    let mut pi1 = ModuleMap::zero(&p1, &c.term(c.high() + 1));
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    let mut pis = Vec::new();
    let mut gens = Vec::new();
    for n in (low..=c.high()).rev() {
        let cn = c.term(n);
        let source = p1.direct_sum(&cn).expect("same algebra");
        let from_p = d1.stack(&pi1);
        let from_c = ModuleMap::zero(&cn, &p2).stack(&c.diff(n).neg());
        let psi = from_p.join(&from_c);
        let q = psi.kernel(&source);
        let cover = projective_cover(&q.module);
        let to_sum = cover.map.then(&q.inclusion);
        let (d, pi) = split_rows(&to_sum, &p1);
        gens.push(cover.summand_vertices());
        terms.push(cover.projective.clone());
        diffs.push(d.clone());
        pis.push(pi.clone());
        p2 = std::mem::replace(&mut p1, cover.projective);
        d1 = d;
        pi1 = pi;
    }
    terms.reverse();
    gens.reverse();
    pis.reverse();
    // diffs[k] maps P^{high−k} → P^{high−k+1}; the first one leaves the range
    diffs.reverse();
    diffs.pop();
    let complex = BoundedComplex::new(alg, low, terms, diffs).expect("resolution is a complex");
    let qis = ChainMap { low, components: pis };
    debug_assert!(qis.check(&complex, c).is_ok());
    let k = cone(&qis, &complex, c).expect("π is a chain map");
    let mut certified_from = low + 2;
    for n in (low + 1..=k.high()).rev() {
        if k.cohomology_dim(n) != 0 {
            certified_from = n + 2;
            break;
        }
    }
    ProjectiveResolution {
        complex,
        target: c.clone(),
        qis,
        generators: gens,
        certified_from,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::Resolution;
    use crate::testutil::d3r;

    #[test]
    fn projective_resolves_to_itself() {
        let a = d3r();
        let p = Representation::projective(&a, 1);
        let r = resolve_complex(&BoundedComplex::concentrated(&p, 0), 3);
        assert_eq!(r.complex.term(0), p);
        for n in -3..0 {
            assert!(r.complex.term(n).is_zero());
        }
        assert_eq!(r.certified_from, -1);
    }

    #[test]
    fn simple_matches_minimal_resolution() {
        let a = d3r();
        let s = Representation::simple(&a, 0);
        let r = resolve_complex(&BoundedComplex::concentrated(&s, 0), 3);
        let res = Resolution::new(&s, 4);
        for k in 0..=3 {
            assert_eq!(r.complex.term(-k).dims(), res.projective(k as usize).dims(), "P^{}", -k);
        }
        assert_eq!(r.complex.cohomology_dim(0), 1);
        assert_eq!(r.complex.cohomology_dim(-1), 0);
    }

    #[test]
    fn acyclic_complex_resolves_to_acyclic_range() {
        let a = d3r();
        let m = Representation::string_module(&a, "beta").unwrap();
        let c = BoundedComplex::two_term(0, &m, &m, ModuleMap::identity(&m)).unwrap();
        let r = resolve_complex(&c, 3);
        for n in r.certified_from..=r.complex.high() {
            assert_eq!(r.complex.cohomology_dim(n), 0);
        }
    }
}
