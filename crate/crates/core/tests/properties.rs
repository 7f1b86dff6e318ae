use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use quiverdef::bimodule::{bimodule_syzygy, tensor_bimodule_map, tensor_bimodule_module, tensor_dim_via_coequalizer};
use quiverdef::complex::{cone, derived_ext_dim, required_depth, resolve_complex, ChainMap};
use quiverdef::corpus::{build, grid, max_len, presentation, string_modules, Family, Params};
use quiverdef::deform::{versal_classify, DEFAULT_MAX_ORDER};
use quiverdef::homalg::{ext_dim, projective_cover, stable_end_dim, stable_hom_dim, strip_projectives, syzygy};
use quiverdef::module::{hom_dim, hom_space, is_isomorphic};
use quiverdef::{Algebra, Bimodule, BoundedComplex, Field, Matrix, ModuleMap, Representation, Verdict};

struct Pool {
    alg: Arc<Algebra>,
    modules: Vec<Representation>,
    syzygy: Bimodule,
}

fn pool(p: u32) -> &'static Pool {
    static GF2: OnceLock<Pool> = OnceLock::new();
    static GF3: OnceLock<Pool> = OnceLock::new();
    let cell = if p == 2 { &GF2 } else { &GF3 };
    cell.get_or_init(|| {
        let alg = build(Family::D3R, &Params(vec![1, 2, 2, 2]), Field::new(p).unwrap()).unwrap();
        let modules = string_modules(&alg, 4).into_iter().map(|(_, m)| m).collect();
        let syzygy = bimodule_syzygy(&alg).unwrap();
        Pool { alg, modules, syzygy }
    })
}

fn module_index() -> impl Strategy<Value = (u32, usize)> {
    (prop::sample::select(vec![2u32, 3]), any::<prop::sample::Index>())
        .prop_map(|(p, i)| (p, i.index(pool(p).modules.len())))
}

/// A random element of `Hom(a, b)` with coefficients drawn from `seed`.
fn random_hom(a: &Representation, b: &Representation, seed: u64) -> ModuleMap {
    let p = a.field().p();
    let mut acc = ModuleMap::zero(a, b);
    for (k, m) in hom_space(a, b).maps.iter().enumerate() {
        let c = ((seed >> (3 * k % 60)) as u32 + k as u32) % p;
        acc = acc.add(&m.scale(c));
    }
    acc
}

fn random_invertible(f: Field, n: usize, seed: u64) -> Matrix {
    let mut s = seed;
    loop {
        let data = (0..n * n)
            .map(|_| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((s >> 33) as u32) % f.p()
            })
            .collect();
        let m = Matrix::from_vec(f, n, n, data);
        if m.rank() == n {
            return m;
        }
    }
}

fn same_verdict(a: &Representation, b: &Representation) -> bool {
    let (x, y) = (versal_classify(a, DEFAULT_MAX_ORDER).unwrap(), versal_classify(b, DEFAULT_MAX_ORDER).unwrap());
    x.same_invariants(&y)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn corpus_algebras_are_associative(f in prop::sample::select(Family::ALL.to_vec()), i in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let g = grid(f, 2);
        let params = &g[i.index(g.len())];
        let a = build(f, params, Field::gf2()).unwrap();
        prop_assert_eq!(a.check_associativity(40, 500, seed), None);
        let n = a.num_vertices();
        for x in 0..n {
            for y in 0..n {
                let prod = a.product(a.idempotent(x), a.idempotent(y));
                let want = if x == y { vec![(a.idempotent(x), 1)] } else { vec![] };
                prop_assert_eq!(prod, want);
            }
        }
        prop_assert_eq!(a.dim(), n + a.radical_basis().count());
    }

    #[test]
    fn larger_max_len_keeps_the_basis(f in prop::sample::select(Family::ALL.to_vec()), i in any::<prop::sample::Index>()) {
        let g = grid(f, 3);
        let params = &g[i.index(g.len())];
        let pres = presentation(f, params).unwrap();
        let a = Algebra::build(&pres, Field::gf2(), max_len(params)).unwrap();
        let b = Algebra::build(&pres, Field::gf2(), max_len(params) + 8).unwrap();
        prop_assert_eq!(a.dim(), b.dim());
        let la: Vec<String> = (0..a.dim()).map(|i| a.basis_label(i)).collect();
        let lb: Vec<String> = (0..b.dim()).map(|i| b.basis_label(i)).collect();
        prop_assert_eq!(la, lb);
    }

    #[test]
    fn hom_from_projective_reads_dimensions((p, i) in module_index()) {
        let pl = pool(p);
        let m = &pl.modules[i];
        for v in 0..pl.alg.num_vertices() {
            prop_assert_eq!(hom_dim(&Representation::projective(&pl.alg, v), m), m.dims()[v]);
        }
    }

    #[test]
    fn composites_are_module_maps((p, i) in module_index(), j in any::<prop::sample::Index>(), k in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let pl = pool(p);
        let (a, b, c) = (&pl.modules[i], &pl.modules[j.index(pl.modules.len())], &pl.modules[k.index(pl.modules.len())]);
        let f = random_hom(a, b, seed);
        let g = random_hom(b, c, seed.rotate_left(17));
        prop_assert!(f.then(&g).check(a, c).is_ok());
    }

    #[test]
    fn isomorphism_is_reflexive((p, i) in module_index(), seed in any::<u64>()) {
        let m = &pool(p).modules[i];
        let changes: Vec<Matrix> = m.dims().iter().enumerate().map(|(v, &d)| random_invertible(m.field(), d, seed ^ v as u64)).collect();
        let n = m.conjugate(&changes);
        let yes = is_isomorphic(m, &n, seed);
        prop_assert!(yes.is_yes());
    }

    #[test]
    fn syzygy_dimension_ledger((p, i) in module_index()) {
        let m = &pool(p).modules[i];
        let pres = projective_cover(m);
        prop_assert_eq!(pres.syzygy.dim(), pres.cover.projective.dim() - m.dim());
    }

    #[test]
    fn ext_one_is_stable_hom_from_syzygy((p, i) in module_index(), j in any::<prop::sample::Index>()) {
        let pl = pool(p);
        let (m, n) = (&pl.modules[i], &pl.modules[j.index(pl.modules.len())]);
        prop_assert_eq!(ext_dim(m, n, 1), stable_hom_dim(&syzygy(m, 1), n));
    }

    #[test]
    fn stripping_projectives((p, i) in module_index(), v in 0usize..3) {
        let pl = pool(p);
        let m = pl.modules[i].direct_sum(&Representation::projective(&pl.alg, v)).unwrap();
        let s = strip_projectives(&m);
        prop_assert!(strip_projectives(&s.core).projectives.is_empty());
        let mut whole = s.core.clone();
        for &u in &s.projectives {
            whole = whole.direct_sum(&Representation::projective(&pl.alg, u)).unwrap();
        }
        prop_assert!(is_isomorphic(&whole, &m, 1).is_yes());
    }

    #[test]
    fn cone_euler_characteristic((p, i) in module_index(), j in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let pl = pool(p);
        let (a, b) = (&pl.modules[i], &pl.modules[j.index(pl.modules.len())]);
        let ca = BoundedComplex::concentrated(a, 0).direct_sum(&BoundedComplex::concentrated(b, 1));
        let cb = BoundedComplex::concentrated(b, 0);
        let f = ChainMap { low: 0, components: vec![random_hom(a, b, seed)] };
        let c = cone(&f, &ca, &cb).unwrap();
        prop_assert_eq!(c.euler_characteristic(), cb.euler_characteristic() - ca.euler_characteristic());
    }

    #[test]
    fn derived_ext_sees_through_resolutions((p, i) in module_index(), j in any::<prop::sample::Index>(), deg in 0i64..2) {
        let pl = pool(p);
        let (a, b) = (&pl.modules[i], &pl.modules[j.index(pl.modules.len())]);
        let v = BoundedComplex::concentrated(a, 0);
        let w = BoundedComplex::concentrated(b, 0);
        let res = resolve_complex(&v, required_depth(&v, &w, deg) + 2);
        prop_assert_eq!(derived_ext_dim(&res.complex, &w, deg), derived_ext_dim(&v, &w, deg));
    }

    #[test]
    fn versal_verdict_shape((p, i) in module_index()) {
        let m = &pool(p).modules[i];
        let r = versal_classify(m, DEFAULT_MAX_ORDER).unwrap();
        match r.verdict {
            Verdict::Trivial => prop_assert_eq!(r.tangent_dim, 0),
            Verdict::Truncated { m } => {
                prop_assert_eq!(r.tangent_dim, 1);
                prop_assert!((2..=DEFAULT_MAX_ORDER).contains(&m));
            }
            Verdict::SmoothToOrder { n } => {
                prop_assert_eq!(r.tangent_dim, 1);
                prop_assert_eq!(n, DEFAULT_MAX_ORDER);
            }
            Verdict::TangentDimAtLeast2 { d } => prop_assert!(d >= 2 && d == r.tangent_dim),
        }
        prop_assert_eq!(r.tangent_dim, ext_dim(m, m, 1));
    }

    #[test]
    fn versal_is_gauge_invariant((p, i) in module_index(), seed in any::<u64>()) {
        let m = &pool(p).modules[i];
        let changes: Vec<Matrix> = m.dims().iter().enumerate().map(|(v, &d)| random_invertible(m.field(), d, seed ^ (v as u64) << 8)).collect();
        prop_assert!(same_verdict(m, &m.conjugate(&changes)));
    }

    #[test]
    fn versal_ignores_projective_summands((p, i) in module_index(), v in 0usize..3) {
        let pl = pool(p);
        let m = &pl.modules[i];
        prop_assert!(same_verdict(m, &m.direct_sum(&Representation::projective(&pl.alg, v)).unwrap()));
    }

    #[test]
    fn versal_commutes_with_syzygy((p, i) in module_index()) {
        let m = &pool(p).modules[i];
        let om = syzygy(m, 1);
        prop_assume!(stable_end_dim(m) == 1 && stable_end_dim(&om) == 1);
        let (x, y) = (versal_classify(m, DEFAULT_MAX_ORDER).unwrap(), versal_classify(&om, DEFAULT_MAX_ORDER).unwrap());
        prop_assert_eq!(x.verdict, y.verdict);
    }

    #[test]
    fn tensor_is_functorial((p, i) in module_index(), j in any::<prop::sample::Index>(), k in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let pl = pool(p);
        let x = &pl.syzygy;
        let (a, b, c) = (&pl.modules[i], &pl.modules[j.index(pl.modules.len())], &pl.modules[k.index(pl.modules.len())]);
        let f = random_hom(a, b, seed);
        let f2 = random_hom(a, b, !seed);
        let g = random_hom(b, c, seed.rotate_left(29));
        let t = |phi: &ModuleMap, s: &Representation, u: &Representation| tensor_bimodule_map(x, phi, s, u).unwrap();
        prop_assert_eq!(t(&f.then(&g), a, c), t(&f, a, b).then(&t(&g, b, c)));
        prop_assert_eq!(t(&f.add(&f2), a, b), t(&f, a, b).add(&t(&f2, a, b)));
        prop_assert_eq!(t(&ModuleMap::identity(a), a, a), ModuleMap::identity(&tensor_bimodule_module(x, a).unwrap()));
    }

    #[test]
    fn tensor_dimension_two_ways((p, i) in module_index()) {
        let pl = pool(p);
        let m = &pl.modules[i];
        prop_assert_eq!(tensor_dim_via_coequalizer(&pl.syzygy, m).unwrap(), tensor_bimodule_module(&pl.syzygy, m).unwrap().dim());
    }
}
