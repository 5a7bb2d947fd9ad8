mod support;

use proptest::prelude::*;
use superbider_core::catalog::{self, density_f, density_fsuper, virasoro};
use superbider_core::engine::{decompose, solve_bider, BiderQuery, ParityChoice, Symmetry};
use superbider_core::linalg::{nullspace, nullspace_with, rank, PivotRule};
use superbider_core::{AlgebraSpec, Element, HalfInt, Parity, Scalar, SparseMatrix, Window};

fn svir_gen(alg: &AlgebraSpec, odd: bool, i: i64) -> superbider_core::GenId {
    if odd {
        alg.gen("G", HalfInt::from_int(i))
    } else {
        alg.gen("L", i)
    }
}

fn element(alg: &AlgebraSpec, odd: bool, terms: &[(i64, i64)]) -> Element {
    let t: Vec<_> = terms.iter().map(|&(i, c)| (svir_gen(alg, odd, i), Scalar::from_int(c))).collect();
    Element::from_terms(t, if odd { Parity::Odd } else { Parity::Even })
}

fn terms() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-6i64..=6, -5i64..=5), 1..5)
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (any::<i64>(), 1i64..=i64::MAX).prop_map(|(n, d)| Scalar::frac(n, d))
}

fn small_scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Scalar::frac(n, d))
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Vec<Vec<Scalar>>> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(
            prop::collection::vec(prop_oneof![6 => Just(0i64), 1 => -3i64..=3].prop_map(Scalar::from_int), c),
            r,
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_ops_match_bigrational(a in scalar(), b in scalar()) {
        let (qa, qb) = (support::from_scalar(&a), support::from_scalar(&b));
        prop_assert_eq!(support::from_scalar(&(&a + &b)), &qa + &qb);
        prop_assert_eq!(support::from_scalar(&(&a - &b)), &qa - &qb);
        prop_assert_eq!(support::from_scalar(&(&a * &b)), &qa * &qb);
        if !b.is_zero() {
            prop_assert_eq!(support::from_scalar(&(a.clone() / &b)), &qa / &qb);
        }
        prop_assert_eq!(a.cmp(&b), qa.cmp(&qb));
    }

    #[test]
    fn bracket_is_bilinear(x in terms(), y in terms(), z in terms(), c in small_scalar(), ox: bool, oz: bool) {
        let alg = catalog::svir_ramond();
        let (x, y, z) = (element(&alg, ox, &x), element(&alg, ox, &y), element(&alg, oz, &z));
        let lhs = alg.bracket(&x.scale(&c).add_scaled(&Scalar::one(), &y), &z).unwrap();
        let rhs = alg.bracket(&x, &z).unwrap().scale(&c).add_scaled(&Scalar::one(), &alg.bracket(&y, &z).unwrap());
        prop_assert_eq!(lhs, rhs);
        let lhs = alg.bracket(&z, &x.scale(&c).add_scaled(&Scalar::one(), &y)).unwrap();
        let rhs = alg.bracket(&z, &x).unwrap().scale(&c).add_scaled(&Scalar::one(), &alg.bracket(&z, &y).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_degree_and_parity_add(name in prop::sample::select(vec!["svir-ramond", "sw22", "bms3-n1", "n2-ramond", "hv-super", "virasoro"]), i in 0usize..400, j in 0usize..400) {
        let alg = catalog::get_algebra(&superbider_core::CatalogKey::new(name)).unwrap();
        let gens = alg.generators(HalfInt::from_int(4));
        let (x, y) = (gens[i % gens.len()], gens[j % gens.len()]);
        let (px, py) = (alg.parity(x).unwrap(), alg.parity(y).unwrap());
        for (g, _) in alg.bracket_gens(x, y).unwrap() {
            prop_assert_eq!(alg.parity(g).unwrap(), px + py);
            if alg.table().is_central(g) {
                prop_assert_eq!(x.index + y.index, HalfInt::ZERO);
            } else {
                prop_assert_eq!(g.index, x.index + y.index);
            }
        }
    }

    #[test]
    fn module_action_respects_bracket(b in small_scalar(), i in -3i64..=3, j in -3i64..=3, v in -4i64..=4, super_: bool) {
        // [x,y]·w = x·(y·w) - y·(x·w) on even x, y
        let (m, alg) = if super_ {
            let s = catalog::svir_ramond();
            (density_fsuper(&s, b), s)
        } else {
            let s = virasoro();
            (density_f(&s, b), s)
        };
        let out = if super_ { "I" } else { "v" };
        let (x, y) = (alg.basis(alg.gen("L", i)).unwrap(), alg.basis(alg.gen("L", j)).unwrap());
        let w = m.element(&[(m.gen(out, v), Scalar::one())]).unwrap();
        let lhs = m.act(&alg.bracket(&x, &y).unwrap(), &w).unwrap();
        let rhs = m.act(&x, &m.act(&y, &w).unwrap()).unwrap().add_scaled(&-Scalar::one(), &m.act(&y, &m.act(&x, &w).unwrap()).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rank_nullity(rows in matrix(60, 80)) {
        let a = SparseMatrix::from_dense(&rows);
        let ns = nullspace(&a);
        prop_assert_eq!(rank(&a) + ns.dim(), a.ncols());
        for v in ns.basis() {
            prop_assert!(a.annihilates(v));
        }
        let dense: Vec<Vec<support::Q>> = rows.iter().map(|r| r.iter().map(support::from_scalar).collect()).collect();
        prop_assert_eq!(rank(&a), support::rank(dense, a.ncols()));
    }

    #[test]
    fn row_operations_preserve_nullspace(rows in matrix(12, 10), i in 0usize..12, j in 0usize..12, c in small_scalar()) {
        let a = SparseMatrix::from_dense(&rows);
        let (i, j) = (i % rows.len(), j % rows.len());
        let mut ops = rows.clone();
        if i != j {
            let src = ops[j].clone();
            for (x, y) in ops[i].iter_mut().zip(&src) {
                *x = &*x + &(&c * y);
            }
        }
        ops.swap(0, i);
        if !c.is_zero() {
            for x in ops[j].iter_mut() {
                *x = &*x * &c;
            }
        }
        let b = SparseMatrix::from_dense(&ops);
        prop_assert_eq!(nullspace(&a), nullspace(&b));
        prop_assert_eq!(nullspace_with(&a, PivotRule::Leading), nullspace_with(&a, PivotRule::Sparsest));
    }

    #[test]
    fn solved_maps_satisfy_rows(b in small_scalar(), super_: bool, sym in prop::sample::select(vec![Symmetry::Symmetric, Symmetry::Skew, Symmetry::Unrestricted])) {
        let m = if super_ { density_fsuper(&catalog::svir_ramond(), b) } else { density_f(&virasoro(), b) };
        let w = Window::new(HalfInt::from_int(3), HalfInt::from_int(1), HalfInt::from_int(1)).unwrap();
        let s = solve_bider(&BiderQuery::new(&m, ParityChoice::Both, sym, w)).unwrap();
        for v in s.raw().basis() {
            prop_assert!(s.satisfies(v));
        }
        if sym == Symmetry::Unrestricted {
            let d = decompose(&s, m.over()).unwrap();
            prop_assert_eq!(d.symmetric.dim() + d.skew.dim(), s.raw_dim());
        }
    }
}
