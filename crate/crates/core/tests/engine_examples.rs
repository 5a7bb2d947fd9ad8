use std::collections::{BTreeMap, BTreeSet};

use superbider_core::catalog::{self, adjoint_module, density_f, density_fsuper, virasoro};
use superbider_core::engine::postlie::{solve_postlie, PostLieStatus};
use superbider_core::engine::{decompose, solve_bider, solve_centroid, BiderQuery, ParityChoice, Symmetry};
use superbider_core::{HalfInt, Scalar, SolutionSpace, Window};

fn h(n: i64) -> HalfInt {
    HalfInt::from_int(n)
}

fn win(n: i64, k: i64) -> Window {
    Window::with_default_interior(h(n), h(k)).unwrap()
}

fn q(n: i64, d: i64) -> Scalar {
    Scalar::frac(n, d)
}

#[test]
fn svir_centroid_is_epsilon() {
    let m = density_fsuper(&catalog::svir_ramond(), q(-1, 1));
    let c = solve_centroid(&m, ParityChoice::Both, win(5, 2)).unwrap();
    let i = c.interior();
    assert_eq!(i.dim(), 1);
    let mut eps = BTreeMap::new();
    for key in i.keys() {
        let target = match key.x.family {
            "L" => "I",
            "G" => "J",
            _ => continue,
        };
        if key.shift == HalfInt::ZERO && key.out.family == target {
            eps.insert(*key, Scalar::one());
        }
    }
    assert!(i.contains(&eps).unwrap());
}

#[test]
fn vanishing_symmetric_spaces() {
    let vir = virasoro();
    let cases = [
        (density_f(&vir, q(2, 1)), ParityChoice::Even, win(6, 2)),
        (adjoint_module(&vir), ParityChoice::Even, win(6, 2)),
        (density_fsuper(&catalog::svir_ramond(), q(1, 2)), ParityChoice::Both, win(5, 2)),
        (adjoint_module(&catalog::n2_ramond()), ParityChoice::Both, win(5, 2)),
    ];
    for (m, p, w) in cases {
        let s = solve_bider(&BiderQuery::new(&m, p, Symmetry::Symmetric, w)).unwrap();
        assert_eq!(s.interior().dim(), 0, "{}", m.name());
    }
}

#[test]
fn hv_super_family_lives_on_ll() {
    let m = adjoint_module(&catalog::hv_super());
    let s = solve_bider(&BiderQuery::new(&m, ParityChoice::Both, Symmetry::Symmetric, win(5, 2))).unwrap();
    let i = s.interior();
    assert_eq!(i.dim(), 5);
    for v in i.basis_entries() {
        let shifts: BTreeSet<HalfInt> = v.iter().map(|(k, _)| k.shift).collect();
        assert_eq!(shifts.len(), 1);
        for (k, c) in v {
            assert_eq!((k.x.family, k.y.unwrap().family, k.out.family), ("L", "L", "H"));
            assert_eq!(c, Scalar::one());
        }
    }
}

#[test]
fn decompose_f0_symmetric_part() {
    let vir = virasoro();
    let m = density_f(&vir, q(0, 1));
    let full = solve_bider(&BiderQuery::new(&m, ParityChoice::Even, Symmetry::Unrestricted, win(6, 2))).unwrap();
    let d = decompose(&full, &vir).unwrap();
    let sym = solve_bider(&BiderQuery::new(&m, ParityChoice::Even, Symmetry::Symmetric, win(6, 2))).unwrap();
    assert_eq!(full.project_interior(&d.skew).dim(), 0);
    let ds = full.project_interior(&d.symmetric);
    assert_eq!(ds.dim(), 5);
    assert!(ds.same_span(&sym.interior()).unwrap());
}

#[test]
fn decompose_zero_space() {
    let vir = virasoro();
    let m = density_f(&vir, q(2, 1));
    let full = solve_bider(&BiderQuery::new(&m, ParityChoice::Even, Symmetry::Unrestricted, win(4, 1))).unwrap();
    assert_eq!(full.raw_dim(), 0);
    let d = decompose(&full, &vir).unwrap();
    assert_eq!(d.symmetric, SolutionSpace::zero(full.keys().len()));
    assert_eq!(d.skew, SolutionSpace::zero(full.keys().len()));
}

#[test]
fn zero_bider_space_has_no_obstruction() {
    let r = solve_postlie(&catalog::svir_ramond(), win(5, 2)).unwrap();
    assert_eq!(r.obstruction.nparams, 0);
    assert!(r.obstruction.equations.is_empty());
    assert_eq!(r.status, PostLieStatus::Linear);
    assert_eq!(r.dim(), Some(0));
}

#[test]
fn hv_super_obstruction_triple() {
    let alg = catalog::hv_super();
    let r = solve_postlie(&alg, win(5, 2)).unwrap();
    assert!(r.obstruction.quadratic_vanishes());
    assert_eq!(r.dim(), Some(0));
    let triple = [alg.gen("L", 2), alg.gen("L", 1), alg.gen("L", 3)];
    let forced: BTreeSet<usize> = r
        .obstruction
        .from_triple(triple)
        .filter(|e| e.quadratic.is_empty() && e.linear.len() == 1)
        .map(|e| e.linear[0].0)
        .collect();
    assert_eq!(forced, (0..r.obstruction.nparams).collect());
}
