use super::*;
use crate::catalog::{self, adjoint_module, density_f, density_fsuper, virasoro};

fn h(n: i64) -> HalfInt {
    HalfInt::from_int(n)
}

fn win(n: i64, k: i64, ni: i64) -> Window {
    Window::new(h(n), h(k), h(ni)).unwrap()
}

fn q(n: i64, d: i64) -> Scalar {
    Scalar::frac(n, d)
}

#[test]
fn centroid_of_density_modules() {
    for (b, dim) in [(q(-1, 1), 1), (q(0, 1), 0), (q(1, 2), 0), (q(2, 1), 0)] {
        let m = density_f(&virasoro(), b.clone());
        let c = solve_centroid(&m, ParityChoice::Even, win(6, 2, 2)).unwrap();
        assert_eq!(c.interior().dim(), dim, "b={b}");
    }
}

#[test]
fn skew_vir_minus_one() {
    let m = density_f(&virasoro(), q(-1, 1));
    let s = solve_bider(&BiderQuery::new(&m, ParityChoice::Even, Symmetry::Skew, win(6, 2, 2))).unwrap();
    let i = s.interior();
    assert_eq!(i.dim(), 1);
    let mut expected = BTreeMap::new();
    for key in i.keys() {
        if key.shift == HalfInt::ZERO && key.x.family == "L" && key.y.unwrap().family == "L" {
            expected.insert(*key, (key.x.index - key.y.unwrap().index).to_scalar());
        }
    }
    assert!(i.contains(&expected).unwrap());
    for v in s.raw().basis() {
        assert!(s.satisfies(v));
    }
}

#[test]
fn symmetric_counts() {
    let vir = virasoro();
    let adj = adjoint_module(&vir);
    let s = solve_bider(&BiderQuery::new(&adj, ParityChoice::Even, Symmetry::Symmetric, win(6, 2, 2))).unwrap();
    assert_eq!(s.interior().dim(), 0);
    let m0 = density_f(&vir, q(0, 1));
    let s = solve_bider(&BiderQuery::new(&m0, ParityChoice::Even, Symmetry::Symmetric, win(6, 2, 2))).unwrap();
    assert_eq!(s.interior().dim(), 5);
}

#[test]
fn decomposition_is_direct() {
    let vir = virasoro();
    let m = density_f(&vir, q(-1, 1));
    let full =
        solve_bider(&BiderQuery::new(&m, ParityChoice::Even, Symmetry::Unrestricted, win(6, 2, 2))).unwrap();
    let d = decompose(&full, &vir).unwrap();
    for v in d.symmetric.basis().iter().chain(d.skew.basis()) {
        assert!(full.satisfies(v));
    }
    let (si, ki, fi) = (full.project_interior(&d.symmetric), full.project_interior(&d.skew), full.interior());
    assert_eq!(ki.dim(), 1);
    assert_eq!(si.dim(), 0);
    assert!(si.sum(&ki).unwrap().same_span(&fi).unwrap());
}

#[test]
fn svir_centroid() {
    let m = density_fsuper(&catalog::svir_ramond(), q(-1, 1));
    let c = solve_centroid(&m, ParityChoice::Even, win(5, 2, 1)).unwrap();
    assert_eq!(c.interior().dim(), 1);
}

#[test]
fn annihilator_of_f0() {
    let m = density_f(&virasoro(), q(0, 1));
    let z = annihilator(&m, &win(4, 1, 2)).unwrap();
    assert_eq!(z.len(), 1);
    assert_eq!(z[0].coeff(m.gen("v", 0)), Scalar::one());
    let m1 = density_f(&virasoro(), q(1, 1));
    assert!(annihilator(&m1, &win(4, 1, 2)).unwrap().is_empty());
}

#[test]
fn symmetry_rows_imply_second_identity() {
    let vir = virasoro();
    let svir = catalog::svir_ramond();
    let mods = [
        adjoint_module(&vir),
        density_f(&vir, q(0, 1)),
        density_f(&vir, q(-1, 1)),
        density_fsuper(&svir, q(1, 2)),
        adjoint_module(&catalog::hv_super()),
    ];
    for m in &mods {
        for sym in [Symmetry::Symmetric, Symmetry::Skew] {
            let query = BiderQuery::new(m, ParityChoice::Both, sym, win(4, 1, 2));
            let reduced = solve_bider(&query).unwrap();
            let full = solve_bider_full_rows(&query).unwrap();
            assert_eq!(reduced.keys(), full.keys());
            assert!(full.nrows() >= reduced.nrows());
            assert_eq!(reduced.raw(), full.raw(), "{} {sym}", m.name());
        }
    }
}
