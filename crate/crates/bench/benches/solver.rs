use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use superbider_core::catalog::{self, adjoint_module, density_f, virasoro};
use superbider_core::engine::{solve_bider, BiderQuery, ParityChoice, Symmetry};
use superbider_core::linalg::{nullspace_with, PivotRule};
use superbider_core::{HalfInt, Scalar, SparseMatrix, Window};

fn win(n: i64, k: i64) -> Window {
    Window::with_default_interior(HalfInt::from_int(n), HalfInt::from_int(k)).unwrap()
}

/// About 15% fill with small integer entries.
fn random_matrix(rng: &mut StdRng, rows: usize, cols: usize) -> SparseMatrix {
    let mut m = SparseMatrix::new(cols);
    for _ in 0..rows {
        let row: Vec<(usize, Scalar)> = (0..cols)
            .filter_map(|c| rng.gen_bool(0.15).then(|| (c, rng.gen_range(-4..=4))))
            .filter(|(_, x)| *x != 0)
            .map(|(c, x)| (c, Scalar::from_int(x)))
            .collect();
        m.push_row(row);
    }
    m
}

fn pivot_rules(c: &mut Criterion) {
    let rules = [("sparsest", PivotRule::Sparsest), ("leading", PivotRule::Leading)];

    let m = density_f(&virasoro(), Scalar::zero());
    let space = solve_bider(&BiderQuery::new(&m, ParityChoice::Even, Symmetry::Symmetric, win(6, 2))).unwrap();
    let block = space.blocks().iter().max_by_key(|b| b.matrix.nnz()).unwrap().matrix.clone();
    let mut g = c.benchmark_group("engine block");
    g.sample_size(20);
    for (name, rule) in rules {
        g.bench_with_input(BenchmarkId::from_parameter(name), &block, |b, a| b.iter(|| nullspace_with(a, rule)));
    }
    g.finish();

    let mut rng = StdRng::seed_from_u64(7);
    let mats: Vec<SparseMatrix> = (0..4).map(|_| random_matrix(&mut rng, 60, 80)).collect();
    let mut g = c.benchmark_group("random 60x80");
    g.sample_size(20);
    for (name, rule) in rules {
        g.bench_with_input(BenchmarkId::from_parameter(name), &mats, |b, ms| {
            b.iter(|| ms.iter().map(|a| nullspace_with(a, rule).dim()).sum::<usize>())
        });
    }
    g.finish();
}

fn solves(c: &mut Criterion) {
    let mut g = c.benchmark_group("solve_bider");
    g.sample_size(10);
    let hv = adjoint_module(&catalog::hv_super());
    g.bench_function("hv-super symmetric N=5 K=2", |b| {
        b.iter(|| solve_bider(&BiderQuery::new(&hv, ParityChoice::Both, Symmetry::Symmetric, win(5, 2))).unwrap())
    });
    let f = density_f(&virasoro(), Scalar::from_int(-1));
    g.bench_function("F_-1 unrestricted N=6 K=2", |b| {
        b.iter(|| solve_bider(&BiderQuery::new(&f, ParityChoice::Even, Symmetry::Unrestricted, win(6, 2))).unwrap())
    });
    g.finish();
}

criterion_group!(benches, pivot_rules, solves);
criterion_main!(benches);
