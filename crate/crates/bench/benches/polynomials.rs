//! Cold-start cost of the polynomial layer: Pfaffian construction, basis
//! expansion and divided differences. Memo tables are emptied before every
//! iteration.

use criterion::{criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion};
use lgquantum::clear_memos;
use lgquantum::partition::{part, Partition};
use lgquantum::qtilde::{qtilde_of, structure_constants, structure_constants_in};
use lgquantum::symplectic::c_prime;

fn construction(c: &mut Criterion) {
    let mut g = c.benchmark_group("qtilde");
    for n in [3, 4, 5] {
        let rho = Partition::rho(n);
        g.bench_with_input(BenchmarkId::new("rho", n), &rho, |b, rho| {
            b.iter_batched(
                clear_memos,
                |_| qtilde_of(rho, rho.weight()),
                BatchSize::PerIteration,
            )
        });
    }
    g.finish();
}

fn constants(c: &mut Criterion) {
    let mut g = c.benchmark_group("structure_constants");
    let r = part(&[3, 2, 1]);
    g.bench_function("rho3_squared_stable", |b| {
        b.iter_batched(
            clear_memos,
            |_| structure_constants(&r, &r).unwrap(),
            BatchSize::PerIteration,
        )
    });
    g.bench_function("rho3_squared_four_vars", |b| {
        b.iter_batched(
            clear_memos,
            |_| structure_constants_in(&r, &r, 4).unwrap(),
            BatchSize::PerIteration,
        )
    });
    g.finish();
}

fn divided_differences(c: &mut Criterion) {
    let mut g = c.benchmark_group("c_prime");
    for (lambda, m) in [
        (part(&[3, 1]), 3),
        (part(&[4, 2, 1]), 4),
        (part(&[5, 3, 1]), 5),
    ] {
        g.bench_with_input(
            BenchmarkId::new(lambda.key(), m),
            &(lambda, m),
            |b, (l, m)| {
                b.iter_batched(
                    clear_memos,
                    |_| c_prime(l, *m).unwrap(),
                    BatchSize::PerIteration,
                )
            },
        );
    }
    g.finish();
}

criterion_group!(benches, construction, constants, divided_differences);
criterion_main!(benches);
