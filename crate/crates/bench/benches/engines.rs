//! The three quantum engines on the full table `D_n × D_n`, from cold memo
//! tables.

use criterion::{criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion};
use lgquantum::clear_memos;
use lgquantum::partition::Partition;
use lgquantum::quantum::{qprod, Engine};
use lgquantum_bench::strict_pairs;

fn full_table(c: &mut Criterion) {
    let mut g = c.benchmark_group("table");
    g.sample_size(10);
    for n in [3, 4] {
        let pairs = strict_pairs(n);
        for engine in Engine::ALL {
            g.bench_with_input(BenchmarkId::new(engine.name(), n), &pairs, |b, pairs| {
                b.iter_batched(
                    clear_memos,
                    |_| {
                        pairs
                            .iter()
                            .map(|(l, m)| qprod(l, m, n, engine).unwrap())
                            .collect::<Vec<_>>()
                    },
                    BatchSize::PerIteration,
                )
            });
        }
    }
    g.finish();
}

fn rho_square(c: &mut Criterion) {
    let mut g = c.benchmark_group("rho_squared");
    g.sample_size(10);
    for n in [4, 5] {
        let rho = Partition::rho(n);
        for engine in Engine::ALL {
            g.bench_with_input(BenchmarkId::new(engine.name(), n), &rho, |b, rho| {
                b.iter_batched(
                    clear_memos,
                    |_| qprod(rho, rho, n, engine).unwrap(),
                    BatchSize::PerIteration,
                )
            });
        }
    }
    g.finish();
}

criterion_group!(benches, full_table, rho_square);
criterion_main!(benches);
