//! Full multiplication table of `QH*(LG(n, 2n))` over `D_n × D_n`.

use std::fmt::Write as _;

use lgquantum::partition::{all_strict, Partition};
use lgquantum::quantum::{qprod, Engine, QuantumClass};
use rayon::prelude::*;
use serde::Serialize;

use crate::cache::Products;

#[derive(Serialize)]
struct Cell<'a> {
    lambda: String,
    mu: String,
    product: &'a QuantumClass,
}

#[derive(Serialize)]
struct Table<'a> {
    n: usize,
    engine: &'static str,
    basis: Vec<String>,
    products: Vec<Cell<'a>>,
}

pub struct Computed {
    pub cells: Vec<((Partition, Partition), QuantumClass)>,
    pub fresh: usize,
}

/// Fills every cell, taking what `known` already has and computing the rest
/// on `workers` threads. Cells come back in basis order.
pub fn compute(
    n: usize,
    engine: Engine,
    workers: usize,
    known: &Products,
) -> lgquantum::Result<Computed> {
    let basis = all_strict(n);
    let keys: Vec<(Partition, Partition)> = basis
        .iter()
        .flat_map(|a| basis.iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    let missing: Vec<&(Partition, Partition)> =
        keys.iter().filter(|k| !known.contains_key(*k)).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool");
    let fresh: Vec<QuantumClass> = pool.install(|| {
        missing
            .par_iter()
            .map(|(a, b)| qprod(a, b, n, engine))
            .collect::<lgquantum::Result<_>>()
    })?;
    let mut computed: Products = missing.into_iter().cloned().zip(fresh).collect();
    let count = computed.len();
    let cells = keys
        .into_iter()
        .map(|k| {
            let v = computed.remove(&k).unwrap_or_else(|| known[&k].clone());
            (k, v)
        })
        .collect();
    Ok(Computed {
        cells,
        fresh: count,
    })
}

pub fn render_json(
    n: usize,
    engine: Engine,
    cells: &[((Partition, Partition), QuantumClass)],
) -> String {
    let table = Table {
        n,
        engine: engine.name(),
        basis: all_strict(n).iter().map(Partition::key).collect(),
        products: cells
            .iter()
            .map(|((a, b), p)| Cell {
                lambda: a.key(),
                mu: b.key(),
                product: p,
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&table).expect("table serializes");
    s.push('\n');
    s
}

pub fn render_tsv(cells: &[((Partition, Partition), QuantumClass)]) -> String {
    let mut s = String::from("lambda\tmu\tproduct\n");
    for ((a, b), p) in cells {
        writeln!(s, "{}\t{}\t{p}", a.key(), b.key()).expect("write to string");
    }
    s
}
