//! Persistent product cache: one JSON-lines file per `(n, engine)`.
//!
//! Line one is a header; every further line is a record. Records are kept
//! sorted by `(|λ|, |μ|)` and then reverse-lexicographically so that rewrites
//! diff cleanly. Any header mismatch or unreadable line discards the whole
//! file: a stale cache is recomputed, never misread.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use lgquantum::partition::Partition;
use lgquantum::quantum::{Engine, QuantumClass};
use lgquantum::Int;
use serde::{Deserialize, Serialize};

pub const FORMAT: &str = "lgquantum-products";
pub const VERSION: u32 = 1;

#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Header {
    format: String,
    version: u32,
    n: usize,
    engine: String,
}

#[derive(Serialize, Deserialize)]
struct Record {
    lambda: String,
    mu: String,
    product: BTreeMap<String, Int>,
}

pub type Products = BTreeMap<(Partition, Partition), QuantumClass>;

/// `SCHUBERT_CACHE_DIR`, else the user cache directory.
pub fn default_dir() -> Option<PathBuf> {
    if let Some(dir) = std::env::var_os("SCHUBERT_CACHE_DIR") {
        return Some(PathBuf::from(dir));
    }
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME") {
        return Some(PathBuf::from(dir).join("lgquantum"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("lgquantum"))
}

pub struct Cache {
    path: PathBuf,
    n: usize,
    engine: Engine,
}

impl Cache {
    pub fn new(dir: &Path, n: usize, engine: Engine) -> Self {
        Cache {
            path: dir.join(format!("products-n{n}-{engine}.jsonl")),
            n,
            engine,
        }
    }

    fn header(&self) -> Header {
        Header {
            format: FORMAT.into(),
            version: VERSION,
            n: self.n,
            engine: self.engine.name().into(),
        }
    }

    /// Cached products, or an empty map when the file is missing, stale or
    /// malformed.
    pub fn load(&self) -> Products {
        let Ok(file) = fs::File::open(&self.path) else {
            return Products::new();
        };
        match self.parse(BufReader::new(file)) {
            Some(p) => p,
            None => {
                eprintln!(
                    "ignoring unreadable or outdated cache {}",
                    self.path.display()
                );
                Products::new()
            }
        }
    }

    fn parse(&self, reader: impl BufRead) -> Option<Products> {
        let mut lines = reader.lines();
        let header: Header = serde_json::from_str(&lines.next()?.ok()?).ok()?;
        if header != self.header() {
            return None;
        }
        let mut out = Products::new();
        for line in lines {
            let rec: Record = serde_json::from_str(&line.ok()?).ok()?;
            let lambda: Partition = rec.lambda.parse().ok()?;
            let mu: Partition = rec.mu.parse().ok()?;
            if !lambda.in_d(self.n) || !mu.in_d(self.n) {
                return None;
            }
            let mut class = QuantumClass::zero(self.n);
            for (key, c) in rec.product {
                let (p, d) = key.split_once('|')?;
                class.add(p.parse().ok()?, d.parse().ok()?, c);
            }
            out.insert((lambda, mu), class);
        }
        Some(out)
    }

    /// Rewrites the whole file through a temporary sibling and a rename.
    pub fn store(&self, products: &Products) -> io::Result<()> {
        let dir = self.path.parent().unwrap_or(Path::new("."));
        fs::create_dir_all(dir)?;
        let mut entries: Vec<_> = products.iter().collect();
        entries.sort_by(|((a, b), _), ((c, d), _)| {
            (a.weight(), b.weight())
                .cmp(&(c.weight(), d.weight()))
                .then_with(|| (c, d).cmp(&(a, b)))
        });
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        {
            let mut w = io::BufWriter::new(tmp.as_file_mut());
            serde_json::to_writer(&mut w, &self.header())?;
            writeln!(w)?;
            for ((lambda, mu), class) in entries {
                let rec = Record {
                    lambda: lambda.key(),
                    mu: mu.key(),
                    product: class
                        .iter()
                        .map(|(p, d, c)| (format!("{}|{d}", p.key()), c))
                        .collect(),
                };
                serde_json::to_writer(&mut w, &rec)?;
                writeln!(w)?;
            }
            w.flush()?;
        }
        tmp.persist(&self.path).map_err(|e| e.error)?;
        Ok(())
    }
}
