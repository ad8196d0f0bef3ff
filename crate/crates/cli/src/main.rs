//! `lgquantum`: products, Gromov–Witten invariants, multiplication tables and
//! verification suites for the Lagrangian Grassmannian `LG(n, 2n)`.
//!
//! Exit status is 0 on success, 1 when a verification fails or a computation
//! errors, 2 on a usage error.

mod cache;
mod table;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lgquantum::classical::classical_product;
use lgquantum::partition::Partition;
use lgquantum::quantum::{gw, qprod, vanishing_bounds, Engine, QuantumClass};
use lgquantum::verify::{run_suite, Suite, SuiteParams};
use lgquantum::Error;

#[derive(Parser)]
#[command(
    name = "lgquantum",
    version,
    about = "Exact Schubert calculus on the Lagrangian Grassmannian LG(n, 2n)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Multiply two Schubert classes.
    Product {
        #[arg(long, value_enum, default_value_t = Ring::Quantum)]
        ring: Ring,
        #[arg(long, value_parser = positive)]
        n: usize,
        /// Comma-separated parts; "" or "0" is the empty partition.
        #[arg(long, value_parser = parse_partition)]
        lambda: Partition,
        #[arg(long, value_parser = parse_partition)]
        mu: Partition,
        #[arg(long, value_enum, default_value_t = EngineArg::Constants)]
        engine: EngineArg,
        /// Print the expansion as a JSON map keyed by "λ|d".
        #[arg(long)]
        json: bool,
    },
    /// Three-point Gromov–Witten invariant ⟨σ_λ, σ_μ, σ_ν⟩_d.
    Gw {
        #[arg(long, value_parser = positive)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        d: usize,
        #[arg(value_parser = parse_partition)]
        lambda: Partition,
        #[arg(value_parser = parse_partition)]
        mu: Partition,
        #[arg(value_parser = parse_partition)]
        nu: Partition,
    },
    /// Run a verification suite and print its JSON report.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        /// Largest n (suites over D_n sweep every n' ≤ n).
        #[arg(long)]
        n: Option<usize>,
        /// Number of variables for the polynomial suites.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        wmax: Option<usize>,
        #[arg(long)]
        pmax: Option<u32>,
        /// Replace the sweep at the top n by this many seeded pairs.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write the full quantum multiplication table over D_n × D_n.
    Table {
        #[arg(long, value_parser = positive)]
        n: usize,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, value_parser = positive)]
        workers: Option<usize>,
        #[arg(long, value_enum, default_value_t = EngineArg::Constants)]
        engine: EngineArg,
        /// Neither read nor write the product cache.
        #[arg(long)]
        no_cache: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Ring {
    Classical,
    Quantum,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Constants,
    Quotient,
    Pieri,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Engine {
        match e {
            EngineArg::Constants => Engine::Constants,
            EngineArg::Quotient => Engine::Quotient,
            EngineArg::Pieri => Engine::Pieri,
        }
    }
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("unknown suite {s:?}; expected one of {}", names.join(", "))
    })
}

/// A failure with its exit status.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotAPartition(_)
            | Error::NotInD { .. }
            | Error::NotStrict(_)
            | Error::Prepend { .. }
            | Error::Precondition(_)
            | Error::ExpansionGuard { .. } => 2,
            _ => 1,
        };
        Failure(code, e.to_string())
    }
}

fn require_d(lambda: &Partition, n: usize) -> Result<(), Failure> {
    if lambda.in_d(n) {
        Ok(())
    } else {
        Err(Error::NotInD {
            lambda: lambda.clone(),
            n,
        }
        .into())
    }
}

/// Writes to standard output; a reader that hung up early is not an error.
fn emit(text: &str) -> Result<(), Failure> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            Err(Failure(1, format!("cannot write output: {e}")))
        }
        _ => Ok(()),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Product {
            ring,
            n,
            lambda,
            mu,
            engine,
            json,
        } => {
            require_d(&lambda, n)?;
            require_d(&mu, n)?;
            let class = match ring {
                Ring::Quantum => qprod(&lambda, &mu, n, engine.into())?,
                Ring::Classical => {
                    let mut c = QuantumClass::zero(n);
                    for (p, &k) in classical_product(&lambda, &mu, n)?.coeffs() {
                        c.add(p.clone(), 0, k);
                    }
                    c
                }
            };
            if json {
                emit(&format!(
                    "{}\n",
                    serde_json::to_string(&class).expect("class serializes")
                ))?;
            } else {
                emit(&format!("{class}\n"))?;
            }
        }
        Command::Gw {
            n,
            d,
            lambda,
            mu,
            nu,
        } => {
            for p in [&lambda, &mu, &nu] {
                require_d(p, n)?;
            }
            let value = gw(&lambda, &mu, &nu, d, n)?;
            let permitted = vanishing_bounds(&lambda, &mu, &nu, d as i64, n);
            emit(&format!(
                "{value}\nvanishing bounds: {}\n",
                if permitted { "permit" } else { "forbid" }
            ))?;
        }
        Command::Verify {
            suite,
            n,
            m,
            wmax,
            pmax,
            sample,
            seed,
        } => {
            let params = SuiteParams {
                n,
                m,
                wmax,
                pmax,
                sample,
                seed,
            };
            let report = run_suite(suite, &params)?;
            emit(&format!(
                "{}\n",
                serde_json::to_string_pretty(&report).expect("report serializes")
            ))?;
            if report.cases == 0 {
                return Err(Failure(
                    2,
                    format!("{suite}: no cases in the requested range"),
                ));
            }
            if !report.all_passed() {
                return Err(Failure(
                    1,
                    format!(
                        "{suite}: {} of {} cases failed",
                        report.failed, report.cases
                    ),
                ));
            }
        }
        Command::Table {
            n,
            out,
            format,
            workers,
            engine,
            no_cache,
        } => {
            let engine = Engine::from(engine);
            let workers = workers.unwrap_or_else(rayon::current_num_threads);
            let store = if no_cache {
                None
            } else {
                cache::default_dir().map(|d| cache::Cache::new(&d, n, engine))
            };
            let known = store.as_ref().map(cache::Cache::load).unwrap_or_default();
            let done = table::compute(n, engine, workers, &known)?;
            eprintln!(
                "{} cells, {} computed, {} from cache",
                done.cells.len(),
                done.fresh,
                done.cells.len() - done.fresh
            );
            if let (Some(store), true) = (&store, done.fresh > 0) {
                let all: cache::Products = done.cells.iter().cloned().collect();
                if let Err(e) = store.store(&all) {
                    eprintln!("could not write cache: {e}");
                }
            }
            let text = match format {
                Format::Json => table::render_json(n, engine, &done.cells),
                Format::Tsv => table::render_tsv(&done.cells),
            };
            match out {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| Failure(2, format!("cannot write {}: {e}", path.display())))?,
                None => emit(&text)?,
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
