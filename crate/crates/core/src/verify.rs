//! Named verification suites over exhaustive (or seeded, sampled) ranges.
//!
//! Each suite expands into independent cases that run in parallel; the
//! report lists cases in generation order whatever the schedule.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::classical::{classical_product, giambelli_check, integral};
use crate::error::{Error, Result};
use crate::partition::{all_strict, dual, enumerate, Partition};
use crate::polyring::{EPoly, Int};
use crate::qtilde::{
    expand_in_basis, f_constant, pieri_strict, qtilde_of, verify_extension_formula,
    verify_qtilde_properties,
};
use crate::quantum::{
    eightfold_check, fform_check, gw, line_count_check, qlr_check, qprod, relation_check,
    rho_product, sigma_ij_product_check, vanishing_bounds, Engine,
};
use crate::report::CaseReport;
use crate::symplectic::{
    binomial_recursion_tail, dawson, verify_cprime_expansion, verify_lem2,
    verify_pfaffian_identity_double_prime, verify_pfaffian_identity_prime,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    QtildeProperties,
    Extension,
    PfaffianPrime,
    PfaffianDoublePrime,
    Lem2,
    Dawson,
    GiambelliClassical,
    Relations,
    EnginesAgree,
    Eightfold,
    Vanishing,
    Qlr,
    Fform,
    Rho,
    Lines,
    SigmaIj,
    FIntegrality,
}

impl Suite {
    pub const ALL: [Suite; 17] = [
        Suite::QtildeProperties,
        Suite::Extension,
        Suite::PfaffianPrime,
        Suite::PfaffianDoublePrime,
        Suite::Lem2,
        Suite::Dawson,
        Suite::GiambelliClassical,
        Suite::Relations,
        Suite::EnginesAgree,
        Suite::Eightfold,
        Suite::Vanishing,
        Suite::Qlr,
        Suite::Fform,
        Suite::Rho,
        Suite::Lines,
        Suite::SigmaIj,
        Suite::FIntegrality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::QtildeProperties => "qtilde-properties",
            Suite::Extension => "extension",
            Suite::PfaffianPrime => "pfaffian-prime",
            Suite::PfaffianDoublePrime => "pfaffian-double-prime",
            Suite::Lem2 => "lem2",
            Suite::Dawson => "dawson",
            Suite::GiambelliClassical => "giambelli-classical",
            Suite::Relations => "relations",
            Suite::EnginesAgree => "engines-agree",
            Suite::Eightfold => "eightfold",
            Suite::Vanishing => "vanishing",
            Suite::Qlr => "qlr",
            Suite::Fform => "fform",
            Suite::Rho => "rho",
            Suite::Lines => "lines",
            Suite::SigmaIj => "sigma-ij",
            Suite::FIntegrality => "f-integrality",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown suite {s:?}")))
    }
}

/// Range bounds. Unset fields take per-suite defaults.
#[derive(Clone, Debug, Default)]
pub struct SuiteParams {
    /// Largest `n` for sweeps over `LG(n, 2n)`; every `1 ≤ n' ≤ n` is run.
    pub n: Option<usize>,
    /// Largest variable count for polynomial identities.
    pub m: Option<usize>,
    pub wmax: Option<usize>,
    pub pmax: Option<u32>,
    /// Replace the exhaustive sweep at the top `n` by this many seeded
    /// samples (suites over pairs only).
    pub sample: Option<usize>,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<CaseReport>,
}

impl SuiteReport {
    fn from_cases(suite: Suite, cases: Vec<CaseReport>) -> Self {
        let failures: Vec<CaseReport> = cases.iter().filter(|c| !c.pass).cloned().collect();
        SuiteReport {
            suite: suite.name().to_string(),
            cases: cases.len(),
            passed: cases.len() - failures.len(),
            failed: failures.len(),
            failures,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0 && self.cases > 0
    }
}

fn run<T: Sync>(items: &[T], f: impl Fn(&T) -> CaseReport + Sync + Send) -> Vec<CaseReport> {
    items.par_iter().map(f).collect()
}

fn judged(case: CaseReport, outcome: Result<bool>, witness: impl FnOnce() -> String) -> CaseReport {
    match outcome {
        Ok(pass) => case.outcome(pass, witness),
        Err(e) => case.errored(e),
    }
}

fn with_n<T>(n_max: usize, f: impl Fn(usize) -> Vec<T>) -> Vec<(usize, T)> {
    (1..=n_max)
        .flat_map(|n| f(n).into_iter().map(move |t| (n, t)))
        .collect()
}

fn pairs(n: usize) -> Vec<(Partition, Partition)> {
    let d = all_strict(n);
    d.iter()
        .flat_map(|a| d.iter().map(move |b| (a.clone(), b.clone())))
        .collect()
}

fn triples(n: usize) -> Vec<(Partition, Partition, Partition)> {
    let d = all_strict(n);
    let mut out = Vec::with_capacity(d.len().pow(3));
    for a in &d {
        for b in &d {
            for c in &d {
                out.push((a.clone(), b.clone(), c.clone()));
            }
        }
    }
    out
}

/// Triples in `D_n` with the degree `d` solving
/// `|λ| + |μ| + |ν| = n(n+1)/2 + d(n+1)`, for every `n ≤ n_max`.
fn admissible_triples(n_max: usize) -> Vec<(usize, (Partition, Partition, Partition, usize))> {
    with_n(n_max, |n| {
        let base = n * (n + 1) / 2;
        triples(n)
            .into_iter()
            .filter_map(|(a, b, c)| {
                let w = a.weight() + b.weight() + c.weight();
                (w >= base && (w - base) % (n + 1) == 0).then(|| (a, b, c, (w - base) / (n + 1)))
            })
            .collect()
    })
}

/// Seeded choice of `k` distinct pairs from `D_n × D_n`.
pub fn sample_pairs(n: usize, k: usize, seed: u64) -> Vec<(Partition, Partition)> {
    let all = pairs(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idx = sample(&mut rng, all.len(), k.min(all.len())).into_vec();
    idx.sort_unstable();
    idx.into_iter().map(|i| all[i].clone()).collect()
}

/// Runs one suite.
pub fn run_suite(suite: Suite, p: &SuiteParams) -> Result<SuiteReport> {
    let cases = match suite {
        Suite::QtildeProperties => qtilde_suite(p.m.unwrap_or(5), p.wmax.unwrap_or(10))?,
        Suite::Extension => extension_suite(p.m.unwrap_or(5), p.wmax.unwrap_or(8))?,
        Suite::PfaffianPrime => {
            let m_max = check_m(p.m.unwrap_or(5))?;
            let items = strict_up_to(m_max, |l| l.len() >= 3);
            run(&items, |(m, l)| {
                judged(
                    CaseReport::new("pfaffian-prime").lambda(l).m(*m),
                    verify_pfaffian_identity_prime(l, *m),
                    || "row expansion does not vanish".into(),
                )
            })
        }
        Suite::PfaffianDoublePrime => {
            let m_max = check_m(p.m.unwrap_or(5))?;
            let items = strict_up_to(m_max, |l| l.len() >= 4 && l.len() % 2 == 0);
            run(&items, |(m, l)| {
                judged(
                    CaseReport::new("pfaffian-double-prime").lambda(l).m(*m),
                    verify_pfaffian_identity_double_prime(l, *m),
                    || "row expansion does not vanish".into(),
                )
            })
        }
        Suite::Lem2 => {
            let m_max = check_m(p.m.unwrap_or(5))?;
            let items: Vec<_> = strict_up_to(m_max, |l| !l.is_empty() && l.len() % 2 == 0)
                .into_iter()
                .filter(|(m, _)| *m >= 2)
                .collect();
            run(&items, |(m, l)| {
                judged(
                    CaseReport::new("lem2").lambda(l).m(*m),
                    verify_lem2(l, *m),
                    || "C'' differs from its expansion".into(),
                )
            })
        }
        Suite::Dawson => dawson_suite(p.pmax.unwrap_or(12)),
        Suite::GiambelliClassical => classical_suite(p.n.unwrap_or(5), p.wmax.unwrap_or(10)),
        Suite::Relations => {
            let items = with_n(p.n.unwrap_or(6), |n| (1..=n).collect());
            run(&items, |(n, i)| {
                judged(
                    CaseReport::new("relation").n(*n).d(*i),
                    relation_check(*i, *n),
                    || format!("relation fails for i = {i}"),
                )
            })
        }
        Suite::EnginesAgree => engines_suite(p),
        Suite::Eightfold => {
            let items = admissible_triples(p.n.unwrap_or(4));
            run(&items, |(n, (l, m, v, d))| {
                judged(
                    CaseReport::new("eightfold")
                        .lambda(l)
                        .mu(m)
                        .nu(v)
                        .d(*d)
                        .n(*n),
                    eightfold_check(l, m, v, *d, *n),
                    || "scaling relation fails".into(),
                )
            })
        }
        Suite::Vanishing => {
            let items = admissible_triples(p.n.unwrap_or(4));
            run(&items, |(n, (l, m, v, d))| {
                let case = CaseReport::new("vanishing")
                    .lambda(l)
                    .mu(m)
                    .nu(v)
                    .d(*d)
                    .n(*n);
                match gw(l, m, v, *d, *n) {
                    Ok(g) => case
                        .outcome(g == 0 || vanishing_bounds(l, m, v, *d as i64, *n), || {
                            format!("gw = {g}")
                        }),
                    Err(e) => case.errored(e),
                }
            })
        }
        Suite::Qlr => {
            let items = with_n(p.n.unwrap_or(4), |n| {
                pairs(n)
                    .into_iter()
                    .filter(|(_, m)| (2..=3).contains(&m.len()))
                    .collect()
            });
            run(&items, |(n, (l, m))| {
                judged(
                    CaseReport::new("qlr").lambda(l).mu(m).n(*n),
                    qlr_check(l, m, *n),
                    || "assembled product differs".into(),
                )
            })
        }
        Suite::Fform => {
            let items = with_n(p.n.unwrap_or(4), |n| {
                pairs(n)
                    .into_iter()
                    .filter(|(_, m)| !m.is_empty())
                    .collect()
            });
            run(&items, |(n, (l, m))| {
                judged(
                    CaseReport::new("fform").lambda(l).mu(m).n(*n),
                    fform_check(l, m, *n),
                    || "f-form identity fails".into(),
                )
            })
        }
        Suite::Rho => {
            let items = with_n(p.n.unwrap_or(5), all_strict);
            run(&items, |(n, l)| {
                judged(
                    CaseReport::new("rho").lambda(l).n(*n),
                    rho_product(l, *n).map(|_| true),
                    String::new,
                )
            })
        }
        Suite::Lines => {
            let items = with_n(p.n.unwrap_or(4), |n| {
                triples(n)
                    .into_iter()
                    .filter(|(a, b, c)| {
                        a.weight() + b.weight() + c.weight() == n * (n + 1) / 2 + n + 1
                    })
                    .collect()
            });
            run(&items, |(n, (l, m, v))| {
                judged(
                    CaseReport::new("lines").lambda(l).mu(m).nu(v).n(*n),
                    line_count_check(l, m, v, *n),
                    || "line count differs from triple intersection".into(),
                )
            })
        }
        Suite::SigmaIj => {
            let items = with_n(p.n.unwrap_or(6), |n| {
                let mut v = Vec::new();
                for i in 1..=n {
                    for j in 1..=i {
                        if i + j > n {
                            v.push((i, j));
                        }
                    }
                }
                v
            });
            run(&items, |(n, (i, j))| {
                judged(
                    CaseReport::new("sigma-ij")
                        .lambda(&Partition::single(*i as u32))
                        .mu(&Partition::single(*j as u32))
                        .n(*n),
                    sigma_ij_product_check(*i, *j, *n),
                    || "product differs".into(),
                )
            })
        }
        Suite::FIntegrality => f_integrality_suite(p.wmax.unwrap_or(12)),
    };
    Ok(SuiteReport::from_cases(suite, cases))
}

fn check_m(m: usize) -> Result<usize> {
    if m == 0 || m > crate::symplectic::MAX_VARS {
        return Err(Error::Precondition(format!(
            "variable count must lie in 1..={}, got {m}",
            crate::symplectic::MAX_VARS
        )));
    }
    Ok(m)
}

/// `(m, λ)` for `m ≤ m_max` and strict `λ` with `λ_1 ≤ m`.
fn strict_up_to(m_max: usize, keep: impl Fn(&Partition) -> bool) -> Vec<(usize, Partition)> {
    let mut out = Vec::new();
    for m in 1..=m_max {
        for l in all_strict(m) {
            if keep(&l) {
                out.push((m, l));
            }
        }
    }
    out
}

fn qtilde_suite(m_max: usize, wmax: usize) -> Result<Vec<CaseReport>> {
    if m_max == 0 || m_max > 5 {
        return Err(Error::Precondition(format!(
            "property suite runs for 1 ≤ m ≤ 5, got {m_max}"
        )));
    }
    let ms: Vec<usize> = (1..=m_max).collect();
    let mut cases: Vec<CaseReport> = Vec::new();
    for batch in ms
        .par_iter()
        .map(|&m| verify_qtilde_properties(m, wmax))
        .collect::<Vec<_>>()
    {
        cases.extend(batch?);
    }

    Ok(cases)
}

fn extension_suite(m_max: usize, wmax: usize) -> Result<Vec<CaseReport>> {
    let m_max = check_m(m_max)?;
    let mut items = Vec::new();
    for m in 1..=m_max {
        for w in 1..=wmax {
            for l in enumerate(w, m, false) {
                items.push((m, l));
            }
        }
    }
    let mut cases = run(&items, |(m, l)| {
        judged(
            CaseReport::new("extension").lambda(l).m(*m),
            verify_extension_formula(l, *m),
            || "expansion over X' differs".into(),
        )
    });
    let strict = strict_up_to(m_max, |l| !l.is_empty());
    cases.extend(run(&strict, |(m, l)| {
        judged(
            CaseReport::new("cprime-expansion").lambda(l).m(*m),
            verify_cprime_expansion(l, *m),
            || "C' differs from its expansion".into(),
        )
    }));
    Ok(cases)
}

fn dawson_suite(pmax: u32) -> Vec<CaseReport> {
    let mut cases = Vec::new();
    for p in 0..=pmax {
        let span = p as i64 + 2;
        for q in -span..=span {
            let ok = dawson(p, q);
            cases.push(CaseReport::new("dawson").outcome(ok, || format!("p = {p}, q = {q}")));
        }
    }
    for r in (0..=20u32).step_by(2) {
        for s in (0..=r).step_by(2) {
            if r + s > 20 {
                continue;
            }
            let case = CaseReport::new("recursion-tail");
            cases.push(match binomial_recursion_tail(r, s) {
                Ok(v) => case.outcome(*v.numer() == 0, || format!("r = {r}, s = {s}: e = {v}")),
                Err(e) => case.errored(e),
            });
        }
    }
    cases
}

fn classical_suite(n_max: usize, wmax: usize) -> Vec<CaseReport> {
    let items = with_n(n_max, |n| {
        all_strict(n).into_iter().filter(|l| l.len() >= 3).collect()
    });
    let mut cases = run(&items, |(n, l)| {
        judged(
            CaseReport::new("giambelli").lambda(l).n(*n),
            giambelli_check(l, *n),
            || "Pfaffian expansion differs".into(),
        )
    });
    let items = with_n(n_max, |n| {
        pairs(n)
            .into_iter()
            .filter(|(a, b)| a.weight() + b.weight() == n * (n + 1) / 2)
            .collect()
    });
    cases.extend(run(&items, |(n, (a, b))| {
        let case = CaseReport::new("duality").lambda(a).mu(b).n(*n);
        match (classical_product(a, b, *n), dual(a, *n)) {
            (Ok(prod), Ok(d)) => {
                let got = integral(&prod);
                let want = Int::from(*b == d);
                case.outcome(got == want, || format!("integral {got}, expected {want}"))
            }
            (Err(e), _) | (_, Err(e)) => case.errored(e),
        }
    }));
    // Pieri rule against polynomial multiplication by e_k = Q̃_k, k ≤ 6.
    let items: Vec<(Partition, usize)> = (0..=wmax)
        .flat_map(|w| enumerate(w, w, true))
        .flat_map(|l| (0..=6usize).map(move |k| (l.clone(), k)))
        .collect();
    cases.extend(run(&items, |(l, k)| {
        let m = (l.weight() + k).max(1);
        let case = CaseReport::new("pieri-oracle").lambda(l).d(*k).m(m);
        let product = &qtilde_of(l, m) * &EPoly::gen(*k, m);
        match (pieri_strict(l, *k), expand_in_basis(&product)) {
            (Ok(a), Ok(b)) => case.outcome(a == b, || {
                format!("rule {:?} vs product {:?}", a.coeffs(), b.coeffs())
            }),
            (Err(e), _) | (_, Err(e)) => case.errored(e),
        }
    }));
    cases
}

fn engines_suite(p: &SuiteParams) -> Vec<CaseReport> {
    let n_max = p.n.unwrap_or(4);
    let items: Vec<(usize, (Partition, Partition))> = match p.sample {
        Some(k) => sample_pairs(n_max, k, p.seed)
            .into_iter()
            .map(|x| (n_max, x))
            .collect(),
        None => with_n(n_max, pairs),
    };
    run(&items, |(n, (l, m))| engines_case(l, m, *n))
}

/// All three engines on one pair, plus homogeneity and the `q = 0`
/// restriction to the classical product.
pub fn engines_case(l: &Partition, m: &Partition, n: usize) -> CaseReport {
    let case = CaseReport::new("engines-agree").lambda(l).mu(m).n(n);
    let results: Result<Vec<_>> = Engine::ALL.iter().map(|&e| qprod(l, m, n, e)).collect();
    let classical = classical_product(l, m, n);
    match (results, classical) {
        (Ok(r), Ok(c)) => {
            let agree = r[0] == r[1] && r[1] == r[2];
            let homogeneous = r[0].is_homogeneous();
            let restricts = r[0].classical_part() == *c.coeffs();
            case.outcome(agree && homogeneous && restricts, || {
                format!(
                    "constants: {}; quotient: {}; pieri: {}; classical restriction ok: {restricts}",
                    r[0], r[1], r[2]
                )
            })
        }
        (Err(e), _) | (_, Err(e)) => case.errored(e),
    }
}

fn f_integrality_suite(wmax: usize) -> Vec<CaseReport> {
    let strict: Vec<Partition> = (0..=wmax).flat_map(|w| enumerate(w, w, true)).collect();
    let mut items = Vec::new();
    for a in &strict {
        for b in &strict {
            if a.weight() + b.weight() <= wmax {
                items.push((a.clone(), b.clone()));
            }
        }
    }
    run(&items, |(a, b)| {
        let case = CaseReport::new("f-integrality").lambda(a).mu(b);
        let w = a.weight() + b.weight();
        let mut bad = Vec::new();
        for nu in enumerate(w, w, true) {
            match f_constant(a, b, &nu) {
                Ok(f) if f >= 0 => {}
                Ok(f) => bad.push(format!("f(·,·;{nu}) = {f}")),
                Err(e) => bad.push(e.to_string()),
            }
        }
        case.outcome(bad.is_empty(), || bad.join("; "))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        let p = SuiteParams {
            n: Some(3),
            m: Some(4),
            wmax: Some(6),
            pmax: Some(6),
            ..Default::default()
        };
        for s in Suite::ALL {
            let r = run_suite(s, &p).unwrap();
            assert!(r.all_passed(), "{s}: {:?}", r.failures);
        }
    }

    #[test]
    fn sampling_is_seeded() {
        let a = sample_pairs(4, 20, 7);
        assert_eq!(a, sample_pairs(4, 20, 7));
        assert_eq!(a.len(), 20);
        assert_ne!(a, sample_pairs(4, 20, 8));
    }
}
