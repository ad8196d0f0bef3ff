//! Acceptance run: one line per criterion, exact checks, wall-clock budgets.
//! Runs with its own harness so the lines always reach the output.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use lgquantum::partition::{all_strict, part, Partition};
use lgquantum::qtilde::{structure_constants, structure_constants_in};
use lgquantum::quantum::{qprod, qprod_constants, Engine, QuantumClass};
use lgquantum::verify::{engines_case, run_suite, sample_pairs, Suite, SuiteParams, SuiteReport};

type Check = Box<dyn Fn() -> Outcome>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn suites(list: &[(Suite, SuiteParams)]) -> Outcome {
    let reports: Vec<SuiteReport> = list
        .iter()
        .map(|(s, p)| run_suite(*s, p).unwrap_or_else(|e| panic!("{s}: {e}")))
        .collect();
    let pass = reports.iter().all(SuiteReport::all_passed);
    let mut detail: Vec<String> = reports
        .iter()
        .map(|r| format!("{} {}/{}", r.suite, r.passed, r.cases))
        .collect();
    if let Some(f) = reports.iter().flat_map(|r| r.failures.first()).next() {
        detail.push(format!("first failure {f:?}"));
    }
    Outcome {
        pass,
        detail: detail.join(", "),
    }
}

fn params(n: Option<usize>, m: Option<usize>, wmax: Option<usize>) -> SuiteParams {
    SuiteParams {
        n,
        m,
        wmax,
        ..Default::default()
    }
}

fn criterion_1() -> Outcome {
    let r = part(&[3, 2, 1]);
    let want = QuantumClass::monomial(Partition::empty(), 3, 3);
    let got: Vec<String> = Engine::ALL
        .iter()
        .map(|&e| {
            qprod(&r, &r, 3, e)
                .map(|c| c.to_string())
                .unwrap_or_else(|e| e.to_string())
        })
        .collect();
    Outcome {
        pass: got.iter().all(|g| *g == want.to_string()),
        detail: format!("constants/quotient/pieri give {}", got.join(" / ")),
    }
}

fn criterion_2() -> Outcome {
    let r = part(&[3, 2, 1]);
    let keys = [
        (part(&[4, 4, 4]), 8),
        (part(&[4, 3, 2, 2, 1]), 4),
        (part(&[4, 2, 2, 2, 2]), 4),
        (part(&[4, 4, 2, 2]), -4),
    ];
    let stable = structure_constants(&r, &r).expect("stable expansion");
    let four = structure_constants_in(&r, &r, 4).expect("expansion in four variables");
    let got: Vec<(i128, i128)> = keys
        .iter()
        .map(|(k, _)| (stable.get(k), four.get(k)))
        .collect();
    let pass = keys
        .iter()
        .zip(&got)
        .all(|((_, want), (a, b))| a == want && b == want);
    Outcome {
        pass,
        detail: format!("(stable, four-variable) coefficients {got:?}, expected 8, 4, 4, -4"),
    }
}

fn criterion_4() -> Outcome {
    let exhaustive = suites(&[(Suite::EnginesAgree, params(Some(4), None, None))]);
    let sampled: Vec<_> = sample_pairs(5, 200, 2024)
        .iter()
        .map(|(l, m)| engines_case(l, m, 5))
        .collect();
    let bad = sampled.iter().filter(|c| !c.pass).count();
    Outcome {
        pass: exhaustive.pass && bad == 0,
        detail: format!("{}; n = 5 sampled {}/200", exhaustive.detail, 200 - bad),
    }
}

fn criterion_5() -> Outcome {
    // route C refuses negative or non-divisible coefficients
    let mut checked = 0;
    let mut errors = Vec::new();
    for n in 1..=4 {
        let d = all_strict(n);
        for a in &d {
            for b in &d {
                checked += 1;
                if let Err(e) = qprod_constants(a, b, n) {
                    errors.push(format!("n = {n}, {a} x {b}: {e}"));
                }
            }
        }
    }
    Outcome {
        pass: errors.is_empty(),
        detail: format!(
            "{checked} products with all e(λ,μ;((n+1)^d,ν)) ≥ 0 and divisible by 2^d {errors:?}"
        ),
    }
}

fn criterion_8() -> Outcome {
    let mut out = suites(&[(Suite::Rho, params(Some(5), None, None))]);
    let squares: Vec<bool> = (1..=5)
        .map(|n| {
            let rho = Partition::rho(n);
            qprod_constants(&rho, &rho, n).ok()
                == Some(QuantumClass::monomial(Partition::empty(), n as u32, n))
        })
        .collect();
    out.pass &= squares.iter().all(|&b| b);
    out.detail
        .push_str(&format!(", ρ_n² = q^n for n ≤ 5: {squares:?}"));
    out
}

fn main() -> ExitCode {
    let criteria: Vec<(u32, &str, Duration, Check)> = vec![
        (
            1,
            "σ_{3,2,1}² = q³ in QH*(LG(3,6)) by all three engines",
            Duration::from_secs(1),
            Box::new(criterion_1),
        ),
        (
            2,
            "Q̃_{3,2,1}² coefficients 8, 4, 4, -4",
            Duration::from_secs(5),
            Box::new(criterion_2),
        ),
        (
            3,
            "presentation relations, 1 ≤ i ≤ n ≤ 6",
            Duration::from_secs(30),
            Box::new(|| suites(&[(Suite::Relations, params(Some(6), None, None))])),
        ),
        (
            4,
            "engine agreement, n ≤ 4 exhaustive and 200 pairs at n = 5",
            Duration::from_secs(720),
            Box::new(criterion_4),
        ),
        (
            5,
            "2^d divides e(λ,μ;((n+1)^d,ν)) ≥ 0, n ≤ 4",
            Duration::from_secs(120),
            Box::new(criterion_5),
        ),
        (
            6,
            "eight-fold symmetry and vanishing above ℓ(λ), n ≤ 4",
            Duration::from_secs(300),
            Box::new(|| suites(&[(Suite::Eightfold, params(Some(4), None, None))])),
        ),
        (
            7,
            "nonzero invariants satisfy the vanishing inequalities, n ≤ 4",
            Duration::from_secs(300),
            Box::new(|| suites(&[(Suite::Vanishing, params(Some(4), None, None))])),
        ),
        (
            8,
            "σ_λ σ_{ρ_n} = σ_{λ'*} q^{ℓ(λ)}, n ≤ 5",
            Duration::from_secs(60),
            Box::new(criterion_8),
        ),
        (
            9,
            "2⟨λ,μ,ν⟩_1 equals the triple intersection one size up, n ≤ 4",
            Duration::from_secs(120),
            Box::new(|| suites(&[(Suite::Lines, params(Some(4), None, None))])),
        ),
        (
            10,
            "C', C'' expansions, Pfaffian identities, extension formula (m ≤ 6), Dawson (p ≤ 12)",
            Duration::from_secs(300),
            Box::new(|| {
                let m6 = || params(None, Some(6), None);
                suites(&[
                    (Suite::Extension, m6()),
                    (Suite::PfaffianPrime, m6()),
                    (Suite::PfaffianDoublePrime, m6()),
                    (Suite::Lem2, m6()),
                    (
                        Suite::Dawson,
                        SuiteParams {
                            pmax: Some(12),
                            ..Default::default()
                        },
                    ),
                ])
            }),
        ),
        (
            11,
            "Q̃ properties (a)-(e), m ≤ 5, weight ≤ 10",
            Duration::from_secs(60),
            Box::new(|| suites(&[(Suite::QtildeProperties, params(None, Some(5), Some(10)))])),
        ),
        (
            12,
            "Poincaré duality and classical Giambelli (n ≤ 5), Pieri oracle (weight ≤ 10)",
            Duration::from_secs(120),
            Box::new(|| suites(&[(Suite::GiambelliClassical, params(Some(5), None, None))])),
        ),
        (
            13,
            "quantum Littlewood–Richardson and f-form identities, n ≤ 4",
            Duration::from_secs(300),
            Box::new(|| {
                suites(&[
                    (Suite::Qlr, params(Some(4), None, None)),
                    (Suite::Fform, params(Some(4), None, None)),
                ])
            }),
        ),
        (
            14,
            "f(λ,μ;ν) is a nonnegative integer for strict triples, |λ|+|μ| ≤ 12",
            Duration::from_secs(60),
            Box::new(|| suites(&[(Suite::FIntegrality, params(None, None, Some(12)))])),
        ),
    ];

    let mut failed = 0;
    for (id, title, budget, check) in &criteria {
        let start = Instant::now();
        let out = check();
        let took = start.elapsed();
        let in_time = took <= *budget;
        let pass = out.pass && in_time;
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {id:>2} {}: {title} [{:.2}s of {}s] {}{}",
            if pass { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            budget.as_secs(),
            out.detail,
            if in_time { "" } else { " (over budget)" },
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
