use std::path::Path;
use std::process::{Command, Output};

fn lgq(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lgquantum"));
    cmd.args(args);
    match cache {
        Some(dir) => cmd.env("SCHUBERT_CACHE_DIR", dir),
        None => cmd.env_remove("SCHUBERT_CACHE_DIR"),
    };
    cmd.output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = lgq(args, None);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

fn code(args: &[&str]) -> i32 {
    lgq(args, None).status.code().expect("exit code")
}

#[test]
fn products() {
    for engine in ["constants", "quotient", "pieri"] {
        let out = ok(&[
            "product", "--ring", "quantum", "--n", "3", "--lambda", "3,2,1", "--mu", "3,2,1",
            "--engine", engine,
        ]);
        assert_eq!(out, "q^3\n");
    }
    assert_eq!(
        ok(&[
            "product",
            "--ring",
            "classical",
            "--n",
            "2",
            "--lambda",
            "1",
            "--mu",
            "1"
        ]),
        "2*s[2]\n"
    );
    assert_eq!(
        ok(&["product", "--ring", "quantum", "--n", "2", "--lambda", "2", "--mu", "2", "--json"]),
        "{\"1|1\":1}\n"
    );
}

#[test]
fn empty_partition_spellings() {
    let a = ok(&["product", "--n", "3", "--lambda", "", "--mu", "2,1"]);
    let b = ok(&["product", "--n", "3", "--lambda", "0", "--mu", "2,1"]);
    assert_eq!(a, "s[2,1]\n");
    assert_eq!(a, b);
}

#[test]
fn invariants() {
    assert_eq!(
        ok(&["gw", "--n", "3", "--d", "3", "3,2,1", "3,2,1", "3,2,1"])
            .lines()
            .next(),
        Some("1")
    );
    assert_eq!(
        ok(&["gw", "--n", "2", "--d", "1", "2", "2", "2"])
            .lines()
            .next(),
        Some("1")
    );
    assert_eq!(
        ok(&["gw", "--n", "2", "--d", "2", "2,1", "2,1", "2,1"])
            .lines()
            .next(),
        Some("1")
    );
    assert_eq!(
        ok(&["gw", "--n", "2", "--d", "0", "1", "1", "1"]),
        "2\nvanishing bounds: permit\n"
    );
    assert_eq!(
        ok(&["gw", "--n", "2", "--d", "0", "2,1", "2,1", ""]),
        "0\nvanishing bounds: forbid\n"
    );
}

#[test]
fn verify_suites_pass() {
    for args in [
        &["verify", "relations", "--n", "4"][..],
        &["verify", "engines-agree", "--n", "3"],
        &["verify", "dawson", "--pmax", "12"],
    ] {
        let report: serde_json::Value = serde_json::from_str(&ok(args)).unwrap();
        assert_eq!(report["failed"], 0, "{args:?}");
        assert!(report["passed"].as_u64().unwrap() > 0);
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        code(&["product", "--n", "2", "--lambda", "3", "--mu", "1"]),
        2
    );
    assert_eq!(
        code(&["product", "--n", "3", "--lambda", "2,2", "--mu", "1"]),
        2
    );
    assert_eq!(
        code(&["product", "--n", "2", "--lambda", "1,x", "--mu", "1"]),
        2
    );
    assert_eq!(
        code(&["product", "--n", "0", "--lambda", "1", "--mu", "1"]),
        2
    );
    assert_eq!(code(&["gw", "--n", "2", "3", "1", "1"]), 2);
    assert_eq!(code(&["verify", "no-such-suite"]), 2);
    assert_eq!(
        code(&[
            "table",
            "--n",
            "2",
            "--no-cache",
            "--out",
            "/nonexistent/dir/t.json"
        ]),
        2
    );
}

#[test]
fn table_shapes() {
    for (n, cells) in [(2, 16), (3, 64)] {
        let tsv = ok(&[
            "table",
            "--n",
            &n.to_string(),
            "--format",
            "tsv",
            "--no-cache",
        ]);
        assert_eq!(tsv.lines().count(), cells + 1);
        assert_eq!(tsv.lines().next(), Some("lambda\tmu\tproduct"));
    }
    let json: serde_json::Value =
        serde_json::from_str(&ok(&["table", "--n", "3", "--no-cache"])).unwrap();
    assert_eq!(json["basis"].as_array().unwrap().len(), 8);
    assert_eq!(json["products"].as_array().unwrap().len(), 64);
    assert_eq!(json["products"][63]["product"]["|3"], 1);
}

#[test]
fn worker_count_does_not_change_bytes() {
    let one = ok(&["table", "--n", "4", "--workers", "1", "--no-cache"]);
    let eight = ok(&["table", "--n", "4", "--workers", "8", "--no-cache"]);
    assert_eq!(one, eight);
    let one = ok(&[
        "table",
        "--n",
        "4",
        "--workers",
        "1",
        "--no-cache",
        "--format",
        "tsv",
    ]);
    let eight = ok(&[
        "table",
        "--n",
        "4",
        "--workers",
        "8",
        "--no-cache",
        "--format",
        "tsv",
    ]);
    assert_eq!(one, eight);
}

#[test]
fn warm_cache_matches_cold() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let out_cold = dir.path().join("cold.json");
    let out_warm = dir.path().join("warm.json");
    let args = |out: &Path| {
        vec![
            "table".to_string(),
            "--n".into(),
            "4".into(),
            "--out".into(),
            out.display().to_string(),
        ]
    };
    let run = |out: &Path| {
        let a = args(out);
        let a: Vec<&str> = a.iter().map(String::as_str).collect();
        let o = lgq(&a, Some(&cache));
        assert!(o.status.success());
        String::from_utf8(o.stderr).unwrap()
    };

    assert!(run(&out_cold).contains("256 computed"));
    let file = cache.join("products-n4-constants.jsonl");
    let first = std::fs::read(&file).unwrap();
    assert!(run(&out_warm).contains("0 computed"));
    assert_eq!(
        std::fs::read(&out_cold).unwrap(),
        std::fs::read(&out_warm).unwrap()
    );
    assert_eq!(std::fs::read(&file).unwrap(), first);

    // a cache from another format version is recomputed, not read
    let text = String::from_utf8(first.clone())
        .unwrap()
        .replace("\"version\":1", "\"version\":0");
    std::fs::write(&file, text).unwrap();
    assert!(run(&out_warm).contains("256 computed"));
    assert_eq!(
        std::fs::read(&out_cold).unwrap(),
        std::fs::read(&out_warm).unwrap()
    );
    assert_eq!(std::fs::read(&file).unwrap(), first);
}
