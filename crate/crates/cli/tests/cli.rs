use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use noether_ops::diffops::OperatorSet;
use noether_ops::groebner::RingSpec;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn noether(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_noether"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn experiment_matches_golden_files() {
    let cfg = fixture("family.json");
    let csv = noether(&["experiment", "--config", path(&cfg)]);
    assert_eq!(code(&csv), 0);
    assert_eq!(
        stdout(&csv),
        std::fs::read_to_string(fixture("family.golden.csv")).unwrap()
    );
    let json = noether(&["--format", "json", "experiment", "--config", path(&cfg)]);
    assert_eq!(code(&json), 0);
    assert_eq!(
        stdout(&json),
        std::fs::read_to_string(fixture("family.golden.json")).unwrap()
    );
    assert!(String::from_utf8_lossy(&csv.stderr).contains("aggregate c = 1"));
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let cfg = fixture("family.json");
    for format in ["csv", "json"] {
        let one = noether(&[
            "--jobs",
            "1",
            "--format",
            format,
            "experiment",
            "--config",
            path(&cfg),
        ]);
        let four = noether(&[
            "--jobs",
            "4",
            "--format",
            format,
            "experiment",
            "--config",
            path(&cfg),
        ]);
        assert_eq!(one.stdout, four.stdout, "{format}");
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.csv");
    let o = noether(&[
        "find-c",
        "--config",
        path(&fixture("family.json")),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(out).unwrap(),
        std::fs::read_to_string(fixture("family.golden.csv")).unwrap()
    );
}

#[test]
fn csv_witnesses_reconfirm_refutations() {
    let o = noether(&["find-c", "--config", path(&fixture("family.json"))]);
    let ring =
        RingSpec::parse(&std::fs::read_to_string(fixture("square_zero.ring")).unwrap()).unwrap();
    let ops = OperatorSet::parse("1; dx", ring.vars(), ring.radical().clone()).unwrap();
    let gens = [("J1", "(x - y)"), ("J2", "(x; y)"), ("J3", "(y)")];
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    let mut checked = 0;
    for rec in rdr.records() {
        let rec = rec.unwrap();
        if rec[3].is_empty() {
            continue;
        }
        let j = ring
            .parse_ideal(gens.iter().find(|(id, _)| *id == &rec[0]).unwrap().1)
            .unwrap();
        let n: u32 = rec[1].parse().unwrap();
        let c: u32 = rec[2].parse().unwrap();
        let w = ring.parse_poly(&rec[3]).unwrap();
        // w lies in the colon at shift c - 1 but not in J^n
        let k = ring
            .image_in_reduced(&j)
            .power(n + c - 1)
            .sum(ring.radical())
            .unwrap();
        for op in ops.ops() {
            assert!(k.contains(&op.apply(&w).unwrap()));
        }
        assert!(!ring.lift(&j.power(n)).contains(&w));
        checked += 1;
    }
    assert_eq!(checked, 3);
}

#[test]
fn exit_codes() {
    let cfg = path(&fixture("family.json")).to_string();
    let o = noether(&["find-c", "--config", &cfg, "--c-max", "0"]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("J1,1,NOT_FOUND(<=0),y,12"));

    let o = noether(&["find-c", "--config", "/nonexistent/config.json"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));

    let o = noether(&["check-symb", "--config", &cfg]);
    assert_eq!(code(&o), 1);

    let plane = path(&fixture("plane.ring")).to_string();
    let o = noether(&[
        "noeth-ops",
        "--ring",
        &plane,
        "--primary",
        "(x^2 +)",
        "--prime",
        "(x)",
    ]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("position"));
}

#[test]
fn empty_family_gives_header_only() {
    let o = noether(&["find-c", "--config", path(&fixture("empty.json"))]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "J_id,n,c_min,witness,degree_bound\n");
    assert!(String::from_utf8_lossy(&o.stderr).contains("aggregate c = 0"));
}

#[test]
fn noetherian_operators() {
    let sq = path(&fixture("square_zero.ring")).to_string();
    let o = noether(&[
        "noeth-ops",
        "--ring",
        &sq,
        "--primary",
        "(x^2)",
        "--prime",
        "(x)",
        "--independent",
        "y",
    ]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("operators: 1; dx\n"), "{out}");
    assert!(out.contains("status: exact\n"));

    let plane = path(&fixture("plane.ring")).to_string();
    let o = noether(&[
        "noeth-ops",
        "--ring",
        &plane,
        "--primary",
        "(x; y)",
        "--prime",
        "(x; y)",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("operators: 1\n"));
}

#[test]
fn operator_verification() {
    let sq = path(&fixture("square_zero.ring")).to_string();
    let o = noether(&[
        "verify-ops",
        "--ring",
        &sq,
        "--ideal",
        "(x^2)",
        "--ops",
        "1",
        "--degree",
        "4",
    ]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("witness: x\n"));

    let plane = path(&fixture("plane.ring")).to_string();
    let args = [
        "verify-ops",
        "--ring",
        &plane,
        "--ideal",
        "(x^2)",
        "--modulus",
        "(x)",
        "--degree",
        "4",
    ];
    let o = noether(&[&args[..], &["--ops", "1; dx"]].concat());
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("status: exact"));
    let o = noether(&[&args[..], &["--ops", "1; dx; dx^2", "--format", "json"]].concat());
    assert_eq!(code(&o), 2);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["witness"], "x^2");
    assert_eq!(v["witness_side"], "in_ideal_not_killed");
}

#[test]
fn differential_colon() {
    let sq = path(&fixture("square_zero.ring")).to_string();
    let base = [
        "diff-colon",
        "--ring",
        &sq,
        "--ops",
        "1; dx",
        "--ideal",
        "(y)",
    ];
    let o = noether(&[&base[..], &["--power", "0", "--degree", "3"]].concat());
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("full space:"));
    let o = noether(&[&base[..], &["--power", "3", "--degree", "4"]].concat());
    let out = stdout(&o);
    assert!(out.starts_with("dimension: 9 of 15\n"), "{out}");
    for m in ["y^3", "y^4", "x*y^3"] {
        assert!(out.lines().any(|l| l == m), "{m}");
    }
}

#[test]
fn separating_operator() {
    let cu = path(&fixture("cube_zero.ring")).to_string();
    let o = noether(&[
        "sep-op", "--ring", &cu, "--a", "(0)", "--b", "(x^2)", "--prime", "(x)", "--psi", "1",
    ]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("operator: dx^2\n"), "{out}");
    assert!(out.contains("order: 2\n"));
    assert!(out.contains("d: 2\n"));
    assert!(out.contains("linearity: passed (50 samples"));

    let o = noether(&[
        "sep-op", "--ring", &cu, "--a", "(0)", "--b", "(x^2)", "--prime", "(x)", "--psi", "1",
        "--t-max", "1",
    ]);
    assert_eq!(code(&o), 3);

    let args = [
        "sep-op",
        "--ring",
        &cu,
        "--a",
        "(0)",
        "--b",
        "(x^2; x^2*y)",
        "--prime",
        "(x)",
        "--psi",
        "1; 1",
    ];
    assert_eq!(code(&noether(&args)), 2);
}

#[test]
fn reverse_and_filtration() {
    let o = noether(&[
        "check-ar-reverse",
        "--config",
        path(&fixture("family.json")),
    ]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("J_id,n,passed,checked,witness\n"));
    assert_eq!(out.lines().filter(|l| l.contains(",true,")).count(), 12);

    let sq = path(&fixture("square_zero.ring")).to_string();
    let chain = [
        "verify-filtration",
        "--ring",
        &sq,
        "--chain",
        "(x^2)",
        "--chain",
        "(x)",
        "--chain",
        "(1)",
    ];
    let o = noether(&[&chain[..], &["--prime", "(x)", "--prime", "(x)"]].concat());
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("passed"));
    let o = noether(&[&chain[..], &["--prime", "(x)", "--prime", "(y)"]].concat());
    assert_eq!(code(&o), 2);
}

#[test]
fn closure_mode_with_computed_operators() {
    let o = noether(&["experiment", "--config", path(&fixture("computed.json"))]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "J_id,n,c_min,witness,degree_bound\ndiag,1,1,y,10\ndiag,2,1,y^2,10\nmonomial,1,0,,10\nmonomial,2,0,,10\n"
    );
}
