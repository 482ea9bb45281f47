mod common;

use std::process::{Command, Output};

use common::CORPUS;
use starprod_cli::json::{from_json, to_json};
use starprod_cli::{eval_str, parse, SessionConfig, Value};

fn starprod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_starprod")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn corpus_prints_back_to_itself() {
    for src in CORPUS {
        let e = parse(src).unwrap_or_else(|err| panic!("{src}: {err}"));
        assert_eq!(e.to_string(), src);
        assert_eq!(parse(&e.to_string()).unwrap(), e);
    }
}

#[test]
fn evaluated_corpus_is_a_fixed_point() {
    let cfg = SessionConfig::default();
    for src in CORPUS {
        let v = eval_str(src, &cfg).unwrap_or_else(|err| panic!("{src}: {err}"));
        let Value::Multivector(m) = v else { continue };
        let printed = m.to_string();
        let again = eval_str(&printed, &cfg).unwrap().to_string();
        assert_eq!(again, printed, "{src}");
        assert_eq!(from_json(&to_json(&m)).unwrap(), m);
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["eval", "exp(MC; q0*p1*g0 + hb*g1g2)", "--order", "4", "--format", "json"];
    let first = starprod(&args);
    assert!(first.status.success());
    for _ in 0..3 {
        assert_eq!(starprod(&args).stdout, first.stdout);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(starprod(&["eval", "comm(M4; q0, p0)"]).status.code(), Some(0));
    assert_eq!(stdout(&starprod(&["eval", "comm(M4; q0, p0)"])), "i*hb\n");
    assert_eq!(starprod(&["eval", "q0 +"]).status.code(), Some(2));
    assert_eq!(starprod(&["eval", "g1g0"]).status.code(), Some(2));
    assert_eq!(starprod(&["eval", "grade(q0, 7)"]).status.code(), Some(3));
    assert_eq!(starprod(&["verify", "lorentzz"]).status.code(), Some(2));
    assert_eq!(starprod(&["eigencheck", "g0g1", "1/2 + 1/2*g0g1", "-1", "--kind", "C"]).status.code(), Some(1));
    assert_eq!(starprod(&["eigencheck", "g0g1", "1/2 + 1/2*g0g1", "1", "--kind", "C"]).status.code(), Some(0));
    assert_eq!(starprod(&["mech", "limit-check", "q0^3*p1", "p0^2*q1"]).status.code(), Some(0));
}

#[test]
fn metric_flag() {
    assert_eq!(stdout(&starprod(&["eval", "g0 *C g0"])), "-1\n");
    assert_eq!(stdout(&starprod(&["--metric", "standard", "eval", "g0 *C g0"])), "1\n");
}

#[test]
fn json_output_ingests() {
    let o = starprod(&["--format", "json", "eval", "q1^2 *M4 p1^2"]);
    let m = from_json(stdout(&o).trim()).unwrap();
    let direct = eval_str("q1^2 *M4 p1^2", &SessionConfig::default()).unwrap();
    assert_eq!(Value::Multivector(m), direct);
}

#[test]
fn script_file() {
    let dir = std::env::temp_dir().join(format!("starprod-script-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("s.sp");
    std::fs::write(&path, "# canonical pair\ncomm(M4; q0, p0)\n:set metric standard\ng0 *C g0\n").unwrap();
    let o = starprod(&["eval", "--file", path.to_str().unwrap()]);
    assert_eq!(stdout(&o), "i*hb\n1\n");
    std::fs::write(&path, "1\n(q0\n").unwrap();
    let o = starprod(&["eval", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("2:4"));
}

#[test]
fn simulate_writes_csv() {
    let dir = std::env::temp_dir().join(format!("starprod-sim-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("traj.csv");
    let o = starprod(&[
        "mech", "simulate", "--field", "homogeneous-b", "--b3", "1", "--e", "1", "--m", "1", "--step", "1e-3",
        "--smax", "31.4159", "--out", path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(&path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("s,q0,q1,q2,q3,p0,p1,p2,p3,pi2_drift"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 31417);
    assert!(rows.iter().all(|r| r.len() == 10 && r[9].abs() < 1e-8));
}

#[test]
fn subcommands_run() {
    for args in [
        &["dirac"][..],
        &["dirac", "verify", "--mass", "5", "--momentum", "0,12,0", "--axis", "0,0,1"],
        &["lorentz", "passive-check"],
        &["lorentz", "active-check", "--metric", "standard"],
        &["lorentz", "poincare-check"],
        &["lorentz", "boost", "--rapidity", "0.5", "--axis", "2"],
        &["mech", "bracket", "q0*p1", "q1"],
        &["mech", "hamilton", "--field", "homogeneous-b", "--b3", "2"],
        &["exp", "p0", "--kind", "M4", "--order", "3"],
        &["split", "3*g0 + 4*g0g3", "--kind", "C", "--metric", "standard"],
        &["verify", "spin"],
    ] {
        let o = starprod(args);
        assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
    let o = starprod(&["mech", "bracket", "q0*p1", "q1"]);
    assert_eq!(stdout(&o), "-q0\n");
}
