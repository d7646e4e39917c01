use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_domination"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn construct(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name);
    let p = path.to_str().unwrap().to_string();
    let mut all = vec!["construct"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", &p]);
    let o = run(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    p
}

#[test]
fn construct_torus_and_clique_chain() {
    let dir = TempDir::new().unwrap();
    let j = construct(dir.path(), "j2.txt", &["--family", "torus_J", "-t", "2"]);
    let text = fs::read_to_string(&j).unwrap();
    assert!(text.starts_with("64 832\n"));
    assert_eq!(text.lines().count(), 833);
    let h = construct(dir.path(), "h4.txt", &["--family", "clique_chain_H", "-t", "4"]);
    assert!(fs::read_to_string(h).unwrap().starts_with("64 "));
    let r = construct(dir.path(), "r1.txt", &["--family", "random", "--n", "1", "--seed", "7"]);
    assert_eq!(fs::read_to_string(r).unwrap(), "1 0\n");
}

#[test]
fn construct_is_byte_deterministic() {
    let a = run(&[
        "construct",
        "--family",
        "random",
        "-t",
        "30",
        "--seed",
        "5",
        "--p",
        "1/3",
    ]);
    let b = run(&[
        "construct",
        "--family",
        "random",
        "-t",
        "30",
        "--seed",
        "5",
        "--p",
        "1/3",
    ]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn construct_rejects_bad_input() {
    assert_eq!(
        run(&["construct", "--family", "clique_chain_H", "-t", "3"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["construct", "--family", "torus_J", "-t", "4"]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["construct", "--family", "nope", "-t", "2"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn compute_torus() {
    let dir = TempDir::new().unwrap();
    let j = construct(dir.path(), "j2.txt", &["--family", "torus_J", "-t", "2"]);
    let o = run(&["compute", &j]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("gamma_f       64/27"), "{out}");
    assert!(out.contains("gamma=4"), "{out}");
    assert!(out.contains("chain_ok      true"), "{out}");
}

#[test]
fn compute_hairy_clique_csv() {
    let dir = TempDir::new().unwrap();
    let h = construct(dir.path(), "hairy8.txt", &["--family", "hairy_clique", "-t", "8"]);
    let o = run(&["compute", &h, "--csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut rows = out.lines();
    let header: Vec<&str> = rows.next().unwrap().split(',').collect();
    let row: Vec<&str> = rows.next().unwrap().split(',').collect();
    let col = |name: &str| row[header.iter().position(|h| *h == name).unwrap()];
    assert_eq!(col("gamma_f_exact"), "8/1");
    assert_eq!(col("gamma"), "8");
    assert_eq!(col("gamma_g"), "8");
    assert_eq!(col("chain_ok"), "true");
    assert_eq!(col("ms_lp"), "");
}

#[test]
fn compute_edgeless_and_parse_errors() {
    let dir = TempDir::new().unwrap();
    let e = dir.path().join("e4.txt");
    fs::write(&e, "4 0\n").unwrap();
    let o = run(&["compute", e.to_str().unwrap(), "--which", "gamma_f,gamma,gamma_g"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(
        out.contains("gamma_f       4/1") && out.contains("gamma         4") && out.contains("gamma_g       4"),
        "{out}"
    );
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "3 1\n0 0\n").unwrap();
    let o = run(&["compute", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn compute_budget_exit_code() {
    let dir = TempDir::new().unwrap();
    let g = construct(
        dir.path(),
        "r200.txt",
        &["--family", "random", "-t", "200", "--seed", "1"],
    );
    let o = run(&["compute", &g, "--which", "gamma,gamma_g"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["compute", &g, "--which", "gamma,gamma_g", "--size-cap", "2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn sweep_header_only_and_deterministic() {
    let o = run(&["random-sweep", "--trials", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);
    assert!(stdout(&o).starts_with("label,n,seed,delta,Delta,gamma_f_exact"));
    let args = ["random-sweep", "--n-list", "12,20", "--trials", "3", "--seed", "11"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(text.lines().count(), 7);
    let ns: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(ns, ["12", "12", "12", "20", "20", "20"]);
    assert!(text.lines().skip(1).all(|l| l.contains(",true,")));
}

#[test]
fn sweep_summary_file() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("trials.csv");
    let summary = dir.path().join("summary.csv");
    let o = run(&[
        "random-sweep",
        "--n-list",
        "10",
        "--trials",
        "4",
        "--out",
        out.to_str().unwrap(),
        "--summary",
        summary.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = fs::read_to_string(summary).unwrap();
    assert!(s.lines().nth(1).unwrap().starts_with("10,4,"));
}

#[test]
fn bounds_table_default_sweep() {
    let o = run(&["bounds-table"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for line in out.lines().skip(1) {
        let tighter = line.split(',').nth(9).unwrap();
        if line.starts_with("clique_chain_H") {
            assert_eq!(tighter, "ratio_form", "{line}");
        } else {
            assert_eq!(tighter, "cssf_form", "{line}");
        }
    }
    assert_eq!(out.lines().count(), 9);
}

#[test]
fn bounds_table_single_vertex() {
    let dir = TempDir::new().unwrap();
    let k1 = dir.path().join("k1.txt");
    fs::write(&k1, "1 0\n").unwrap();
    let o = run(&["bounds-table", k1.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let row = stdout(&o).lines().nth(1).unwrap().to_string();
    assert!(row.starts_with("k1,1,0,0,1/1,1,"), "{row}");
}

#[test]
fn certify_bundles() {
    let dir = TempDir::new().unwrap();
    let h = construct(dir.path(), "h4.txt", &["--family", "clique_chain_H", "-t", "4"]);
    let o = run(&["certify", &h]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("dual_total 4/1") && out.contains("gap 0/1"));
    for section in ["[lp]", "[greedy_trace]", "[packing]", "[w_sum_audit]"] {
        assert!(out.contains(section));
    }
    let c5 = dir.path().join("c5.txt");
    fs::write(&c5, "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n").unwrap();
    let out = stdout(&run(&["certify", c5.to_str().unwrap()]));
    assert!(
        out.contains("primal_total 5/3") && out.contains("dual_total 5/3"),
        "{out}"
    );
    let e3 = dir.path().join("e3.txt");
    fs::write(&e3, "3 0\n").unwrap();
    let out = stdout(&run(&["certify", e3.to_str().unwrap()]));
    assert!(out.contains("min_slack 0/1"), "{out}");
    assert!(out.contains("\n0 1/1 0/1\n"), "{out}");
}
