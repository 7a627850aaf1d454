use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn faigle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_faigle"))
        .args(args)
        .env_remove("FAIGLE_MAX_ELEMENTS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn file(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

const C3: &str = "lattice 3\ncover 0 1\ncover 1 2\n";
const B2: &str = "lattice 4\ncover 0 1\ncover 0 2\ncover 1 3\ncover 2 3\n";
const LOPSIDED: &str = "geometry\nposet 3\nlabel 0 a\nlabel 1 b\nlabel 2 c\n\
    flat\nflat 0\nflat 1\nflat 2\nflat 0 1\nflat 0 1 2\n";

#[test]
fn rectangular_extension_of_three_chain() {
    let dir = tempfile::tempdir().unwrap();
    let input = file(dir.path(), "c3.txt", C3);
    let steps = dir.path().join("steps.jsonl");
    let out = faigle(&[
        "extend-rectangular",
        input.to_str().unwrap(),
        "--steps",
        steps.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("lattice 4\n"));
    let k = faigle::text::parse_lattice(&text).unwrap();
    assert!(faigle::find_isomorphism(&k, &faigle::Lattice::boolean(2)).is_some());
    let log = std::fs::read_to_string(steps).unwrap();
    assert_eq!(log.lines().count(), 1);
    let record: serde_json::Value = serde_json::from_str(log.lines().next().unwrap()).unwrap();
    assert_eq!(record["kind"], "chain_corner");
    assert_eq!(record["size"], 4);
}

#[test]
fn geometric_extension_json() {
    let dir = tempfile::tempdir().unwrap();
    let input = file(
        dir.path(),
        "c4.txt",
        "lattice 4\ncover 0 1\ncover 1 2\ncover 2 3\n",
    );
    let out = faigle(&["extend-geometric", input.to_str().unwrap(), "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["lattice"]["size"], 8);
    let steps = v["steps"].as_array().unwrap();
    assert!(!steps.is_empty());
    for s in steps {
        assert!(s["k_after"].as_u64() < s["k_before"].as_u64());
    }
}

#[test]
fn axiom_report_with_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let input = file(dir.path(), "g.txt", LOPSIDED);
    let out = faigle(&["check-axioms", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("CP  fails: u = c, X = {a}"), "{text}");
    assert!(text.contains("FEP fails: u = c, v = b, S = {a}"));
    let out = faigle(&["check-axioms", input.to_str().unwrap(), "-f", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["holds_cp"], false);
    assert_eq!(v["cp"]["u"], 2);
    assert_eq!(v["cp"]["x"], serde_json::json!([0]));
}

#[test]
fn dot_export_of_square() {
    let dir = tempfile::tempdir().unwrap();
    let input = file(dir.path(), "b2.txt", B2);
    let out = faigle(&["export-dot", input.to_str().unwrap()]);
    assert!(out.status.success());
    let dot = stdout(&out);
    assert_eq!(dot.matches("label=").count(), 4);
    assert_eq!(dot.matches("->").count(), 4);
    assert!(dot.contains("rankdir=BT"));
    assert!(dot.contains("{ rank=same; n0; }"));
}

#[test]
fn errors_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = file(dir.path(), "bad.txt", "lattice 2\n\ncover 0 x\n");
    let out = faigle(&["geom", bad.to_str().unwrap(), "--error-json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(stderr(&out).trim()).unwrap();
    assert_eq!(v["error"], "ParseError");
    assert_eq!(v["line"], 3);

    let chain = file(dir.path(), "c3.txt", C3);
    let out = faigle(&["delta", chain.to_str().unwrap(), "--error-json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("\"IsAChain\""));

    let n5 = file(
        dir.path(),
        "n5.txt",
        "lattice 5\ncover 0 1\ncover 1 3\ncover 0 2\ncover 2 4\ncover 3 4\n",
    );
    let out = faigle(&["geom", n5.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("not semimodular"));

    let out = faigle(&["geom", dir.path().join("missing").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn congruences_closure_and_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let b2 = file(dir.path(), "b2.txt", B2);
    let out = faigle(&["congruences", b2.to_str().unwrap()]);
    assert_eq!(stdout(&out).matches("congruence 4").count(), 4);

    let out = faigle(&["roundtrip", b2.to_str().unwrap()]);
    assert_eq!(stdout(&out), "lattice roundtrip: true\n");

    let out = faigle(&[
        "geom",
        b2.to_str().unwrap(),
        "-o",
        dir.path().join("g.txt").to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let g = dir.path().join("g.txt");
    let out = faigle(&["roundtrip", g.to_str().unwrap()]);
    assert_eq!(stdout(&out), "geometry roundtrip: true\n");
    let out = faigle(&["closure", g.to_str().unwrap(), "--set", "0"]);
    assert_eq!(stdout(&out), "0\n");
    let out = faigle(&["flats", g.to_str().unwrap()]);
    assert!(stdout(&out).starts_with("lattice 4\n"));

    let c3 = file(dir.path(), "c3.txt", C3);
    let out = faigle(&[
        "verify-cpe",
        c3.to_str().unwrap(),
        b2.to_str().unwrap(),
        "--map",
        "0 1 3",
    ]);
    assert_eq!(stdout(&out), "true\n");
    let out = faigle(&[
        "verify-cpe",
        c3.to_str().unwrap(),
        b2.to_str().unwrap(),
        "--map",
        "0 1 1",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn enumeration_outputs() {
    let out = faigle(&["enumerate", "--max", "5"]);
    let ls = faigle::text::parse_lattices(&stdout(&out)).unwrap();
    assert_eq!(ls.len(), 1 + 1 + 1 + 2 + 5);

    let out = Command::new(env!("CARGO_BIN_EXE_faigle"))
        .args(["enumerate", "--filter", "semimodular"])
        .env("FAIGLE_MAX_ELEMENTS", "5")
        .output()
        .unwrap();
    let ls = faigle::text::parse_lattices(&stdout(&out)).unwrap();
    assert!(ls.iter().all(|l| l.is_semimodular() && l.len() <= 5));

    let dir = tempfile::tempdir().unwrap();
    let out = faigle(&[
        "enumerate",
        "--max",
        "4",
        "--dir",
        dir.path().join("out").to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_dir(dir.path().join("out")).unwrap().count(), 5);

    let out = faigle(&["enumerate", "--max", "11", "--error-json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("BoundExceeded"));

    let poset = file(dir.path(), "p.txt", "poset 3\ncover 0 2\n");
    let run = |seed: &str| {
        stdout(&faigle(&[
            "enumerate",
            "--closures",
            poset.to_str().unwrap(),
            "--count",
            "5",
            "--seed",
            seed,
        ]))
    };
    assert_eq!(run("3"), run("3"));
    assert_eq!(faigle::text::parse_geometries(&run("3")).unwrap().len(), 5);
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let input = file(
        dir.path(),
        "p.txt",
        "lattice 5\ncover 0 1\ncover 0 2\ncover 1 3\ncover 2 3\ncover 3 4\n",
    );
    for cmd in [
        "extend-rectangular",
        "extend-geometric",
        "congruences",
        "delta",
        "geom",
    ] {
        let a = faigle(&[cmd, input.to_str().unwrap(), "-f", "json"]);
        let b = faigle(&[cmd, input.to_str().unwrap(), "-f", "json"]);
        assert!(a.status.success(), "{cmd}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{cmd}");
    }
}
