use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wittmod"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn tmp(name: &str) -> std::path::PathBuf {
    std::env::temp_dir().join(format!("wittmod-cli-{}-{name}", std::process::id()))
}

#[test]
fn identities_suite_passes() {
    let o = run(&["verify", "--suite", "identities", "--n", "2", "--deg", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn series_suite_reports_minimal_degree() {
    let o = run(&["verify", "--suite", "series", "--kmax", "2", "--smax", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("m=3 minimal"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        run(&["verify", "--suite", "nonsense"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "--suite", "modules", "--M", "ext:x"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["supp", "--P", "poly,bogus"]).status.code(), Some(2));
    assert_eq!(run(&["supp", "--Q", "Z,Z"]).status.code(), Some(2));
    assert_eq!(
        run(&["supp", "--P", "poly", "--svg", "x.svg"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn reports_are_reproducible() {
    let (a, b) = (tmp("a.json"), tmp("b.json"));
    for p in [&a, &b] {
        let o = run(&[
            "verify",
            "--suite",
            "identities",
            "--n",
            "1",
            "--deg",
            "3",
            "--seed",
            "7",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    let load = |p: &std::path::Path| {
        let mut v: Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
        v.as_object_mut().unwrap().remove("timestamp");
        v
    };
    let (ja, jb) = (load(&a), load(&b));
    assert_eq!(ja, jb);
    assert_eq!(ja["schema"], 1);
    assert_eq!(ja["config"]["seed"], 7);
    let _ = (std::fs::remove_file(a), std::fs::remove_file(b));
}

#[test]
fn natural_module_csv() {
    let o = run(&["supp", "--P", "poly,poly", "--M", "ext:1", "--radius", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("w1,w2,dim"));
    assert!(text.lines().any(|l| l == "1,1,2"));
    assert!(text.lines().any(|l| l == "0,1,1"));
}

#[test]
fn torsion_support_is_shifted_negative_quadrant() {
    let o = run(&["supp", "--P", "torsion,torsion", "--radius", "2"]);
    let text = stdout(&o);
    let rows: Vec<Vec<i64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r[0] <= -1 && r[1] <= -1 && r[2] == 1));
    assert!(rows.iter().any(|r| r[0] == -1 && r[1] == -1));
}

#[test]
fn svg_lattice() {
    let path = tmp("supp.svg");
    let o = run(&[
        "supp",
        "--P",
        "poly,laurent:1/2",
        "--M",
        "hw:2:1",
        "--radius",
        "2",
        "--svg",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("width=\"24\"").count(), 25 + 4);
    let _ = std::fs::remove_file(path);
}

#[test]
fn harish_chandra_verdicts() {
    assert_eq!(
        stdout(&run(&["supp", "--Q", "Z+,Z+,Z"])).trim(),
        "HarishChandra"
    );
    assert_eq!(
        stdout(&run(&["supp", "--Q", "Z,Z,Z"])).trim(),
        "UnboundedMultiplicity"
    );
}

#[test]
fn bracket_command() {
    let o = run(&["bracket", "--n", "1", "d_1", "t^(2) d_1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "2 t^(1) d_1");
}
