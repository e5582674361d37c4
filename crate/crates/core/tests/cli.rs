use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const EXAMPLES: [&str; 3] = ["two_abscissas.json", "triangle.json", "square.json"];

fn graph(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("examples/graphs")
        .join(name)
}

fn qgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgraph"))
        .args(args)
        .env_remove("QGRAPH_ORBIT_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8 stderr")
}

fn json(args: &[&str]) -> Value {
    let o = qgraph(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
    serde_json::from_slice(&o.stdout).expect("json output")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qgraph-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn every_subcommand_succeeds_on_examples() {
    for name in EXAMPLES {
        let path = graph(name);
        let p = path.to_str().unwrap();
        let cases: Vec<Vec<&str>> = vec![
            vec!["validate", p],
            vec!["condition", p],
            vec!["orbits", p],
            vec!["reduce", p],
            vec!["effective-size", p],
            vec!["classify", p],
            vec!["resonances", "--rmax", "10", p],
            vec!["count", "--rmax", "20", "--steps", "5", p],
            vec!["count", "--rmax", "8", "--steps", "3", "--numeric", p],
            vec!["evaluate", "--k", "1.5,-0.25", "--k", "1pi,0", p],
        ];
        for args in cases {
            let o = qgraph(&args);
            assert_eq!(o.status.code(), Some(0), "{name} {args:?}: {}", stderr(&o));
            assert!(!o.stdout.is_empty(), "{name} {args:?}");
        }
    }
}

#[test]
fn condition_of_two_abscissas() {
    let v = json(&["condition", graph("two_abscissas.json").to_str().unwrap()]);
    let terms: Vec<(String, String)> = v["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| {
            (
                t["length"].as_str().unwrap().into(),
                t["coefficient"].as_str().unwrap().into(),
            )
        })
        .collect();
    assert_eq!(terms, [("0".into(), "1".into()), ("2".into(), "-1".into())]);
}

#[test]
fn triangle_condition_and_reduction() {
    let p = graph("triangle.json");
    let v = json(&["condition", p.to_str().unwrap()]);
    let coeffs: Vec<&str> = v["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["coefficient"].as_str().unwrap())
        .collect();
    assert_eq!(coeffs, ["1", "-3/4", "-1/4"]);

    let r = json(&["reduce", p.to_str().unwrap()]);
    assert_eq!(r["matches_unreduced"], Value::Bool(true));
    let deleted: Vec<&str> = r["deletions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["bond"].as_str().unwrap())
        .collect();
    assert_eq!(deleted, ["1^", "2^", "3^"]);
    assert_eq!(r["ghosts"].as_array().unwrap().len(), 3);

    let explicit = json(&[
        "reduce",
        "--delete",
        "1:1^",
        "--delete",
        "2:2^",
        "--delete",
        "3:3^",
        p.to_str().unwrap(),
    ]);
    assert_eq!(explicit, r);
}

#[test]
fn effective_size_and_classification() {
    for (name, w, class) in [
        ("two_abscissas.json", "1ℓ", "non_weyl"),
        ("triangle.json", "3/2ℓ", "non_weyl"),
        ("square.json", "1ℓ", "non_weyl"),
    ] {
        let p = graph(name);
        let e = json(&["effective-size", p.to_str().unwrap()]);
        assert_eq!(e["W"], w, "{name}");
        let c = json(&["classify", p.to_str().unwrap()]);
        assert_eq!(c["class"], class, "{name}");
    }
    let c = json(&["classify", graph("square.json").to_str().unwrap()]);
    assert_eq!(c["balanced_vertices"], serde_json::json!([1, 2, 3, 4]));
}

#[test]
fn resonance_csv_for_two_abscissas() {
    let o = qgraph(&[
        "resonances",
        "--rmax",
        "4",
        graph("two_abscissas.json").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("re_k,im_k,multiplicity,family_id,type"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 3);
    for row in &rows {
        assert_eq!(row[4], "eigenvalue");
        assert!(row[1].parse::<f64>().unwrap().abs() < 1e-12);
    }
}

#[test]
fn count_csv_has_summary() {
    let o = qgraph(&[
        "count",
        "--rmax",
        "50",
        "--steps",
        "10",
        graph("triangle.json").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("radius,count\n"));
    let summary = text
        .lines()
        .find_map(|l| l.strip_prefix("# "))
        .expect("summary line");
    let v: Value = serde_json::from_str(summary).unwrap();
    assert_eq!(v["W"], 1.5);
    let counts: Vec<usize> = text
        .lines()
        .skip(1)
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(counts.len(), 10);
    assert!(counts.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn json_format_override() {
    let v = json(&[
        "--format",
        "json",
        "resonances",
        "--rmax",
        "4",
        graph("triangle.json").to_str().unwrap(),
    ]);
    assert!(v.is_array() || v.is_object());
}

#[test]
fn output_is_deterministic() {
    for name in EXAMPLES {
        let p = graph(name);
        for args in [
            vec!["orbits", p.to_str().unwrap()],
            vec!["reduce", p.to_str().unwrap()],
            vec!["resonances", "--rmax", "15", p.to_str().unwrap()],
            vec![
                "count",
                "--rmax",
                "12",
                "--steps",
                "4",
                "--numeric",
                p.to_str().unwrap(),
            ],
        ] {
            let a = qgraph(&args);
            let mut threaded = vec!["--threads", "3"];
            threaded.extend(&args);
            let b = qgraph(&threaded);
            assert_eq!(a.stdout, b.stdout, "{name} {args:?}");
            assert_eq!(a.stdout, qgraph(&args).stdout, "{name} {args:?}");
        }
    }
}

#[test]
fn svg_plot_is_written() {
    let dir = std::env::temp_dir().join(format!("qgraph-svg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let svg = dir.join("triangle.svg");
    let o = qgraph(&[
        "resonances",
        "--rmax",
        "10",
        "--svg",
        svg.to_str().unwrap(),
        graph("triangle.json").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = stdout(&o).lines().count() - 1;
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg"));
    assert_eq!(text.matches("<circle").count(), rows);
}

#[test]
fn malformed_json_reports_position() {
    let path = scratch("bad.json", "{\"vertices\": [\n  {\"id\": 1, \"coupling\": \"standard\", \"halflines\": 1}\n  {\"id\": 2}\n]}\n");
    let o = qgraph(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("line 3"), "{err}");
    assert!(err.contains("column"), "{err}");
}

#[test]
fn invalid_graph_exits_2_with_every_violation() {
    let path = scratch(
        "invalid.json",
        r#"{"vertices":[{"id":1,"coupling":"standard","halflines":1}],
            "edges":[{"id":1,"from":1,"to":7,"length":"-1"}]}"#,
    );
    let o = qgraph(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["valid"], Value::Bool(false));
    assert_eq!(v["violations"].as_array().unwrap().len(), 2);

    let o = qgraph(&["condition", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown vertex 7"));
}

#[test]
fn usage_errors_exit_2() {
    let p = graph("triangle.json");
    assert_eq!(
        qgraph(&["condition", "--bogus", p.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(qgraph(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        qgraph(&["count", "--steps", "1", p.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qgraph(&["reduce", "--delete", "1:2", p.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    let missing = qgraph(&["condition", "no/such/graph.json"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(stderr(&missing).contains("no/such/graph.json"));
}

#[test]
fn decimal_lengths_are_a_capability_boundary() {
    let p = graph("mixed_lengths.json");
    for cmd in ["condition", "resonances", "effective-size"] {
        let o = qgraph(&[cmd, p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(3), "{cmd}: {}", stderr(&o));
    }
    assert_eq!(
        qgraph(&["evaluate", "--k", "2,-0.5", p.to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        qgraph(&["validate", p.to_str().unwrap()]).status.code(),
        Some(0)
    );
}

#[test]
fn orbit_cap_from_environment() {
    let p = graph("square.json");
    let o = Command::new(env!("CARGO_BIN_EXE_qgraph"))
        .args(["orbits", p.to_str().unwrap()])
        .env("QGRAPH_ORBIT_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("QGRAPH_ORBIT_CAP"));
    assert_eq!(
        qgraph(&["--orbit-cap", "5", "orbits", p.to_str().unwrap()])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        qgraph(&["--orbit-cap", "100", "orbits", p.to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );
}
