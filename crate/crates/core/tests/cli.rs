use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use alphasec::{make_polygon, BodySpec, Point};
use serde_json::Value;

fn dir() -> PathBuf {
    let d = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    fs::create_dir_all(&d).unwrap();
    d
}

fn body_file(name: &str, json: &str) -> PathBuf {
    let p = dir().join(name);
    fs::write(&p, json).unwrap();
    p
}

fn square() -> PathBuf {
    body_file(
        "square.json",
        r#"{"type":"polygon","vertices":[[0,0],[1,0],[1,1],[0,1]]}"#,
    )
}

fn triangle() -> PathBuf {
    body_file("triangle.json", r#"{"type":"polygon","vertices":[[0,0],[1,0],[0,1]]}"#)
}

fn alphasec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alphasec"))
        .args(args)
        .output()
        .unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn critical_triangle_reports_four_ninths() {
    let out = alphasec(&["critical", path(&triangle()), "--tol", "1e-8"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let ak = v["alpha_K"].as_f64().unwrap();
    assert!((ak - 4.0 / 9.0).abs() < 1e-6, "{ak}");
    assert!(String::from_utf8_lossy(&out.stdout).contains("0.444444"));
    let t = v["T"].as_array().unwrap();
    assert!((t[0].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-5);
}

#[test]
fn envelope_svg_has_one_polyline() {
    let svg = dir().join("square_envelope.svg");
    let out = alphasec(&[
        "envelope",
        path(&square()),
        "--alpha",
        "0.25",
        "--samples",
        "1024",
        "--format",
        "svg",
        "--out",
        path(&svg),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<polyline").count(), 1);
    assert!(text.contains("viewBox=\"0 0 1000 1000\""));
    let summary = String::from_utf8(out.stdout).unwrap();
    assert_eq!(summary.lines().count(), 1);
    assert!(summary.starts_with("envelope alpha=0.25"));
}

#[test]
fn core_above_one_half_is_empty() {
    let out = alphasec(&["core", path(&square()), "--alpha", "0.7"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["kind"], "empty");
}

#[test]
fn region_core_round_trips_as_a_polygon() {
    let out = alphasec(&["core", path(&square()), "--alpha", "0.2", "--samples", "512"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["kind"], "region");
    let spec: BodySpec = serde_json::from_value(serde_json::json!({
        "type": "polygon",
        "vertices": v["vertices"],
    }))
    .unwrap();
    let BodySpec::Polygon { vertices } = &spec else {
        unreachable!()
    };
    let pts: Vec<Point> = vertices.iter().map(|&a| Point::from(a)).collect();
    assert!(make_polygon(&pts).is_ok());
}

#[test]
fn output_is_deterministic() {
    let sq = square();
    for args in [
        vec!["core", path(&sq), "--alpha", "0.3", "--samples", "256"],
        vec!["envelope", path(&sq), "--alpha", "0.1", "--samples", "128"],
        vec![
            "oracle",
            path(&sq),
            "--theta",
            "0.3",
            "--offset",
            "0.2",
            "--samples",
            "20000",
            "--seed",
            "9",
        ],
    ] {
        let a = alphasec(&args);
        let b = alphasec(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn numbers_have_twelve_significant_digits() {
    let out = alphasec(&["bisected", path(&triangle())]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("0.444444444444"), "{text}");
    assert!(!text.contains("0.4444444444444"));
}

#[test]
fn two_body_commands() {
    let disc = body_file("disc.json", r#"{"type":"disc","center":[0,0],"radius":1}"#);
    let tri = body_file(
        "incircle_triangle.json",
        r#"{"type":"polygon","vertices":[[-1.7320508075688772,-1],[1.7320508075688772,-1],[0,2]]}"#,
    );
    let out = alphasec(&["containment", path(&disc), path(&tri), "--alpha", "0.45"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["contained"], true);
    assert!((v["alpha1"].as_f64().unwrap() - 0.40716).abs() < 5e-5);

    let out = alphasec(&[
        "conjecture",
        path(&disc),
        path(&tri),
        "--alpha",
        "0.2",
        "--samples",
        "128",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_ne!(json(&out)["witness"], "violation");

    let out = alphasec(&["containment", path(&disc), "--alpha", "0.2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn classify_and_oracle_reports() {
    let out = alphasec(&["classify", path(&square()), "--alpha", "0.25", "--theta", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["labels"], serde_json::json!(["Z"]));

    let out = alphasec(&["classify", path(&triangle()), "--alpha", "0.3", "--samples", "256"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["measure"]["B"].as_f64().unwrap() > 0.0);

    let out = alphasec(&[
        "oracle",
        path(&square()),
        "--theta",
        "0",
        "--offset",
        "0.25",
        "--samples",
        "1000000",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let (e, s) = (v["estimate"].as_f64().unwrap(), v["sigma"].as_f64().unwrap());
    assert!((e - 0.25).abs() <= 3.0 * s, "{e} {s}");
}

#[test]
fn exit_codes() {
    let bad = body_file("bad.json", r#"{"type":"polygon","vertices":[[0,0],[1"#);
    let flat = body_file("flat.json", r#"{"type":"polygon","vertices":[[0,0],[1,0],[2,0]]}"#);
    let missing = dir().join("does_not_exist.json");
    assert_eq!(alphasec(&["core", path(&bad), "--alpha", "0.2"]).status.code(), Some(2));
    assert_eq!(
        alphasec(&["core", path(&flat), "--alpha", "0.2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        alphasec(&["core", path(&missing), "--alpha", "0.2"]).status.code(),
        Some(2)
    );
    assert_eq!(alphasec(&["core", path(&square())]).status.code(), Some(2));
    assert_eq!(alphasec(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        alphasec(&["core", path(&square()), "--alpha", "1.5"]).status.code(),
        Some(3)
    );
    assert_eq!(
        alphasec(&["core", path(&square()), "--alpha", "0.2", "--samples", "8"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        alphasec(&["critical", path(&square()), "--tol", "1e-12"]).status.code(),
        Some(3)
    );
    assert_eq!(
        alphasec(&["critical", path(&square()), "--tol", "1e-9"]).status.code(),
        Some(3)
    );
    let out = alphasec(&[
        "core",
        path(&square()),
        "--alpha",
        "0.2",
        "--out",
        "/nonexistent/dir/x.json",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn thread_cap_is_honoured() {
    let a = alphasec(&["core", path(&square()), "--alpha", "0.3", "--samples", "256"]);
    let b = Command::new(env!("CARGO_BIN_EXE_alphasec"))
        .args(["core", path(&square()), "--alpha", "0.3", "--samples", "256"])
        .env("ALPHASEC_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(b.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
