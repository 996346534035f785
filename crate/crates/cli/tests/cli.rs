use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gweave::save_gframe;
use gweave_core::papersuite::{
    build_example_43, build_example_44, build_example_th35, build_example_weaving_i, build_projection_gframe,
    ProjectionCodomain,
};
use gweave_core::weaving::weave;
use gweave_core::{GFrame, Matrix, WeavingSelection};
use serde_json::Value;
use tempfile::TempDir;

fn gweave(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gweave"))
        .args(args)
        .env_remove("GWEAVE_EXHAUSTIVE_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let o = gweave(&all);
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stderr)))
}

fn write(dir: &TempDir, name: &str, f: &GFrame) -> PathBuf {
    let p = dir.path().join(name);
    save_gframe(&p, f).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn bounds_of_projection_zero_and_duplicated_families() {
    let dir = TempDir::new().unwrap();
    let proj = write(&dir, "proj.json", &build_projection_gframe(5, ProjectionCodomain::Single).unwrap());
    let r = json(&["bounds", s(&proj)]);
    assert_eq!(r["results"]["lower"].as_f64().unwrap(), 1.0);
    assert_eq!(r["results"]["upper"].as_f64().unwrap(), 1.0);
    assert_eq!(r["results"]["is_g_frame"], true);
    assert_eq!(r["inputs"][0]["sha256"].as_str().unwrap().len(), 64);

    let zero = write(&dir, "zero.json", &GFrame::new(3, vec![Matrix::zeros(2, 3)]).unwrap());
    let o = gweave(&["bounds", s(&zero)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("g-frame: no"));

    let lam = write(&dir, "lam44.json", &build_example_44(4).unwrap().f);
    let r = json(&["bounds", s(&lam)]);
    assert!((r["results"]["lower"].as_f64().unwrap() - 2.0).abs() < 1e-9);
    assert!((r["results"]["upper"].as_f64().unwrap() - 2.0).abs() < 1e-9);
}

#[test]
fn woven_verdicts() {
    let dir = TempDir::new().unwrap();
    let ex = build_example_weaving_i(8).unwrap();
    let (f, g) = ex.pair();
    let (pf, pg) = (write(&dir, "f.json", f), write(&dir, "g.json", g));
    let o = gweave(&["woven", s(&pf), s(&pg)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("NOT WOVEN, certificate σ={1} (σ=0b00000001)"), "{}", stdout(&o));
    let r = json(&["woven", s(&pf), s(&pg)]);
    assert_eq!(r["results"]["certificate"]["indices"], serde_json::json!([1]));
    assert_eq!(r["results"]["certificate"]["bitmask"], "0b00000001");

    let ex = build_example_th35(9).unwrap();
    let (f, g) = ex.pair();
    let (pf, pg) = (write(&dir, "tf.json", f), write(&dir, "tg.json", g));
    let out = stdout(&gweave(&["woven", s(&pf), s(&pg), "--exhaustive"]));
    assert!(out.starts_with("WOVEN, A=0.5"), "{out}");
    let r = json(&["woven", s(&pf), s(&pg)]);
    assert!((r["results"]["universal"]["lower"].as_f64().unwrap() - 0.5).abs() < 1e-9);
    assert!((r["results"]["universal"]["upper"].as_f64().unwrap() - 1.5).abs() < 1e-9);

    // identical files: every weaving is the family itself
    let r = json(&["woven", s(&pf), s(&pf)]);
    let b = json(&["bounds", s(&pf)]);
    assert_eq!(r["results"]["universal"]["lower"], b["results"]["lower"]);
    assert_eq!(r["results"]["universal"]["upper"], b["results"]["upper"]);
}

#[test]
fn woven_search_and_cap() {
    let dir = TempDir::new().unwrap();
    let ex = build_example_th35(9).unwrap();
    let (f, g) = ex.pair();
    let (pf, pg) = (write(&dir, "f.json", f), write(&dir, "g.json", g));
    let o = gweave(&["woven", s(&pf), s(&pg), "--cap", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
    let o = Command::new(env!("CARGO_BIN_EXE_gweave"))
        .args(["woven", s(&pf), s(&pg)])
        .env("GWEAVE_EXHAUSTIVE_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));

    let a = json(&["woven", s(&pf), s(&pg), "--search", "16", "--seed", "3"]);
    let b = json(&["woven", s(&pf), s(&pg), "--search", "16", "--seed", "3"]);
    assert_eq!(a["results"], b["results"]);
    assert_eq!(a["results"]["universal"]["method"], "search");
    assert!(a["results"]["universal"]["lower"].as_f64().unwrap() >= 0.5 - 1e-12);

    let o = gweave(&["woven", s(&pf), s(&pg), "--search", "4", "--exhaustive"]);
    assert_eq!(o.status.code(), Some(2));

    let short = write(&dir, "short.json", &build_projection_gframe(7, ProjectionCodomain::Single).unwrap());
    let o = gweave(&["woven", s(&pf), s(&short)]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_kinds() {
    let dir = TempDir::new().unwrap();
    let om = write(&dir, "om44.json", build_example_44(4).unwrap().pair().1);
    let r = json(&["check", s(&om), "riesz"]);
    assert_eq!(r["results"]["verdict"], true);
    assert!((r["results"]["details"]["lower"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert!((r["results"]["details"]["upper"].as_f64().unwrap() - 1.0).abs() < 1e-9);

    let proj = write(&dir, "proj.json", &build_projection_gframe(6, ProjectionCodomain::Single).unwrap());
    assert_eq!(json(&["check", s(&proj), "onb"])["results"]["verdict"], true);
    assert_eq!(json(&["check", s(&proj), "frame"])["results"]["verdict"], true);

    let ex = build_example_43(8).unwrap();
    let (f, g) = ex.pair();
    let sigma = WeavingSelection::from_one_based(8, &[1, 2]).unwrap();
    let w = write(&dir, "w.json", &weave(f, g, &sigma).unwrap());
    let r = json(&["check", s(&w), "exact"]);
    assert_eq!(r["results"]["verdict"], false);
    let removable: Vec<u64> = r["results"]["details"]["removable"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert!(removable.contains(&2), "{removable:?}");
    assert_eq!(json(&["check", s(&w), "riesz"])["results"]["verdict"], false);

    let o = gweave(&["check", s(&proj), "dual-with"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn dual_and_parseval_outputs() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", &build_example_44(2).unwrap().f);
    let dual = dir.path().join("dual.json");
    let o = gweave(&["dual", s(&f), "-o", s(&dual)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&["check", s(&f), "dual-with", s(&dual)])["results"]["verdict"], true);
    let r = json(&["bounds", s(&dual)]);
    assert!((r["results"]["upper"].as_f64().unwrap() - 0.5).abs() < 1e-12);

    let r = json(&["transform-parseval", s(&f)]);
    assert!((r["results"]["lower"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    let doc = serde_json::to_string(&r["results"]["document"]).unwrap();
    let t = gweave::parse_gframe(&doc).unwrap();
    assert_eq!(t.len(), 4);
}

#[test]
fn malformed_inputs_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"schema_version\": \"gweave/1\",\n  nope\n}").unwrap();
    let o = gweave(&["bounds", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));

    let schema = dir.path().join("schema.json");
    std::fs::write(
        &schema,
        r#"{"schema_version":"gweave/1","scalar_mode":"real","domain_dim":2,
            "operators":[{"label":"lambda-7","rows":2,"entries_real":[1,0,0]}]}"#,
    )
    .unwrap();
    let o = gweave(&["bounds", s(&schema)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("lambda-7"));

    let o = gweave(&["bounds", s(&dir.path().join("missing.json"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn paper_suite_runs() {
    let o = gweave(&["paper-suite"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 failed"));

    let a = json(&["paper-suite", "--dim-scale", "4"]);
    assert_eq!(a["results"]["passed"], true);
    assert_eq!(a["results"]["config"]["ex43_n"], 12);
    let b = json(&["paper-suite", "--dim-scale", "4"]);
    assert_eq!(a["results"], b["results"]);

    let r = json(&["paper-suite", "--cap", "4"]);
    let strict = r["results"]["records"]
        .as_array()
        .unwrap()
        .iter()
        .find(|x| x["name"] == "strict-universal-bounds")
        .unwrap();
    assert_eq!(strict["method"], "search");
    assert!(strict["detail"].as_str().unwrap().contains("exceeds the exhaustive cap"));
}
