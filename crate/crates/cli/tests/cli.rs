use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_prodcurves"));
    c.env_remove("PRODCURVES_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn build(dir: &Path, name: &str, params: &[&str]) -> PathBuf {
    let path = dir.join(format!("{name}.json"));
    let mut args = vec!["gallery", "build", name, "--out", path.to_str().unwrap()];
    for p in params {
        args.extend(["--param", p]);
    }
    let o = run(&args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn factorize_reports_no_circle_directions_on_the_cyclic_surface() {
    let dir = tempfile::tempdir().unwrap();
    let m = build(dir.path(), "example_2B4", &["n=4"]);
    let o = run(&["factorize", m.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["fibers"]["J_M"], serde_json::json!([]));
    assert!(r["fibers"]["rank_data"]["b1"].as_u64().unwrap() >= 8);
    assert_eq!(r["classification"]["pseudo"], true);
}

#[test]
fn dunce_hat_gets_a_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let d = build(dir.path(), "dunce_hat", &[]);
    let o = run(&["certify-nonembed", d.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["verdict"]["certificate"]["rule"], "2E.1(i)");
    assert_eq!(r["verdict"]["b1"], 0);
}

#[test]
fn disc_embeds_in_trees() {
    let dir = tempfile::tempdir().unwrap();
    let d = build(dir.path(), "disc", &[]);
    let o = run(&["embed-trees", d.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["verification"]["passed"], true);
    assert_eq!(r["trees"], serde_json::json!([true, true]));
    assert_eq!(r["factors"].as_array().unwrap().len(), 2);
    assert!(!r["map"].as_object().unwrap().is_empty());
}

#[test]
fn reports_are_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    for name in [
        "torus",
        "example_2B3",
        "klein_bottle",
        "bing_house",
        "theta",
    ] {
        let path = build(dir.path(), name, &[]);
        // write → read → write reproduces the file exactly
        let v = run(&["validate", path.to_str().unwrap()]);
        assert_eq!(code(&v), 0, "{name}");
        let again = build(dir.path(), name, &[]);
        assert_eq!(
            std::fs::read(&path).unwrap(),
            std::fs::read(&again).unwrap()
        );
        for cmd in ["betti", "classify", "certify-nonembed"] {
            let a = run(&[cmd, path.to_str().unwrap()]);
            let b = run(&[cmd, path.to_str().unwrap()]);
            assert_eq!(a.stdout, b.stdout, "{name} {cmd}");
        }
        // a report written with --out matches standard output
        let out = dir.path().join(format!("{name}.betti.json"));
        let a = run(&[
            "betti",
            path.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code(&a), 0);
        assert!(a.stdout.is_empty());
        assert_eq!(
            std::fs::read(&out).unwrap(),
            run(&["betti", path.to_str().unwrap()]).stdout
        );
    }
}

#[test]
fn reformatted_input_has_the_same_digest() {
    let dir = tempfile::tempdir().unwrap();
    let path = build(dir.path(), "annulus", &[]);
    let v: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    let compact = dir.path().join("compact.json");
    std::fs::write(&compact, serde_json::to_string(&v).unwrap()).unwrap();
    let a = json(&run(&["validate", path.to_str().unwrap()]));
    let b = json(&run(&["validate", compact.to_str().unwrap()]));
    assert_eq!(a["digest"], b["digest"]);
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.json");
    let out = out.to_str().unwrap();
    assert_eq!(code(&run(&[])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["betti", "/nonexistent/file.json"])), 2);
    assert_eq!(
        code(&run(&["gallery", "build", "nothing", "--out", out])),
        2
    );
    assert_eq!(
        code(&run(&[
            "gallery",
            "build",
            "example_2B4",
            "--param",
            "n=3",
            "--out",
            out
        ])),
        2
    );
    assert_eq!(
        code(&run(&[
            "gallery", "build", "torus", "--param", "p", "--out", out
        ])),
        2
    );
    let disc = build(dir.path(), "disc", &[]);
    assert_eq!(code(&run(&["factorize", disc.to_str().unwrap()])), 2);
    let torus = build(dir.path(), "torus", &[]);
    assert_eq!(
        code(&run(&["fibers", torus.to_str().unwrap(), "--J", "3"])),
        2
    );
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn check_failures_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"format": "prodcurves-simplicial/1", "simplices": [["a"]], "x": 0}"#,
    )
    .unwrap();
    assert_eq!(code(&run(&["validate", bad.to_str().unwrap()])), 1);
    std::fs::write(&bad, "not json").unwrap();
    assert_eq!(code(&run(&["betti", bad.to_str().unwrap()])), 1);
    // a non-collapsible complex has no tree embedding
    let hat = build(dir.path(), "dunce_hat", &[]);
    assert_eq!(code(&run(&["embed-trees", hat.to_str().unwrap()])), 1);
    // not ramified, so no factorization
    let house = build(dir.path(), "bing_house", &[]);
    assert_eq!(code(&run(&["factorize", house.to_str().unwrap()])), 1);
    // graphs have no mesh
    let theta = build(dir.path(), "theta", &[]);
    let off = dir.path().join("t.off");
    assert_eq!(
        code(&run(&[
            "export-mesh",
            theta.to_str().unwrap(),
            "--out",
            off.to_str().unwrap()
        ])),
        1
    );
    assert!(!off.exists());
}

fn off_counts(path: &Path) -> (i64, i64, i64) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("OFF"));
    let n: Vec<i64> = lines
        .next()
        .unwrap()
        .split(' ')
        .map(|x| x.parse().unwrap())
        .collect();
    (n[0], n[1], n[2])
}

#[test]
fn mesh_export() {
    let dir = tempfile::tempdir().unwrap();
    let off = dir.path().join("m.off");
    let torus = build(dir.path(), "torus", &["p=2", "q=2"]);
    let o = run(&[
        "export-mesh",
        torus.to_str().unwrap(),
        "--out",
        off.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(off_counts(&off), (4, 4, 8));

    let m = build(dir.path(), "example_2B4", &["n=4"]);
    run(&[
        "export-mesh",
        m.to_str().unwrap(),
        "--out",
        off.to_str().unwrap(),
    ]);
    let (v, f, e) = off_counts(&off);
    assert_eq!(v - e + f, -8);

    let hat = build(dir.path(), "dunce_hat", &[]);
    let o = run(&[
        "export-mesh",
        hat.to_str().unwrap(),
        "--out",
        off.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("polygon soup"));
    assert_eq!(off_counts(&off).1, 17);
}

#[test]
fn seed_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let w = dir.path().join("w.json");
    let o = bin()
        .env("PRODCURVES_SEED", "42")
        .args([
            "gallery",
            "random",
            "--size",
            "20",
            "--out",
            a.to_str().unwrap(),
        ])
        .args(["--witness-out", w.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["seed"], 42);
    run(&[
        "gallery",
        "random",
        "--size",
        "20",
        "--seed",
        "42",
        "--out",
        b.to_str().unwrap(),
    ]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let e = run(&[
        "embed-trees",
        a.to_str().unwrap(),
        "--witness",
        w.to_str().unwrap(),
    ]);
    assert_eq!(code(&e), 0, "{}", String::from_utf8_lossy(&e.stderr));
    assert_eq!(json(&e)["verification"]["passed"], true);

    let r = bin()
        .env("PRODCURVES_SEED", "7")
        .args(["collapse", a.to_str().unwrap(), "--strategy", "seeded"])
        .output()
        .unwrap();
    assert_eq!(json(&r)["seed"], 7);
}

#[test]
fn collapse_search_and_greedy() {
    let dir = tempfile::tempdir().unwrap();
    let hat = build(dir.path(), "dunce_hat", &[]);
    let g = json(&run(&["collapse", hat.to_str().unwrap()]));
    assert_eq!(g["collapse"]["sequence"]["steps"], serde_json::json!([]));
    let s = json(&run(&["collapse", hat.to_str().unwrap(), "--search"]));
    assert_eq!(s["collapse"]["search"], "exhausted");
    let fan = build(dir.path(), "fan", &[]);
    let s = json(&run(&[
        "collapse",
        fan.to_str().unwrap(),
        "--search",
        "--budget",
        "10000",
    ]));
    assert_eq!(s["collapse"]["search"], "found");
    assert_eq!(s["collapse"]["sequence"]["remainder_class"], "point");
}

#[test]
fn cone_and_fibers() {
    let dir = tempfile::tempdir().unwrap();
    let theta = build(dir.path(), "theta", &[]);
    let c = run(&["cone-embed", theta.to_str().unwrap()]);
    assert_eq!(code(&c), 0);
    let c = json(&c);
    assert_eq!(c["verification"]["passed"], true);
    assert_eq!(c["factors"].as_array().unwrap().len(), 2);

    let torus = build(dir.path(), "torus", &["p=3", "q=4"]);
    let f = json(&run(&["fibers", torus.to_str().unwrap(), "--J", "1"]));
    let fibers = f["fiber_data"]["fibers"].as_array().unwrap();
    // one fiber per cell of the second circle, each a whole circle over a vertex
    assert_eq!(fibers.len(), 8);
    assert!(fibers
        .iter()
        .all(|x| x["components"].as_array().unwrap().len() == 1));
}

#[test]
fn gallery_list_names_every_item() {
    let o = run(&["gallery", "list"]);
    assert_eq!(code(&o), 0);
    let names: Vec<String> = json(&o)["items"]
        .as_array()
        .unwrap()
        .iter()
        .map(|i| i["name"].as_str().unwrap().to_string())
        .collect();
    assert!(names.contains(&"example_2B4".to_string()));
    assert!(names.contains(&"dunce_hat".to_string()));
}

#[test]
fn failing_expectations_still_write_the_complex() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m5.json");
    let o = run(&[
        "gallery",
        "build",
        "example_2B4",
        "--param",
        "n=5",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["all_hold"], false);
    assert!(out.exists());
}
