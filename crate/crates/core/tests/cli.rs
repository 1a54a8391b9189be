use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_diskdepth"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn generate_then_evaluate() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("pts.json");
    let p = pts.to_str().unwrap();
    let (code, _, err) = run(&["gen", "--kind", "uniform-square", "--n", "14", "--seed", "9", "--out", p]);
    assert_eq!(code, 0, "{err}");
    let (code, first, _) = run(&["gen", "--kind", "uniform-square", "--n", "14", "--seed", "9"]);
    assert_eq!(code, 0);
    assert_eq!(first, std::fs::read_to_string(&pts).unwrap());

    let (_, sweep, _) = run(&["cpair", "--points", p, "--p", "0", "--q", "3"]);
    let (_, oracle, _) = run(&["cpair", "--points", p, "--p", "0", "--q", "3", "--oracle"]);
    assert_eq!(sweep, oracle);
    let v: serde_json::Value = serde_json::from_str(&sweep).unwrap();
    assert!(v["c"].as_u64().unwrap() >= v["c_tilde"].as_u64().unwrap());

    for args in [
        vec!["profile", "--points", p, "--p", "1", "--q", "2"],
        vec!["search", "--points", p, "--alpha", "0.3", "--mode", "high-probability", "--target", "c"],
        vec!["maximize", "--points", p],
        vec!["decide", "--points", p, "--k", "2"],
        vec!["diametral", "--points", p],
    ] {
        let (code, out, err) = run(&args);
        assert_eq!(code, 0, "{args:?}: {err}");
        serde_json::from_str::<serde_json::Value>(&out).unwrap();
    }
}

#[test]
fn convex_and_geodesic_verbs() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("chain.json");
    let p = pts.to_str().unwrap();
    run(&["gen", "--kind", "regular-ngon", "--n", "12", "--out", p]);
    let (code, out, _) = run(&["convex-pair", "--points", p, "--convex-order"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["report"]["stats"]["c"].as_u64().unwrap() >= 3);
    assert_eq!(run(&["convex-pair", "--points", p]).0, 1);

    let g = dir.path().join("g.json");
    let poly = dir.path().join("poly.json");
    let (g, poly) = (g.to_str().unwrap(), poly.to_str().unwrap());
    let (code, _, err) = run(&[
        "gen", "--kind", "polygon-uniform", "--n", "6", "--vertices", "10", "--seed", "2", "--out", g, "--polygon-out", poly,
    ]);
    assert_eq!(code, 0, "{err}");
    let (code, out, err) = run(&["geo-cpair", "--polygon", poly, "--points", g, "--p", "0", "--q", "1", "--resolution", "0.1"]);
    assert_eq!(code, 0, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["upper_bound"].as_u64().unwrap() <= 4);
    let (code, _, err) = run(&["geo-search", "--polygon", poly, "--points", g, "--resolution", "0.2", "--max-attempts", "3"]);
    assert_eq!(code, 0, "{err}");
    let (code, out, _) = run(&["geo-path", "--polygon", poly, "--from", "0,0", "--to", "0.01,-0.01"]);
    assert_eq!(code, 0);
    assert!(out.contains("waypoints"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["frobnicate"]).0, 1);
    assert_eq!(run(&["cpair", "--points", "/nonexistent.json", "--p", "0", "--q", "1"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);
    let out = bin().args(["verify"]).env("DISKDEPTH_THREADS", "zero").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_and_experiment() {
    let out = bin().args(["verify"]).env("DISKDEPTH_THREADS", "1").output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).lines().all(|l| l.starts_with("PASS")));

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(
        &cfg,
        r#"{"groups":[
            {"kind":"UniformSquare","n":[20,40],"seeds":[1],"algorithms":["maximize","search","diametral"]},
            {"kind":"ConvexChain","n":[12],"seeds":[2,3],"algorithms":["convex-pair"]}
        ]}"#,
    )
    .unwrap();
    let outdir = dir.path().join("out");
    let (code, _, err) = run(&["experiment", "--config", cfg.to_str().unwrap(), "--out", outdir.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let csv = std::fs::read_to_string(outdir.join("results.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 6 + 2);
    for line in csv.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        if f[8] == "true" {
            assert!(f[4].parse::<usize>().unwrap() >= f[5].parse::<usize>().unwrap(), "{line}");
        }
    }
    assert!(outdir.join("records.json").exists());
    assert!(outdir.join("plot.csv").exists());
}
