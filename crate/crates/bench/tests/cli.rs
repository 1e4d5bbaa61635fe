use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn bcbench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bcbench")).args(args).output().expect("run bcbench")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exact_on_path3() {
    let out = bcbench(&["exact", "--dataset", fixture("path3.txt").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "vertex_id,bc\n0,0\n1,2\n2,0\n");
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("n=3 m=2"), "{err}");
}

#[test]
fn exact_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("bc.csv");
    let out = bcbench(&["exact", "--dataset", fixture("random32.txt").to_str().unwrap(), "--out", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(csv).unwrap().lines().count(), 33);
}

#[test]
fn sweep_is_reproducible_and_has_fixed_header() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let csv = dir.path().join(name);
        let runs = dir.path().join(format!("runs-{name}"));
        let out = bcbench(&[
            "sweep",
            "--dataset",
            fixture("random32.txt").to_str().unwrap(),
            "--method",
            "pair",
            "--c-max",
            "2",
            "--reps",
            "3",
            "--seed",
            "17",
            "--out",
            csv.to_str().unwrap(),
            "--runs-out",
            runs.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        (std::fs::read_to_string(&csv).unwrap(), std::fs::read_to_string(runs).unwrap(), csv)
    };
    let (a, runs_a, csv) = run("a.csv");
    let (b, runs_b, _) = run("b.csv");
    assert_eq!(a, b);
    assert_eq!(runs_a, runs_b);
    assert!(a.starts_with("c,mean_k,mean_factor_diff,inv_factor_diff\n"));
    assert_eq!(a.lines().count(), 4);
    assert!(runs_a.starts_with("c,replication,seed,k,sum,estimate,factor_diff,capped,settled\n"));
    assert!(runs_a.lines().nth(1).unwrap().starts_with("1.0,0,17,"));

    let manifest = csv.with_extension("manifest.json");
    let replay = bcbench(&["replay", manifest.to_str().unwrap()]);
    assert_eq!(replay.status.code(), Some(0), "{}", String::from_utf8_lossy(&replay.stderr));
    assert_eq!(stdout(&replay), "identical\n");
}

#[test]
fn estimate_manifest_replays_and_detects_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("run.json");
    let out = bcbench(&[
        "estimate",
        "--dataset",
        fixture("random32.txt").to_str().unwrap(),
        "--method",
        "vertex",
        "--c",
        "1.5",
        "--seed",
        "4",
        "--manifest",
        manifest.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("method=vertex"));
    assert_eq!(bcbench(&["replay", manifest.to_str().unwrap()]).status.code(), Some(0));

    let mut json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&manifest).unwrap()).unwrap();
    json["k"] = serde_json::json!(json["k"].as_u64().unwrap() + 1);
    std::fs::write(&manifest, json.to_string()).unwrap();
    assert_eq!(bcbench(&["replay", manifest.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn compare_cost_on_path3() {
    let p3 = fixture("path3.txt");
    let args = ["compare-cost", "--dataset", p3.to_str().unwrap(), "--target", "1", "--c", "1", "--reps", "4"];
    let out = bcbench(&args);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let pair = text.lines().find(|l| l.starts_with("pair,")).unwrap();
    let per_sample: f64 = pair.split(',').nth(6).unwrap().parse().unwrap();
    assert!(per_sample <= 3.0);
    assert_eq!(text, stdout(&bcbench(&args)));
}

#[test]
fn exit_codes() {
    // Usage errors.
    assert_eq!(bcbench(&[]).status.code(), Some(1));
    assert_eq!(bcbench(&["sweep", "--method", "edge", "--dataset", "x"]).status.code(), Some(1));
    let p3 = fixture("path3.txt");
    let p3 = p3.to_str().unwrap();
    assert_eq!(bcbench(&["sweep", "--dataset", p3, "--c-min", "0.5"]).status.code(), Some(1));
    assert_eq!(bcbench(&["--help"]).status.code(), Some(0));

    // Data errors: missing file, malformed file, zero-BC target, unknown target.
    assert_eq!(bcbench(&["exact", "--dataset", "/nonexistent/graph.txt"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "1 2\n2 x\n").unwrap();
    let out = bcbench(&["exact", "--dataset", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 2"));
    let out = bcbench(&["sweep", "--dataset", p3, "--target", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("zero exact BC"));
    assert_eq!(bcbench(&["sweep", "--dataset", p3, "--target", "9"]).status.code(), Some(2));

    // Model-check failure.
    let out = bcbench(&["model-check", "--runs", "100", "--ks-samples", "2000", "--corrupt", "pdf"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn gzip_dataset_is_accepted() {
    use std::io::Write;
    let dir = tempfile::tempdir().unwrap();
    let gz = dir.path().join("star3.txt.gz");
    let mut enc = flate2::write::GzEncoder::new(std::fs::File::create(&gz).unwrap(), flate2::Compression::fast());
    enc.write_all(&std::fs::read(fixture("star3.txt")).unwrap()).unwrap();
    enc.finish().unwrap();
    let out = bcbench(&["exact", "--dataset", gz.to_str().unwrap()]);
    assert_eq!(stdout(&out), stdout(&bcbench(&["exact", "--dataset", fixture("star3.txt").to_str().unwrap()])));
}
