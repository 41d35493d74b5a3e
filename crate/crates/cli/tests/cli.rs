use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use exrays_cli::expected::published;

fn exrays(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exrays"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn row<'a>(csv: &'a str, first: &str) -> Vec<&'a str> {
    csv.lines()
        .map(|l| l.split(',').collect::<Vec<_>>())
        .find(|r| r[0] == first)
        .unwrap_or_else(|| panic!("no row {first} in\n{csv}"))
}

#[test]
fn ray_counts() {
    for (args, want) in [
        (vec!["--d", "4", "--p", "0.5"], "5"),
        (vec!["--scenario", "A"], "100"),
        (
            vec!["--d", "100", "--p", "0.266", "--rho", "0.1667"],
            "32372",
        ),
        (vec!["--scenario", "B", "--rho", "1/6"], "32372"),
    ] {
        let mut a = vec!["rays", "--count-only"];
        a.extend(args);
        let o = exrays(&a);
        assert!(o.status.success());
        assert_eq!(stdout(&o).trim(), want, "{a:?}");
    }
}

#[test]
fn ray_set_stream_and_file() {
    let o = exrays(&["rays", "--d", "4", "--p", "1/2"]);
    let text = stdout(&o);
    assert!(text.starts_with("d,p,rho,count\n4,5e-1,,5\n"));
    assert_eq!(text.lines().count(), 7);
    assert!(!text.contains('\r'));

    let dir = tempfile::tempdir().unwrap();
    let o = exrays(&[
        "rays",
        "--scenario",
        "BBB",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(stdout(&o).starts_with("count 198 -> "));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn bounds_rows() {
    let o = exrays(&["bounds", "--scenario", "BBB", "--rho", "0.5"]);
    assert!(o.status.success());
    let csv = stdout(&o);
    let header: Vec<&str> = csv.lines().next().unwrap().split(',').collect();
    let r = row(&csv, "0.99");
    let col = |name: &str| r[header.iter().position(|h| *h == name).unwrap()];
    assert_eq!(
        (col("var_min"), col("var_max"), col("beta_var")),
        ("1", "93", "57")
    );

    let csv = stdout(&exrays(&["bounds", "--scenario", "B"]));
    assert!(!csv.contains("beta_var"));
    assert_eq!(&row(&csv, "0.95")[1..3], &["23", "100"]);

    let csv = stdout(&exrays(&["bounds", "--scenario", "A", "--alpha", "0.9"]));
    assert_eq!(csv.lines().count(), 2);
    assert_eq!(&row(&csv, "0.9")[3..5], &["0.3", "2.0"]);
}

#[test]
fn moments_rows() {
    let csv = stdout(&exrays(&["moments", "--scenario", "B"]));
    assert_eq!(row(&csv, "2"), vec!["2", "0.069", "0.266"]);
    let csv = stdout(&exrays(&["moments", "--scenario", "A"]));
    assert_eq!(row(&csv, "rho"), vec!["rho", "-0.003", "1.000"]);
    let csv = stdout(&exrays(&["moments", "--scenario", "BBB"]));
    assert_eq!(row(&csv, "1"), vec!["1", "0.017", "0.017"]);
}

#[test]
fn json_output() {
    let o = exrays(&[
        "bounds",
        "--scenario",
        "BBB",
        "--rho",
        "1/2",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["table"], "bounds_BBB_1-2");
    let cols: Vec<&str> = v["columns"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap())
        .collect();
    let beta = cols.iter().position(|c| *c == "beta_var").unwrap();
    assert_eq!(v["rows"][2][beta], 57);
    assert_eq!(v["rows"][2][0], 0.99);
}

#[test]
fn sweep_rows() {
    let csv = stdout(&exrays(&["sweep", "--scenario", "B"]));
    assert_eq!(csv.lines().count(), 1 + 12 * 3);
    let five_sixths = (5.0f64 / 6.0).to_string();
    let r = csv
        .lines()
        .find(|l| l.starts_with(&format!("{five_sixths},0.9,")))
        .unwrap();
    assert_eq!(r, format!("{five_sixths},0.9,81,100,100,"));
    assert!(csv.lines().nth(1).unwrap().starts_with("0,0.9,"));
    assert!(csv
        .lines()
        .nth(1)
        .unwrap()
        .ends_with(",,beta mixing needs rho > 0"));

    let csv = stdout(&exrays(&[
        "sweep",
        "--scenario",
        "A",
        "--grid",
        "6",
        "--alpha",
        "0.99",
    ]));
    let expected_rows = [("1/6", "1,22,9"), ("1/2", "0,21,4"), ("5/6", "0,7,0")];
    for (r, cells) in expected_rows {
        let rho = exrays_cli::config::parse_real(r).unwrap();
        assert!(csv.contains(&format!("{rho},0.99,{cells},")), "{r}\n{csv}");
    }
}

#[test]
fn exit_codes() {
    // infeasible correlation: below the class minimum
    let o = exrays(&["bounds", "--d", "6", "--p", "0.5", "--rho", "-0.25"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    assert_eq!(exrays(&["rays", "--p", "1.2"]).status.code(), Some(2));
    assert_eq!(
        exrays(&["moments", "--scenario", "A", "--rho", "0.5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        exrays(&["bounds", "--scenario", "A", "--p", "0.1"])
            .status
            .code(),
        Some(2)
    );
    assert_ne!(exrays(&["rays", "--scenario", "C"]).status.code(), Some(0));
}

fn read_dir_sorted(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().into_string().unwrap(),
                fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

#[test]
fn tampered_reference_fails_with_diff() {
    let dir = tempfile::tempdir().unwrap();
    let mut expected = published();
    let t = expected
        .iter_mut()
        .find(|t| t.name == "corr_var_BBB_1-2")
        .unwrap();
    t.rows[2][3] = 58.0;
    let m = expected.iter_mut().find(|t| t.name == "moments_B").unwrap();
    m.rows[1][0] = 0.070;
    let path = dir.path().join("expected.json");
    fs::write(&path, serde_json::to_string(&expected).unwrap()).unwrap();

    let out = dir.path().join("out");
    let o = exrays(&[
        "reproduce",
        "--out",
        out.to_str().unwrap(),
        "--expected",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(
        err.contains("corr_var_BBB_1-2 row 2 column beta_var: expected \"58\", found \"57\""),
        "{err}"
    );
    assert!(
        err.contains("moments_B row 1 column min: expected \"0.070\", found \"0.069\""),
        "{err}"
    );
    let manifest: serde_json::Value =
        serde_json::from_slice(&fs::read(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["mismatches"], 2);
}

#[test]
fn reproduce_is_deterministic_and_reuses_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let run = |out: &str, threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_exrays"))
            .args(["reproduce", "-v", "--grid", "4", "--out"])
            .arg(dir.path().join(out))
            .arg("--cache")
            .arg(&cache)
            .env("RAYON_NUM_THREADS", threads)
            .env_remove("RUST_LOG")
            .output()
            .unwrap()
    };
    let first = run("a", "1");
    assert_eq!(
        first.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&first.stderr)
    );
    let log = String::from_utf8_lossy(&first.stderr);
    assert!(log.contains("enumerated") && !log.contains("cache hit"));

    let second = run("b", "4");
    assert_eq!(second.status.code(), Some(0));
    let log = String::from_utf8_lossy(&second.stderr);
    assert!(
        log.contains("cache hit") && !log.contains("enumerated"),
        "{log}"
    );
    assert_eq!(
        read_dir_sorted(&dir.path().join("a")),
        read_dir_sorted(&dir.path().join("b"))
    );

    // a corrupted entry is detected and rebuilt
    let entry = fs::read_dir(&cache)
        .unwrap()
        .map(|e| e.unwrap().path())
        .find(|p| p.extension().is_some_and(|e| e == "txt"))
        .unwrap();
    let mut text = fs::read_to_string(&entry).unwrap();
    text.push_str("0:1e0\n");
    fs::write(&entry, text).unwrap();
    let third = run("c", "2");
    assert_eq!(third.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&third.stderr).contains("checksum mismatch"));
    assert_eq!(
        read_dir_sorted(&dir.path().join("a")),
        read_dir_sorted(&dir.path().join("c"))
    );

    let manifest: serde_json::Value =
        serde_json::from_slice(&fs::read(dir.path().join("a/manifest.json")).unwrap()).unwrap();
    let files = manifest["files"].as_array().unwrap();
    assert_eq!(files.len(), 21);
    for f in files {
        let bytes = fs::read(dir.path().join("a").join(f["file"].as_str().unwrap())).unwrap();
        assert_eq!(f["sha256"], exrays_cli::cache::sha256_hex(&bytes));
    }
}

#[test]
fn stats_and_decompose_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let dense = dir.path().join("pmf.csv");
    fs::write(&dense, "j,prob\n0,0.5\n1,0.25\n2,0\n3,0\n4,0.25\n").unwrap();
    let csv = stdout(&exrays(&[
        "stats",
        dense.to_str().unwrap(),
        "--alpha",
        "0.9",
    ]));
    assert_eq!(row(&csv, "mean"), vec!["mean", "1.25"]);
    assert_eq!(row(&csv, "var@0.9"), vec!["var@0.9", "4"]);

    let sparse = dir.path().join("pmf.txt");
    fs::write(&sparse, "d=4\n0:0.5;1:0.25\n4:0.25\n").unwrap();
    let o = exrays(&["decompose", sparse.to_str().unwrap()]);
    assert!(o.status.success());
    let csv = stdout(&o);
    let total: f64 = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().parse::<f64>().unwrap())
        .sum();
    assert!((total - 1.0).abs() < 1e-12);

    let json = dir.path().join("pmf.json");
    fs::write(
        &json,
        r#"{"d": 4, "sparse": [[0, 0.5], [1, 0.25], [4, 0.25]]}"#,
    )
    .unwrap();
    assert_eq!(
        stdout(&exrays(&["stats", json.to_str().unwrap()])),
        stdout(&exrays(&["stats", dense.to_str().unwrap()]))
    );
}
