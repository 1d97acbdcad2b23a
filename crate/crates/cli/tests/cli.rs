use std::path::PathBuf;
use std::process::{Command, Output};

fn gelfand(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gelfand"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = gelfand(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn header(args: &[&str]) -> String {
    stdout(args).lines().next().unwrap_or_default().to_string()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gelfand-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn column(csv: &str, idx: usize) -> Vec<f64> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').nth(idx).unwrap().parse().unwrap())
        .collect()
}

#[test]
fn csv_headers_are_stable() {
    let nil = "examples/nilpotent2.csv";
    assert_eq!(
        header(&["fekete", "--gen", "geom:2", "--n", "5"]),
        "k,value,root,running_min"
    );
    assert_eq!(
        header(&["convolve", "--a", "poly:1", "--b", "geom:0.5", "--n", "5"]),
        "k,value"
    );
    assert_eq!(
        header(&["power", "--matrix", nil, "--n", "3"]),
        "k,norm,root,running_min"
    );
    assert_eq!(
        header(&["power", "--wiener", "0:1,1:1", "--n", "3"]),
        "k,norm,root,running_min"
    );
    assert_eq!(
        header(&["spectrum", "--matrix", nil, "--step", "0.5"]),
        "re,im,invertible,margin"
    );
    assert_eq!(
        header(&["wiener", "--f", "1:0.5,-1:0.5", "--n", "3"]),
        "k,norm,root,running_min"
    );
    assert_eq!(
        header(&["wiener", "--f", "0:1,1:1", "--mode", "sup"]),
        "grid_max,certified_upper_error,lower,upper"
    );
    assert_eq!(header(&["wiener", "--f", "0:2", "--mode", "inverse"]), "degree,re,im");
    assert_eq!(
        header(&["shift", "--weights", "harmonic:0.5,1", "--l", "5"]),
        "k,norm,root,running_min"
    );
    assert_eq!(
        header(&["shift", "--weights", "const:0.5", "--l", "2", "--mode", "norms"]),
        "l,p,formula,attained,max_random_ratio"
    );
    assert_eq!(header(&["selftest"]), "check,passed,detail");
}

#[test]
fn fekete_example_ends_near_one() {
    let out = stdout(&["fekete", "--gen", "poly:1", "--n", "1000"]);
    assert_eq!(out.lines().count(), 1001);
    let last = *column(&out, 3).last().unwrap();
    assert!((last - 1.006932).abs() < 1e-6, "{last}");
}

#[test]
fn nilpotent_power_roots() {
    let out = stdout(&["power", "--matrix", "examples/nilpotent2.csv", "--n", "8"]);
    let roots = column(&out, 2);
    assert_eq!(roots, vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
}

#[test]
fn cosine_roots_are_one() {
    let out = stdout(&["wiener", "--f", "1:0.5,-1:0.5", "--n", "64"]);
    let roots = column(&out, 2);
    assert_eq!(roots.len(), 64);
    assert!(roots.iter().all(|&r| r == 1.0));
}

#[test]
fn convolution_of_geometric_sequences() {
    let out = stdout(&["convolve", "--a", "geom:0.5", "--b", "geom:1.5", "--n", "6"]);
    for (k, v) in column(&out, 1).iter().enumerate() {
        assert!((v - 2f64.powi(k as i32 + 1)).abs() <= 1e-12 * v);
    }
}

#[test]
fn file_inputs_are_accepted() {
    let seq = scratch("seq.csv", "k,value\n1,2\n2,4\n3,8\n");
    let out = stdout(&["fekete", "--input", seq.to_str().unwrap()]);
    assert_eq!(column(&out, 2), vec![2.0, 2.0, 2.0]);

    let weights = scratch("w.csv", "j,alpha\n1,0.9\n2,0.8\n3,0.7\n");
    let out = stdout(&["shift", "--input", weights.to_str().unwrap(), "--l", "3"]);
    assert!((column(&out, 1)[2] - 0.504).abs() < 1e-15);

    let f = scratch("f.json", "{\"1\":[0.5,0],\"-1\":[0.5,0]}");
    let out = stdout(&["wiener", "--input", f.to_str().unwrap(), "--n", "4"]);
    assert!(column(&out, 2).iter().all(|&r| r == 1.0));

    let m = scratch("m.json", "[[0,2],[0.5,0]]");
    let out = stdout(&["power", "--matrix", m.to_str().unwrap(), "--n", "4"]);
    assert_eq!(column(&out, 1), vec![2.0, 1.0, 2.0, 1.0]);
}

#[test]
fn json_outputs_parse() {
    let nil = "examples/nilpotent2.csv";
    let cases: [&[&str]; 7] = [
        &["fekete", "--gen", "poly:1", "--n", "4", "--format", "json"],
        &["power", "--matrix", nil, "--n", "4", "--format", "json"],
        &["neumann", "--matrix", nil, "--format", "json"],
        &["spectrum", "--matrix", nil, "--step", "1", "--format", "json"],
        &["wiener", "--f", "0:1,1:1", "--mode", "sup", "--format", "json"],
        &[
            "shift",
            "--weights",
            "geom:0.5",
            "--l",
            "3",
            "--mode",
            "norms",
            "--format",
            "json",
        ],
        &["selftest", "--format", "json"],
    ];
    for args in cases {
        let text = stdout(args);
        serde_json::from_str::<serde_json::Value>(&text).unwrap_or_else(|e| panic!("{args:?}: {e}\n{text}"));
    }
    let v: serde_json::Value = serde_json::from_str(&stdout(&["selftest", "--format", "json"])).unwrap();
    assert_eq!(v["failed"], 0);
}

#[test]
fn resolvent_of_nilpotent() {
    let out = stdout(&["resolvent", "--matrix", "examples/nilpotent2.csv", "--lambda", "1"]);
    assert_eq!(out, "1+0j,1+0j\n0+0j,1+0j\n");
}

#[test]
fn out_flag_writes_file() {
    let target = std::env::temp_dir().join(format!("gelfand-out-{}.csv", std::process::id()));
    let out = gelfand(&[
        "fekete",
        "--gen",
        "geom:2",
        "--n",
        "3",
        "--out",
        target.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&target).unwrap();
    std::fs::remove_file(&target).ok();
    assert_eq!(written, "k,value,root,running_min\n1,2,2,2\n2,4,2,2\n3,8,2,2\n");
}

#[test]
fn exit_codes() {
    let identity = scratch("eye.csv", "1,0\n0,1\n");
    let eye = identity.to_str().unwrap();
    let cases: [(&[&str], i32); 9] = [
        (&["fekete", "--gen", "nope:1"], 1),
        (&["fekete", "--gen", "poly:1", "--input", "x.csv"], 1),
        (&["power", "--matrix", "missing.csv"], 1),
        (&["bogus"], 1),
        (&["wiener", "--f", "1:abc"], 1),
        (&["neumann", "--matrix", eye], 2),
        (&["resolvent", "--matrix", eye, "--lambda", "1"], 2),
        (&["wiener", "--f", "0:1,1:-1", "--mode", "inverse"], 2),
        (&["selftest", "--seed", "3"], 0),
    ];
    for (args, code) in cases {
        let out = gelfand(args);
        assert_eq!(
            out.status.code(),
            Some(code),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        if code != 0 {
            let err = String::from_utf8_lossy(&out.stderr);
            assert!(!err.trim().is_empty(), "{args:?} printed no diagnostic");
        }
    }
    let seq = scratch("bad.csv", "k,value\n1,1\n2,3\n");
    let out = gelfand(&["fekete", "--input", seq.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert_eq!(err.lines().count(), 1, "{err}");
}

#[test]
fn seed_changes_random_output_only_when_used() {
    let a = stdout(&[
        "shift",
        "--weights",
        "harmonic:0.5,1",
        "--l",
        "3",
        "--mode",
        "norms",
        "--seed",
        "1",
    ]);
    let b = stdout(&[
        "shift",
        "--weights",
        "harmonic:0.5,1",
        "--l",
        "3",
        "--mode",
        "norms",
        "--seed",
        "1",
    ]);
    let c = stdout(&[
        "shift",
        "--weights",
        "harmonic:0.5,1",
        "--l",
        "3",
        "--mode",
        "norms",
        "--seed",
        "2",
    ]);
    assert_eq!(a, b);
    assert_ne!(a, c);
    assert_eq!(column(&a, 3), column(&c, 3));
}
