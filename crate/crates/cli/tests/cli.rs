use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn geodetic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geodetic")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn data_rows(csv: &str) -> Vec<&str> {
    csv.lines().skip(1).filter(|l| !l.is_empty()).collect()
}

fn write_graph(dir: &Path, name: &str, n: usize, edges: &[(usize, usize)]) -> String {
    let json = serde_json::json!({ "vertex_count": n, "edges": edges });
    let p = dir.join(name);
    fs::write(&p, json.to_string()).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn enum_petersen_d3() {
    let o = geodetic(&["enum", "--base", "petersen", "--diameter", "3"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(data_rows(&out).len(), 6);
    let header = out.lines().next().unwrap();
    assert!(header.starts_with("k_1,"));
    assert!(header.ends_with("x_15,diameter,girth,orbit_id"));
    let err = stderr(&o);
    assert!(err.contains("collection {5,7,7,7,7,7}, 6 of 6 permutations, (3, 5)"), "{err}");
    assert!(err.contains("6 solutions in 1 orbits"));
}

#[test]
fn enum_k4_and_c5_counts() {
    let o = geodetic(&["enum", "--base", "k4", "--diameter", "2"]);
    assert!(o.status.success());
    assert_eq!(data_rows(&stdout(&o)).len(), 4);

    // compositions of 5 and of 7 into five parts
    let o = geodetic(&["enum", "--base", "c5", "--diameter", "3"]);
    assert!(o.status.success());
    assert_eq!(data_rows(&stdout(&o)).len(), 16);
}

#[test]
fn output_is_independent_of_jobs() {
    let tmp = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for jobs in ["1", "2", "4"] {
        let dir = tmp.path().join(format!("j{jobs}"));
        let o = geodetic(&["--jobs", jobs, "enum", "--base", "petersen", "--diameter", "5", "--out", dir.to_str().unwrap()]);
        assert!(o.status.success(), "{}", stderr(&o));
        let files: Vec<Vec<u8>> = ["solutions.csv", "orbits.csv", "collections.csv"]
            .iter()
            .map(|f| fs::read(dir.join(f)).unwrap())
            .collect();
        let manifest: Value = serde_json::from_slice(&fs::read(dir.join("manifest.json")).unwrap()).unwrap();
        assert_eq!(manifest["command"], "enum");
        assert_eq!(manifest["result_counts"]["solutions"], 56);
        assert_eq!(manifest["result_counts"]["orbits"], 3);
        outputs.push(files);
    }
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn json_format() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("out");
    let o = geodetic(&["enum", "--base", "petersen", "--diameter", "4", "--format", "json", "--out", dir.to_str().unwrap()]);
    assert!(o.status.success());
    let records: Value = serde_json::from_slice(&fs::read(dir.join("solutions.json")).unwrap()).unwrap();
    assert_eq!(records.as_array().unwrap().len(), 21);
    let orbits: Value = serde_json::from_slice(&fs::read(dir.join("orbits.json")).unwrap()).unwrap();
    assert_eq!(orbits.as_array().unwrap().len(), 2);
}

#[test]
fn exit_codes() {
    // usage
    assert_eq!(geodetic(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(geodetic(&["enum", "--base", "petersen"]).status.code(), Some(1));
    assert_eq!(geodetic(&["count", "nonsense"]).status.code(), Some(1));
    assert_eq!(geodetic(&["--help"]).status.code(), Some(0));
    // input
    assert_eq!(geodetic(&["enum", "--base", "dodecahedron", "--diameter", "3"]).status.code(), Some(2));
    assert_eq!(geodetic(&["enum", "--base", "petersen", "--diameter", "1"]).status.code(), Some(2));
    assert_eq!(geodetic(&["enum", "--base", "petersen", "--diameter", "14"]).status.code(), Some(2));
    assert_eq!(geodetic(&["verify", "--graph", "/nonexistent/graph.json"]).status.code(), Some(2));

    let tmp = tempfile::tempdir().unwrap();
    let disconnected = write_graph(tmp.path(), "d.json", 4, &[(0, 1), (2, 3)]);
    assert_eq!(geodetic(&["verify", "--graph", &disconnected]).status.code(), Some(2));
    let bad = tmp.path().join("bad.json");
    fs::write(&bad, "{not json").unwrap();
    assert_eq!(geodetic(&["verify", "--graph", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn count_partitions_table() {
    let o = geodetic(&["count", "partitions", "--max-k", "10", "--max-i", "15"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 11);
    assert_eq!(lines[0], "k\\i,1,2,3,4,5,6,7,8,9,10,11,12,13,14,15");
    assert_eq!(lines[3], "3,0,0,1,1,2,3,4,5,7,8,10,12,14,16,19");
    assert_eq!(lines[10], "10,0,0,0,0,0,0,0,0,0,1,1,2,3,5,7");
}

#[test]
fn count_families() {
    let o = geodetic(&["count", "k4", "--d", "1..8"]);
    assert!(o.status.success());
    let rows: Vec<Vec<u64>> = data_rows(&stdout(&o))
        .iter()
        .map(|l| l.split(',').take(3).map(|x| x.parse().unwrap()).collect())
        .collect();
    let expect = [(1, 1, 1), (2, 1, 4), (3, 2, 10), (4, 3, 20), (5, 5, 35), (6, 6, 56), (7, 9, 84), (8, 11, 120)];
    assert_eq!(rows.len(), 8);
    for (r, (d, iso, lab)) in rows.iter().zip(expect) {
        assert_eq!(r, &vec![d, iso, lab]);
    }

    let o = geodetic(&["count", "petersen-conjecture", "--d", "2..7"]);
    let out = stdout(&o);
    let iso: Vec<&str> = data_rows(&out).iter().map(|l| l.split(',').nth(1).unwrap()).collect();
    let lab: Vec<&str> = data_rows(&out).iter().map(|l| l.split(',').nth(2).unwrap()).collect();
    assert_eq!(iso, ["1", "1", "2", "3", "5", "7"]);
    assert_eq!(lab, ["1", "6", "21", "56", "126", "252"]);
    assert!(data_rows(&out).iter().all(|l| l.ends_with("[conjecture]")));

    let o = geodetic(&["count", "kn", "--n", "5", "--i", "0..3", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 4);
}

#[test]
fn verify_petersen_and_c4() {
    let tmp = tempfile::tempdir().unwrap();
    let petersen = tmp.path().join("p.json");
    let o = geodetic(&["build", "--base", "petersen", "--out", petersen.to_str().unwrap()]);
    assert!(o.status.success());
    let o = geodetic(&["verify", "--graph", petersen.to_str().unwrap(), "--method", "all"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["is_geodetic"], true);
    assert_eq!(v["agree"], true);
    assert_eq!(v["girth"], 5);

    let c4 = write_graph(tmp.path(), "c4.json", 4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
    let o = geodetic(&["verify", "--graph", &c4, "--method", "even-circuit"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["is_geodetic"], false);
    let w = &v["reports"]["even_circuit"]["witness"];
    assert_eq!(w["kind"], "even_circuit");
    assert_eq!(w["circuit"].as_array().unwrap().len(), 4);

    let o = geodetic(&["verify", "--graph", &c4]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["agree"], true);
    assert_eq!(v["reports"]["unique"]["witness"]["count"], "2");
}

#[test]
fn girth_eleven_solution_verifies() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("out");
    let dots = tmp.path().join("dots");
    let o = geodetic(&[
        "enum",
        "--base",
        "petersen",
        "--diameter",
        "6",
        "--out",
        out.to_str().unwrap(),
        "--dot-dir",
        dots.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = fs::read_to_string(out.join("solutions.csv")).unwrap();
    let row = data_rows(&csv)
        .iter()
        .position(|l| l.split(',').rev().skip(1).take(2).collect::<Vec<_>>() == ["11", "6"])
        .expect("a (6, 11) solution");
    let json = dots.join(format!("solution_{:05}.json", row + 1));
    assert!(dots.join(format!("solution_{:05}.dot", row + 1)).exists());
    let o = geodetic(&["verify", "--graph", json.to_str().unwrap()]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["is_geodetic"], true);
    assert_eq!(v["girth"], 11);
    assert_eq!(v["diameter"], 6);
}

#[test]
fn build_system_export() {
    let o = geodetic(&["build", "--base", "k4", "--lengths", "1,2,1,1,2,1"]);
    assert!(o.status.success());
    let g: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(g["vertex_count"], 6);

    let o = geodetic(&["build", "--base", "k5", "--plesnik", "2,1"]);
    assert!(o.status.success());
    let g: Value = serde_json::from_str(&stdout(&o)).unwrap();
    // segment lengths 4 (once), 3 (three times), 2 (three times), 1 (three times)
    assert_eq!(g["edges"].as_array().unwrap().len(), 10 + 3 + 2 * 3 + 3);

    assert_eq!(geodetic(&["build", "--base", "petersen", "--lengths", "1,2"]).status.code(), Some(2));
    assert_eq!(geodetic(&["build", "--base", "petersen", "--plesnik", "1"]).status.code(), Some(2));

    let o = geodetic(&["system", "--base", "petersen"]);
    assert!(o.status.success());
    let s: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(s["rows"].as_array().unwrap().len(), 16);

    let o = geodetic(&["export", "--base", "k4", "--name", "K4"]);
    assert!(o.status.success());
    let dot = stdout(&o);
    assert!(dot.starts_with("graph \"K4\" {"));
    assert_eq!(dot.matches(" -- ").count(), 6);
}

#[test]
fn orbits_from_solutions_file() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("run");
    let o = geodetic(&["enum", "--base", "petersen", "--diameter", "6", "--out", dir.to_str().unwrap()]);
    assert!(o.status.success());
    let o = geodetic(&["orbits", "--base", "petersen", "--solutions", dir.join("solutions.csv").to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(data_rows(&stdout(&o)).len(), 5);
    assert_eq!(fs::read_to_string(dir.join("orbits.csv")).unwrap(), stdout(&o));

    let o = geodetic(&["orbits", "--base", "k4", "--diameter", "5"]);
    assert_eq!(data_rows(&stdout(&o)).len(), 5);

    // wrong base for the file
    let o = geodetic(&["orbits", "--base", "k4", "--solutions", dir.join("solutions.csv").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn manifest_flag() {
    let tmp = tempfile::tempdir().unwrap();
    let m = tmp.path().join("m.json");
    let o = geodetic(&["--manifest", m.to_str().unwrap(), "count", "k4", "--d", "3"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&fs::read_to_string(&m).unwrap()).unwrap();
    assert_eq!(v["command"], "count");
    assert_eq!(v["parameters"]["family"], "k4");
    assert!(v["wall_time_ms"].is_u64());
}
