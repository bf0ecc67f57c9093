use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use misreg::format::{parse_graph, serialize_graph, Format};
use misreg::io::parse_solution;
use misreg_core::{gadget, Graph};
use serde_json::Value;
use tempfile::TempDir;

fn misreg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_misreg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&o.stdout),
            String::from_utf8_lossy(&o.stderr)
        )
    })
}

fn write(dir: &TempDir, name: &str, g: &Graph) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, serialize_graph(g, Format::from_path(&path))).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn k4_minus_edge() -> Graph {
    Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
}

struct Pipeline {
    dir: TempDir,
    graph: PathBuf,
    reduced: PathBuf,
    cert: PathBuf,
}

fn pipeline(g: &Graph, target: &[&str]) -> (Pipeline, Output) {
    let dir = TempDir::new().unwrap();
    let graph = write(&dir, "g.col", g);
    let reduced = dir.path().join("gp.col");
    let cert = dir.path().join("cert.json");
    let mut args = vec!["regularize", s(&graph)];
    args.extend_from_slice(target);
    args.extend_from_slice(&["--out", s(&reduced), "--cert", s(&cert)]);
    let out = misreg(&args);
    (Pipeline { dir, graph, reduced, cert }, out)
}

#[test]
fn regularize_then_verify_with_oracle() {
    let (p, out) = pipeline(&k4_minus_edge(), &["--degree", "3"]);
    assert_eq!(code(&out), 0);
    let summary = json(&out);
    assert_eq!(summary["vertices"], 18);
    assert_eq!(summary["total_offset"], 6);
    let cert: Value = serde_json::from_str(&fs::read_to_string(&p.cert).unwrap()).unwrap();
    assert_eq!(cert["total_offset"], 6);

    let out = misreg(&[
        "verify", "--graph", s(&p.graph), "--reduced", s(&p.reduced), "--cert", s(&p.cert), "--with-oracle",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let report = json(&out);
    assert_eq!(report["overall"], "pass");
    let statuses: Vec<(&str, &str)> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["name"].as_str().unwrap(), c["status"].as_str().unwrap()))
        .collect();
    assert!(statuses.contains(&("alpha_relation", "pass")));
    assert!(statuses.contains(&("sandwich", "pass")));
}

#[test]
fn verify_detects_tampering() {
    let (p, _) = pipeline(&k4_minus_edge(), &["--degree", "3"]);
    // editing G' without updating the certificate is an input error
    let text = fs::read_to_string(&p.reduced).unwrap();
    let mut gp = parse_graph(text.as_bytes(), Format::DimacsCol).unwrap();
    let dropped: Vec<_> = gp.edges().skip(1).collect();
    gp = Graph::from_edges(gp.vertex_count(), dropped).unwrap();
    fs::write(&p.reduced, serialize_graph(&gp, Format::DimacsCol)).unwrap();
    let args = ["verify", "--graph", s(&p.graph), "--reduced", s(&p.reduced), "--cert", s(&p.cert)];
    let out = misreg(&args);
    assert_eq!(code(&out), 2);

    // a consistent hash on a broken graph is a failed verification
    let mut cert: Value = serde_json::from_str(&fs::read_to_string(&p.cert).unwrap()).unwrap();
    cert["result_hash"] = Value::String(gp.content_hash_hex());
    fs::write(&p.cert, serde_json::to_string(&cert).unwrap()).unwrap();
    let out = misreg(&args);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["overall"], "fail");
}

#[test]
fn solve_icosa_block_by_brute_force() {
    let dir = TempDir::new().unwrap();
    let (x, _) = gadget::build_icosa_gadget();
    let path = write(&dir, "x.txt", &x);
    let out = misreg(&["solve", s(&path), "--method", "brute"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["alpha"], 4);
    assert_eq!(v["method"], "brute_force");
    assert!(v["millis"].is_u64() && v["nodes"].is_u64());
    assert_eq!(v["witness"].as_array().unwrap().len(), 4);
}

#[test]
fn solve_budget_and_cap_errors() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "p.col", &Graph::petersen());
    assert_eq!(code(&misreg(&["solve", s(&path), "--method", "bb", "--budget-nodes", "1"])), 3);
    assert_eq!(code(&misreg(&["solve", s(&path), "--method", "brute", "--max-brute-n", "5"])), 3);
    assert_eq!(code(&misreg(&["solve", s(&path), "--budget-secs", "-1"])), 2);
    let out = misreg(&["solve", s(&path), "--method", "bb"]);
    assert_eq!(json(&out)["alpha"], 4);
}

#[test]
fn gadget_dump_reports_discrepancy() {
    let out = misreg(&["gadget", "--degree", "5"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["vertices"], 21);
    assert_eq!(v["alpha"], 10);
    assert_eq!(v["quoted_alpha"], 12);
    assert_eq!(v["alpha_discrepancy"], true);
    assert_eq!(v["roles"]["20"], "h");
    let g = parse_graph(v["graph"].as_str().unwrap().as_bytes(), Format::EdgeList).unwrap();
    assert_eq!(g.edge_count(), (5 * 21 - 1) / 2);

    let dir = TempDir::new().unwrap();
    let path = dir.path().join("planar.col");
    let out = misreg(&["gadget", "--planar", "--out", s(&path)]);
    let v = json(&out);
    assert_eq!((v["alpha"].as_u64(), v["quoted_alpha"].as_u64()), (Some(8), Some(4)));
    assert!(v.get("graph").is_none());
    let g = parse_graph(&fs::read(&path).unwrap(), Format::DimacsCol).unwrap();
    assert_eq!(g.vertex_count(), 25);

    assert_eq!(code(&misreg(&["gadget", "--degree", "4"])), 2);
    assert_eq!(code(&misreg(&["gadget", "--degree", "3", "--planar"])), 2);
}

#[test]
fn recover_maps_back_within_bound() {
    let g = Graph::cycle(5);
    let (p, out) = pipeline(&g, &["--degree", "3"]);
    assert_eq!(code(&out), 0);
    let solved = misreg(&["solve", s(&p.reduced)]);
    let witness: Vec<u64> = json(&solved)["witness"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    let sol = p.dir.path().join("sol.txt");
    fs::write(&sol, witness.iter().map(|v| format!("{v}\n")).collect::<String>()).unwrap();
    let ids = p.dir.path().join("ids.txt");
    let out = misreg(&[
        "recover", "--reduced", s(&p.reduced), "--cert", s(&p.cert), "--solution", s(&sol), "--out", s(&ids),
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["meets_bound"], true);
    let recovered = parse_solution(&fs::read_to_string(&ids).unwrap()).unwrap();
    assert_eq!(g.is_independent_set(&recovered), Ok(true));
    assert_eq!(recovered.len(), 2);

    let bad = p.dir.path().join("bad.txt");
    fs::write(&bad, "0\n1\n").unwrap();
    let out = misreg(&["recover", "--reduced", s(&p.reduced), "--cert", s(&p.cert), "--solution", s(&bad)]);
    assert_eq!(code(&out), 2);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4)]).unwrap();
    let (a, _) = pipeline(&g, &["--degree", "5"]);
    let (b, _) = pipeline(&g, &["--degree", "5"]);
    assert_eq!(fs::read(&a.reduced).unwrap(), fs::read(&b.reduced).unwrap());
    assert_eq!(fs::read(&a.cert).unwrap(), fs::read(&b.cert).unwrap());
    let va = misreg(&["verify", "--graph", s(&a.graph), "--reduced", s(&a.reduced), "--cert", s(&a.cert)]);
    let vb = misreg(&["verify", "--graph", s(&b.graph), "--reduced", s(&b.reduced), "--cert", s(&b.cert)]);
    assert_eq!(va.stdout, vb.stdout);
    // the reserved seed changes nothing
    let out = misreg(&["--seed", "7", "gadget", "--degree", "3"]);
    assert_eq!(out.stdout, misreg(&["gadget", "--degree", "3"]).stdout);
}

#[test]
fn parity_fix_and_strict_mode() {
    let (_, out) = pipeline(&Graph::cycle(4), &["--degree", "3"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["parity_fix"], true);
    // C4 plus K4, then 4 gadgets of 7 vertices
    assert_eq!(v["vertices"], 8 + 4 * 7);
    let (_, out) = pipeline(&Graph::cycle(4), &["--degree", "3", "--strict"]);
    assert_eq!(code(&out), 2);
    let (_, out) = pipeline(&Graph::cycle(4), &["--degree", "3", "--planar"]);
    assert_eq!(code(&out), 2);
    let (_, out) = pipeline(&Graph::complete(5), &["--degree", "3"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn planar_pipeline_sandwich_with_witness() {
    let (p, out) = pipeline(&Graph::complete(4), &["--planar"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["vertices"], 204);
    let w = p.dir.path().join("w.txt");
    fs::write(&w, "2\n").unwrap();
    let out = misreg(&[
        "verify", "--graph", s(&p.graph), "--reduced", s(&p.reduced), "--cert", s(&p.cert), "--witness", s(&w),
    ]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    let sandwich = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "sandwich")
        .unwrap();
    assert_eq!(sandwich["status"], "pass");
    assert!(sandwich["detail"].as_str().unwrap().contains("65"));
}

#[test]
fn tiny_inputs_do_not_crash() {
    for g in [Graph::empty(0), Graph::empty(1)] {
        let dir = TempDir::new().unwrap();
        let path = write(&dir, "g.txt", &g);
        let out = misreg(&["stats", s(&path)]);
        assert_eq!(code(&out), 0);
        assert_eq!(json(&out)["vertices"], g.vertex_count());
        let out = misreg(&["solve", s(&path)]);
        assert_eq!(json(&out)["alpha"], g.vertex_count());

        for target in [&["--degree", "3"][..], &["--planar"][..]] {
            let (p, out) = pipeline(&g, target);
            assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
            let out = misreg(&[
                "verify", "--graph", s(&p.graph), "--reduced", s(&p.reduced), "--cert", s(&p.cert), "--with-oracle",
            ]);
            assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
        }
    }
}

#[test]
fn stats_and_malformed_input() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "k4.col", &Graph::complete(4));
    let v = json(&misreg(&["stats", s(&path)]));
    assert_eq!(v["triangles"], 4);
    assert_eq!(v["regular"], true);
    assert_eq!(v["degree_histogram"]["3"], 4);

    let bad = dir.path().join("bad.col");
    fs::write(&bad, "p edge 2 1\ne 1 3\n").unwrap();
    let out = misreg(&["stats", s(&bad)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("outside"));
    // the same file read as an edge list is also malformed
    assert_eq!(code(&misreg(&["--format", "edge-list", "stats", s(&bad)])), 2);
    assert_eq!(code(&misreg(&["stats", s(&dir.path().join("missing.col"))])), 2);
}
