//! End-to-end tests: every subcommand is exercised through the real binary,
//! and every file output is round-tripped through the reader for its format.

use std::path::{Path, PathBuf};
use std::process::Command;

use incseq::construct::{base_interleave, gallery, uneven_layer_family, GalleryId};
use incseq::continuous::{five_cuboids, from_family, rat, CuboidFamily};
use incseq::family::{BoxDims, Family, Mode, Tuple};
use incseq::grid::{to_grid, LabelCoord, LabelledBipartite, LabelledGrid};
use incseq::hypergraph::{ruzsa_graph, to_hypergraph, TripartiteHypergraph};
use incseq::search::SearchReport;
use serde_json::Value;
use tempfile::TempDir;

struct Run {
    status: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_incseq"))
        .args(args)
        .output()
        .expect("binary should spawn");
    Run {
        status: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf8 stderr"),
    }
}

fn ok(args: &[&str]) -> Run {
    let r = run(args);
    assert_eq!(
        r.status, 0,
        "expected success for {args:?}\nstdout: {}\nstderr: {}",
        r.stdout, r.stderr
    );
    r
}

fn path_str(path: &Path) -> &str {
    path.to_str().expect("utf8 path")
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).expect("write test input");
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("read {}: {e}", path.display()))
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&read(path)).unwrap_or_else(|e| panic!("parse {}: {e}", path.display()))
}

fn save_gallery(dir: &Path, id: &str) -> PathBuf {
    let family = gallery(id.parse::<GalleryId>().expect("gallery id")).expect("gallery family");
    let path = dir.join(format!("{id}.json"));
    write(&path, &family.to_json());
    path
}

fn tuple_set(family: &Family) -> std::collections::BTreeSet<Tuple> {
    family.tuples().iter().cloned().collect()
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

#[test]
fn validate_accepts_a_valid_family() {
    let dir = TempDir::new().unwrap();
    let input = save_gallery(dir.path(), "n4_len8");
    let out = dir.path().join("report.json");
    let r = ok(&[
        "validate",
        "--family",
        path_str(&input),
        "--out",
        path_str(&out),
    ]);
    assert!(r.stdout.contains("valid: true"));
    let report = json(&out);
    assert_eq!(report["valid"], Value::Bool(true));
    assert!(report["failures"].as_array().unwrap().is_empty());
}

#[test]
fn validate_rejects_an_invalid_family_with_exit_1() {
    let dir = TempDir::new().unwrap();
    let dims = BoxDims::new(vec![2, 2, 2]).unwrap();
    let dupes = Family::new(
        dims,
        2,
        Mode::Increasing,
        vec![Tuple::new(vec![1, 1, 1]), Tuple::new(vec![1, 1, 1])],
    )
    .unwrap();
    let input = dir.path().join("bad.json");
    write(&input, &dupes.to_json());
    let out = dir.path().join("report.json");
    let r = run(&[
        "validate",
        "--family",
        path_str(&input),
        "--out",
        path_str(&out),
    ]);
    assert_eq!(r.status, 1, "stdout: {}\nstderr: {}", r.stdout, r.stderr);
    assert!(r.stdout.contains("valid: false"));
    let report = json(&out);
    assert_eq!(report["valid"], Value::Bool(false));
    assert!(!report["failures"].as_array().unwrap().is_empty());
}

// ---------------------------------------------------------------------------
// search
// ---------------------------------------------------------------------------

#[test]
fn search_report_round_trips_and_witness_validates() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("report.json");
    let r = ok(&[
        "search",
        "--dims",
        "3,3,3",
        "--s",
        "2",
        "--mode",
        "comparable",
        "--out",
        path_str(&out),
    ]);
    assert!(r.stdout.contains("size: 5"));
    let report = SearchReport::from_json(&read(&out)).expect("readable report");
    assert_eq!(report.size, 5);
    assert!(report.proven_optimal);
    assert_eq!(report.witness.len(), 5);
    assert!(report.witness.is_valid());
    let manifest = json(&dir.path().join("report.json.manifest.json"));
    assert_eq!(manifest["command"], Value::String("search".into()));
    assert!(manifest["rng"].is_null());
}

#[test]
fn search_exhausted_budget_exits_3_but_still_reports() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("report.json");
    let r = run(&[
        "search",
        "--dims",
        "4,4,4",
        "--s",
        "2",
        "--mode",
        "increasing",
        "--max-nodes",
        "1",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(r.status, 3, "stdout: {}\nstderr: {}", r.stdout, r.stderr);
    assert!(r.stderr.contains("budget"));
    let report = SearchReport::from_json(&read(&out)).expect("readable report");
    assert!(!report.proven_optimal);
}

// ---------------------------------------------------------------------------
// construct
// ---------------------------------------------------------------------------

#[test]
fn construct_base_interleave_round_trips() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("family.json");
    ok(&[
        "construct",
        "base-interleave",
        "--base",
        "2",
        "--arity",
        "3",
        "--s",
        "2",
        "--out",
        path_str(&out),
    ]);
    let family = Family::from_json(&read(&out)).expect("readable family");
    assert_eq!(family, base_interleave(2, 3, 2).unwrap());
    assert!(family.is_valid());
}

#[test]
fn construct_product_round_trips() {
    let dir = TempDir::new().unwrap();
    let operand = dir.path().join("op.json");
    write(&operand, &base_interleave(2, 3, 2).unwrap().to_json());
    let out = dir.path().join("family.json");
    ok(&[
        "construct",
        "product",
        "--left",
        path_str(&operand),
        "--right",
        path_str(&operand),
        "--out",
        path_str(&out),
    ]);
    let family = Family::from_json(&read(&out)).expect("readable family");
    assert_eq!(family.dims().sides(), &[16, 16, 16]);
    assert_eq!(family.len(), 64);
    assert!(family.is_valid());
    // Mismatched operands are a usage error, not a crash.
    let skew = dir.path().join("skew.json");
    write(&skew, &base_interleave(2, 4, 2).unwrap().to_json());
    let r = run(&[
        "construct",
        "product",
        "--left",
        path_str(&operand),
        "--right",
        path_str(&skew),
    ]);
    assert_eq!(r.status, 2, "stderr: {}", r.stderr);
}

#[test]
fn construct_boost_round_trips() {
    let dir = TempDir::new().unwrap();
    let input = save_gallery(dir.path(), "fig2b_9");
    let out = dir.path().join("family.json");
    ok(&[
        "construct",
        "boost",
        "--family",
        path_str(&input),
        "--out",
        path_str(&out),
    ]);
    let family = Family::from_json(&read(&out)).expect("readable family");
    assert_eq!(family.dims().sides(), &[80, 80, 80]);
    assert_eq!(family.len(), 729);
    assert!(family.is_valid());
}

#[test]
fn construct_affine_round_trips() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("family.json");
    ok(&[
        "construct",
        "affine",
        "--order",
        "3",
        "--exponent",
        "2",
        "--out",
        path_str(&out),
    ]);
    let family = Family::from_json(&read(&out)).expect("readable family");
    assert_eq!(family.arity(), 9);
    assert_eq!(family.s(), 3);
    assert_eq!(family.len(), 27);
    assert_eq!(family.mode(), Mode::Comparable);
    assert!(family.is_valid());
}

#[test]
fn construct_discretize_matches_the_named_grid_family() {
    let dir = TempDir::new().unwrap();
    let cuboids = five_cuboids(&rat(4, 9)).unwrap();
    let input = dir.path().join("cuboids.json");
    write(&input, &cuboids.to_json().unwrap());
    let out = dir.path().join("discrete.json");
    let r = ok(&[
        "construct",
        "discretize",
        "--cuboids",
        path_str(&input),
        "--fill",
        "best",
        "--out",
        path_str(&out),
    ]);
    assert!(r.stdout.contains("blockCounts: [8, 4, 4, 4, 8]"));
    let payload = json(&out);
    assert_eq!(payload["blockCounts"], serde_json::json!([8, 4, 4, 4, 8]));
    let family =
        Family::from_json(&payload["family"].to_string()).expect("readable embedded family");
    assert_eq!(family.dims().sides(), &[9, 9, 9]);
    let named = gallery(GalleryId::Fig2a28).unwrap();
    assert_eq!(tuple_set(&family), tuple_set(&named));
}

// ---------------------------------------------------------------------------
// gallery, grid, conditions
// ---------------------------------------------------------------------------

#[test]
fn gallery_grid_render_matches_the_library_rendering() {
    let r = ok(&["gallery", "fig2a", "--render", "grid"]);
    let family = gallery(GalleryId::Fig2a28).unwrap();
    let expected = to_grid(&family, LabelCoord::Third).unwrap().render();
    assert_eq!(r.stdout, expected);
}

#[test]
fn gallery_out_round_trips_and_aliases_resolve() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("family.json");
    ok(&["gallery", "n4", "--out", path_str(&out)]);
    let family = Family::from_json(&read(&out)).expect("readable family");
    assert_eq!(family, gallery(GalleryId::N4Len8).unwrap());
    let r = ok(&["gallery", "prek-sharp-4"]);
    assert!(r.stdout.contains("size: 11"));
}

#[test]
fn grid_out_round_trips_through_serde() {
    let dir = TempDir::new().unwrap();
    let input = save_gallery(dir.path(), "fig2b_9");
    let out = dir.path().join("grid.json");
    let r = ok(&[
        "grid",
        "--family",
        path_str(&input),
        "--out",
        path_str(&out),
    ]);
    let expected = to_grid(&gallery(GalleryId::Fig2b9).unwrap(), LabelCoord::Third).unwrap();
    assert_eq!(r.stdout, expected.render());
    let parsed: LabelledGrid = serde_json::from_str(&read(&out)).expect("readable grid");
    assert_eq!(parsed, expected);
}

#[test]
fn conditions_reports_the_transitivity_failure() {
    let dir = TempDir::new().unwrap();
    let input = save_gallery(dir.path(), "fig2a_28");
    let out = dir.path().join("conditions.json");
    let r = ok(&[
        "conditions",
        "--family",
        path_str(&input),
        "--out",
        path_str(&out),
    ]);
    assert!(r.stdout.contains("C3': fails"));
    let report = json(&out);
    assert_eq!(report["c1"]["holds"], Value::Bool(true));
    assert_eq!(report["c2"]["holds"], Value::Bool(true));
    assert_eq!(report["c3Prime"]["holds"], Value::Bool(false));
}

// ---------------------------------------------------------------------------
// alpha, optimize-x, profile, improve
// ---------------------------------------------------------------------------

#[test]
fn alpha_writes_trace_report_and_manifest() {
    let dir = TempDir::new().unwrap();
    let trace = dir.path().join("trace.csv");
    let out = dir.path().join("alpha.json");
    ok(&[
        "alpha",
        "--tol",
        "1e-3",
        "--trace",
        path_str(&trace),
        "--out",
        path_str(&out),
    ]);
    let report = json(&out);
    let alpha = report["alpha"].as_f64().unwrap();
    assert!((0.510..=0.520).contains(&alpha), "alpha = {alpha}");
    let csv = read(&trace);
    assert!(csv.starts_with("index,alpha,score,holds,lo,hi\n"));
    assert!(csv.lines().count() > 3);
    let manifest = json(&dir.path().join("trace.csv.manifest.json"));
    assert_eq!(manifest["command"], Value::String("alpha".into()));
    assert!(manifest["rng"].is_null());
    assert_eq!(manifest["outputs"].as_array().unwrap().len(), 2);
}

#[test]
fn optimize_x_hits_the_known_optimum() {
    let dir = TempDir::new().unwrap();
    let trace = dir.path().join("trace.csv");
    let out = dir.path().join("xstar.json");
    ok(&[
        "optimize-x",
        "--alpha",
        "0.5",
        "--trace",
        path_str(&trace),
        "--out",
        path_str(&out),
    ]);
    let report = json(&out);
    let x_star = report["xStar"].as_f64().unwrap();
    let score = report["score"].as_f64().unwrap();
    assert!((x_star - (7.0 + 5f64.sqrt()) / 22.0).abs() < 1e-6);
    assert!((score - ((13.0 + 5.0 * 5f64.sqrt()) / 22.0).sqrt()).abs() < 1e-9);
    assert!(read(&trace).starts_with("iteration,lo,hi,probeLow,probeHigh,scoreLow,scoreHigh\n"));
}

#[test]
fn profile_reports_the_layered_cross_section() {
    let dir = TempDir::new().unwrap();
    let cuboids = from_family(&uneven_layer_family()).unwrap();
    let input = dir.path().join("cuboids.json");
    write(&input, &cuboids.to_json().unwrap());
    let out = dir.path().join("profile.json");
    let r = ok(&[
        "profile",
        "--cuboids",
        path_str(&input),
        "--axis",
        "3",
        "--alpha",
        "0.5",
        "--out",
        path_str(&out),
    ]);
    assert!(r.stdout.contains("pieces: 4"));
    let report = json(&out);
    assert_eq!(report["constant"], Value::Bool(false));
    let values: Vec<f64> = report["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    let expected = [1.2, 0.8, 0.8, 1.2];
    assert_eq!(values.len(), expected.len());
    for (v, e) in values.iter().zip(expected) {
        assert!((v - e).abs() < 1e-12);
    }
}

#[test]
fn improve_round_trips_the_shifted_family() {
    let dir = TempDir::new().unwrap();
    let cuboids = from_family(&uneven_layer_family()).unwrap();
    let input = dir.path().join("cuboids.json");
    write(&input, &cuboids.to_json().unwrap());
    let out = dir.path().join("improved.json");
    let r = ok(&[
        "improve",
        "--cuboids",
        path_str(&input),
        "--axis",
        "3",
        "--alpha",
        "0.5",
        "--out",
        path_str(&out),
    ]);
    assert!(r.stdout.contains("outcome: improved"));
    let report = json(&out);
    assert_eq!(report["outcome"], Value::String("improved".into()));
    let before = report["scoreBefore"].as_f64().unwrap();
    let after = report["scoreAfter"].as_f64().unwrap();
    assert!(after > before);
    let shifted =
        CuboidFamily::from_json(&report["family"].to_string()).expect("readable cuboid family");
    assert_eq!(shifted.cuboids().len(), cuboids.cuboids().len());
}

// ---------------------------------------------------------------------------
// decompose
// ---------------------------------------------------------------------------

#[test]
fn decompose_distinguishes_the_two_named_families() {
    let dir = TempDir::new().unwrap();
    let splittable = save_gallery(dir.path(), "n4_len8");
    let out = dir.path().join("summary.json");
    let r = ok(&[
        "decompose",
        "--family",
        path_str(&splittable),
        "--out",
        path_str(&out),
    ]);
    assert!(r.stdout.contains("indecomposable: false"));
    let summary = json(&out);
    assert_eq!(summary["indecomposable"], Value::Bool(false));
    assert_eq!(summary["results"].as_array().unwrap().len(), 3);

    let rigid = save_gallery(dir.path(), "lastfig_15");
    let out2 = dir.path().join("summary2.json");
    let r = ok(&[
        "decompose",
        "--family",
        path_str(&rigid),
        "--out",
        path_str(&out2),
    ]);
    assert!(r.stdout.contains("indecomposable: true"));
    assert_eq!(json(&out2)["indecomposable"], Value::Bool(true));
}

#[test]
fn decompose_single_coordinate_reports_blocks() {
    let dir = TempDir::new().unwrap();
    let input = save_gallery(dir.path(), "n4_len8");
    let out = dir.path().join("result.json");
    ok(&[
        "decompose",
        "--family",
        path_str(&input),
        "--label-coord",
        "1",
        "--out",
        path_str(&out),
    ]);
    let result = json(&out);
    assert_eq!(result["labelCoord"], serde_json::json!(1));
    assert_eq!(result["decomposable"], Value::Bool(true));
    assert_eq!(result["blocks"].as_array().unwrap().len(), 4);
}

// ---------------------------------------------------------------------------
// hyper
// ---------------------------------------------------------------------------

#[test]
fn hyper_build_free_and_triangles_round_trip() {
    let dir = TempDir::new().unwrap();
    let input = save_gallery(dir.path(), "n4_len8");
    let built = dir.path().join("hypergraph.json");
    let r = ok(&[
        "hyper",
        "build",
        "--family",
        path_str(&input),
        "--out",
        path_str(&built),
    ]);
    assert!(r.stdout.contains("linear: true"));
    let parsed = TripartiteHypergraph::from_json(&read(&built)).expect("readable hypergraph");
    let direct = to_hypergraph(&gallery(GalleryId::N4Len8).unwrap()).unwrap();
    assert_eq!(parsed.part_sizes(), direct.part_sizes());
    assert_eq!(parsed.edge_count(), direct.edge_count());

    let free_out = dir.path().join("free.json");
    let r = ok(&[
        "hyper",
        "free",
        "--hypergraph",
        path_str(&built),
        "--span",
        "10",
        "--edges",
        "6",
        "--threads",
        "2",
        "--out",
        path_str(&free_out),
    ]);
    assert!(r.stdout.contains("free: true"));
    assert_eq!(json(&free_out)["free"], Value::Bool(true));

    let tri_out = dir.path().join("triangles.json");
    let r = ok(&[
        "hyper",
        "triangles",
        "--family",
        path_str(&input),
        "--out",
        path_str(&tri_out),
    ]);
    assert!(r.stdout.contains("triangles: 8"));
    let counts = json(&tri_out);
    assert_eq!(counts["edgeCount"], serde_json::json!(24));
    assert_eq!(counts["triangleCount"], serde_json::json!(8));
}

// ---------------------------------------------------------------------------
// ruzsa
// ---------------------------------------------------------------------------

#[test]
fn ruzsa_check_reports_freeness_and_witnesses() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("check.json");
    let r = ok(&["ruzsa", "check", "--set", "1,2,3", "--out", path_str(&out)]);
    assert!(r.stdout.contains("free: false"));
    let report = json(&out);
    assert_eq!(report["free"], Value::Bool(false));
    assert_eq!(report["witness"], serde_json::json!([2, 3, 1, 3]));

    let r = ok(&["ruzsa", "check", "--set", "1,2,6,7,24,26"]);
    assert!(r.stdout.contains("free: true"));
}

#[test]
fn ruzsa_greedy_matches_the_known_prefix() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("greedy.json");
    let r = ok(&["ruzsa", "greedy", "--limit", "50", "--out", path_str(&out)]);
    assert!(r.stdout.contains("set: [1, 2, 6, 7, 24, 26]"));
    let payload = json(&out);
    assert_eq!(payload["set"], serde_json::json!([1, 2, 6, 7, 24, 26]));
}

#[test]
fn ruzsa_graph_and_patterns_round_trip() {
    let dir = TempDir::new().unwrap();
    let graph_out = dir.path().join("graph.json");
    ok(&[
        "ruzsa",
        "graph",
        "--set",
        "1,2,6,7,24,26",
        "--n",
        "50",
        "--out",
        path_str(&graph_out),
    ]);
    let parsed: LabelledBipartite =
        serde_json::from_str(&read(&graph_out)).expect("readable graph");
    assert_eq!(parsed, ruzsa_graph(&[1, 2, 6, 7, 24, 26], 50).unwrap());

    let patterns_out = dir.path().join("patterns.json");
    let r = ok(&[
        "ruzsa",
        "patterns",
        "--graph",
        path_str(&graph_out),
        "--out",
        path_str(&patterns_out),
    ]);
    assert!(r.stdout.contains("aa: free"));
    assert!(r.stdout.contains("abcab: free"));
    let reports = json(&patterns_out);
    let reports = reports.as_array().unwrap();
    assert_eq!(reports.len(), 3);
    for report in reports {
        assert_eq!(report["free"], Value::Bool(true));
    }

    // The --set/--n form agrees with the --graph form.
    let r2 = ok(&["ruzsa", "patterns", "--set", "1,2,6,7,24,26", "--n", "50"]);
    assert_eq!(r.stdout, r2.stdout);
}

// ---------------------------------------------------------------------------
// grow, sample: determinism and manifests
// ---------------------------------------------------------------------------

#[test]
fn grow_is_seed_deterministic_and_manifested() {
    let dir = TempDir::new().unwrap();
    let first = dir.path().join("a.json");
    let second = dir.path().join("b.json");
    for out in [&first, &second] {
        ok(&[
            "grow",
            "--dims",
            "3,3,3",
            "--s",
            "2",
            "--seed",
            "7",
            "--out",
            path_str(out),
        ]);
    }
    let bytes = std::fs::read(&first).unwrap();
    assert_eq!(
        bytes,
        std::fs::read(&second).unwrap(),
        "same seed, same output"
    );
    assert!(Family::from_json(&read(&first))
        .expect("readable family")
        .is_valid());

    let manifest = json(&dir.path().join("a.json.manifest.json"));
    assert_eq!(
        manifest["rng"]["algorithm"],
        Value::String("chacha8-seed64".into())
    );
    assert_eq!(manifest["rng"]["seed"], serde_json::json!(7));
    let recorded = manifest["outputs"][0]["sha256"].as_str().unwrap();
    let recomputed = hex::encode(<sha2::Sha256 as sha2::Digest>::digest(&bytes));
    assert_eq!(recorded, recomputed, "manifest digest matches file content");
}

#[test]
fn grow_seeds_differ_and_policies_parse() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    ok(&[
        "grow",
        "--dims",
        "4,4,4",
        "--s",
        "2",
        "--seed",
        "1",
        "--out",
        path_str(&a),
    ]);
    ok(&[
        "grow",
        "--dims",
        "4,4,4",
        "--s",
        "2",
        "--seed",
        "2",
        "--out",
        path_str(&b),
    ]);
    assert_ne!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let r = ok(&[
        "grow",
        "--dims",
        "3,3,3",
        "--s",
        "1",
        "--policy",
        "max-min-coordinate",
    ]);
    assert!(r.stdout.contains("policy: max-min-coordinate"));
}

#[test]
fn sample_is_seed_deterministic_and_mode_valid() {
    let dir = TempDir::new().unwrap();
    let first = dir.path().join("a.json");
    let second = dir.path().join("b.json");
    for out in [&first, &second] {
        ok(&[
            "sample",
            "--n",
            "2",
            "--arity",
            "16",
            "--beta",
            "1/8",
            "--size",
            "50",
            "--seed",
            "1",
            "--out",
            path_str(out),
        ]);
    }
    assert_eq!(
        std::fs::read(&first).unwrap(),
        std::fs::read(&second).unwrap()
    );
    let family = Family::from_json(&read(&first)).expect("readable family");
    assert_eq!(family.mode(), Mode::Comparable);
    assert_eq!(family.arity(), 16);
    assert!(family.is_valid());
}

// ---------------------------------------------------------------------------
// failure modes
// ---------------------------------------------------------------------------

#[test]
fn usage_errors_exit_2() {
    let r = run(&["validate", "--family", "/nonexistent/family.json"]);
    assert_eq!(r.status, 2, "stderr: {}", r.stderr);

    let r = run(&[
        "search", "--dims", "3,3,3", "--s", "2", "--mode", "sideways",
    ]);
    assert_eq!(r.status, 2);

    let r = run(&["gallery", "no_such_family"]);
    assert_eq!(r.status, 2);

    let r = run(&["--bogus-flag"]);
    assert_eq!(r.status, 2);

    let dir = TempDir::new().unwrap();
    let garbage = dir.path().join("garbage.json");
    write(&garbage, "not json at all");
    let r = run(&["validate", "--family", path_str(&garbage)]);
    assert_eq!(r.status, 2);

    // Grid encodings need arity 3.
    let four = save_gallery(dir.path(), "f42_len10");
    let r = run(&["conditions", "--family", path_str(&four)]);
    assert_eq!(r.status, 2, "stderr: {}", r.stderr);
}
