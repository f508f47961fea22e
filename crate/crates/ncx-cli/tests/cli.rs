//! End-to-end checks of the `ncx` binary: exit codes, JSON contracts, and
//! the documented examples.

use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::atomic::{AtomicU32, Ordering};

use ncx_core::chainmap::ChainMap;
use ncx_core::complex::mu;
use ncx_core::field::FieldSpec;
use ncx_core::io;
use serde_json::{json, Value};

fn ncx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncx"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

static COUNTER: AtomicU32 = AtomicU32::new(0);

fn temp_file(tag: &str, contents: &str) -> PathBuf {
    let k = COUNTER.fetch_add(1, Ordering::Relaxed);
    let path = std::env::temp_dir().join(format!(
        "ncx-cli-test-{}-{k}-{tag}.json",
        std::process::id()
    ));
    std::fs::write(&path, contents).expect("temp file writes");
    path
}

fn mu21_file() -> PathBuf {
    let x = mu(3, FieldSpec::Rationals, 2, 1, 1).unwrap();
    temp_file("mu21", &io::complex_to_string(&x))
}

#[test]
fn mu_builds_the_documented_block() {
    let out = ncx(&["mu", "--N", "3", "--r", "3", "--s", "2", "--dim", "1"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["N"], 3);
    assert_eq!(v["min_degree"], 0);
    assert_eq!(v["dims"], json!([1, 1, 1]));
    assert_eq!(v["field"], json!({"kind": "Q"}));
}

#[test]
fn homology_of_the_short_block_matches_the_documented_table() {
    let path = mu21_file();
    let out = ncx(&["homology", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(
        stdout_json(&out),
        json!([
            {"degree": 0, "amplitude": 2, "dim": 1},
            {"degree": 1, "amplitude": 1, "dim": 1},
        ])
    );
    let text = ncx(&["homology", path.to_str().unwrap(), "--format", "text"]);
    let rendered = String::from_utf8_lossy(&text.stdout);
    assert!(rendered.contains("H^0_(2) = k^1"), "got: {rendered}");
}

#[test]
fn validate_accepts_good_and_rejects_bad_with_exit_codes() {
    let good = mu21_file();
    let ok = ncx(&["validate", good.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout_json(&ok)["valid"], json!(true));

    let bad = temp_file(
        "bad",
        &json!({
            "N": 2,
            "field": {"kind": "Q"},
            "min_degree": 0,
            "dims": [1, 1, 1],
            "diffs": [[["1"]], [["1"]]],
        })
        .to_string(),
    );
    let rej = ncx(&["validate", bad.to_str().unwrap()]);
    assert_eq!(rej.status.code(), Some(1));
    let v = stdout_json(&rej);
    assert_eq!(v["valid"], json!(false));
    assert!(v["error"].as_str().unwrap().contains("d^N"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(ncx(&["no-such-verb"]).status.code(), Some(2));
    assert_eq!(ncx(&["mu", "--N", "3"]).status.code(), Some(2)); // missing --r/--s
    assert_eq!(
        ncx(&["mu", "--N", "3", "--r", "1", "--s", "0", "--field", "fp:4"])
            .status
            .code(),
        Some(2) // 4 is not prime
    );
}

#[test]
fn missing_file_is_a_domain_error_naming_the_path() {
    let out = ncx(&["homology", "/nonexistent/x.json"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("/nonexistent/x.json"), "got: {err}");
}

#[test]
fn qis_verdicts_drive_the_exit_code() {
    let x = mu(3, FieldSpec::Rationals, 2, 1, 1).unwrap();
    let id = temp_file("id", &io::chainmap_to_string(&ChainMap::identity(&x)));
    let yes = ncx(&["qis", id.to_str().unwrap()]);
    assert_eq!(yes.status.code(), Some(0));
    assert_eq!(stdout_json(&yes)["qis"], json!(true));

    let zero = temp_file(
        "zero",
        &io::chainmap_to_string(&ChainMap::zero_map(&x, &x)),
    );
    let no = ncx(&["qis", zero.to_str().unwrap()]);
    assert_eq!(no.status.code(), Some(1));
    assert_eq!(stdout_json(&no)["qis"], json!(false));
}

#[test]
fn nullhomotopy_finds_witnesses_exactly_for_contractible_identities() {
    let full = mu(3, FieldSpec::Rationals, 3, 2, 1).unwrap();
    let id_full = temp_file("idfull", &io::chainmap_to_string(&ChainMap::identity(&full)));
    let yes = ncx(&["nullhomotopy", id_full.to_str().unwrap()]);
    assert_eq!(yes.status.code(), Some(0));
    let v = stdout_json(&yes);
    assert_eq!(v["null_homotopic"], json!(true));
    assert!(v["witness"].is_array());

    let short = mu(3, FieldSpec::Rationals, 2, 1, 1).unwrap();
    let id_short = temp_file("idshort", &io::chainmap_to_string(&ChainMap::identity(&short)));
    let no = ncx(&["nullhomotopy", id_short.to_str().unwrap()]);
    assert_eq!(no.status.code(), Some(1));
    assert_eq!(stdout_json(&no)["null_homotopic"], json!(false));
}

#[test]
fn suspend_emits_a_parsable_complex_with_provenance() {
    let path = mu21_file();
    let out = ncx(&["suspend", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let back = io::complex_from_json(&v["complex"]).expect("output complex parses");
    assert_eq!(back.n, 3);
    let blocks = v["blocks"].as_array().unwrap();
    assert!(!blocks.is_empty());
    // Each provenance entry is a [source_degree, slot] pair.
    assert!(blocks.iter().all(|b| b.as_array().map_or(false, |p| p.len() == 2)));
}

#[test]
fn shift_then_unshift_round_trips() {
    let path = mu21_file();
    let shifted = ncx(&["shift", path.to_str().unwrap(), "--t", "2"]);
    assert!(shifted.status.success());
    let mid = temp_file("shifted", &stdout_json(&shifted).to_string());
    let back = ncx(&["shift", mid.to_str().unwrap(), "--t", "-2"]);
    let v = stdout_json(&back);
    let original: Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v, original);
}

#[test]
fn truncate_keeps_the_advertised_side() {
    let path = mu21_file();
    let keep = ncx(&[
        "truncate",
        path.to_str().unwrap(),
        "--kind",
        "sigma-le",
        "--at",
        "1",
    ]);
    assert!(keep.status.success());
    let v = stdout_json(&keep);
    assert_eq!(v["dims"], json!([1, 1]));
    assert_eq!(v["min_degree"], 0);

    // Cutting at 0 tapers to the amplitude-1 cycles of the identity
    // differential, which are zero: the whole block goes away.
    let cut = ncx(&[
        "truncate",
        path.to_str().unwrap(),
        "--kind",
        "sigma-le",
        "--at",
        "0",
    ]);
    assert_eq!(stdout_json(&cut)["dims"], json!([]));
}

#[test]
fn homdim_counts_chain_maps_and_homotopy_classes() {
    let path = mu21_file();
    let p = path.to_str().unwrap();
    let out = ncx(&["homdim", p, p]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    // End(mu_2^1) is 1-dimensional; the identity is not null-homotopic.
    assert_eq!(v["chain_maps"], json!(1));
    assert_eq!(v["up_to_homotopy"], json!(1));
}

#[test]
fn les_single_reports_an_exact_sequence() {
    let path = mu21_file();
    let out = ncx(&["les-single", path.to_str().unwrap(), "--l", "1", "--m", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["exact"], json!(true));
    assert!(v["nodes"].as_array().map_or(false, |n| !n.is_empty()));
}

#[test]
fn les_ses_accepts_the_block_inclusion_sequence() {
    let field = FieldSpec::Rationals;
    let sub = mu(3, field, 1, 1, 1).unwrap();
    let mid = mu(3, field, 2, 1, 1).unwrap();
    let quo = mu(3, field, 1, 0, 1).unwrap();
    // Window intersections: alpha only has degree 1, beta only degree 0.
    let alpha = ChainMap::from_fn(sub.clone(), mid.clone(), |_| {
        ncx_core::matrix::Matrix::from_i64(field, &[&[1]])
    });
    let beta = ChainMap::from_fn(mid.clone(), quo.clone(), |_| {
        ncx_core::matrix::Matrix::from_i64(field, &[&[1]])
    });
    let fa = temp_file("alpha", &io::chainmap_to_string(&alpha));
    let fb = temp_file("beta", &io::chainmap_to_string(&beta));
    let out = ncx(&["les-ses", fa.to_str().unwrap(), fb.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["exact"], json!(true));

    // A non-exact pair is reported as data, not a crash.
    let not_ses = ncx(&["les-ses", fa.to_str().unwrap(), fa.to_str().unwrap()]);
    assert_eq!(not_ses.status.code(), Some(1));
    assert_eq!(stdout_json(&not_ses)["exact_input"], json!(false));
}

#[test]
fn elementary_builds_the_pullback_tower_with_verdicts() {
    let path = mu21_file();
    let u = temp_file(
        "u",
        &json!({"rows": 1, "cols": 1, "entries": [["1"]]}).to_string(),
    );
    let out = ncx(&[
        "elementary",
        path.to_str().unwrap(),
        u.to_str().unwrap(),
        "--i",
        "1",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["report"]["qis"], json!(true));
    assert!(io::complex_from_json(&v["complex"]).is_ok());
    assert!(io::chainmap_from_json(&v["map"]).is_ok());
}

#[test]
fn exact_square_check_distinguishes_the_three_outcomes() {
    let id = json!({"rows": 1, "cols": 1, "entries": [["1"]]});
    let square = temp_file(
        "sq",
        &json!({"field": {"kind": "Q"}, "f": id, "x": id, "y": id, "fp": id}).to_string(),
    );
    let ok = ncx(&["exact-square-check", square.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));
    let v = stdout_json(&ok);
    assert_eq!(v["pullback"], json!(true));
    assert_eq!(v["exact"], json!(true));

    let two = json!({"rows": 1, "cols": 1, "entries": [["2"]]});
    let crooked = temp_file(
        "crooked",
        &json!({"field": {"kind": "Q"}, "f": id, "x": id, "y": id, "fp": two}).to_string(),
    );
    let bad = ncx(&["exact-square-check", crooked.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(stdout_json(&bad)["commutes"], json!(false));
}

#[test]
fn mor_emits_one_record_per_ladder_index() {
    let path = mu21_file();
    let out = ncx(&["mor", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let records = v.as_array().unwrap();
    assert!(!records.is_empty());
    for rec in records {
        assert!(rec["j"].is_i64());
        assert!(rec["mor"]["dims"].is_array());
        assert!(rec["mor"]["maps"].is_array());
    }
}

#[test]
fn nhn_matches_homology_dimensions() {
    let path = mu21_file();
    let out = ncx(&["nhn", path.to_str().unwrap(), "--i", "0", "--r", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["homology_dim"], json!(1));
    assert_eq!(v["match"], json!(true));
}

#[test]
fn smcatcp2_passes_with_corrected_exponents() {
    let out = ncx(&["smcatcp2", "--N", "4", "--i", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let items = v[0]["items"].as_array().unwrap();
    assert!(items.iter().all(|it| it["corrected_matches"] == json!(true)));
}

#[test]
fn selftest_is_reproducible_and_green_at_small_scale() {
    let run = |args: &[&str]| {
        let out = ncx(args);
        assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
        out.stdout
    };
    let a = run(&["selftest", "--seed", "11", "--cases", "4"]);
    let b = run(&["selftest", "--seed", "11", "--cases", "4"]);
    assert_eq!(a, b, "same seed must give identical output");
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 13);
}

#[test]
fn fp_complexes_flow_through_the_pipeline() {
    let out = ncx(&[
        "mu", "--N", "4", "--r", "2", "--s", "0", "--field", "fp:5",
    ]);
    assert!(out.status.success());
    let path = temp_file("fp", &stdout_json(&out).to_string());
    let h = ncx(&["homology", path.to_str().unwrap()]);
    assert!(h.status.success());
    assert_eq!(
        stdout_json(&h),
        json!([
            {"degree": -1, "amplitude": 2, "dim": 1},
            {"degree": -1, "amplitude": 3, "dim": 1},
            {"degree": 0, "amplitude": 1, "dim": 1},
            {"degree": 0, "amplitude": 2, "dim": 1},
        ])
    );
}
