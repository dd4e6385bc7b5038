use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command, Output};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use swkernel::io::OperatorFile;
use swkernel::phase_space::{random_hermitian, random_operator};
use swkernel::{CMatrix, Complex64};

fn swkernel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swkernel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect()
}

fn write_operator(dir: &Path, name: &str, n: usize, l: usize, m: &CMatrix) -> String {
    let path = dir.join(name);
    OperatorFile::from_matrix(n, l, m, None)
        .write(&path)
        .unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn table_su3_fundamental_p_zero() {
    let out = swkernel(&[
        "table", "--n", "3", "--lambda", "1", "--s", "0", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let p = floats(&v["tables"][0]["p_diagonal"]);
    for (a, b) in p.iter().zip([0.5, 0.25, 0.25]) {
        assert!((a - b).abs() < 1e-12);
    }
}

#[test]
fn table_su3_symmetric_two_c_at_minus_one() {
    let out = swkernel(&[
        "table", "--n", "3", "--lambda", "2", "--s", "-1", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let c = floats(&json(&out)["tables"][0]["c"]);
    let want = [
        1.0 / (2.0 * 6f64.sqrt() * PI),
        2f64.sqrt() / (15f64.sqrt() * PI),
        (0.3f64).sqrt() / (2.0 * PI),
    ];
    for (a, b) in c.iter().zip(want) {
        assert!((a - b).abs() < 1e-12);
    }
}

#[test]
fn table_su2_overlap_is_diagonal() {
    let out = swkernel(&[
        "table", "--n", "2", "--lambda", "1", "--s", "0", "--format", "json",
    ]);
    let g = &json(&out)["tables"][0]["g"];
    for a in 0..2 {
        let row = floats(&g[a]);
        for (b, x) in row.iter().enumerate() {
            let want = if a == b { 2.0 * PI } else { 0.0 };
            assert!((x - want).abs() < 1e-12);
        }
    }
}

#[test]
fn table_text_shows_closed_forms() {
    let out = swkernel(&["table", "--n", "3", "--lambda", "2", "--s", "0"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("(38√2+21√3+6√30)/(2160π)"));
}

#[test]
fn verify_passes_and_is_deterministic() {
    let a = swkernel(&["verify", "--n", "3", "--lambda", "1", "--s", "0"]);
    assert_eq!(a.status.code(), Some(0));
    let b = swkernel(&["verify", "--n", "3", "--lambda", "1", "--s", "0"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["passed"], Value::Bool(true));
}

#[test]
fn verify_boundary_has_rank_one() {
    let out = swkernel(&["verify", "--n", "2", "--lambda", "3", "--s", "-1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["configs"][0]["p_rank"], Value::from(1));
}

#[test]
fn verify_verbatim_mode_reports_distortion() {
    let out = swkernel(&[
        "verify",
        "--n",
        "3",
        "--lambda",
        "1",
        "--s",
        "0",
        "--mode",
        "paper-verbatim",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let d = json(&out)["configs"][0]["distortion"].clone();
    let d = d.as_array().unwrap();
    assert_eq!(d.len(), 2);
    // dim λ · dim σ² / vol with dim λ = 3, vol = 4π²
    let vol = 4.0 * PI * PI;
    for (entry, dim_s) in d.iter().zip([1.0, 8.0]) {
        let got = entry["correction"].as_f64().unwrap();
        let want = 3.0 * dim_s * dim_s / vol;
        assert!((got - want).abs() / want < 1e-8);
    }
}

#[test]
fn verify_with_monte_carlo_grid() {
    let out = swkernel(&[
        "verify",
        "--n",
        "4",
        "--lambda",
        "1",
        "--s",
        "0",
        "--mc-samples",
        "1024",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(swkernel(&["table", "--n", "3"]).status.code(), Some(2));
    assert_eq!(
        swkernel(&["table", "--n", "1", "--lambda", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        swkernel(&["grid", "--n", "4", "--grid", "3,3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        swkernel(&["verify", "--n", "3", "--lambda", "1", "--mode", "nope"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn symbol_of_identity_and_projector() {
    let dir = tempfile::tempdir().unwrap();
    let id = write_operator(dir.path(), "id.json", 3, 2, &CMatrix::identity(6, 6));
    let csv = dir.path().join("id.csv");
    let out = swkernel(&[
        "symbol",
        &id,
        "--s",
        "0.5",
        "--out",
        csv.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let stats = json(&out);
    assert!((stats["min_re"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert!((stats["max_re"].as_f64().unwrap() - 1.0).abs() < 1e-10);

    let mut hw = CMatrix::zeros(6, 6);
    hw[(0, 0)] = Complex64::new(1.0, 0.0);
    let hw = write_operator(dir.path(), "hw.json", 3, 2, &hw);
    let out = swkernel(&[
        "symbol",
        &hw,
        "--s",
        "-1",
        "--format",
        "json",
        "--out",
        csv.to_str().unwrap(),
    ]);
    let stats = json(&out);
    assert!(stats["max_re"].as_f64().unwrap() <= 1.0 + 1e-12);
    assert!((stats["at_identity_re"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn symbol_of_hermitian_operator_is_real() {
    let dir = tempfile::tempdir().unwrap();
    let h = random_hermitian(3, &mut ChaCha8Rng::seed_from_u64(3));
    let path = write_operator(dir.path(), "h.json", 3, 1, &h);
    let csv = dir.path().join("h.csv");
    let out = swkernel(&[
        "symbol",
        &path,
        "--s",
        "0",
        "--format",
        "json",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(json(&out)["max_abs_im"].as_f64().unwrap() < 1e-10);
}

#[test]
fn symbol_rejects_bad_operator_files() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"n\": 3,").unwrap();
    assert_eq!(
        swkernel(&["symbol", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );
    std::fs::write(&bad, r#"{"n":3,"lambda":1,"dim":4,"entries":[]}"#).unwrap();
    assert_eq!(
        swkernel(&["symbol", bad.to_str().unwrap()]).status.code(),
        Some(1)
    );
}

#[test]
fn reconstruct_round_trip_and_truncation() {
    let dir = tempfile::tempdir().unwrap();
    let x = random_operator(6, &mut ChaCha8Rng::seed_from_u64(9));
    let xf = write_operator(dir.path(), "x.json", 3, 2, &x);
    let csv = dir.path().join("x.csv");
    let rec = dir.path().join("rec.json");
    let csv_s = csv.to_str().unwrap();
    let rec_s = rec.to_str().unwrap();

    assert_eq!(
        swkernel(&["symbol", &xf, "--s", "0", "--out", csv_s])
            .status
            .code(),
        Some(0)
    );
    let out = swkernel(&["reconstruct", csv_s, "--reference", &xf, "--out", rec_s]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["reference_residual"].as_f64().unwrap() <= 1e-8);
    let back = OperatorFile::read(&rec).unwrap().to_matrix().unwrap();
    assert!(swkernel::linalg::frobenius(&(back - &x)) < 1e-10);

    // identity reconstructs to itself
    let id = write_operator(dir.path(), "id.json", 3, 2, &CMatrix::identity(6, 6));
    swkernel(&["symbol", &id, "--s", "1", "--out", csv_s]);
    let out = swkernel(&["reconstruct", csv_s, "--reference", &id, "--out", rec_s]);
    assert!(json(&out)["reference_residual"].as_f64().unwrap() <= 1e-10);

    // a grid below the band limit of a generic operator is caught
    swkernel(&[
        "symbol", &xf, "--s", "0", "--grid", "3,2,3,2", "--out", csv_s,
    ]);
    let out = swkernel(&["reconstruct", csv_s, "--reference", &xf, "--out", rec_s]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["resample_residual"].as_f64().unwrap() > 1e-3);
}

#[test]
fn reconstruct_verbatim_mode_exceeds_tolerance() {
    let dir = tempfile::tempdir().unwrap();
    let x = random_operator(3, &mut ChaCha8Rng::seed_from_u64(4));
    let xf = write_operator(dir.path(), "x.json", 3, 1, &x);
    let csv = dir.path().join("x.csv");
    let csv_s = csv.to_str().unwrap();
    let out_path = dir.path().join("r.json");
    swkernel(&[
        "symbol",
        &xf,
        "--s",
        "0",
        "--mode",
        "paper-verbatim",
        "--out",
        csv_s,
    ]);
    let out = swkernel(&[
        "reconstruct",
        csv_s,
        "--reference",
        &xf,
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["distortion"].as_array().unwrap().len(), 2);
}

#[test]
fn grid_weights_sum_to_volume() {
    let out = swkernel(&["grid", "--n", "3", "--grid", "5,3,5,3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["points"].as_array().unwrap().len(), 225);
    assert!((v["total_weight"].as_f64().unwrap() - 4.0 * PI * PI).abs() < 1e-8);
    let csv = swkernel(&["grid", "--n", "2", "--grid", "3,2"]);
    assert_eq!(String::from_utf8(csv.stdout).unwrap().lines().count(), 7);
}
