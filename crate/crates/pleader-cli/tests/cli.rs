//! End-to-end tests of the `pleader` binary: every subcommand, the exit-code
//! contract, and the equivalence of the file pipeline with the in-memory one.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use pleader::mfa::{analyze, AnalysisConfig};
use pleader::processes::ProcessSpec;
use pleader::wavelet::{daubechies_filter, dwt_1d, max_analysis_octaves_1d, Signal};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pleader"))
}

/// Fresh scratch directory, unique per test.
fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pleader-cli-{}-{tag}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run_ok(cmd: &mut Command) -> Output {
    let out = cmd.output().expect("binary should launch");
    assert!(
        out.status.success(),
        "expected success, got {:?}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn run_err(cmd: &mut Command, expected_code: i32) -> String {
    let out = cmd.output().expect("binary should launch");
    assert_eq!(
        out.status.code(),
        Some(expected_code),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let stderr = String::from_utf8(out.stderr).unwrap();
    let lines: Vec<&str> = stderr.lines().collect();
    assert_eq!(lines.len(), 1, "error output must be one line, got {stderr:?}");
    assert!(lines[0].starts_with("error: "), "got {stderr:?}");
    stderr
}

fn write(path: &Path, contents: &str) {
    fs::write(path, contents).unwrap();
}

#[test]
fn synth_is_seed_deterministic() {
    let dir = scratch("synth-seed");
    let spec = dir.join("fbm.json");
    write(&spec, r#"{ "kind": "fbm", "n": 1024, "hurst": 0.7 }"#);

    let out_a = dir.join("a.csv");
    let out_b = dir.join("b.csv");
    let out_c = dir.join("c.csv");
    run_ok(bin().args(["synth", "--spec"]).arg(&spec).arg("--seed").arg("7").arg("--out").arg(&out_a));
    run_ok(bin().args(["synth", "--spec"]).arg(&spec).arg("--seed").arg("7").arg("--out").arg(&out_b));
    run_ok(bin().args(["synth", "--spec"]).arg(&spec).arg("--seed").arg("8").arg("--out").arg(&out_c));

    let a = fs::read(&out_a).unwrap();
    let b = fs::read(&out_b).unwrap();
    let c = fs::read(&out_c).unwrap();
    assert_eq!(a, b, "same seed must give identical files");
    assert_ne!(a, c, "different seeds must differ");
    assert!(a.starts_with(b"index,value\n"));
    assert_eq!(a.iter().filter(|&&byte| byte == b'\n').count(), 1025);
}

#[test]
fn file_pipeline_matches_in_memory_analysis() {
    let dir = scratch("roundtrip");
    let spec = dir.join("fbm.json");
    write(&spec, r#"{ "kind": "fbm", "n": 4096, "hurst": 0.7 }"#);
    let csv = dir.join("x.csv");
    let report_path = dir.join("report.json");
    run_ok(bin().args(["synth", "--spec"]).arg(&spec).arg("--seed").arg("42").arg("--out").arg(&csv));
    run_ok(
        bin()
            .arg("analyze")
            .arg(&csv)
            .args(["--p", "0.5,2", "--m", "2", "--out"])
            .arg(&report_path),
    );

    // The same realization, analyzed without touching the filesystem.
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let proc = ProcessSpec::Fbm {
        n: 4096,
        hurst: 0.7,
        integrate: None,
    };
    let path = proc.synthesize(&mut rng).unwrap();
    let signal = Signal::new_1d(path, 1.0).unwrap();
    let filter = daubechies_filter(3).unwrap();
    let octaves = max_analysis_octaves_1d(4096, filter.len());
    let pyramid = dwt_1d(&signal, &filter, octaves).unwrap();
    let config = AnalysisConfig {
        p_values: vec![0.5, 2.0],
        m_max: 2,
        ..AnalysisConfig::default()
    };
    let reference = analyze(&pyramid, &config).unwrap();

    let report: Value = serde_json::from_str(&fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report["format"], "pleader-report");
    assert_eq!(report["version"], 1);
    assert!(report["index_convention"].as_str().unwrap().contains("finest"));
    let per_p = report["per_p"].as_array().unwrap();
    assert_eq!(per_p.len(), 2);
    for (pa_json, pa_mem) in per_p.iter().zip(&reference.per_p) {
        assert_eq!(pa_json["p"].as_f64().unwrap(), pa_mem.p);
        let c1_json = pa_json["log_cumulants"][0]["value"].as_f64().unwrap();
        let c1_mem = pa_mem.log_cumulants[0].value;
        assert!(
            (c1_json - c1_mem).abs() < 1e-12,
            "c1 file {c1_json} vs memory {c1_mem}"
        );
        let zeta_json = pa_json["zeta"].as_array().unwrap();
        for (z_json, z_mem) in zeta_json.iter().zip(&pa_mem.zeta) {
            assert!((z_json["zeta"].as_f64().unwrap() - z_mem.zeta).abs() < 1e-12);
        }
    }
}

#[test]
fn cascade_pyramid_round_trips_through_analyze() {
    let dir = scratch("cascade");
    let spec = dir.join("dbwc.json");
    write(&spec, r#"{ "kind": "dbwc1d", "depth": 9, "weights": [0.4, 0.9] }"#);
    let pyramid_path = dir.join("cascade.json");
    run_ok(bin().args(["synth", "--spec"]).arg(&spec).arg("--out").arg(&pyramid_path));

    let pyramid_json: Value =
        serde_json::from_str(&fs::read_to_string(&pyramid_path).unwrap()).unwrap();
    assert_eq!(pyramid_json["format"], "pleader-pyramid");
    assert_eq!(pyramid_json["octaves"].as_array().unwrap().len(), 9);

    let out = run_ok(
        bin()
            .arg("analyze")
            .arg(&pyramid_path)
            .args(["--p", "1", "--q", "1,2", "--m", "2"]),
    );
    let report: Value = serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    // Deterministic weights (0.4, 0.9): c1 = -(ln 0.4 + ln 0.9)/(2 ln 2).
    let c1 = report["per_p"][0]["log_cumulants"][0]["value"].as_f64().unwrap();
    let truth = -(0.4_f64.ln() + 0.9_f64.ln()) / (2.0 * std::f64::consts::LN_2);
    assert!((c1 - truth).abs() < 0.05, "c1 {c1} vs {truth}");
}

#[test]
fn infinite_p_and_no_correction_flags() {
    let dir = scratch("flags");
    let spec = dir.join("dbwc.json");
    write(&spec, r#"{ "kind": "dbwc1d", "depth": 8, "weights": [0.3, 0.8] }"#);
    let pyramid_path = dir.join("cascade.json");
    run_ok(bin().args(["synth", "--spec"]).arg(&spec).arg("--out").arg(&pyramid_path));

    let out = run_ok(bin().arg("analyze").arg(&pyramid_path).args(["--p", "inf", "--m", "2"]));
    let report: Value = serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let pa = &report["per_p"][0];
    assert_eq!(pa["structure"]["s"], pa["structure_corrected"]["s"]);
    assert_eq!(pa["cumulants"]["c"], pa["cumulants_corrected"]["c"]);

    let out = run_ok(
        bin()
            .arg("analyze")
            .arg(&pyramid_path)
            .args(["--p", "1", "--m", "2", "--no-correction"]),
    );
    let report: Value = serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let pa = &report["per_p"][0];
    assert!(pa["structure_corrected"].is_null());
    assert!(pa["cumulants_corrected"].is_null());
    // η̂(p) stays in the report as a diagnostic even when unused.
    assert!(pa["eta_p"].as_f64().unwrap().is_finite());
}

#[test]
fn bench_emits_figure_data() {
    let dir = scratch("bench");
    let spec = dir.join("exp.json");
    write(
        &spec,
        r#"{
            "name": "smoke",
            "source": { "kind": "rwc", "depth": 7, "law": { "law": "log_normal", "mu": -0.55, "sigma2": 0.055 } },
            "n_mc": 4,
            "master_seed": 11,
            "p_values": [1, "inf"],
            "m_max": 2
        }"#,
    );
    let outdir = dir.join("figures");
    let out = run_ok(bin().args(["bench", "--spec"]).arg(&spec).arg("--outdir").arg(&outdir));
    let listed = String::from_utf8(out.stdout).unwrap();
    assert_eq!(listed.lines().count(), 3);
    for name in ["smoke_summary.json", "smoke_curves.csv", "smoke_perf.csv"] {
        assert!(outdir.join(name).is_file(), "missing {name}");
    }
    let summary: Value =
        serde_json::from_str(&fs::read_to_string(outdir.join("smoke_summary.json")).unwrap())
            .unwrap();
    assert_eq!(summary["spec"]["name"], "smoke");
    assert_eq!(summary["n_failed"], 0);
}

#[test]
fn hrv_reports_on_a_perturbed_uniform_record() {
    let dir = scratch("hrv");
    let rr_path = dir.join("beats.rr");
    // 2000 beats around 0.8 s with a deterministic wobble; positive always.
    let mut text = String::from("# synthetic tachogram\n");
    let mut state = 0x2545_f491_4f6c_dd1d_u64;
    for i in 0..2000 {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        let jitter = (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5;
        let rr = 0.8 + 0.05 * (i as f64 * 0.37).sin() + 0.04 * jitter;
        text.push_str(&format!("{rr}\n"));
    }
    write(&rr_path, &text);

    let report_path = dir.join("report.json");
    let resampled_path = dir.join("resampled.csv");
    run_ok(
        bin()
            .arg("hrv")
            .arg(&rr_path)
            .arg("--resampled-out")
            .arg(&resampled_path)
            .arg("--out")
            .arg(&report_path),
    );

    let report: Value = serde_json::from_str(&fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report["format"], "pleader-hrv-report");
    assert_eq!(report["n_beats"], 2000);
    assert_eq!(report["fs"], 4.0);
    let n_analyzed = report["n_analyzed"].as_u64().unwrap();
    assert_eq!(n_analyzed % 1024, 0, "analysis length should be dyadic-friendly");
    let overlay = report["overlay_c1"].as_array().unwrap();
    assert!(!overlay.is_empty());
    for row in overlay {
        assert!(row["raw"].as_f64().unwrap().is_finite());
        assert!(row["corrected"].as_f64().unwrap().is_finite());
    }
    let p_list: Vec<f64> = report["analysis"]["per_p"]
        .as_array()
        .unwrap()
        .iter()
        .map(|pa| pa["p"].as_f64().unwrap())
        .collect();
    assert_eq!(p_list, vec![0.25, 0.5, 1.0]);

    let resampled = fs::read_to_string(&resampled_path).unwrap();
    assert!(resampled.starts_with("index,value\n"));
    assert_eq!(resampled.lines().count() as u64, n_analyzed + 1);
}

#[test]
fn hrv_constant_record_resamples_to_a_constant() {
    let dir = scratch("hrv-const");
    let rr_path = dir.join("flat.rr");
    let text: String = std::iter::repeat("1.0\n").take(700).collect();
    write(&rr_path, &text);

    let resampled_path = dir.join("flat.csv");
    // A perfectly flat tachogram may be degenerate for the scaling fits;
    // the resampled series must be written and exactly flat regardless.
    let _ = bin()
        .arg("hrv")
        .arg(&rr_path)
        .arg("--resampled-out")
        .arg(&resampled_path)
        .arg("--out")
        .arg(dir.join("flat-report.json"))
        .output()
        .expect("binary should launch");
    let resampled = fs::read_to_string(&resampled_path).unwrap();
    let mut n = 0;
    for line in resampled.lines().skip(1) {
        let value: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!((value - 1.0).abs() < 1e-12, "sample {line:?} drifted");
        n += 1;
    }
    assert_eq!(n, 2048, "699 s at 4 Hz truncates to the largest power of two");
}

#[test]
fn error_paths_exit_one_with_single_line_messages() {
    let dir = scratch("errors");

    let stderr = run_err(bin().args(["analyze", "no-such-file.csv"]), 1);
    assert!(stderr.contains("no-such-file.csv"));

    let bad_csv = dir.join("bad.csv");
    write(&bad_csv, "index,value\n0,1.0\n1,spam\n");
    let stderr = run_err(bin().arg("analyze").arg(&bad_csv), 1);
    assert!(stderr.contains("bad.csv:3"), "got {stderr}");

    let bad_rr = dir.join("bad.rr");
    write(&bad_rr, "0.9\n0.8\n-1.0\n");
    let stderr = run_err(bin().arg("hrv").arg(&bad_rr), 1);
    assert!(stderr.contains("bad.rr:3"), "got {stderr}");
    assert!(stderr.contains("positive"));

    let stderr = run_err(bin().args(["analyze", "x.csv", "--bogus-flag"]), 1);
    assert!(stderr.contains("--bogus-flag"));

    let bad_spec = dir.join("bad-spec.json");
    write(&bad_spec, r#"{ "kind": "warp-drive" }"#);
    run_err(bin().args(["synth", "--spec"]).arg(&bad_spec).arg("--out").arg(dir.join("x")), 1);

    let stderr = run_err(
        bin().args(["bench", "--spec"]).arg(&bad_spec).arg("--outdir").arg(dir.join("figs")),
        1,
    );
    assert!(stderr.contains("bad-spec.json"));
}

#[test]
fn thread_count_env_is_validated() {
    let dir = scratch("threads");
    let spec = dir.join("fbm.json");
    write(&spec, r#"{ "kind": "fbm", "n": 512, "hurst": 0.6 }"#);
    let out_path = dir.join("x.csv");
    run_ok(
        bin()
            .env("PLEADER_THREADS", "1")
            .args(["synth", "--spec"])
            .arg(&spec)
            .arg("--out")
            .arg(&out_path),
    );
    let stderr = run_err(
        bin()
            .env("PLEADER_THREADS", "several")
            .args(["synth", "--spec"])
            .arg(&spec)
            .arg("--out")
            .arg(&out_path),
        1,
    );
    assert!(stderr.contains("PLEADER_THREADS"));
}
