//! Implementations behind the four subcommands.

use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use pleader::harness::{emit_figure_data, run_monte_carlo, ExperimentSpec, PValue, SourceSpec};
use pleader::mfa::{
    analyze, AnalysisConfig, AnalysisReport, LeaderMode, OctaveRange, WeightScheme,
};
use pleader::wavelet::{
    daubechies_filter, dwt_1d, max_analysis_octaves_1d, ArrayData, Signal, WaveletPyramid,
};

use crate::error::{CliError, Result};
use crate::formats::{
    pyramid_from_json, pyramid_to_json, read_to_string, report_to_json, signal_from_csv,
    signal_to_csv, write_string, FORMAT_VERSION, INDEX_CONVENTION,
};
use crate::hrv::{parse_rr_file, resample, truncate_len};

/// Knobs of the analysis pipeline shared by `analyze` and `hrv`.
pub struct AnalyzeOptions {
    pub p_values: Vec<PValue>,
    pub q_grid: Option<Vec<f64>>,
    pub m_max: usize,
    pub j1: Option<usize>,
    pub j2: Option<usize>,
    pub correction: bool,
    pub mode: LeaderMode,
    pub weights: WeightScheme,
    pub vanishing_moments: usize,
}

/// The default aggregation exponents: three below the quadratic regime, two
/// above, and the running-maximum limit.
pub fn default_p_values() -> Vec<PValue> {
    vec![
        PValue(0.25),
        PValue(0.5),
        PValue(1.0),
        PValue(2.0),
        PValue(5.0),
        PValue::INF,
    ]
}

impl AnalyzeOptions {
    fn to_config(&self, n_octaves: usize) -> Result<AnalysisConfig> {
        let mut config = AnalysisConfig {
            p_values: self.p_values.iter().map(|p| p.get()).collect(),
            m_max: self.m_max,
            mode: self.mode,
            weights: self.weights,
            apply_correction: self.correction,
            ..AnalysisConfig::default()
        };
        if let Some(q) = &self.q_grid {
            config.q_grid = q.clone();
        }
        if self.j1.is_some() || self.j2.is_some() {
            let j1 = self.j1.unwrap_or(1);
            let j2 = self.j2.unwrap_or(n_octaves);
            if j2 > n_octaves {
                return Err(CliError::usage(format!(
                    "requested fit up to octave {j2} but the data holds {n_octaves}"
                )));
            }
            let range = OctaveRange::new(j1, j2)?;
            config.octave_range = Some(range);
        }
        Ok(config)
    }
}

/// `synth`: draw one realization of a source description. Sampled processes
/// are written as signal CSV; wavelet-domain cascades have no sample path
/// and are written as pyramid JSON.
pub fn cmd_synth(spec_path: &Path, seed: u64, out: &Path) -> Result<()> {
    let text = read_to_string(spec_path)?;
    let source: SourceSpec = serde_json::from_str(&text).map_err(|e| CliError::Json {
        path: spec_path.display().to_string(),
        source: e,
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rendered = match &source {
        SourceSpec::Process(proc) => {
            let path = proc.synthesize(&mut rng)?;
            let signal = Signal::new_1d(path, 1.0)?;
            signal_to_csv(&signal.data)
        }
        SourceSpec::Cascade(cascade) => {
            let pyramid = cascade.synthesize(&mut rng)?;
            pyramid_to_json(&pyramid)?
        }
    };
    write_string(out, &rendered)?;
    println!("{}", out.display());
    Ok(())
}

/// Reads an analysis input: JSON objects are pyramids, anything else is
/// signal CSV decomposed over every feasible octave.
fn load_pyramid(input: &Path, vanishing_moments: usize) -> Result<WaveletPyramid> {
    let text = read_to_string(input)?;
    let name = input.display().to_string();
    if text.trim_start().starts_with('{') {
        return pyramid_from_json(&text, &name);
    }
    let signal = signal_from_csv(&text, &name)?;
    decompose(&signal, vanishing_moments)
}

fn decompose(signal: &Signal, vanishing_moments: usize) -> Result<WaveletPyramid> {
    let filter = daubechies_filter(vanishing_moments)?;
    if signal.data.dimension() != 1 {
        return Err(CliError::usage(
            "decomposition of 2D sample grids is not wired up; supply a pyramid JSON instead",
        ));
    }
    let octaves = max_analysis_octaves_1d(signal.len(), filter.len());
    if octaves < 2 {
        return Err(CliError::usage(format!(
            "signal of {} samples leaves {octaves} analyzable octaves; need at least 2",
            signal.len()
        )));
    }
    Ok(dwt_1d(signal, &filter, octaves)?)
}

pub fn cmd_analyze(input: &Path, options: &AnalyzeOptions, out: Option<&Path>) -> Result<()> {
    let pyramid = load_pyramid(input, options.vanishing_moments)?;
    let config = options.to_config(pyramid.n_octaves())?;
    let report = analyze(&pyramid, &config)?;
    let json = report_to_json(input.display().to_string(), &report)?;
    emit_report(out, &json)
}

fn emit_report(out: Option<&Path>, json: &str) -> Result<()> {
    match out {
        Some(path) => {
            write_string(path, json)?;
            println!("{}", path.display());
        }
        None => println!("{json}"),
    }
    Ok(())
}

/// `bench`: run a Monte-Carlo experiment and emit its figure data.
pub fn cmd_bench(spec_path: &Path, outdir: &Path) -> Result<()> {
    let text = read_to_string(spec_path)?;
    let spec: ExperimentSpec = serde_json::from_str(&text).map_err(|e| CliError::Json {
        path: spec_path.display().to_string(),
        source: e,
    })?;
    let report = run_monte_carlo(&spec)?;
    let files = emit_figure_data(&report, outdir)?;
    for file in files {
        println!("{}", file.display());
    }
    Ok(())
}

/// Corrected/uncorrected first log-cumulants of one octave, the overlay the
/// heart-rate report is about.
#[derive(Debug, Serialize)]
struct OverlayRow {
    p: f64,
    octave: usize,
    raw: f64,
    corrected: f64,
}

#[derive(Serialize)]
struct HrvReportFile<'a> {
    format: &'static str,
    version: u32,
    index_convention: &'static str,
    source: String,
    n_beats: usize,
    duration_s: f64,
    fs: f64,
    n_resampled: usize,
    n_analyzed: usize,
    /// `C(1, j)` with and without the finite-resolution correction, per
    /// aggregation exponent and octave.
    overlay_c1: Vec<OverlayRow>,
    analysis: &'a AnalysisReport,
}

fn overlay_rows(report: &AnalysisReport) -> Vec<OverlayRow> {
    let mut rows = Vec::new();
    for pa in &report.per_p {
        let raw = &pa.cumulants;
        let Some(corrected) = &pa.cumulants_corrected else {
            continue;
        };
        for ji in 0..raw.n_octaves() {
            rows.push(OverlayRow {
                p: pa.p,
                octave: raw.octave_start + ji,
                raw: raw.order(1)[ji],
                corrected: corrected.order(1)[ji],
            });
        }
    }
    rows
}

pub struct HrvOptions {
    pub fs: f64,
    pub vanishing_moments: usize,
    pub resampled_out: Option<PathBuf>,
}

/// `hrv`: parse a beat record, spline-resample it onto the uniform grid,
/// truncate to an analysis-friendly length and run the corrected pipeline
/// for the small-`p` overlay.
pub fn cmd_hrv(rr_path: &Path, options: &HrvOptions, out: Option<&Path>) -> Result<()> {
    let record = parse_rr_file(rr_path)?;
    let resampled = resample(&record, options.fs)?;
    let n_resampled = resampled.len();
    let n_analyzed = truncate_len(n_resampled)?;
    let series = &resampled[..n_analyzed];
    if let Some(path) = &options.resampled_out {
        let data = ArrayData::One(series.to_vec());
        write_string(path, &signal_to_csv(&data))?;
    }
    let signal = Signal::new_1d(series.to_vec(), 1.0 / options.fs)?;
    let pyramid = decompose(&signal, options.vanishing_moments)?;
    let analysis_options = AnalyzeOptions {
        p_values: vec![PValue(0.25), PValue(0.5), PValue(1.0)],
        q_grid: None,
        m_max: 2,
        j1: None,
        j2: None,
        correction: true,
        mode: LeaderMode::Restricted,
        weights: WeightScheme::Counts,
        vanishing_moments: options.vanishing_moments,
    };
    let config = analysis_options.to_config(pyramid.n_octaves())?;
    let report = analyze(&pyramid, &config)?;
    let file = HrvReportFile {
        format: "pleader-hrv-report",
        version: FORMAT_VERSION,
        index_convention: INDEX_CONVENTION,
        source: record.source.clone(),
        n_beats: record.n_beats(),
        duration_s: record.duration(),
        fs: options.fs,
        n_resampled,
        n_analyzed,
        overlay_c1: overlay_rows(&report),
        analysis: &report,
    };
    let json = serde_json::to_string_pretty(&file).map_err(|e| CliError::Json {
        path: "<hrv report>".to_owned(),
        source: e,
    })?;
    emit_report(out, &json)
}
