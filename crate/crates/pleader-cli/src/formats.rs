//! File formats shared by the commands: headered CSV for sampled signals and
//! versioned JSON for coefficient pyramids and analysis reports.
//!
//! Floating-point values are written with Rust's shortest round-trip
//! `Display`, so a write/read cycle reproduces every `f64` bit for bit.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use pleader::mfa::AnalysisReport;
use pleader::wavelet::{ArrayData, Boundary, OctaveDetail, Signal, WaveletPyramid};

use crate::error::{CliError, Result};

/// Format tag of pyramid files.
pub const PYRAMID_FORMAT: &str = "pleader-pyramid";
/// Format tag of analysis report files.
pub const REPORT_FORMAT: &str = "pleader-report";
/// Current schema version of both JSON formats.
pub const FORMAT_VERSION: u32 = 1;
/// Scale indexing statement embedded in every JSON artifact: octave 1 is the
/// finest scale and octave numbers grow toward coarser scales.
pub const INDEX_CONVENTION: &str = "octave 1 = finest scale, increasing toward coarser";

const HEADER_1D: &str = "index,value";
const HEADER_2D: &str = "row,col,value";

pub fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path.display().to_string(), e))
}

pub fn write_string(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(|e| CliError::io(parent.display().to_string(), e))?;
        }
    }
    fs::write(path, contents).map_err(|e| CliError::io(path.display().to_string(), e))
}

/// Renders a signal as headered CSV: `index,value` rows in 1D,
/// `row,col,value` rows in row-major order in 2D.
pub fn signal_to_csv(data: &ArrayData) -> String {
    let mut out = String::new();
    match data {
        ArrayData::One(values) => {
            out.push_str(HEADER_1D);
            out.push('\n');
            for (i, v) in values.iter().enumerate() {
                let _ = writeln!(out, "{i},{v}");
            }
        }
        ArrayData::Two(grid) => {
            out.push_str(HEADER_2D);
            out.push('\n');
            for ((r, c), v) in grid.indexed_iter() {
                let _ = writeln!(out, "{r},{c},{v}");
            }
        }
    }
    out
}

/// Parses a signal CSV. Lines starting with `#` and blank lines are
/// skipped; the first remaining line must be one of the two recognized
/// headers, which decides the dimensionality.
pub fn signal_from_csv(text: &str, path: &str) -> Result<Signal> {
    let mut rows = text
        .lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'));
    let (header_line, header) = rows
        .next()
        .ok_or_else(|| CliError::malformed(path, 0, "file holds no data"))?;
    match header {
        HEADER_1D => parse_csv_1d(rows, path),
        HEADER_2D => parse_csv_2d(rows, path),
        _ => Err(CliError::malformed(
            path,
            header_line,
            format!("expected header {HEADER_1D:?} or {HEADER_2D:?}, found {header:?}"),
        )),
    }
}

fn parse_field<T: std::str::FromStr>(field: &str, path: &str, line: usize) -> Result<T> {
    field
        .trim()
        .parse()
        .map_err(|_| CliError::malformed(path, line, format!("cannot parse field {field:?}")))
}

fn parse_csv_1d<'a, I>(rows: I, path: &str) -> Result<Signal>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    let mut values = Vec::new();
    for (line, row) in rows {
        let mut fields = row.split(',');
        let (Some(index), Some(value), None) = (fields.next(), fields.next(), fields.next())
        else {
            return Err(CliError::malformed(path, line, "expected 2 fields"));
        };
        let index: usize = parse_field(index, path, line)?;
        if index != values.len() {
            return Err(CliError::malformed(
                path,
                line,
                format!("expected index {}, found {index}", values.len()),
            ));
        }
        values.push(parse_field::<f64>(value, path, line)?);
    }
    Signal::new_1d(values, 1.0).map_err(CliError::Lib)
}

fn parse_csv_2d<'a, I>(rows: I, path: &str) -> Result<Signal>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    let mut cells: Vec<(usize, usize, f64)> = Vec::new();
    let (mut max_r, mut max_c) = (0usize, 0usize);
    for (line, row) in rows {
        let mut fields = row.split(',');
        let (Some(r), Some(c), Some(v), None) =
            (fields.next(), fields.next(), fields.next(), fields.next())
        else {
            return Err(CliError::malformed(path, line, "expected 3 fields"));
        };
        let r: usize = parse_field(r, path, line)?;
        let c: usize = parse_field(c, path, line)?;
        let v: f64 = parse_field(v, path, line)?;
        max_r = max_r.max(r);
        max_c = max_c.max(c);
        cells.push((r, c, v));
    }
    if cells.is_empty() {
        return Err(CliError::malformed(path, 0, "file holds no data"));
    }
    let (rows_n, cols_n) = (max_r + 1, max_c + 1);
    let mut grid = Array2::from_elem((rows_n, cols_n), None::<f64>);
    for (r, c, v) in cells {
        if grid[[r, c]].replace(v).is_some() {
            return Err(CliError::malformed(
                path,
                0,
                format!("cell ({r}, {c}) appears more than once"),
            ));
        }
    }
    if let Some(((r, c), _)) = grid.indexed_iter().find(|(_, v)| v.is_none()) {
        return Err(CliError::malformed(
            path,
            0,
            format!("cell ({r}, {c}) is missing from the {rows_n}x{cols_n} grid"),
        ));
    }
    let dense = grid.mapv(|v| v.expect("checked above"));
    Signal::new_2d(dense, 1.0).map_err(CliError::Lib)
}

/// One stored coefficient array: its per-axis shape and row-major values.
#[derive(Debug, Serialize, Deserialize)]
pub struct SubbandFile {
    pub shape: Vec<usize>,
    pub values: Vec<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct OctaveFile {
    /// Practical octave number, 1 = finest.
    pub octave: usize,
    pub subbands: Vec<SubbandFile>,
}

/// On-disk form of a coefficient pyramid.
#[derive(Debug, Serialize, Deserialize)]
pub struct PyramidFile {
    pub format: String,
    pub version: u32,
    pub index_convention: String,
    pub dimension: u8,
    pub vanishing_moments: usize,
    pub boundary: String,
    pub discard_border: usize,
    pub octaves: Vec<OctaveFile>,
    pub approx: Option<SubbandFile>,
}

fn subband_to_file(data: &ArrayData) -> SubbandFile {
    match data {
        ArrayData::One(v) => SubbandFile {
            shape: vec![v.len()],
            values: v.clone(),
        },
        ArrayData::Two(a) => SubbandFile {
            shape: vec![a.nrows(), a.ncols()],
            values: a.iter().copied().collect(),
        },
    }
}

fn subband_from_file(file: &SubbandFile, path: &str) -> Result<ArrayData> {
    let expected: usize = file.shape.iter().product();
    if expected != file.values.len() {
        return Err(CliError::malformed(
            path,
            0,
            format!(
                "subband shape {:?} wants {expected} values, found {}",
                file.shape,
                file.values.len()
            ),
        ));
    }
    match file.shape.as_slice() {
        [_] => Ok(ArrayData::One(file.values.clone())),
        &[r, c] => Array2::from_shape_vec((r, c), file.values.clone())
            .map(ArrayData::Two)
            .map_err(|e| CliError::malformed(path, 0, e.to_string())),
        other => Err(CliError::malformed(
            path,
            0,
            format!("subband rank {} is not supported", other.len()),
        )),
    }
}

pub fn pyramid_to_json(pyramid: &WaveletPyramid) -> Result<String> {
    let file = PyramidFile {
        format: PYRAMID_FORMAT.to_owned(),
        version: FORMAT_VERSION,
        index_convention: INDEX_CONVENTION.to_owned(),
        dimension: pyramid.dimension,
        vanishing_moments: pyramid.vanishing_moments,
        boundary: "periodic".to_owned(),
        discard_border: pyramid.discard_border,
        octaves: pyramid
            .octaves
            .iter()
            .enumerate()
            .map(|(i, oct)| OctaveFile {
                octave: i + 1,
                subbands: oct.subbands.iter().map(subband_to_file).collect(),
            })
            .collect(),
        approx: pyramid.approx.as_ref().map(subband_to_file),
    };
    serde_json::to_string_pretty(&file).map_err(|e| CliError::Json {
        path: "<pyramid>".to_owned(),
        source: e,
    })
}

pub fn pyramid_from_json(text: &str, path: &str) -> Result<WaveletPyramid> {
    let file: PyramidFile = serde_json::from_str(text).map_err(|e| CliError::Json {
        path: path.to_owned(),
        source: e,
    })?;
    if file.format != PYRAMID_FORMAT {
        return Err(CliError::malformed(
            path,
            0,
            format!("format is {:?}, expected {PYRAMID_FORMAT:?}", file.format),
        ));
    }
    if file.version != FORMAT_VERSION {
        return Err(CliError::malformed(
            path,
            0,
            format!("version {} is not supported (current: {FORMAT_VERSION})", file.version),
        ));
    }
    if file.boundary != "periodic" {
        return Err(CliError::malformed(
            path,
            0,
            format!("boundary {:?} is not supported", file.boundary),
        ));
    }
    if !matches!(file.dimension, 1 | 2) {
        return Err(CliError::malformed(
            path,
            0,
            format!("dimension must be 1 or 2, found {}", file.dimension),
        ));
    }
    let expected_subbands = if file.dimension == 1 { 1 } else { 3 };
    let mut octaves = Vec::with_capacity(file.octaves.len());
    for (i, oct) in file.octaves.iter().enumerate() {
        if oct.octave != i + 1 {
            return Err(CliError::malformed(
                path,
                0,
                format!("octave entries must be numbered 1..; entry {i} claims {}", oct.octave),
            ));
        }
        if oct.subbands.len() != expected_subbands {
            return Err(CliError::malformed(
                path,
                0,
                format!(
                    "octave {} holds {} subbands; {}D pyramids carry {expected_subbands}",
                    oct.octave,
                    oct.subbands.len(),
                    file.dimension
                ),
            ));
        }
        let subbands = oct
            .subbands
            .iter()
            .map(|s| {
                let data = subband_from_file(s, path)?;
                if data.dimension() != file.dimension {
                    return Err(CliError::malformed(
                        path,
                        0,
                        format!("octave {} mixes array ranks", oct.octave),
                    ));
                }
                Ok(data)
            })
            .collect::<Result<Vec<_>>>()?;
        octaves.push(OctaveDetail { subbands });
    }
    if octaves.is_empty() {
        return Err(CliError::malformed(path, 0, "pyramid holds no octaves"));
    }
    let approx = file
        .approx
        .as_ref()
        .map(|s| subband_from_file(s, path))
        .transpose()?;
    Ok(WaveletPyramid {
        dimension: file.dimension,
        vanishing_moments: file.vanishing_moments,
        boundary: Boundary::Periodic,
        discard_border: file.discard_border,
        octaves,
        approx,
    })
}

/// On-disk wrapper around an [`AnalysisReport`].
#[derive(Serialize)]
pub struct ReportFile<'a> {
    pub format: &'static str,
    pub version: u32,
    pub index_convention: &'static str,
    /// Path of the analyzed input, as given on the command line.
    pub input: String,
    #[serde(flatten)]
    pub report: &'a AnalysisReport,
}

pub fn report_to_json(input: String, report: &AnalysisReport) -> Result<String> {
    let file = ReportFile {
        format: REPORT_FORMAT,
        version: FORMAT_VERSION,
        index_convention: INDEX_CONVENTION,
        input,
        report,
    };
    serde_json::to_string_pretty(&file).map_err(|e| CliError::Json {
        path: "<report>".to_owned(),
        source: e,
    })
}
