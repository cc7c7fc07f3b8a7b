//! Heart-rate ingestion: RR interval files, cubic-spline resampling onto a
//! uniform grid, and truncation to an analysis-friendly length.

use std::path::Path;

use crate::error::{CliError, Result};
use crate::formats::read_to_string;

/// Default resampling rate in Hz.
pub const DEFAULT_FS: f64 = 4.0;
/// Shortest resampled series the analysis accepts.
pub const MIN_SAMPLES: usize = 256;
/// Long records are truncated to a multiple of this block, which keeps at
/// least twelve octaves available while discarding under one block of data.
pub const BLOCK: usize = 4096;

/// A parsed beat sequence: the time of each beat and the interval ending on
/// it, both in seconds.
#[derive(Debug, Clone)]
pub struct RRRecord {
    pub source: String,
    pub beat_times: Vec<f64>,
    pub intervals: Vec<f64>,
}

impl RRRecord {
    pub fn n_beats(&self) -> usize {
        self.intervals.len()
    }

    /// Time span covered by the beats.
    pub fn duration(&self) -> f64 {
        match (self.beat_times.first(), self.beat_times.last()) {
            (Some(first), Some(last)) => last - first,
            _ => 0.0,
        }
    }
}

/// Parses RR text: one interval per line, or `time interval` pairs.
/// Fields split on commas or whitespace; `#` starts a comment. The column
/// count must be consistent across the file. With a single column, beat
/// times are the running sum of the intervals.
pub fn parse_rr_text(text: &str, source: &str) -> Result<RRRecord> {
    let mut beat_times = Vec::new();
    let mut intervals = Vec::new();
    let mut arity: Option<usize> = None;
    let mut clock = 0.0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|f| !f.is_empty())
            .collect();
        match arity {
            None => arity = Some(fields.len()),
            Some(n) if n != fields.len() => {
                return Err(CliError::malformed(
                    source,
                    line,
                    format!("expected {n} columns as on earlier lines, found {}", fields.len()),
                ));
            }
            Some(_) => {}
        }
        let parse = |field: &str| -> Result<f64> {
            field
                .parse()
                .map_err(|_| CliError::malformed(source, line, format!("cannot parse {field:?}")))
        };
        let (time, rr) = match fields.as_slice() {
            [rr] => {
                let rr = parse(rr)?;
                clock += rr;
                (clock, rr)
            }
            [time, rr] => (parse(time)?, parse(rr)?),
            _ => {
                return Err(CliError::malformed(
                    source,
                    line,
                    format!("expected 1 or 2 columns, found {}", fields.len()),
                ));
            }
        };
        if !(rr > 0.0) || !rr.is_finite() {
            return Err(CliError::malformed(
                source,
                line,
                format!("RR interval must be positive, got {rr}"),
            ));
        }
        if let Some(&prev) = beat_times.last() {
            if time <= prev {
                return Err(CliError::malformed(
                    source,
                    line,
                    format!("beat time {time} does not increase past {prev}"),
                ));
            }
        }
        beat_times.push(time);
        intervals.push(rr);
    }
    if intervals.len() < 2 {
        return Err(CliError::malformed(
            source,
            0,
            format!("need at least 2 beats, found {}", intervals.len()),
        ));
    }
    Ok(RRRecord {
        source: source.to_owned(),
        beat_times,
        intervals,
    })
}

pub fn parse_rr_file(path: &Path) -> Result<RRRecord> {
    let text = read_to_string(path)?;
    parse_rr_text(&text, &path.display().to_string())
}

/// A natural cubic spline through strictly increasing knots: the second
/// derivative vanishes at both ends, and evaluation outside the knot span
/// clamps to the boundary values.
#[derive(Debug, Clone)]
pub struct CubicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    /// Second derivatives at the knots.
    m: Vec<f64>,
}

impl CubicSpline {
    pub fn natural(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(CliError::usage(format!(
                "spline needs matching coordinates, got {} vs {}",
                x.len(),
                y.len()
            )));
        }
        if x.len() < 2 {
            return Err(CliError::usage("spline needs at least 2 knots"));
        }
        if x.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(CliError::usage("spline knots must strictly increase"));
        }
        if x.iter().chain(&y).any(|v| !v.is_finite()) {
            return Err(CliError::usage("spline knots must be finite"));
        }
        let m = solve_second_derivatives(&x, &y);
        Ok(CubicSpline { x, y, m })
    }

    pub fn eval(&self, t: f64) -> f64 {
        let n = self.x.len();
        if t <= self.x[0] {
            return self.y[0];
        }
        if t >= self.x[n - 1] {
            return self.y[n - 1];
        }
        // First knot strictly right of t, hence the segment is i-1 .. i.
        let i = self.x.partition_point(|&xk| xk < t).clamp(1, n - 1);
        let (x0, x1) = (self.x[i - 1], self.x[i]);
        let (y0, y1) = (self.y[i - 1], self.y[i]);
        let (m0, m1) = (self.m[i - 1], self.m[i]);
        let h = x1 - x0;
        let a = x1 - t;
        let b = t - x0;
        (m0 * a * a * a + m1 * b * b * b) / (6.0 * h)
            + (y0 / h - m0 * h / 6.0) * a
            + (y1 / h - m1 * h / 6.0) * b
    }
}

/// Second derivatives of the natural spline: the standard tridiagonal
/// system over the interior knots, solved by forward elimination and back
/// substitution.
fn solve_second_derivatives(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut m = vec![0.0; n];
    if n < 3 {
        return m;
    }
    let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
    let unknowns = n - 2;
    let mut diag = vec![0.0; unknowns];
    let mut rhs = vec![0.0; unknowns];
    let mut upper = vec![0.0; unknowns];
    for k in 0..unknowns {
        let i = k + 1;
        diag[k] = 2.0 * (h[i - 1] + h[i]);
        upper[k] = h[i];
        rhs[k] = 6.0 * ((y[i + 1] - y[i]) / h[i] - (y[i] - y[i - 1]) / h[i - 1]);
    }
    for k in 1..unknowns {
        let i = k + 1;
        let lower = h[i - 1];
        let w = lower / diag[k - 1];
        diag[k] -= w * upper[k - 1];
        rhs[k] -= w * rhs[k - 1];
    }
    m[unknowns] = rhs[unknowns - 1] / diag[unknowns - 1];
    for k in (0..unknowns - 1).rev() {
        m[k + 1] = (rhs[k] - upper[k] * m[k + 2]) / diag[k];
    }
    m
}

/// Interpolates the tachogram (beat time, interval) onto a uniform grid of
/// step `1/fs` starting at the first beat.
pub fn resample(record: &RRRecord, fs: f64) -> Result<Vec<f64>> {
    if !(fs > 0.0) || !fs.is_finite() {
        return Err(CliError::usage(format!("sampling rate must be positive, got {fs}")));
    }
    let spline = CubicSpline::natural(record.beat_times.clone(), record.intervals.clone())?;
    let t0 = record.beat_times[0];
    let span = record.duration();
    let count = (span * fs).floor() as usize + 1;
    Ok((0..count).map(|i| spline.eval(t0 + i as f64 / fs)).collect())
}

/// Length the analysis keeps from a resampled series: long records lose at
/// most one [`BLOCK`] from the tail, shorter ones fall back to the largest
/// power of two, and fewer than [`MIN_SAMPLES`] samples are rejected.
pub fn truncate_len(n: usize) -> Result<usize> {
    if n < MIN_SAMPLES {
        return Err(CliError::usage(format!(
            "resampled record holds {n} samples; at least {MIN_SAMPLES} are needed"
        )));
    }
    if n >= BLOCK {
        Ok(n - n % BLOCK)
    } else {
        Ok(1 << (usize::BITS - 1 - n.leading_zeros()))
    }
}
