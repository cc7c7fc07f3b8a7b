//! Flat-file outputs for benchmark runs: one JSON summary plus two CSV
//! tables ready for plotting.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

use super::run::MonteCarloReport;

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Writes `{name}_summary.json`, `{name}_curves.csv` and `{name}_perf.csv`
/// into `dir`, returning the paths in that order. Floats are printed with
/// the shortest round-trip representation, so repeated runs produce
/// byte-identical files.
pub fn emit_figure_data(report: &MonteCarloReport, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.display().to_string(),
        source,
    })?;
    let name = &report.spec.name;

    let summary_path = dir.join(format!("{name}_summary.json"));
    let json = serde_json::to_string_pretty(report)?;
    write_file(&summary_path, &json)?;

    let mut curves = String::from("p,m,octave,raw,corrected\n");
    for pe in &report.per_p {
        for (mi, raw_row) in pe.curves_raw.iter().enumerate() {
            for (ji, raw) in raw_row.iter().enumerate() {
                let corrected = pe.curves_corrected[mi][ji];
                writeln!(curves, "{},{},{},{raw},{corrected}", pe.p, mi + 1, ji + 1)
                    .expect("string writes cannot fail");
            }
        }
    }
    let curves_path = dir.join(format!("{name}_curves.csv"));
    write_file(&curves_path, &curves)?;

    let mut perf = String::from("p,m,j1,j2,variant,n,mean,std,bias,rmse\n");
    for pe in &report.per_p {
        for stat in pe.headline.iter().chain(&pe.sweep) {
            let variant = if stat.corrected { "corrected" } else { "raw" };
            let opt = |v: Option<f64>| v.map_or(String::new(), |x| x.to_string());
            writeln!(
                perf,
                "{},{},{},{},{variant},{},{},{},{},{}",
                pe.p,
                stat.m,
                stat.j1,
                stat.j2,
                stat.n,
                stat.mean,
                stat.std,
                opt(stat.bias),
                opt(stat.rmse),
            )
            .expect("string writes cannot fail");
        }
    }
    let perf_path = dir.join(format!("{name}_perf.csv"));
    write_file(&perf_path, &perf)?;

    Ok(vec![summary_path, curves_path, perf_path])
}
