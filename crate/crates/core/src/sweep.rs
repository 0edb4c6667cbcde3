//! Compression sweeps over an image corpus and complexity reporting.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Deserialize;

use crate::codec::{ImageSpectrum, KernelId, RetentionSpec};
use crate::error::{Error, Result};
use crate::fastalg::{count_ops, reduction_percent, Algorithm, OpCount, EXACT_DTT_COST, H264_COST};
use crate::image::GrayImage;
use crate::metrics::{sr_sim, ssim};

pub const RECORDS_FILE: &str = "records.csv";
pub const SUMMARY_FILE: &str = "summary.csv";

/// One (image, kernel, r) measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRecord {
    pub image_id: String,
    pub kernel: KernelId,
    pub r: usize,
    pub ssim: f64,
    pub srsim: f64,
}

/// Per-(kernel, r) mean over all images.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub kernel: KernelId,
    pub r: usize,
    pub images: usize,
    pub mean_ssim: f64,
    pub mean_srsim: f64,
}

fn default_r_min() -> usize {
    1
}

fn default_r_max() -> usize {
    45
}

fn default_kernels() -> Vec<KernelId> {
    KernelId::ALL.to_vec()
}

fn deserialize_kernels<'de, D: serde::Deserializer<'de>>(
    d: D,
) -> std::result::Result<Vec<KernelId>, D::Error> {
    let names: Vec<String> = Vec::deserialize(d)?;
    names
        .iter()
        .map(|s| s.parse().map_err(serde::de::Error::custom))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(alias = "corpus")]
    pub corpus_dir: PathBuf,
    #[serde(default = "default_r_min")]
    pub r_min: usize,
    #[serde(default = "default_r_max")]
    pub r_max: usize,
    #[serde(default = "default_kernels", deserialize_with = "deserialize_kernels")]
    pub kernels: Vec<KernelId>,
    /// Directory receiving the record and summary CSVs.
    pub output: PathBuf,
}

impl SweepConfig {
    pub fn new(corpus_dir: impl Into<PathBuf>, output: impl Into<PathBuf>) -> Self {
        Self {
            corpus_dir: corpus_dir.into(),
            r_min: default_r_min(),
            r_max: default_r_max(),
            kernels: default_kernels(),
            output: output.into(),
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string().trim().replace('\n', " ")))
    }

    pub fn validate(&self) -> Result<()> {
        if !(1 <= self.r_min && self.r_min <= self.r_max && self.r_max <= 64) {
            return Err(Error::InvalidParameter(format!(
                "need 1 <= r_min <= r_max <= 64, got r_min={} r_max={}",
                self.r_min, self.r_max
            )));
        }
        if self.kernels.is_empty() {
            return Err(Error::InvalidParameter("no kernels selected".into()));
        }
        Ok(())
    }
}

/// Reads every `*.pgm` in `dir`, sorted by file name.
///
/// Fails if the directory holds no PGM, or lists every file that does not parse.
pub fn load_corpus(dir: &Path) -> Result<Vec<(String, GrayImage)>> {
    let entries = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.extension()
                .and_then(|e| e.to_str())
                .is_some_and(|e| e.eq_ignore_ascii_case("pgm"))
        })
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(Error::Corpus(format!("no .pgm files in {}", dir.display())));
    }
    let mut images = Vec::new();
    let mut bad = Vec::new();
    for path in paths {
        let id = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        match GrayImage::read_pgm(&path) {
            Ok(img) => images.push((id, img)),
            Err(e) => bad.push(format!("{} ({e})", path.display())),
        }
    }
    if !bad.is_empty() {
        return Err(Error::Corpus(format!(
            "unreadable images: {}",
            bad.join("; ")
        )));
    }
    Ok(images)
}

/// Measures every (image, kernel, r) triple. Records come back sorted by
/// image id, kernel, then r.
pub fn sweep_images(
    images: &[(String, GrayImage)],
    kernels: &[KernelId],
    r_range: std::ops::RangeInclusive<usize>,
) -> Result<Vec<ExperimentRecord>> {
    let specs = r_range
        .map(RetentionSpec::new)
        .collect::<Result<Vec<_>>>()?;
    let jobs: Vec<(&String, &GrayImage, KernelId)> = images
        .iter()
        .flat_map(|(id, img)| kernels.iter().map(move |&k| (id, img, k)))
        .collect();

    let per_job = jobs
        .par_iter()
        .map(|&(id, img, kernel)| {
            let codec = kernel.codec();
            let spectrum = ImageSpectrum::analyze(img, codec.as_ref());
            specs
                .par_iter()
                .map(|&spec| {
                    let rec = spectrum.reconstruct(spec);
                    Ok(ExperimentRecord {
                        image_id: id.clone(),
                        kernel,
                        r: spec.get(),
                        ssim: ssim(img, &rec)?,
                        srsim: sr_sim(img, &rec)?,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let mut records: Vec<ExperimentRecord> = per_job.into_iter().flatten().collect();
    records.sort_by(|a, b| {
        (a.image_id.as_str(), a.kernel, a.r).cmp(&(b.image_id.as_str(), b.kernel, b.r))
    });
    Ok(records)
}

/// Per-(kernel, r) means of per-image scalar scores.
pub fn summarize(records: &[ExperimentRecord]) -> Vec<SummaryRow> {
    let mut groups: BTreeMap<(KernelId, usize), Vec<&ExperimentRecord>> = BTreeMap::new();
    for rec in records {
        groups.entry((rec.kernel, rec.r)).or_default().push(rec);
    }
    groups
        .into_iter()
        .map(|((kernel, r), mut recs)| {
            // Fixed summation order regardless of how the records arrived.
            recs.sort_by(|a, b| a.image_id.cmp(&b.image_id));
            let n = recs.len() as f64;
            SummaryRow {
                kernel,
                r,
                images: recs.len(),
                mean_ssim: recs.iter().map(|r| r.ssim).sum::<f64>() / n,
                mean_srsim: recs.iter().map(|r| r.srsim).sum::<f64>() / n,
            }
        })
        .collect()
}

/// Six significant digits, fixed notation, `.` as decimal separator.
pub fn format_sig6(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{v:.5e}");
    let exp: i32 = sci
        .rsplit_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .unwrap_or(0);
    let decimals = (5 - exp).max(0) as usize;
    format!("{v:.decimals$}")
}

pub fn records_csv(records: &[ExperimentRecord]) -> String {
    let mut out = String::from("image,kernel,r,ssim,srsim\n");
    for rec in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            rec.image_id,
            rec.kernel,
            rec.r,
            format_sig6(rec.ssim),
            format_sig6(rec.srsim)
        );
    }
    out
}

pub fn summary_csv(rows: &[SummaryRow]) -> String {
    let mut out = String::from("kernel,r,images,mean_ssim,mean_srsim\n");
    for row in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            row.kernel,
            row.r,
            row.images,
            format_sig6(row.mean_ssim),
            format_sig6(row.mean_srsim)
        );
    }
    out
}

#[derive(Debug)]
pub struct SweepOutput {
    pub records: Vec<ExperimentRecord>,
    pub summary: Vec<SummaryRow>,
    pub records_path: PathBuf,
    pub summary_path: PathBuf,
}

/// Loads the corpus, runs the sweep and writes both CSVs into `config.output`.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepOutput> {
    config.validate()?;
    let images = load_corpus(&config.corpus_dir)?;
    let records = sweep_images(&images, &config.kernels, config.r_min..=config.r_max)?;
    let summary = summarize(&records);

    fs::create_dir_all(&config.output).map_err(|e| Error::io(&config.output, e))?;
    let records_path = config.output.join(RECORDS_FILE);
    let summary_path = config.output.join(SUMMARY_FILE);
    fs::write(&records_path, records_csv(&records)).map_err(|e| Error::io(&records_path, e))?;
    fs::write(&summary_path, summary_csv(&summary)).map_err(|e| Error::io(&summary_path, e))?;
    Ok(SweepOutput {
        records,
        summary,
        records_path,
        summary_path,
    })
}

/// One line of the complexity table.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexityRow {
    pub method: &'static str,
    pub cost: OpCount,
    /// Whether the count was measured here or cited.
    pub measured: bool,
}

/// Percentage saving of a proposed transform against a baseline, per operation kind.
#[derive(Debug, Clone, PartialEq)]
pub struct Reduction {
    pub ours: &'static str,
    pub baseline: &'static str,
    pub operation: &'static str,
    pub percent: f64,
}

pub fn complexity_rows() -> Vec<ComplexityRow> {
    vec![
        ComplexityRow {
            method: "exact DTT (cited)",
            cost: EXACT_DTT_COST,
            measured: false,
        },
        ComplexityRow {
            method: "proposed forward T*",
            cost: count_ops(Algorithm::ForwardFast),
            measured: true,
        },
        ComplexityRow {
            method: "proposed inverse T1",
            cost: count_ops(Algorithm::InverseFast),
            measured: true,
        },
        ComplexityRow {
            method: "H.264 8-point (cited)",
            cost: H264_COST,
            measured: false,
        },
    ]
}

pub fn reductions() -> Vec<Reduction> {
    let fwd = count_ops(Algorithm::ForwardFast);
    let inv = count_ops(Algorithm::InverseFast);
    let mut out = Vec::new();
    for (ours, cost) in [("forward", fwd), ("inverse", inv)] {
        for (baseline, base) in [("exact DTT", EXACT_DTT_COST), ("H.264", H264_COST)] {
            for (operation, a, b) in [
                ("additions", cost.additions, base.additions),
                ("shifts", cost.shifts, base.shifts),
            ] {
                if let Some(percent) = reduction_percent(a, b) {
                    out.push(Reduction {
                        ours,
                        baseline,
                        operation,
                        percent,
                    });
                }
            }
        }
    }
    out
}

/// Text rendering of [`complexity_rows`] and [`reductions`].
pub fn report_complexity() -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<24} {:>5} {:>9} {:>6} {:>5}",
        "method", "mult", "additions", "shifts", "total"
    );
    for row in complexity_rows() {
        let c = row.cost;
        let _ = writeln!(
            out,
            "{:<24} {:>5} {:>9} {:>6} {:>5}",
            row.method,
            c.multiplications,
            c.additions,
            c.shifts,
            c.total()
        );
    }
    let _ = writeln!(out);
    for r in reductions() {
        let _ = writeln!(
            out,
            "{} vs {}: {:.1}% fewer {}",
            r.ours, r.baseline, r.percent, r.operation
        );
    }
    out
}

pub fn complexity_csv() -> String {
    let mut out = String::from("method,mult,additions,shifts,total,measured\n");
    for row in complexity_rows() {
        let c = row.cost;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            row.method,
            c.multiplications,
            c.additions,
            c.shifts,
            c.total(),
            row.measured
        );
    }
    out
}
