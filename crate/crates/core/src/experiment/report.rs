//! Post-processing of summary tables: pooled-frame hypervolume, pairwise
//! comparisons and the ps regression.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use super::output::{
    cell_label, csv_error, write_rows, PooledRow, SummaryRow, REPORT_FILE, SWEEP_FILE,
};
use super::RunRecord;
use crate::error::{Error, Result};
use crate::metrics::{hypervolume, MetricFrame};
use crate::stats::{compare_all, ComparisonReport, Direction, SampleGroup, REPORT_HEADER};

/// Final HV of every record, each problem scaled to the box spanned by all
/// initial and final points of that problem's records.
pub fn pooled_hypervolumes(records: &[RunRecord]) -> Vec<f64> {
    let mut out = vec![0.0; records.len()];
    for problem in first_seen(records.iter().map(|r| r.job.problem)) {
        let members: Vec<usize> = (0..records.len())
            .filter(|&i| records[i].job.problem == problem)
            .collect();
        let all: Vec<&[f64]> = members
            .iter()
            .flat_map(|&i| records[i].initial.iter().chain(&records[i].last))
            .map(Vec::as_slice)
            .collect();
        let frame = MetricFrame::spanning(&all);
        let ones = vec![1.0; problem.num_objectives()];
        for i in members {
            out[i] = hypervolume(&frame.scale(&records[i].last), &ones);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Indicator {
    Hv,
    HvPooled,
    IgdScaled,
    IgdRaw,
    Ndom,
}

impl Indicator {
    pub const ALL: [Indicator; 5] = [
        Indicator::Hv,
        Indicator::HvPooled,
        Indicator::IgdScaled,
        Indicator::IgdRaw,
        Indicator::Ndom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Indicator::Hv => "hv",
            Indicator::HvPooled => "hv_pooled",
            Indicator::IgdScaled => "igd_scaled",
            Indicator::IgdRaw => "igd_raw",
            Indicator::Ndom => "ndom",
        }
    }

    pub fn direction(self) -> Direction {
        match self {
            Indicator::IgdScaled | Indicator::IgdRaw => Direction::LowerIsBetter,
            _ => Direction::HigherIsBetter,
        }
    }
}

fn pooled_value(pooled: &[PooledRow], row: &SummaryRow) -> Option<f64> {
    pooled
        .iter()
        .find(|p| {
            p.problem == row.problem && p.strategy == row.strategy && p.ps == row.ps && p.rep == row.rep
        })
        .map(|p| p.hv_pooled)
}

fn value(row: &SummaryRow, indicator: Indicator, pooled: &[PooledRow]) -> Option<f64> {
    match indicator {
        Indicator::Hv => Some(row.hv),
        Indicator::HvPooled => pooled_value(pooled, row),
        Indicator::IgdScaled => Some(row.igd_scaled),
        Indicator::IgdRaw => Some(row.igd_raw),
        Indicator::Ndom => Some(row.ndom),
    }
}

fn first_seen<T: PartialEq + Clone>(items: impl Iterator<Item = T>) -> Vec<T> {
    let mut out: Vec<T> = Vec::new();
    for item in items {
        if !out.contains(&item) {
            out.push(item);
        }
    }
    out
}

/// Per-problem comparisons of all strategy cells, followed by a scope
/// `all` that compares per-problem medians across the problems where every
/// cell is present. Returns `(scope, report)` pairs.
pub fn compare_cells(
    summary: &[SummaryRow],
    pooled: &[PooledRow],
    indicator: Indicator,
) -> Result<Vec<(String, ComparisonReport)>> {
    let labels = first_seen(summary.iter().map(|r| cell_label(&r.strategy, r.ps)));
    let problems = first_seen(summary.iter().map(|r| r.problem.clone()));
    let mut reports = Vec::new();
    let mut medians_by_label: Vec<Vec<f64>> = vec![Vec::new(); labels.len()];

    for problem in &problems {
        let mut groups = Vec::new();
        for label in &labels {
            let values: Option<Vec<f64>> = summary
                .iter()
                .filter(|r| &r.problem == problem && &cell_label(&r.strategy, r.ps) == label)
                .map(|r| value(r, indicator, pooled))
                .collect();
            match values {
                Some(v) if !v.is_empty() => groups.push(SampleGroup::new(label.clone(), v)?),
                _ => {}
            }
        }
        if groups.len() == labels.len() {
            for (k, g) in groups.iter().enumerate() {
                medians_by_label[k].push(g.median());
            }
        }
        if groups.len() >= 2 {
            reports.push((problem.clone(), compare_all(&groups, indicator.direction())?));
        }
    }

    if labels.len() >= 2 && !medians_by_label[0].is_empty() {
        let groups = labels
            .iter()
            .zip(medians_by_label)
            .map(|(l, v)| SampleGroup::new(l.clone(), v))
            .collect::<Result<Vec<_>>>()?;
        reports.push(("all".to_string(), compare_all(&groups, indicator.direction())?));
    }
    Ok(reports)
}

/// One (problem, ps) observation for the ps regression.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub problem: String,
    pub ps: f64,
    pub hv: f64,
    pub igd: f64,
}

/// Points of every row with a ps value (`full` counts as ps = 1). HV is
/// taken from `pooled` when given, IGD is the raw-space value.
pub fn sweep_points(summary: &[SummaryRow], pooled: Option<&[PooledRow]>) -> Vec<SweepPoint> {
    summary
        .iter()
        .filter_map(|r| {
            let ps = r.ps?;
            let hv = match pooled {
                Some(p) => pooled_value(p, r)?,
                None => r.hv,
            };
            Some(SweepPoint {
                problem: r.problem.clone(),
                ps,
                hv,
                igd: r.igd_raw,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepFit {
    pub problem: String,
    pub levels: usize,
    pub hv_slope: f64,
    pub hv_intercept: f64,
    pub log_igd_slope: f64,
    pub log_igd_intercept: f64,
}

/// Least-squares `(slope, intercept)` of `y` on `x`.
pub fn fit_line(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    (slope, my - slope * mx)
}

/// Per problem, regress the mean HV and the mean of ln(IGD) at each ps
/// level on ps.
pub fn sweep_report(points: &[SweepPoint]) -> Result<Vec<SweepFit>> {
    let problems = first_seen(points.iter().map(|p| p.problem.clone()));
    if problems.is_empty() {
        return Err(Error::Config("sweep report: no rows with a ps value".into()));
    }
    let mut fits = Vec::with_capacity(problems.len());
    for problem in problems {
        let rows: Vec<&SweepPoint> = points.iter().filter(|p| p.problem == problem).collect();
        let mut levels: Vec<f64> = first_seen(rows.iter().map(|p| p.ps));
        levels.sort_by(f64::total_cmp);
        if levels.len() < 2 {
            return Err(Error::Config(format!(
                "sweep report needs at least 2 ps levels, {problem} has {}",
                levels.len()
            )));
        }
        let mut hv = Vec::with_capacity(levels.len());
        let mut log_igd = Vec::with_capacity(levels.len());
        for &level in &levels {
            let at: Vec<&&SweepPoint> = rows.iter().filter(|p| p.ps == level).collect();
            let n = at.len() as f64;
            hv.push(at.iter().map(|p| p.hv).sum::<f64>() / n);
            log_igd.push(at.iter().map(|p| p.igd.max(f64::MIN_POSITIVE).ln()).sum::<f64>() / n);
        }
        let (hv_slope, hv_intercept) = fit_line(&levels, &hv);
        let (log_igd_slope, log_igd_intercept) = fit_line(&levels, &log_igd);
        fits.push(SweepFit {
            problem,
            levels: levels.len(),
            hv_slope,
            hv_intercept,
            log_igd_slope,
            log_igd_intercept,
        });
    }
    Ok(fits)
}

/// Write `report.csv` (all pairwise comparisons) and, when the summary
/// spans at least two ps levels per problem, `sweep.csv` into `dir`.
/// Returns the plain-text rendering.
pub fn write_report(
    dir: &Path,
    summary: &[SummaryRow],
    pooled: Option<&[PooledRow]>,
) -> Result<String> {
    std::fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut text = String::new();
    let path = dir.join(REPORT_FILE);
    let mut writer = csv::Writer::from_path(&path).map_err(csv_error(&path))?;
    writer.write_record(REPORT_HEADER).map_err(csv_error(&path))?;
    for indicator in Indicator::ALL {
        if indicator == Indicator::HvPooled && pooled.is_none() {
            continue;
        }
        for (scope, report) in compare_cells(summary, pooled.unwrap_or(&[]), indicator)? {
            report
                .write_rows(&mut writer, indicator.name(), &scope)
                .map_err(csv_error(&path))?;
            let _ = writeln!(text, "[{}] {scope}", indicator.name());
            text.push_str(&report.to_table());
            text.push('\n');
        }
    }
    writer.flush().map_err(|source| Error::Io {
        path: path.clone(),
        source,
    })?;

    if let Ok(fits) = sweep_report(&sweep_points(summary, pooled)) {
        write_rows(&dir.join(SWEEP_FILE), &fits)?;
        let _ = writeln!(text, "ps regression (HV{}, ln IGD raw)", if pooled.is_some() { " pooled" } else { "" });
        for f in &fits {
            let _ = writeln!(
                text,
                "{:<6} hv slope {:+.4}  ln-igd slope {:+.4}",
                f.problem, f.hv_slope, f.log_igd_slope
            );
        }
    }
    Ok(text)
}
