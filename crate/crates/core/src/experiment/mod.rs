//! Experiment harness: a plan of problems × strategy cells × repetitions,
//! run in parallel with derived seeds and written out as CSV.

mod config;
mod output;
mod report;

use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;

pub use config::{
    parse_config, plan_from, Cli, ConfigFile, DEFAULT_BUDGET, DEFAULT_DELTA_T, DEFAULT_PS,
    DEFAULT_REPS, OUT_ENV, SWEEP_GRID,
};
pub use output::{
    cell_label, read_rows, write_rows, AnytimeRow, PooledRow, SummaryRow, ANYTIME_FILE,
    POOLED_FILE, REPORT_FILE, SUMMARY_FILE, SWEEP_FILE,
};
pub use report::{
    compare_cells, fit_line, pooled_hypervolumes, sweep_points, sweep_report, write_report,
    Indicator, SweepFit, SweepPoint,
};

use crate::allocation::Strategy;
use crate::engine::{run_traced, EngineConfig, RunLog, Trace, UpdateScheme};
use crate::error::{Error, Result};
use crate::problems::{Problem, ProblemId};

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPlan {
    pub problems: Vec<ProblemId>,
    pub cells: Vec<Strategy>,
    pub reps: usize,
    pub budget: usize,
    pub seed: u64,
    pub delta_t: usize,
    pub out: PathBuf,
    pub update: UpdateScheme,
    /// Record wall-clock time per run; off gives byte-identical reruns.
    pub timing: bool,
    pub trace: Trace,
}

impl ExperimentPlan {
    /// Plan with the default settings for the given problems and cells.
    pub fn new(problems: Vec<ProblemId>, cells: Vec<Strategy>) -> Self {
        Self {
            problems,
            cells,
            reps: DEFAULT_REPS,
            budget: DEFAULT_BUDGET,
            seed: 0,
            delta_t: DEFAULT_DELTA_T,
            out: PathBuf::from("results"),
            update: UpdateScheme::default(),
            timing: true,
            trace: Trace::EveryGeneration,
        }
    }

    pub fn run_count(&self) -> usize {
        self.problems.len() * self.cells.len() * self.reps
    }

    /// Every run in output order: problem, then cell, then repetition.
    pub fn jobs(&self) -> Vec<Job> {
        let mut jobs = Vec::with_capacity(self.run_count());
        for &problem in &self.problems {
            for &strategy in &self.cells {
                for rep in 0..self.reps {
                    jobs.push(Job {
                        problem,
                        strategy,
                        rep,
                        seed: run_seed(self.seed, problem, strategy, rep),
                    });
                }
            }
        }
        jobs
    }

    pub fn engine_config(&self, job: &Job) -> EngineConfig {
        let mut config = EngineConfig::new(job.problem, job.strategy)
            .with_seed(job.seed)
            .with_budget(self.budget)
            .with_update(self.update);
        config.delta_t = self.delta_t;
        config
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Job {
    pub problem: ProblemId,
    pub strategy: Strategy,
    pub rep: usize,
    pub seed: u64,
}

/// Seed of one run: FNV-1a (64-bit) of `"problem|strategy|ps|rep"`, XOR the
/// base seed, passed through the SplitMix64 finalizer. The ps field is
/// empty for `ri` and `1` for `full`.
pub fn run_seed(base: u64, problem: ProblemId, strategy: Strategy, rep: usize) -> u64 {
    let ps = strategy.ps().map(|p| p.to_string()).unwrap_or_default();
    let key = format!("{}|{}|{}|{}", problem.name(), strategy.name(), ps, rep);
    splitmix64(fnv1a(key.as_bytes()) ^ base)
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |hash, &b| {
        (hash ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Everything kept from one run.
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub job: Job,
    pub log: RunLog,
    /// Raw objectives of the initial population.
    pub initial: Vec<Vec<f64>>,
    /// Raw objectives of the final population.
    pub last: Vec<Vec<f64>>,
    pub wall_seconds: f64,
}

impl RunRecord {
    pub fn strategy_name(&self) -> &'static str {
        self.job.strategy.name()
    }

    pub fn label(&self) -> String {
        cell_label(self.job.strategy.name(), self.job.strategy.ps())
    }
}

/// Run every job of the plan, in parallel, returning records in plan
/// order.
pub fn execute(plan: &ExperimentPlan) -> Result<Vec<RunRecord>> {
    let jobs = plan.jobs();
    jobs.par_iter()
        .map(|job| {
            let problem = Problem::new(job.problem);
            let start = Instant::now();
            let outcome = run_traced(&problem, &plan.engine_config(job), plan.trace)?;
            let wall_seconds = if plan.timing {
                start.elapsed().as_secs_f64()
            } else {
                0.0
            };
            Ok(RunRecord {
                job: *job,
                log: outcome.log,
                initial: outcome.initial,
                last: outcome.population.f,
                wall_seconds,
            })
        })
        .collect()
}

pub fn summary_rows(records: &[RunRecord]) -> Vec<SummaryRow> {
    records
        .iter()
        .map(|r| {
            let last = r.log.last();
            SummaryRow {
                problem: r.job.problem.name().to_string(),
                strategy: r.strategy_name().to_string(),
                ps: r.job.strategy.ps(),
                rep: r.job.rep,
                evaluations: last.evaluations,
                hv: last.hv,
                igd_scaled: last.igd_scaled,
                igd_raw: last.igd_raw,
                ndom: last.ndom,
                wall_seconds: r.wall_seconds,
            }
        })
        .collect()
}

pub fn anytime_rows(records: &[RunRecord]) -> Vec<AnytimeRow> {
    records
        .iter()
        .flat_map(|r| {
            r.log.entries.iter().map(move |e| AnytimeRow {
                problem: r.job.problem.name().to_string(),
                strategy: r.strategy_name().to_string(),
                ps: r.job.strategy.ps(),
                rep: r.job.rep,
                generation: e.generation,
                evaluations: e.evaluations,
                hv: e.hv,
                igd_scaled: e.igd_scaled,
                igd_raw: e.igd_raw,
                ndom: e.ndom,
            })
        })
        .collect()
}

pub fn pooled_rows(records: &[RunRecord]) -> Vec<PooledRow> {
    records
        .iter()
        .zip(pooled_hypervolumes(records))
        .map(|(r, hv_pooled)| PooledRow {
            problem: r.job.problem.name().to_string(),
            strategy: r.strategy_name().to_string(),
            ps: r.job.strategy.ps(),
            rep: r.job.rep,
            hv_pooled,
        })
        .collect()
}

/// Paths of the files written by [`run_experiment`].
#[derive(Debug, Clone, PartialEq)]
pub struct OutputFiles {
    pub anytime: PathBuf,
    pub summary: PathBuf,
    pub pooled: PathBuf,
}

/// Write the anytime, summary and pooled-HV tables into `dir`.
pub fn write_outputs(dir: &Path, records: &[RunRecord]) -> Result<OutputFiles> {
    std::fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let files = OutputFiles {
        anytime: dir.join(ANYTIME_FILE),
        summary: dir.join(SUMMARY_FILE),
        pooled: dir.join(POOLED_FILE),
    };
    write_rows(&files.anytime, &anytime_rows(records))?;
    write_rows(&files.summary, &summary_rows(records))?;
    write_rows(&files.pooled, &pooled_rows(records))?;
    Ok(files)
}

/// Execute the plan and write its CSV files into `plan.out`.
pub fn run_experiment(plan: &ExperimentPlan) -> Result<OutputFiles> {
    let records = execute(plan)?;
    write_outputs(&plan.out, &records)
}
