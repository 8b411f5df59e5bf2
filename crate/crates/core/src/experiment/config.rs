//! Command-line flags, the optional TOML file and their merge into an
//! [`ExperimentPlan`].

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::Parser;
use serde::Deserialize;

use super::ExperimentPlan;
use crate::allocation::{Strategy, StrategyKind};
use crate::engine::{Trace, UpdateScheme};
use crate::error::{Error, Result};
use crate::problems::ProblemId;

/// The ps grid of the sweep.
pub const SWEEP_GRID: [f64; 6] = [0.1, 0.2, 0.4, 0.6, 0.8, 1.0];

pub const DEFAULT_REPS: usize = 21;
pub const DEFAULT_BUDGET: usize = 30_000;
pub const DEFAULT_PS: f64 = 0.1;
pub const DEFAULT_DELTA_T: usize = 20;

/// Environment variable overriding the output directory.
pub const OUT_ENV: &str = "MOEADPS_OUT";

#[derive(Debug, Clone, Default, Parser)]
#[command(
    name = "moead-ps",
    version,
    about = "Run MOEA/D-DE with full, partial (ps) or relative-improvement updates on DTLZ/UF benchmarks"
)]
pub struct Cli {
    /// Problems, comma separated (dtlz1..dtlz7, uf1..uf10) or `all`.
    #[arg(long, value_delimiter = ',')]
    pub problem: Vec<String>,
    /// Strategies, comma separated: full, ps, ri.
    #[arg(long, value_delimiter = ',')]
    pub strategy: Vec<String>,
    /// Update probabilities for the ps strategy, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub ps: Vec<f64>,
    #[arg(long)]
    pub reps: Option<usize>,
    /// Evaluation budget per run, initialization included.
    #[arg(long)]
    pub budget: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Warm-up generations before resource allocation starts.
    #[arg(long = "delta-t")]
    pub delta_t: Option<usize>,
    /// Output directory.
    #[arg(long, env = OUT_ENV)]
    pub out: Option<PathBuf>,
    /// Run the ps grid 0.1, 0.2, 0.4, 0.6, 0.8, 1.0.
    #[arg(long)]
    pub sweep: bool,
    /// TOML file with the same keys; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Update scheme: synchronous or sequential.
    #[arg(long)]
    pub update: Option<String>,
    /// Write 0 as wall time so reruns are byte-identical.
    #[arg(long)]
    pub no_timing: bool,
    /// Log only the initial and final state of each run.
    #[arg(long)]
    pub final_only: bool,
    /// Analyze an existing summary CSV instead of running.
    #[arg(long, value_name = "SUMMARY_CSV")]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(untagged)]
enum OneOrMany<T> {
    #[default]
    None,
    One(T),
    Many(Vec<T>),
}

impl<T> OneOrMany<T> {
    fn into_vec(self) -> Vec<T> {
        match self {
            OneOrMany::None => Vec::new(),
            OneOrMany::One(v) => vec![v],
            OneOrMany::Many(v) => v,
        }
    }
}

/// Keys accepted in the TOML file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ConfigFile {
    #[serde(default)]
    problem: OneOrMany<String>,
    #[serde(default)]
    strategy: OneOrMany<String>,
    #[serde(default)]
    ps: OneOrMany<f64>,
    reps: Option<usize>,
    budget: Option<usize>,
    seed: Option<u64>,
    #[serde(alias = "delta_t")]
    delta_t: Option<usize>,
    out: Option<PathBuf>,
    sweep: Option<bool>,
    update: Option<String>,
    timing: Option<bool>,
    final_only: Option<bool>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        toml::from_str(&text).map_err(|source| Error::ConfigFile {
            path: path.to_path_buf(),
            source,
        })
    }
}

/// Parse flags (the first item is the program name) into a plan.
pub fn parse_config<I, T>(args: I) -> Result<ExperimentPlan>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| Error::Config(e.to_string()))?;
    plan_from(cli)
}

/// Merge flags over the config file over the defaults.
pub fn plan_from(cli: Cli) -> Result<ExperimentPlan> {
    let file = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let pick_list = |flag: Vec<String>, file: OneOrMany<String>| {
        if flag.is_empty() {
            file.into_vec()
        } else {
            flag
        }
    };

    let problem_names = pick_list(cli.problem, file.problem);
    let problems = parse_problems(&problem_names)?;

    let sweep = cli.sweep || file.sweep.unwrap_or(false);
    let ps_levels = if sweep {
        SWEEP_GRID.to_vec()
    } else if !cli.ps.is_empty() {
        cli.ps
    } else {
        let from_file = file.ps.into_vec();
        if from_file.is_empty() {
            vec![DEFAULT_PS]
        } else {
            from_file
        }
    };
    for &ps in &ps_levels {
        if !(ps > 0.0 && ps <= 1.0) {
            return Err(Error::Config(format!("--ps must lie in (0, 1], got {ps}")));
        }
    }

    let mut strategy_names = pick_list(cli.strategy, file.strategy);
    if strategy_names.is_empty() {
        strategy_names = if sweep {
            vec!["ps".into()]
        } else {
            vec!["full".into(), "ps".into(), "ri".into()]
        };
    }
    let mut cells = Vec::new();
    for name in &strategy_names {
        match StrategyKind::from_str(name)? {
            StrategyKind::Full => cells.push(Strategy::Full),
            StrategyKind::Partial => cells.extend(ps_levels.iter().map(|&ps| Strategy::Partial { ps })),
            StrategyKind::RelativeImprovement => cells.push(Strategy::RelativeImprovement),
        }
    }
    cells.dedup();

    let reps = cli.reps.or(file.reps).unwrap_or(DEFAULT_REPS);
    if reps < 1 {
        return Err(Error::Config("--reps must be at least 1".into()));
    }
    let budget = cli.budget.or(file.budget).unwrap_or(DEFAULT_BUDGET);
    let update = match cli.update.or(file.update) {
        Some(name) => name.parse()?,
        None => UpdateScheme::default(),
    };
    let timing = !cli.no_timing && file.timing.unwrap_or(true);
    let final_only = cli.final_only || file.final_only.unwrap_or(false);

    Ok(ExperimentPlan {
        problems,
        cells,
        reps,
        budget,
        seed: cli.seed.or(file.seed).unwrap_or(0),
        delta_t: cli.delta_t.or(file.delta_t).unwrap_or(DEFAULT_DELTA_T),
        out: cli.out.or(file.out).unwrap_or_else(|| PathBuf::from("results")),
        update,
        timing,
        trace: if final_only {
            Trace::Endpoints
        } else {
            Trace::EveryGeneration
        },
    })
}

fn parse_problems(names: &[String]) -> Result<Vec<ProblemId>> {
    if names.is_empty() || names.iter().any(|n| n.eq_ignore_ascii_case("all")) {
        return Ok(ProblemId::ALL.to_vec());
    }
    let mut ids = Vec::with_capacity(names.len());
    for name in names {
        let id: ProblemId = name.parse()?;
        if !ids.contains(&id) {
            ids.push(id);
        }
    }
    Ok(ids)
}
