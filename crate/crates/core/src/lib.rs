//! MOEA/D-DE with interchangeable resource-allocation strategies.
//!
//! The crate bundles everything needed to compare a random partial-update
//! strategy against full updates and relative-improvement allocation:
//!
//! * [`problems`]: DTLZ1-7 (two objectives) and UF1-10 at dimension 100,
//!   with analytic reference fronts;
//! * [`decomposition`]: simplex-lattice weights, neighborhoods, min-max
//!   scaling and the weighted Tchebycheff function;
//! * [`variation`]: DE mutation, polynomial mutation, clamp repair;
//! * [`allocation`]: priority values and subproblem selection;
//! * [`engine`]: the generational loop and anytime logging;
//! * [`metrics`]: non-dominated filtering, NDOM, hypervolume and IGD;
//! * [`stats`]: Wilcoxon rank-sum tests with Hommel adjustment;
//! * [`experiment`]: plans, seeding, CSV output and regression reports.

pub mod allocation;
pub mod decomposition;
pub mod engine;
pub mod error;
pub mod experiment;
pub mod metrics;
pub mod problems;
pub mod stats;
pub mod variation;

pub use allocation::Strategy;
pub use engine::{run, run_observed, run_traced, EngineConfig, RunLog, RunOutcome, Trace, UpdateScheme};
pub use error::{Error, Result};
pub use problems::{catalog, Mop, Problem, ProblemId};
