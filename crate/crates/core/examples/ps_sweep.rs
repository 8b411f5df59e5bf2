//! Sweep the update probability, write the CSV tables and the report.
//!
//! ```text
//! cargo run --release --example ps_sweep -- uf6 3 /tmp/sweep
//! ```

use std::path::PathBuf;

use moead_ps::experiment::{
    execute, pooled_rows, summary_rows, write_outputs, write_report, ExperimentPlan, SWEEP_GRID,
};
use moead_ps::{ProblemId, Strategy, Trace};

fn main() -> moead_ps::Result<()> {
    let mut args = std::env::args().skip(1);
    let problem: ProblemId = args.next().as_deref().unwrap_or("uf6").parse()?;
    let reps: usize = args.next().map_or(3, |s| s.parse().expect("reps must be an integer"));
    let out = args.next().map_or_else(|| std::env::temp_dir().join("moead-ps-sweep"), PathBuf::from);

    let plan = ExperimentPlan {
        reps,
        budget: 15_000,
        seed: 11,
        trace: Trace::Endpoints,
        out: out.clone(),
        ..ExperimentPlan::new(vec![problem], SWEEP_GRID.iter().map(|&ps| Strategy::Partial { ps }).collect())
    };
    let records = execute(&plan)?;
    let files = write_outputs(&out, &records)?;
    println!("wrote {} and {}", files.summary.display(), files.pooled.display());

    let text = write_report(&out, &summary_rows(&records), Some(&pooled_rows(&records)))?;
    println!("{text}");
    Ok(())
}
