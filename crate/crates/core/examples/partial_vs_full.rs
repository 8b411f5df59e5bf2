//! Partial update against full update and relative improvement on one
//! problem, with the final HV measured in a frame shared by all runs.
//!
//! ```text
//! cargo run --release --example partial_vs_full -- dtlz6 5
//! ```

use moead_ps::experiment::{execute, pooled_hypervolumes, ExperimentPlan};
use moead_ps::stats::median;
use moead_ps::{ProblemId, Strategy, Trace};

fn main() -> moead_ps::Result<()> {
    let mut args = std::env::args().skip(1);
    let problem: ProblemId = args.next().as_deref().unwrap_or("dtlz6").parse()?;
    let reps: usize = args.next().map_or(5, |s| s.parse().expect("reps must be an integer"));

    let cells = vec![Strategy::Partial { ps: 0.1 }, Strategy::Full, Strategy::RelativeImprovement];
    let plan = ExperimentPlan {
        reps,
        trace: Trace::Endpoints,
        ..ExperimentPlan::new(vec![problem], cells.clone())
    };
    let records = execute(&plan)?;
    let pooled = pooled_hypervolumes(&records);

    println!("{problem}, {reps} runs per strategy, budget {}", plan.budget);
    for cell in cells {
        let pick = |f: &dyn Fn(usize) -> f64| -> Vec<f64> {
            (0..records.len()).filter(|&i| records[i].job.strategy == cell).map(f).collect()
        };
        let hv = pick(&|i| pooled[i]);
        let igd = pick(&|i| records[i].log.last().igd_raw);
        let ndom = pick(&|i| records[i].log.last().ndom);
        println!(
            "{:<10} median HV {:.3}  median IGD {:>9.3}  median NDOM {:.3}",
            cell.to_string(),
            median(&hv),
            median(&igd),
            median(&ndom)
        );
    }
    Ok(())
}
