use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use moead_ps::experiment::{
    plan_from, read_rows, run_experiment, write_report, Cli, PooledRow, SummaryRow, POOLED_FILE,
};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.report.clone() {
        Some(summary) => report(&summary, cli.out.as_deref()),
        None => experiment(cli),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn experiment(cli: Cli) -> moead_ps::Result<()> {
    let plan = plan_from(cli)?;
    eprintln!(
        "{} problems x {} cells x {} reps = {} runs -> {}",
        plan.problems.len(),
        plan.cells.len(),
        plan.reps,
        plan.run_count(),
        plan.out.display()
    );
    let files = run_experiment(&plan)?;
    println!("{}", files.anytime.display());
    println!("{}", files.summary.display());
    println!("{}", files.pooled.display());
    Ok(())
}

fn report(summary_path: &Path, out: Option<&Path>) -> moead_ps::Result<()> {
    let summary: Vec<SummaryRow> = read_rows(summary_path)?;
    let dir = summary_path.parent().unwrap_or(Path::new("."));
    let pooled_path = dir.join(POOLED_FILE);
    let pooled: Option<Vec<PooledRow>> = if pooled_path.exists() {
        Some(read_rows(&pooled_path)?)
    } else {
        None
    };
    let text = write_report(out.unwrap_or(dir), &summary, pooled.as_deref())?;
    print!("{text}");
    Ok(())
}
