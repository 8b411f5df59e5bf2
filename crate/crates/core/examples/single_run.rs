//! One MOEA/D-DE run with the partial-update strategy and its anytime log.
//!
//! ```text
//! cargo run --release --example single_run -- uf1 0.1 7
//! ```

use moead_ps::{run, EngineConfig, ProblemId, Strategy};

fn main() -> moead_ps::Result<()> {
    let mut args = std::env::args().skip(1);
    let problem: ProblemId = args.next().as_deref().unwrap_or("uf1").parse()?;
    let ps: f64 = args.next().map_or(Ok(0.1), |s| s.parse()).expect("ps must be a number");
    let seed: u64 = args.next().map_or(Ok(7), |s| s.parse()).expect("seed must be an integer");

    let config = EngineConfig::new(problem, Strategy::partial(ps)?)
        .with_seed(seed)
        .with_budget(10_000);
    let outcome = run(&config)?;

    println!("{problem} ps={ps} seed={seed}, N = {}", outcome.population.f.len());
    println!("{:>5} {:>7} {:>7} {:>10} {:>6}", "gen", "evals", "hv", "igd", "ndom");
    let entries = &outcome.log.entries;
    let stride = (entries.len() / 12).max(1);
    for e in entries.iter().step_by(stride).chain(std::iter::once(outcome.log.last())) {
        println!(
            "{:>5} {:>7} {:>7.4} {:>10.4} {:>6.3}",
            e.generation, e.evaluations, e.hv, e.igd_raw, e.ndom
        );
    }
    Ok(())
}
