//! Walk the benchmark catalog: dimensions, bounds, and where the analytic
//! front sits in objective space.
//!
//! ```text
//! cargo run --release --example problem_catalog
//! ```

use moead_ps::problems::reference_front;
use moead_ps::{catalog, Mop};

fn main() {
    println!("{:<6} {:>3} {:>4}  {:<22} {:<24} front points", "name", "m", "n", "x-range", "front ideal/nadir");
    for problem in catalog() {
        let (lower, upper) = problem.bounds();
        let front = reference_front(problem.id());
        let box_ = format!("[{}, {}]..[{}, {}]", lower[0], upper[0], lower[1], upper[1]);
        let span = front
            .ideal
            .iter()
            .zip(&front.nadir)
            .map(|(a, b)| format!("{a:.2}-{b:.2}"))
            .collect::<Vec<_>>()
            .join(" ");
        println!(
            "{:<6} {:>3} {:>4}  {:<22} {:<24} {}",
            problem.name(),
            problem.num_objectives(),
            problem.dim(),
            box_,
            span,
            front.points.len()
        );
    }

    // Objectives at the centre of the box.
    for problem in catalog().into_iter().filter(|p| p.name().starts_with("uf")).take(3) {
        let (lower, upper) = problem.bounds();
        let centre: Vec<f64> = lower.iter().zip(upper).map(|(l, u)| 0.5 * (l + u)).collect();
        println!("{} at box centre: {:?}", problem.name(), problem.objectives(&centre));
    }
}
