//! Plug a user-defined problem into the engine through the `Mop` trait.

use moead_ps::engine::Engine;
use moead_ps::{EngineConfig, Mop, ProblemId, Strategy};

/// Schaffer-like bi-objective problem on [-2, 2]^3.
struct Shifted {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Mop for Shifted {
    fn num_objectives(&self) -> usize {
        2
    }

    fn lower(&self) -> &[f64] {
        &self.lower
    }

    fn upper(&self) -> &[f64] {
        &self.upper
    }

    fn objectives(&self, x: &[f64]) -> Vec<f64> {
        let a: f64 = x.iter().map(|v| v * v).sum();
        let b: f64 = x.iter().map(|v| (v - 1.0).powi(2)).sum();
        vec![a, b]
    }
}

fn main() -> moead_ps::Result<()> {
    let problem = Shifted {
        lower: vec![-2.0; 3],
        upper: vec![2.0; 3],
    };
    // The problem id only matters for logging, which the bare engine skips.
    let mut config = EngineConfig::new(ProblemId::Dtlz2, Strategy::partial(0.2)?)
        .with_seed(5)
        .with_budget(3_000);
    config.h = Some(49);
    let mut engine = Engine::new(&problem, config)?;
    let mut population = engine.initialize()?;
    while population.evals.count() < 3_000 {
        let stats = engine.iterate(&mut population)?;
        if population.t % 10 == 0 {
            println!("gen {:>3}: {} varied, {} replaced", population.t, stats.evaluated, stats.replacements);
        }
    }

    let mut front = population.f.clone();
    front.sort_by(|p, q| p[0].total_cmp(&q[0]));
    for f in front.iter().step_by(10) {
        println!("{:.4} {:.4}", f[0], f[1]);
    }
    Ok(())
}
