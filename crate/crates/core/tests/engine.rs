use moead_ps::decomposition::ScalingFrame;
use moead_ps::engine::{run_on, synchronous_update, Engine, Offspring, Population};
use moead_ps::problems::EvalCounter;
use moead_ps::{run, run_observed, EngineConfig, Problem, ProblemId, Strategy, Trace, UpdateScheme};

fn small(problem: ProblemId, strategy: Strategy) -> EngineConfig {
    let mut c = EngineConfig::new(problem, strategy).with_seed(9).with_budget(2_000);
    c.h = Some(49);
    c
}

#[test]
fn same_seed_same_run() {
    for update in [UpdateScheme::Synchronous, UpdateScheme::Sequential] {
        for strategy in [Strategy::Full, Strategy::Partial { ps: 0.3 }, Strategy::RelativeImprovement] {
            let c = small(ProblemId::Uf2, strategy).with_update(update);
            let a = run(&c).unwrap();
            let b = run(&c).unwrap();
            assert_eq!(a.log, b.log, "{strategy} {update:?}");
            assert_eq!(a.population.f, b.population.f);
        }
    }
}

#[test]
fn different_seeds_differ() {
    let c = small(ProblemId::Dtlz1, Strategy::Full);
    let a = run(&c).unwrap();
    let b = run(&c.clone().with_seed(10)).unwrap();
    assert_ne!(a.population.f, b.population.f);
}

#[test]
fn budget_is_never_exceeded() {
    for budget in [50, 51, 120, 999, 2_000] {
        for strategy in [Strategy::Full, Strategy::Partial { ps: 0.1 }, Strategy::RelativeImprovement] {
            let c = small(ProblemId::Dtlz7, strategy).with_budget(budget);
            let out = run(&c).unwrap();
            let last = out.log.last();
            assert!(last.evaluations <= budget, "{budget} {strategy}");
            assert_eq!(last.evaluations, out.population.evals.count());
            assert!(out.log.entries.windows(2).all(|w| w[0].evaluations < w[1].evaluations));
        }
    }
}

#[test]
fn budget_equal_to_population_logs_initialization_only() {
    let out = run(&small(ProblemId::Uf1, Strategy::Full).with_budget(50)).unwrap();
    assert_eq!(out.log.entries.len(), 1);
    assert_eq!(out.log.last().generation, 0);
    assert_eq!(out.log.last().evaluations, 50);
    assert_eq!(out.initial, out.population.f);
}

#[test]
fn budget_below_population_is_rejected() {
    assert!(run(&small(ProblemId::Uf1, Strategy::Full).with_budget(49)).is_err());
}

#[test]
fn endpoint_trace_matches_full_trace_ends() {
    let problem = Problem::new(ProblemId::Dtlz2);
    let c = small(ProblemId::Dtlz2, Strategy::Partial { ps: 0.5 });
    let full = run_on(&problem, &c).unwrap();
    let ends = moead_ps::run_traced(&problem, &c, Trace::Endpoints).unwrap();
    assert_eq!(ends.log.entries.len(), 2);
    assert_eq!(ends.log.entries[0], full.log.entries[0]);
    assert_eq!(ends.log.last(), full.log.last());
}

#[test]
fn observer_sees_every_generation() {
    let problem = Problem::new(ProblemId::Uf3);
    let c = small(ProblemId::Uf3, Strategy::Full);
    let mut seen = Vec::new();
    let out = run_observed(&problem, &c, Trace::EveryGeneration, |p| seen.push((p.t, p.evals.count()))).unwrap();
    let logged: Vec<(usize, usize)> = out.log.entries.iter().map(|e| (e.generation, e.evaluations)).collect();
    assert_eq!(seen, logged);
}

#[test]
fn warm_up_then_partial_selection() {
    let problem = Problem::new(ProblemId::Dtlz3);
    let mut c = small(ProblemId::Dtlz3, Strategy::Partial { ps: 0.2 }).with_budget(usize::MAX);
    c.delta_t = 5;
    let mut engine = Engine::new(&problem, c).unwrap();
    let mut pop = engine.initialize().unwrap();
    for _ in 0..5 {
        assert_eq!(engine.iterate(&mut pop).unwrap().selected, 50);
    }
    let later: usize = (0..200).map(|_| engine.iterate(&mut pop).unwrap().selected).sum();
    let mean = later as f64 / 200.0;
    assert!((mean - 10.0).abs() < 1.0, "mean {mean}");
}

fn population(f: Vec<Vec<f64>>) -> Population {
    Population {
        x: f.iter().map(|v| vec![v[0]]).collect(),
        f,
        t: 0,
        evals: EvalCounter::new(),
    }
}

#[test]
fn synchronous_update_adopts_best_slot_with_cap() {
    let weights = vec![vec![0.5, 0.5]; 3];
    let frame = ScalingFrame::from_points(&[vec![0.0, 0.0], vec![1.0, 1.0]]);
    let mut pop = population(vec![vec![0.9, 0.9], vec![0.8, 0.8], vec![0.7, 0.7]]);
    // Slot 0 is the best candidate for everyone, slot 1 the runner-up.
    let offspring = Offspring {
        x: vec![vec![0.1], vec![0.2], vec![0.7]],
        f: vec![vec![0.1, 0.1], vec![0.2, 0.2], vec![0.7, 0.7]],
    };
    let pool: Vec<usize> = vec![0, 1, 2];
    let pools: Vec<&[usize]> = vec![&pool; 3];
    let changed = synchronous_update(&mut pop, &offspring, &pools, 2, &frame, &weights);
    assert_eq!(changed, 3);
    // Slot 0 is used up after two adoptions, so subproblem 2 takes slot 1.
    assert_eq!(pop.f, vec![vec![0.1, 0.1], vec![0.1, 0.1], vec![0.2, 0.2]]);
}

#[test]
fn synchronous_update_keeps_incumbent_on_ties() {
    let weights = vec![vec![1.0, 1e-6]];
    let frame = ScalingFrame::from_points(&[vec![0.0, 0.0], vec![1.0, 1.0]]);
    let mut pop = population(vec![vec![0.5, 0.5]]);
    let offspring = Offspring {
        x: vec![vec![9.0]],
        f: vec![vec![0.5, 0.5]],
    };
    let pool = [0usize];
    assert_eq!(synchronous_update(&mut pop, &offspring, &[&pool], 2, &frame, &weights), 0);
    assert_eq!(pop.x, vec![vec![0.5]]);
}

#[test]
fn three_objective_problems_use_351_subproblems() {
    let out = run(&EngineConfig::new(ProblemId::Uf8, Strategy::Full).with_budget(351)).unwrap();
    assert_eq!(out.population.len(), 351);
    let out = run(&EngineConfig::new(ProblemId::Uf1, Strategy::Full).with_budget(350)).unwrap();
    assert_eq!(out.population.len(), 350);
}
