//! The MOEA/D-DE generational loop with pluggable resource allocation.
//!
//! Each generation builds a [`ScalingFrame`] from the incumbents' raw
//! objectives, asks the [`PriorityState`] which subproblems are varied, and
//! builds one DE + polynomial-mutation candidate per selected subproblem,
//! drawing donors from a neighborhood or the whole population.
//!
//! Candidates reach the incumbents according to [`UpdateScheme`]. Under
//! either scheme, subproblems that were not selected may still adopt
//! candidates produced for their neighbors. The run stops as soon as the
//! evaluation budget is spent, possibly in the middle of a generation.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::allocation::{PriorityState, Strategy};
use crate::decomposition::{
    neighborhoods, sld_weights, tchebycheff_origin, NeighborTable, ScalingFrame, WeightSet,
};
use crate::error::{Error, Result};
use crate::metrics::assess;
use crate::problems::{EvalCounter, Mop, Problem, ProblemId};
use crate::variation::{de_mutation, polynomial_mutation, repair_clamp, VariationParams};

/// Default SLD granularity: 350 weights for two objectives, 351 for three.
pub fn default_granularity(m: usize) -> usize {
    match m {
        2 => 349,
        3 => 25,
        _ => 12,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EngineConfig {
    pub problem: ProblemId,
    pub strategy: Strategy,
    /// Warm-up length, in generations, before resource allocation starts.
    pub delta_t: usize,
    /// Maximum number of objective evaluations, initialization included.
    pub budget: usize,
    /// Neighborhood size `T`.
    pub neighborhood_size: usize,
    /// Probability of mating and replacing inside the neighborhood.
    pub delta_p: f64,
    /// Maximum number of incumbents one candidate may replace.
    pub nr: usize,
    pub variation: VariationParams,
    /// SLD granularity; `None` picks [`default_granularity`].
    pub h: Option<usize>,
    pub seed: u64,
    pub update: UpdateScheme,
}

/// How candidates reach the incumbents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UpdateScheme {
    /// All candidates of a generation are built from the same incumbents,
    /// then every subproblem adopts the best candidate from its pool. Slots
    /// of subproblems that were not varied offer their incumbent.
    #[default]
    Synchronous,
    /// Each candidate is offered to its pool right after evaluation and may
    /// replace up to `nr` incumbents.
    Sequential,
}

impl UpdateScheme {
    pub fn name(self) -> &'static str {
        match self {
            UpdateScheme::Synchronous => "synchronous",
            UpdateScheme::Sequential => "sequential",
        }
    }
}

impl std::str::FromStr for UpdateScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "synchronous" | "sync" => Ok(UpdateScheme::Synchronous),
            "sequential" | "seq" => Ok(UpdateScheme::Sequential),
            other => Err(Error::Config(format!("unknown update scheme '{other}'"))),
        }
    }
}

impl EngineConfig {
    pub fn new(problem: ProblemId, strategy: Strategy) -> Self {
        Self {
            problem,
            strategy,
            delta_t: 20,
            budget: 30_000,
            neighborhood_size: 20,
            delta_p: 0.9,
            nr: 2,
            variation: VariationParams::default(),
            h: None,
            seed: 0,
            update: UpdateScheme::default(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_update(mut self, update: UpdateScheme) -> Self {
        self.update = update;
        self
    }

    pub fn granularity(&self, m: usize) -> usize {
        self.h.unwrap_or_else(|| default_granularity(m))
    }

    fn validate(&self, n: usize) -> Result<()> {
        self.strategy.validate()?;
        self.variation.validate()?;
        if !(self.delta_p > 0.0 && self.delta_p <= 1.0) {
            return Err(Error::Config(format!(
                "delta_p must lie in (0, 1], got {}",
                self.delta_p
            )));
        }
        if self.nr < 1 {
            return Err(Error::Config("nr must be at least 1".into()));
        }
        if self.neighborhood_size < 3 {
            return Err(Error::Config(
                "neighborhood size must be at least 3 to draw two DE donors".into(),
            ));
        }
        if self.budget < n {
            return Err(Error::Config(format!(
                "budget {} cannot cover the initial population of {n}",
                self.budget
            )));
        }
        Ok(())
    }
}

/// Incumbent solutions, one per subproblem.
#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    pub x: Vec<Vec<f64>>,
    /// Raw objective vectors of `x`.
    pub f: Vec<Vec<f64>>,
    /// Completed generations.
    pub t: usize,
    pub evals: EvalCounter,
}

impl Population {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

/// Where a candidate draws its donors from and which incumbents it may
/// replace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatingPool {
    Neighborhood,
    Population,
}

/// Neighborhood with probability `delta_p`, whole population otherwise.
pub fn mating_pool<R: Rng + ?Sized>(delta_p: f64, rng: &mut R) -> MatingPool {
    if rng.gen::<f64>() < delta_p {
        MatingPool::Neighborhood
    } else {
        MatingPool::Population
    }
}

/// Offer candidate `y` (raw objectives `fy`) to the incumbents listed in
/// `pool`, visited in random order. Incumbent `j` is replaced when the
/// candidate has a strictly lower Tchebycheff value for weight `j` in
/// `frame`. Returns the number of replacements, at most `nr`.
#[allow(clippy::too_many_arguments)]
pub fn replace<R: Rng + ?Sized>(
    population: &mut Population,
    pool: &[usize],
    y: &[f64],
    fy: &[f64],
    nr: usize,
    frame: &ScalingFrame,
    weights: &[Vec<f64>],
    rng: &mut R,
) -> usize {
    let mut order = pool.to_vec();
    order.shuffle(rng);
    let scaled_y = frame.scale(fy);
    let mut scaled_j = vec![0.0; fy.len()];
    let mut replaced = 0;
    for j in order {
        if replaced >= nr {
            break;
        }
        frame.scale_into(&population.f[j], &mut scaled_j);
        let w = &weights[j];
        if tchebycheff_origin(&scaled_y, w) < tchebycheff_origin(&scaled_j, w) {
            population.x[j].copy_from_slice(y);
            population.f[j].copy_from_slice(fy);
            replaced += 1;
        }
    }
    replaced
}

/// One candidate slot per subproblem for a synchronous update. Slots of
/// subproblems that were not varied hold a copy of their incumbent.
#[derive(Debug, Clone, PartialEq)]
pub struct Offspring {
    pub x: Vec<Vec<f64>>,
    pub f: Vec<Vec<f64>>,
}

/// Synchronous restricted update. Subproblem `i` (in index order) keeps its
/// incumbent unless a slot `j` of `pools[i]` that has been adopted fewer
/// than `nr` times has a strictly lower Tchebycheff value for weight `i`;
/// the best such slot wins, ties going to the earlier pool position.
/// Returns the number of incumbents that changed.
pub fn synchronous_update(
    population: &mut Population,
    offspring: &Offspring,
    pools: &[&[usize]],
    nr: usize,
    frame: &ScalingFrame,
    weights: &[Vec<f64>],
) -> usize {
    let m = offspring.f.first().map_or(0, Vec::len);
    let scaled: Vec<Vec<f64>> = offspring.f.iter().map(|f| frame.scale(f)).collect();
    let mut buf = vec![0.0; m];
    let mut used = vec![0usize; offspring.x.len()];
    let mut changed = 0;
    for (i, pool) in pools.iter().enumerate() {
        let w = &weights[i];
        frame.scale_into(&population.f[i], &mut buf);
        let mut best = tchebycheff_origin(&buf, w);
        let mut pick = None;
        for &j in pool.iter() {
            if used[j] >= nr {
                continue;
            }
            let v = tchebycheff_origin(&scaled[j], w);
            if v < best {
                best = v;
                pick = Some(j);
            }
        }
        if let Some(j) = pick {
            used[j] += 1;
            population.x[i].clone_from(&offspring.x[j]);
            population.f[i].clone_from(&offspring.f[j]);
            changed += 1;
        }
    }
    changed
}

/// Bookkeeping returned by [`Engine::iterate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GenerationStats {
    /// Subproblems chosen for variation.
    pub selected: usize,
    /// Candidates actually evaluated (fewer than `selected` when the budget
    /// runs out).
    pub evaluated: usize,
    pub replacements: usize,
}

/// Run state for one problem and configuration.
pub struct Engine<'p, P: Mop> {
    problem: &'p P,
    config: EngineConfig,
    weights: WeightSet,
    guarded: Vec<Vec<f64>>,
    neighbors: NeighborTable,
    everyone: Vec<usize>,
    priorities: PriorityState,
    rng: ChaCha8Rng,
}

impl<'p, P: Mop> Engine<'p, P> {
    pub fn new(problem: &'p P, config: EngineConfig) -> Result<Self> {
        let m = problem.num_objectives();
        let weights = sld_weights(m, config.granularity(m))?;
        let n = weights.len();
        config.validate(n)?;
        let neighbors = neighborhoods(&weights, config.neighborhood_size)?;
        let priorities = PriorityState::new(config.strategy, config.delta_t, n)?;
        Ok(Self {
            problem,
            guarded: weights.guarded(),
            weights,
            neighbors,
            everyone: (0..n).collect(),
            priorities,
            rng: ChaCha8Rng::seed_from_u64(config.seed),
            config,
        })
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn weights(&self) -> &WeightSet {
        &self.weights
    }

    pub fn neighbors(&self) -> &NeighborTable {
        &self.neighbors
    }

    pub fn population_size(&self) -> usize {
        self.weights.len()
    }

    /// Sample one incumbent per subproblem uniformly in the box and
    /// evaluate it.
    pub fn initialize(&mut self) -> Result<Population> {
        let n = self.population_size();
        let (lower, upper) = (self.problem.lower(), self.problem.upper());
        let mut evals = EvalCounter::new();
        let mut x = Vec::with_capacity(n);
        let mut f = Vec::with_capacity(n);
        for _ in 0..n {
            let xi: Vec<f64> = lower
                .iter()
                .zip(upper)
                .map(|(&lo, &hi)| lo + (hi - lo) * self.rng.gen::<f64>())
                .collect();
            f.push(self.problem.evaluate(&xi, &mut evals)?);
            x.push(xi);
        }
        let population = Population { x, f, t: 0, evals };
        if self.priorities.needs_history() {
            let frame = ScalingFrame::from_points(&population.f);
            self.priorities.record(self.scalarized(&population, &frame));
        }
        Ok(population)
    }

    fn scalarized(&self, population: &Population, frame: &ScalingFrame) -> Vec<f64> {
        let mut buf = vec![0.0; self.problem.num_objectives()];
        population
            .f
            .iter()
            .zip(&self.guarded)
            .map(|(fi, w)| {
                frame.scale_into(fi, &mut buf);
                tchebycheff_origin(&buf, w)
            })
            .collect()
    }

    /// Two distinct donors from `pool`, both different from `i`.
    fn donors(&mut self, i: usize, pool: MatingPool) -> (usize, usize) {
        let members: &[usize] = match pool {
            MatingPool::Neighborhood => self.neighbors.of(i),
            MatingPool::Population => &self.everyone,
        };
        let len = members.len();
        let r1 = loop {
            let c = members[self.rng.gen_range(0..len)];
            if c != i {
                break c;
            }
        };
        let r2 = loop {
            let c = members[self.rng.gen_range(0..len)];
            if c != i && c != r1 {
                break c;
            }
        };
        (r1, r2)
    }

    fn candidate(&mut self, i: usize, pool: MatingPool, x: &[Vec<f64>]) -> Vec<f64> {
        let (lower, upper) = (self.problem.lower(), self.problem.upper());
        let params = self.config.variation;
        let (r1, r2) = self.donors(i, pool);
        let mut y = de_mutation(&x[i], &x[r1], &x[r2], params.f);
        repair_clamp(&mut y, lower, upper);
        polynomial_mutation(&mut y, params.p_m, params.eta_m, lower, upper, &mut self.rng);
        repair_clamp(&mut y, lower, upper);
        y
    }

    fn members(&self, i: usize, pool: MatingPool) -> &[usize] {
        match pool {
            MatingPool::Neighborhood => self.neighbors.of(i),
            MatingPool::Population => &self.everyone,
        }
    }

    /// Advance the population by one generation.
    pub fn iterate(&mut self, population: &mut Population) -> Result<GenerationStats> {
        let mut frame = ScalingFrame::from_points(&population.f);
        let selected = self.priorities.select(population.t, &mut self.rng);
        let stats = match self.config.update {
            UpdateScheme::Synchronous => {
                self.synchronous_generation(population, &selected, &mut frame)?
            }
            UpdateScheme::Sequential => {
                self.sequential_generation(population, &selected, &mut frame)?
            }
        };
        population.t += 1;
        if self.priorities.needs_history() {
            let values = self.scalarized(population, &frame);
            self.priorities.record(values);
        }
        Ok(stats)
    }

    fn synchronous_generation(
        &mut self,
        population: &mut Population,
        selected: &[usize],
        frame: &mut ScalingFrame,
    ) -> Result<GenerationStats> {
        let n = population.len();
        let pools: Vec<MatingPool> = (0..n)
            .map(|_| mating_pool(self.config.delta_p, &mut self.rng))
            .collect();
        let mut stats = GenerationStats {
            selected: selected.len(),
            ..Default::default()
        };
        let mut offspring = Offspring {
            x: population.x.clone(),
            f: population.f.clone(),
        };
        for &i in selected {
            if population.evals.count() >= self.config.budget {
                break;
            }
            let y = self.candidate(i, pools[i], &population.x);
            let fy = self.problem.evaluate(&y, &mut population.evals)?;
            stats.evaluated += 1;
            frame.include(&fy);
            offspring.x[i] = y;
            offspring.f[i] = fy;
        }
        let table: Vec<&[usize]> = (0..n).map(|i| self.members(i, pools[i])).collect();
        stats.replacements =
            synchronous_update(population, &offspring, &table, self.config.nr, frame, &self.guarded);
        Ok(stats)
    }

    fn sequential_generation(
        &mut self,
        population: &mut Population,
        selected: &[usize],
        frame: &mut ScalingFrame,
    ) -> Result<GenerationStats> {
        let mut stats = GenerationStats {
            selected: selected.len(),
            ..Default::default()
        };
        for &i in selected {
            if population.evals.count() >= self.config.budget {
                break;
            }
            let pool = mating_pool(self.config.delta_p, &mut self.rng);
            let y = self.candidate(i, pool, &population.x);
            let fy = self.problem.evaluate(&y, &mut population.evals)?;
            stats.evaluated += 1;
            // Keep the candidate inside the frame so the origin stays ideal.
            frame.include(&fy);
            let members = match pool {
                MatingPool::Neighborhood => self.neighbors.of(i),
                MatingPool::Population => &self.everyone,
            };
            stats.replacements += replace(
                population,
                members,
                &y,
                &fy,
                self.config.nr,
                frame,
                &self.guarded,
                &mut self.rng,
            );
        }
        Ok(stats)
    }
}

/// One row of the anytime trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogEntry {
    pub generation: usize,
    pub evaluations: usize,
    pub hv: f64,
    pub igd_scaled: f64,
    pub igd_raw: f64,
    pub ndom: f64,
}

/// Anytime trace of a run: one entry after initialization and one after
/// every generation.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunLog {
    pub entries: Vec<LogEntry>,
}

impl RunLog {
    pub fn last(&self) -> &LogEntry {
        self.entries.last().expect("a run log always has the initial entry")
    }

    /// Value logged at the last generation whose evaluation count does not
    /// exceed `evaluations`.
    pub fn at_evaluations(&self, evaluations: usize) -> Option<&LogEntry> {
        let idx = self.entries.partition_point(|e| e.evaluations <= evaluations);
        idx.checked_sub(1).map(|i| &self.entries[i])
    }
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub log: RunLog,
    pub population: Population,
    /// Raw objectives of the initial population.
    pub initial: Vec<Vec<f64>>,
}

fn log_entry(problem: ProblemId, population: &Population) -> LogEntry {
    let ind = assess(problem, &population.f);
    LogEntry {
        generation: population.t,
        evaluations: population.evals.count(),
        hv: ind.hv,
        igd_scaled: ind.igd_scaled,
        igd_raw: ind.igd_raw,
        ndom: ind.ndom,
    }
}

/// Initialize, then iterate until the budget is spent, logging indicators
/// after initialization and after every generation.
pub fn run(config: &EngineConfig) -> Result<RunOutcome> {
    let problem = Problem::new(config.problem);
    run_on(&problem, config)
}

/// [`run`] on an explicit problem instance, e.g. one with a non-default
/// dimension.
pub fn run_on(problem: &Problem, config: &EngineConfig) -> Result<RunOutcome> {
    run_traced(problem, config, Trace::EveryGeneration)
}

/// Which generations get a [`RunLog`] entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Trace {
    #[default]
    EveryGeneration,
    /// Only the state after initialization and the final state.
    Endpoints,
}

pub fn run_traced(problem: &Problem, config: &EngineConfig, trace: Trace) -> Result<RunOutcome> {
    run_observed(problem, config, trace, |_| {})
}

/// [`run_traced`] that also hands the population to `observer` after
/// initialization and after every generation.
pub fn run_observed<F: FnMut(&Population)>(
    problem: &Problem,
    config: &EngineConfig,
    trace: Trace,
    mut observer: F,
) -> Result<RunOutcome> {
    let mut engine = Engine::new(problem, config.clone())?;
    let mut population = engine.initialize()?;
    observer(&population);
    let initial = population.f.clone();
    let mut log = RunLog::default();
    log.entries.push(log_entry(problem.id(), &population));
    while population.evals.count() < config.budget {
        engine.iterate(&mut population)?;
        observer(&population);
        let done = population.evals.count() >= config.budget;
        if trace == Trace::EveryGeneration || done {
            log.entries.push(log_entry(problem.id(), &population));
        }
    }
    Ok(RunOutcome {
        log,
        population,
        initial,
    })
}
