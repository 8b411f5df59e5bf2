//! Resource allocation: per-subproblem priority values and the selection of
//! subproblems that receive a new candidate in each generation.
//!
//! Three strategies are supported:
//!
//! * `full`: every subproblem is varied every generation (plain MOEA/D-DE);
//! * `ps`: random partial update, each subproblem is selected with a fixed
//!   probability `ps` once the warm-up of `delta_t` generations is over;
//! * `ri`: relative improvement of the scalarized incumbent value over the
//!   last `delta_t` generations, normalized into selection probabilities.
//!
//! Generations are counted from zero, so the warm-up covers generations
//! `0..delta_t`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};

/// Offset added to priorities in the relative-improvement selection rule,
/// and floor for relative-improvement denominators.
pub const RI_EPSILON: f64 = 1e-50;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Strategy {
    Full,
    Partial { ps: f64 },
    RelativeImprovement,
}

impl Strategy {
    pub fn partial(ps: f64) -> Result<Self> {
        check_ps(ps)?;
        Ok(Strategy::Partial { ps })
    }

    /// Name used on the command line and in CSV files.
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Full => "full",
            Strategy::Partial { .. } => "ps",
            Strategy::RelativeImprovement => "ri",
        }
    }

    /// Update probability as exported to CSV: `full` counts as `ps = 1`.
    pub fn ps(&self) -> Option<f64> {
        match *self {
            Strategy::Full => Some(1.0),
            Strategy::Partial { ps } => Some(ps),
            Strategy::RelativeImprovement => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Strategy::Partial { ps } => check_ps(ps),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Partial { ps } => write!(f, "ps({ps})"),
            other => f.write_str(other.name()),
        }
    }
}

/// Strategy kind without its parameter, as parsed from a name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StrategyKind {
    Full,
    Partial,
    RelativeImprovement,
}

impl FromStr for StrategyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "full" => Ok(StrategyKind::Full),
            "ps" => Ok(StrategyKind::Partial),
            "ri" => Ok(StrategyKind::RelativeImprovement),
            _ => Err(Error::UnknownStrategy(s.to_string())),
        }
    }
}

fn check_ps(ps: f64) -> Result<()> {
    if ps > 0.0 && ps <= 1.0 {
        Ok(())
    } else {
        Err(Error::Config(format!("ps must lie in (0, 1], got {ps}")))
    }
}

/// Partial-update priorities: all ones during warm-up, `ps` afterwards.
pub fn priorities_ps(t: usize, delta_t: usize, ps: f64, n: usize) -> Result<Vec<f64>> {
    check_ps(ps)?;
    let u = if t < delta_t { 1.0 } else { ps };
    Ok(vec![u; n])
}

/// Relative improvement `(old - new) / old`, with the denominator floored
/// at [`RI_EPSILON`] and the result clamped to `[0, 1]`.
pub fn relative_improvement(old: f64, new: f64) -> f64 {
    let denom = old.max(RI_EPSILON);
    ((old - new) / denom).clamp(0.0, 1.0)
}

/// Rolling buffer of per-generation scalarized incumbent values.
#[derive(Debug, Clone, Default)]
pub struct RiHistory {
    snapshots: VecDeque<Vec<f64>>,
    capacity: usize,
}

impl RiHistory {
    /// Keeps the most recent `delta_t + 1` snapshots.
    pub fn new(delta_t: usize) -> Self {
        Self {
            snapshots: VecDeque::with_capacity(delta_t + 1),
            capacity: delta_t + 1,
        }
    }

    pub fn push(&mut self, values: Vec<f64>) {
        if self.snapshots.len() == self.capacity {
            self.snapshots.pop_front();
        }
        self.snapshots.push_back(values);
    }

    pub fn len(&self) -> usize {
        self.snapshots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.snapshots.is_empty()
    }

    /// The `(lagged, latest)` pair once the buffer spans `delta_t`
    /// generations.
    fn lagged_pair(&self) -> Option<(&[f64], &[f64])> {
        if self.snapshots.len() < self.capacity || self.capacity < 2 {
            return None;
        }
        Some((self.snapshots.front()?, self.snapshots.back()?))
    }
}

/// Relative-improvement priorities: ones during warm-up (or while the
/// history is too short), lagged relative improvement afterwards.
pub fn priorities_ri(history: &RiHistory, t: usize, delta_t: usize, n: usize) -> Vec<f64> {
    if t < delta_t {
        return vec![1.0; n];
    }
    match history.lagged_pair() {
        Some((old, new)) => old
            .iter()
            .zip(new)
            .map(|(&o, &v)| relative_improvement(o, v))
            .collect(),
        None => vec![1.0; n],
    }
}

/// How priority values become inclusion probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionRule {
    /// Include `i` with probability `u_i`.
    Direct,
    /// Include `i` with probability `(u_i + eps) / (max u + eps)`.
    Normalized,
}

/// Draw one uniform per subproblem and return the selected indices in
/// ascending order.
pub fn select_subproblems<R: Rng + ?Sized>(u: &[f64], rule: SelectionRule, rng: &mut R) -> Vec<usize> {
    let max_u = u.iter().copied().fold(0.0, f64::max);
    u.iter()
        .enumerate()
        .filter_map(|(i, &ui)| {
            let p = match rule {
                SelectionRule::Direct => ui,
                SelectionRule::Normalized => (ui + RI_EPSILON) / (max_u + RI_EPSILON),
            };
            (rng.gen::<f64>() < p).then_some(i)
        })
        .collect()
}

/// Per-run allocation state.
#[derive(Debug, Clone)]
pub struct PriorityState {
    strategy: Strategy,
    delta_t: usize,
    n: usize,
    history: RiHistory,
}

impl PriorityState {
    pub fn new(strategy: Strategy, delta_t: usize, n: usize) -> Result<Self> {
        strategy.validate()?;
        Ok(Self {
            strategy,
            delta_t,
            n,
            history: RiHistory::new(delta_t),
        })
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    /// Priority values for generation `t`.
    pub fn priorities(&self, t: usize) -> Vec<f64> {
        match self.strategy {
            Strategy::Full => vec![1.0; self.n],
            Strategy::Partial { ps } => {
                let u = if t < self.delta_t { 1.0 } else { ps };
                vec![u; self.n]
            }
            Strategy::RelativeImprovement => priorities_ri(&self.history, t, self.delta_t, self.n),
        }
    }

    pub fn select<R: Rng + ?Sized>(&self, t: usize, rng: &mut R) -> Vec<usize> {
        let rule = match self.strategy {
            Strategy::RelativeImprovement => SelectionRule::Normalized,
            _ => SelectionRule::Direct,
        };
        select_subproblems(&self.priorities(t), rule, rng)
    }

    /// Whether the strategy consumes scalarized snapshots.
    pub fn needs_history(&self) -> bool {
        matches!(self.strategy, Strategy::RelativeImprovement)
    }

    /// Store the scalarized incumbent values at the end of a generation.
    pub fn record(&mut self, values: Vec<f64>) {
        if self.needs_history() {
            self.history.push(values);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::Strategy;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ps_priorities_follow_the_two_phases() {
        assert_eq!(priorities_ps(5, 20, 0.1, 4).unwrap(), vec![1.0; 4]);
        assert_eq!(priorities_ps(20, 20, 0.1, 4).unwrap(), vec![0.1; 4]);
        assert_eq!(priorities_ps(19, 20, 0.1, 4).unwrap(), vec![1.0; 4]);
        for t in [0, 10, 20, 500] {
            assert_eq!(priorities_ps(t, 20, 1.0, 3).unwrap(), vec![1.0; 3]);
        }
        assert!(priorities_ps(30, 20, 0.0, 4).is_err());
        assert!(priorities_ps(30, 20, 1.5, 4).is_err());
    }

    #[test]
    fn relative_improvement_examples() {
        assert_eq!(relative_improvement(1.0, 0.5), 0.5);
        assert_eq!(relative_improvement(0.7, 0.7), 0.0);
        assert_eq!(relative_improvement(0.5, 0.9), 0.0);
        assert_eq!(relative_improvement(0.0, 0.0), 0.0);
        assert_eq!(relative_improvement(0.0, -1.0), 1.0);
    }

    #[test]
    fn ri_priorities_use_the_lagged_snapshot() {
        let mut h = RiHistory::new(2);
        assert_eq!(priorities_ri(&h, 1, 2, 2), vec![1.0, 1.0]);
        h.push(vec![1.0, 2.0]);
        h.push(vec![0.9, 2.0]);
        assert_eq!(priorities_ri(&h, 2, 2, 2), vec![1.0, 1.0]);
        h.push(vec![0.5, 2.0]);
        assert_eq!(priorities_ri(&h, 2, 2, 2), vec![0.5, 0.0]);
        // Oldest snapshot drops out.
        h.push(vec![0.45, 1.0]);
        let u = priorities_ri(&h, 3, 2, 2);
        assert!((u[0] - 0.5).abs() < 1e-12 && (u[1] - 0.5).abs() < 1e-12);
        assert_eq!(priorities_ri(&h, 1, 2, 2), vec![1.0, 1.0]);
    }

    #[test]
    fn all_ones_selects_everything() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..50 {
            assert_eq!(
                select_subproblems(&[1.0; 30], SelectionRule::Direct, &mut rng),
                (0..30).collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn normalized_rule_always_picks_the_maximum() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let u = [0.0, 0.3, 0.0, 0.0];
        for _ in 0..200 {
            assert!(select_subproblems(&u, SelectionRule::Normalized, &mut rng).contains(&1));
        }
        // All zero: every index has probability one.
        assert_eq!(
            select_subproblems(&[0.0; 5], SelectionRule::Normalized, &mut rng),
            vec![0, 1, 2, 3, 4]
        );
    }

    #[test]
    fn partial_selection_size_is_binomial() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let state = PriorityState::new(Strategy::partial(0.1).unwrap(), 20, 350).unwrap();
        let gens = 1000;
        let total: usize = (0..gens).map(|g| state.select(20 + g, &mut rng).len()).sum();
        let mean = total as f64 / gens as f64;
        let se = (350.0f64 * 0.1 * 0.9 / gens as f64).sqrt();
        assert!((mean - 35.0).abs() < 3.0 * se, "mean {mean}");
    }

    #[test]
    fn strategy_names() {
        assert_eq!("ps".parse::<StrategyKind>().unwrap(), StrategyKind::Partial);
        assert_eq!("FULL".parse::<StrategyKind>().unwrap(), StrategyKind::Full);
        assert!(matches!("dra".parse::<StrategyKind>(), Err(Error::UnknownStrategy(_))));
        assert_eq!(Strategy::Full.ps(), Some(1.0));
        assert_eq!(Strategy::RelativeImprovement.ps(), None);
        assert!(Strategy::partial(0.0).is_err());
    }

    proptest! {
        #[test]
        fn ri_is_scale_covariant(old in 1e-6f64..10.0, new in 0.0f64..10.0, c in 1e-3f64..1e3) {
            let a = relative_improvement(old, new);
            let b = relative_improvement(c * old, c * new);
            prop_assert!((a - b).abs() < 1e-12);
            prop_assert!((0.0..=1.0).contains(&a));
        }

        #[test]
        fn priorities_stay_in_unit_interval(values in prop::collection::vec((-1.0f64..5.0, -1.0f64..5.0), 1..40)) {
            let mut h = RiHistory::new(1);
            h.push(values.iter().map(|v| v.0).collect());
            h.push(values.iter().map(|v| v.1).collect());
            let u = priorities_ri(&h, 1, 1, values.len());
            prop_assert!(u.iter().all(|v| (0.0..=1.0).contains(v)));
        }
    }
}
