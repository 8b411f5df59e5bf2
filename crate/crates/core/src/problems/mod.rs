//! Benchmark multi-objective problems: DTLZ1-7 (two objectives) and the
//! UF1-UF10 suite, all at decision dimension 100 by default.
//!
//! Objective vectors are raw values to be minimized. [`Problem::evaluate`]
//! checks its input against the box and charges one evaluation to the
//! supplied [`EvalCounter`].

mod dtlz;
mod front;
mod uf;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use front::{reference_front, ReferenceFront, REFERENCE_FRONT_SIZE};

/// Decision dimension used by every catalog entry.
pub const DEFAULT_DIM: usize = 100;

/// Identifier of one of the 17 benchmark problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProblemId {
    Dtlz1,
    Dtlz2,
    Dtlz3,
    Dtlz4,
    Dtlz5,
    Dtlz6,
    Dtlz7,
    Uf1,
    Uf2,
    Uf3,
    Uf4,
    Uf5,
    Uf6,
    Uf7,
    Uf8,
    Uf9,
    Uf10,
}

impl ProblemId {
    pub const ALL: [ProblemId; 17] = [
        ProblemId::Dtlz1,
        ProblemId::Dtlz2,
        ProblemId::Dtlz3,
        ProblemId::Dtlz4,
        ProblemId::Dtlz5,
        ProblemId::Dtlz6,
        ProblemId::Dtlz7,
        ProblemId::Uf1,
        ProblemId::Uf2,
        ProblemId::Uf3,
        ProblemId::Uf4,
        ProblemId::Uf5,
        ProblemId::Uf6,
        ProblemId::Uf7,
        ProblemId::Uf8,
        ProblemId::Uf9,
        ProblemId::Uf10,
    ];

    /// Lowercase identifier used on the command line and in CSV files.
    pub fn name(self) -> &'static str {
        match self {
            ProblemId::Dtlz1 => "dtlz1",
            ProblemId::Dtlz2 => "dtlz2",
            ProblemId::Dtlz3 => "dtlz3",
            ProblemId::Dtlz4 => "dtlz4",
            ProblemId::Dtlz5 => "dtlz5",
            ProblemId::Dtlz6 => "dtlz6",
            ProblemId::Dtlz7 => "dtlz7",
            ProblemId::Uf1 => "uf1",
            ProblemId::Uf2 => "uf2",
            ProblemId::Uf3 => "uf3",
            ProblemId::Uf4 => "uf4",
            ProblemId::Uf5 => "uf5",
            ProblemId::Uf6 => "uf6",
            ProblemId::Uf7 => "uf7",
            ProblemId::Uf8 => "uf8",
            ProblemId::Uf9 => "uf9",
            ProblemId::Uf10 => "uf10",
        }
    }

    pub fn num_objectives(self) -> usize {
        match self {
            ProblemId::Uf8 | ProblemId::Uf9 | ProblemId::Uf10 => 3,
            _ => 2,
        }
    }

    pub fn is_dtlz(self) -> bool {
        (self as usize) < 7
    }

    pub(crate) fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        ProblemId::ALL
            .into_iter()
            .find(|id| id.name() == lower)
            .ok_or_else(|| Error::UnknownProblem(s.to_string()))
    }
}

/// Counts objective-function evaluations consumed by one run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvalCounter {
    count: usize,
}

impl EvalCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub(crate) fn tick(&mut self) {
        self.count += 1;
    }
}

/// A box-constrained multi-objective minimization problem.
///
/// The engine is generic over this trait so that tests and examples can
/// plug in their own objective functions next to the benchmark catalog.
pub trait Mop: Sync {
    fn num_objectives(&self) -> usize;

    fn lower(&self) -> &[f64];

    fn upper(&self) -> &[f64];

    /// Raw objective values. Callers guarantee `x` has the right length and
    /// lies inside the box.
    fn objectives(&self, x: &[f64]) -> Vec<f64>;

    fn dim(&self) -> usize {
        self.lower().len()
    }

    /// Checked evaluation: validates `x` against the box, then charges one
    /// evaluation to `counter`.
    fn evaluate(&self, x: &[f64], counter: &mut EvalCounter) -> Result<Vec<f64>> {
        check_point(x, self.lower(), self.upper())?;
        counter.tick();
        Ok(self.objectives(x))
    }
}

pub(crate) fn check_point(x: &[f64], lower: &[f64], upper: &[f64]) -> Result<()> {
    if x.len() != lower.len() {
        return Err(Error::DimensionMismatch {
            expected: lower.len(),
            got: x.len(),
        });
    }
    for (index, ((&value, &lo), &hi)) in x.iter().zip(lower).zip(upper).enumerate() {
        // NaN fails both comparisons, so test the positive condition.
        if !(value >= lo && value <= hi) {
            return Err(Error::OutOfBounds {
                index,
                value,
                lower: lo,
                upper: hi,
            });
        }
    }
    Ok(())
}

/// One benchmark instance: identifier, objective count, dimension and box.
#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    id: ProblemId,
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Problem {
    /// The catalog instance (dimension 100).
    pub fn new(id: ProblemId) -> Self {
        Self::with_dim(id, DEFAULT_DIM).expect("default dimension is valid for every problem")
    }

    /// An instance with a non-default decision dimension.
    pub fn with_dim(id: ProblemId, dim: usize) -> Result<Self> {
        let min_dim = if id.is_dtlz() {
            id.num_objectives()
        } else if id.num_objectives() == 3 {
            5
        } else {
            3
        };
        if dim < min_dim {
            return Err(Error::Config(format!(
                "{id} needs at least {min_dim} decision variables, got {dim}"
            )));
        }
        let (lower, upper) = bounds_for(id, dim);
        Ok(Self { id, lower, upper })
    }

    pub fn id(&self) -> ProblemId {
        self.id
    }

    pub fn name(&self) -> &'static str {
        self.id.name()
    }

    /// Box bounds `(lower, upper)`.
    pub fn bounds(&self) -> (&[f64], &[f64]) {
        (&self.lower, &self.upper)
    }

    /// `k` mutually non-dominated points sampled from the analytic Pareto
    /// front.
    pub fn pareto_front(&self, k: usize) -> Vec<Vec<f64>> {
        front::sample(self.id, k)
    }
}

impl Mop for Problem {
    fn num_objectives(&self) -> usize {
        self.id.num_objectives()
    }

    fn lower(&self) -> &[f64] {
        &self.lower
    }

    fn upper(&self) -> &[f64] {
        &self.upper
    }

    fn objectives(&self, x: &[f64]) -> Vec<f64> {
        match self.id {
            ProblemId::Dtlz1 => dtlz::dtlz1(x, 2),
            ProblemId::Dtlz2 => dtlz::dtlz2(x, 2),
            ProblemId::Dtlz3 => dtlz::dtlz3(x, 2),
            ProblemId::Dtlz4 => dtlz::dtlz4(x, 2),
            ProblemId::Dtlz5 => dtlz::dtlz5(x, 2),
            ProblemId::Dtlz6 => dtlz::dtlz6(x, 2),
            ProblemId::Dtlz7 => dtlz::dtlz7(x, 2),
            ProblemId::Uf1 => uf::uf1(x),
            ProblemId::Uf2 => uf::uf2(x),
            ProblemId::Uf3 => uf::uf3(x),
            ProblemId::Uf4 => uf::uf4(x),
            ProblemId::Uf5 => uf::uf5(x),
            ProblemId::Uf6 => uf::uf6(x),
            ProblemId::Uf7 => uf::uf7(x),
            ProblemId::Uf8 => uf::uf8(x),
            ProblemId::Uf9 => uf::uf9(x),
            ProblemId::Uf10 => uf::uf10(x),
        }
    }
}

/// All 17 benchmark problems at dimension 100, DTLZ first.
pub fn catalog() -> Vec<Problem> {
    ProblemId::ALL.into_iter().map(Problem::new).collect()
}

/// Box bounds of a problem at the given dimension.
pub fn bounds(id: ProblemId, dim: usize) -> (Vec<f64>, Vec<f64>) {
    bounds_for(id, dim)
}

fn bounds_for(id: ProblemId, dim: usize) -> (Vec<f64>, Vec<f64>) {
    use ProblemId::*;
    // Number of leading coordinates living in [0, 1]; the rest use `tail`.
    let (head, tail) = match id {
        Dtlz1 | Dtlz2 | Dtlz3 | Dtlz4 | Dtlz5 | Dtlz6 | Dtlz7 | Uf3 => (dim, 0.0),
        Uf1 | Uf2 | Uf5 | Uf6 | Uf7 => (1, 1.0),
        Uf4 => (1, 2.0),
        Uf8 | Uf9 | Uf10 => (2, 2.0),
    };
    let lower = (0..dim).map(|j| if j < head { 0.0 } else { -tail }).collect();
    let upper = (0..dim).map(|j| if j < head { 1.0 } else { tail }).collect();
    (lower, upper)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn catalog_has_seventeen_problems_at_dimension_100() {
        let problems = catalog();
        assert_eq!(problems.len(), 17);
        assert!(problems.iter().all(|p| p.dim() == 100));
        let dtlz: Vec<_> = problems.iter().filter(|p| p.id().is_dtlz()).collect();
        assert_eq!(dtlz.len(), 7);
        assert!(dtlz.iter().all(|p| p.num_objectives() == 2));
    }

    #[test]
    fn objective_counts() {
        for id in ProblemId::ALL {
            let expected = match id {
                ProblemId::Uf8 | ProblemId::Uf9 | ProblemId::Uf10 => 3,
                _ => 2,
            };
            assert_eq!(Problem::new(id).num_objectives(), expected, "{id}");
        }
        assert_eq!(Problem::new(ProblemId::Uf8).num_objectives(), 3);
        assert_eq!(Problem::new(ProblemId::Dtlz1).dim(), 100);
    }

    #[test]
    fn names_round_trip() {
        for id in ProblemId::ALL {
            assert_eq!(id.name().parse::<ProblemId>().unwrap(), id);
        }
        assert!(matches!("zdt1".parse::<ProblemId>(), Err(Error::UnknownProblem(_))));
        assert_eq!("UF10".parse::<ProblemId>().unwrap(), ProblemId::Uf10);
    }

    #[test]
    fn box_bounds() {
        let (lo, hi) = bounds(ProblemId::Dtlz3, 100);
        assert!(lo.iter().all(|&v| v == 0.0));
        assert!(hi.iter().all(|&v| v == 1.0));

        let (lo, hi) = bounds(ProblemId::Uf1, 100);
        assert_eq!((lo[0], hi[0]), (0.0, 1.0));
        assert!(lo[1..].iter().all(|&v| v == -1.0));
        assert!(hi[1..].iter().all(|&v| v == 1.0));

        let (lo, hi) = bounds(ProblemId::Uf4, 100);
        assert_eq!((lo[0], hi[0]), (0.0, 1.0));
        assert!(lo[1..].iter().all(|&v| v == -2.0) && hi[1..].iter().all(|&v| v == 2.0));

        let (lo, hi) = bounds(ProblemId::Uf3, 100);
        assert!(lo.iter().all(|&v| v == 0.0) && hi.iter().all(|&v| v == 1.0));

        for id in [ProblemId::Uf8, ProblemId::Uf9, ProblemId::Uf10] {
            let (lo, hi) = bounds(id, 100);
            assert_eq!(&lo[..2], &[0.0, 0.0]);
            assert_eq!(&hi[..2], &[1.0, 1.0]);
            assert!(lo[2..].iter().all(|&v| v == -2.0) && hi[2..].iter().all(|&v| v == 2.0));
        }

        for problem in catalog() {
            let (lo, hi) = problem.bounds();
            assert!(lo.iter().zip(hi).all(|(l, h)| l < h), "{}", problem.name());
        }
    }

    #[test]
    fn evaluate_counts_and_rejects_bad_input() {
        let problem = Problem::new(ProblemId::Dtlz2);
        let mut counter = EvalCounter::new();
        let x = vec![0.5; 100];
        problem.evaluate(&x, &mut counter).unwrap();
        problem.evaluate(&x, &mut counter).unwrap();
        assert_eq!(counter.count(), 2);

        let err = problem.evaluate(&[0.5; 99], &mut counter).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { expected: 100, got: 99 }));

        let mut bad = x.clone();
        bad[7] = 1.5;
        let err = problem.evaluate(&bad, &mut counter).unwrap_err();
        assert!(matches!(err, Error::OutOfBounds { index: 7, .. }));

        bad[7] = f64::NAN;
        assert!(problem.evaluate(&bad, &mut counter).is_err());
        assert_eq!(counter.count(), 2);
    }

    #[test]
    fn worked_evaluations() {
        let mut counter = EvalCounter::new();

        let mut x = vec![0.5; 100];
        x[0] = 0.0;
        let f = Problem::new(ProblemId::Dtlz2).evaluate(&x, &mut counter).unwrap();
        assert_abs_diff_eq!(f[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(f[1], 0.0, epsilon = 1e-12);

        let x = vec![0.5; 100];
        let f = Problem::new(ProblemId::Dtlz1).evaluate(&x, &mut counter).unwrap();
        assert_abs_diff_eq!(f[0], 0.25, epsilon = 1e-9);
        assert_abs_diff_eq!(f[1], 0.25, epsilon = 1e-9);

        let n = 100.0;
        let x1: f64 = 0.25;
        let x: Vec<f64> = (1..=100)
            .map(|j| {
                if j == 1 {
                    x1
                } else {
                    (6.0 * std::f64::consts::PI * x1 + j as f64 * std::f64::consts::PI / n).sin()
                }
            })
            .collect();
        let f = Problem::new(ProblemId::Uf1).evaluate(&x, &mut counter).unwrap();
        assert_abs_diff_eq!(f[0], 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(f[1], 0.5, epsilon = 1e-12);
    }

    #[test]
    fn small_dimensions_rejected() {
        assert!(Problem::with_dim(ProblemId::Uf8, 4).is_err());
        assert!(Problem::with_dim(ProblemId::Dtlz1, 1).is_err());
        assert_eq!(Problem::with_dim(ProblemId::Uf8, 5).unwrap().dim(), 5);
    }
}
