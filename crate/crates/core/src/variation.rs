//! The MOEA/D-DE variation stack: differential mutation around the
//! incumbent, bounded polynomial mutation and clamp repair.

use rand::Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VariationParams {
    /// DE scale factor.
    pub f: f64,
    /// Polynomial-mutation distribution index.
    pub eta_m: f64,
    /// Per-coordinate mutation probability.
    pub p_m: f64,
}

impl Default for VariationParams {
    fn default() -> Self {
        Self {
            f: 0.25,
            eta_m: 20.0,
            p_m: 0.01,
        }
    }
}

impl VariationParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.f > 0.0) {
            return Err(Error::Config(format!("DE scale factor F must be > 0, got {}", self.f)));
        }
        if !(self.eta_m >= 0.0) {
            return Err(Error::Config(format!("eta_m must be >= 0, got {}", self.eta_m)));
        }
        if !(0.0..=1.0).contains(&self.p_m) {
            return Err(Error::Config(format!("p_m must be in [0, 1], got {}", self.p_m)));
        }
        Ok(())
    }
}

/// `base + f * (r1 - r2)`, coordinate-wise.
pub fn de_mutation(base: &[f64], r1: &[f64], r2: &[f64], f: f64) -> Vec<f64> {
    base.iter()
        .zip(r1)
        .zip(r2)
        .map(|((b, a), c)| b + f * (a - c))
        .collect()
}

/// Clamp every coordinate into `[lower_j, upper_j]`.
pub fn repair_clamp(y: &mut [f64], lower: &[f64], upper: &[f64]) {
    for ((v, &lo), &hi) in y.iter_mut().zip(lower).zip(upper) {
        *v = v.clamp(lo, hi);
    }
}

/// Normalized perturbation `delta_q` of the bounded polynomial mutation for
/// draw `u`, where `delta_low` / `delta_high` are the normalized distances
/// of the coordinate to its lower / upper bound.
pub fn polynomial_delta(u: f64, eta: f64, delta_low: f64, delta_high: f64) -> f64 {
    let power = 1.0 / (eta + 1.0);
    if u <= 0.5 {
        let xy = 1.0 - delta_low;
        let val = 2.0 * u + (1.0 - 2.0 * u) * xy.powf(eta + 1.0);
        val.powf(power) - 1.0
    } else {
        let xy = 1.0 - delta_high;
        let val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * xy.powf(eta + 1.0);
        1.0 - val.powf(power)
    }
}

/// Mutate each coordinate independently with probability `p_m`.
pub fn polynomial_mutation<R: Rng + ?Sized>(
    y: &mut [f64],
    p_m: f64,
    eta_m: f64,
    lower: &[f64],
    upper: &[f64],
    rng: &mut R,
) {
    if p_m <= 0.0 {
        return;
    }
    for j in 0..y.len() {
        if rng.gen::<f64>() >= p_m {
            continue;
        }
        let (lo, hi) = (lower[j], upper[j]);
        let span = hi - lo;
        if span <= 0.0 {
            continue;
        }
        let u = rng.gen::<f64>();
        let dq = polynomial_delta(u, eta_m, (y[j] - lo) / span, (hi - y[j]) / span);
        y[j] = (y[j] + dq * span).clamp(lo, hi);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn de_examples() {
        let y = de_mutation(&[0.5], &[0.8], &[0.4], 0.25);
        assert!((y[0] - 0.6).abs() < 1e-15);
        assert_eq!(de_mutation(&[0.3, 0.1], &[0.7, 0.2], &[0.7, 0.2], 0.25), vec![0.3, 0.1]);
        assert_eq!(de_mutation(&[0.3], &[0.9], &[0.1], 0.0), vec![0.3]);
    }

    #[test]
    fn clamp_examples() {
        let mut y = [1.2];
        repair_clamp(&mut y, &[0.0], &[1.0]);
        assert_eq!(y, [1.0]);
        let mut y = [-3.0];
        repair_clamp(&mut y, &[-1.0], &[1.0]);
        assert_eq!(y, [-1.0]);
        let mut y = [0.25, -0.5];
        repair_clamp(&mut y, &[0.0, -1.0], &[1.0, 1.0]);
        assert_eq!(y, [0.25, -0.5]);
    }

    #[test]
    fn zero_probability_leaves_point_alone() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut y = vec![0.3; 50];
        polynomial_mutation(&mut y, 0.0, 20.0, &[0.0; 50], &[1.0; 50], &mut rng);
        assert_eq!(y, vec![0.3; 50]);
    }

    #[test]
    fn symmetry_point_has_zero_perturbation() {
        for &(dl, dh) in &[(0.5, 0.5), (0.1, 0.9), (0.0, 1.0)] {
            assert_eq!(polynomial_delta(0.5, 20.0, dl, dh), 0.0);
        }
    }

    #[test]
    fn coordinate_at_lower_bound_stays_for_downward_draws() {
        for &u in &[0.0, 0.1, 0.3, 0.49] {
            let dq = polynomial_delta(u, 20.0, 0.0, 1.0);
            assert!(dq.abs() < 1e-15, "u={u} dq={dq}");
        }
    }

    #[test]
    fn larger_eta_concentrates_the_perturbation() {
        let etas = [0.0, 1.0, 5.0, 20.0, 50.0, 100.0];
        for k in 1..50 {
            let u = k as f64 / 50.0;
            if (u - 0.5).abs() < 1e-12 {
                continue;
            }
            let mags: Vec<f64> = etas
                .iter()
                .map(|&eta| polynomial_delta(u, eta, 0.5, 0.5).abs())
                .collect();
            for w in mags.windows(2) {
                assert!(w[1] <= w[0] + 1e-15, "u={u}: {mags:?}");
            }
        }
    }

    #[test]
    fn mutation_stays_in_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let lower = vec![-2.0; 20];
        let upper = vec![2.0; 20];
        for _ in 0..500 {
            let mut y: Vec<f64> = (0..20).map(|_| rng.gen_range(-2.0..=2.0)).collect();
            polynomial_mutation(&mut y, 1.0, 20.0, &lower, &upper, &mut rng);
            assert!(y.iter().all(|v| (-2.0..=2.0).contains(v)));
        }
    }

    #[test]
    fn identity_stack() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let base = vec![0.1, 0.9, 0.4];
        let mut y = de_mutation(&base, &[0.2, 0.2, 0.2], &[0.7, 0.1, 0.0], 0.0);
        repair_clamp(&mut y, &[0.0; 3], &[1.0; 3]);
        polynomial_mutation(&mut y, 0.0, 20.0, &[0.0; 3], &[1.0; 3], &mut rng);
        assert_eq!(y, base);
    }

    #[test]
    fn params_validation() {
        assert!(VariationParams::default().validate().is_ok());
        assert!(VariationParams { f: 0.0, ..Default::default() }.validate().is_err());
        assert!(VariationParams { p_m: 1.5, ..Default::default() }.validate().is_err());
        assert!(VariationParams { eta_m: -1.0, ..Default::default() }.validate().is_err());
    }
}
