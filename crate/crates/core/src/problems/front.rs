//! Analytic Pareto-front samples used as IGD reference sets and to fix the
//! metric frame (ideal and nadir) of each problem.

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

use super::{uf, ProblemId};

/// Size of the cached reference sets.
pub const REFERENCE_FRONT_SIZE: usize = 1000;

/// Dense samples per curve before non-dominated filtering.
const DENSE: usize = 200_001;

/// A sampled Pareto front together with its ideal and nadir points.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceFront {
    pub points: Vec<Vec<f64>>,
    pub ideal: Vec<f64>,
    pub nadir: Vec<f64>,
}

impl ReferenceFront {
    fn from_points(points: Vec<Vec<f64>>) -> Self {
        let m = points[0].len();
        let mut ideal = vec![f64::INFINITY; m];
        let mut nadir = vec![f64::NEG_INFINITY; m];
        for p in &points {
            for j in 0..m {
                ideal[j] = ideal[j].min(p[j]);
                nadir[j] = nadir[j].max(p[j]);
            }
        }
        Self {
            points,
            ideal,
            nadir,
        }
    }
}

/// The cached 1000-point reference front of a problem.
pub fn reference_front(id: ProblemId) -> &'static ReferenceFront {
    static FRONTS: [OnceLock<ReferenceFront>; 17] = [const { OnceLock::new() }; 17];
    FRONTS[id.index()]
        .get_or_init(|| ReferenceFront::from_points(sample(id, REFERENCE_FRONT_SIZE)))
}

/// `k` mutually non-dominated points of the analytic front of `id`.
pub(crate) fn sample(id: ProblemId, k: usize) -> Vec<Vec<f64>> {
    if k == 0 {
        return Vec::new();
    }
    match id {
        ProblemId::Uf5 => {
            // 21 isolated points; cycle through them to reach k.
            (0..k)
                .map(|i| {
                    let f1 = (i % 21) as f64 / 20.0;
                    vec![f1, 1.0 - f1]
                })
                .collect()
        }
        ProblemId::Uf8 | ProblemId::Uf10 => (0..k)
            .map(|i| {
                let (a, b) = halton2(i);
                let z = a;
                let r = (1.0 - z * z).max(0.0).sqrt();
                let phi = b * FRAC_PI_2;
                vec![r * phi.cos(), r * phi.sin(), z]
            })
            .collect(),
        ProblemId::Uf9 => (0..k)
            .map(|i| {
                let (a, b) = halton2(i);
                let s = a.sqrt();
                let w = if b < 0.5 { b / 2.0 } else { 0.75 + (b - 0.5) / 2.0 };
                vec![s * w, s * (1.0 - w), 1.0 - s]
            })
            .collect(),
        _ => sample_curve(|t| curve(id, t), k),
    }
}

/// Two-objective front as the image of a parameter `t` in `[0, 1]`; parts
/// that are dominated are removed by filtering afterwards.
fn curve(id: ProblemId, t: f64) -> [f64; 2] {
    match id {
        ProblemId::Dtlz1 => [0.5 * t, 0.5 * (1.0 - t)],
        ProblemId::Dtlz2
        | ProblemId::Dtlz3
        | ProblemId::Dtlz4
        | ProblemId::Dtlz5
        | ProblemId::Dtlz6 => [(t * FRAC_PI_2).cos(), (t * FRAC_PI_2).sin()],
        ProblemId::Dtlz7 => [t, 4.0 - t * (1.0 + (3.0 * PI * t).sin())],
        ProblemId::Uf1 | ProblemId::Uf2 | ProblemId::Uf3 => [t, 1.0 - t.sqrt()],
        ProblemId::Uf4 => [t, 1.0 - t * t],
        ProblemId::Uf6 => {
            let bump = uf::uf6_bump(t);
            [t + bump, 1.0 - t + bump]
        }
        ProblemId::Uf7 => [t, 1.0 - t],
        ProblemId::Uf5 | ProblemId::Uf8 | ProblemId::Uf9 | ProblemId::Uf10 => {
            unreachable!("{id} has no continuous two-objective front")
        }
    }
}

/// Dense sweep, non-dominated filter, then `k` picks spread evenly along
/// the arc length of the surviving pieces.
fn sample_curve(f: impl Fn(f64) -> [f64; 2], k: usize) -> Vec<Vec<f64>> {
    let mut dense: Vec<[f64; 2]> = (0..DENSE)
        .map(|i| f(i as f64 / (DENSE - 1) as f64))
        .collect();
    dense.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));

    let mut kept: Vec<[f64; 2]> = Vec::new();
    let mut best = f64::INFINITY;
    for p in dense {
        if p[1] < best {
            best = p[1];
            kept.push(p);
        }
    }

    let steps: Vec<f64> = kept
        .windows(2)
        .map(|w| (w[1][0] - w[0][0]).hypot(w[1][1] - w[0][1]))
        .collect();
    if steps.is_empty() {
        return vec![kept[0].to_vec(); k];
    }
    let mut sorted = steps.clone();
    sorted.sort_by(f64::total_cmp);
    let typical = sorted[sorted.len() / 2].max(f64::MIN_POSITIVE);
    // Jumps across gaps between disconnected pieces count as one step.
    let mut cumulative = Vec::with_capacity(kept.len());
    cumulative.push(0.0);
    let mut total = 0.0;
    for &s in &steps {
        total += if s > 20.0 * typical { typical } else { s };
        cumulative.push(total);
    }

    (0..k)
        .map(|i| {
            let target = if k == 1 {
                0.0
            } else {
                total * i as f64 / (k - 1) as f64
            };
            let idx = cumulative.partition_point(|&c| c < target).min(kept.len() - 1);
            kept[idx].to_vec()
        })
        .collect()
}

fn radical_inverse(mut i: usize, base: usize) -> f64 {
    let inv = 1.0 / base as f64;
    let mut factor = inv;
    let mut value = 0.0;
    while i > 0 {
        value += (i % base) as f64 * factor;
        i /= base;
        factor *= inv;
    }
    value
}

fn halton2(i: usize) -> (f64, f64) {
    (radical_inverse(i + 1, 2), radical_inverse(i + 1, 3))
}
