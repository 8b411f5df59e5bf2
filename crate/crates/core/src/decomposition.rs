//! Weight vectors, neighborhoods, per-generation objective scaling and the
//! weighted Tchebycheff scalarization.

use crate::error::{Error, Result};

/// Weights of exactly zero are lifted to this value before scalarization.
pub const ZERO_WEIGHT_FLOOR: f64 = 1e-6;

/// Simplex-lattice weight vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSet {
    weights: Vec<Vec<f64>>,
    h: usize,
}

impl WeightSet {
    pub fn weights(&self) -> &[Vec<f64>] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn granularity(&self) -> usize {
        self.h
    }

    pub fn num_objectives(&self) -> usize {
        self.weights[0].len()
    }

    /// Weights with zero entries lifted to [`ZERO_WEIGHT_FLOOR`] and
    /// renormalized, as used for scalarization.
    pub fn guarded(&self) -> Vec<Vec<f64>> {
        self.weights.iter().map(|w| guard_weight(w)).collect()
    }
}

/// Lift zero weights to [`ZERO_WEIGHT_FLOOR`] and renormalize to sum 1.
pub fn guard_weight(weight: &[f64]) -> Vec<f64> {
    let lifted: Vec<f64> = weight
        .iter()
        .map(|&w| if w == 0.0 { ZERO_WEIGHT_FLOOR } else { w })
        .collect();
    let total: f64 = lifted.iter().sum();
    lifted.into_iter().map(|w| w / total).collect()
}

/// `C(h + m - 1, m - 1)`, the size of the simplex lattice.
pub fn lattice_size(m: usize, h: usize) -> usize {
    let k = m - 1;
    let n = h + k;
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Every point of the simplex lattice with coordinates in `{0, 1/h, ..., 1}`,
/// ordered lexicographically by coordinate (first coordinate ascending).
pub fn sld_weights(m: usize, h: usize) -> Result<WeightSet> {
    if m < 2 {
        return Err(Error::Config(format!("need at least 2 objectives, got {m}")));
    }
    if h < 1 {
        return Err(Error::Config("SLD granularity h must be at least 1".into()));
    }
    let mut weights = Vec::with_capacity(lattice_size(m, h));
    let mut counts = Vec::with_capacity(m);
    fill_lattice(m, h, h, &mut counts, &mut weights);
    Ok(WeightSet { weights, h })
}

fn fill_lattice(m: usize, h: usize, left: usize, counts: &mut Vec<usize>, out: &mut Vec<Vec<f64>>) {
    if counts.len() == m - 1 {
        counts.push(left);
        out.push(counts.iter().map(|&c| c as f64 / h as f64).collect());
        counts.pop();
        return;
    }
    for c in 0..=left {
        counts.push(c);
        fill_lattice(m, h, left - c, counts, out);
        counts.pop();
    }
}

/// Per-subproblem neighborhoods: the `T` closest weights, self included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborTable {
    neighbors: Vec<Vec<usize>>,
}

impl NeighborTable {
    pub fn of(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn len(&self) -> usize {
        self.neighbors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.neighbors.is_empty()
    }

    pub fn size(&self) -> usize {
        self.neighbors.first().map_or(0, Vec::len)
    }
}

/// For each weight, the indices of the `t` nearest weights by Euclidean
/// distance, nearest first, ties broken by lower index.
pub fn neighborhoods(ws: &WeightSet, t: usize) -> Result<NeighborTable> {
    let n = ws.len();
    if t == 0 || t > n {
        return Err(Error::Config(format!(
            "neighborhood size {t} must be in 1..={n}"
        )));
    }
    let w = ws.weights();
    let neighbors = (0..n)
        .map(|i| {
            let mut order: Vec<(f64, usize)> = (0..n)
                .map(|j| {
                    let d2: f64 = w[i].iter().zip(&w[j]).map(|(a, b)| (a - b).powi(2)).sum();
                    (d2, j)
                })
                .collect();
            order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            order.truncate(t);
            order.into_iter().map(|(_, j)| j).collect()
        })
        .collect();
    Ok(NeighborTable { neighbors })
}

/// Per-objective `(min, max)` of a set of raw objective vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingFrame {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

impl ScalingFrame {
    /// Frame spanning `points`. Panics on an empty set.
    pub fn from_points<P: AsRef<[f64]>>(points: &[P]) -> Self {
        let first = points
            .first()
            .expect("scaling frame needs at least one point")
            .as_ref();
        let mut frame = Self {
            min: first.to_vec(),
            max: first.to_vec(),
        };
        for p in &points[1..] {
            frame.include(p.as_ref());
        }
        frame
    }

    /// Widen the frame to cover `point`.
    pub fn include(&mut self, point: &[f64]) {
        for ((lo, hi), &v) in self.min.iter_mut().zip(self.max.iter_mut()).zip(point) {
            *lo = lo.min(v);
            *hi = hi.max(v);
        }
    }

    /// Affine map sending `min` to 0 and `max` to 1; constant objectives map
    /// to 0.
    pub fn scale_into(&self, point: &[f64], out: &mut [f64]) {
        for (j, o) in out.iter_mut().enumerate() {
            let span = self.max[j] - self.min[j];
            *o = if span > 0.0 {
                (point[j] - self.min[j]) / span
            } else {
                0.0
            };
        }
    }

    pub fn scale(&self, point: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; point.len()];
        self.scale_into(point, &mut out);
        out
    }
}

/// Min-max scale every objective column of `raw` to `[0, 1]`.
pub fn scale_objectives<P: AsRef<[f64]>>(raw: &[P]) -> (ScalingFrame, Vec<Vec<f64>>) {
    let frame = ScalingFrame::from_points(raw);
    let scaled = raw.iter().map(|p| frame.scale(p.as_ref())).collect();
    (frame, scaled)
}

/// Weighted Tchebycheff value `max_j w_j |f_j - z_j|`.
pub fn tchebycheff(f: &[f64], weight: &[f64], z: &[f64]) -> f64 {
    f.iter()
        .zip(weight)
        .zip(z)
        .map(|((fj, wj), zj)| wj * (fj - zj).abs())
        .fold(0.0, f64::max)
}

/// Tchebycheff value against the origin, the ideal point of a min-max
/// scaled population.
pub fn tchebycheff_origin(f: &[f64], weight: &[f64]) -> f64 {
    f.iter()
        .zip(weight)
        .map(|(fj, wj)| wj * fj.abs())
        .fold(0.0, f64::max)
}
