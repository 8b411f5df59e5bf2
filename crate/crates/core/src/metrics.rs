//! Quality indicators: Pareto filtering, NDOM ratio, hypervolume (two and
//! three objectives) and IGD, plus the per-problem metric frame.

use crate::problems::{reference_front, ProblemId};

/// `a` Pareto-dominates `b` (minimization).
pub fn dominates(a: &[f64], b: &[f64]) -> bool {
    let mut strictly = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strictly = true;
        }
    }
    strictly
}

/// Indices of the points not dominated by any other point, in ascending
/// order. Duplicates are all kept.
pub fn nondominated_indices<P: AsRef<[f64]>>(points: &[P]) -> Vec<usize> {
    if points.first().is_some_and(|p| p.as_ref().len() == 2) {
        return nondominated_2d(points);
    }
    (0..points.len())
        .filter(|&i| {
            let p = points[i].as_ref();
            !points.iter().any(|q| dominates(q.as_ref(), p))
        })
        .collect()
}

/// Sort-and-sweep filter for two objectives.
fn nondominated_2d<P: AsRef<[f64]>>(points: &[P]) -> Vec<usize> {
    let at = |i: usize| {
        let p = points[i].as_ref();
        (p[0], p[1])
    };
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        let (a0, a1) = at(a);
        let (b0, b1) = at(b);
        a0.total_cmp(&b0).then(a1.total_cmp(&b1))
    });
    let mut keep = Vec::new();
    // Lowest second objective among points with a strictly smaller first.
    let mut best_before = f64::INFINITY;
    let mut k = 0;
    while k < order.len() {
        let (f0, group_min) = at(order[k]);
        let mut end = k;
        while end < order.len() && at(order[end]).0 == f0 {
            let idx = order[end];
            if at(idx).1 == group_min && group_min < best_before {
                keep.push(idx);
            }
            end += 1;
        }
        best_before = best_before.min(group_min);
        k = end;
    }
    keep.sort_unstable();
    keep
}

pub fn nondominated_filter<P: AsRef<[f64]>>(points: &[P]) -> Vec<Vec<f64>> {
    nondominated_indices(points)
        .into_iter()
        .map(|i| points[i].as_ref().to_vec())
        .collect()
}

/// Share of points that are non-dominated within the set.
pub fn ndom_ratio<P: AsRef<[f64]>>(points: &[P]) -> f64 {
    assert!(!points.is_empty(), "NDOM of an empty set");
    nondominated_indices(points).len() as f64 / points.len() as f64
}

/// Hypervolume dominated by `points` and bounded by `reference`. Points not
/// strictly better than the reference in every objective contribute
/// nothing. Supports two and three objectives.
pub fn hypervolume<P: AsRef<[f64]>>(points: &[P], reference: &[f64]) -> f64 {
    let inside: Vec<&[f64]> = points
        .iter()
        .map(AsRef::as_ref)
        .filter(|p| p.iter().zip(reference).all(|(v, r)| v < r))
        .collect();
    match reference.len() {
        2 => {
            let mut pts: Vec<[f64; 2]> = inside.iter().map(|p| [p[0], p[1]]).collect();
            hv2d(&mut pts, [reference[0], reference[1]])
        }
        3 => hv3d(&inside, reference),
        m => panic!("hypervolume supports 2 or 3 objectives, got {m}"),
    }
}

/// Sorted sweep over the first objective. Every point must lie strictly
/// inside the reference box.
fn hv2d(pts: &mut [[f64; 2]], reference: [f64; 2]) -> f64 {
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let mut area = 0.0;
    let mut ceiling = reference[1];
    for p in pts.iter() {
        if p[1] < ceiling {
            area += (reference[0] - p[0]) * (ceiling - p[1]);
            ceiling = p[1];
        }
    }
    area
}

/// Slices along the third objective, each slab weighted by a 2D sweep.
fn hv3d(pts: &[&[f64]], reference: &[f64]) -> f64 {
    let mut order: Vec<&[f64]> = pts.to_vec();
    order.sort_by(|a, b| a[2].total_cmp(&b[2]));
    let mut slab: Vec<[f64; 2]> = Vec::with_capacity(order.len());
    let mut volume = 0.0;
    for (k, p) in order.iter().enumerate() {
        slab.push([p[0], p[1]]);
        let top = order.get(k + 1).map_or(reference[2], |q| q[2]);
        let depth = top - p[2];
        if depth > 0.0 {
            volume += depth * hv2d(&mut slab, [reference[0], reference[1]]);
        }
    }
    volume
}

/// Mean distance from each reference point to its nearest approximation
/// point.
pub fn igd<P: AsRef<[f64]>, Q: AsRef<[f64]>>(reference: &[P], approximation: &[Q]) -> f64 {
    assert!(!reference.is_empty() && !approximation.is_empty(), "IGD of an empty set");
    let m = reference[0].as_ref().len();
    let dist = |a: &[f64], b: &[f64]| {
        a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
    };
    // Triangle-inequality pruning around the centroid `c` of the reference
    // set: |d(a, c) - d(r, c)| is a lower bound on d(a, r).
    let mut c = vec![0.0; m];
    for r in reference {
        for (cj, v) in c.iter_mut().zip(r.as_ref()) {
            *cj += v / reference.len() as f64;
        }
    }
    let mut ring: Vec<(f64, &[f64])> = approximation
        .iter()
        .map(|a| (dist(a.as_ref(), &c), a.as_ref()))
        .collect();
    ring.sort_by(|a, b| a.0.total_cmp(&b.0));
    let total: f64 = reference
        .iter()
        .map(|r| {
            let r = r.as_ref();
            let rc = dist(r, &c);
            let start = ring.partition_point(|(d, _)| *d < rc);
            let mut best = f64::INFINITY;
            let (mut up, mut down) = (start, start);
            loop {
                let up_gap = ring.get(up).map_or(f64::INFINITY, |(d, _)| d - rc);
                let down_gap = if down > 0 { rc - ring[down - 1].0 } else { f64::INFINITY };
                if up_gap.min(down_gap) >= best {
                    break;
                }
                let a = if up_gap <= down_gap {
                    up += 1;
                    ring[up - 1].1
                } else {
                    down -= 1;
                    ring[down].1
                };
                best = best.min(dist(a, r));
            }
            best
        })
        .sum();
    total / reference.len() as f64
}

/// Affine map sending a front's ideal point to 0 and its nadir to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricFrame {
    pub ideal: Vec<f64>,
    pub nadir: Vec<f64>,
}

impl MetricFrame {
    /// Frame of the problem's analytic reference front.
    pub fn for_problem(id: ProblemId) -> Self {
        let front = reference_front(id);
        Self {
            ideal: front.ideal.clone(),
            nadir: front.nadir.clone(),
        }
    }

    /// Frame spanning an arbitrary set of points.
    pub fn spanning<P: AsRef<[f64]>>(points: &[P]) -> Self {
        let m = points[0].as_ref().len();
        let mut ideal = vec![f64::INFINITY; m];
        let mut nadir = vec![f64::NEG_INFINITY; m];
        for p in points {
            for (j, &v) in p.as_ref().iter().enumerate() {
                ideal[j] = ideal[j].min(v);
                nadir[j] = nadir[j].max(v);
            }
        }
        Self { ideal, nadir }
    }

    pub fn scale_point(&self, p: &[f64]) -> Vec<f64> {
        p.iter()
            .zip(self.ideal.iter().zip(&self.nadir))
            .map(|(&v, (&lo, &hi))| {
                let span = hi - lo;
                if span > 0.0 {
                    (v - lo) / span
                } else {
                    v - lo
                }
            })
            .collect()
    }

    pub fn scale<P: AsRef<[f64]>>(&self, points: &[P]) -> Vec<Vec<f64>> {
        points.iter().map(|p| self.scale_point(p.as_ref())).collect()
    }
}

/// Map `points` into the metric frame of `problem`. Values beyond the nadir
/// exceed 1 and drop out of the hypervolume.
pub fn scale_for_metrics<P: AsRef<[f64]>>(points: &[P], problem: ProblemId) -> Vec<Vec<f64>> {
    MetricFrame::for_problem(problem).scale(points)
}

/// Indicator values of one objective-space approximation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Indicators {
    pub hv: f64,
    pub igd_scaled: f64,
    pub igd_raw: f64,
    pub ndom: f64,
}

/// HV (metric frame, reference point all ones), IGD in both the metric
/// frame and raw objective space, and NDOM, for a set of raw objective
/// vectors of `problem`.
pub fn assess<P: AsRef<[f64]>>(problem: ProblemId, objectives: &[P]) -> Indicators {
    let front = reference_front(problem);
    let frame = MetricFrame {
        ideal: front.ideal.clone(),
        nadir: front.nadir.clone(),
    };
    let scaled = frame.scale(objectives);
    let scaled_front = frame.scale(&front.points);
    let ones = vec![1.0; problem.num_objectives()];
    Indicators {
        hv: hypervolume(&scaled, &ones),
        igd_scaled: igd(&scaled_front, &scaled),
        igd_raw: igd(&front.points, objectives),
        ndom: ndom_ratio(objectives),
    }
}
