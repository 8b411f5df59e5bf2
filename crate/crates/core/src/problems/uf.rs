//! The unconstrained UF1-UF10 functions. Coordinates are indexed 1-based
//! (`j = 1..=n`) in the shift terms, matching the usual definitions.

use std::f64::consts::PI;

/// Running sum/product over the odd (`J1`) and even (`J2`) index classes
/// of the two-objective problems.
#[derive(Default)]
struct Split {
    sum: [f64; 3],
    prod: [f64; 3],
    count: [usize; 3],
}

impl Split {
    fn new() -> Self {
        Self {
            prod: [1.0; 3],
            ..Self::default()
        }
    }

    fn add(&mut self, class: usize, term: f64) {
        self.sum[class] += term;
        self.count[class] += 1;
    }

    fn mul(&mut self, class: usize, factor: f64) {
        self.prod[class] *= factor;
    }

    fn mean2(&self, class: usize) -> f64 {
        2.0 * self.sum[class] / self.count[class] as f64
    }
}

/// Class of coordinate `j` (1-based, `j >= 2`) in the two-objective problems:
/// 0 for odd `j`, 1 for even `j`.
fn class2(j: usize) -> usize {
    if j % 2 == 1 {
        0
    } else {
        1
    }
}

/// Class of coordinate `j` (1-based, `j >= 3`) in the three-objective
/// problems.
fn class3(j: usize) -> usize {
    match j % 3 {
        1 => 0,
        2 => 1,
        _ => 2,
    }
}

/// `x_j - sin(6 pi x_1 + j pi / n)`.
fn shift_sin(x: &[f64], j: usize) -> f64 {
    let n = x.len() as f64;
    x[j - 1] - (6.0 * PI * x[0] + j as f64 * PI / n).sin()
}

/// `x_j - 2 x_2 sin(2 pi x_1 + j pi / n)`.
fn shift3(x: &[f64], j: usize) -> f64 {
    let n = x.len() as f64;
    x[j - 1] - 2.0 * x[1] * (2.0 * PI * x[0] + j as f64 * PI / n).sin()
}

fn squared_shift_sums(x: &[f64]) -> Split {
    let mut s = Split::new();
    for j in 2..=x.len() {
        s.add(class2(j), shift_sin(x, j).powi(2));
    }
    s
}

pub(crate) fn uf1(x: &[f64]) -> Vec<f64> {
    let s = squared_shift_sums(x);
    vec![x[0] + s.mean2(0), 1.0 - x[0].sqrt() + s.mean2(1)]
}

pub(crate) fn uf2(x: &[f64]) -> Vec<f64> {
    let n = x.len() as f64;
    let x1 = x[0];
    let mut s = Split::new();
    for j in 2..=x.len() {
        let jf = j as f64;
        let amp = 0.3 * x1 * x1 * (24.0 * PI * x1 + 4.0 * jf * PI / n).cos() + 0.6 * x1;
        let angle = 6.0 * PI * x1 + jf * PI / n;
        let c = class2(j);
        let y = if c == 0 {
            x[j - 1] - amp * angle.cos()
        } else {
            x[j - 1] - amp * angle.sin()
        };
        s.add(c, y * y);
    }
    vec![x1 + s.mean2(0), 1.0 - x1.sqrt() + s.mean2(1)]
}

/// `2/|J| * (4 sum y^2 - 2 prod cos(20 y pi / sqrt j) + 2)` per class.
fn rugged(s: &Split, class: usize) -> f64 {
    2.0 / s.count[class] as f64 * (4.0 * s.sum[class] - 2.0 * s.prod[class] + 2.0)
}

pub(crate) fn uf3(x: &[f64]) -> Vec<f64> {
    let n = x.len() as f64;
    let x1 = x[0];
    let mut s = Split::new();
    for j in 2..=x.len() {
        let jf = j as f64;
        let y = x[j - 1] - x1.powf(0.5 * (1.0 + 3.0 * (jf - 2.0) / (n - 2.0)));
        let c = class2(j);
        s.add(c, y * y);
        s.mul(c, (20.0 * y * PI / jf.sqrt()).cos());
    }
    vec![x1 + rugged(&s, 0), 1.0 - x1.sqrt() + rugged(&s, 1)]
}

pub(crate) fn uf4(x: &[f64]) -> Vec<f64> {
    let mut s = Split::new();
    for j in 2..=x.len() {
        let y = shift_sin(x, j).abs();
        s.add(class2(j), y / (1.0 + (2.0 * y).exp()));
    }
    vec![x[0] + s.mean2(0), 1.0 - x[0] * x[0] + s.mean2(1)]
}

pub(crate) fn uf5(x: &[f64]) -> Vec<f64> {
    const N: f64 = 10.0;
    const EPS: f64 = 0.1;
    let mut s = Split::new();
    for j in 2..=x.len() {
        let y = shift_sin(x, j);
        s.add(class2(j), 2.0 * y * y - (4.0 * PI * y).cos() + 1.0);
    }
    let x1 = x[0];
    let ripple = (0.5 / N + EPS) * (2.0 * N * PI * x1).sin().abs();
    vec![x1 + ripple + s.mean2(0), 1.0 - x1 + ripple + s.mean2(1)]
}

pub(crate) fn uf6(x: &[f64]) -> Vec<f64> {
    let mut s = Split::new();
    for j in 2..=x.len() {
        let y = shift_sin(x, j);
        let c = class2(j);
        s.add(c, y * y);
        s.mul(c, (20.0 * y * PI / (j as f64).sqrt()).cos());
    }
    let x1 = x[0];
    let bump = uf6_bump(x1);
    vec![x1 + bump + rugged(&s, 0), 1.0 - x1 + bump + rugged(&s, 1)]
}

/// `max(0, 2 (1/(2N) + eps) sin(2 N pi x1))` with `N = 2`, `eps = 0.1`.
pub(crate) fn uf6_bump(x1: f64) -> f64 {
    const N: f64 = 2.0;
    const EPS: f64 = 0.1;
    (2.0 * (0.5 / N + EPS) * (2.0 * N * PI * x1).sin()).max(0.0)
}

pub(crate) fn uf7(x: &[f64]) -> Vec<f64> {
    let s = squared_shift_sums(x);
    let r = x[0].powf(0.2);
    vec![r + s.mean2(0), 1.0 - r + s.mean2(1)]
}

fn three_class_sums(x: &[f64], term: impl Fn(f64) -> f64) -> [f64; 3] {
    let mut s = Split::new();
    for j in 3..=x.len() {
        s.add(class3(j), term(shift3(x, j)));
    }
    [s.mean2(0), s.mean2(1), s.mean2(2)]
}

fn sphere3(x: &[f64], pen: [f64; 3]) -> Vec<f64> {
    let (a, b) = (0.5 * PI * x[0], 0.5 * PI * x[1]);
    vec![
        a.cos() * b.cos() + pen[0],
        a.cos() * b.sin() + pen[1],
        a.sin() + pen[2],
    ]
}

pub(crate) fn uf8(x: &[f64]) -> Vec<f64> {
    sphere3(x, three_class_sums(x, |y| y * y))
}

pub(crate) fn uf9(x: &[f64]) -> Vec<f64> {
    const EPS: f64 = 0.1;
    let pen = three_class_sums(x, |y| y * y);
    let (x1, x2) = (x[0], x[1]);
    let bulge = ((1.0 + EPS) * (1.0 - 4.0 * (2.0 * x1 - 1.0).powi(2))).max(0.0);
    vec![
        0.5 * (bulge + 2.0 * x1) * x2 + pen[0],
        0.5 * (bulge - 2.0 * x1 + 2.0) * x2 + pen[1],
        1.0 - x2 + pen[2],
    ]
}

pub(crate) fn uf10(x: &[f64]) -> Vec<f64> {
    sphere3(
        x,
        three_class_sums(x, |y| 4.0 * y * y - (8.0 * PI * y).cos() + 1.0),
    )
}
