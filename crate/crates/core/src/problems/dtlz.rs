//! DTLZ1-DTLZ7 with `m` objectives. The first `m - 1` coordinates are
//! position variables and the remaining `k = n - m + 1` are distance
//! variables feeding `g`.

use std::f64::consts::{FRAC_PI_2, PI};

fn g_rastrigin(xm: &[f64]) -> f64 {
    let sum: f64 = xm
        .iter()
        .map(|&x| (x - 0.5).powi(2) - (20.0 * PI * (x - 0.5)).cos())
        .sum();
    100.0 * (xm.len() as f64 + sum)
}

fn g_sphere(xm: &[f64]) -> f64 {
    xm.iter().map(|&x| (x - 0.5).powi(2)).sum()
}

/// Objectives on the positive orthant of a sphere of radius `1 + g`, with
/// angles `theta` (each in `[0, pi/2]`).
fn spherical(theta: &[f64], g: f64, m: usize) -> Vec<f64> {
    (0..m)
        .map(|i| {
            let mut f = 1.0 + g;
            for t in &theta[..m - 1 - i] {
                f *= t.cos();
            }
            if i > 0 {
                f *= theta[m - 1 - i].sin();
            }
            f
        })
        .collect()
}

pub(crate) fn dtlz1(x: &[f64], m: usize) -> Vec<f64> {
    let g = g_rastrigin(&x[m - 1..]);
    (0..m)
        .map(|i| {
            let mut f = 0.5 * (1.0 + g);
            for &xj in &x[..m - 1 - i] {
                f *= xj;
            }
            if i > 0 {
                f *= 1.0 - x[m - 1 - i];
            }
            f
        })
        .collect()
}

fn angles(x: &[f64], m: usize, alpha: f64) -> Vec<f64> {
    x[..m - 1].iter().map(|&xi| xi.powf(alpha) * FRAC_PI_2).collect()
}

pub(crate) fn dtlz2(x: &[f64], m: usize) -> Vec<f64> {
    let g = g_sphere(&x[m - 1..]);
    spherical(&angles(x, m, 1.0), g, m)
}

pub(crate) fn dtlz3(x: &[f64], m: usize) -> Vec<f64> {
    let g = g_rastrigin(&x[m - 1..]);
    spherical(&angles(x, m, 1.0), g, m)
}

pub(crate) fn dtlz4(x: &[f64], m: usize) -> Vec<f64> {
    let g = g_sphere(&x[m - 1..]);
    spherical(&angles(x, m, 100.0), g, m)
}

fn degenerate_angles(x: &[f64], m: usize, g: f64) -> Vec<f64> {
    let mut theta = Vec::with_capacity(m - 1);
    theta.push(x[0] * FRAC_PI_2);
    for &xi in &x[1..m - 1] {
        theta.push(PI / (4.0 * (1.0 + g)) * (1.0 + 2.0 * g * xi));
    }
    theta
}

pub(crate) fn dtlz5(x: &[f64], m: usize) -> Vec<f64> {
    let g = g_sphere(&x[m - 1..]);
    spherical(&degenerate_angles(x, m, g), g, m)
}

pub(crate) fn dtlz6(x: &[f64], m: usize) -> Vec<f64> {
    let g: f64 = x[m - 1..].iter().map(|&xi| xi.powf(0.1)).sum();
    spherical(&degenerate_angles(x, m, g), g, m)
}

pub(crate) fn dtlz7(x: &[f64], m: usize) -> Vec<f64> {
    let xm = &x[m - 1..];
    let g = 1.0 + 9.0 / xm.len() as f64 * xm.iter().sum::<f64>();
    let mut f: Vec<f64> = x[..m - 1].to_vec();
    let h = m as f64
        - f.iter()
            .map(|&fi| fi / (1.0 + g) * (1.0 + (3.0 * PI * fi).sin()))
            .sum::<f64>();
    f.push((1.0 + g) * h);
    f
}
