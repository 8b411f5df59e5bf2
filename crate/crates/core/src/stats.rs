//! Two-sided Wilcoxon rank-sum tests, Hommel's multiplicity adjustment and
//! all-vs-all comparison reports.

use std::fmt::Write as _;

use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Largest combined sample size handled by the exact test.
pub const EXACT_MAX_TOTAL: usize = 20;

/// Significance level used for the "≈" marker.
pub const ALPHA: f64 = 0.05;

/// Two-sided rank-sum p-value: exact when the samples are small and free of
/// ties, normal approximation otherwise.
pub fn wilcoxon_rank_sum(a: &[f64], b: &[f64]) -> f64 {
    assert!(!a.is_empty() && !b.is_empty(), "rank-sum test on an empty sample");
    if a.len() + b.len() <= EXACT_MAX_TOTAL && !has_ties(a, b) {
        wilcoxon_exact(a, b)
    } else {
        wilcoxon_normal(a, b)
    }
}

fn has_ties(a: &[f64], b: &[f64]) -> bool {
    let mut all: Vec<f64> = a.iter().chain(b).copied().collect();
    all.sort_by(f64::total_cmp);
    all.windows(2).any(|w| w[0] == w[1])
}

/// Midranks (1-based) of the pooled sample `a ++ b`.
pub fn midranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut ranks = vec![0.0; values.len()];
    let mut k = 0;
    while k < order.len() {
        let mut end = k + 1;
        while end < order.len() && values[order[end]] == values[order[k]] {
            end += 1;
        }
        let rank = (k + 1 + end) as f64 / 2.0;
        for &idx in &order[k..end] {
            ranks[idx] = rank;
        }
        k = end;
    }
    ranks
}

/// Rank sum of `a` within the pooled sample.
pub fn rank_sum(a: &[f64], b: &[f64]) -> f64 {
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    midranks(&pooled)[..a.len()].iter().sum()
}

/// Exact two-sided p-value from the null distribution of the rank sum of
/// `a`, assuming no ties: `min(1, 2 * min(P(W <= w), P(W >= w)))`.
pub fn wilcoxon_exact(a: &[f64], b: &[f64]) -> f64 {
    let (n1, n) = (a.len(), a.len() + b.len());
    let w = rank_sum(a, b).round() as usize;
    let counts = rank_sum_counts(n1, n);
    let total: f64 = counts.iter().sum();
    let lower: f64 = counts[..=w].iter().sum();
    let upper: f64 = counts[w..].iter().sum();
    (2.0 * lower.min(upper) / total).min(1.0)
}

/// `counts[s]` = number of `k`-subsets of `{1..n}` whose sum is `s`.
fn rank_sum_counts(k: usize, n: usize) -> Vec<f64> {
    let max_sum = n * (n + 1) / 2;
    // table[j][s]: subsets of size j with sum s among the ranks seen so far.
    let mut table = vec![vec![0.0f64; max_sum + 1]; k + 1];
    table[0][0] = 1.0;
    for r in 1..=n {
        for j in (1..=k.min(r)).rev() {
            for s in (r..=max_sum).rev() {
                table[j][s] += table[j - 1][s - r];
            }
        }
    }
    table.swap_remove(k)
}

/// Normal approximation with midrank tie correction and continuity
/// correction. A degenerate variance (all values equal) gives p = 1.
pub fn wilcoxon_normal(a: &[f64], b: &[f64]) -> f64 {
    let (n1, n2) = (a.len() as f64, b.len() as f64);
    let n = n1 + n2;
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let u = rank_sum(a, b) - n1 * (n1 + 1.0) / 2.0;
    let mut sorted = pooled.clone();
    sorted.sort_by(f64::total_cmp);
    let mut tie_term = 0.0;
    let mut k = 0;
    while k < sorted.len() {
        let mut end = k + 1;
        while end < sorted.len() && sorted[end] == sorted[k] {
            end += 1;
        }
        let t = (end - k) as f64;
        tie_term += t * t * t - t;
        k = end;
    }
    let variance = n1 * n2 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if variance <= 0.0 {
        return 1.0;
    }
    let diff = u - n1 * n2 / 2.0;
    let correction = if diff == 0.0 { 0.0 } else { 0.5 * diff.signum() };
    let z = (diff - correction) / variance.sqrt();
    let normal = Normal::standard();
    (2.0 * normal.cdf(z).min(normal.cdf(-z))).min(1.0)
}

/// Hommel-adjusted p-values, returned in input order.
pub fn hommel_adjust(p: &[f64]) -> Vec<f64> {
    let n = p.len();
    if n <= 1 {
        return p.to_vec();
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| p[i].total_cmp(&p[j]));
    let sorted: Vec<f64> = order.iter().map(|&i| p[i]).collect();

    let adjusted_sorted = if n == 2 {
        // Hommel coincides with Hochberg for two hypotheses.
        let hi = sorted[1];
        vec![(2.0 * sorted[0]).min(hi), hi]
    } else {
        let initial = (0..n)
            .map(|i| n as f64 * sorted[i] / (i + 1) as f64)
            .fold(f64::INFINITY, f64::min);
        let mut q = vec![initial; n];
        let mut pa = vec![initial; n];
        for m in (2..n).rev() {
            // i1 = first n - m + 1 positions, i2 = the remaining m - 1.
            let split = n - m + 1;
            let q1 = (split..n)
                .enumerate()
                .map(|(k, i)| m as f64 * sorted[i] / (k + 2) as f64)
                .fold(f64::INFINITY, f64::min);
            for i in 0..split {
                q[i] = (m as f64 * sorted[i]).min(q1);
            }
            for i in split..n {
                q[i] = q[split - 1];
            }
            for i in 0..n {
                pa[i] = pa[i].max(q[i]);
            }
        }
        (0..n).map(|i| pa[i].max(sorted[i])).collect()
    };

    let mut out = vec![0.0; n];
    for (rank, &i) in order.iter().enumerate() {
        out[i] = adjusted_sorted[rank].min(1.0);
    }
    out
}

pub fn median(values: &[f64]) -> f64 {
    assert!(!values.is_empty(), "median of an empty sample");
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid]
    } else {
        (v[mid - 1] + v[mid]) / 2.0
    }
}

/// Whether larger or smaller indicator values are better.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    HigherIsBetter,
    LowerIsBetter,
}

/// Labeled per-run indicator values.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleGroup {
    pub label: String,
    pub values: Vec<f64>,
}

impl SampleGroup {
    pub fn new(label: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        let label = label.into();
        if values.is_empty() {
            return Err(Error::Config(format!("group '{label}' has no values")));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Config(format!("group '{label}' has non-finite values")));
        }
        Ok(Self { label, values })
    }

    pub fn median(&self) -> f64 {
        median(&self.values)
    }
}

/// Outcome of one pairwise test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// The first group of the pair is significantly better.
    First,
    /// The second group of the pair is significantly better.
    Second,
    Tie,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairComparison {
    /// Group indices, `first < second`.
    pub first: usize,
    pub second: usize,
    pub p_raw: f64,
    pub p_adjusted: f64,
    pub verdict: Verdict,
}

/// All-vs-all comparison of a set of groups on one indicator.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub labels: Vec<String>,
    pub medians: Vec<f64>,
    pub direction: Direction,
    pub pairs: Vec<PairComparison>,
}

/// Pairwise rank-sum tests over every unordered pair of groups, adjusted
/// jointly with Hommel's method.
pub fn compare_all(groups: &[SampleGroup], direction: Direction) -> Result<ComparisonReport> {
    if groups.len() < 2 {
        return Err(Error::Config(format!(
            "comparison needs at least 2 groups, got {}",
            groups.len()
        )));
    }
    let medians: Vec<f64> = groups.iter().map(SampleGroup::median).collect();
    let mut index = Vec::new();
    let mut raw = Vec::new();
    for i in 0..groups.len() {
        for j in i + 1..groups.len() {
            index.push((i, j));
            raw.push(wilcoxon_rank_sum(&groups[i].values, &groups[j].values));
        }
    }
    let adjusted = hommel_adjust(&raw);
    let pairs = index
        .into_iter()
        .zip(raw.into_iter().zip(adjusted))
        .map(|((i, j), (p_raw, p_adjusted))| {
            let first_better = match direction {
                Direction::HigherIsBetter => medians[i] > medians[j],
                Direction::LowerIsBetter => medians[i] < medians[j],
            };
            let verdict = if p_adjusted >= ALPHA || medians[i] == medians[j] {
                Verdict::Tie
            } else if first_better {
                Verdict::First
            } else {
                Verdict::Second
            };
            PairComparison {
                first: i,
                second: j,
                p_raw,
                p_adjusted,
                verdict,
            }
        })
        .collect();
    Ok(ComparisonReport {
        labels: groups.iter().map(|g| g.label.clone()).collect(),
        medians,
        direction,
        pairs,
    })
}

impl ComparisonReport {
    /// The comparison of groups `a` and `b`, in either order.
    pub fn pair(&self, a: usize, b: usize) -> Option<&PairComparison> {
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        self.pairs.iter().find(|p| p.first == i && p.second == j)
    }

    /// Whether group `a` is significantly better than group `b`.
    pub fn better(&self, a: usize, b: usize) -> bool {
        self.pair(a, b).is_some_and(|p| match p.verdict {
            Verdict::First => p.first == a,
            Verdict::Second => p.second == a,
            Verdict::Tie => false,
        })
    }

    /// Lower-triangular table of adjusted p-values. "↑" marks a column
    /// group that beats the row group, "↓" the reverse, "≈" no significant
    /// difference.
    pub fn to_table(&self) -> String {
        let k = self.labels.len();
        let cells: Vec<Vec<String>> = (1..k)
            .map(|row| {
                (0..k - 1)
                    .map(|col| {
                        if col >= row {
                            return String::new();
                        }
                        let p = self.pair(col, row).expect("every pair is compared");
                        let mark = if self.better(col, row) {
                            "↑"
                        } else if self.better(row, col) {
                            "↓"
                        } else {
                            "≈"
                        };
                        format!("{} {mark}", format_p(p.p_adjusted))
                    })
                    .collect()
            })
            .collect();
        let label_width = self.labels.iter().map(|l| l.chars().count()).max().unwrap_or(0);
        let col_width = cells
            .iter()
            .flatten()
            .map(|c| c.chars().count())
            .chain(self.labels.iter().map(|l| l.chars().count()))
            .max()
            .unwrap_or(0);
        let pad = |s: &str, w: usize| format!("{s}{}", " ".repeat(w.saturating_sub(s.chars().count())));
        let mut out = String::new();
        let _ = write!(out, "{}", pad("", label_width));
        for col in 0..k - 1 {
            let _ = write!(out, "  {}", pad(&self.labels[col], col_width));
        }
        out.truncate(out.trim_end().len());
        out.push('\n');
        for (r, row) in cells.iter().enumerate() {
            let _ = write!(out, "{}", pad(&self.labels[r + 1], label_width));
            for c in row {
                let _ = write!(out, "  {}", pad(c, col_width));
            }
            out.truncate(out.trim_end().len());
            out.push('\n');
        }
        out
    }

    /// One CSV record per pair, in the layout of [`REPORT_HEADER`].
    pub(crate) fn write_rows<W: std::io::Write>(
        &self,
        writer: &mut csv::Writer<W>,
        indicator: &str,
        scope: &str,
    ) -> csv::Result<()> {
        for p in &self.pairs {
            let better = match p.verdict {
                Verdict::First => self.labels[p.first].as_str(),
                Verdict::Second => self.labels[p.second].as_str(),
                Verdict::Tie => "",
            };
            writer.write_record([
                indicator,
                scope,
                &self.labels[p.first],
                &self.labels[p.second],
                &self.medians[p.first].to_string(),
                &self.medians[p.second].to_string(),
                &p.p_raw.to_string(),
                &p.p_adjusted.to_string(),
                better,
            ])?;
        }
        Ok(())
    }
}

pub const REPORT_HEADER: [&str; 9] = [
    "indicator", "scope", "group_a", "group_b", "median_a", "median_b", "p_raw", "p_adjusted", "better",
];

fn format_p(p: f64) -> String {
    if p >= 0.001 {
        format!("{p:.3}")
    } else {
        format!("{p:.1e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Two-sided p by enumerating every split of the pooled ranks.
    fn enumerated_p(a: &[f64], b: &[f64]) -> f64 {
        let n = a.len() + b.len();
        let w = rank_sum(a, b);
        let (mut lower, mut upper, mut total) = (0u64, 0u64, 0u64);
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != a.len() {
                continue;
            }
            let s: f64 = (0..n).filter(|k| mask >> k & 1 == 1).map(|k| (k + 1) as f64).sum();
            total += 1;
            if s <= w {
                lower += 1;
            }
            if s >= w {
                upper += 1;
            }
        }
        (2.0 * lower.min(upper) as f64 / total as f64).min(1.0)
    }

    #[test]
    fn exact_examples() {
        assert_abs_diff_eq!(wilcoxon_rank_sum(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]), 0.1, epsilon = 1e-12);
        assert_eq!(wilcoxon_rank_sum(&[1.0], &[2.0]), 1.0);
        assert_eq!(wilcoxon_rank_sum(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]), 1.0);
    }

    #[test]
    fn exact_matches_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n1 = rng.gen_range(1..8);
            let n2 = rng.gen_range(1..=(12 - n1));
            let a: Vec<f64> = (0..n1).map(|_| rng.gen()).collect();
            let b: Vec<f64> = (0..n2).map(|_| rng.gen()).collect();
            assert_abs_diff_eq!(wilcoxon_exact(&a, &b), enumerated_p(&a, &b), epsilon = 1e-12);
        }
    }

    #[test]
    fn normal_close_to_exact_for_moderate_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..200 {
            let n1 = rng.gen_range(8..=10);
            let n2 = rng.gen_range(8..=10);
            let shift = rng.gen_range(0.0..1.0);
            let a: Vec<f64> = (0..n1).map(|_| rng.gen::<f64>() + shift).collect();
            let b: Vec<f64> = (0..n2).map(|_| rng.gen()).collect();
            let diff = (wilcoxon_exact(&a, &b) - wilcoxon_normal(&a, &b)).abs();
            assert!(diff < 0.02, "{diff}");
        }
    }

    #[test]
    fn normal_with_ties_matches_hand_computation() {
        // Ranks 1, 2, 3.5 | 3.5, 5, 6: U = 0.5, sigma^2 = 0.75 * (7 - 6/30),
        // z = (0.5 - 4.5 + 0.5) / sigma.
        let z = -3.5 / (0.75f64 * 6.8).sqrt();
        let expected = 2.0 * Normal::standard().cdf(z);
        let p = wilcoxon_rank_sum(&[1.0, 2.0, 3.0], &[3.0, 4.0, 5.0]);
        assert_abs_diff_eq!(p, expected, epsilon = 1e-12);
        assert_abs_diff_eq!(p, 0.1212, epsilon = 1e-4);
    }

    #[test]
    fn constant_samples_give_one() {
        assert_eq!(wilcoxon_normal(&[2.0; 30], &[2.0; 30]), 1.0);
    }

    /// Closed testing with Simes local tests over every subset.
    fn closed_simes(p: &[f64]) -> Vec<f64> {
        let n = p.len();
        (0..n)
            .map(|i| {
                let mut worst: f64 = 0.0;
                for mask in 1u32..(1 << n) {
                    if mask >> i & 1 == 0 {
                        continue;
                    }
                    let mut sub: Vec<f64> = (0..n).filter(|k| mask >> k & 1 == 1).map(|k| p[k]).collect();
                    sub.sort_by(f64::total_cmp);
                    let m = sub.len() as f64;
                    let simes = sub
                        .iter()
                        .enumerate()
                        .map(|(k, &v)| m * v / (k + 1) as f64)
                        .fold(f64::INFINITY, f64::min);
                    worst = worst.max(simes);
                }
                worst.min(1.0)
            })
            .collect()
    }

    #[test]
    fn hommel_examples() {
        assert_eq!(hommel_adjust(&[0.03]), vec![0.03]);
        let two = hommel_adjust(&[0.01, 0.04]);
        assert_abs_diff_eq!(two[0], 0.02, epsilon = 1e-15);
        assert_abs_diff_eq!(two[1], 0.04, epsilon = 1e-15);
        assert_eq!(hommel_adjust(&[1.0; 5]), vec![1.0; 5]);
        assert!(hommel_adjust(&[]).is_empty());
    }

    #[test]
    fn hommel_matches_closed_simes_testing() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..300 {
            let n = rng.gen_range(2..=8);
            let p: Vec<f64> = (0..n)
                .map(|_| if rng.gen_bool(0.5) { rng.gen::<f64>() * 0.05 } else { rng.gen() })
                .collect();
            let fast = hommel_adjust(&p);
            let oracle = closed_simes(&p);
            for (x, y) in fast.iter().zip(&oracle) {
                assert_abs_diff_eq!(x, y, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn compare_identical_groups_is_a_tie() {
        let g = vec![
            SampleGroup::new("a", vec![1.0, 2.0, 3.0]).unwrap(),
            SampleGroup::new("b", vec![1.0, 2.0, 3.0]).unwrap(),
        ];
        let report = compare_all(&g, Direction::HigherIsBetter).unwrap();
        assert_eq!(report.pairs.len(), 1);
        assert_eq!(report.pairs[0].verdict, Verdict::Tie);
    }

    #[test]
    fn six_groups_give_fifteen_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let groups: Vec<SampleGroup> = (0..6)
            .map(|k| SampleGroup::new(format!("g{k}"), (0..21).map(|_| rng.gen()).collect()).unwrap())
            .collect();
        let report = compare_all(&groups, Direction::LowerIsBetter).unwrap();
        assert_eq!(report.pairs.len(), 15);
        let table = report.to_table();
        assert_eq!(table.lines().count(), 6);
    }

    #[test]
    fn separated_groups_are_ranked() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let good = SampleGroup::new("good", (0..21).map(|_| 1.0 + rng.gen::<f64>()).collect()).unwrap();
        let bad = SampleGroup::new("bad", (0..21).map(|_| rng.gen::<f64>()).collect()).unwrap();
        let report = compare_all(&[bad, good], Direction::HigherIsBetter).unwrap();
        assert!(report.pairs[0].p_adjusted < ALPHA);
        assert!(report.better(1, 0));
        assert!(!report.better(0, 1));
    }

    #[test]
    fn fewer_than_two_groups_is_an_error() {
        let g = vec![SampleGroup::new("a", vec![1.0]).unwrap()];
        assert!(compare_all(&g, Direction::HigherIsBetter).is_err());
        assert!(SampleGroup::new("e", vec![]).is_err());
        assert!(SampleGroup::new("n", vec![f64::NAN]).is_err());
    }

    proptest! {
        #[test]
        fn hommel_bounds(p in prop::collection::vec(0.0f64..=1.0, 1..12)) {
            let adj = hommel_adjust(&p);
            let m = p.len() as f64;
            for (a, r) in adj.iter().zip(&p) {
                prop_assert!(*a >= *r - 1e-15);
                prop_assert!(*a <= 1.0);
                prop_assert!(*a <= (m * r).min(1.0) + 1e-12);
            }
        }

        #[test]
        fn hommel_preserves_order(p in prop::collection::vec(0.0f64..=1.0, 2..12)) {
            let adj = hommel_adjust(&p);
            for i in 0..p.len() {
                for j in 0..p.len() {
                    if p[i] < p[j] {
                        prop_assert!(adj[i] <= adj[j] + 1e-15);
                    }
                }
            }
        }

        #[test]
        fn rank_sum_p_is_symmetric(
            a in prop::collection::vec(0.0f64..10.0, 1..12),
            b in prop::collection::vec(0.0f64..10.0, 1..12),
        ) {
            let p = wilcoxon_rank_sum(&a, &b);
            prop_assert!((0.0..=1.0).contains(&p));
            prop_assert!((p - wilcoxon_rank_sum(&b, &a)).abs() < 1e-12);
        }

        #[test]
        fn comparison_invariant_under_reordering(seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let groups: Vec<SampleGroup> = (0..4)
                .map(|k| SampleGroup::new(format!("g{k}"), (0..10).map(|_| rng.gen::<f64>() + k as f64 * 0.3).collect()).unwrap())
                .collect();
            let forward = compare_all(&groups, Direction::HigherIsBetter).unwrap();
            let reversed: Vec<SampleGroup> = groups.iter().rev().cloned().collect();
            let backward = compare_all(&reversed, Direction::HigherIsBetter).unwrap();
            let k = groups.len();
            for p in &forward.pairs {
                let q = backward.pair(k - 1 - p.first, k - 1 - p.second).unwrap();
                prop_assert!((p.p_adjusted - q.p_adjusted).abs() < 1e-12);
                prop_assert_eq!(forward.better(p.first, p.second), backward.better(k - 1 - p.first, k - 1 - p.second));
            }
        }
    }
}
