use moead_ps::stats::{compare_all, hommel_adjust, wilcoxon_rank_sum, Direction, SampleGroup};

fn main() -> moead_ps::Result<()> {
    let a = vec![0.81, 0.84, 0.86, 0.88, 0.83, 0.90, 0.85];
    let b = vec![0.71, 0.74, 0.80, 0.69, 0.77, 0.73, 0.75];
    let c = vec![0.74, 0.79, 0.72, 0.81, 0.70, 0.76, 0.78];

    println!("p(a, b) = {:.5}", wilcoxon_rank_sum(&a, &b));
    println!("p(b, c) = {:.5}", wilcoxon_rank_sum(&b, &c));

    let raw = [0.01, 0.02, 0.04, 0.30];
    println!("Hommel {raw:?} -> {:?}", hommel_adjust(&raw));

    let groups = vec![
        SampleGroup::new("ps=0.1", a)?,
        SampleGroup::new("full", b)?,
        SampleGroup::new("ri", c)?,
    ];
    let report = compare_all(&groups, Direction::HigherIsBetter)?;
    print!("{}", report.to_table());
    println!("ps=0.1 beats full: {}", report.better(0, 1));
    Ok(())
}
