//! Hypervolume, IGD and the non-dominated ratio on hand-made sets, then on
//! a benchmark front.

use moead_ps::metrics::{assess, hypervolume, igd, ndom_ratio, nondominated_filter, MetricFrame};
use moead_ps::problems::reference_front;
use moead_ps::ProblemId;

fn main() {
    let staircase = vec![vec![0.25, 0.75], vec![0.5, 0.5], vec![0.75, 0.25]];
    println!("HV of the staircase: {}", hypervolume(&staircase, &[1.0, 1.0]));
    println!("HV of a single 3-d point: {}", hypervolume(&[vec![0.5; 3]], &[1.0; 3]));

    let mixed = vec![vec![0.2, 0.9], vec![0.3, 0.95], vec![0.6, 0.4], vec![0.7, 0.7]];
    println!("non-dominated: {:?}", nondominated_filter(&mixed));
    println!("NDOM ratio: {}", ndom_ratio(&mixed));

    let front = vec![vec![0.0, 1.0], vec![0.5, 0.5], vec![1.0, 0.0]];
    println!("IGD of the staircase to a 3-point front: {:.4}", igd(&front, &staircase));

    // Points near the DTLZ2 front, pushed outward by 5 percent.
    let reference = reference_front(ProblemId::Dtlz2);
    let shifted: Vec<Vec<f64>> = reference.points.iter().step_by(50).map(|p| p.iter().map(|v| v * 1.05).collect()).collect();
    let on_front = assess(ProblemId::Dtlz2, &reference.points);
    let off_front = assess(ProblemId::Dtlz2, &shifted);
    println!("dtlz2 front itself: {on_front:?}");
    println!("dtlz2 shifted subset: {off_front:?}");

    // The same set measured in a frame that spans both sets.
    let both: Vec<&Vec<f64>> = reference.points.iter().chain(&shifted).collect();
    let frame = MetricFrame::spanning(&both);
    println!("HV in the spanning frame: {:.4}", hypervolume(&frame.scale(&shifted), &[1.0, 1.0]));
}
