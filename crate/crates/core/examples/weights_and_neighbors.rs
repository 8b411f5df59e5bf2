//! Simplex-lattice weight vectors, their Euclidean neighborhoods and the
//! weighted Tchebycheff function on min-max scaled objectives.

use moead_ps::decomposition::{
    guard_weight, lattice_size, neighborhoods, scale_objectives, sld_weights, tchebycheff_origin,
};

fn main() -> moead_ps::Result<()> {
    // Population sizes used for two and three objectives.
    for (m, h) in [(2, 349), (3, 25)] {
        println!("m = {m}, h = {h}: {} weights", lattice_size(m, h));
    }

    let weights = sld_weights(2, 10)?;
    let table = neighborhoods(&weights, 3)?;
    for (i, w) in weights.weights().iter().enumerate() {
        println!("w[{i:>2}] = ({:.1}, {:.1})  neighbors {:?}", w[0], w[1], table.of(i));
    }

    // A zero component is lifted before it reaches the scalarizer.
    println!("guarded (0, 1) -> {:?}", guard_weight(&[0.0, 1.0]));

    let raw = vec![vec![3.0, 40.0], vec![1.0, 100.0], vec![5.0, 10.0]];
    let (frame, scaled) = scale_objectives(&raw);
    println!("scaling frame: {frame:?}");
    for w in [[0.9, 0.1], [0.5, 0.5], [0.1, 0.9]] {
        let g: Vec<String> = scaled
            .iter()
            .map(|f| format!("{:.3}", tchebycheff_origin(f, &guard_weight(&w))))
            .collect();
        println!("w = {w:?}: g = [{}]", g.join(", "));
    }
    Ok(())
}
