//! How the three strategies turn priorities into selected subproblems.

use moead_ps::allocation::{
    priorities_ps, priorities_ri, relative_improvement, select_subproblems, PriorityState, RiHistory, SelectionRule,
};
use moead_ps::Strategy;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const N: usize = 350;
const DELTA_T: usize = 20;

fn main() -> moead_ps::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);

    // Partial update: everything during warm-up, then a ps fraction on average.
    for t in [0, DELTA_T - 1, DELTA_T, 500] {
        let u = priorities_ps(t, DELTA_T, 0.1, N)?;
        let picked = select_subproblems(&u, SelectionRule::Direct, &mut rng);
        println!("ps=0.1 t={t:>3}: {} of {N} selected", picked.len());
    }

    let full = PriorityState::new(Strategy::Full, DELTA_T, N)?;
    println!("full t=500: {} of {N} selected", full.select(500, &mut rng).len());

    // Relative improvement over the last DELTA_T generations.
    println!("ri(10 -> 7) = {}", relative_improvement(10.0, 7.0));
    let mut history = RiHistory::new(DELTA_T);
    for g in 0..=DELTA_T {
        // Subproblem i improves at rate i / N per generation.
        let values = (0..N).map(|i| 1.0 - g as f64 * i as f64 / (N * DELTA_T * 2) as f64).collect();
        history.push(values);
    }
    println!("history holds {} snapshots", history.len());
    let u = priorities_ri(&history, DELTA_T, DELTA_T, N);
    let picked = select_subproblems(&u, SelectionRule::Normalized, &mut rng);
    let (low, high) = picked.iter().partition::<Vec<usize>, _>(|&&i| i < N / 2);
    println!(
        "ri: {} selected, {} from the slow half and {} from the fast half",
        picked.len(),
        low.len(),
        high.len()
    );
    Ok(())
}
