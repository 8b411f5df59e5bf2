use moead_ps::variation::{de_mutation, polynomial_mutation, repair_clamp, VariationParams};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn show(tag: &str, y: &[f64]) {
    let parts: Vec<String> = y.iter().map(|v| format!("{v:+.4}")).collect();
    println!("{tag:<10} [{}]", parts.join(", "));
}

fn main() {
    let params = VariationParams::default();
    let lower = [0.0, -1.0, -1.0, -1.0];
    let upper = [1.0; 4];

    let base = [0.5, 0.0, 0.9, -0.9];
    let r1 = [0.9, 0.8, 1.0, -1.0];
    let r2 = [0.1, -0.8, -1.0, 1.0];

    let mut y = de_mutation(&base, &r1, &r2, params.f);
    show("de", &y);
    repair_clamp(&mut y, &lower, &upper);
    show("clamped", &y);

    // Force every coordinate through the mutation to see its spread.
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for round in 0..3 {
        let mut z = y.clone();
        polynomial_mutation(&mut z, 1.0, params.eta_m, &lower, &upper, &mut rng);
        repair_clamp(&mut z, &lower, &upper);
        show(&format!("pm #{round}"), &z);
    }
    println!("defaults: F = {}, eta_m = {}, p_m = {}", params.f, params.eta_m, params.p_m);
}
