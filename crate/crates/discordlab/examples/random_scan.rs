//! Cross-validation scan: for seeded random two-qubit states, the discord
//! computed from conditional ensembles and the minimum FQSW yield loss
//! computed through measurement channels must coincide.
//!
//! Run with: cargo run --example random_scan

use discordlab::{
    concurrence_2q, discord, min_loss_over_measurements, random_density, OptimizerOptions,
    Result, Side,
};

fn main() -> Result<()> {
    let opts = OptimizerOptions::default();
    let mut max_gap: f64 = 0.0;
    println!(
        "{:>4}  {:>9}  {:>9}  {:>11}  {:>9}  {:>9}",
        "seed", "D(A:B)", "D(B:A)", "concurrence", "min loss", "gap"
    );
    for seed in 0..10u64 {
        let rho = random_density(&[2, 2], 4, 500 + seed)?;
        let d_b = discord(&rho, Side::B, &opts)?.value;
        let d_a = discord(&rho, Side::A, &opts)?.value;
        let c = concurrence_2q(&rho)?;
        let loss = min_loss_over_measurements(&rho, &opts)?;
        let gap = (loss - d_b).abs();
        max_gap = max_gap.max(gap);
        println!("{seed:>4}  {d_b:>9.6}  {d_a:>9.6}  {c:>11.6}  {loss:>9.6}  {gap:>9.2e}");
    }
    println!("\nmax gap between the two computation paths: {max_gap:.2e}");
    Ok(())
}
