//! Discord depends on which side is measured: a classical-quantum state has
//! zero discord when its classical register is measured but positive discord
//! the other way around.
//!
//! Run with: cargo run --example discord_asymmetry

use discordlab::{
    classical_quantum_state, discord, random_density, DensityOperator, OptimizerOptions, Result,
    Side, C64,
};

fn main() -> Result<()> {
    // Classical register on A, conditional qubit states |0> and |+> on B.
    let zero = random_density(&[2], 1, 1)?;
    let s = 1.0 / 2f64.sqrt();
    let plus = vec![C64::new(s, 0.0), C64::new(s, 0.0)];
    let plus_state = DensityOperator::new(
        vec![2],
        discordlab::qmat::vec_outer(&plus, &plus),
    )?;
    let cq = classical_quantum_state(&[0.5, 0.5], 2, &[zero, plus_state], Side::A)?;

    let opts = OptimizerOptions::default();
    let d_a = discord(&cq, Side::A, &opts)?;
    let d_b = discord(&cq, Side::B, &opts)?;
    println!("classical-quantum state, register on A:");
    println!("D(B:A) measuring A = {:.6}  (pointer basis is optimal)", d_a.value);
    println!("D(A:B) measuring B = {:.6}  (no basis fits both |0> and |+>)", d_b.value);
    println!(
        "optimal B measurement found after {} restarts (converged: {})",
        d_b.optimizer_trace.len(),
        d_b.converged
    );
    Ok(())
}
