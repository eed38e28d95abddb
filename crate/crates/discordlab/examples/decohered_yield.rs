//! FQSW yield loss under decoherence on Bob's side: unitary channels cost
//! nothing, dephasing costs more as it strengthens, and the minimum over
//! measurement channels reproduces the discord of the state.
//!
//! Run with: cargo run --example decohered_yield

use discordlab::{
    decohered_fqsw_report, discord, min_loss_over_measurements, werner, KrausChannel,
    OptimizerOptions, Result, Side,
};

fn main() -> Result<()> {
    let rho = werner(0.8)?;
    let opts = OptimizerOptions::default();

    println!("state: werner(0.8)");
    println!("{:>22}  {:>9}", "channel on B", "loss");
    for p in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let rep = decohered_fqsw_report(&rho, &KrausChannel::dephasing(p)?)?;
        println!("{:>22}  {:>9.6}", format!("dephasing({p})"), rep.loss);
    }
    for p in [0.5, 1.0] {
        let rep = decohered_fqsw_report(&rho, &KrausChannel::depolarizing(2, p)?)?;
        println!("{:>22}  {:>9.6}", format!("depolarizing({p})"), rep.loss);
    }

    let min_loss = min_loss_over_measurements(&rho, &opts)?;
    let d = discord(&rho, Side::B, &opts)?.value;
    println!("\nminimum loss over rank-1 measurement channels = {min_loss:.6}");
    println!("discord of the state (measuring B)            = {:.6}", d);
    println!("gap = {:.3e}", (min_loss - d).abs());
    Ok(())
}
