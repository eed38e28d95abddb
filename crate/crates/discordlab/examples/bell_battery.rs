//! Correlation measures and FQSW accounting for a Bell pair: the canonical
//! maximally entangled state where every quantity takes its textbook value.
//!
//! Run with: cargo run --example bell_battery

use discordlab::{
    bell_state, concurrence_2q, conditional_entropy, discord, fqsw_report, mutual_information,
    von_neumann_entropy, OptimizerOptions, Result, Side,
};

fn main() -> Result<()> {
    let bell = bell_state(0)?.to_density()?;
    let opts = OptimizerOptions::default();

    println!("state: |Phi+> = (|00> + |11>)/sqrt(2)");
    println!("S(A)   = {:.6}", von_neumann_entropy(&bell.side_marginal(Side::A)?)?);
    println!("S(AB)  = {:.6}", von_neumann_entropy(&bell)?);
    println!("I(A:B) = {:.6}", mutual_information(&bell)?);
    println!("S(A|B) = {:.6}  (negative: more than classically knowable)", conditional_entropy(&bell, Side::B)?);
    println!("C      = {:.6}", concurrence_2q(&bell)?);

    let d = discord(&bell, Side::B, &opts)?;
    println!("D(A:B) = {:.6}  (measuring B, {} restarts)", d.value, d.optimizer_trace.len());

    let g = fqsw_report(&bell)?;
    println!(
        "FQSW: cost {:.6} qubits, yield {:.6} ebits, net gain {:.6}",
        g.cost_qubits, g.yield_ebits, g.net_gain
    );
    Ok(())
}
