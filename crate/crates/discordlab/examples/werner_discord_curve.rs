//! Discord, classical correlation, and concurrence across the Werner family
//! p |Phi+><Phi+| + (1-p) I/4: discord turns on immediately for p > 0 while
//! entanglement needs p > 1/3.
//!
//! Run with: cargo run --example werner_discord_curve

use discordlab::{
    concurrence_2q, discord, mutual_information, werner, OptimizerOptions, Result, Side,
};

fn main() -> Result<()> {
    let opts = OptimizerOptions::default();
    println!("{:>5}  {:>9}  {:>9}  {:>9}  {:>11}", "p", "I(A:B)", "J(A:B)", "D(A:B)", "concurrence");
    for k in 0..=10 {
        let p = k as f64 / 10.0;
        let w = werner(p)?;
        let i = mutual_information(&w)?;
        let d = discord(&w, Side::B, &opts)?.value;
        let c = concurrence_2q(&w)?;
        println!("{p:>5.2}  {i:>9.6}  {:>9.6}  {d:>9.6}  {c:>11.6}", i - d);
    }
    Ok(())
}
