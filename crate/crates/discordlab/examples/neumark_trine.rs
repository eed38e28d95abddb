//! Neumark extension of the trine POVM: three rank-1 elements on a qubit
//! become orthogonal projectors on a three-dimensional space, with identical
//! outcome statistics.
//!
//! Run with: cargo run --example neumark_trine

use discordlab::{random_density, KrausChannel, Povm, Result};

fn main() -> Result<()> {
    let trine = Povm::trine();
    let ext = trine.neumark()?;
    println!(
        "trine POVM: {} elements on dimension {} -> projectors on dimension {}",
        trine.len(),
        trine.dim(),
        ext.isometry.rows()
    );

    let rho = random_density(&[2], 2, 11)?;
    let lifted = ext
        .isometry
        .multiply(rho.mat())?
        .multiply(&ext.isometry.dagger())?;
    println!("{:>8}  {:>12}  {:>12}", "outcome", "Tr(Pi rho)", "extended");
    for (i, el) in trine.elements().iter().enumerate() {
        let p = el.multiply(rho.mat())?.trace().re;
        println!("{i:>8}  {p:>12.9}  {:>12.9}", lifted.get(i, i).re);
    }

    // The same extension drives the measurement channel: the output is
    // diagonal in the projector basis with the outcome probabilities.
    let ch = KrausChannel::measurement(&trine)?;
    let out = ch.apply(&rho, 0)?;
    println!(
        "measurement channel output dims {:?}, diagonal ({:.6}, {:.6}, {:.6})",
        out.dims(),
        out.mat().get(0, 0).re,
        out.mat().get(1, 1).re,
        out.mat().get(2, 2).re
    );
    Ok(())
}
