//! Stinespring dilation of a Kraus channel: couple to an ancilla in |0>,
//! apply a unitary, discard the ancilla. The joint entropy is conserved
//! until the ancilla is traced out, and the reduced dynamics match the
//! Kraus form.
//!
//! Run with: cargo run --example channel_dilation

use discordlab::{
    random_density, trace_distance, von_neumann_entropy, KrausChannel, Result,
};

fn main() -> Result<()> {
    let ch = KrausChannel::amplitude_damping(0.3)?;
    let dil = ch.dilate()?;
    println!(
        "amplitude_damping(0.3): {} Kraus operators, ancilla dimension {}",
        ch.kraus().len(),
        dil.ancilla_dim
    );

    let rho = random_density(&[2], 2, 7)?;
    let via_kraus = ch.apply(&rho, 0)?;
    let joint = dil.apply_keep_ancilla(&rho)?;
    let via_dilation = dil.apply(&rho)?;

    println!(
        "reconstruction error (Kraus vs dilation): {:.3e}",
        trace_distance(&via_kraus, &via_dilation)?
    );
    println!(
        "entropy before coupling: {:.6}, joint entropy after the unitary: {:.6}",
        von_neumann_entropy(&rho)?,
        von_neumann_entropy(&joint)?
    );
    println!(
        "entropy after discarding the ancilla: {:.6}",
        von_neumann_entropy(&via_dilation)?
    );
    Ok(())
}
