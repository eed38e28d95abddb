//! Coherent vs. decohered accounting for the whole protocol family on one
//! (state, channel) pair. The four losses are the same entropic quantity
//! reached through different bookkeeping, and they agree to rounding.
//!
//! Run with: cargo run --example protocol_family

use discordlab::{protocol_report, werner, KrausChannel, Protocol, Result};

fn main() -> Result<()> {
    let rho = werner(0.9)?;
    let ch = KrausChannel::amplitude_damping(0.35)?;
    println!("state: werner(0.9), channel on B: amplitude_damping(0.35)\n");
    println!(
        "{:>10}  {:>10}  {:>10}  {:>10}",
        "protocol", "net gain", "decohered", "loss"
    );
    for p in Protocol::ALL {
        let rep = protocol_report(p, &rho, &ch)?;
        println!(
            "{:>10}  {:>10.6}  {:>10.6}  {:>10.6}",
            rep.protocol.name(),
            rep.net_gain,
            rep.net_gain_decohered,
            rep.loss
        );
    }
    Ok(())
}
