//! Batch command-line front end: reads states, channels, and POVMs from
//! JSON, emits correlation tables, protocol reports, and CSV sweeps.
//!
//! Tables print 6 decimal places; CSV and JSON carry full precision
//! (shortest round-trip representation). All commands are deterministic
//! under a fixed seed.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::channels::KrausChannel;
use crate::correlations::{
    concurrence_2q, conditional_entropy, discord, measured_conditional_entropy,
    mutual_information, von_neumann_entropy, zurek_discord, OptimizerOptions,
};
use crate::error::{Error, Result};
use crate::io;
use crate::protocols::{min_loss_over_measurements, protocol_report, Protocol};
use crate::states::{random_density, werner, DensityOperator, Side};

#[derive(Debug, Parser)]
#[command(
    name = "discordlab",
    about = "Quantum correlations and decoherence yield accounting for bipartite states",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct OptimizerArgs {
    /// Seed for every randomized ingredient (restarts, scans).
    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Multi-start count for the measurement optimizer.
    #[arg(long, default_value_t = 16)]
    restarts: usize,

    /// Also search k-outcome rank-1 POVMs instead of projective bases only.
    #[arg(long)]
    povm_mode: bool,
}

impl OptimizerArgs {
    fn options(&self) -> OptimizerOptions {
        OptimizerOptions {
            restarts: self.restarts,
            seed: self.seed,
            povm_mode: self.povm_mode,
            ..OptimizerOptions::default()
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Entropies, mutual information, classical correlation, discord (both
    /// directions), and concurrence for a bipartite state file.
    Correlations {
        /// JSON state file.
        #[arg(long)]
        state: PathBuf,

        /// Optional POVM file; reports the measured conditional entropy and
        /// the fixed-measurement discord for it (measured on B).
        #[arg(long)]
        povm: Option<PathBuf>,

        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,

        /// Machine-readable JSON output.
        #[arg(long)]
        json: bool,

        #[command(flatten)]
        optimizer: OptimizerArgs,
    },

    /// Coherent vs. decohered cost/yield accounting for one protocol.
    Protocol {
        /// One of: fqsw, teleport, densecode, distill, merge.
        protocol: String,

        /// JSON state file.
        #[arg(long)]
        state: PathBuf,

        /// JSON channel file applied to side B.
        #[arg(long)]
        channel: PathBuf,

        /// Also minimize the loss over measurement channels and print the
        /// gap against the discord of the state.
        #[arg(long)]
        verify_discord: bool,

        #[arg(long)]
        out: Option<PathBuf>,

        #[command(flatten)]
        optimizer: OptimizerArgs,
    },

    /// CSV sweep of correlation quantities over a one-parameter family.
    Sweep {
        /// State family: werner, depolarizing (Bell state through a
        /// depolarizing channel), or custom-grid (state file through a
        /// channel family).
        #[arg(long)]
        family: String,

        #[arg(long, default_value_t = 0.0)]
        from: f64,

        #[arg(long, default_value_t = 1.0)]
        to: f64,

        #[arg(long)]
        step: f64,

        /// Comma-separated column list: discord, discord_a, j, concurrence,
        /// mutinf, entropy, loss.
        #[arg(long, value_delimiter = ',', default_value = "discord,concurrence")]
        quantities: Vec<String>,

        /// Base state for the custom-grid family.
        #[arg(long)]
        state: Option<PathBuf>,

        /// Channel family for custom-grid: dephasing, depolarizing, or
        /// amplitude-damping.
        #[arg(long, default_value = "dephasing")]
        channel_family: String,

        #[arg(long)]
        out: Option<PathBuf>,

        #[command(flatten)]
        optimizer: OptimizerArgs,
    },

    /// CSV scan over seeded random states: discord both ways, concurrence,
    /// minimum yield loss, and the gap between the two discord paths.
    RandomScan {
        #[arg(long)]
        n: usize,

        /// Subsystem dimensions, e.g. 2,2.
        #[arg(long, default_value = "2,2")]
        dims: String,

        /// Rank of the sampled states; defaults to full rank.
        #[arg(long)]
        rank: Option<usize>,

        #[arg(long)]
        out: Option<PathBuf>,

        #[command(flatten)]
        optimizer: OptimizerArgs,
    },
}

/// Parses arguments from the process environment and runs; returns the exit
/// code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Correlations {
            state,
            povm,
            out,
            json,
            optimizer,
        } => cmd_correlations(&state, povm.as_deref(), out.as_deref(), json, &optimizer.options()),
        Command::Protocol {
            protocol,
            state,
            channel,
            verify_discord,
            out,
            optimizer,
        } => cmd_protocol(
            &protocol,
            &state,
            &channel,
            verify_discord,
            out.as_deref(),
            &optimizer.options(),
        ),
        Command::Sweep {
            family,
            from,
            to,
            step,
            quantities,
            state,
            channel_family,
            out,
            optimizer,
        } => cmd_sweep(
            &family,
            from,
            to,
            step,
            &quantities,
            state.as_deref(),
            &channel_family,
            out.as_deref(),
            &optimizer.options(),
        ),
        Command::RandomScan {
            n,
            dims,
            rank,
            out,
            optimizer,
        } => cmd_random_scan(n, &dims, rank, out.as_deref(), &optimizer.options()),
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => io::write_text(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_correlations(
    state_path: &Path,
    povm_path: Option<&Path>,
    out: Option<&Path>,
    json_output: bool,
    opts: &OptimizerOptions,
) -> Result<()> {
    let rho = io::read_state(state_path)?;
    rho.bipartite_dims()?;
    let s_a = von_neumann_entropy(&rho.side_marginal(Side::A)?)?;
    let s_b = von_neumann_entropy(&rho.side_marginal(Side::B)?)?;
    let s_ab = von_neumann_entropy(&rho)?;
    let i_ab = mutual_information(&rho)?;
    let cond_b = conditional_entropy(&rho, Side::B)?;
    let d_b = discord(&rho, Side::B, opts)?;
    let d_a = discord(&rho, Side::A, opts)?;
    let j_b = i_ab - d_b.value;
    let j_a = i_ab - d_a.value;
    let conc = if rho.dims() == [2, 2] {
        Some(concurrence_2q(&rho)?)
    } else {
        None
    };
    let fixed = povm_path
        .map(|p| -> Result<(f64, f64)> {
            let povm = io::read_povm(p)?;
            let mce = measured_conditional_entropy(&rho, &povm, Side::B)?;
            let zd = zurek_discord(&rho, &povm, Side::B)?;
            Ok((mce, zd))
        })
        .transpose()?;

    if json_output {
        let mut obj = json!({
            "state": io::state_to_file(&rho),
            "entropy_a": s_a,
            "entropy_b": s_b,
            "entropy_ab": s_ab,
            "mutual_information": i_ab,
            "conditional_entropy_given_b": cond_b,
            "classical_correlation_measure_b": j_b,
            "classical_correlation_measure_a": j_a,
            "discord_measure_b": d_b.value,
            "discord_measure_a": d_a.value,
            "optimal_measurement_b": io::povm_to_file(&d_b.optimal_measurement),
            "optimal_measurement_a": io::povm_to_file(&d_a.optimal_measurement),
            "concurrence": conc,
        });
        if let Some((mce, zd)) = fixed {
            obj["fixed_measured_conditional_entropy"] = json!(mce);
            obj["fixed_zurek_discord"] = json!(zd);
        }
        let mut text = serde_json::to_string_pretty(&obj).expect("serializable");
        text.push('\n');
        return emit(&text, out);
    }

    let mut t = String::new();
    let _ = writeln!(t, "state: {} (dims {:?})", state_path.display(), rho.dims());
    let _ = writeln!(t, "S(A)    = {s_a:.6}");
    let _ = writeln!(t, "S(B)    = {s_b:.6}");
    let _ = writeln!(t, "S(AB)   = {s_ab:.6}");
    let _ = writeln!(t, "I(A:B)  = {i_ab:.6}");
    let _ = writeln!(t, "S(A|B)  = {cond_b:.6}");
    let _ = writeln!(t, "J(A:B)  = {j_b:.6}   (measure B)");
    let _ = writeln!(t, "J(B:A)  = {j_a:.6}   (measure A)");
    let _ = writeln!(t, "D(A:B)  = {:.6}   (measure B)", d_b.value);
    let _ = writeln!(t, "D(B:A)  = {:.6}   (measure A)", d_a.value);
    if let Some(c) = conc {
        let _ = writeln!(t, "C       = {c:.6}");
    }
    if let Some((mce, zd)) = fixed {
        let _ = writeln!(t, "S~(A|B) = {mce:.6}   (given POVM on B)");
        let _ = writeln!(t, "D_zurek = {zd:.6}   (given POVM on B)");
    }
    if !d_b.converged || !d_a.converged {
        let _ = writeln!(t, "warning: optimizer hit the iteration cap; values are best found");
    }
    emit(&t, out)
}

fn render_vector(v: &crate::protocols::ResourceVector) -> String {
    format!(
        "ebits {:.6}  qbits {:.6}  cbits {:.6}",
        v.ebits, v.qbits_a_to_b, v.cbits_a_to_b
    )
}

fn cmd_protocol(
    protocol: &str,
    state_path: &Path,
    channel_path: &Path,
    verify_discord: bool,
    out: Option<&Path>,
    opts: &OptimizerOptions,
) -> Result<()> {
    let protocol: Protocol = protocol.parse()?;
    let rho = io::read_state(state_path)?;
    let ch = io::read_channel(channel_path)?;
    let rep = protocol_report(protocol, &rho, &ch)?;
    let mut t = String::new();
    let _ = writeln!(t, "protocol: {}", rep.protocol);
    let _ = writeln!(t, "coherent  cost : {}", render_vector(&rep.coherent_cost));
    let _ = writeln!(t, "coherent  yield: {}", render_vector(&rep.coherent_yield));
    let _ = writeln!(t, "decohered cost : {}", render_vector(&rep.decohered_cost));
    let _ = writeln!(t, "decohered yield: {}", render_vector(&rep.decohered_yield));
    let _ = writeln!(t, "net gain = {:.6}", rep.net_gain);
    let _ = writeln!(t, "net gain (decohered) = {:.6}", rep.net_gain_decohered);
    let _ = writeln!(t, "loss = {:.6}", rep.loss);
    if verify_discord {
        let min_loss = min_loss_over_measurements(&rho, opts)?;
        let d = discord(&rho, Side::B, opts)?;
        let gap = (min_loss - d.value).abs();
        let _ = writeln!(t, "min loss over measurements = {min_loss:.6}");
        let _ = writeln!(t, "discord (measure B) = {:.6}", d.value);
        let _ = writeln!(t, "gap = {gap:.6e}");
    }
    emit(&t, out)
}

fn known_quantities() -> &'static [&'static str] {
    &[
        "discord",
        "discord_a",
        "j",
        "concurrence",
        "mutinf",
        "entropy",
        "loss",
    ]
}

fn quantity_value(
    name: &str,
    state: &DensityOperator,
    loss: Option<f64>,
    opts: &OptimizerOptions,
) -> Result<f64> {
    match name {
        "discord" => Ok(discord(state, Side::B, opts)?.value),
        "discord_a" => Ok(discord(state, Side::A, opts)?.value),
        "j" => {
            let i = mutual_information(state)?;
            Ok(i - discord(state, Side::B, opts)?.value)
        }
        "concurrence" => concurrence_2q(state),
        "mutinf" => mutual_information(state),
        "entropy" => von_neumann_entropy(state),
        "loss" => loss.ok_or_else(|| {
            Error::Parameter(
                "quantity 'loss' needs a channel family (depolarizing or custom-grid)".into(),
            )
        }),
        other => Err(Error::Parameter(format!(
            "unknown quantity {other:?} (valid: {})",
            known_quantities().join(", ")
        ))),
    }
}

fn grid(from: f64, to: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || step > to - from {
        return Err(Error::Parameter("empty grid".into()));
    }
    let n = ((to - from) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| from + i as f64 * step).collect())
}

fn channel_by_family(family: &str, p: f64) -> Result<KrausChannel> {
    match family {
        "dephasing" => KrausChannel::dephasing(p),
        "depolarizing" => KrausChannel::depolarizing(2, p),
        "amplitude-damping" => KrausChannel::amplitude_damping(p),
        other => Err(Error::Parameter(format!(
            "unknown channel family {other:?} (valid: dephasing, depolarizing, amplitude-damping)"
        ))),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    family: &str,
    from: f64,
    to: f64,
    step: f64,
    quantities: &[String],
    state_path: Option<&Path>,
    channel_family: &str,
    out: Option<&Path>,
    opts: &OptimizerOptions,
) -> Result<()> {
    if quantities.is_empty() {
        return Err(Error::Parameter("no quantities requested".into()));
    }
    let points = grid(from, to, step)?;
    let base_state = match family {
        "custom-grid" => Some(io::read_state(state_path.ok_or_else(|| {
            Error::Parameter("family custom-grid needs --state".into())
        })?)?),
        "werner" | "depolarizing" => None,
        other => {
            return Err(Error::Parameter(format!(
                "unknown family {other:?} (valid: werner, depolarizing, custom-grid)"
            )))
        }
    };

    let mut csv = String::new();
    csv.push_str("p");
    for q in quantities {
        csv.push(',');
        csv.push_str(q);
    }
    csv.push('\n');
    for &p in &points {
        let (state, loss) = match family {
            "werner" => (werner(p)?, None),
            "depolarizing" => {
                let bell = crate::states::bell_state(0)?.to_density()?;
                let ch = KrausChannel::depolarizing(2, p)?;
                let primed = ch.apply(&bell, 1)?;
                let loss = crate::protocols::decohered_fqsw_report(&bell, &ch)?.loss;
                (primed, Some(loss))
            }
            "custom-grid" => {
                let base = base_state.as_ref().unwrap();
                let ch = channel_by_family(channel_family, p)?;
                let primed = ch.apply(base, 1)?;
                let loss = crate::protocols::decohered_fqsw_report(base, &ch)?.loss;
                (primed, Some(loss))
            }
            _ => unreachable!(),
        };
        let _ = write!(csv, "{p}");
        for q in quantities {
            let v = quantity_value(q, &state, loss, opts)?;
            let _ = write!(csv, ",{v}");
        }
        csv.push('\n');
    }
    emit(&csv, out)
}

fn cmd_random_scan(
    n: usize,
    dims: &str,
    rank: Option<usize>,
    out: Option<&Path>,
    opts: &OptimizerOptions,
) -> Result<()> {
    if n == 0 {
        return Err(Error::Parameter("scan needs n >= 1".into()));
    }
    let dims: Vec<usize> = dims
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parameter(format!("bad dimension {s:?} in --dims")))
        })
        .collect::<Result<Vec<_>>>()?;
    if dims.len() != 2 || dims.iter().any(|&d| d < 2) {
        return Err(Error::Parameter(
            "--dims must name two subsystems of dimension >= 2".into(),
        ));
    }
    let is_two_qubit = dims == [2, 2];
    let total: usize = dims.iter().product();
    let rank = rank.unwrap_or(total);

    let mut csv = String::from("index,seed,discord_b,discord_a,concurrence,min_loss,gap\n");
    let mut max_gap: f64 = 0.0;
    for i in 0..n {
        let seed = opts.seed.wrapping_add(i as u64);
        let rho = random_density(&dims, rank, seed)?;
        let d_b = discord(&rho, Side::B, opts)?.value;
        let d_a = discord(&rho, Side::A, opts)?.value;
        let conc = if is_two_qubit {
            format!("{}", concurrence_2q(&rho)?)
        } else {
            String::new()
        };
        let min_loss = min_loss_over_measurements(&rho, opts)?;
        let gap = (min_loss - d_b).abs();
        max_gap = max_gap.max(gap);
        let _ = writeln!(csv, "{i},{seed},{d_b},{d_a},{conc},{min_loss},{gap}");
    }
    let _ = writeln!(csv, "# max_gap={max_gap}");
    emit(&csv, out)
}
