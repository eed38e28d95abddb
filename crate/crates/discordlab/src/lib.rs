//! Quantum correlations and decoherence yield accounting for bipartite
//! states.
//!
//! The crate computes von Neumann entropies, mutual information, classical
//! correlation, and quantum discord of finite-dimensional bipartite states,
//! models decoherence as Kraus channels with Stinespring dilations, lifts
//! POVMs to projective measurements through Neumark extensions, and tracks
//! the per-copy cost/yield of the fully quantum Slepian-Wolf protocol family
//! under decoherence. The minimum yield loss over measurement channels on B
//! reproduces the discord of the state, and the two quantities are computed
//! through independent code paths so the identity can be checked numerically.
//!
//! All entropic quantities are in bits (log base 2). Subsystem 0 is always
//! the leftmost tensor factor.
//!
//! See the `examples/` directory for runnable walkthroughs of each
//! capability, and the `discordlab` binary for batch use on JSON files.

pub mod channels;
pub mod cli;
pub mod correlations;
pub mod error;
pub mod io;
pub mod measure;
pub mod optimize;
pub mod protocols;
pub mod qmat;
pub mod states;

pub use channels::{Dilation, KrausChannel};
pub use correlations::{
    classical_correlation, coherent_information, concurrence_2q, conditional_entropy, discord,
    measured_conditional_entropy, mutual_information, shannon_entropy, von_neumann_entropy,
    zurek_discord, DiscordResult, OptimizerOptions,
};
pub use error::{Error, Result};
pub use measure::{measure_side, ConditionalEnsemble, NeumarkExtension, Povm};
pub use protocols::{
    decohered_fqsw_report, dense_coding_report, distillation_report, fqsw_report, merging_report,
    min_loss_over_measurements, protocol_report, teleportation_report, FqswGain, Protocol,
    ProtocolReport, ResourceVector,
};
pub use qmat::{ComplexMatrix, EigenDecomposition, C64};
pub use states::{
    bell_state, classical_quantum_state, purify, random_density, trace_distance, werner,
    DensityOperator, PureState, Side,
};
