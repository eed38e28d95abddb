//! Per-copy resource accounting for the fully quantum Slepian-Wolf protocol
//! and its children (teleportation, super-dense coding, one-way distillation,
//! state merging), in coherent and decohered versions, plus the verifier
//! equating the minimum yield loss over measurements with quantum discord.
//!
//! Decoherence always acts on side B; the channel dimension is checked
//! against B and anything else is rejected.

use crate::channels::KrausChannel;
use crate::correlations::{
    coherent_information, conditional_entropy, minimize_over_measurements, mutual_information,
    von_neumann_entropy, OptimizerOptions,
};
use crate::error::{Error, Result};
use crate::states::{purify, DensityOperator, Side};

/// Per-copy asymptotic rates; cbits and qubits flow from Alice to Bob.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ResourceVector {
    pub ebits: f64,
    pub qbits_a_to_b: f64,
    pub cbits_a_to_b: f64,
}

impl ResourceVector {
    pub fn ebits(v: f64) -> Self {
        Self {
            ebits: v,
            ..Default::default()
        }
    }

    pub fn qbits(v: f64) -> Self {
        Self {
            qbits_a_to_b: v,
            ..Default::default()
        }
    }

    pub fn cbits(v: f64) -> Self {
        Self {
            cbits_a_to_b: v,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Protocol {
    Fqsw,
    Teleport,
    DenseCode,
    Distill,
    Merge,
}

impl Protocol {
    pub const ALL: [Protocol; 5] = [
        Protocol::Fqsw,
        Protocol::Teleport,
        Protocol::DenseCode,
        Protocol::Distill,
        Protocol::Merge,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Protocol::Fqsw => "fqsw",
            Protocol::Teleport => "teleport",
            Protocol::DenseCode => "densecode",
            Protocol::Distill => "distill",
            Protocol::Merge => "merge",
        }
    }
}

impl std::str::FromStr for Protocol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fqsw" => Ok(Protocol::Fqsw),
            "teleport" => Ok(Protocol::Teleport),
            "densecode" => Ok(Protocol::DenseCode),
            "distill" => Ok(Protocol::Distill),
            "merge" => Ok(Protocol::Merge),
            other => Err(Error::Parameter(format!(
                "unknown protocol {other:?} (valid: fqsw, teleport, densecode, distill, merge)"
            ))),
        }
    }
}

impl std::fmt::Display for Protocol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Coherent vs. decohered costs and yields for one protocol on one state.
#[derive(Debug, Clone)]
pub struct ProtocolReport {
    pub protocol: Protocol,
    pub coherent_cost: ResourceVector,
    pub coherent_yield: ResourceVector,
    pub decohered_cost: ResourceVector,
    pub decohered_yield: ResourceVector,
    pub net_gain: f64,
    pub net_gain_decohered: f64,
    pub loss: f64,
}

/// FQSW accounting on one state: quantum-communication cost I(A:R)/2, ebit
/// yield I(A:B)/2, net gain their difference (= -S(A|B)).
#[derive(Debug, Clone, Copy)]
pub struct FqswGain {
    pub cost_qubits: f64,
    pub yield_ebits: f64,
    pub net_gain: f64,
}

/// Computes FQSW cost and yield through the purification: the reference R is
/// appended by `purify` and I(A:R) is evaluated on the actual marginals.
pub fn fqsw_report(rho: &DensityOperator) -> Result<FqswGain> {
    rho.bipartite_dims()?;
    let psi = purify(rho)?;
    let joint = psi.to_density()?;
    let s_a = von_neumann_entropy(&joint.marginal(&[0])?)?;
    let s_r = von_neumann_entropy(&joint.marginal(&[2])?)?;
    let s_ar = von_neumann_entropy(&joint.marginal(&[0, 2])?)?;
    let i_ar = s_a + s_r - s_ar;
    let i_ab = mutual_information(rho)?;
    let gain = 0.5 * i_ab - 0.5 * i_ar;
    let neg_cond = -conditional_entropy(rho, Side::B)?;
    if (gain - neg_cond).abs() > 1e-9 {
        return Err(Error::Inconsistent(format!(
            "FQSW gain {gain} does not match -S(A|B) = {neg_cond}"
        )));
    }
    Ok(FqswGain {
        cost_qubits: 0.5 * i_ar,
        yield_ebits: 0.5 * i_ab,
        net_gain: gain,
    })
}

/// Applies the channel to side B; errors when the channel does not fit B.
fn decohere_b(rho: &DensityOperator, ch: &KrausChannel) -> Result<DensityOperator> {
    let (_, db) = rho.bipartite_dims()?;
    if ch.input_dim() != db {
        return Err(Error::DimMismatch(format!(
            "decoherence acts on side B (dimension {db}) but the channel expects dimension {}; \
             A-side decoherence is not supported",
            ch.input_dim()
        )));
    }
    ch.apply(rho, Side::B.index())
}

/// FQSW before and after decoherence on B; the loss is the drop in net gain,
/// nonnegative by data processing.
pub fn decohered_fqsw_report(rho: &DensityOperator, ch: &KrausChannel) -> Result<ProtocolReport> {
    let primed = decohere_b(rho, ch)?;
    let g = fqsw_report(rho)?;
    let gd = fqsw_report(&primed)?;
    let loss = g.net_gain - gd.net_gain;
    if loss < -1e-9 {
        return Err(Error::Inconsistent(format!(
            "FQSW loss {loss} is negative beyond tolerance"
        )));
    }
    Ok(ProtocolReport {
        protocol: Protocol::Fqsw,
        coherent_cost: ResourceVector::qbits(g.cost_qubits),
        coherent_yield: ResourceVector::ebits(g.yield_ebits),
        decohered_cost: ResourceVector::qbits(gd.cost_qubits),
        decohered_yield: ResourceVector::ebits(gd.yield_ebits),
        net_gain: g.net_gain,
        net_gain_decohered: gd.net_gain,
        loss,
    })
}

/// Minimum FQSW yield loss over rank-1 measurement channels on B, computed
/// through the channel path (Neumark-extended measurement channel, apply,
/// entropies); equals the discord of the state up to optimizer tolerance.
pub fn min_loss_over_measurements(rho: &DensityOperator, opts: &OptimizerOptions) -> Result<f64> {
    let (_, db) = rho.bipartite_dims()?;
    let search = minimize_over_measurements(db, opts, |povm| {
        let ch = KrausChannel::measurement(povm)?;
        Ok(decohered_fqsw_report(rho, &ch)?.loss)
    })?;
    Ok(search.min_value)
}

struct EntropyProfile {
    s_a: f64,
    i_ab: f64,
    cond_ab: f64,
    coh_info: f64,
}

fn profile(rho: &DensityOperator) -> Result<EntropyProfile> {
    Ok(EntropyProfile {
        s_a: von_neumann_entropy(&rho.side_marginal(Side::A)?)?,
        i_ab: mutual_information(rho)?,
        cond_ab: conditional_entropy(rho, Side::B)?,
        coh_info: coherent_information(rho)?,
    })
}

/// Noisy teleportation: classical communication is free, the yield is the
/// coherent information, and the loss matches the FQSW loss exactly.
pub fn teleportation_report(rho: &DensityOperator, ch: &KrausChannel) -> Result<ProtocolReport> {
    let primed = decohere_b(rho, ch)?;
    let p = profile(rho)?;
    let pd = profile(&primed)?;
    let net_gain = p.coh_info;
    let net_gain_decohered = pd.coh_info;
    let loss = net_gain - net_gain_decohered;
    let fqsw_loss = decohered_fqsw_report(rho, ch)?.loss;
    if (loss - fqsw_loss).abs() > 1e-12 {
        return Err(Error::Inconsistent(format!(
            "teleportation loss {loss} deviates from FQSW loss {fqsw_loss}"
        )));
    }
    Ok(ProtocolReport {
        protocol: Protocol::Teleport,
        coherent_cost: ResourceVector::cbits(p.i_ab),
        coherent_yield: ResourceVector::qbits(p.coh_info),
        decohered_cost: ResourceVector::cbits(pd.i_ab),
        decohered_yield: ResourceVector::qbits(pd.coh_info),
        net_gain,
        net_gain_decohered,
        loss,
    })
}

/// Noisy super-dense coding: S(A) qubits buy I(A:B) cbits; the loss is the
/// drop in classical capacity and S(A) is untouched by decoherence on B.
pub fn dense_coding_report(rho: &DensityOperator, ch: &KrausChannel) -> Result<ProtocolReport> {
    let primed = decohere_b(rho, ch)?;
    let p = profile(rho)?;
    let pd = profile(&primed)?;
    if (p.s_a - pd.s_a).abs() > 1e-9 {
        return Err(Error::Inconsistent(format!(
            "S(A) changed under decoherence on B: {} vs {}",
            p.s_a, pd.s_a
        )));
    }
    let loss = p.i_ab - pd.i_ab;
    Ok(ProtocolReport {
        protocol: Protocol::DenseCode,
        coherent_cost: ResourceVector::qbits(p.s_a),
        coherent_yield: ResourceVector::cbits(p.i_ab),
        decohered_cost: ResourceVector::qbits(pd.s_a),
        decohered_yield: ResourceVector::cbits(pd.i_ab),
        net_gain: p.i_ab - p.s_a,
        net_gain_decohered: pd.i_ab - pd.s_a,
        loss,
    })
}

/// One-way entanglement distillation: I(A>B) ebits per copy; the classical
/// overhead I(A:R) is tracked but free.
pub fn distillation_report(rho: &DensityOperator, ch: &KrausChannel) -> Result<ProtocolReport> {
    let primed = decohere_b(rho, ch)?;
    let p = profile(rho)?;
    let pd = profile(&primed)?;
    let cost = fqsw_report(rho)?.cost_qubits * 2.0; // I(A:R) cbits
    let cost_d = fqsw_report(&primed)?.cost_qubits * 2.0;
    Ok(ProtocolReport {
        protocol: Protocol::Distill,
        coherent_cost: ResourceVector::cbits(cost),
        coherent_yield: ResourceVector::ebits(p.coh_info),
        decohered_cost: ResourceVector::cbits(cost_d),
        decohered_yield: ResourceVector::ebits(pd.coh_info),
        net_gain: p.coh_info,
        net_gain_decohered: pd.coh_info,
        loss: p.coh_info - pd.coh_info,
    })
}

/// State merging: S(A|B) qubits plus I(A:B) cbits move Alice's share to Bob;
/// negative cost means distilled ebits. The loss is the markup in quantum
/// communication.
pub fn merging_report(rho: &DensityOperator, ch: &KrausChannel) -> Result<ProtocolReport> {
    let primed = decohere_b(rho, ch)?;
    let p = profile(rho)?;
    let pd = profile(&primed)?;
    let net_gain = -p.cond_ab;
    let net_gain_decohered = -pd.cond_ab;
    Ok(ProtocolReport {
        protocol: Protocol::Merge,
        coherent_cost: ResourceVector {
            qbits_a_to_b: p.cond_ab,
            cbits_a_to_b: p.i_ab,
            ebits: 0.0,
        },
        coherent_yield: ResourceVector::ebits((-p.cond_ab).max(0.0)),
        decohered_cost: ResourceVector {
            qbits_a_to_b: pd.cond_ab,
            cbits_a_to_b: pd.i_ab,
            ebits: 0.0,
        },
        decohered_yield: ResourceVector::ebits((-pd.cond_ab).max(0.0)),
        net_gain,
        net_gain_decohered,
        loss: net_gain - net_gain_decohered,
    })
}

/// Dispatches on the protocol name.
pub fn protocol_report(
    protocol: Protocol,
    rho: &DensityOperator,
    ch: &KrausChannel,
) -> Result<ProtocolReport> {
    match protocol {
        Protocol::Fqsw => decohered_fqsw_report(rho, ch),
        Protocol::Teleport => teleportation_report(rho, ch),
        Protocol::DenseCode => dense_coding_report(rho, ch),
        Protocol::Distill => distillation_report(rho, ch),
        Protocol::Merge => merging_report(rho, ch),
    }
}
