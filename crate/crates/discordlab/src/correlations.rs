//! Entropic quantities in bits: Shannon and von Neumann entropy, mutual
//! information, conditional entropies, classical correlation, and quantum
//! discord with its measurement optimizer.

use crate::error::{Error, Result};
use crate::measure::{measure_side, Povm, WEIGHT_TOL};
use crate::optimize::{
    nelder_mead, povm_from_isometry_params, projective_povm_from_params, restart_points,
    NelderMeadOptions,
};
use crate::qmat::ComplexMatrix;
use crate::states::{DensityOperator, Side};

/// Eigenvalues in [-1e-12, 0) are clipped to zero before logs; below -1e-9 a
/// genuine positivity failure is reported instead.
const CLIP_TOL: f64 = 1e-12;
const PSD_FAIL: f64 = -1e-9;

/// Shannon entropy of a probability distribution, in bits; 0 log 0 = 0.
pub fn shannon_entropy(probs: &[f64]) -> Result<f64> {
    if probs.iter().any(|&p| !p.is_finite() || p < -1e-9) {
        return Err(Error::Distribution(
            "probabilities must be finite and nonnegative".into(),
        ));
    }
    let sum: f64 = probs.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::Distribution(format!(
            "probabilities must sum to 1 (got {sum})"
        )));
    }
    Ok(probs
        .iter()
        .filter(|&&p| p > CLIP_TOL)
        .map(|&p| -p * p.log2())
        .sum())
}

fn spectrum_entropy(mat: &ComplexMatrix) -> Result<f64> {
    let eig = mat.hermitian_eig()?;
    let mut acc = 0.0;
    for &l in &eig.eigenvalues {
        if l < PSD_FAIL {
            return Err(Error::State(format!(
                "positivity violated inside entropy: eigenvalue {l:.3e}"
            )));
        }
        let l = l.clamp(0.0, 1.0);
        if l > CLIP_TOL {
            acc -= l * l.log2();
        }
    }
    Ok(acc)
}

/// Von Neumann entropy S(rho) in bits.
pub fn von_neumann_entropy(rho: &DensityOperator) -> Result<f64> {
    spectrum_entropy(rho.mat())
}

/// I(A:B) = S(A) + S(B) - S(AB) for a bipartite state.
pub fn mutual_information(rho: &DensityOperator) -> Result<f64> {
    let s_a = von_neumann_entropy(&rho.side_marginal(Side::A)?)?;
    let s_b = von_neumann_entropy(&rho.side_marginal(Side::B)?)?;
    let s_ab = von_neumann_entropy(rho)?;
    Ok(s_a + s_b - s_ab)
}

/// S(X|given) = S(AB) - S(given side); may be negative for entangled states.
pub fn conditional_entropy(rho: &DensityOperator, given: Side) -> Result<f64> {
    let s_ab = von_neumann_entropy(rho)?;
    let s_given = von_neumann_entropy(&rho.side_marginal(given)?)?;
    Ok(s_ab - s_given)
}

/// Coherent information I(A>B) = -S(A|B).
pub fn coherent_information(rho: &DensityOperator) -> Result<f64> {
    Ok(-conditional_entropy(rho, Side::B)?)
}

/// Measured conditional entropy sum_i p_i S(rho_{other|i}) for a POVM on the
/// given side.
pub fn measured_conditional_entropy(
    rho: &DensityOperator,
    povm: &Povm,
    side: Side,
) -> Result<f64> {
    let ensemble = measure_side(rho, povm, side)?;
    let mut acc = 0.0;
    for (p, state) in ensemble.supported() {
        if p >= WEIGHT_TOL {
            acc += p * von_neumann_entropy(state)?;
        }
    }
    Ok(acc)
}

/// Discord for a fixed, non-optimized measurement:
/// S~_Pi(other|side) - S(other|side).
pub fn zurek_discord(rho: &DensityOperator, povm: &Povm, side: Side) -> Result<f64> {
    let measured = measured_conditional_entropy(rho, povm, side)?;
    let cond = conditional_entropy(rho, side)?;
    Ok(measured - cond)
}

/// Knobs for the measurement optimizer shared by the discord and yield-loss
/// searches.
#[derive(Debug, Clone)]
pub struct OptimizerOptions {
    /// Multi-start count; the first 8 come from fixed bases, the rest from a
    /// seeded generator.
    pub restarts: usize,
    pub seed: u64,
    /// Also search k-outcome rank-1 POVMs (k in [d, 2d]) beyond projective
    /// measurements.
    pub povm_mode: bool,
    /// Outcome count for POVM mode; defaults to 2d.
    pub povm_elements: Option<usize>,
    /// Largest measured-side dimension the optimizer accepts.
    pub dim_cap: usize,
    pub max_iters: usize,
    pub tol: f64,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        Self {
            restarts: 16,
            seed: 42,
            povm_mode: false,
            povm_elements: None,
            dim_cap: 4,
            max_iters: 2000,
            tol: 1e-9,
        }
    }
}

/// Outcome of the discord optimization.
#[derive(Debug, Clone)]
pub struct DiscordResult {
    /// Discord in bits.
    pub value: f64,
    /// Measurement achieving the reported value.
    pub optimal_measurement: Povm,
    /// (restart index, converged objective) for every restart performed.
    pub optimizer_trace: Vec<(usize, f64)>,
    /// Side that was measured.
    pub direction: Side,
    /// False when the best restart hit the iteration cap instead of the
    /// spread tolerance; the best value found is still reported.
    pub converged: bool,
    /// In POVM mode, how far the k-outcome search dropped below the best
    /// projective measurement (nonnegative up to optimizer slack).
    pub povm_gap: Option<f64>,
}

pub(crate) struct MeasurementSearch {
    pub min_value: f64,
    pub best_povm: Povm,
    pub trace: Vec<(usize, f64)>,
    pub converged: bool,
    pub povm_gap: Option<f64>,
}

/// Minimizes `objective(povm)` over rank-1 measurements on a `dim`-dimensional
/// side: projective bases always, plus k-outcome POVMs in POVM mode.
pub(crate) fn minimize_over_measurements<F>(
    dim: usize,
    opts: &OptimizerOptions,
    mut objective: F,
) -> Result<MeasurementSearch>
where
    F: FnMut(&Povm) -> Result<f64>,
{
    if dim > opts.dim_cap {
        return Err(Error::OptimizerCap {
            dim,
            cap: opts.dim_cap,
        });
    }
    if opts.restarts == 0 {
        return Err(Error::Parameter("optimizer needs at least one restart".into()));
    }
    let nm_opts = NelderMeadOptions {
        max_iters: opts.max_iters,
        tol: opts.tol,
        init_step: 0.25,
    };

    let mut trace = Vec::new();
    let mut best: Option<(f64, Povm, bool)> = None;
    let mut eval_projective = |params: &[f64]| -> f64 {
        match projective_povm_from_params(dim, params)
            .and_then(|povm| objective(&povm).map(|v| (v, povm)))
        {
            Ok((v, _)) => v,
            Err(_) => f64::INFINITY,
        }
    };
    for (idx, start) in restart_points(dim, opts.restarts, opts.seed).iter().enumerate() {
        let r = nelder_mead(&mut eval_projective, start, &nm_opts);
        trace.push((idx, r.value));
        let better = match &best {
            Some((v, _, _)) => r.value < *v,
            None => true,
        };
        if better && r.value.is_finite() {
            let povm = projective_povm_from_params(dim, &r.x)?;
            best = Some((r.value, povm, r.converged));
        }
    }
    let (proj_value, proj_povm, proj_converged) = best.ok_or_else(|| {
        Error::Inconsistent("measurement search produced no finite objective".into())
    })?;

    if !opts.povm_mode {
        return Ok(MeasurementSearch {
            min_value: proj_value,
            best_povm: proj_povm,
            trace,
            converged: proj_converged,
            povm_gap: None,
        });
    }

    let outcomes = opts.povm_elements.unwrap_or(2 * dim);
    if !(dim..=2 * dim).contains(&outcomes) {
        return Err(Error::Parameter(format!(
            "POVM outcome count {outcomes} must lie in [{dim}, {}]",
            2 * dim
        )));
    }
    let mut eval_povm = |params: &[f64]| -> f64 {
        match povm_from_isometry_params(dim, outcomes, params)
            .and_then(|povm| objective(&povm).map(|v| (v, povm)))
        {
            Ok((v, _)) => v,
            Err(_) => f64::INFINITY,
        }
    };
    let offset = trace.len();
    let mut povm_best: Option<(f64, Vec<f64>, bool)> = None;
    for (idx, start) in restart_points(outcomes, opts.restarts, opts.seed ^ 0x9e3779b97f4a7c15)
        .iter()
        .enumerate()
    {
        let r = nelder_mead(&mut eval_povm, start, &nm_opts);
        trace.push((offset + idx, r.value));
        let better = match &povm_best {
            Some((v, _, _)) => r.value < *v,
            None => true,
        };
        if better && r.value.is_finite() {
            povm_best = Some((r.value, r.x.clone(), r.converged));
        }
    }
    // Projective measurements are themselves rank-1 POVMs, so the combined
    // search may only improve on the projective minimum.
    match povm_best {
        Some((v, x, conv)) if v < proj_value => Ok(MeasurementSearch {
            min_value: v,
            best_povm: povm_from_isometry_params(dim, outcomes, &x)?,
            trace,
            converged: conv,
            povm_gap: Some(proj_value - v),
        }),
        _ => Ok(MeasurementSearch {
            min_value: proj_value,
            best_povm: proj_povm,
            trace,
            converged: proj_converged,
            povm_gap: Some(0.0),
        }),
    }
}

fn min_measured_conditional_entropy(
    rho: &DensityOperator,
    side: Side,
    opts: &OptimizerOptions,
) -> Result<MeasurementSearch> {
    let dim = rho.side_dim(side)?;
    minimize_over_measurements(dim, opts, |povm| {
        measured_conditional_entropy(rho, povm, side)
    })
}

/// Classical correlation J = S(other) - min over rank-1 measurements of the
/// measured conditional entropy.
pub fn classical_correlation(
    rho: &DensityOperator,
    side: Side,
    opts: &OptimizerOptions,
) -> Result<f64> {
    let search = min_measured_conditional_entropy(rho, side, opts)?;
    let s_other = von_neumann_entropy(&rho.side_marginal(side.other())?)?;
    Ok(s_other - search.min_value)
}

/// Quantum discord with measurement on `side`:
/// S(side) - S(AB) + min over rank-1 measurements of S~(other|side).
pub fn discord(
    rho: &DensityOperator,
    side: Side,
    opts: &OptimizerOptions,
) -> Result<DiscordResult> {
    let search = min_measured_conditional_entropy(rho, side, opts)?;
    let s_side = von_neumann_entropy(&rho.side_marginal(side)?)?;
    let s_ab = von_neumann_entropy(rho)?;
    Ok(DiscordResult {
        value: s_side - s_ab + search.min_value,
        optimal_measurement: search.best_povm,
        optimizer_trace: search.trace,
        direction: side,
        converged: search.converged,
        povm_gap: search.povm_gap,
    })
}

/// Wootters concurrence of a two-qubit state via the spin-flipped spectrum.
pub fn concurrence_2q(rho: &DensityOperator) -> Result<f64> {
    if rho.dims() != [2, 2] {
        return Err(Error::DimMismatch(format!(
            "concurrence needs a 2x2 qubit pair, got dims {:?}",
            rho.dims()
        )));
    }
    // (Y (x) Y) rho^* (Y (x) Y) written with the real matrix form of Y (x) Y.
    let mut yy = ComplexMatrix::zeros(4, 4);
    yy.set(0, 3, (-1.0).into());
    yy.set(1, 2, 1.0.into());
    yy.set(2, 1, 1.0.into());
    yy.set(3, 0, (-1.0).into());
    let tilde = yy
        .multiply(&rho.mat().conjugate())?
        .multiply(&yy)?;
    // Eigenvalues of rho * tilde equal those of sqrt(rho) tilde sqrt(rho),
    // which is Hermitian PSD and safe for the Jacobi solver.
    let eig = rho.mat().hermitian_eig()?;
    let sqrt_vals: Vec<f64> = eig
        .eigenvalues
        .iter()
        .map(|&l| l.max(0.0).sqrt())
        .collect();
    let sqrt_rho = eig
        .eigenvectors
        .multiply(&ComplexMatrix::diag(&sqrt_vals))?
        .multiply(&eig.eigenvectors.dagger())?;
    let m = sqrt_rho.multiply(&tilde)?.multiply(&sqrt_rho)?;
    let mut lambdas: Vec<f64> = m
        .hermitian_eig()?
        .eigenvalues
        .iter()
        .map(|&l| l.max(0.0).sqrt())
        .collect();
    lambdas.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}
