//! POVMs, rank-1 fine-graining, Neumark extension to orthogonal projectors,
//! and conditional-ensemble extraction from bipartite states.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::qmat::{basis_vector, vec_outer, ComplexMatrix};
use crate::states::{DensityOperator, Side};

/// POVM element weights below this are dropped everywhere; downstream entropy
/// sums use the 0 log 0 = 0 convention for the matching outcomes.
pub const WEIGHT_TOL: f64 = 1e-12;
const PSD_TOL: f64 = -1e-9;
const COMPLETENESS_TOL: f64 = 1e-9;

/// Positive operators summing to the identity.
#[derive(Debug, Clone)]
pub struct Povm {
    dim: usize,
    elements: Vec<ComplexMatrix>,
}

impl Povm {
    pub fn new(dim: usize, elements: Vec<ComplexMatrix>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::Povm("POVM must have at least one element".into()));
        }
        let mut sum = ComplexMatrix::zeros(dim, dim);
        for (i, el) in elements.iter().enumerate() {
            if !el.is_square() || el.rows() != dim {
                return Err(Error::Povm(format!(
                    "element {i} is {}x{}, expected {dim}x{dim}",
                    el.rows(),
                    el.cols()
                )));
            }
            let dev = el.hermitian_deviation();
            if dev > 1e-9 {
                return Err(Error::Povm(format!(
                    "element {i} is not Hermitian (deviation {dev:.3e})"
                )));
            }
            let eig = el.hermitian_eig()?;
            if eig.eigenvalues.iter().any(|&l| l < PSD_TOL) {
                return Err(Error::Povm(format!(
                    "element {i} has negative eigenvalue {:.3e}",
                    eig.eigenvalues.last().unwrap()
                )));
            }
            sum = sum.add(el)?;
        }
        let dev = sum.max_abs_diff(&ComplexMatrix::identity(dim));
        if dev > COMPLETENESS_TOL {
            return Err(Error::Povm(format!(
                "elements do not sum to the identity (deviation {dev:.3e})"
            )));
        }
        Ok(Self { dim, elements })
    }

    /// Projective measurement onto the columns of a unitary.
    pub fn projective_from_unitary(u: &ComplexMatrix) -> Result<Self> {
        if !u.is_square() {
            return Err(Error::Povm("basis matrix must be square".into()));
        }
        let dim = u.rows();
        let elements = (0..dim)
            .map(|j| {
                let col = u.column(j);
                vec_outer(&col, &col)
            })
            .collect();
        Self::new(dim, elements)
    }

    /// Measurement in the computational basis.
    pub fn computational(dim: usize) -> Self {
        let elements = (0..dim)
            .map(|j| {
                let e = basis_vector(dim, j);
                vec_outer(&e, &e)
            })
            .collect();
        Self { dim, elements }
    }

    /// Three symmetric rank-1 elements (2/3)|u_k><u_k| at 120 degrees on the
    /// Bloch equator.
    pub fn trine() -> Self {
        let s = 1.0 / 2f64.sqrt();
        let w = (2.0f64 / 3.0).sqrt();
        let elements = (0..3)
            .map(|k| {
                let phase = C64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 3.0);
                let u = vec![C64::new(w * s, 0.0), phase * (w * s)];
                vec_outer(&u, &u)
            })
            .collect();
        Self { dim: 2, elements }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Splits every element into its rank-1 eigenpieces (weights above
    /// `WEIGHT_TOL`). Returns the refined POVM together with a provenance map
    /// from fine outcome index to the coarse outcome it came from.
    pub fn fine_grain(&self) -> Result<(Povm, Vec<usize>)> {
        let mut elements = Vec::new();
        let mut provenance = Vec::new();
        for (coarse, el) in self.elements.iter().enumerate() {
            let eig = el.hermitian_eig()?;
            for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
                if lambda <= WEIGHT_TOL {
                    continue;
                }
                let mut v = eig.eigenvectors.column(k);
                fix_phase(&mut v);
                elements.push(vec_outer(&v, &v).scale_re(lambda));
                provenance.push(coarse);
            }
        }
        Ok((Povm::new(self.dim, elements)?, provenance))
    }

    /// Neumark extension of a rank-1 POVM: an isometry V with rows
    /// sqrt(w_i) <u_i| into an n-dimensional space where the measurement
    /// becomes projective in the canonical basis.
    pub fn neumark(&self) -> Result<NeumarkExtension> {
        let n = self.elements.len();
        let mut isometry = ComplexMatrix::zeros(n, self.dim);
        for (i, el) in self.elements.iter().enumerate() {
            let eig = el.hermitian_eig()?;
            let lambda = eig.eigenvalues[0];
            if eig.eigenvalues.len() > 1 && eig.eigenvalues[1] > 1e-9 {
                return Err(Error::Povm(format!(
                    "element {i} is not rank-1 (second eigenvalue {:.3e}); fine-grain first",
                    eig.eigenvalues[1]
                )));
            }
            if lambda <= WEIGHT_TOL {
                return Err(Error::Povm(format!("element {i} has negligible weight")));
            }
            let mut u = eig.eigenvectors.column(0);
            fix_phase(&mut u);
            let w = lambda.sqrt();
            for (j, amp) in u.iter().enumerate() {
                isometry.set(i, j, amp.conj() * w);
            }
        }
        Ok(NeumarkExtension {
            projectors: Povm::computational(n),
            isometry,
        })
    }
}

/// Orthogonal projectors on the extended space plus the embedding isometry.
#[derive(Debug, Clone)]
pub struct NeumarkExtension {
    pub projectors: Povm,
    pub isometry: ComplexMatrix,
}

/// Rotates a vector so its first non-negligible amplitude is real positive.
fn fix_phase(v: &mut [C64]) {
    if let Some(lead) = v.iter().find(|z| z.norm() > WEIGHT_TOL) {
        let phase = lead.conj() / lead.norm();
        for z in v.iter_mut() {
            *z *= phase;
        }
    }
}

/// Outcome ensemble produced by measuring one side of a bipartite state.
/// Outcomes with probability below `WEIGHT_TOL` keep probability 0 and carry
/// no conditional state.
#[derive(Debug, Clone)]
pub struct ConditionalEnsemble {
    probs: Vec<f64>,
    states: Vec<Option<DensityOperator>>,
}

impl ConditionalEnsemble {
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn states(&self) -> &[Option<DensityOperator>] {
        &self.states
    }

    pub fn outcome_count(&self) -> usize {
        self.probs.len()
    }

    /// Iterates over outcomes that carry weight.
    pub fn supported(&self) -> impl Iterator<Item = (f64, &DensityOperator)> {
        self.probs
            .iter()
            .zip(&self.states)
            .filter_map(|(&p, s)| s.as_ref().map(|st| (p, st)))
    }

    /// Sum_i p_i rho_i, the unconditioned post-measurement marginal.
    pub fn average_state(&self) -> Result<DensityOperator> {
        let mut iter = self.supported();
        let (p0, s0) = iter
            .next()
            .ok_or_else(|| Error::Povm("ensemble has no supported outcome".into()))?;
        let mut mat = s0.mat().scale_re(p0);
        let dims = s0.dims().to_vec();
        for (p, s) in iter {
            mat = mat.add(&s.mat().scale_re(p))?;
        }
        DensityOperator::new(dims, mat)
    }
}

/// Measures one side of a bipartite state with the given POVM:
/// p_i = Tr[(Pi_i on side) rho], conditional states on the other side.
pub fn measure_side(
    rho: &DensityOperator,
    povm: &Povm,
    side: Side,
) -> Result<ConditionalEnsemble> {
    let (da, db) = rho.bipartite_dims()?;
    let measured_dim = match side {
        Side::A => da,
        Side::B => db,
    };
    if povm.dim() != measured_dim {
        return Err(Error::DimMismatch(format!(
            "POVM dimension {} does not match side {side} dimension {measured_dim}",
            povm.dim()
        )));
    }
    let keep = [side.other().index()];
    let other_dim = match side {
        Side::A => db,
        Side::B => da,
    };
    let mut probs = Vec::with_capacity(povm.len());
    let mut states = Vec::with_capacity(povm.len());
    for el in povm.elements() {
        let embedded = match side {
            Side::A => el.tensor(&ComplexMatrix::identity(db))?,
            Side::B => ComplexMatrix::identity(da).tensor(el)?,
        };
        let weighted = embedded.multiply(rho.mat())?;
        let p = weighted.trace().re;
        if p < -2e-9 {
            return Err(Error::Inconsistent(format!(
                "outcome probability {p:.3e} is negative beyond tolerance"
            )));
        }
        let p = p.max(0.0);
        if p < WEIGHT_TOL {
            probs.push(0.0);
            states.push(None);
            continue;
        }
        let reduced = weighted.partial_trace(rho.dims(), &keep)?;
        let cond = reduced.scale_re(1.0 / p);
        // Symmetrize: Pi rho is not Hermitian entrywise, but its partial
        // trace over the measured side is, up to rounding.
        let cond = cond.add(&cond.dagger())?.scale_re(0.5);
        states.push(Some(DensityOperator::new(vec![other_dim], cond)?));
        probs.push(p);
    }
    Ok(ConditionalEnsemble { probs, states })
}

/// Random POVM with `n_elements` outcomes: Ginibre-positive parts normalized
/// by the inverse square root of their sum. Deterministic for a given seed.
pub fn random_povm(dim: usize, n_elements: usize, seed: u64) -> Result<Povm> {
    if n_elements == 0 {
        return Err(Error::Parameter("POVM needs at least one element".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut raw = Vec::with_capacity(n_elements);
    for _ in 0..n_elements {
        let data: Vec<C64> = (0..dim * dim)
            .map(|_| {
                C64::new(
                    rng.sample(rand_distr::StandardNormal),
                    rng.sample(rand_distr::StandardNormal),
                )
            })
            .collect();
        let g = ComplexMatrix::new(dim, dim, data)?;
        raw.push(g.multiply(&g.dagger())?);
    }
    let mut sum = ComplexMatrix::zeros(dim, dim);
    for g in &raw {
        sum = sum.add(g)?;
    }
    let eig = sum.hermitian_eig()?;
    let inv_sqrt_vals: Vec<f64> = eig
        .eigenvalues
        .iter()
        .map(|&l| 1.0 / l.max(1e-300).sqrt())
        .collect();
    let inv_sqrt = eig
        .eigenvectors
        .multiply(&ComplexMatrix::diag(&inv_sqrt_vals))?
        .multiply(&eig.eigenvectors.dagger())?;
    let elements = raw
        .into_iter()
        .map(|g| inv_sqrt.multiply(&g)?.multiply(&inv_sqrt))
        .collect::<Result<Vec<_>>>()?;
    Povm::new(dim, elements)
}
