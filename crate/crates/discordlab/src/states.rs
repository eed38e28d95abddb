//! Density operators on multipartite systems: named states, seeded random
//! ensembles, purification, and distance measures.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::qmat::{basis_vector, max_dim, vec_norm, vec_outer, ComplexMatrix};

const HERMITIAN_TOL: f64 = 1e-9;
const TRACE_TOL: f64 = 1e-9;
const PSD_TOL: f64 = -1e-9;
/// Eigenvalues below this are treated as zero when computing ranks.
const RANK_TOL: f64 = 1e-10;

/// Which half of a bipartite system an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn index(self) -> usize {
        match self {
            Side::A => 0,
            Side::B => 1,
        }
    }

    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::A => write!(f, "A"),
            Side::B => write!(f, "B"),
        }
    }
}

/// A quantum state: PSD, trace-one Hermitian matrix plus a subsystem
/// dimension list describing its tensor-factor structure.
#[derive(Debug, Clone)]
pub struct DensityOperator {
    dims: Vec<usize>,
    mat: ComplexMatrix,
}

impl DensityOperator {
    pub fn new(dims: Vec<usize>, mat: ComplexMatrix) -> Result<Self> {
        if dims.is_empty() || dims.iter().any(|&d| d == 0) {
            return Err(Error::State("dims must be nonempty and positive".into()));
        }
        let total: usize = dims.iter().product();
        let cap = max_dim();
        if total > cap {
            return Err(Error::DimCap { dim: total, cap });
        }
        if !mat.is_square() || mat.rows() != total {
            return Err(Error::State(format!(
                "matrix is {}x{} but dims {:?} require {total}x{total}",
                mat.rows(),
                mat.cols(),
                dims
            )));
        }
        let dev = mat.hermitian_deviation();
        if dev > HERMITIAN_TOL {
            return Err(Error::State(format!(
                "Hermiticity violated: max |rho - rho^dag| = {dev:.3e}"
            )));
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::State(format!(
                "trace must be 1 (got {} + {}i)",
                tr.re, tr.im
            )));
        }
        let eig = mat.hermitian_eig()?;
        if let Some(&min) = eig
            .eigenvalues
            .iter()
            .min_by(|a, b| a.partial_cmp(b).unwrap())
        {
            if min < PSD_TOL {
                return Err(Error::State(format!(
                    "positivity violated: smallest eigenvalue {min:.3e}"
                )));
            }
        }
        Ok(Self { dims, mat })
    }

    pub fn maximally_mixed(dims: &[usize]) -> Result<Self> {
        let total: usize = dims.iter().product();
        let mat = ComplexMatrix::identity(total).scale_re(1.0 / total as f64);
        Self::new(dims.to_vec(), mat)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn mat(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn total_dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn is_bipartite(&self) -> bool {
        self.dims.len() == 2
    }

    /// Dimensions of the two halves; errors unless exactly bipartite.
    pub fn bipartite_dims(&self) -> Result<(usize, usize)> {
        if !self.is_bipartite() {
            return Err(Error::DimMismatch(format!(
                "expected a bipartite state, got {} subsystems",
                self.dims.len()
            )));
        }
        Ok((self.dims[0], self.dims[1]))
    }

    pub fn side_dim(&self, side: Side) -> Result<usize> {
        let (da, db) = self.bipartite_dims()?;
        Ok(match side {
            Side::A => da,
            Side::B => db,
        })
    }

    /// Reduced state on the listed subsystems (strictly increasing indices).
    pub fn marginal(&self, keep: &[usize]) -> Result<DensityOperator> {
        let mat = self.mat.partial_trace(&self.dims, keep)?;
        let dims = keep.iter().map(|&i| self.dims[i]).collect();
        DensityOperator::new(dims, mat)
    }

    /// Marginal of one side of a bipartite state.
    pub fn side_marginal(&self, side: Side) -> Result<DensityOperator> {
        self.bipartite_dims()?;
        self.marginal(&[side.index()])
    }

    /// Reinterprets the tensor structure; the new dims must multiply to the
    /// same total dimension. Useful for grouping subsystems into a
    /// bipartition, e.g. [2,2,2] viewed as [2,4].
    pub fn with_dims(&self, dims: Vec<usize>) -> Result<DensityOperator> {
        let total: usize = dims.iter().product();
        if total != self.total_dim() {
            return Err(Error::DimMismatch(format!(
                "cannot view a {}-dimensional state as dims {:?}",
                self.total_dim(),
                dims
            )));
        }
        Ok(DensityOperator {
            dims,
            mat: self.mat.clone(),
        })
    }

    /// Eigenvalues of the state, descending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(self.mat.hermitian_eig()?.eigenvalues)
    }

    /// Number of eigenvalues above the rank threshold.
    pub fn rank(&self) -> Result<usize> {
        Ok(self
            .eigenvalues()?
            .iter()
            .filter(|&&l| l > RANK_TOL)
            .count())
    }
}

/// Unit-norm state vector with a subsystem dimension list.
#[derive(Debug, Clone)]
pub struct PureState {
    dims: Vec<usize>,
    amplitudes: Vec<C64>,
}

impl PureState {
    pub fn new(dims: Vec<usize>, amplitudes: Vec<C64>) -> Result<Self> {
        let total: usize = dims.iter().product();
        if total != amplitudes.len() {
            return Err(Error::DimMismatch(format!(
                "amplitude count {} does not match dims {:?}",
                amplitudes.len(),
                dims
            )));
        }
        let norm = vec_norm(&amplitudes);
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::State(format!(
                "pure state norm must be 1 (got {norm})"
            )));
        }
        Ok(Self { dims, amplitudes })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn to_density(&self) -> Result<DensityOperator> {
        let total = self.amplitudes.len();
        let cap = max_dim();
        if total > cap {
            return Err(Error::DimCap { dim: total, cap });
        }
        DensityOperator::new(
            self.dims.clone(),
            vec_outer(&self.amplitudes, &self.amplitudes),
        )
    }
}

/// One of the four Bell states on two qubits; k=0 is (|00> + |11>)/sqrt(2),
/// then the phase flip, swap, and singlet in the usual order.
pub fn bell_state(k: usize) -> Result<PureState> {
    let s = 1.0 / 2f64.sqrt();
    let amps = match k {
        0 => vec![s, 0.0, 0.0, s],
        1 => vec![s, 0.0, 0.0, -s],
        2 => vec![0.0, s, s, 0.0],
        3 => vec![0.0, s, -s, 0.0],
        _ => return Err(Error::Parameter(format!("Bell index {k} not in 0..=3"))),
    };
    PureState::new(
        vec![2, 2],
        amps.into_iter().map(|x| C64::new(x, 0.0)).collect(),
    )
}

/// p |Phi+><Phi+| + (1-p) I/4 on two qubits.
pub fn werner(p: f64) -> Result<DensityOperator> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Parameter(format!("werner parameter {p} not in [0,1]")));
    }
    let phi = bell_state(0)?.to_density()?;
    let mixed = ComplexMatrix::identity(4).scale_re((1.0 - p) / 4.0);
    let mat = phi.mat().scale_re(p).add(&mixed)?;
    DensityOperator::new(vec![2, 2], mat)
}

/// Sum_i p_i rho_i (x) |i><i| with the classical register on the given side
/// (mirrored ordering when the classical side is A).
pub fn classical_quantum_state(
    probs: &[f64],
    pointer_dim: usize,
    conditional_states: &[DensityOperator],
    classical_side: Side,
) -> Result<DensityOperator> {
    if probs.is_empty() || probs.len() != conditional_states.len() {
        return Err(Error::Distribution(
            "probability and state lists must be nonempty and equal length".into(),
        ));
    }
    if probs.len() > pointer_dim {
        return Err(Error::Parameter(format!(
            "{} outcomes do not fit a pointer of dimension {pointer_dim}",
            probs.len()
        )));
    }
    validate_distribution(probs)?;
    let dims = conditional_states[0].dims().to_vec();
    if conditional_states.iter().any(|s| s.dims() != dims) {
        return Err(Error::DimMismatch(
            "conditional states must share dimensions".into(),
        ));
    }
    let quantum_dim: usize = dims.iter().product();
    let total = quantum_dim * pointer_dim;
    let mut mat = ComplexMatrix::zeros(total, total);
    for (i, (p, state)) in probs.iter().zip(conditional_states).enumerate() {
        let pointer = vec_outer(&basis_vector(pointer_dim, i), &basis_vector(pointer_dim, i));
        let term = match classical_side {
            Side::B => state.mat().tensor(&pointer)?,
            Side::A => pointer.tensor(state.mat())?,
        };
        mat = mat.add(&term.scale_re(*p))?;
    }
    let out_dims = match classical_side {
        Side::B => {
            let mut d = dims;
            d.push(pointer_dim);
            d
        }
        Side::A => {
            let mut d = vec![pointer_dim];
            d.extend(dims);
            d
        }
    };
    DensityOperator::new(out_dims, mat)
}

fn validate_distribution(probs: &[f64]) -> Result<()> {
    if probs.iter().any(|&p| !(p >= 0.0) || !p.is_finite()) {
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
    Ok(())
}

/// Complex standard normal samples from a seeded counter-based generator.
fn ginibre_vector(len: usize, rng: &mut ChaCha8Rng) -> Vec<C64> {
    (0..len)
        .map(|_| {
            C64::new(
                rng.sample(rand_distr::StandardNormal),
                rng.sample(rand_distr::StandardNormal),
            )
        })
        .collect()
}

/// Induced random state: partial trace of a Haar-random pure state on
/// system (x) rank-dimensional ancilla. Deterministic for a given seed.
pub fn random_density(dims: &[usize], rank: usize, seed: u64) -> Result<DensityOperator> {
    let total: usize = dims.iter().product();
    if rank == 0 || rank > total {
        return Err(Error::Parameter(format!(
            "rank {rank} not in 1..={total}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut psi = ginibre_vector(total * rank, &mut rng);
    let norm = vec_norm(&psi);
    for z in &mut psi {
        *z /= norm;
    }
    // rho[i][j] = sum_k psi[i*rank+k] conj(psi[j*rank+k])
    let mut mat = ComplexMatrix::zeros(total, total);
    for i in 0..total {
        for j in 0..total {
            let mut acc = C64::new(0.0, 0.0);
            for k in 0..rank {
                acc += psi[i * rank + k] * psi[j * rank + k].conj();
            }
            mat.set(i, j, acc);
        }
    }
    DensityOperator::new(dims.to_vec(), mat)
}

/// Minimal purification: appends a reference of dimension rank(rho) so that
/// tracing it out recovers rho.
pub fn purify(rho: &DensityOperator) -> Result<PureState> {
    let eig = rho.mat().hermitian_eig()?;
    let kept: Vec<(f64, usize)> = eig
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &l)| l > RANK_TOL)
        .map(|(i, &l)| (l, i))
        .collect();
    let rank = kept.len().max(1);
    let total = rho.total_dim();
    let mut amps = vec![C64::new(0.0, 0.0); total * rank];
    for (k, &(lambda, col)) in kept.iter().enumerate() {
        let w = lambda.sqrt();
        for i in 0..total {
            amps[i * rank + k] = eig.eigenvectors.get(i, col) * w;
        }
    }
    let norm = vec_norm(&amps);
    for z in &mut amps {
        *z /= norm;
    }
    let mut dims = rho.dims().to_vec();
    dims.push(rank);
    PureState::new(dims, amps)
}

/// Half the trace norm of a - b; lies in [0, 1] for states.
pub fn trace_distance(a: &DensityOperator, b: &DensityOperator) -> Result<f64> {
    if a.dims() != b.dims() {
        return Err(Error::DimMismatch(format!(
            "trace distance between dims {:?} and {:?}",
            a.dims(),
            b.dims()
        )));
    }
    let diff = a.mat().sub(b.mat())?;
    let eig = diff.hermitian_eig()?;
    Ok(0.5 * eig.eigenvalues.iter().map(|l| l.abs()).sum::<f64>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::vec_inner;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn pure_qubit(amps: [f64; 2]) -> DensityOperator {
        let v: Vec<C64> = amps.iter().map(|&x| c(x, 0.0)).collect();
        DensityOperator::new(vec![2], vec_outer(&v, &v)).unwrap()
    }

    #[test]
    fn bell_zero_amplitudes() {
        let s = 1.0 / 2f64.sqrt();
        let b = bell_state(0).unwrap();
        let expect = [c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)];
        for (a, e) in b.amplitudes().iter().zip(expect.iter()) {
            assert!((a - e).norm() < 1e-15);
        }
    }

    #[test]
    fn bell_states_are_orthonormal() {
        for i in 0..4 {
            for j in 0..4 {
                let bi = bell_state(i).unwrap();
                let bj = bell_state(j).unwrap();
                let ip = vec_inner(bi.amplitudes(), bj.amplitudes()).norm();
                if i == j {
                    assert!((ip - 1.0).abs() < 1e-12);
                } else {
                    assert!(ip < 1e-12);
                }
            }
        }
    }

    #[test]
    fn bell_reduced_state_is_maximally_mixed() {
        for k in 0..4 {
            let rho = bell_state(k).unwrap().to_density().unwrap();
            let a = rho.side_marginal(Side::A).unwrap();
            let half = ComplexMatrix::identity(2).scale_re(0.5);
            assert!(a.mat().max_abs_diff(&half) < 1e-12);
        }
    }

    #[test]
    fn bell_index_out_of_range() {
        assert!(bell_state(4).is_err());
    }

    #[test]
    fn werner_endpoints() {
        let w0 = werner(0.0).unwrap();
        assert!(w0
            .mat()
            .max_abs_diff(&ComplexMatrix::identity(4).scale_re(0.25))
            < 1e-15);
        let w1 = werner(1.0).unwrap();
        let phi = bell_state(0).unwrap().to_density().unwrap();
        assert!(w1.mat().max_abs_diff(phi.mat()) < 1e-15);
        assert!(werner(1.5).is_err());
        assert!(werner(-0.1).is_err());
    }

    #[test]
    fn werner_half_spectrum() {
        // Bell-basis diagonalization gives (0.625, 0.125, 0.125, 0.125).
        let evs = werner(0.5).unwrap().eigenvalues().unwrap();
        let expect = [0.625, 0.125, 0.125, 0.125];
        for (a, e) in evs.iter().zip(expect.iter()) {
            assert!((a - e).abs() < 1e-12);
        }
    }

    #[test]
    fn classical_quantum_single_term() {
        let rho0 = pure_qubit([1.0, 0.0]);
        let cq = classical_quantum_state(&[1.0], 2, &[rho0.clone()], Side::B).unwrap();
        let pointer = vec_outer(&basis_vector(2, 0), &basis_vector(2, 0));
        let expect = rho0.mat().tensor(&pointer).unwrap();
        assert!(cq.mat().max_abs_diff(&expect) < 1e-15);
        assert_eq!(cq.dims(), &[2, 2]);
    }

    #[test]
    fn classical_quantum_uniform_identical_states() {
        let sigma = pure_qubit([1.0, 0.0]);
        let cq = classical_quantum_state(
            &[0.5, 0.5],
            2,
            &[sigma.clone(), sigma.clone()],
            Side::B,
        )
        .unwrap();
        let expect = sigma
            .mat()
            .tensor(&ComplexMatrix::identity(2).scale_re(0.5))
            .unwrap();
        assert!(cq.mat().max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn classical_quantum_side_a_mirrors() {
        let rho0 = pure_qubit([1.0, 0.0]);
        let rho1 = pure_qubit([0.0, 1.0]);
        let cq = classical_quantum_state(&[0.25, 0.75], 2, &[rho0, rho1], Side::A).unwrap();
        assert_eq!(cq.dims(), &[2, 2]);
        assert!((cq.mat().get(0, 0).re - 0.25).abs() < 1e-12);
        assert!((cq.mat().get(3, 3).re - 0.75).abs() < 1e-12);
    }

    #[test]
    fn classical_quantum_rejects_bad_probs() {
        let rho0 = pure_qubit([1.0, 0.0]);
        assert!(classical_quantum_state(&[0.5, 0.2], 2, &[rho0.clone(), rho0.clone()], Side::B)
            .is_err());
        assert!(classical_quantum_state(&[-0.5, 1.5], 2, &[rho0.clone(), rho0], Side::B).is_err());
    }

    #[test]
    fn random_density_invariants_and_determinism() {
        let a = random_density(&[2, 2], 4, 7).unwrap();
        let b = random_density(&[2, 2], 4, 7).unwrap();
        assert_eq!(a.mat().as_slice(), b.mat().as_slice());
        let c = random_density(&[2, 2], 4, 8).unwrap();
        assert!(a.mat().max_abs_diff(c.mat()) > 1e-3);
        assert!(random_density(&[2, 2], 0, 1).is_err());
        assert!(random_density(&[2, 2], 5, 1).is_err());
    }

    #[test]
    fn random_density_rank_one_is_pure() {
        let rho = random_density(&[2, 2], 1, 3).unwrap();
        let evs = rho.eigenvalues().unwrap();
        assert!((evs[0] - 1.0).abs() < 1e-10);
        assert!(evs[1].abs() < 1e-10);
    }

    #[test]
    fn purify_pure_state_uses_trivial_reference() {
        let rho = bell_state(0).unwrap().to_density().unwrap();
        let psi = purify(&rho).unwrap();
        assert_eq!(psi.dims(), &[2, 2, 1]);
    }

    #[test]
    fn purify_maximally_mixed_qubit_gives_bell_state() {
        let rho = DensityOperator::maximally_mixed(&[2]).unwrap();
        let psi = purify(&rho).unwrap();
        assert_eq!(psi.dims(), &[2, 2]);
        let bell = bell_state(0).unwrap();
        let overlap = vec_inner(bell.amplitudes(), psi.amplitudes()).norm();
        assert!((overlap - 1.0).abs() < 1e-10);
        let joint = psi.to_density().unwrap();
        let back = joint.marginal(&[0]).unwrap();
        assert!(trace_distance(&back, &rho).unwrap() < 1e-12);
    }

    #[test]
    fn purify_round_trip_random_states() {
        for seed in 0..100u64 {
            let rank = 1 + (seed as usize % 4);
            let rho = random_density(&[2, 2], rank, 1000 + seed).unwrap();
            let psi = purify(&rho).unwrap();
            let joint = psi.to_density().unwrap();
            let keep: Vec<usize> = (0..rho.dims().len()).collect();
            let back = joint.marginal(&keep).unwrap();
            assert!(trace_distance(&back, &rho).unwrap() < 1e-9);
        }
    }

    #[test]
    fn purify_rank3_dim4_round_trip() {
        let rho = random_density(&[4], 3, 42).unwrap();
        let psi = purify(&rho).unwrap();
        assert_eq!(psi.dims(), &[4, 3]);
        let back = psi.to_density().unwrap().marginal(&[0]).unwrap();
        assert!(trace_distance(&back, &rho).unwrap() < 1e-9);
    }

    #[test]
    fn trace_distance_cases() {
        let zero = pure_qubit([1.0, 0.0]);
        let one = pure_qubit([0.0, 1.0]);
        let s = 1.0 / 2f64.sqrt();
        let plus = pure_qubit([s, s]);
        assert!(trace_distance(&zero, &zero).unwrap() < 1e-15);
        assert!((trace_distance(&zero, &one).unwrap() - 1.0).abs() < 1e-12);
        // Eigenvalues of the difference matrix are +-1/sqrt(2).
        let expect = std::f64::consts::FRAC_1_SQRT_2;
        assert!((trace_distance(&zero, &plus).unwrap() - expect).abs() < 1e-12);
        let two = DensityOperator::maximally_mixed(&[4]).unwrap();
        assert!(trace_distance(&zero, &two).is_err());
    }

    #[test]
    fn density_operator_rejects_invalid_input() {
        // Not Hermitian.
        let m = ComplexMatrix::from_rows(&[
            vec![c(0.5, 0.0), c(0.3, 0.1)],
            vec![c(0.1, 0.0), c(0.5, 0.0)],
        ])
        .unwrap();
        assert!(DensityOperator::new(vec![2], m).is_err());
        // Wrong trace.
        let m = ComplexMatrix::diag(&[0.7, 0.7]);
        assert!(DensityOperator::new(vec![2], m).is_err());
        // Negative eigenvalue.
        let m = ComplexMatrix::diag(&[1.5, -0.5]);
        assert!(DensityOperator::new(vec![2], m).is_err());
    }
}
