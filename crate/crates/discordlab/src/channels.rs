//! CPTP maps in Kraus form applied to a chosen subsystem, plus the
//! couple-to-ancilla / apply-unitary / discard dilation of such maps.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::measure::Povm;
use crate::qmat::{basis_vector, vec_inner, vec_norm, vec_outer, ComplexMatrix};
use crate::states::DensityOperator;

const COMPLETENESS_TOL: f64 = 1e-9;
/// Kraus operators with Frobenius norm below this are dropped.
const ZERO_KRAUS_TOL: f64 = 1e-12;

/// CPTP map given by Kraus operators; sum_j K_j^dag K_j = I.
#[derive(Debug, Clone)]
pub struct KrausChannel {
    input_dim: usize,
    output_dim: usize,
    kraus: Vec<ComplexMatrix>,
}

impl KrausChannel {
    pub fn new(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let kraus: Vec<ComplexMatrix> = kraus
            .into_iter()
            .filter(|k| k.frobenius_norm() > ZERO_KRAUS_TOL)
            .collect();
        let first = kraus
            .first()
            .ok_or_else(|| Error::Channel("channel needs at least one nonzero Kraus operator".into()))?;
        let (output_dim, input_dim) = (first.rows(), first.cols());
        if kraus
            .iter()
            .any(|k| k.rows() != output_dim || k.cols() != input_dim)
        {
            return Err(Error::Channel(
                "all Kraus operators must share the same shape".into(),
            ));
        }
        let mut sum = ComplexMatrix::zeros(input_dim, input_dim);
        for k in &kraus {
            sum = sum.add(&k.dagger().multiply(k)?)?;
        }
        let dev = sum.max_abs_diff(&ComplexMatrix::identity(input_dim));
        if dev > COMPLETENESS_TOL {
            return Err(Error::Channel(format!(
                "completeness violated: |sum K^dag K - I| = {dev:.3e}"
            )));
        }
        Ok(Self {
            input_dim,
            output_dim,
            kraus,
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            input_dim: dim,
            output_dim: dim,
            kraus: vec![ComplexMatrix::identity(dim)],
        }
    }

    /// rho -> (1-p) rho + p I/d via the Heisenberg-Weyl (shift/clock) set.
    pub fn depolarizing(dim: usize, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Parameter(format!(
                "depolarizing strength {p} not in [0,1]"
            )));
        }
        if dim == 0 {
            return Err(Error::Parameter("dimension must be positive".into()));
        }
        let d = dim as f64;
        let mut kraus = Vec::with_capacity(dim * dim);
        for j in 0..dim {
            for k in 0..dim {
                let weight = if j == 0 && k == 0 {
                    (1.0 - p + p / (d * d)).sqrt()
                } else {
                    (p / (d * d)).sqrt()
                };
                if weight <= ZERO_KRAUS_TOL {
                    continue;
                }
                // W_{jk} = X^j Z^k with X|s> = |s+1 mod d>, Z|s> = w^s |s>.
                let mut m = ComplexMatrix::zeros(dim, dim);
                for s in 0..dim {
                    let phase = C64::from_polar(
                        weight,
                        2.0 * std::f64::consts::PI * (k * s) as f64 / d,
                    );
                    m.set((s + j) % dim, s, phase);
                }
                kraus.push(m);
            }
        }
        Self::new(kraus)
    }

    /// Qubit phase damping: off-diagonals shrink by (1-p).
    pub fn dephasing(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Parameter(format!(
                "dephasing strength {p} not in [0,1]"
            )));
        }
        let k0 = ComplexMatrix::identity(2).scale_re((1.0 - p / 2.0).sqrt());
        let k1 = ComplexMatrix::diag(&[1.0, -1.0]).scale_re((p / 2.0).sqrt());
        Self::new(vec![k0, k1])
    }

    /// Qubit amplitude damping with decay probability gamma.
    pub fn amplitude_damping(gamma: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::Parameter(format!(
                "damping strength {gamma} not in [0,1]"
            )));
        }
        let mut k0 = ComplexMatrix::zeros(2, 2);
        k0.set(0, 0, C64::new(1.0, 0.0));
        k0.set(1, 1, C64::new((1.0 - gamma).sqrt(), 0.0));
        let mut k1 = ComplexMatrix::zeros(2, 2);
        k1.set(0, 1, C64::new(gamma.sqrt(), 0.0));
        Self::new(vec![k0, k1])
    }

    /// Measurement channel in dephasing-in-projector-basis form: the POVM is
    /// fine-grained to rank-1, lifted through its Neumark isometry V, and the
    /// channel sends sigma to sum_j |j><j| V sigma V^dag |j><j|, keeping the
    /// classical record in the measured subsystem. Output dimension is the
    /// number of rank-1 outcomes.
    pub fn measurement(povm: &Povm) -> Result<Self> {
        let (fine, _) = povm.fine_grain()?;
        let ext = fine.neumark()?;
        let n = ext.isometry.rows();
        let d = ext.isometry.cols();
        let kraus = (0..n)
            .map(|j| {
                let mut k = ComplexMatrix::zeros(n, d);
                for col in 0..d {
                    k.set(j, col, ext.isometry.get(j, col));
                }
                k
            })
            .collect();
        Self::new(kraus)
    }

    /// Haar-style random channel: the Kraus operators of a random isometry
    /// into system (x) environment. Deterministic for a given seed.
    pub fn random(dim: usize, kraus_count: usize, seed: u64) -> Result<Self> {
        if dim == 0 || kraus_count == 0 {
            return Err(Error::Parameter(
                "dimension and Kraus count must be positive".into(),
            ));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rows = dim * kraus_count;
        // Ginibre columns, then modified Gram-Schmidt.
        let mut cols: Vec<Vec<C64>> = (0..dim)
            .map(|_| {
                (0..rows)
                    .map(|_| {
                        C64::new(
                            rng.sample(rand_distr::StandardNormal),
                            rng.sample(rand_distr::StandardNormal),
                        )
                    })
                    .collect()
            })
            .collect();
        for s in 0..dim {
            for _pass in 0..2 {
                for t in 0..s {
                    let proj = vec_inner(&cols[t], &cols[s]);
                    let prev = cols[t].clone();
                    for (x, y) in cols[s].iter_mut().zip(&prev) {
                        *x -= proj * y;
                    }
                }
            }
            let norm = vec_norm(&cols[s]);
            for x in &mut cols[s] {
                *x /= norm;
            }
        }
        let kraus = (0..kraus_count)
            .map(|j| {
                let mut k = ComplexMatrix::zeros(dim, dim);
                for t in 0..dim {
                    for s in 0..dim {
                        k.set(t, s, cols[s][t * kraus_count + j]);
                    }
                }
                k
            })
            .collect();
        Self::new(kraus)
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn output_dim(&self) -> usize {
        self.output_dim
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    /// Applies the channel to one subsystem of a multipartite state.
    pub fn apply(&self, rho: &DensityOperator, target: usize) -> Result<DensityOperator> {
        let dims = rho.dims();
        if target >= dims.len() {
            return Err(Error::DimMismatch(format!(
                "target subsystem {target} out of range for dims {dims:?}"
            )));
        }
        if dims[target] != self.input_dim {
            return Err(Error::DimMismatch(format!(
                "channel input dimension {} does not match subsystem {target} dimension {}",
                self.input_dim, dims[target]
            )));
        }
        let before: usize = dims[..target].iter().product();
        let after: usize = dims[target + 1..].iter().product();
        let i_before = ComplexMatrix::identity(before);
        let i_after = ComplexMatrix::identity(after);
        let mut out: Option<ComplexMatrix> = None;
        for k in &self.kraus {
            let embedded = i_before.tensor(k)?.tensor(&i_after)?;
            let term = embedded
                .multiply(rho.mat())?
                .multiply(&embedded.dagger())?;
            out = Some(match out {
                Some(acc) => acc.add(&term)?,
                None => term,
            });
        }
        let mut new_dims = dims.to_vec();
        new_dims[target] = self.output_dim;
        DensityOperator::new(new_dims, out.unwrap())
    }

    /// Stinespring dilation: a unitary on system (x) ancilla (ancilla is the
    /// faster index, starting in |0>) that reproduces the channel after the
    /// ancilla is discarded. Requires a square channel.
    pub fn dilate(&self) -> Result<Dilation> {
        if self.input_dim != self.output_dim {
            return Err(Error::Channel(
                "dilation requires equal input and output dimensions".into(),
            ));
        }
        let d = self.input_dim;
        let m = self.kraus.len();
        let total = d * m;
        // Columns (s, ancilla=0) are fixed by the isometry V|s> = sum_j K_j|s> (x) |j>.
        let mut columns: Vec<Option<Vec<C64>>> = vec![None; total];
        for s in 0..d {
            let mut col = vec![C64::new(0.0, 0.0); total];
            for (j, k) in self.kraus.iter().enumerate() {
                for t in 0..d {
                    col[t * m + j] = k.get(t, s);
                }
            }
            columns[s * m] = Some(col);
        }
        // Complete with canonical basis vectors, deterministic order,
        // two-pass re-orthogonalization.
        let mut cand = 0usize;
        for slot in 0..total {
            if columns[slot].is_some() {
                continue;
            }
            loop {
                if cand >= total {
                    return Err(Error::Inconsistent(
                        "ran out of candidates completing the dilation unitary".into(),
                    ));
                }
                let mut v = basis_vector(total, cand);
                cand += 1;
                for _pass in 0..2 {
                    for filled in columns.iter().flatten() {
                        let proj = vec_inner(filled, &v);
                        for (x, y) in v.iter_mut().zip(filled) {
                            *x -= proj * y;
                        }
                    }
                }
                let norm = vec_norm(&v);
                if norm > 1e-3 {
                    for x in &mut v {
                        *x /= norm;
                    }
                    columns[slot] = Some(v);
                    break;
                }
            }
        }
        let mut unitary = ComplexMatrix::zeros(total, total);
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col.as_ref().unwrap().iter().enumerate() {
                unitary.set(i, j, *x);
            }
        }
        let dev = unitary
            .dagger()
            .multiply(&unitary)?
            .max_abs_diff(&ComplexMatrix::identity(total));
        if dev > 1e-9 {
            return Err(Error::Inconsistent(format!(
                "dilation unitary deviates from unitarity by {dev:.3e}"
            )));
        }
        Ok(Dilation {
            system_dim: d,
            ancilla_dim: m,
            unitary,
            ancilla_start: basis_vector(m, 0),
        })
    }
}

/// Unitary model of a channel: couple the last subsystem to a fresh ancilla
/// in |0>, apply the unitary, and (optionally) discard the ancilla.
#[derive(Debug, Clone)]
pub struct Dilation {
    system_dim: usize,
    pub ancilla_dim: usize,
    pub unitary: ComplexMatrix,
    pub ancilla_start: Vec<C64>,
}

impl Dilation {
    pub fn system_dim(&self) -> usize {
        self.system_dim
    }

    /// U (rho (x) |0><0|) U^dag, ancilla kept as a trailing subsystem.
    /// The channel input must be the last subsystem of `rho`.
    pub fn apply_keep_ancilla(&self, rho: &DensityOperator) -> Result<DensityOperator> {
        let dims = rho.dims();
        let last = *dims.last().unwrap();
        if last != self.system_dim {
            return Err(Error::DimMismatch(format!(
                "dilation acts on dimension {} but the last subsystem has dimension {last}",
                self.system_dim
            )));
        }
        let ancilla = vec_outer(&self.ancilla_start, &self.ancilla_start);
        let joint = rho.mat().tensor(&ancilla)?;
        let spectators: usize = dims[..dims.len() - 1].iter().product();
        let embedded = ComplexMatrix::identity(spectators).tensor(&self.unitary)?;
        let evolved = embedded.multiply(&joint)?.multiply(&embedded.dagger())?;
        let mut new_dims = dims.to_vec();
        new_dims.push(self.ancilla_dim);
        DensityOperator::new(new_dims, evolved)
    }

    /// Tr_C[ U (rho (x) |0><0|) U^dag ]: the channel action itself.
    pub fn apply(&self, rho: &DensityOperator) -> Result<DensityOperator> {
        let joint = self.apply_keep_ancilla(rho)?;
        let keep: Vec<usize> = (0..joint.dims().len() - 1).collect();
        joint.marginal(&keep)
    }
}
