//! Dense complex linear algebra for small Hilbert spaces: products, Kronecker
//! products, Hermitian eigendecomposition (cyclic Jacobi), and partial traces.
//!
//! Subsystem convention used everywhere in this crate: subsystem 0 is the
//! leftmost tensor factor and owns the slowest-varying index.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Default ceiling on total Hilbert-space dimension.
pub const DEFAULT_MAX_DIM: usize = 64;

/// Current dimension cap; `DISCORDLAB_MAX_DIM` overrides the default.
pub fn max_dim() -> usize {
    std::env::var("DISCORDLAB_MAX_DIM")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_DIM)
}

fn check_dim_cap(dim: usize) -> Result<()> {
    let cap = max_dim();
    if dim > cap {
        return Err(Error::DimCap { dim, cap });
    }
    Ok(())
}

/// Dense complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimMismatch(format!(
                "entry count {} does not match {rows}x{cols}",
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds from nested rows; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.iter().flatten().copied().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Diagonal matrix from real entries.
    pub fn diag(entries: &[f64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &x) in entries.iter().enumerate() {
            m.data[i * n + i] = C64::new(x, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<C64> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimMismatch(format!(
                "add: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(C64::new(factor, 0.0))
    }

    /// Standard matrix product; `self.cols` must equal `other.rows`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimMismatch(format!(
                "multiply: {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let row_b = &other.data[k * other.cols..(k + 1) * other.cols];
                let row_o = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, b) in row_o.iter_mut().zip(row_b) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).conj();
            }
        }
        out
    }

    pub fn conjugate(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// Kronecker product; the first factor owns the slowest-varying index.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        check_dim_cap(rows.max(cols))?;
        let mut out = Self::zeros(rows, cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        out.data[(i1 * other.rows + i2) * cols + (j1 * other.cols + j2)] =
                            a * other.get(i2, j2);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise deviation from the conjugate transpose.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        dev
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.cols, other.cols);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Partial trace over the subsystems not listed in `keep`.
    ///
    /// `dims` lists subsystem dimensions (subsystem 0 = slowest index); `keep`
    /// must be a nonempty strictly increasing subset of subsystem indices.
    pub fn partial_trace(&self, dims: &[usize], keep: &[usize]) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimMismatch("partial trace of non-square matrix".into()));
        }
        let total: usize = dims.iter().product();
        if total != self.rows {
            return Err(Error::DimMismatch(format!(
                "dims product {total} does not match matrix dimension {}",
                self.rows
            )));
        }
        if keep.is_empty() {
            return Err(Error::Parameter("keep set must be nonempty".into()));
        }
        if keep.windows(2).any(|w| w[0] >= w[1]) || *keep.last().unwrap() >= dims.len() {
            return Err(Error::Parameter(
                "keep set must be strictly increasing subsystem indices".into(),
            ));
        }

        let traced: Vec<usize> = (0..dims.len()).filter(|i| !keep.contains(i)).collect();
        // Stride of subsystem i in the flat index.
        let mut strides = vec![1usize; dims.len()];
        for i in (0..dims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * dims[i + 1];
        }
        let kept_dims: Vec<usize> = keep.iter().map(|&i| dims[i]).collect();
        let kept_total: usize = kept_dims.iter().product();
        let traced_dims: Vec<usize> = traced.iter().map(|&i| dims[i]).collect();
        let traced_total: usize = traced_dims.iter().product::<usize>().max(1);

        // Flat offset of a multi-index over the given subsystems.
        let offset = |subsys: &[usize], subsys_dims: &[usize], mut flat: usize| -> usize {
            let mut off = 0;
            for k in (0..subsys.len()).rev() {
                let digit = flat % subsys_dims[k];
                flat /= subsys_dims[k];
                off += digit * strides[subsys[k]];
            }
            off
        };

        let mut out = Self::zeros(kept_total, kept_total);
        for rk in 0..kept_total {
            let row_base = offset(keep, &kept_dims, rk);
            for ck in 0..kept_total {
                let col_base = offset(keep, &kept_dims, ck);
                let mut acc = C64::new(0.0, 0.0);
                for t in 0..traced_total {
                    let t_off = offset(&traced, &traced_dims, t);
                    acc += self.get(row_base + t_off, col_base + t_off);
                }
                out.set(rk, ck, acc);
            }
        }
        Ok(out)
    }

    /// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
    ///
    /// Converges when the off-diagonal Frobenius norm drops below
    /// 1e-12 * max(1, ||m||_F); errors out after 100*n sweeps.
    pub fn hermitian_eig(&self) -> Result<EigenDecomposition> {
        if !self.is_square() {
            return Err(Error::DimMismatch("eigendecomposition of non-square matrix".into()));
        }
        let deviation = self.hermitian_deviation();
        if deviation > 1e-9 {
            return Err(Error::NotHermitian { deviation });
        }
        let n = self.rows;
        if n == 0 {
            return Err(Error::DimMismatch("empty matrix".into()));
        }

        // Work on the symmetrized copy so input dust cannot bias the sweep.
        let mut a = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = (self.get(i, j) + self.get(j, i).conj()) * 0.5;
                a.set(i, j, v);
            }
        }
        let mut v = Self::identity(n);
        let tol = 1e-12 * a.frobenius_norm().max(1.0);
        let max_sweeps = 100 * n;

        let off_norm = |m: &Self| -> f64 {
            let mut s = 0.0;
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        s += m.get(i, j).norm_sqr();
                    }
                }
            }
            s.sqrt()
        };

        let mut converged = false;
        let mut last_off = off_norm(&a);
        for _sweep in 0..max_sweeps {
            last_off = off_norm(&a);
            if last_off <= tol {
                converged = true;
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a.get(p, q);
                    let r = apq.norm();
                    if r == 0.0 {
                        continue;
                    }
                    let phase = apq / r; // e^{i alpha}
                    let app = a.get(p, p).re;
                    let aqq = a.get(q, q).re;
                    let tau = (aqq - app) / (2.0 * r);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    // Rotation on coordinates (p, q):
                    //   J[p][p]=c, J[p][q]=s, J[q][p]=-s e^{-ia}, J[q][q]=c e^{-ia}
                    let se = phase.conj() * s; // s e^{-ia}
                    let ce = phase.conj() * c; // c e^{-ia}
                    // A <- A J (column update)
                    for k in 0..n {
                        let akp = a.get(k, p);
                        let akq = a.get(k, q);
                        a.set(k, p, akp * c - akq * se);
                        a.set(k, q, akp * s + akq * ce);
                    }
                    // A <- J^dag A (row update); J^dag[p] = (c, -s e^{ia}), J^dag[q] = (s, c e^{ia})
                    let se_r = phase * s;
                    let ce_r = phase * c;
                    for k in 0..n {
                        let apk = a.get(p, k);
                        let aqk = a.get(q, k);
                        a.set(p, k, apk * c - aqk * se_r);
                        a.set(q, k, apk * s + aqk * ce_r);
                    }
                    // V <- V J
                    for k in 0..n {
                        let vkp = v.get(k, p);
                        let vkq = v.get(k, q);
                        v.set(k, p, vkp * c - vkq * se);
                        v.set(k, q, vkp * s + vkq * ce);
                    }
                }
            }
        }
        if !converged && off_norm(&a) > tol {
            return Err(Error::EigNoConvergence {
                sweeps: max_sweeps,
                off_diagonal: last_off,
            });
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| {
            a.get(j, j)
                .re
                .partial_cmp(&a.get(i, i).re)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(i.cmp(&j))
        });
        let eigenvalues: Vec<f64> = order.iter().map(|&i| a.get(i, i).re).collect();
        let mut vectors = Self::zeros(n, n);
        for (col, &src) in order.iter().enumerate() {
            for k in 0..n {
                vectors.set(k, col, v.get(k, src));
            }
        }
        Ok(EigenDecomposition {
            eigenvalues,
            eigenvectors: vectors,
        })
    }
}

/// Result of a Hermitian eigendecomposition; eigenvalues sorted descending,
/// eigenvector k stored in column k.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// Reassembles V diag(lambda) V^dag.
    pub fn reconstruct(&self) -> Result<ComplexMatrix> {
        let d = ComplexMatrix::diag(&self.eigenvalues);
        self.eigenvectors
            .multiply(&d)?
            .multiply(&self.eigenvectors.dagger())
    }
}

/// Inner product <a|b>.
pub fn vec_inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn vec_norm(a: &[C64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Outer product |a><b|.
pub fn vec_outer(a: &[C64], b: &[C64]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(a.len(), b.len());
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            m.set(i, j, x * y.conj());
        }
    }
    m
}

/// Computational basis vector |k> of the given dimension.
pub fn basis_vector(dim: usize, k: usize) -> Vec<C64> {
    let mut v = vec![C64::new(0.0, 0.0); dim];
    v[k] = C64::new(1.0, 0.0);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    pub(crate) fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]])
            .unwrap()
    }

    fn pauli_y() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), c(0.0, 0.0)]])
            .unwrap()
    }

    fn pauli_z() -> ComplexMatrix {
        ComplexMatrix::diag(&[1.0, -1.0])
    }

    fn random_matrix(n: usize, seed: u64) -> ComplexMatrix {
        // Small deterministic pseudo-random fill, enough for algebra tests.
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
        let mut next = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 33) as f64 / (1u64 << 31) as f64) - 1.0
        };
        let data = (0..n * n).map(|_| c(next(), next())).collect();
        ComplexMatrix::new(n, n, data).unwrap()
    }

    fn random_hermitian(n: usize, seed: u64) -> ComplexMatrix {
        let m = random_matrix(n, seed);
        m.add(&m.dagger()).unwrap().scale_re(0.5)
    }

    #[test]
    fn identity_multiply_is_noop() {
        let m = random_matrix(3, 7);
        let i3 = ComplexMatrix::identity(3);
        assert!(i3.multiply(&m).unwrap().max_abs_diff(&m) < 1e-15);
    }

    #[test]
    fn pauli_x_squares_to_identity() {
        let x = pauli_x();
        let prod = x.multiply(&x).unwrap();
        assert!(prod.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);
    }

    #[test]
    fn pauli_x_times_y_is_i_z() {
        let expect = pauli_z().scale(c(0.0, 1.0));
        let prod = pauli_x().multiply(&pauli_y()).unwrap();
        assert!(prod.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn multiply_rejects_mismatched_dims() {
        let a = ComplexMatrix::zeros(2, 3);
        let b = ComplexMatrix::zeros(2, 2);
        assert!(matches!(a.multiply(&b), Err(Error::DimMismatch(_))));
    }

    #[test]
    fn tensor_of_identities() {
        let i2 = ComplexMatrix::identity(2);
        let t = i2.tensor(&i2).unwrap();
        assert!(t.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);
    }

    #[test]
    fn tensor_diag_ordering() {
        let a = ComplexMatrix::diag(&[1.0, 0.0]);
        let b = ComplexMatrix::diag(&[0.0, 1.0]);
        let t = a.tensor(&b).unwrap();
        assert!(t.max_abs_diff(&ComplexMatrix::diag(&[0.0, 1.0, 0.0, 0.0])) < 1e-15);
    }

    #[test]
    fn tensor_respects_dimension_cap() {
        let big = ComplexMatrix::identity(16);
        let r = big.tensor(&ComplexMatrix::identity(8));
        assert!(matches!(r, Err(Error::DimCap { .. })));
    }

    #[test]
    fn eig_sorted_descending() {
        let m = ComplexMatrix::diag(&[3.0, 1.0, 2.0]);
        let e = m.hermitian_eig().unwrap();
        assert_eq!(e.eigenvalues.len(), 3);
        assert!((e.eigenvalues[0] - 3.0).abs() < 1e-12);
        assert!((e.eigenvalues[1] - 2.0).abs() < 1e-12);
        assert!((e.eigenvalues[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eig_of_pauli_x() {
        let e = pauli_x().hermitian_eig().unwrap();
        assert!((e.eigenvalues[0] - 1.0).abs() < 1e-12);
        assert!((e.eigenvalues[1] + 1.0).abs() < 1e-12);
        let plus = vec![c(1.0 / 2f64.sqrt(), 0.0), c(1.0 / 2f64.sqrt(), 0.0)];
        let minus = vec![c(1.0 / 2f64.sqrt(), 0.0), c(-1.0 / 2f64.sqrt(), 0.0)];
        let v0 = e.eigenvectors.column(0);
        let v1 = e.eigenvectors.column(1);
        assert!((vec_inner(&plus, &v0).norm() - 1.0).abs() < 1e-10);
        assert!((vec_inner(&minus, &v1).norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn eig_reconstructs_random_hermitian() {
        for seed in 0..10 {
            let h = random_hermitian(6, seed);
            let e = h.hermitian_eig().unwrap();
            assert!(e.reconstruct().unwrap().max_abs_diff(&h) < 1e-9);
            let vtv = e.eigenvectors.dagger().multiply(&e.eigenvectors).unwrap();
            assert!(vtv.max_abs_diff(&ComplexMatrix::identity(6)) < 1e-10);
        }
    }

    #[test]
    fn eig_of_psd_stays_nonnegative() {
        for seed in 0..10 {
            let m = random_matrix(5, 100 + seed);
            let psd = m.multiply(&m.dagger()).unwrap();
            let e = psd.hermitian_eig().unwrap();
            assert!(e.eigenvalues.iter().all(|&l| l >= -1e-10));
        }
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let m = random_matrix(3, 5);
        assert!(matches!(m.hermitian_eig(), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn partial_trace_of_product_state() {
        let a = random_hermitian(2, 11);
        let b = random_hermitian(3, 12);
        let ab = a.tensor(&b).unwrap();
        let reduced = ab.partial_trace(&[2, 3], &[0]).unwrap();
        let expect = a.scale(b.trace());
        assert!(reduced.max_abs_diff(&expect) < 1e-12);
    }

    #[test]
    fn partial_trace_of_bell_state() {
        let s = 1.0 / 2f64.sqrt();
        let phi = vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)];
        let rho = vec_outer(&phi, &phi);
        let reduced = rho.partial_trace(&[2, 2], &[1]).unwrap();
        assert!(reduced.max_abs_diff(&ComplexMatrix::identity(2).scale_re(0.5)) < 1e-12);
    }

    #[test]
    fn partial_trace_of_ghz_keeps_classical_mixture() {
        let s = 1.0 / 2f64.sqrt();
        let mut ghz = vec![c(0.0, 0.0); 8];
        ghz[0] = c(s, 0.0);
        ghz[7] = c(s, 0.0);
        let rho = vec_outer(&ghz, &ghz);
        let reduced = rho.partial_trace(&[2, 2, 2], &[0, 1]).unwrap();
        let expect = ComplexMatrix::diag(&[0.5, 0.0, 0.0, 0.5]);
        assert!(reduced.max_abs_diff(&expect) < 1e-12);
    }

    #[test]
    fn partial_trace_rejects_bad_args() {
        let m = ComplexMatrix::identity(4);
        assert!(m.partial_trace(&[2, 3], &[0]).is_err());
        assert!(m.partial_trace(&[2, 2], &[]).is_err());
        assert!(m.partial_trace(&[2, 2], &[1, 0]).is_err());
        assert!(m.partial_trace(&[2, 2], &[2]).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn multiply_is_associative(seed in 0u64..1000, n in 2usize..=8) {
            let a = random_matrix(n, seed);
            let b = random_matrix(n, seed.wrapping_add(1));
            let cm = random_matrix(n, seed.wrapping_add(2));
            let left = a.multiply(&b).unwrap().multiply(&cm).unwrap();
            let right = a.multiply(&b.multiply(&cm).unwrap()).unwrap();
            prop_assert!(left.max_abs_diff(&right) < 1e-12);
        }

        #[test]
        fn tensor_mixed_product_law(seed in 0u64..1000) {
            let a = random_matrix(2, seed);
            let b = random_matrix(2, seed.wrapping_add(10));
            let cm = random_matrix(2, seed.wrapping_add(20));
            let d = random_matrix(2, seed.wrapping_add(30));
            let lhs = a.tensor(&b).unwrap().multiply(&cm.tensor(&d).unwrap()).unwrap();
            let rhs = a.multiply(&cm).unwrap().tensor(&b.multiply(&d).unwrap()).unwrap();
            prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        }

        #[test]
        fn partial_trace_linear_and_trace_preserving(seed in 0u64..1000) {
            let a = random_matrix(6, seed);
            let b = random_matrix(6, seed.wrapping_add(5));
            let sum = a.add(&b).unwrap();
            let ta = a.partial_trace(&[2, 3], &[1]).unwrap();
            let tb = b.partial_trace(&[2, 3], &[1]).unwrap();
            let tsum = sum.partial_trace(&[2, 3], &[1]).unwrap();
            prop_assert!(tsum.max_abs_diff(&ta.add(&tb).unwrap()) < 1e-12);
            prop_assert!((tsum.trace() - sum.trace()).norm() < 1e-12);
        }
    }
}
