//! Gradient-free minimization used by the measurement optimizers: a compact
//! Nelder-Mead simplex plus the Givens-rotation parameterization of unitary
//! measurement bases and Neumark-style isometries.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::measure::Povm;
use crate::qmat::{vec_outer, ComplexMatrix};

#[derive(Debug, Clone)]
pub struct NelderMeadOptions {
    pub max_iters: usize,
    /// Converged once the simplex objective spread drops below this.
    pub tol: f64,
    pub init_step: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            max_iters: 2000,
            tol: 1e-9,
            init_step: 0.25,
        }
    }
}

#[derive(Debug, Clone)]
pub struct NelderMeadResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub iters: usize,
    pub converged: bool,
}

/// Classic Nelder-Mead with reflection 1, expansion 2, contraction 1/2 and
/// shrink 1/2.
pub fn nelder_mead<F>(mut f: F, x0: &[f64], opts: &NelderMeadOptions) -> NelderMeadResult
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut p = x0.to_vec();
        p[i] += opts.init_step;
        simplex.push(p);
    }
    let mut values: Vec<f64> = simplex.iter().map(|p| f(p)).collect();

    let mut iters = 0;
    let mut converged = false;
    while iters < opts.max_iters {
        iters += 1;
        // Order best..worst.
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
        let best = order[0];
        let worst = order[n];
        let second_worst = order[n - 1];
        if values[worst] - values[best] <= opts.tol {
            converged = true;
            break;
        }
        // Centroid of all but the worst.
        let mut centroid = vec![0.0; n];
        for &idx in &order[..n] {
            for (c, x) in centroid.iter_mut().zip(&simplex[idx]) {
                *c += x / n as f64;
            }
        }
        let lerp = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> {
            a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
        };
        // Reflection.
        let reflected = lerp(&centroid, &simplex[worst], -1.0);
        let f_r = f(&reflected);
        if f_r < values[best] {
            // Expansion.
            let expanded = lerp(&centroid, &simplex[worst], -2.0);
            let f_e = f(&expanded);
            if f_e < f_r {
                simplex[worst] = expanded;
                values[worst] = f_e;
            } else {
                simplex[worst] = reflected;
                values[worst] = f_r;
            }
        } else if f_r < values[second_worst] {
            simplex[worst] = reflected;
            values[worst] = f_r;
        } else {
            // Contraction, inside or outside.
            let (point, f_p) = if f_r < values[worst] {
                let outside = lerp(&centroid, &simplex[worst], -0.5);
                let v = f(&outside);
                (outside, v)
            } else {
                let inside = lerp(&centroid, &simplex[worst], 0.5);
                let v = f(&inside);
                (inside, v)
            };
            if f_p < values[worst].min(f_r) {
                simplex[worst] = point;
                values[worst] = f_p;
            } else {
                // Shrink towards the best vertex.
                let best_point = simplex[best].clone();
                for idx in 0..=n {
                    if idx == best {
                        continue;
                    }
                    simplex[idx] = lerp(&best_point, &simplex[idx], 0.5);
                    values[idx] = f(&simplex[idx]);
                }
            }
        }
    }
    let (arg, &value) = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .unwrap();
    NelderMeadResult {
        x: simplex[arg].clone(),
        value,
        iters,
        converged,
    }
}

/// Number of real parameters describing a unitary on a `dim`-dimensional
/// space: one (angle, phase) pair per coordinate plane plus `dim` diagonal
/// phases.
pub fn unitary_param_count(dim: usize) -> usize {
    dim * dim
}

/// Builds a unitary from dim^2 real parameters as a product of Givens-style
/// rotations with phases, times a diagonal phase layer.
pub fn unitary_from_params(dim: usize, params: &[f64]) -> Result<ComplexMatrix> {
    let expect = unitary_param_count(dim);
    if params.len() != expect {
        return Err(Error::Parameter(format!(
            "expected {expect} parameters for a {dim}-dimensional unitary, got {}",
            params.len()
        )));
    }
    let pairs = dim * (dim - 1) / 2;
    let mut u = ComplexMatrix::identity(dim);
    let mut idx = 0;
    for i in 0..dim {
        for j in (i + 1)..dim {
            let theta = params[2 * idx];
            let phi = params[2 * idx + 1];
            idx += 1;
            let c = theta.cos();
            let s = theta.sin();
            let e_pos = C64::from_polar(1.0, phi);
            let e_neg = C64::from_polar(1.0, -phi);
            // Column update: M <- M G(i, j, theta, phi).
            for row in 0..dim {
                let mi = u.get(row, i);
                let mj = u.get(row, j);
                u.set(row, i, mi * c + mj * (e_pos * s));
                u.set(row, j, mi * (-s * e_neg) + mj * c);
            }
        }
    }
    for k in 0..dim {
        let phase = C64::from_polar(1.0, params[2 * pairs + k]);
        for row in 0..dim {
            let v = u.get(row, k);
            u.set(row, k, v * phase);
        }
    }
    Ok(u)
}

/// Rank-1 projective measurement onto the columns of the parameterized
/// unitary.
pub fn projective_povm_from_params(dim: usize, params: &[f64]) -> Result<Povm> {
    let u = unitary_from_params(dim, params)?;
    Povm::projective_from_unitary(&u)
}

/// Rank-1 POVM with `outcomes` elements on a `dim`-dimensional space, cut
/// from the first `dim` columns of a parameterized unitary on the extension
/// space (a Neumark-style isometry). Needs `outcomes^2` parameters.
pub fn povm_from_isometry_params(
    dim: usize,
    outcomes: usize,
    params: &[f64],
) -> Result<Povm> {
    if outcomes < dim {
        return Err(Error::Parameter(format!(
            "a rank-1 POVM on dimension {dim} needs at least {dim} outcomes, got {outcomes}"
        )));
    }
    let w = unitary_from_params(outcomes, params)?;
    // Rows of the isometry: v_i = (W[i][0..dim])^* scaled; element_i = |v_i><v_i|
    // with <v_i| = row i of the first-dim-columns block.
    let elements = (0..outcomes)
        .map(|i| {
            let row: Vec<C64> = (0..dim).map(|j| w.get(i, j).conj()).collect();
            vec_outer(&row, &row)
        })
        .collect();
    Povm::new(dim, elements)
}

const FIXED_THETA: [f64; 8] = [
    0.0,
    std::f64::consts::FRAC_PI_4,
    std::f64::consts::FRAC_PI_4,
    std::f64::consts::FRAC_PI_8,
    3.0 * std::f64::consts::FRAC_PI_8,
    std::f64::consts::FRAC_PI_8,
    3.0 * std::f64::consts::FRAC_PI_8,
    std::f64::consts::FRAC_PI_6,
];
const FIXED_PHI: [f64; 8] = [
    0.0,
    0.0,
    std::f64::consts::FRAC_PI_2,
    0.0,
    std::f64::consts::FRAC_PI_2,
    std::f64::consts::FRAC_PI_4,
    3.0 * std::f64::consts::FRAC_PI_4,
    std::f64::consts::FRAC_PI_3,
];

/// Deterministic multi-start points for a `dim`-dimensional unitary search:
/// up to 8 fixed mutually-unbiased-like bases (the first is the computational
/// basis), the rest drawn from a seeded generator.
pub fn restart_points(dim: usize, restarts: usize, seed: u64) -> Vec<Vec<f64>> {
    let n_params = unitary_param_count(dim);
    let pairs = dim * (dim - 1) / 2;
    let n_fixed = restarts.min(8);
    let mut points = Vec::with_capacity(restarts);
    for s in 0..n_fixed {
        let mut p = vec![0.0; n_params];
        for pair in 0..pairs {
            p[2 * pair] = FIXED_THETA[s];
            p[2 * pair + 1] = FIXED_PHI[s];
        }
        points.push(p);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in n_fixed..restarts {
        let mut p = vec![0.0; n_params];
        for pair in 0..pairs {
            p[2 * pair] = rng.gen::<f64>() * std::f64::consts::PI;
            p[2 * pair + 1] = rng.gen::<f64>() * 2.0 * std::f64::consts::PI;
        }
        for k in 0..dim {
            p[2 * pairs + k] = rng.gen::<f64>() * 2.0 * std::f64::consts::PI;
        }
        points.push(p);
    }
    points
}
