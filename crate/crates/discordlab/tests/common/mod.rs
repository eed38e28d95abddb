//! Shared helpers for the integration suites: a brute-force measurement-grid
//! oracle that stays independent of the library's eigensolver, measurement,
//! and optimizer code paths, plus closed-form Werner references.

use discordlab::{C64, DensityOperator};

/// Binary entropy in bits with the 0 log 0 = 0 convention.
pub fn h2(p: f64) -> f64 {
    let mut acc = 0.0;
    for q in [p, 1.0 - p] {
        if q > 1e-15 {
            acc -= q * q.log2();
        }
    }
    acc
}

/// Entropy of a normalized Hermitian 2x2 matrix via the closed-form
/// trace/determinant eigenvalues.
fn qubit_entropy(m: &[[C64; 2]; 2]) -> f64 {
    let t = (m[0][0].re + m[1][1].re).max(0.0);
    if t < 1e-15 {
        return 0.0;
    }
    let det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).re;
    let disc = (t * t / 4.0 - det).max(0.0).sqrt();
    let l1 = ((t / 2.0 + disc) / t).clamp(0.0, 1.0);
    h2(l1)
}

/// Minimum over a dense grid of projective qubit measurements on B of the
/// measured conditional entropy sum_i p_i S(rho_{A|i}).
///
/// The measurement basis is parameterized by Bloch angles: u0 = (cos(t/2),
/// e^{i phi} sin(t/2)) with theta on [0, pi) and phi on [0, 2 pi), sampled at
/// n_theta x n_phi points. Works directly on the raw 4x4 matrix entries.
pub fn grid_min_measured_conditional_entropy(
    rho: &DensityOperator,
    n_theta: usize,
    n_phi: usize,
) -> f64 {
    assert_eq!(rho.dims(), &[2, 2], "grid oracle expects a two-qubit state");
    let m = rho.mat();
    let mut entries = [[C64::new(0.0, 0.0); 4]; 4];
    for (i, row) in entries.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            *e = m.get(i, j);
        }
    }
    // rho_A[a][a'] = sum_b rho[(a,b),(a',b)]
    let mut rho_a = [[C64::new(0.0, 0.0); 2]; 2];
    for a in 0..2 {
        for a2 in 0..2 {
            rho_a[a][a2] = entries[2 * a][2 * a2] + entries[2 * a + 1][2 * a2 + 1];
        }
    }

    let mut best = f64::INFINITY;
    for i in 0..n_theta {
        let theta = i as f64 * std::f64::consts::PI / n_theta as f64;
        let c = (theta / 2.0).cos();
        let s = (theta / 2.0).sin();
        for j in 0..n_phi {
            let phi = j as f64 * 2.0 * std::f64::consts::PI / n_phi as f64;
            let u = [C64::new(c, 0.0), C64::from_polar(s, phi)];
            // M0 = (I (x) <u|) rho (I (x) |u>)
            let mut m0 = [[C64::new(0.0, 0.0); 2]; 2];
            for a in 0..2 {
                for a2 in 0..2 {
                    let mut acc = C64::new(0.0, 0.0);
                    for b in 0..2 {
                        for b2 in 0..2 {
                            acc += u[b].conj() * entries[2 * a + b][2 * a2 + b2] * u[b2];
                        }
                    }
                    m0[a][a2] = acc;
                }
            }
            let mut m1 = [[C64::new(0.0, 0.0); 2]; 2];
            for a in 0..2 {
                for a2 in 0..2 {
                    m1[a][a2] = rho_a[a][a2] - m0[a][a2];
                }
            }
            let mut total = 0.0;
            for cond in [&m0, &m1] {
                let p = (cond[0][0].re + cond[1][1].re).max(0.0);
                if p < 1e-12 {
                    continue;
                }
                total += p * qubit_entropy(cond);
            }
            if total < best {
                best = total;
            }
        }
    }
    best
}

/// Closed-form entropy of werner(p): spectrum ((1+3p)/4, 3 x (1-p)/4).
pub fn werner_entropy(p: f64) -> f64 {
    let mut acc = 0.0;
    for (mult, l) in [(1.0, (1.0 + 3.0 * p) / 4.0), (3.0, (1.0 - p) / 4.0)] {
        if l > 1e-15 {
            acc -= mult * l * l.log2();
        }
    }
    acc
}

/// Brute-force discord of werner(p): S(B) - S(AB) + grid minimum, with the
/// marginal and joint entropies from closed forms.
pub fn grid_werner_discord(p: f64, n_theta: usize, n_phi: usize) -> f64 {
    let w = discordlab::werner(p).expect("valid werner parameter");
    1.0 - werner_entropy(p) + grid_min_measured_conditional_entropy(&w, n_theta, n_phi)
}
