use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::circuit::MAX_DENSE_QUBITS;
use super::pauli::PauliSum;
use super::QuantumError;

const RESIDUAL_TOL: f64 = 1e-10;

/// Smallest eigenvalue of `h` from a fixed pseudo-random start vector.
pub fn ground_energy(h: &PauliSum) -> Result<f64, QuantumError> {
    ground_energy_seeded(h, 0x5eed)
}

pub fn ground_energy_seeded(h: &PauliSum, seed: u64) -> Result<f64, QuantumError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start: Vec<Complex64> = (0..h.dim())
        .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    ground_energy_from(h, &start)
}

/// Lanczos iteration with full reorthogonalization.
///
/// Stops once the Ritz residual `β_k |y_k|` of the lowest Ritz pair drops below
/// `1e-10` or the Krylov space becomes invariant. Only the eigenvalues of `h`
/// whose eigenvectors overlap `start` are reachable.
pub fn ground_energy_from(h: &PauliSum, start: &[Complex64]) -> Result<f64, QuantumError> {
    let n = h.n_qubits();
    if n > MAX_DENSE_QUBITS {
        return Err(QuantumError::TooLarge { n, max: MAX_DENSE_QUBITS });
    }
    let dim = h.dim();
    if start.len() != dim {
        return Err(QuantumError::DimensionMismatch { expected: dim, got: start.len() });
    }
    let start_norm = norm(start);
    if !(start_norm > 0.0) {
        return Err(QuantumError::NotNormalized(start_norm));
    }

    let mut basis: Vec<Vec<Complex64>> = vec![start.iter().map(|a| a / start_norm).collect()];
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    loop {
        let j = basis.len() - 1;
        let mut w = h.apply(&basis[j]);
        alphas.push(inner(&basis[j], &w).re);
        // Two Gram-Schmidt passes against the whole basis.
        for _ in 0..2 {
            for q in &basis {
                let c = inner(q, &w);
                for (wi, qi) in w.iter_mut().zip(q) {
                    *wi -= c * qi;
                }
            }
        }
        let beta = norm(&w);

        let k = alphas.len();
        let mut t = DMatrix::<f64>::zeros(k, k);
        for i in 0..k {
            t[(i, i)] = alphas[i];
            if i + 1 < k {
                t[(i, i + 1)] = betas[i];
                t[(i + 1, i)] = betas[i];
            }
        }
        let eig = SymmetricEigen::new(t);
        let (imin, &theta) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("non-empty tridiagonal");
        let residual = beta * eig.eigenvectors[(k - 1, imin)].abs();
        if residual < RESIDUAL_TOL || beta < 1e-13 || k == dim {
            return Ok(theta);
        }
        betas.push(beta);
        basis.push(w.iter().map(|a| a / beta).collect());
    }
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}
