//! Dense statevector simulation of small QAOA circuits.
//!
//! Bit conventions: qubit 0 is the leftmost letter of a Pauli string and bit 0
//! of an amplitude index.

mod circuit;
mod lanczos;
mod pauli;
mod shift;

use thiserror::Error;

pub use circuit::{
    evolve, exact_cost, expectation, x_mixer, QaoaCircuit, Spectral, Statevector, MAX_DENSE_QUBITS,
};
pub use lanczos::{ground_energy, ground_energy_from, ground_energy_seeded};
pub use pauli::{commutator, PauliPolynomial, PauliString, PauliSum, PauliTerm, MAX_QUBITS};
pub use shift::{param_shift_gradient, param_shift_with, NoiseMode, ShotNoiseModel};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuantumError {
    #[error("invalid qubit count {0}")]
    InvalidQubits(usize),

    #[error("{n} qubits exceeds the dense limit of {max}")]
    TooLarge { n: usize, max: usize },

    #[error("qubit count mismatch: expected {expected}, got {got}")]
    QubitMismatch { expected: usize, got: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid Pauli letter {0:?}")]
    InvalidPauli(char),

    #[error("coefficient must be finite, got {0}")]
    InvalidCoefficient(f64),

    #[error("state norm {0} is not 1")]
    NotNormalized(f64),

    #[error("circuit depth must be >= 1")]
    InvalidDepth,

    #[error("noise sigma must be positive, got {0}")]
    InvalidNoise(f64),

    #[error("coordinate {0} was allotted zero shots")]
    ZeroShots(usize),

    #[error("hamiltonian json: {0}")]
    Json(String),
}

/// `−J Σ_{i} Z_i Z_{i+1} − h Σ_i X_i` on an open chain of `n ≥ 2` sites.
///
/// The field terms are omitted when `h = 0`.
pub fn build_tfim_chain(n: usize, j: f64, h: f64) -> Result<PauliSum, QuantumError> {
    if n < 2 {
        return Err(QuantumError::InvalidQubits(n));
    }
    let mut terms = Vec::with_capacity(2 * n - 1);
    for i in 0..n - 1 {
        let mut s = "I".repeat(n);
        s.replace_range(i..i + 2, "ZZ");
        terms.push(PauliTerm::new(-j, &s)?);
    }
    for i in (0..n).filter(|_| h != 0.0) {
        terms.push(PauliTerm { coeff: -h, string: PauliString::single(n, i, 'X')? });
    }
    PauliSum::new(n, terms)
}

/// `‖[H_i, O]‖_F²`, computed in the Pauli basis.
pub fn lie_proxy(generator: &PauliSum, observable: &PauliSum) -> Result<f64, QuantumError> {
    Ok(commutator(generator, observable)?.frobenius_sq())
}

/// Commutator proxy of every parameter of a QAOA circuit against its cost.
pub fn qaoa_lie_proxies(circuit: &QaoaCircuit) -> Result<Vec<f64>, QuantumError> {
    let gamma = lie_proxy(circuit.cost(), circuit.cost())?;
    let beta = lie_proxy(circuit.mixer(), circuit.cost())?;
    Ok((0..circuit.n_params()).map(|i| if i % 2 == 0 { gamma } else { beta }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tfim_terms() {
        let h = build_tfim_chain(2, 1.0, 0.5).unwrap();
        let listed: Vec<(f64, String)> =
            h.terms().iter().map(|t| (t.coeff, t.string.to_string())).collect();
        assert_eq!(
            listed,
            vec![(-1.0, "ZZ".into()), (-0.5, "XI".into()), (-0.5, "IX".into())]
        );
        let h6 = build_tfim_chain(6, 1.0, 0.5).unwrap();
        let pairs: Vec<(usize, usize)> = h6
            .terms()
            .iter()
            .filter(|t| t.string.x == 0)
            .map(|t| {
                let lo = t.string.z.trailing_zeros() as usize;
                assert_eq!(t.string.z.count_ones(), 2);
                (lo, lo + 1)
            })
            .collect();
        assert_eq!(pairs, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]);
        assert!(build_tfim_chain(1, 1.0, 0.5).is_err());
    }

    #[test]
    fn transverse_field_free_chain_is_diagonal() {
        let h = build_tfim_chain(4, 1.0, 0.0).unwrap();
        assert!(h.terms().iter().all(|t| t.string.x == 0));
    }

    #[test]
    fn lie_proxy_matches_dense_commutator() {
        let hc = build_tfim_chain(2, 1.0, 0.5).unwrap();
        let hm = x_mixer(2).unwrap();
        let (a, b) = (hm.to_dense(), hc.to_dense());
        let c = &a * &b - &b * &a;
        let dense = c.iter().map(|z| z.norm_sqr()).sum::<f64>();
        assert!((lie_proxy(&hm, &hc).unwrap() - dense).abs() < 1e-10);
        // [ΣX, ZZ] has two anticommuting terms, each giving ‖2i·YZ‖² = 16.
        assert!((dense - 32.0).abs() < 1e-10);
        assert_eq!(lie_proxy(&hc, &hc).unwrap(), 0.0);
    }
}
