use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use super::pauli::{PauliSum, PauliString};
use super::QuantumError;

/// Registers beyond this size are rejected by the dense simulator.
pub const MAX_DENSE_QUBITS: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    n_qubits: usize,
    amplitudes: DVector<Complex64>,
}

impl Statevector {
    /// `|+⟩^{⊗n}`.
    pub fn plus(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        let a = Complex64::new((dim as f64).sqrt().recip(), 0.0);
        Self { n_qubits, amplitudes: DVector::from_element(dim, a) }
    }

    /// Computational basis state `|b⟩`, bit `i` of `b` being qubit `i`.
    pub fn basis(n_qubits: usize, b: usize) -> Self {
        let mut amplitudes = DVector::from_element(1usize << n_qubits, Complex64::new(0.0, 0.0));
        amplitudes[b] = Complex64::new(1.0, 0.0);
        Self { n_qubits, amplitudes }
    }

    pub fn from_amplitudes(n_qubits: usize, amps: Vec<Complex64>) -> Result<Self, QuantumError> {
        if amps.len() != 1usize << n_qubits {
            return Err(QuantumError::DimensionMismatch { expected: 1 << n_qubits, got: amps.len() });
        }
        let v = Self { n_qubits, amplitudes: DVector::from_vec(amps) };
        let norm = v.norm();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(QuantumError::NotNormalized(norm));
        }
        Ok(v)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        self.amplitudes.as_slice()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }
}

/// `⟨ψ|H|ψ⟩`, applying each Pauli term directly to the amplitudes.
pub fn expectation(state: &Statevector, h: &PauliSum) -> Result<f64, QuantumError> {
    if state.n_qubits != h.n_qubits() {
        return Err(QuantumError::QubitMismatch { expected: h.n_qubits(), got: state.n_qubits });
    }
    let amps = state.amplitudes();
    let mut acc = Complex64::new(0.0, 0.0);
    for term in h.terms() {
        let mut t = Complex64::new(0.0, 0.0);
        for (b, &a) in amps.iter().enumerate() {
            let (b2, ph) = term.string.apply_basis(b);
            t += amps[b2].conj() * ph * a;
        }
        acc += t * term.coeff;
    }
    let scale = h.terms().iter().map(|t| t.coeff.abs()).sum::<f64>().max(1.0);
    assert!(
        acc.im.abs() < 1e-10 * scale,
        "expectation of a Hermitian operator has imaginary part {}",
        acc.im
    );
    Ok(acc.re)
}

/// Spectral decomposition `H = V diag(λ) V†`, used for every `exp(-i t H)`.
#[derive(Debug, Clone)]
pub struct Spectral {
    pub values: Vec<f64>,
    pub vectors: DMatrix<Complex64>,
    pub vectors_adj: DMatrix<Complex64>,
}

impl Spectral {
    pub fn of(h: &PauliSum) -> Self {
        let eig = SymmetricEigen::new(h.to_dense());
        let vectors_adj = eig.eigenvectors.adjoint();
        Self { values: eig.eigenvalues.iter().copied().collect(), vectors: eig.eigenvectors, vectors_adj }
    }

    /// `exp(-i t H) ψ`.
    pub fn evolve(&self, t: f64, psi: &DVector<Complex64>) -> DVector<Complex64> {
        let mut c = &self.vectors_adj * psi;
        for (ci, &l) in c.iter_mut().zip(&self.values) {
            *ci *= Complex64::from_polar(1.0, -t * l);
        }
        &self.vectors * c
    }
}

/// Depth-`p` QAOA circuit `Π_ℓ e^{-iβ_ℓ H_M} e^{-iγ_ℓ H_C}` on `|+⟩^{⊗n}`.
///
/// Parameters are ordered `(γ_1, β_1, …, γ_p, β_p)`. The spectral decompositions of
/// both Hamiltonians are computed once on first use and then shared read-only,
/// so a circuit can be evaluated from many threads.
#[derive(Debug)]
pub struct QaoaCircuit {
    depth: usize,
    cost: PauliSum,
    mixer: PauliSum,
    cost_spec: OnceLock<Spectral>,
    mixer_spec: OnceLock<Spectral>,
}

impl Clone for QaoaCircuit {
    fn clone(&self) -> Self {
        Self {
            depth: self.depth,
            cost: self.cost.clone(),
            mixer: self.mixer.clone(),
            cost_spec: self.cost_spec.clone(),
            mixer_spec: self.mixer_spec.clone(),
        }
    }
}

impl QaoaCircuit {
    pub fn new(cost: PauliSum, mixer: PauliSum, depth: usize) -> Result<Self, QuantumError> {
        let n = cost.n_qubits();
        if n < 2 {
            return Err(QuantumError::InvalidQubits(n));
        }
        if n > MAX_DENSE_QUBITS {
            return Err(QuantumError::TooLarge { n, max: MAX_DENSE_QUBITS });
        }
        if mixer.n_qubits() != n {
            return Err(QuantumError::QubitMismatch { expected: n, got: mixer.n_qubits() });
        }
        if depth == 0 {
            return Err(QuantumError::InvalidDepth);
        }
        Ok(Self { depth, cost, mixer, cost_spec: OnceLock::new(), mixer_spec: OnceLock::new() })
    }

    /// Cost `H_C` with the standard transverse mixer `Σ X_i`.
    pub fn with_x_mixer(cost: PauliSum, depth: usize) -> Result<Self, QuantumError> {
        let mixer = x_mixer(cost.n_qubits())?;
        Self::new(cost, mixer, depth)
    }

    pub fn n_qubits(&self) -> usize {
        self.cost.n_qubits()
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn n_params(&self) -> usize {
        2 * self.depth
    }

    pub fn cost(&self) -> &PauliSum {
        &self.cost
    }

    pub fn mixer(&self) -> &PauliSum {
        &self.mixer
    }

    /// Generator of parameter `i`: `H_C` for γ entries, `H_M` for β entries.
    pub fn generator(&self, i: usize) -> &PauliSum {
        if i % 2 == 0 {
            &self.cost
        } else {
            &self.mixer
        }
    }

    fn cost_spectral(&self) -> &Spectral {
        self.cost_spec.get_or_init(|| Spectral::of(&self.cost))
    }

    fn mixer_spectral(&self) -> &Spectral {
        self.mixer_spec.get_or_init(|| Spectral::of(&self.mixer))
    }
}

/// `Σ_i X_i` on `n` qubits.
pub fn x_mixer(n: usize) -> Result<PauliSum, QuantumError> {
    let terms = (0..n)
        .map(|q| PauliString::single(n, q, 'X').map(|string| super::PauliTerm { coeff: 1.0, string }))
        .collect::<Result<Vec<_>, _>>()?;
    PauliSum::new(n, terms)
}

/// `U(θ)|+⟩^{⊗n}`.
pub fn evolve(circuit: &QaoaCircuit, theta: &[f64]) -> Result<Statevector, QuantumError> {
    if theta.len() != circuit.n_params() {
        return Err(QuantumError::DimensionMismatch { expected: circuit.n_params(), got: theta.len() });
    }
    let mut psi = Statevector::plus(circuit.n_qubits()).amplitudes;
    let (cost, mixer) = (circuit.cost_spectral(), circuit.mixer_spectral());
    for layer in theta.chunks_exact(2) {
        psi = cost.evolve(layer[0], &psi);
        psi = mixer.evolve(layer[1], &psi);
    }
    Ok(Statevector { n_qubits: circuit.n_qubits(), amplitudes: psi })
}

/// `⟨ψ(θ)|H_C|ψ(θ)⟩`.
pub fn exact_cost(circuit: &QaoaCircuit, theta: &[f64]) -> Result<f64, QuantumError> {
    expectation(&evolve(circuit, theta)?, circuit.cost())
}
