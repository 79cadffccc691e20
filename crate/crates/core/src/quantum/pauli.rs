use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::QuantumError;

/// Largest register a Pauli string can address (one bit per qubit in a `u64`).
pub const MAX_QUBITS: usize = 64;

/// A Pauli string in symplectic form: qubit `q` carries `X^{x_q} Z^{z_q}` up to phase,
/// with `Y = i·XZ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    pub x: u64,
    pub z: u64,
    pub n: usize,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        Self { x: 0, z: 0, n }
    }

    pub fn parse(letters: &str) -> Result<Self, QuantumError> {
        let n = letters.chars().count();
        if n == 0 || n > MAX_QUBITS {
            return Err(QuantumError::InvalidQubits(n));
        }
        let (mut x, mut z) = (0u64, 0u64);
        for (q, c) in letters.chars().enumerate() {
            let bit = 1u64 << q;
            match c.to_ascii_uppercase() {
                'I' => {}
                'X' => x |= bit,
                'Z' => z |= bit,
                'Y' => {
                    x |= bit;
                    z |= bit;
                }
                other => return Err(QuantumError::InvalidPauli(other)),
            }
        }
        Ok(Self { x, z, n })
    }

    /// Single-qubit Pauli on qubit `q` of an `n`-qubit register.
    pub fn single(n: usize, q: usize, letter: char) -> Result<Self, QuantumError> {
        let mut s: String = "I".repeat(n);
        s.replace_range(q..q + 1, &letter.to_string());
        Self::parse(&s)
    }

    pub fn letter(&self, q: usize) -> char {
        match ((self.x >> q) & 1, (self.z >> q) & 1) {
            (0, 0) => 'I',
            (1, 0) => 'X',
            (0, 1) => 'Z',
            _ => 'Y',
        }
    }

    pub fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Two strings commute iff their symplectic product is even.
    pub fn commutes_with(&self, other: &Self) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()) % 2 == 0
    }

    /// `self · other = i^k · P`, returned as `(k mod 4, P)`.
    pub fn mul(&self, other: &Self) -> (u8, Self) {
        // Write P = i^{y(P)} X^x Z^z. Moving Z^{z1} past X^{x2} costs (-1)^{|z1 & x2|}.
        let prod = Self { x: self.x ^ other.x, z: self.z ^ other.z, n: self.n };
        let sign = 2 * ((self.z & other.x).count_ones() % 2);
        let k = self.y_count() + other.y_count() + sign + 4 * MAX_QUBITS as u32 - prod.y_count();
        ((k % 4) as u8, prod)
    }

    /// `P|b⟩ = phase · |b ⊕ x⟩`.
    #[inline]
    pub fn apply_basis(&self, b: usize) -> (usize, Complex64) {
        let sign = if (b as u64 & self.z).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        (b ^ self.x as usize, i_pow(self.y_count() as u8) * sign)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n {
            write!(f, "{}", self.letter(q))?;
        }
        Ok(())
    }
}

pub(crate) fn i_pow(k: u8) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm {
    pub coeff: f64,
    pub string: PauliString,
}

impl PauliTerm {
    pub fn new(coeff: f64, letters: &str) -> Result<Self, QuantumError> {
        Ok(Self { coeff, string: PauliString::parse(letters)? })
    }
}

/// Real-weighted sum of Pauli strings on `n_qubits`; Hermitian by construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "HamiltonianSpec", into = "HamiltonianSpec")]
pub struct PauliSum {
    n_qubits: usize,
    terms: Vec<PauliTerm>,
}

impl PauliSum {
    pub fn new(n_qubits: usize, terms: Vec<PauliTerm>) -> Result<Self, QuantumError> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(QuantumError::InvalidQubits(n_qubits));
        }
        if let Some(t) = terms.iter().find(|t| t.string.n != n_qubits) {
            return Err(QuantumError::QubitMismatch { expected: n_qubits, got: t.string.n });
        }
        if let Some(t) = terms.iter().find(|t| !t.coeff.is_finite()) {
            return Err(QuantumError::InvalidCoefficient(t.coeff));
        }
        Ok(Self { n_qubits, terms })
    }

    pub fn from_terms(n_qubits: usize, terms: &[(f64, &str)]) -> Result<Self, QuantumError> {
        let terms = terms
            .iter()
            .map(|&(c, p)| PauliTerm::new(c, p))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(n_qubits, terms)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1usize << self.n_qubits
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn from_json(text: &str) -> Result<Self, QuantumError> {
        serde_json::from_str(text).map_err(|e| QuantumError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("PauliSum serializes")
    }

    /// `out += H · v` on a dense vector of length `2^n`.
    pub fn apply_add(&self, v: &[Complex64], out: &mut [Complex64]) {
        for term in &self.terms {
            let s = term.string;
            let c = term.coeff;
            for (b, &amp) in v.iter().enumerate() {
                let (b2, ph) = s.apply_basis(b);
                out[b2] += ph * amp * c;
            }
        }
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
        self.apply_add(v, &mut out);
        out
    }

    /// Dense `2^n × 2^n` matrix; only sensible for small registers.
    pub fn to_dense(&self) -> nalgebra::DMatrix<Complex64> {
        let dim = self.dim();
        let mut m = nalgebra::DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
        for term in &self.terms {
            for b in 0..dim {
                let (b2, ph) = term.string.apply_basis(b);
                m[(b2, b)] += ph * term.coeff;
            }
        }
        m
    }
}

/// Complex-weighted Pauli sum with like terms merged; the result type of commutators.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PauliPolynomial {
    pub n_qubits: usize,
    pub terms: BTreeMap<(u64, u64), Complex64>,
}

impl PauliPolynomial {
    /// `Tr(A†A) = 2^n Σ |c|²` since distinct Pauli strings are trace-orthogonal.
    pub fn frobenius_sq(&self) -> f64 {
        let scale = (self.n_qubits as f64).exp2();
        self.terms.values().map(|c| c.norm_sqr()).sum::<f64>() * scale
    }

    fn prune(&mut self, tol: f64) {
        self.terms.retain(|_, c| c.norm() > tol);
    }
}

/// `[A, B] = AB − BA`. Commuting string pairs cancel; anticommuting pairs give `2·P_a P_b`.
pub fn commutator(a: &PauliSum, b: &PauliSum) -> Result<PauliPolynomial, QuantumError> {
    if a.n_qubits != b.n_qubits {
        return Err(QuantumError::QubitMismatch { expected: a.n_qubits, got: b.n_qubits });
    }
    let mut out = PauliPolynomial { n_qubits: a.n_qubits, terms: BTreeMap::new() };
    for ta in &a.terms {
        for tb in &b.terms {
            if ta.string.commutes_with(&tb.string) {
                continue;
            }
            let (k, p) = ta.string.mul(&tb.string);
            *out.terms.entry((p.x, p.z)).or_default() += i_pow(k) * (2.0 * ta.coeff * tb.coeff);
        }
    }
    out.prune(1e-14);
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct HamiltonianSpec {
    n: usize,
    terms: Vec<TermSpec>,
}

#[derive(Serialize, Deserialize)]
struct TermSpec {
    coeff: f64,
    pauli: String,
}

impl TryFrom<HamiltonianSpec> for PauliSum {
    type Error = QuantumError;

    fn try_from(spec: HamiltonianSpec) -> Result<Self, Self::Error> {
        let terms = spec
            .terms
            .into_iter()
            .map(|t| PauliTerm::new(t.coeff, &t.pauli))
            .collect::<Result<Vec<_>, _>>()?;
        PauliSum::new(spec.n, terms)
    }
}

impl From<PauliSum> for HamiltonianSpec {
    fn from(h: PauliSum) -> Self {
        HamiltonianSpec {
            n: h.n_qubits,
            terms: h
                .terms
                .into_iter()
                .map(|t| TermSpec { coeff: t.coeff, pauli: t.string.to_string() })
                .collect(),
        }
    }
}
