//! Pauli spectra, stabilizer Rényi entropy and von Neumann entropy of
//! one- and two-qubit density matrices. All logarithms are natural.

use num_complex::Complex64;

use crate::error::{Result, WalkError};
use crate::qstate::{hermitian_eigenvalues, DensityMatrix, HERMITIAN_TOL};

/// Single-qubit Pauli label, ordered `I < X < Y < Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    /// Nonzero entry of column `col`: returns `(row, value)`.
    fn column(self, col: usize) -> (usize, Complex64) {
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match (self, col) {
            (Pauli::I, c) => (c, one),
            (Pauli::X, c) => (1 - c, one),
            (Pauli::Y, 0) => (1, i),
            (Pauli::Y, _) => (0, -i),
            (Pauli::Z, 0) => (0, one),
            (Pauli::Z, _) => (1, -one),
        }
    }
}

/// Labels of all `4ⁿ` Pauli strings in lexicographic order, e.g. `"IX"`.
pub fn pauli_labels(n_qubits: usize) -> Vec<String> {
    (0..4usize.pow(n_qubits as u32))
        .map(|k| {
            (0..n_qubits)
                .map(|q| Pauli::ALL[(k >> (2 * (n_qubits - 1 - q))) & 3].symbol())
                .collect()
        })
        .collect()
}

/// `Tr(ρP)` for every Pauli string `P`, first factor most significant.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSpectrum {
    n_qubits: usize,
    expectations: Vec<f64>,
}

impl PauliSpectrum {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn expectations(&self) -> &[f64] {
        &self.expectations
    }

    /// `Σ_P |Tr ρP|^q`.
    pub fn moment(&self, q: f64) -> f64 {
        self.expectations.iter().map(|c| c.abs().powf(q)).sum()
    }

    /// `2⁻ⁿ Σ_P Tr(ρP)²`, which equals `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.expectations.iter().map(|c| c * c).sum::<f64>() / (1usize << self.n_qubits) as f64
    }
}

/// Computes the Pauli spectrum of a 2×2 or 4×4 density matrix.
///
/// Each string is a monomial matrix, so `Tr(ρP) = Σ_c ρ[c, row(c)]·P[row(c), c]`.
pub fn pauli_expectations(rho: &DensityMatrix) -> Result<PauliSpectrum> {
    let n_qubits = match rho.dim() {
        2 => 1,
        4 => 2,
        d => return Err(WalkError::Layout(format!("Pauli spectrum needs dim 2 or 4, got {d}"))),
    };
    let count = 4usize.pow(n_qubits as u32);
    let mut expectations = Vec::with_capacity(count);
    for k in 0..count {
        let factors: Vec<Pauli> = (0..n_qubits)
            .map(|q| Pauli::ALL[(k >> (2 * (n_qubits - 1 - q))) & 3])
            .collect();
        let mut tr = Complex64::new(0.0, 0.0);
        for col in 0..rho.dim() {
            let mut row = 0;
            let mut value = Complex64::new(1.0, 0.0);
            for (q, p) in factors.iter().enumerate() {
                let bit = (col >> (n_qubits - 1 - q)) & 1;
                let (r, v) = p.column(bit);
                row = (row << 1) | r;
                value *= v;
            }
            tr += rho[(col, row)] * value;
        }
        if tr.im.abs() > HERMITIAN_TOL {
            return Err(WalkError::Hermiticity { residual: tr.im.abs() });
        }
        expectations.push(tr.re);
    }
    Ok(PauliSpectrum { n_qubits, expectations })
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(WalkError::Parameter(format!("Renyi order {alpha} must be finite and positive")));
    }
    if alpha == 1.0 {
        return Err(WalkError::Parameter("Renyi order 1 is singular".into()));
    }
    Ok(())
}

/// Stabilizer Rényi entropy of order `alpha` from a precomputed spectrum:
/// `1/(1−α) · ln(Σ|c|^{2α} / Σ|c|²)`.
pub fn sre_from_spectrum(spectrum: &PauliSpectrum, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let norm = spectrum.moment(2.0);
    let value = if alpha == 2.0 {
        let fourth: f64 = spectrum.expectations.iter().map(|c| (c * c) * (c * c)).sum();
        -(fourth / norm).ln()
    } else {
        (spectrum.moment(2.0 * alpha) / norm).ln() / (1.0 - alpha)
    };
    // stabilizer states land a few ulps below zero
    Ok(value.max(0.0))
}

/// Stabilizer Rényi entropy of a one- or two-qubit density matrix.
pub fn sre(rho: &DensityMatrix, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    sre_from_spectrum(&pauli_expectations(rho)?, alpha)
}

/// Largest SRE of order `alpha` attainable by a pure state in dimension `d`.
pub fn sre_upper_bound(d: usize, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if d != 2 && d != 4 {
        return Err(WalkError::Parameter(format!("bound defined here for d = 2 or 4, got {d}")));
    }
    let d = d as f64;
    Ok(((1.0 + (d - 1.0) * (d + 1.0).powf(1.0 - alpha)) / d).ln() / (1.0 - alpha))
}

/// `−Σ λ ln λ` with `0 ln 0 = 0`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let values = hermitian_eigenvalues(rho)?;
    Ok(values
        .into_iter()
        .filter(|&v| v > 0.0)
        .map(|v| -v * v.ln())
        .sum::<f64>()
        .max(0.0))
}

/// SRE₂, entropy and the spectrum for one reduced coin state.
#[derive(Debug, Clone, PartialEq)]
pub struct CoinDiagnostics {
    pub sre2: f64,
    pub entropy: f64,
    pub spectrum: PauliSpectrum,
}

pub fn diagnose(rho: &DensityMatrix) -> Result<CoinDiagnostics> {
    let spectrum = pauli_expectations(rho)?;
    Ok(CoinDiagnostics { sre2: sre_from_spectrum(&spectrum, 2.0)?, entropy: von_neumann_entropy(rho)?, spectrum })
}
