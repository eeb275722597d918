//! State representations shared by every other module.
//!
//! Coin factors always precede position factors in the tensor layout:
//!
//! * one walker: `flat = σ·N + x`
//! * two walkers: `flat = ((σ₁·2 + σ₂)·N + x₁)·N + x₂`
//!
//! so the reduced coin state is a strided sum over a contiguous position block.

use std::f64::consts::{PI, TAU};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Result, WalkError};

pub const NORM_TOL: f64 = 1e-10;
pub const HERMITIAN_TOL: f64 = 1e-9;
pub const TRACE_TOL: f64 = 1e-10;
pub const PSD_TOL: f64 = 1e-9;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Bijection between flat amplitude indices and (coin, position) tuples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexLayout {
    walkers: usize,
    lattice: usize,
}

impl IndexLayout {
    pub fn new(walkers: usize, lattice: usize) -> Result<Self> {
        if !(1..=2).contains(&walkers) {
            return Err(WalkError::Layout(format!("unsupported walker count {walkers}")));
        }
        if lattice == 0 {
            return Err(WalkError::Layout("lattice size must be positive".into()));
        }
        Ok(Self { walkers, lattice })
    }

    /// Recovers the layout from a `dims` list such as `[2, N]` or `[2, 2, N, N]`.
    pub fn from_dims(dims: &[usize]) -> Result<Self> {
        match dims {
            [2, n] => Self::new(1, *n),
            [2, 2, n, m] if n == m => Self::new(2, *n),
            _ => Err(WalkError::Layout(format!("unsupported dims {dims:?}"))),
        }
    }

    pub fn walkers(&self) -> usize {
        self.walkers
    }

    pub fn lattice(&self) -> usize {
        self.lattice
    }

    pub fn dims(&self) -> Vec<usize> {
        let mut dims = vec![2; self.walkers];
        dims.extend(std::iter::repeat_n(self.lattice, self.walkers));
        dims
    }

    /// Dimension of the joint coin space, `2^walkers`.
    pub fn coin_dim(&self) -> usize {
        1 << self.walkers
    }

    /// Number of position configurations, `N^walkers`.
    pub fn position_dim(&self) -> usize {
        self.lattice.pow(self.walkers as u32)
    }

    pub fn len(&self) -> usize {
        self.coin_dim() * self.position_dim()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, coins: &[usize], positions: &[usize]) -> Result<usize> {
        if coins.len() != self.walkers || positions.len() != self.walkers {
            return Err(WalkError::Layout(format!(
                "expected {} coin and position indices",
                self.walkers
            )));
        }
        let mut idx = 0;
        for &c in coins {
            if c > 1 {
                return Err(WalkError::Layout(format!("coin index {c} out of range")));
            }
            idx = idx * 2 + c;
        }
        for &x in positions {
            if x >= self.lattice {
                return Err(WalkError::Layout(format!("position {x} out of range")));
            }
            idx = idx * self.lattice + x;
        }
        Ok(idx)
    }

    pub fn coords(&self, index: usize) -> Result<(Vec<usize>, Vec<usize>)> {
        if index >= self.len() {
            return Err(WalkError::Layout(format!("flat index {index} out of range")));
        }
        let mut rest = index;
        let mut positions = vec![0; self.walkers];
        for slot in positions.iter_mut().rev() {
            *slot = rest % self.lattice;
            rest /= self.lattice;
        }
        let mut coins = vec![0; self.walkers];
        for slot in coins.iter_mut().rev() {
            *slot = rest % 2;
            rest /= 2;
        }
        Ok((coins, positions))
    }

    /// Centre site `(N−1)/2`.
    pub fn origin(&self) -> usize {
        (self.lattice - 1) / 2
    }
}

/// Normalized amplitude vector over the (coin ⊗ position) basis.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    layout: IndexLayout,
    amps: Vec<Complex64>,
    renormalized: bool,
}

impl PureState {
    /// Builds a state from a full amplitude vector, renormalizing if needed.
    pub fn from_amplitudes(dims: &[usize], amps: Vec<Complex64>) -> Result<Self> {
        let layout = IndexLayout::from_dims(dims)?;
        if amps.len() != layout.len() {
            return Err(WalkError::Layout(format!(
                "amplitude vector has length {}, dims require {}",
                amps.len(),
                layout.len()
            )));
        }
        let norm = norm(&amps);
        if norm == 0.0 || !norm.is_finite() {
            return Err(WalkError::ZeroState);
        }
        let mut state = Self { layout, amps, renormalized: false };
        if (norm - 1.0).abs() > NORM_TOL {
            state.amps.iter_mut().for_each(|a| *a /= norm);
            state.renormalized = true;
        }
        Ok(state)
    }

    /// Sparse constructor: `(flat index, amplitude)` pairs on a zero background.
    pub fn from_assignments(dims: &[usize], assignments: &[(usize, Complex64)]) -> Result<Self> {
        let layout = IndexLayout::from_dims(dims)?;
        let mut amps = vec![ZERO; layout.len()];
        for &(idx, amp) in assignments {
            let slot = amps
                .get_mut(idx)
                .ok_or_else(|| WalkError::Layout(format!("flat index {idx} out of range")))?;
            *slot += amp;
        }
        Self::from_amplitudes(dims, amps)
    }

    /// `coin ⊗ |origin⟩` (or `|origin, origin⟩` for two walkers).
    pub fn localized(layout: IndexLayout, coin: &[Complex64]) -> Result<Self> {
        if coin.len() != layout.coin_dim() {
            return Err(WalkError::Layout(format!(
                "coin vector has length {}, expected {}",
                coin.len(),
                layout.coin_dim()
            )));
        }
        let origin = vec![layout.origin(); layout.walkers()];
        let mut assignments = Vec::with_capacity(coin.len());
        for (c, &amp) in coin.iter().enumerate() {
            let coins: Vec<usize> = (0..layout.walkers())
                .map(|k| (c >> (layout.walkers() - 1 - k)) & 1)
                .collect();
            assignments.push((layout.index(&coins, &origin)?, amp));
        }
        Self::from_assignments(&layout.dims(), &assignments)
    }

    pub fn layout(&self) -> IndexLayout {
        self.layout
    }

    pub fn dims(&self) -> Vec<usize> {
        self.layout.dims()
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub(crate) fn amps_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    /// True if the constructor had to rescale the input amplitudes.
    pub fn renormalized(&self) -> bool {
        self.renormalized
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amps)
    }

    pub fn amplitude(&self, coins: &[usize], positions: &[usize]) -> Result<Complex64> {
        Ok(self.amps[self.layout.index(coins, positions)?])
    }
}

fn norm(amps: &[Complex64]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// Polar/azimuthal angles of a single-qubit coin state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochAngles {
    theta: f64,
    phi: f64,
}

impl BlochAngles {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(WalkError::Parameter(format!("theta {theta} outside [0, pi]")));
        }
        if !(0.0..TAU).contains(&phi) {
            return Err(WalkError::Parameter(format!("phi {phi} outside [0, 2pi)")));
        }
        Ok(Self { theta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// `cos(θ/2)|↑⟩ + e^{iφ} sin(θ/2)|↓⟩`.
    pub fn coin(&self) -> [Complex64; 2] {
        let (s, c) = (self.theta / 2.0).sin_cos();
        [Complex64::new(c, 0.0), Complex64::from_polar(s, self.phi)]
    }
}

/// Dense complex square matrix used for full and reduced density operators.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    elements: Vec<Complex64>,
}

impl DensityMatrix {
    /// Wraps row-major elements; only the shape is checked, see [`Self::validate`].
    pub fn new(dim: usize, elements: Vec<Complex64>) -> Result<Self> {
        if elements.len() != dim * dim {
            return Err(WalkError::Layout(format!(
                "{} elements do not form a {dim}x{dim} matrix",
                elements.len()
            )));
        }
        Ok(Self { dim, elements })
    }

    pub fn zeros(dim: usize) -> Self {
        Self { dim, elements: vec![ZERO; dim * dim] }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self::diagonal(&vec![1.0 / dim as f64; dim])
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    /// `|ψ⟩⟨ψ|`, normalized by `⟨ψ|ψ⟩`.
    pub fn from_pure(psi: &[Complex64]) -> Result<Self> {
        let n2: f64 = psi.iter().map(|a| a.norm_sqr()).sum();
        if n2 == 0.0 {
            return Err(WalkError::ZeroState);
        }
        let dim = psi.len();
        let mut elements = Vec::with_capacity(dim * dim);
        for a in psi {
            for b in psi {
                elements.push(a * b.conj() / n2);
            }
        }
        Ok(Self { dim, elements })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[Complex64] {
        &self.elements
    }

    pub fn elements_mut(&mut self) -> &mut [Complex64] {
        &mut self.elements
    }

    pub fn into_elements(self) -> Vec<Complex64> {
        self.elements
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// `max |ρ − ρ†|`.
    pub fn hermiticity_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `Tr ρ²` (real part; exact for Hermitian input).
    pub fn purity(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                acc += (self[(i, j)] * self[(j, i)]).re;
            }
        }
        acc
    }

    pub fn kron(&self, other: &Self) -> Self {
        let dim = self.dim * other.dim;
        let mut out = Self::zeros(dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let a = self[(i, j)];
                for k in 0..other.dim {
                    for l in 0..other.dim {
                        out[(i * other.dim + k, j * other.dim + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// `U ρ U†` for a row-major `dim × dim` matrix `U`.
    pub fn conjugated(&self, unitary: &[Complex64]) -> Result<Self> {
        let d = self.dim;
        if unitary.len() != d * d {
            return Err(WalkError::Layout("unitary shape does not match".into()));
        }
        let mut tmp = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let u = unitary[i * d + k];
                if u == ZERO {
                    continue;
                }
                for j in 0..d {
                    tmp[(i, j)] += u * self[(k, j)];
                }
            }
        }
        let mut out = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out[(i, j)] = (0..d).map(|k| tmp[(i, k)] * unitary[j * d + k].conj()).sum();
            }
        }
        Ok(out)
    }

    /// `self += weight · other`.
    pub fn add_scaled(&mut self, weight: f64, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(WalkError::Layout("dimension mismatch in add_scaled".into()));
        }
        for (a, b) in self.elements.iter_mut().zip(&other.elements) {
            *a += b * weight;
        }
        Ok(())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.elements
            .iter()
            .zip(&other.elements)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Checks Hermiticity, unit trace and (for `dim ≤ 4`) positivity.
    pub fn validate(&self) -> Result<()> {
        let residual = self.hermiticity_residual();
        if residual > HERMITIAN_TOL {
            return Err(WalkError::Hermiticity { residual });
        }
        let tr = self.trace();
        if (tr - 1.0).norm() > TRACE_TOL {
            return Err(WalkError::Parameter(format!("trace {tr} differs from 1")));
        }
        if self.dim <= 4 {
            let min = hermitian_eigenvalues(self)?.last().copied().unwrap_or(0.0);
            if min < -PSD_TOL {
                return Err(WalkError::Parameter(format!("negative eigenvalue {min:e}")));
            }
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for DensityMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.elements[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DensityMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.elements[i * self.dim + j]
    }
}

/// Traces out positions: `ρ_C[a, b] = Σ_p ψ[a, p] ψ[b, p]*`.
pub fn reduced_coin(state: &PureState, walkers: usize) -> Result<DensityMatrix> {
    let layout = state.layout();
    if layout.walkers() != walkers {
        return Err(WalkError::Layout(format!(
            "state holds {} walker(s), {walkers} requested",
            layout.walkers()
        )));
    }
    let block = layout.position_dim();
    let blocks: Vec<&[Complex64]> = state.amps().chunks(block).collect();
    let d = layout.coin_dim();
    let mut rho = DensityMatrix::zeros(d);
    for a in 0..d {
        for b in a..d {
            let v: Complex64 = blocks[a].iter().zip(blocks[b]).map(|(x, y)| x * y.conj()).sum();
            rho[(a, b)] = v;
            rho[(b, a)] = v.conj();
        }
    }
    Ok(rho)
}

/// Traces positions out of a full-system density matrix.
pub fn reduced_coin_mixed(rho: &DensityMatrix, walkers: usize, lattice: usize) -> Result<DensityMatrix> {
    let layout = IndexLayout::new(walkers, lattice)?;
    if rho.dim() != layout.len() {
        return Err(WalkError::Layout(format!(
            "density matrix of dim {} does not match {} walker(s) on {lattice} sites",
            rho.dim(),
            walkers
        )));
    }
    let block = layout.position_dim();
    let d = layout.coin_dim();
    let mut out = DensityMatrix::zeros(d);
    for a in 0..d {
        for b in 0..d {
            out[(a, b)] = (0..block).map(|p| rho[(a * block + p, b * block + p)]).sum();
        }
    }
    Ok(out)
}

/// Eigenvalues of a Hermitian matrix of dimension ≤ 4, in descending order.
///
/// Qubits use the closed form `tr/2 ± √(((a−d)/2)² + |b|²)`; larger matrices go
/// through nalgebra's Hermitian QR iteration.
pub fn hermitian_eigenvalues(m: &DensityMatrix) -> Result<Vec<f64>> {
    let residual = m.hermiticity_residual();
    if residual > HERMITIAN_TOL {
        return Err(WalkError::Hermiticity { residual });
    }
    let mut values = match m.dim() {
        0 => Vec::new(),
        1 => vec![m[(0, 0)].re],
        2 => {
            let (a, d) = (m[(0, 0)].re, m[(1, 1)].re);
            let half = 0.5 * (a + d);
            let r = ((0.5 * (a - d)).powi(2) + m[(0, 1)].norm_sqr()).sqrt();
            vec![half + r, half - r]
        }
        3 | 4 => {
            let d = m.dim();
            // symmetrize so the solver sees an exactly Hermitian input
            let sym = DMatrix::from_fn(d, d, |i, j| 0.5 * (m[(i, j)] + m[(j, i)].conj()));
            sym.symmetric_eigenvalues().iter().copied().collect()
        }
        d => {
            return Err(WalkError::Layout(format!(
                "eigenvalues only supported for dim <= 4, got {d}"
            )))
        }
    };
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn basis_state_from_single_assignment() {
        let layout = IndexLayout::new(1, 5).unwrap();
        let idx = layout.index(&[0], &[2]).unwrap();
        assert_eq!(idx, 2);
        let s = PureState::from_assignments(&[2, 5], &[(idx, c(1.0))]).unwrap();
        assert!(!s.renormalized());
        for (i, a) in s.amps().iter().enumerate() {
            assert_eq!(*a, if i == 2 { c(1.0) } else { c(0.0) });
        }
    }

    #[test]
    fn equal_superposition_is_normalized() {
        let l = IndexLayout::new(1, 3).unwrap();
        let up = l.index(&[0], &[1]).unwrap();
        let down = l.index(&[1], &[1]).unwrap();
        let s = PureState::from_assignments(&[2, 3], &[(up, c(FRAC_1_SQRT_2)), (down, c(FRAC_1_SQRT_2))])
            .unwrap();
        assert_abs_diff_eq!(s.norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn unnormalized_input_is_rescaled_and_flagged() {
        let s = PureState::from_assignments(&[2, 3], &[(0, c(2.0))]).unwrap();
        assert!(s.renormalized());
        assert_abs_diff_eq!(s.amps()[0].re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn zero_state_is_rejected() {
        let err = PureState::from_amplitudes(&[2, 3], vec![c(0.0); 6]).unwrap_err();
        assert_eq!(err, WalkError::ZeroState);
    }

    #[test]
    fn bad_dims_and_indices_are_layout_errors() {
        assert!(matches!(PureState::from_amplitudes(&[3, 3], vec![c(1.0); 9]), Err(WalkError::Layout(_))));
        assert!(matches!(PureState::from_assignments(&[2, 3], &[(6, c(1.0))]), Err(WalkError::Layout(_))));
        assert!(matches!(PureState::from_amplitudes(&[2, 3], vec![c(1.0); 5]), Err(WalkError::Layout(_))));
    }

    #[test]
    fn layout_round_trip_is_exhaustive() {
        for walkers in 1..=2 {
            for n in [1, 2, 3, 5] {
                let l = IndexLayout::new(walkers, n).unwrap();
                for idx in 0..l.len() {
                    let (coins, xs) = l.coords(idx).unwrap();
                    assert_eq!(l.index(&coins, &xs).unwrap(), idx);
                }
            }
        }
        let l = IndexLayout::new(2, 4).unwrap();
        assert_eq!(l.index(&[1, 0], &[2, 3]).unwrap(), ((2) * 4 + 2) * 4 + 3);
    }

    #[test]
    fn reduced_coin_orthogonal_supports_is_mixed() {
        let l = IndexLayout::new(1, 3).unwrap();
        let s = PureState::from_assignments(
            &[2, 3],
            &[(l.index(&[0], &[2]).unwrap(), c(FRAC_1_SQRT_2)), (l.index(&[1], &[0]).unwrap(), c(FRAC_1_SQRT_2))],
        )
        .unwrap();
        let rho = reduced_coin(&s, 1).unwrap();
        assert!(rho.max_abs_diff(&DensityMatrix::maximally_mixed(2)) < 1e-15);
    }

    #[test]
    fn reduced_coin_of_product_is_projector() {
        let l = IndexLayout::new(1, 3).unwrap();
        let s = PureState::localized(l, &[c(1.0), c(0.0)]).unwrap();
        let rho = reduced_coin(&s, 1).unwrap();
        assert_eq!(rho, DensityMatrix::diagonal(&[1.0, 0.0]));
    }

    #[test]
    fn reduced_coin_shared_support_is_rank_one() {
        let l = IndexLayout::new(1, 3).unwrap();
        let s = PureState::localized(l, &[c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2)]).unwrap();
        let rho = reduced_coin(&s, 1).unwrap();
        for v in rho.elements() {
            assert_abs_diff_eq!(v.re, 0.5, epsilon = 1e-15);
        }
        let ev = hermitian_eigenvalues(&rho).unwrap();
        assert_abs_diff_eq!(ev[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(ev[1], 0.0, epsilon = 1e-15);
    }

    #[test]
    fn reduced_coin_rejects_wrong_walker_count() {
        let s = PureState::localized(IndexLayout::new(1, 3).unwrap(), &[c(1.0), c(0.0)]).unwrap();
        assert!(matches!(reduced_coin(&s, 2), Err(WalkError::Layout(_))));
    }

    #[test]
    fn mixed_partial_trace_matches_pure() {
        let l = IndexLayout::new(2, 3).unwrap();
        let amps: Vec<Complex64> =
            (0..l.len()).map(|i| Complex64::new((i as f64 * 0.7).sin(), (i as f64 * 1.3).cos())).collect();
        let s = PureState::from_amplitudes(&l.dims(), amps).unwrap();
        let full = DensityMatrix::from_pure(s.amps()).unwrap();
        let a = reduced_coin(&s, 2).unwrap();
        let b = reduced_coin_mixed(&full, 2, 3).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-14);
        assert_abs_diff_eq!(a.trace().re, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn eigenvalues_examples() {
        assert_eq!(hermitian_eigenvalues(&DensityMatrix::maximally_mixed(2)).unwrap(), vec![0.5, 0.5]);
        let plus = DensityMatrix::from_pure(&[c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2)]).unwrap();
        let ev = hermitian_eigenvalues(&plus).unwrap();
        assert_abs_diff_eq!(ev[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(ev[1], 0.0, epsilon = 1e-15);

        let bell = DensityMatrix::from_pure(&[c(FRAC_1_SQRT_2), c(0.0), c(0.0), c(FRAC_1_SQRT_2)]).unwrap();
        let ev = hermitian_eigenvalues(&bell).unwrap();
        assert_eq!(ev.len(), 4);
        assert_abs_diff_eq!(ev[0], 1.0, epsilon = 1e-12);
        for v in &ev[1..] {
            assert_abs_diff_eq!(*v, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn eigenvalues_of_three_level_matrix() {
        let m = DensityMatrix::new(
            3,
            vec![
                c(0.5), Complex64::new(0.1, 0.05), c(0.0),
                Complex64::new(0.1, -0.05), c(0.3), c(0.02),
                c(0.0), c(0.02), c(0.2),
            ],
        )
        .unwrap();
        let ev = hermitian_eigenvalues(&m).unwrap();
        assert_abs_diff_eq!(ev.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ev.iter().map(|v| v * v).sum::<f64>(), m.purity(), epsilon = 1e-12);
        assert!(ev.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn non_hermitian_input_is_rejected() {
        let m = DensityMatrix::new(2, vec![c(0.5), c(0.3), c(0.0), c(0.5)]).unwrap();
        assert!(matches!(hermitian_eigenvalues(&m), Err(WalkError::Hermiticity { .. })));
        assert!(matches!(m.validate(), Err(WalkError::Hermiticity { .. })));
        let big = DensityMatrix::maximally_mixed(5);
        assert!(matches!(hermitian_eigenvalues(&big), Err(WalkError::Layout(_))));
    }

    #[test]
    fn bloch_angle_ranges() {
        assert!(BlochAngles::new(0.0, 0.0).is_ok());
        assert!(BlochAngles::new(PI, 6.2).is_ok());
        assert!(BlochAngles::new(-0.1, 0.0).is_err());
        assert!(BlochAngles::new(3.2, 0.0).is_err());
        assert!(BlochAngles::new(1.0, TAU).is_err());
        let coin = BlochAngles::new(PI, 0.0).unwrap().coin();
        assert_abs_diff_eq!(coin[0].norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(coin[1].re, 1.0, epsilon = 1e-15);
    }
}
