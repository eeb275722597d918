//! Coin and shift operators and the one-/two-walker step maps.
//!
//! Steps act in place on the amplitude buffer. The shift is an index
//! rotation along one position axis, never a materialized matrix.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use num_complex::Complex64;

use crate::error::{Result, WalkError};
use crate::qstate::{reduced_coin, DensityMatrix, IndexLayout, PureState};

/// Amplitudes with `|a|²` above this on a boundary site trigger a wrap error.
pub const WRAP_TOL: f64 = 1e-14;

pub type Mat2 = [[Complex64; 2]; 2];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoinKind {
    Hadamard,
    TGate,
    General,
}

/// A 2×2 unitary acting on one coin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinOp {
    kind: CoinKind,
    matrix: Mat2,
}

impl CoinOp {
    pub fn hadamard() -> Self {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        Self { kind: CoinKind::Hadamard, matrix: [[h, h], [h, -h]] }
    }

    pub fn t_gate() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self {
            kind: CoinKind::TGate,
            matrix: [[one, zero], [zero, Complex64::from_polar(1.0, FRAC_PI_4)]],
        }
    }

    /// Any 2×2 matrix with `U†U = 1` to 1e-12.
    pub fn general(matrix: Mat2) -> Result<Self> {
        for i in 0..2 {
            for j in 0..2 {
                let g: Complex64 = (0..2).map(|k| matrix[k][i].conj() * matrix[k][j]).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                if (g - target).norm() > 1e-12 {
                    return Err(WalkError::Parameter("coin matrix is not unitary".into()));
                }
            }
        }
        Ok(Self { kind: CoinKind::General, matrix })
    }

    pub fn kind(&self) -> CoinKind {
        self.kind
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.matrix
    }

    #[inline]
    pub(crate) fn mix(&self, up: Complex64, down: Complex64) -> (Complex64, Complex64) {
        let m = &self.matrix;
        (m[0][0] * up + m[0][1] * down, m[1][0] * up + m[1][1] * down)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    /// Positions wrap modulo `N`.
    Periodic,
    /// Refuse to shift any amplitude sitting on a boundary site.
    ErrorOnWrap,
}

impl std::str::FromStr for Boundary {
    type Err = WalkError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "periodic" => Ok(Boundary::Periodic),
            "erroronwrap" | "error" => Ok(Boundary::ErrorOnWrap),
            _ => Err(WalkError::Parameter(format!("unknown boundary `{s}`"))),
        }
    }
}

impl std::fmt::Display for Boundary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Boundary::Periodic => "periodic",
            Boundary::ErrorOnWrap => "error-on-wrap",
        })
    }
}

/// Lattice and run parameters shared by pure and channel evolutions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkConfig {
    pub walkers: usize,
    pub lattice: usize,
    pub steps: usize,
    pub boundary: Boundary,
    /// Coin dephasing strength; only meaningful for one walker.
    pub lambda: f64,
}

impl WalkConfig {
    pub fn new(walkers: usize, lattice: usize, steps: usize, boundary: Boundary) -> Result<Self> {
        let cfg = Self { walkers, lattice, steps, boundary, lambda: 0.0 };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Smallest odd lattice whose light cone never reaches the boundary in `steps`.
    pub fn minimal_lattice(steps: usize) -> usize {
        2 * steps + 3
    }

    pub fn with_lambda(mut self, lambda: f64) -> Result<Self> {
        self.lambda = lambda;
        self.validate()?;
        Ok(self)
    }

    pub fn with_steps(mut self, steps: usize) -> Result<Self> {
        self.steps = steps;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=2).contains(&self.walkers) {
            return Err(WalkError::Parameter(format!("walker count {} not in 1..=2", self.walkers)));
        }
        if self.lattice.is_multiple_of(2) {
            return Err(WalkError::Parameter(format!("lattice size {} must be odd", self.lattice)));
        }
        if self.boundary == Boundary::ErrorOnWrap && self.lattice < Self::minimal_lattice(self.steps) {
            return Err(WalkError::LatticeTooSmall {
                lattice: self.lattice,
                steps: self.steps,
                required: Self::minimal_lattice(self.steps),
            });
        }
        if !(0.0..=1.0).contains(&self.lambda) {
            return Err(WalkError::Parameter(format!("lambda {} outside [0, 1]", self.lambda)));
        }
        if self.lambda > 0.0 && self.walkers != 1 {
            return Err(WalkError::Parameter("dephasing is only supported for one walker".into()));
        }
        Ok(())
    }

    pub fn layout(&self) -> Result<IndexLayout> {
        IndexLayout::new(self.walkers, self.lattice)
    }

    pub fn origin(&self) -> usize {
        (self.lattice - 1) / 2
    }
}

fn check_walker(layout: IndexLayout, which: usize) -> Result<()> {
    if which >= layout.walkers() {
        return Err(WalkError::Layout(format!(
            "walker {which} does not exist in a {}-walker state",
            layout.walkers()
        )));
    }
    Ok(())
}

/// Applies `coin` to the coin of walker `which` (0-based).
pub fn apply_coin(state: &mut PureState, coin: &CoinOp, which: usize) -> Result<()> {
    let layout = state.layout();
    check_walker(layout, which)?;
    let stride = (1 << (layout.walkers() - 1 - which)) * layout.position_dim();
    for block in state.amps_mut().chunks_mut(2 * stride) {
        let (up, down) = block.split_at_mut(stride);
        for (u, d) in up.iter_mut().zip(down.iter_mut()) {
            (*u, *d) = coin.mix(*u, *d);
        }
    }
    Ok(())
}

/// Moves walker `which` one site right if its coin is ↑, left if ↓.
pub fn apply_shift(state: &mut PureState, which: usize, boundary: Boundary) -> Result<()> {
    let layout = state.layout();
    check_walker(layout, which)?;
    let n = layout.lattice();
    let walkers = layout.walkers();
    let block = layout.position_dim();
    // contiguous run of all sites along axis `which` for a fixed outer index
    let inner = n.pow((walkers - 1 - which) as u32);
    let line = n * inner;
    let coin_shift = walkers - 1 - which;

    if boundary == Boundary::ErrorOnWrap {
        for coin_block in state.amps().chunks(block) {
            for chunk in coin_block.chunks(line) {
                let edges = [(0, &chunk[..inner]), (n - 1, &chunk[line - inner..])];
                for (site, run) in edges {
                    if run.iter().any(|a| a.norm_sqr() > WRAP_TOL) {
                        return Err(WalkError::Wrap { walker: which, site });
                    }
                }
            }
        }
    }

    for (b, coin_block) in state.amps_mut().chunks_mut(block).enumerate() {
        let up = (b >> coin_shift) & 1 == 0;
        for chunk in coin_block.chunks_mut(line) {
            if up {
                chunk.rotate_right(inner);
            } else {
                chunk.rotate_left(inner);
            }
        }
    }
    Ok(())
}

/// One Hadamard step `S · (H ⊗ 1)` of a single walker.
pub fn step_single(state: &mut PureState, boundary: Boundary) -> Result<()> {
    if state.layout().walkers() != 1 {
        return Err(WalkError::Layout("step_single needs a one-walker state".into()));
    }
    apply_coin(state, &CoinOp::hadamard(), 0)?;
    apply_shift(state, 0, boundary)
}

/// One step `(S₂·H₂)(S₁·H₁)` of two non-interacting walkers.
pub fn step_two(state: &mut PureState, boundary: Boundary) -> Result<()> {
    if state.layout().walkers() != 2 {
        return Err(WalkError::Layout("step_two needs a two-walker state".into()));
    }
    let h = CoinOp::hadamard();
    apply_coin(state, &h, 0)?;
    apply_shift(state, 0, boundary)?;
    apply_coin(state, &h, 1)?;
    apply_shift(state, 1, boundary)
}

/// Dispatches to [`step_single`] or [`step_two`] by walker count.
pub fn step(state: &mut PureState, boundary: Boundary) -> Result<()> {
    match state.layout().walkers() {
        1 => step_single(state, boundary),
        _ => step_two(state, boundary),
    }
}

/// Runs `config.steps` steps from `initial` and returns the reduced coin state
/// at `t = 0..=steps`. `observer` sees the full state after every step
/// (including `t = 0`).
pub fn evolve_pure<F>(initial: &PureState, config: &WalkConfig, mut observer: F) -> Result<Vec<DensityMatrix>>
where
    F: FnMut(usize, &PureState),
{
    config.validate()?;
    let layout = initial.layout();
    if layout.walkers() != config.walkers || layout.lattice() != config.lattice {
        return Err(WalkError::Layout(format!(
            "state dims {:?} do not match config ({} walker(s), N = {})",
            initial.dims(),
            config.walkers,
            config.lattice
        )));
    }
    let mut state = initial.clone();
    let mut series = Vec::with_capacity(config.steps + 1);
    observer(0, &state);
    series.push(reduced_coin(&state, config.walkers)?);
    for t in 1..=config.steps {
        step(&mut state, config.boundary)?;
        observer(t, &state);
        series.push(reduced_coin(&state, config.walkers)?);
    }
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const S: f64 = FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn single(n: usize, coin: [Complex64; 2]) -> PureState {
        PureState::localized(IndexLayout::new(1, n).unwrap(), &coin).unwrap()
    }

    /// Amplitude at coin `s`, displacement `dx` from the origin.
    fn amp(state: &PureState, s: usize, dx: isize) -> Complex64 {
        let l = state.layout();
        let x = (l.origin() as isize + dx) as usize;
        state.amplitude(&[s], &[x]).unwrap()
    }

    fn assert_close(a: Complex64, b: Complex64) {
        assert!((a - b).norm() < 1e-14, "{a} != {b}");
    }

    #[test]
    fn hadamard_on_up() {
        let mut s = single(5, [c(1.0), c(0.0)]);
        apply_coin(&mut s, &CoinOp::hadamard(), 0).unwrap();
        assert_close(amp(&s, 0, 0), c(S));
        assert_close(amp(&s, 1, 0), c(S));
    }

    #[test]
    fn t_gate_on_plus() {
        let mut s = single(5, [c(S), c(S)]);
        apply_coin(&mut s, &CoinOp::t_gate(), 0).unwrap();
        assert_close(amp(&s, 0, 0), c(S));
        assert_close(amp(&s, 1, 0), Complex64::from_polar(S, FRAC_PI_4));
    }

    #[test]
    fn hadamard_is_an_involution() {
        let l = IndexLayout::new(2, 3).unwrap();
        let amps: Vec<Complex64> = (0..l.len()).map(|i| Complex64::new(i as f64, 1.0 - i as f64)).collect();
        let original = PureState::from_amplitudes(&l.dims(), amps).unwrap();
        for which in 0..2 {
            let mut s = original.clone();
            apply_coin(&mut s, &CoinOp::hadamard(), which).unwrap();
            apply_coin(&mut s, &CoinOp::hadamard(), which).unwrap();
            for (a, b) in s.amps().iter().zip(original.amps()) {
                assert!((a - b).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn general_coin_rejects_non_unitary() {
        assert!(CoinOp::general([[c(1.0), c(1.0)], [c(0.0), c(1.0)]]).is_err());
        let h = CoinOp::hadamard();
        assert_eq!(CoinOp::general(*h.matrix()).unwrap().kind(), CoinKind::General);
    }

    #[test]
    fn shift_moves_by_coin() {
        let mut up = single(5, [c(1.0), c(0.0)]);
        apply_shift(&mut up, 0, Boundary::Periodic).unwrap();
        assert_close(amp(&up, 0, 1), c(1.0));

        let mut down = single(5, [c(0.0), c(1.0)]);
        apply_shift(&mut down, 0, Boundary::Periodic).unwrap();
        assert_close(amp(&down, 1, -1), c(1.0));
    }

    #[test]
    fn periodic_shift_wraps() {
        let mut s = PureState::from_assignments(&[2, 3], &[(2, c(1.0))]).unwrap();
        apply_shift(&mut s, 0, Boundary::Periodic).unwrap();
        assert_close(s.amps()[0], c(1.0));
    }

    #[test]
    fn error_on_wrap_refuses_boundary_amplitude() {
        let mut s = PureState::from_assignments(&[2, 3], &[(2, c(1.0))]).unwrap();
        let err = apply_shift(&mut s, 0, Boundary::ErrorOnWrap).unwrap_err();
        assert_eq!(err, WalkError::Wrap { walker: 0, site: 2 });
        let mut s = PureState::from_assignments(&[2, 3], &[(3, c(1.0))]).unwrap();
        assert!(apply_shift(&mut s, 0, Boundary::ErrorOnWrap).is_err());
    }

    #[test]
    fn one_hadamard_step() {
        let mut s = single(5, [c(1.0), c(0.0)]);
        step_single(&mut s, Boundary::ErrorOnWrap).unwrap();
        assert_close(amp(&s, 0, 1), c(S));
        assert_close(amp(&s, 1, -1), c(S));

        let mut s = single(5, [c(0.0), c(1.0)]);
        step_single(&mut s, Boundary::ErrorOnWrap).unwrap();
        assert_close(amp(&s, 0, 1), c(S));
        assert_close(amp(&s, 1, -1), c(-S));
    }

    #[test]
    fn two_hadamard_steps_by_hand() {
        // (|↑,2⟩ + |↓,0⟩ + |↑,0⟩ − |↓,−2⟩)/2
        let mut s = single(7, [c(1.0), c(0.0)]);
        step_single(&mut s, Boundary::ErrorOnWrap).unwrap();
        step_single(&mut s, Boundary::ErrorOnWrap).unwrap();
        let expected = [((0, 2), 0.5), ((1, 0), 0.5), ((0, 0), 0.5), ((1, -2), -0.5)];
        let mut total = 0.0;
        for ((coin, dx), v) in expected {
            assert_close(amp(&s, coin, dx), c(v));
            total += v * v;
        }
        assert_abs_diff_eq!(total, 1.0);
    }

    #[test]
    fn two_walker_step_from_up_up() {
        let l = IndexLayout::new(2, 5).unwrap();
        let mut s = PureState::localized(l, &[c(1.0), c(0.0), c(0.0), c(0.0)]).unwrap();
        step_two(&mut s, Boundary::ErrorOnWrap).unwrap();
        let o = l.origin();
        for (coins, xs) in [([0, 0], [o + 1, o + 1]), ([0, 1], [o + 1, o - 1]), ([1, 0], [o - 1, o + 1]), ([1, 1], [o - 1, o - 1])] {
            assert_close(s.amplitude(&coins, &xs).unwrap(), c(0.5));
        }
    }

    #[test]
    fn two_walker_marginal_matches_single_walker() {
        let n = 9;
        let a = [Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)];
        let b = [Complex64::new(S, 0.0), Complex64::from_polar(S, 1.1)];
        let coin2: Vec<Complex64> = (0..4).map(|i| a[i >> 1] * b[i & 1]).collect();
        let cfg2 = WalkConfig::new(2, n, 3, Boundary::ErrorOnWrap).unwrap();
        let cfg1 = WalkConfig::new(1, n, 3, Boundary::ErrorOnWrap).unwrap();
        let pair = PureState::localized(cfg2.layout().unwrap(), &coin2).unwrap();
        let second = PureState::localized(cfg1.layout().unwrap(), &b).unwrap();
        let joint = evolve_pure(&pair, &cfg2, |_, _| {}).unwrap();
        let lone = evolve_pure(&second, &cfg1, |_, _| {}).unwrap();
        for (rho, rho1) in joint.iter().zip(&lone) {
            // trace out coin 1
            for s in 0..2 {
                for sp in 0..2 {
                    let v = rho[(s, sp)] + rho[(2 + s, 2 + sp)];
                    assert!((v - rho1[(s, sp)]).norm() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn evolve_zero_steps_returns_initial_coin() {
        let cfg = WalkConfig::new(1, 3, 0, Boundary::Periodic).unwrap();
        let s = single(3, [c(S), c(S)]);
        let series = evolve_pure(&s, &cfg, |_, _| {}).unwrap();
        assert_eq!(series.len(), 1);
        assert!(series[0].max_abs_diff(&DensityMatrix::from_pure(&[c(S), c(S)]).unwrap()) < 1e-15);
    }

    #[test]
    fn evolve_checks_config_against_state() {
        let cfg = WalkConfig::new(1, 5, 1, Boundary::Periodic).unwrap();
        let s = single(3, [c(1.0), c(0.0)]);
        assert!(matches!(evolve_pure(&s, &cfg, |_, _| {}), Err(WalkError::Layout(_))));
    }

    #[test]
    fn config_validation() {
        assert!(WalkConfig::new(1, 4, 1, Boundary::Periodic).is_err());
        assert!(WalkConfig::new(1, 5, 2, Boundary::ErrorOnWrap).is_err());
        assert!(WalkConfig::new(1, 7, 2, Boundary::ErrorOnWrap).is_ok());
        assert!(WalkConfig::new(3, 7, 2, Boundary::Periodic).is_err());
        let cfg = WalkConfig::new(1, 7, 2, Boundary::Periodic).unwrap();
        assert!(cfg.with_lambda(1.5).is_err());
        let cfg2 = WalkConfig::new(2, 7, 2, Boundary::Periodic).unwrap();
        assert!(cfg2.with_lambda(0.1).is_err());
    }

    #[test]
    fn wrap_surfaces_through_evolution() {
        let cfg = WalkConfig { walkers: 1, lattice: 3, steps: 2, boundary: Boundary::ErrorOnWrap, lambda: 0.0 };
        let s = single(3, [c(1.0), c(0.0)]);
        let err = evolve_pure(&s, &cfg, |_, _| {}).unwrap_err();
        assert_eq!(err, WalkError::LatticeTooSmall { lattice: 3, steps: 2, required: 7 });
        let mut s = s;
        step_single(&mut s, Boundary::ErrorOnWrap).unwrap();
        assert!(matches!(step_single(&mut s, Boundary::ErrorOnWrap), Err(WalkError::Wrap { .. })));
    }

    #[test]
    fn boundary_parses() {
        assert_eq!("periodic".parse::<Boundary>().unwrap(), Boundary::Periodic);
        assert_eq!("error-on-wrap".parse::<Boundary>().unwrap(), Boundary::ErrorOnWrap);
        assert!("open".parse::<Boundary>().is_err());
    }
}
