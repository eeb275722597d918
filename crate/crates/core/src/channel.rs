//! Single-walker density-matrix evolution under coin dephasing.
//!
//! One step is `ρ → Σ± (E± ⊗ 1) U ρ U† (E± ⊗ 1)` with the Hadamard-walk
//! unitary `U`. `U` is real (Hadamard entries and a permutation), so both
//! `U·ρ` and `ρ·U†` reduce to applying `U` to vectors: columns for the left
//! product, rows for the right one. Nothing of size `2N × 2N` other than `ρ`
//! itself is ever built.
//!
//! The evolution tracks the light cone: while the occupied sites form an
//! interior window `[lo, hi]` only that block is touched, so early steps on a
//! large lattice cost `O(t²)` rather than `O(N²)`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Result, WalkError};
use crate::qstate::{reduced_coin_mixed, BlochAngles, DensityMatrix};
use crate::walk::{Boundary, CoinOp, Mat2, WalkConfig, WRAP_TOL};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Partial σz measurement with Kraus operators `E± = √M±`, `M± = (1 ± λσz)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DephasingChannel {
    lambda: f64,
    /// Diagonal of `E₊` as `[↑, ↓]`.
    kraus_plus: [f64; 2],
    /// Diagonal of `E₋` as `[↑, ↓]`.
    kraus_minus: [f64; 2],
}

impl DephasingChannel {
    /// `M±` are diagonal, so the square roots are taken entrywise.
    pub fn new(lambda: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(WalkError::Parameter(format!("lambda {lambda} outside [0, 1]")));
        }
        let plus = [((1.0 + lambda) / 2.0).sqrt(), ((1.0 - lambda) / 2.0).sqrt()];
        let minus = [plus[1], plus[0]];
        Ok(Self { lambda, kraus_plus: plus, kraus_minus: minus })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn kraus_plus(&self) -> [f64; 2] {
        self.kraus_plus
    }

    pub fn kraus_minus(&self) -> [f64; 2] {
        self.kraus_minus
    }

    /// `E₊†E₊ + E₋†E₋` diagonal; both entries are 1 for a valid channel.
    pub fn completeness(&self) -> [f64; 2] {
        [0, 1].map(|s| self.kraus_plus[s].powi(2) + self.kraus_minus[s].powi(2))
    }

    /// Multiplier picked up by the coin block `(s, s')` of `ρ`:
    /// `Σ± E±[s] E±[s']`.
    pub fn block_factors(&self) -> [[f64; 2]; 2] {
        let mut f = [[0.0; 2]; 2];
        for (s, row) in f.iter_mut().enumerate() {
            for (sp, v) in row.iter_mut().enumerate() {
                *v = self.kraus_plus[s] * self.kraus_plus[sp] + self.kraus_minus[s] * self.kraus_minus[sp];
            }
        }
        f
    }
}

/// Alias matching the operation name used throughout the docs.
pub fn make_channel(lambda: f64) -> Result<DephasingChannel> {
    DephasingChannel::new(lambda)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Window {
    /// Every site outside `[lo, hi]` is exactly zero and `0 < lo ≤ hi < N − 1`.
    Interior { lo: usize, hi: usize },
    Full,
}

/// Working buffer for a dense `2N × 2N` operator evolving under the channel.
///
/// The operator need not be Hermitian: the map is linear, so evolving
/// `|i⟩⟨k|` basis operators is how [`crate::response`] builds coin-basis
/// propagators.
#[derive(Debug, Clone)]
pub struct ChannelEvolution {
    n: usize,
    data: Vec<Complex64>,
    window: Window,
    boundary: Boundary,
}

impl ChannelEvolution {
    /// Starts from `|ψ_row⟩⟨ψ_col|` with both coins localized at the origin.
    pub fn localized(lattice: usize, boundary: Boundary, row: [Complex64; 2], col: [Complex64; 2]) -> Result<Self> {
        if lattice.is_multiple_of(2) {
            return Err(WalkError::Parameter(format!("lattice size {lattice} must be odd")));
        }
        let n = lattice;
        let dim = 2 * n;
        let mut data = vec![ZERO; dim * dim];
        let o = (n - 1) / 2;
        for (s, r) in row.iter().enumerate() {
            for (sp, c) in col.iter().enumerate() {
                data[(s * n + o) * dim + sp * n + o] = r * c.conj();
            }
        }
        let window = if o >= 1 && o + 1 < n { Window::Interior { lo: o, hi: o } } else { Window::Full };
        Ok(Self { n, data, window, boundary })
    }

    /// Wraps an arbitrary full-system matrix; the whole lattice is treated as occupied.
    pub fn from_density(rho: &DensityMatrix, lattice: usize, boundary: Boundary) -> Result<Self> {
        if rho.dim() != 2 * lattice {
            return Err(WalkError::Layout(format!(
                "density matrix of dim {} does not match a {lattice}-site walker",
                rho.dim()
            )));
        }
        Ok(Self { n: lattice, data: rho.elements().to_vec(), window: Window::Full, boundary })
    }

    pub fn lattice(&self) -> usize {
        self.n
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix::new(2 * self.n, self.data.clone()).expect("buffer is square")
    }

    fn dim(&self) -> usize {
        2 * self.n
    }

    fn sites(&self) -> (usize, usize) {
        match self.window {
            Window::Interior { lo, hi } => (lo, hi),
            Window::Full => (0, self.n - 1),
        }
    }

    fn check_boundary(&self) -> Result<()> {
        if self.boundary != Boundary::ErrorOnWrap || self.window != Window::Full {
            return Ok(());
        }
        let (n, dim) = (self.n, self.dim());
        for site in [0, n - 1] {
            for s in 0..2 {
                let a = s * n + site;
                for b in 0..dim {
                    if self.data[a * dim + b].norm() > WRAP_TOL || self.data[b * dim + a].norm() > WRAP_TOL {
                        return Err(WalkError::Wrap { walker: 0, site });
                    }
                }
            }
        }
        Ok(())
    }

    /// One unitary step followed by the Kraus sum.
    pub fn step(&mut self, channel: &DephasingChannel) -> Result<()> {
        self.check_boundary()?;
        let (n, dim) = (self.n, self.dim());
        let old = self.window;
        let (lo, hi) = self.sites();
        let coin = CoinOp::hadamard();

        // U·ρ: coin mix and shift acting on row indices
        {
            let (up, down) = self.data.split_at_mut(n * dim);
            up.par_chunks_mut(dim)
                .zip(down.par_chunks_mut(dim))
                .enumerate()
                .filter(|(x, _)| (lo..=hi).contains(x))
                .for_each(|(_, (ru, rd))| {
                    for seg in [lo..=hi, n + lo..=n + hi] {
                        for (u, d) in ru[seg.clone()].iter_mut().zip(rd[seg].iter_mut()) {
                            (*u, *d) = coin.mix(*u, *d);
                        }
                    }
                });
            match old {
                Window::Interior { lo, hi } => {
                    up.copy_within(lo * dim..(hi + 1) * dim, (lo + 1) * dim);
                    up[lo * dim..(lo + 1) * dim].fill(ZERO);
                    down.copy_within(lo * dim..(hi + 1) * dim, (lo - 1) * dim);
                    down[hi * dim..(hi + 1) * dim].fill(ZERO);
                }
                Window::Full => {
                    up.rotate_right(dim);
                    down.rotate_left(dim);
                }
            }
        }

        let new = match old {
            Window::Interior { lo, hi } if lo >= 2 && hi + 2 < n => Window::Interior { lo: lo - 1, hi: hi + 1 },
            _ => Window::Full,
        };
        // rows that may now be nonzero; for an interior window the shift stays inside [lo−1, hi+1]
        let (rlo, rhi) = match old {
            Window::Interior { lo, hi } => (lo - 1, hi + 1),
            Window::Full => (0, n - 1),
        };

        // ρ·U†: the same real map on every occupied row
        let factors = channel.block_factors();
        self.data.par_chunks_mut(dim).enumerate().for_each(|(a, row)| {
            let x = a % n;
            if !(rlo..=rhi).contains(&x) {
                return;
            }
            apply_unitary_to_vector(row, n, old, &coin);
            // Kraus sum: coin block (s, s') scales by Σ± E±[s] E±[s']
            let s = a / n;
            for sp in 0..2 {
                let f = factors[s][sp];
                for v in &mut row[sp * n + rlo..=sp * n + rhi] {
                    *v *= f;
                }
            }
        });

        self.window = new;
        Ok(())
    }

    /// `Tr_P` of the current operator as a 2×2 matrix.
    pub fn reduced_coin(&self) -> Mat2 {
        let (n, dim) = (self.n, self.dim());
        let (lo, hi) = self.sites();
        let mut out = [[ZERO; 2]; 2];
        for (s, row) in out.iter_mut().enumerate() {
            for (sp, v) in row.iter_mut().enumerate() {
                *v = (lo..=hi).map(|x| self.data[(s * n + x) * dim + sp * n + x]).sum();
            }
        }
        out
    }

    /// `Tr ρ` over the full system.
    pub fn trace(&self) -> Complex64 {
        let c = self.reduced_coin();
        c[0][0] + c[1][1]
    }
}

/// `v ← U v` for one single-walker vector of length `2N` whose support is
/// described by `window`.
fn apply_unitary_to_vector(v: &mut [Complex64], n: usize, window: Window, coin: &CoinOp) {
    let (up, down) = v.split_at_mut(n);
    match window {
        Window::Interior { lo, hi } => {
            for (u, d) in up[lo..=hi].iter_mut().zip(down[lo..=hi].iter_mut()) {
                (*u, *d) = coin.mix(*u, *d);
            }
            up.copy_within(lo..=hi, lo + 1);
            up[lo] = ZERO;
            down.copy_within(lo..=hi, lo - 1);
            down[hi] = ZERO;
        }
        Window::Full => {
            for (u, d) in up.iter_mut().zip(down.iter_mut()) {
                (*u, *d) = coin.mix(*u, *d);
            }
            up.rotate_right(1);
            down.rotate_left(1);
        }
    }
}

/// One unitary step plus dephasing on a full `2N × 2N` single-walker matrix.
pub fn kraus_step(rho: &DensityMatrix, channel: &DephasingChannel, config: &WalkConfig) -> Result<DensityMatrix> {
    if config.walkers != 1 {
        return Err(WalkError::Layout("the dephasing channel acts on one walker".into()));
    }
    let mut evo = ChannelEvolution::from_density(rho, config.lattice, config.boundary)?;
    evo.step(channel)?;
    Ok(evo.to_density())
}

/// Reduced coin states `t = 0..=config.steps` for the walker starting at the
/// origin with coin `angles`.
pub fn evolve_channel(
    angles: BlochAngles,
    config: &WalkConfig,
    channel: &DephasingChannel,
) -> Result<Vec<DensityMatrix>> {
    config.validate()?;
    if config.walkers != 1 {
        return Err(WalkError::Layout("the dephasing channel acts on one walker".into()));
    }
    let coin = angles.coin();
    let mut evo = ChannelEvolution::localized(config.lattice, config.boundary, coin, coin)?;
    let mut series = Vec::with_capacity(config.steps + 1);
    series.push(mat2_density(&evo.reduced_coin()));
    for _ in 0..config.steps {
        evo.step(channel)?;
        series.push(mat2_density(&evo.reduced_coin()));
    }
    Ok(series)
}

pub(crate) fn mat2_density(m: &Mat2) -> DensityMatrix {
    DensityMatrix::new(2, vec![m[0][0], m[0][1], m[1][0], m[1][1]]).expect("2x2")
}

/// Full-system reduced coin, for callers holding a dense matrix.
pub fn reduced_coin_of(rho: &DensityMatrix, lattice: usize) -> Result<DensityMatrix> {
    reduced_coin_mixed(rho, 1, lattice)
}
