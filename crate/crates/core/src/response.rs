//! Coin-basis propagators.
//!
//! The walk (with or without dephasing) is a linear map on operators, and the
//! initial position is always the origin. So the reduced coin state at time
//! `t` for any initial coin density `ρ₀` is
//!
//! `ρ_C(t) = Σ_{ik} ρ₀[i, k] · R_t[i][k]`,  `R_t[i][k] = Tr_P Λᵗ(|i, 0⟩⟨k, 0|)`.
//!
//! Two non-interacting walkers evolve under `U ⊗ U`, so for the unitary walk
//! the two-coin state follows from the single-walker blocks:
//!
//! `ρ_C(t)[(s₁s₂), (s₁'s₂')] = Σ ρ₀[(ij), (kl)] · R_t[i][k][s₁][s₁'] · R_t[j][l][s₂][s₂']`.
//!
//! A Bloch-sphere sweep therefore needs two pure evolutions (or four channel
//! evolutions) instead of one per grid cell.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::channel::{ChannelEvolution, DephasingChannel};
use crate::error::{Result, WalkError};
use crate::qstate::{DensityMatrix, PureState};
use crate::walk::{step_single, Mat2, WalkConfig};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `R_t[i][k]` for `t = 0..=steps`.
#[derive(Debug, Clone)]
pub struct CoinResponse {
    blocks: Vec<[[Mat2; 2]; 2]>,
    unitary: bool,
}

fn basis(i: usize) -> [Complex64; 2] {
    let mut v = [ZERO; 2];
    v[i] = Complex64::new(1.0, 0.0);
    v
}

impl CoinResponse {
    /// Builds the propagator for a single walker; `config.lambda > 0` routes
    /// through the dephasing channel.
    pub fn new(config: &WalkConfig) -> Result<Self> {
        if config.lambda > 0.0 {
            Self::dephasing(config, &DephasingChannel::new(config.lambda)?)
        } else {
            Self::unitary(config)
        }
    }

    /// Unitary walk: `R_t[i][k][s][s'] = Σ_x φ_i(s, x) φ_k(s', x)*` with
    /// `φ_i = Uᵗ|i, 0⟩`.
    pub fn unitary(config: &WalkConfig) -> Result<Self> {
        let single = WalkConfig { walkers: 1, lambda: 0.0, ..*config };
        single.validate()?;
        let layout = single.layout()?;
        let mut states = [
            PureState::localized(layout, &basis(0))?,
            PureState::localized(layout, &basis(1))?,
        ];
        let n = single.lattice;
        let mut blocks = Vec::with_capacity(single.steps + 1);
        for t in 0..=single.steps {
            if t > 0 {
                for s in states.iter_mut() {
                    step_single(s, single.boundary)?;
                }
            }
            let mut r = [[[[ZERO; 2]; 2]; 2]; 2];
            for i in 0..2 {
                for k in 0..2 {
                    let (a, b) = (states[i].amps(), states[k].amps());
                    for s in 0..2 {
                        for sp in 0..2 {
                            r[i][k][s][sp] = a[s * n..(s + 1) * n]
                                .iter()
                                .zip(&b[sp * n..(sp + 1) * n])
                                .map(|(x, y)| x * y.conj())
                                .sum();
                        }
                    }
                }
            }
            blocks.push(r);
        }
        Ok(Self { blocks, unitary: true })
    }

    /// Dephasing walk: evolves the four operators `|i, 0⟩⟨k, 0|` under the channel.
    pub fn dephasing(config: &WalkConfig, channel: &DephasingChannel) -> Result<Self> {
        let single = WalkConfig { walkers: 1, lambda: channel.lambda(), ..*config };
        single.validate()?;
        let pairs = [(0, 0), (0, 1), (1, 0), (1, 1)];
        let series: Vec<Vec<Mat2>> = pairs
            .par_iter()
            .map(|&(i, k)| -> Result<Vec<Mat2>> {
                let mut evo = ChannelEvolution::localized(single.lattice, single.boundary, basis(i), basis(k))?;
                let mut out = Vec::with_capacity(single.steps + 1);
                out.push(evo.reduced_coin());
                for _ in 0..single.steps {
                    evo.step(channel)?;
                    out.push(evo.reduced_coin());
                }
                Ok(out)
            })
            .collect::<Result<_>>()?;
        let blocks = (0..=single.steps)
            .map(|t| {
                let mut r = [[[[ZERO; 2]; 2]; 2]; 2];
                for (p, &(i, k)) in pairs.iter().enumerate() {
                    r[i][k] = series[p][t];
                }
                r
            })
            .collect();
        Ok(Self { blocks, unitary: channel.lambda() == 0.0 })
    }

    pub fn steps(&self) -> usize {
        self.blocks.len() - 1
    }

    pub fn is_unitary(&self) -> bool {
        self.unitary
    }

    fn block(&self, t: usize) -> Result<&[[Mat2; 2]; 2]> {
        self.blocks
            .get(t)
            .ok_or_else(|| WalkError::Parameter(format!("time {t} beyond computed {} steps", self.steps())))
    }

    /// Reduced coin at time `t` for one walker starting from coin density `rho0`.
    pub fn single(&self, t: usize, rho0: &DensityMatrix) -> Result<DensityMatrix> {
        if rho0.dim() != 2 {
            return Err(WalkError::Layout("single-walker response needs a 2x2 coin state".into()));
        }
        let r = self.block(t)?;
        let mut out = DensityMatrix::zeros(2);
        for i in 0..2 {
            for k in 0..2 {
                let w = rho0[(i, k)];
                if w == ZERO {
                    continue;
                }
                for s in 0..2 {
                    for sp in 0..2 {
                        out[(s, sp)] += w * r[i][k][s][sp];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Same as [`Self::single`] for a pure coin.
    pub fn single_pure(&self, t: usize, coin: &[Complex64; 2]) -> Result<DensityMatrix> {
        self.single(t, &DensityMatrix::from_pure(coin)?)
    }

    /// Reduced two-coin state at time `t` for two walkers starting from
    /// coin density `rho0` (4×4). Only valid for the unitary walk.
    pub fn pair(&self, t: usize, rho0: &DensityMatrix) -> Result<DensityMatrix> {
        if !self.unitary {
            return Err(WalkError::Parameter("two-walker propagation requires the unitary walk".into()));
        }
        if rho0.dim() != 4 {
            return Err(WalkError::Layout("two-walker response needs a 4x4 coin state".into()));
        }
        let r = self.block(t)?;
        let mut out = DensityMatrix::zeros(4);
        for a in 0..4 {
            let (i, j) = (a >> 1, a & 1);
            for b in 0..4 {
                let (k, l) = (b >> 1, b & 1);
                let w = rho0[(a, b)];
                if w == ZERO {
                    continue;
                }
                let (g1, g2) = (&r[i][k], &r[j][l]);
                for s1 in 0..2 {
                    for s2 in 0..2 {
                        for s1p in 0..2 {
                            for s2p in 0..2 {
                                out[(2 * s1 + s2, 2 * s1p + s2p)] += w * g1[s1][s1p] * g2[s2][s2p];
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pair_pure(&self, t: usize, coin: &[Complex64; 4]) -> Result<DensityMatrix> {
        self.pair(t, &DensityMatrix::from_pure(coin)?)
    }
}
