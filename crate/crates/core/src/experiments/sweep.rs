use std::f64::consts::{PI, TAU};
use std::time::Instant;

use rayon::prelude::*;

use super::initial::Pairing;
use crate::error::{Result, WalkError};
use crate::magic::diagnose;
use crate::qstate::{BlochAngles, DensityMatrix};
use crate::response::CoinResponse;
use crate::walk::{Boundary, WalkConfig};
use crate::VERSION;

/// `n_theta` points on `[0, π]` (both ends) by `n_phi` points on `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlochGrid {
    n_theta: usize,
    n_phi: usize,
}

impl BlochGrid {
    pub const DEFAULT: BlochGrid = BlochGrid { n_theta: 61, n_phi: 121 };

    pub fn new(n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_theta < 2 || n_phi < 2 {
            return Err(WalkError::Parameter(format!(
                "grid {n_theta}x{n_phi} too coarse, need at least 2 points per axis"
            )));
        }
        Ok(Self { n_theta, n_phi })
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    pub fn len(&self) -> usize {
        self.n_theta * self.n_phi
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn thetas(&self) -> Vec<f64> {
        theta_axis(self.n_theta)
    }

    pub fn phis(&self) -> Vec<f64> {
        (0..self.n_phi).map(|j| TAU * j as f64 / self.n_phi as f64).collect()
    }

    /// Cell angles in θ-major order.
    pub fn angles(&self) -> Vec<BlochAngles> {
        let phis = self.phis();
        self.thetas()
            .into_iter()
            .flat_map(|t| phis.iter().map(move |&p| BlochAngles::new(t, p).expect("grid stays in range")))
            .collect()
    }

    /// Evaluates `f` on every cell in parallel; output keeps θ-major order.
    pub fn map_cells<F>(&self, f: F) -> Result<Vec<CellRecord>>
    where
        F: Fn(BlochAngles) -> Result<CellRecord> + Sync,
    {
        self.angles().into_par_iter().map(&f).collect()
    }
}

fn theta_axis(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| if i + 1 == n { PI } else { PI * i as f64 / (n - 1) as f64 })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellRecord {
    pub sre2: f64,
    pub entropy: f64,
    /// Extra per-cell values; their meaning depends on the producer.
    pub aux: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SecondAxis {
    Phi(Vec<f64>),
    Time(Vec<usize>),
}

impl SecondAxis {
    pub fn len(&self) -> usize {
        match self {
            SecondAxis::Phi(v) => v.len(),
            SecondAxis::Time(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunMeta {
    pub config: Vec<(String, String)>,
    pub version: String,
    pub wall_seconds: f64,
}

/// Records over a θ axis × (φ or t) axis, θ-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    thetas: Vec<f64>,
    second: SecondAxis,
    records: Vec<CellRecord>,
    meta: RunMeta,
}

impl SweepResult {
    pub fn new(
        thetas: Vec<f64>,
        second: SecondAxis,
        records: Vec<CellRecord>,
        config: Vec<(String, String)>,
        wall_seconds: f64,
    ) -> Self {
        assert_eq!(records.len(), thetas.len() * second.len(), "record count must match the axes");
        Self { thetas, second, records, meta: RunMeta { config, version: VERSION.into(), wall_seconds } }
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn second_axis(&self) -> &SecondAxis {
        &self.second
    }

    pub fn records(&self) -> &[CellRecord] {
        &self.records
    }

    pub fn meta(&self) -> &RunMeta {
        &self.meta
    }

    pub fn record(&self, i_theta: usize, j: usize) -> &CellRecord {
        &self.records[i_theta * self.second.len() + j]
    }

    pub fn max_sre2(&self) -> f64 {
        self.records.iter().map(|r| r.sre2).fold(f64::NEG_INFINITY, f64::max)
    }
}

/// SRE/entropy landscape over initial coin states at a fixed time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub time: usize,
    pub grid: BlochGrid,
    pub lambda: f64,
    pub walkers: usize,
    /// Two-walker family swept over the grid.
    pub pairing: Pairing,
    pub lattice: usize,
    pub boundary: Boundary,
}

impl SweepSpec {
    /// Lattice truncated to `2·time + 3`, the smallest one free of wrap-around.
    pub fn new(time: usize, grid: BlochGrid, lambda: f64, walkers: usize) -> Self {
        Self {
            time,
            grid,
            lambda,
            walkers,
            pairing: Pairing::UpUpDownDown,
            lattice: WalkConfig::minimal_lattice(time),
            boundary: Boundary::Periodic,
        }
    }

    fn config(&self) -> Result<WalkConfig> {
        let cfg = WalkConfig {
            walkers: self.walkers,
            lattice: self.lattice,
            steps: self.time,
            boundary: self.boundary,
            lambda: self.lambda,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn describe(&self) -> Vec<(String, String)> {
        vec![
            ("time".into(), self.time.to_string()),
            ("grid_theta".into(), self.grid.n_theta().to_string()),
            ("grid_phi".into(), self.grid.n_phi().to_string()),
            ("lambda".into(), self.lambda.to_string()),
            ("walkers".into(), self.walkers.to_string()),
            ("pairing".into(), self.pairing.to_string()),
            ("lattice".into(), self.lattice.to_string()),
            ("boundary".into(), self.boundary.to_string()),
        ]
    }
}

/// Bloch-vector components `⟨X⟩, ⟨Y⟩, ⟨Z⟩` of a one-qubit spectrum.
fn bloch_aux(spectrum: &[f64]) -> Vec<f64> {
    if spectrum.len() == 4 {
        spectrum[1..].to_vec()
    } else {
        Vec::new()
    }
}

fn coin_state(response: &CoinResponse, walkers: usize, pairing: Pairing, t: usize, angles: BlochAngles) -> Result<DensityMatrix> {
    if walkers == 1 {
        response.single_pure(t, &angles.coin())
    } else {
        response.pair_pure(t, &pairing.amplitudes(angles))
    }
}

/// Evaluates SRE₂ and entropy at `spec.time` for every grid cell.
///
/// For one walker the cell is `cos(θ/2)|↑⟩ + e^{iφ} sin(θ/2)|↓⟩`; for two it
/// is the `spec.pairing` family. All cells share one coin-basis propagator.
pub fn sweep_bloch(spec: &SweepSpec) -> Result<SweepResult> {
    let started = Instant::now();
    let cfg = spec.config()?;
    let response = CoinResponse::new(&WalkConfig { walkers: 1, ..cfg })?;
    let records = spec.grid.map_cells(|angles| {
        let rho = coin_state(&response, spec.walkers, spec.pairing, spec.time, angles)?;
        let d = diagnose(&rho)?;
        Ok(CellRecord { sre2: d.sre2, entropy: d.entropy, aux: bloch_aux(d.spectrum.expectations()) })
    })?;
    Ok(SweepResult::new(
        spec.grid.thetas(),
        SecondAxis::Phi(spec.grid.phis()),
        records,
        spec.describe(),
        started.elapsed().as_secs_f64(),
    ))
}

/// SRE as a function of θ and time at fixed φ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaTimeSpec {
    pub phi: f64,
    pub n_theta: usize,
    pub steps: usize,
    pub walkers: usize,
    pub pairing: Pairing,
    pub lattice: usize,
    pub boundary: Boundary,
    pub lambda: f64,
}

impl ThetaTimeSpec {
    fn describe(&self) -> Vec<(String, String)> {
        vec![
            ("phi".into(), self.phi.to_string()),
            ("grid_theta".into(), self.n_theta.to_string()),
            ("steps".into(), self.steps.to_string()),
            ("walkers".into(), self.walkers.to_string()),
            ("pairing".into(), self.pairing.to_string()),
            ("lattice".into(), self.lattice.to_string()),
            ("boundary".into(), self.boundary.to_string()),
            ("lambda".into(), self.lambda.to_string()),
        ]
    }
}

pub fn theta_time_map(spec: &ThetaTimeSpec) -> Result<SweepResult> {
    let started = Instant::now();
    if spec.n_theta < 2 {
        return Err(WalkError::Parameter("need at least 2 theta points".into()));
    }
    let cfg = WalkConfig {
        walkers: spec.walkers,
        lattice: spec.lattice,
        steps: spec.steps,
        boundary: spec.boundary,
        lambda: spec.lambda,
    };
    cfg.validate()?;
    let response = CoinResponse::new(&WalkConfig { walkers: 1, ..cfg })?;
    let thetas = theta_axis(spec.n_theta);
    let cells: Vec<(f64, usize)> =
        thetas.iter().flat_map(|&th| (0..=spec.steps).map(move |t| (th, t))).collect();
    let records = cells
        .into_par_iter()
        .map(|(theta, t)| {
            let angles = BlochAngles::new(theta, spec.phi)?;
            let rho = coin_state(&response, spec.walkers, spec.pairing, t, angles)?;
            let d = diagnose(&rho)?;
            Ok(CellRecord { sre2: d.sre2, entropy: d.entropy, aux: bloch_aux(d.spectrum.expectations()) })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult::new(
        thetas,
        SecondAxis::Time((0..=spec.steps).collect()),
        records,
        spec.describe(),
        started.elapsed().as_secs_f64(),
    ))
}
