//! Initial-state library, Bloch-grid sweeps, mixtures and the figure presets.

mod initial;
mod jobs;
mod preset;
mod sweep;

pub use initial::{build_initial, evolve_mixture, InitialCoinSpec, InitialState, Pairing};
pub use jobs::{two_walker_series, Job};
pub use preset::{preset, PlannedOutput, RunPlan, PRESET_NAMES};
pub use sweep::{
    sweep_bloch, theta_time_map, BlochGrid, CellRecord, RunMeta, SecondAxis, SweepResult, SweepSpec, ThetaTimeSpec,
};
