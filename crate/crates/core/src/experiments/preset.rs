//! Named run plans, one per published figure.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use super::initial::{InitialCoinSpec, Pairing};
use super::jobs::Job;
use super::sweep::{BlochGrid, SweepSpec, ThetaTimeSpec};
use crate::error::{Result, WalkError};
use crate::qstate::BlochAngles;
use crate::walk::{Boundary, WalkConfig};

pub const PRESET_NAMES: [&str; 16] = [
    "fig1a", "fig1b", "fig2a", "fig2b", "fig2c", "fig3", "fig4a", "fig4b", "fig5", "fig6", "fig7", "fig8a", "fig8b",
    "fig8c", "fig9", "fig10",
];

const SINGLE_LATTICE: usize = 1001;
const PAIR_LATTICE: usize = 101;
const PAIR_STEPS: usize = 50;
const HEATMAP_STEPS: usize = 100;
const SNAPSHOT_TIME: usize = 50;

#[derive(Debug, Clone, PartialEq)]
pub struct PlannedOutput {
    /// File name relative to the output directory.
    pub file: String,
    pub job: Job,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunPlan {
    pub name: String,
    pub outputs: Vec<PlannedOutput>,
}

fn angles(theta: f64, phi: f64) -> BlochAngles {
    BlochAngles::new(theta, phi).expect("preset angles are in range")
}

fn out(file: impl Into<String>, job: Job) -> PlannedOutput {
    PlannedOutput { file: file.into(), job }
}

fn walk1(file: &str, a: BlochAngles, steps: usize, lambda: f64) -> Result<PlannedOutput> {
    let config = WalkConfig::new(1, SINGLE_LATTICE, steps, Boundary::Periodic)?.with_lambda(lambda)?;
    Ok(out(file, Job::Walk1 { config, angles: a }))
}

fn walk2(file: &str, init: InitialCoinSpec) -> Result<PlannedOutput> {
    let config = WalkConfig::new(2, PAIR_LATTICE, PAIR_STEPS, Boundary::Periodic)?;
    Ok(out(file, Job::Walk2 { config, init, full_spectrum: false }))
}

fn heatmap(file: &str, phi: f64, walkers: usize, steps: usize, lattice: usize) -> PlannedOutput {
    out(
        file,
        Job::ThetaTime(ThetaTimeSpec {
            phi,
            n_theta: BlochGrid::DEFAULT.n_theta(),
            steps,
            walkers,
            pairing: Pairing::UpUpDownDown,
            lattice,
            boundary: Boundary::Periodic,
            lambda: 0.0,
        }),
    )
}

fn snapshot(file: String, time: usize, lambda: f64, walkers: usize, lattice: usize) -> PlannedOutput {
    let mut spec = SweepSpec::new(time, BlochGrid::DEFAULT, lambda, walkers);
    spec.lattice = lattice;
    out(file, Job::Sweep(spec))
}

fn lambda_tag(lambda: f64) -> String {
    format!("{lambda:.3}")
}

/// Resolves a figure name to its list of CSV outputs.
pub fn preset(name: &str) -> Result<RunPlan> {
    let up = angles(0.0, 0.0);
    let outputs = match name {
        "fig1a" => vec![walk1("fig1a.csv", up, 1000, 0.0)?],
        "fig1b" => vec![walk1("fig1b.csv", angles(FRAC_PI_2, FRAC_PI_4), 1000, 0.0)?],
        "fig2a" => vec![heatmap("fig2a.csv", 0.0, 1, HEATMAP_STEPS, SINGLE_LATTICE)],
        "fig2b" => vec![heatmap("fig2b.csv", FRAC_PI_4, 1, HEATMAP_STEPS, SINGLE_LATTICE)],
        "fig2c" => vec![heatmap("fig2c.csv", FRAC_PI_2, 1, HEATMAP_STEPS, SINGLE_LATTICE)],
        "fig3" => vec![out("fig3.csv", Job::Asymptotic(BlochGrid::DEFAULT))],
        "fig4a" => [0.0, 0.001, 0.01, 0.1, 0.2]
            .iter()
            .map(|&l| walk1(&format!("fig4a_lambda{}.csv", lambda_tag(l)), up, 1000, l))
            .collect::<Result<_>>()?,
        "fig4b" => [0.0, 0.2, 0.4, 0.6, 0.8, 1.0]
            .iter()
            .map(|&l| walk1(&format!("fig4b_lambda{}.csv", lambda_tag(l)), up, 50, l))
            .collect::<Result<_>>()?,
        "fig5" => [0.0, 0.01, 0.1, 0.2]
            .iter()
            .map(|&l| {
                let n = WalkConfig::minimal_lattice(SNAPSHOT_TIME);
                snapshot(format!("fig5_lambda{}.csv", lambda_tag(l)), SNAPSHOT_TIME, l, 1, n)
            })
            .collect(),
        "fig6" => vec![snapshot("fig6.csv".into(), SNAPSHOT_TIME, 0.5, 1, WalkConfig::minimal_lattice(SNAPSHOT_TIME))],
        "fig7" => vec![
            walk2("fig7_upup.csv", InitialCoinSpec::TwoCoinBloch { angles: up, pairing: Pairing::UpUpDownDown })?,
            walk2("fig7_bell.csv", InitialCoinSpec::Bell)?,
            walk2("fig7_tbell.csv", InitialCoinSpec::TBell)?,
            walk2("fig7_maxmagic.csv", InitialCoinSpec::MaxMagic2Q)?,
        ],
        "fig8a" => vec![heatmap("fig8a.csv", 0.0, 2, PAIR_STEPS, PAIR_LATTICE)],
        "fig8b" => vec![heatmap("fig8b.csv", FRAC_PI_4, 2, PAIR_STEPS, PAIR_LATTICE)],
        "fig8c" => vec![heatmap("fig8c.csv", FRAC_PI_2, 2, PAIR_STEPS, PAIR_LATTICE)],
        "fig9" => vec![
            snapshot("fig9a.csv".into(), 0, 0.0, 2, PAIR_LATTICE),
            snapshot("fig9b.csv".into(), SNAPSHOT_TIME, 0.0, 2, PAIR_LATTICE),
        ],
        "fig10" => [0.0, 0.2, 0.4, 0.6, 0.8, 1.0]
            .iter()
            .map(|&p| walk2(&format!("fig10_p{p:.1}.csv"), InitialCoinSpec::Werner(p)))
            .collect::<Result<_>>()?,
        _ => return Err(WalkError::UnknownPreset(name.to_string())),
    };
    Ok(RunPlan { name: name.to_string(), outputs })
}
