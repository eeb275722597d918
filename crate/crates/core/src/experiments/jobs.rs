use super::initial::{build_initial, evolve_mixture, InitialCoinSpec, InitialState};
use super::sweep::{sweep_bloch, theta_time_map, BlochGrid, SecondAxis, SweepResult, SweepSpec, ThetaTimeSpec};
use crate::asymptotic::asymptotic_landscape;
use crate::channel::{evolve_channel, DephasingChannel};
use crate::error::{Result, WalkError};
use crate::magic::{diagnose, pauli_labels};
use crate::qstate::{BlochAngles, DensityMatrix, PureState};
use crate::table::{Table, Value};
use crate::walk::{evolve_pure, WalkConfig};

/// One unit of work that produces one CSV table.
#[derive(Debug, Clone, PartialEq)]
pub enum Job {
    Walk1 { config: WalkConfig, angles: BlochAngles },
    Walk2 { config: WalkConfig, init: InitialCoinSpec, full_spectrum: bool },
    Sweep(SweepSpec),
    ThetaTime(ThetaTimeSpec),
    Asymptotic(BlochGrid),
}

impl Job {
    /// Name written into the CSV comment header.
    pub fn command(&self) -> &'static str {
        match self {
            Job::Walk1 { .. } => "walk1",
            Job::Walk2 { .. } => "walk2",
            Job::Sweep(_) => "sweep",
            Job::ThetaTime(_) => "heatmap",
            Job::Asymptotic(_) => "asymptotic",
        }
    }

    /// Flat key/value description for manifests.
    pub fn describe(&self) -> Vec<(String, String)> {
        let mut kv: Vec<(String, String)> = vec![("command".into(), self.command().into())];
        let mut push = |k: &str, v: String| kv.push((k.into(), v));
        match self {
            Job::Walk1 { config, angles } => {
                push("theta", angles.theta().to_string());
                push("phi", angles.phi().to_string());
                push_config(&mut push, config);
            }
            Job::Walk2 { config, init, full_spectrum } => {
                push("init", init.label());
                push("full_spectrum", full_spectrum.to_string());
                push_config(&mut push, config);
            }
            Job::Sweep(s) => {
                push("time", s.time.to_string());
                push("grid_theta", s.grid.n_theta().to_string());
                push("grid_phi", s.grid.n_phi().to_string());
                push("lambda", s.lambda.to_string());
                push("walkers", s.walkers.to_string());
                push("pairing", s.pairing.to_string());
                push("lattice", s.lattice.to_string());
                push("boundary", s.boundary.to_string());
            }
            Job::ThetaTime(s) => {
                push("phi", s.phi.to_string());
                push("grid_theta", s.n_theta.to_string());
                push("steps", s.steps.to_string());
                push("walkers", s.walkers.to_string());
                push("pairing", s.pairing.to_string());
                push("lattice", s.lattice.to_string());
                push("boundary", s.boundary.to_string());
                push("lambda", s.lambda.to_string());
            }
            Job::Asymptotic(g) => {
                push("grid_theta", g.n_theta().to_string());
                push("grid_phi", g.n_phi().to_string());
            }
        }
        kv
    }

    pub fn run(&self) -> Result<Table> {
        match self {
            Job::Walk1 { config, angles } => walk1(config, *angles),
            Job::Walk2 { config, init, full_spectrum } => walk2(config, init, *full_spectrum),
            Job::Sweep(spec) => {
                let res = sweep_bloch(spec)?;
                landscape_table(&res, ["theta", "phi", "sre2", "entropy"], |_| Vec::new())
            }
            Job::ThetaTime(spec) => theta_time_table(&theta_time_map(spec)?, spec.phi),
            Job::Asymptotic(grid) => {
                let res = asymptotic_landscape(grid)?;
                landscape_table(&res, ["theta", "phi", "sre2_t0", "sre2", "entropy"], |aux| aux.to_vec())
            }
        }
    }
}

fn push_config(push: &mut impl FnMut(&str, String), config: &WalkConfig) {
    push("walkers", config.walkers.to_string());
    push("lattice", config.lattice.to_string());
    push("steps", config.steps.to_string());
    push("boundary", config.boundary.to_string());
    push("lambda", config.lambda.to_string());
}

fn walk1(config: &WalkConfig, angles: BlochAngles) -> Result<Table> {
    config.validate()?;
    if config.walkers != 1 {
        return Err(WalkError::Parameter("walk1 needs a single-walker config".into()));
    }
    let series = if config.lambda > 0.0 {
        evolve_channel(angles, config, &DephasingChannel::new(config.lambda)?)?
    } else {
        let psi = PureState::localized(config.layout()?, &angles.coin())?;
        evolve_pure(&psi, config, |_, _| {})?
    };
    let mut table = Table::new(["t", "sre2", "entropy", "exp_x", "exp_y", "exp_z"]);
    for (t, rho) in series.iter().enumerate() {
        let d = diagnose(rho)?;
        let e = d.spectrum.expectations();
        table.push(vec![
            Value::Int(t as i64),
            Value::Float(d.sre2),
            Value::Float(d.entropy),
            Value::Float(e[1]),
            Value::Float(e[2]),
            Value::Float(e[3]),
        ])?;
    }
    Ok(table)
}

/// Reduced two-coin series for any two-walker initial spec.
pub fn two_walker_series(config: &WalkConfig, init: &InitialCoinSpec) -> Result<Vec<DensityMatrix>> {
    match build_initial(init, config)? {
        InitialState::Pure(psi) => evolve_pure(&psi, config, |_, _| {}),
        InitialState::Mixture(parts) => evolve_mixture(&parts, config),
    }
}

fn walk2(config: &WalkConfig, init: &InitialCoinSpec, full_spectrum: bool) -> Result<Table> {
    if config.walkers != 2 {
        return Err(WalkError::Parameter("walk2 needs a two-walker config".into()));
    }
    let series = two_walker_series(config, init)?;
    let mut columns: Vec<String> = vec!["t".into(), "sre2".into(), "entropy".into()];
    if full_spectrum {
        columns.extend(pauli_labels(2).into_iter().map(|l| format!("exp_{l}")));
    }
    let mut table = Table::new(columns);
    for (t, rho) in series.iter().enumerate() {
        let d = diagnose(rho)?;
        let mut row = vec![Value::Int(t as i64), Value::Float(d.sre2), Value::Float(d.entropy)];
        if full_spectrum {
            row.extend(d.spectrum.expectations().iter().map(|&v| Value::Float(v)));
        }
        table.push(row)?;
    }
    Ok(table)
}

fn landscape_table<const K: usize>(
    res: &SweepResult,
    columns: [&str; K],
    extra: impl Fn(&[f64]) -> Vec<f64>,
) -> Result<Table> {
    let SecondAxis::Phi(phis) = res.second_axis() else {
        return Err(WalkError::Layout("landscape needs a phi axis".into()));
    };
    let mut table = Table::new(columns);
    for (i, &theta) in res.thetas().iter().enumerate() {
        for (j, &phi) in phis.iter().enumerate() {
            let rec = res.record(i, j);
            let mut row = vec![Value::Float(theta), Value::Float(phi)];
            row.extend(extra(&rec.aux).into_iter().map(Value::Float));
            row.push(Value::Float(rec.sre2));
            row.push(Value::Float(rec.entropy));
            table.push(row)?;
        }
    }
    Ok(table)
}

fn theta_time_table(res: &SweepResult, phi: f64) -> Result<Table> {
    let SecondAxis::Time(times) = res.second_axis() else {
        return Err(WalkError::Layout("heatmap needs a time axis".into()));
    };
    let mut table = Table::new(["theta", "phi", "t", "sre2", "entropy"]);
    for (i, &theta) in res.thetas().iter().enumerate() {
        for (j, &t) in times.iter().enumerate() {
            let rec = res.record(i, j);
            table.push(vec![
                Value::Float(theta),
                Value::Float(phi),
                Value::Int(t as i64),
                Value::Float(rec.sre2),
                Value::Float(rec.entropy),
            ])?;
        }
    }
    Ok(table)
}
