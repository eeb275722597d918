mod angle;
mod config;

use std::f64::consts::{LN_2, PI, TAU};
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use magicwalk::experiments::{preset, BlochGrid, InitialCoinSpec, Job, Pairing, SweepSpec, ThetaTimeSpec, PRESET_NAMES};
use magicwalk::qstate::BlochAngles;
use magicwalk::table::Table;
use magicwalk::walk::{Boundary, WalkConfig};
use magicwalk::{WalkError, VERSION};
use rayon::prelude::*;

use angle::parse_angle;
use config::FileConfig;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Walk(WalkError),
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
            CliError::Walk(e) => write!(f, "{e}"),
        }
    }
}

impl From<WalkError> for CliError {
    fn from(e: WalkError) -> Self {
        CliError::Walk(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 1,
            CliError::Walk(e) => match e {
                WalkError::Wrap { .. } | WalkError::LatticeTooSmall { .. } => 3,
                WalkError::UnknownPreset(_) => 4,
                WalkError::Hermiticity { .. } => 1,
                WalkError::ZeroState | WalkError::Layout(_) | WalkError::Parameter(_) => 2,
            },
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "magicwalk", version, about = "Quantum-walk magic (stabilizer Renyi entropy) simulator")]
struct Cli {
    /// Flat TOML file supplying any flag of the subcommand
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Worker threads (default: available parallelism)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Report entropy in bits instead of nats
    #[arg(long, global = true)]
    entropy_base2: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Single walker time series
    Walk1(Walk1Args),
    /// Two walker time series
    Walk2(Walk2Args),
    /// Landscape over initial Bloch angles at one time
    Sweep(SweepArgs),
    /// SRE over theta and time at fixed phi
    Heatmap(HeatmapArgs),
    /// Long-time closed-form landscape
    Asymptotic(AsymptoticArgs),
    /// Reproduce one figure's data set
    Preset(PresetArgs),
}

#[derive(Args, Debug, Default)]
struct LatticeArgs {
    /// Odd number of sites (default 2T+3)
    #[arg(long)]
    lattice: Option<usize>,
    /// periodic | error-on-wrap
    #[arg(long)]
    boundary: Option<String>,
}

#[derive(Args, Debug)]
struct Walk1Args {
    /// Polar angle in [0, pi]; accepts forms like pi/4
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
    /// Azimuth in [0, 2pi)
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<String>,
    #[arg(long)]
    steps: Option<usize>,
    #[command(flatten)]
    lattice: LatticeArgs,
    /// Coin dephasing strength in [0, 1]
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<f64>,
    /// CSV path (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Walk2Args {
    /// bloch | updown | bell | tbell | maxmagic | werner
    #[arg(long)]
    init: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<String>,
    /// Werner mixing parameter in [0, 1]
    #[arg(long, allow_hyphen_values = true)]
    p: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    #[command(flatten)]
    lattice: LatticeArgs,
    /// Append all 16 Pauli expectations
    #[arg(long)]
    full_spectrum: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    time: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    grid_theta: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    grid_phi: Option<i64>,
    /// 1 or 2
    #[arg(long)]
    walkers: Option<usize>,
    /// Two-walker family: upup-downdown | updown-downup
    #[arg(long)]
    pairing: Option<String>,
    #[command(flatten)]
    lattice: LatticeArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct HeatmapArgs {
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<String>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    grid_theta: Option<i64>,
    #[arg(long)]
    walkers: Option<usize>,
    #[arg(long)]
    pairing: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<f64>,
    #[command(flatten)]
    lattice: LatticeArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct AsymptoticArgs {
    #[arg(long, allow_hyphen_values = true)]
    grid_theta: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    grid_phi: Option<i64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PresetArgs {
    /// One of fig1a, fig1b, fig2a..c, fig3, fig4a, fig4b, fig5, fig6, fig7, fig8a..c, fig9, fig10
    name: String,
    #[arg(long)]
    outdir: Option<PathBuf>,
}

const DEFAULT_STEPS: usize = 100;
const DEFAULT_SWEEP_TIME: usize = 50;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn in_range(flag: &str, v: f64, lo: f64, hi: f64, hi_open: bool) -> Result<f64, CliError> {
    let ok = v >= lo && if hi_open { v < hi } else { v <= hi };
    if ok {
        Ok(v)
    } else {
        let close = if hi_open { ")" } else { "]" };
        Err(usage(format!("--{flag} must be in [{lo}, {hi}{close}, got {v}")))
    }
}

fn angles(file: &FileConfig, theta: Option<String>, phi: Option<String>) -> Result<BlochAngles, CliError> {
    let theta = file.pick_with(theta.map(|s| parse_angle(&s)).transpose().map_err(|e| usage(format!("--theta: {e}")))?, "theta", parse_angle)?;
    let phi = file.pick_with(phi.map(|s| parse_angle(&s)).transpose().map_err(|e| usage(format!("--phi: {e}")))?, "phi", parse_angle)?;
    let theta = in_range("theta", theta.unwrap_or(0.0), 0.0, PI, false)?;
    let phi = in_range("phi", phi.unwrap_or(0.0), 0.0, TAU, true)?;
    Ok(BlochAngles::new(theta, phi)?)
}

fn single_angle(file: &FileConfig, flag: &str, raw: Option<String>) -> Result<f64, CliError> {
    let v = file.pick_with(raw.map(|s| parse_angle(&s)).transpose().map_err(|e| usage(format!("--{flag}: {e}")))?, flag, parse_angle)?;
    in_range(flag, v.unwrap_or(0.0), 0.0, TAU, true)
}

fn lambda(file: &FileConfig, cli: Option<f64>) -> Result<f64, CliError> {
    in_range("lambda", file.pick(cli, "lambda")?.unwrap_or(0.0), 0.0, 1.0, false)
}

fn grid_axis(file: &FileConfig, flag: &str, cli: Option<i64>, default: usize) -> Result<usize, CliError> {
    match file.pick(cli, flag)? {
        None => Ok(default),
        Some(n) if n >= 2 => Ok(n as usize),
        Some(n) => Err(usage(format!("--{flag} must be at least 2 (grid too coarse), got {n}"))),
    }
}

fn grid(file: &FileConfig, theta: Option<i64>, phi: Option<i64>) -> Result<BlochGrid, CliError> {
    let nt = grid_axis(file, "grid-theta", theta, BlochGrid::DEFAULT.n_theta())?;
    let np = grid_axis(file, "grid-phi", phi, BlochGrid::DEFAULT.n_phi())?;
    Ok(BlochGrid::new(nt, np)?)
}

fn lattice(file: &FileConfig, args: LatticeArgs, steps: usize) -> Result<(usize, Boundary), CliError> {
    let n = file.pick(args.lattice, "lattice")?.unwrap_or_else(|| WalkConfig::minimal_lattice(steps));
    if n.is_multiple_of(2) {
        return Err(usage(format!("--lattice must be odd, got {n}")));
    }
    let boundary = match file.pick::<String>(args.boundary, "boundary")? {
        None => Boundary::Periodic,
        Some(s) => s.parse().map_err(|e: WalkError| usage(format!("--boundary: {e}")))?,
    };
    Ok((n, boundary))
}

fn walkers(file: &FileConfig, cli: Option<usize>) -> Result<usize, CliError> {
    match file.pick(cli, "walkers")?.unwrap_or(1) {
        w @ (1 | 2) => Ok(w),
        w => Err(usage(format!("--walkers must be 1 or 2, got {w}"))),
    }
}

fn pairing(file: &FileConfig, cli: Option<String>) -> Result<Pairing, CliError> {
    match file.pick::<String>(cli, "pairing")? {
        None => Ok(Pairing::UpUpDownDown),
        Some(s) => s.parse().map_err(|e: WalkError| usage(format!("--pairing: {e}"))),
    }
}

const LATTICE_KEYS: [&str; 2] = ["lattice", "boundary"];

fn keys(specific: &[&'static str], with_lattice: bool) -> Vec<&'static str> {
    let mut all = specific.to_vec();
    if with_lattice {
        all.extend(LATTICE_KEYS);
    }
    all.extend(["out", "jobs", "entropy-base2"]);
    all
}

/// A resolved subcommand: what to run and where its output goes.
enum Plan {
    Single { job: Job, out: Option<PathBuf> },
    Preset { name: String, outputs: Vec<(String, Job)>, outdir: PathBuf },
}

fn resolve(command: Command, file: &FileConfig) -> Result<Plan, CliError> {
    let out_of = |cli: Option<PathBuf>| file.pick(cli, "out");
    match command {
        Command::Walk1(a) => {
            file.check_keys(&keys(&["theta", "phi", "steps", "lambda"], true))?;
            let angles = angles(file, a.theta, a.phi)?;
            let steps = file.pick(a.steps, "steps")?.unwrap_or(DEFAULT_STEPS);
            let (n, boundary) = lattice(file, a.lattice, steps)?;
            let config = WalkConfig::new(1, n, steps, boundary)?.with_lambda(lambda(file, a.lambda)?)?;
            Ok(Plan::Single { job: Job::Walk1 { config, angles }, out: out_of(a.out)? })
        }
        Command::Walk2(a) => {
            file.check_keys(&keys(&["init", "theta", "phi", "p", "steps", "full-spectrum"], true))?;
            let init_name = file.pick::<String>(a.init, "init")?.unwrap_or_else(|| "bloch".into());
            let init = match init_name.to_ascii_lowercase().as_str() {
                "bloch" => InitialCoinSpec::TwoCoinBloch { angles: angles(file, a.theta, a.phi)?, pairing: Pairing::UpUpDownDown },
                "updown" => InitialCoinSpec::TwoCoinBloch { angles: angles(file, a.theta, a.phi)?, pairing: Pairing::UpDownDownUp },
                "bell" => InitialCoinSpec::Bell,
                "tbell" => InitialCoinSpec::TBell,
                "maxmagic" => InitialCoinSpec::MaxMagic2Q,
                "werner" => {
                    let p = file.pick(a.p, "p")?.ok_or_else(|| usage("--p is required with --init werner"))?;
                    InitialCoinSpec::Werner(in_range("p", p, 0.0, 1.0, false)?)
                }
                other => {
                    return Err(usage(format!(
                        "--init must be one of bloch, updown, bell, tbell, maxmagic, werner; got `{other}`"
                    )))
                }
            };
            let steps = file.pick(a.steps, "steps")?.unwrap_or(DEFAULT_STEPS);
            let (n, boundary) = lattice(file, a.lattice, steps)?;
            let config = WalkConfig::new(2, n, steps, boundary)?;
            let full_spectrum = file.flag(a.full_spectrum, "full-spectrum")?;
            Ok(Plan::Single { job: Job::Walk2 { config, init, full_spectrum }, out: out_of(a.out)? })
        }
        Command::Sweep(a) => {
            file.check_keys(&keys(&["time", "lambda", "grid-theta", "grid-phi", "walkers", "pairing"], true))?;
            let time = file.pick(a.time, "time")?.unwrap_or(DEFAULT_SWEEP_TIME);
            let grid = grid(file, a.grid_theta, a.grid_phi)?;
            let walkers = walkers(file, a.walkers)?;
            let lambda = lambda(file, a.lambda)?;
            if lambda > 0.0 && walkers == 2 {
                return Err(usage("--lambda > 0 is only supported with --walkers 1"));
            }
            let mut spec = SweepSpec::new(time, grid, lambda, walkers);
            spec.pairing = pairing(file, a.pairing)?;
            (spec.lattice, spec.boundary) = lattice(file, a.lattice, time)?;
            WalkConfig { walkers, lattice: spec.lattice, steps: time, boundary: spec.boundary, lambda }.validate()?;
            Ok(Plan::Single { job: Job::Sweep(spec), out: out_of(a.out)? })
        }
        Command::Heatmap(a) => {
            file.check_keys(&keys(&["phi", "steps", "grid-theta", "walkers", "pairing", "lambda"], true))?;
            let phi = single_angle(file, "phi", a.phi)?;
            let steps = file.pick(a.steps, "steps")?.unwrap_or(DEFAULT_STEPS);
            let n_theta = grid_axis(file, "grid-theta", a.grid_theta, BlochGrid::DEFAULT.n_theta())?;
            let walkers = walkers(file, a.walkers)?;
            let lambda = lambda(file, a.lambda)?;
            if lambda > 0.0 && walkers == 2 {
                return Err(usage("--lambda > 0 is only supported with --walkers 1"));
            }
            let (n, boundary) = lattice(file, a.lattice, steps)?;
            WalkConfig { walkers, lattice: n, steps, boundary, lambda }.validate()?;
            let spec = ThetaTimeSpec {
                phi,
                n_theta,
                steps,
                walkers,
                pairing: pairing(file, a.pairing)?,
                lattice: n,
                boundary,
                lambda,
            };
            Ok(Plan::Single { job: Job::ThetaTime(spec), out: out_of(a.out)? })
        }
        Command::Asymptotic(a) => {
            file.check_keys(&keys(&["grid-theta", "grid-phi"], false))?;
            Ok(Plan::Single { job: Job::Asymptotic(grid(file, a.grid_theta, a.grid_phi)?), out: out_of(a.out)? })
        }
        Command::Preset(a) => {
            file.check_keys(&["outdir", "jobs", "entropy-base2"])?;
            let plan = preset(&a.name)?;
            let outdir = file.pick(a.outdir, "outdir")?.unwrap_or_else(|| PathBuf::from("."));
            let outputs = plan.outputs.into_iter().map(|o| (o.file, o.job)).collect();
            Ok(Plan::Preset { name: plan.name, outputs, outdir })
        }
    }
}

fn render(job: &Job, entropy_base2: bool) -> Result<Table, CliError> {
    let mut table = job.run()?;
    if entropy_base2 {
        table.map_column("entropy", |v| v / LN_2)?;
    }
    Ok(table)
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| CliError::Io(format!("cannot create {}: {e}", parent.display())))?;
    }
    fs::write(path, contents).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn unix_now() -> f64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs_f64()).unwrap_or(0.0)
}

struct Manifest {
    lines: Vec<(String, String)>,
}

impl Manifest {
    fn new(started: f64, entropy_base2: bool, file: &FileConfig) -> Self {
        let args: Vec<String> = std::env::args().collect();
        let mut lines = vec![
            ("command_line".to_string(), args.join(" ")),
            ("version".to_string(), VERSION.to_string()),
            ("started_unix".to_string(), format!("{started:.3}")),
            ("threads".to_string(), rayon::current_num_threads().to_string()),
            ("entropy_unit".to_string(), if entropy_base2 { "bits" } else { "nats" }.to_string()),
        ];
        lines.extend(file.entries().map(|(k, v)| (format!("config_file.{k}"), v.clone())));
        Self { lines }
    }

    fn output(&mut self, index: usize, file: &str, job: &Job) {
        self.lines.push((format!("output.{index}"), file.to_string()));
        for (k, v) in job.describe() {
            self.lines.push((format!("output.{index}.{k}"), v));
        }
    }

    fn finish(mut self, path: &Path) -> Result<(), CliError> {
        self.lines.push(("finished_unix".to_string(), format!("{:.3}", unix_now())));
        let text: String = self.lines.iter().map(|(k, v)| format!("{k}={v}\n")).collect();
        write_file(path, text.as_bytes())
    }
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn execute(plan: Plan, entropy_base2: bool, file: &FileConfig) -> Result<(), CliError> {
    let started = unix_now();
    match plan {
        Plan::Single { job, out } => {
            let csv = render(&job, entropy_base2)?.to_csv_string(job.command());
            match out {
                None => io::stdout().lock().write_all(csv.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
                Some(path) => {
                    write_file(&path, csv.as_bytes())?;
                    let mut manifest = Manifest::new(started, entropy_base2, file);
                    manifest.output(0, &path.display().to_string(), &job);
                    manifest.finish(&with_suffix(&path, ".manifest"))
                }
            }
        }
        Plan::Preset { name, outputs, outdir } => {
            let tables: Vec<Table> =
                outputs.par_iter().map(|(_, job)| render(job, entropy_base2)).collect::<Result<_, _>>()?;
            let mut manifest = Manifest::new(started, entropy_base2, file);
            manifest.lines.push(("preset".to_string(), name.clone()));
            for (i, ((file_name, job), table)) in outputs.iter().zip(&tables).enumerate() {
                write_file(&outdir.join(file_name), table.to_csv_string(job.command()).as_bytes())?;
                manifest.output(i, file_name, job);
            }
            manifest.finish(&outdir.join(format!("{name}.manifest")))
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let jobs = file.pick(cli.jobs, "jobs")?;
    if let Some(n) = jobs {
        if n == 0 {
            return Err(usage("--jobs must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Io(format!("cannot start worker pool: {e}")))?;
    }
    let entropy_base2 = file.flag(cli.entropy_base2, "entropy-base2")?;
    let plan = resolve(cli.command, &file)?;
    execute(plan, entropy_base2, &file)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if let CliError::Walk(WalkError::UnknownPreset(_)) = e {
                eprintln!("known presets: {}", PRESET_NAMES.join(", "));
            }
            ExitCode::from(e.exit_code())
        }
    }
}
