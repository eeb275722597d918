use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Result, WalkError};
use crate::qstate::{BlochAngles, DensityMatrix, PureState};
use crate::walk::{evolve_pure, WalkConfig};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Which pair of two-coin basis states a [`InitialCoinSpec::TwoCoinBloch`] rotates between.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pairing {
    /// `cos(θ/2)|↑↑⟩ + e^{iφ} sin(θ/2)|↓↓⟩`
    UpUpDownDown,
    /// `cos(θ/2)|↑↓⟩ + e^{iφ} sin(θ/2)|↓↑⟩`
    UpDownDownUp,
}

impl std::str::FromStr for Pairing {
    type Err = WalkError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "upupdowndown" | "same" => Ok(Pairing::UpUpDownDown),
            "updowndownup" | "opposite" => Ok(Pairing::UpDownDownUp),
            _ => Err(WalkError::Parameter(format!("unknown pairing `{s}`"))),
        }
    }
}

impl std::fmt::Display for Pairing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Pairing::UpUpDownDown => "upup-downdown",
            Pairing::UpDownDownUp => "updown-downup",
        })
    }
}

impl Pairing {
    pub fn amplitudes(self, angles: BlochAngles) -> [Complex64; 4] {
        let [a, b] = angles.coin();
        let mut chi = [ZERO; 4];
        match self {
            Pairing::UpUpDownDown => {
                chi[0] = a;
                chi[3] = b;
            }
            Pairing::UpDownDownUp => {
                chi[1] = a;
                chi[2] = b;
            }
        }
        chi
    }
}

/// Initial coin configuration; walkers always start at the lattice origin.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialCoinSpec {
    Bloch(BlochAngles),
    TwoCoinBloch { angles: BlochAngles, pairing: Pairing },
    /// `(|↑↑⟩ + |↓↓⟩)/√2`
    Bell,
    /// Bell state with `T` applied to the first coin.
    TBell,
    /// `(|↑↑⟩ + i|↑↓⟩ + i|↓↑⟩ + i|↓↓⟩)/2`
    MaxMagic2Q,
    /// `p|Φ⁺⟩⟨Φ⁺| + (1 − p)·1/4`
    Werner(f64),
    /// Raw coin amplitudes, length 2 (one walker) or 4 (two walkers).
    Explicit(Vec<Complex64>),
}

/// A pure initial state or a convex decomposition into pure components.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialState {
    Pure(PureState),
    Mixture(Vec<(f64, PureState)>),
}

impl InitialCoinSpec {
    pub fn walkers(&self) -> usize {
        match self {
            InitialCoinSpec::Bloch(_) => 1,
            InitialCoinSpec::Explicit(v) if v.len() == 2 => 1,
            _ => 2,
        }
    }

    /// Short name used in file names and manifests.
    pub fn label(&self) -> String {
        match self {
            InitialCoinSpec::Bloch(a) => format!("bloch(theta={}, phi={})", a.theta(), a.phi()),
            InitialCoinSpec::TwoCoinBloch { angles, pairing } => {
                format!("{pairing}(theta={}, phi={})", angles.theta(), angles.phi())
            }
            InitialCoinSpec::Bell => "bell".into(),
            InitialCoinSpec::TBell => "tbell".into(),
            InitialCoinSpec::MaxMagic2Q => "maxmagic".into(),
            InitialCoinSpec::Werner(p) => format!("werner(p={p})"),
            InitialCoinSpec::Explicit(v) => format!("explicit({} amplitudes)", v.len()),
        }
    }

    /// Coin amplitudes for pure specs, `None` for Werner.
    pub fn coin_amplitudes(&self) -> Option<Vec<Complex64>> {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let i_half = Complex64::new(0.0, 0.5);
        match self {
            InitialCoinSpec::Bloch(a) => Some(a.coin().to_vec()),
            InitialCoinSpec::TwoCoinBloch { angles, pairing } => Some(pairing.amplitudes(*angles).to_vec()),
            InitialCoinSpec::Bell => Some(vec![h, ZERO, ZERO, h]),
            InitialCoinSpec::TBell => Some(vec![h, ZERO, ZERO, Complex64::from_polar(FRAC_1_SQRT_2, FRAC_PI_4)]),
            InitialCoinSpec::MaxMagic2Q => Some(vec![Complex64::new(0.5, 0.0), i_half, i_half, i_half]),
            InitialCoinSpec::Werner(_) => None,
            InitialCoinSpec::Explicit(v) => Some(v.clone()),
        }
    }

    /// Weighted pure coin components; a single unit-weight entry for pure specs.
    pub fn coin_components(&self) -> Result<Vec<(f64, Vec<Complex64>)>> {
        match self {
            InitialCoinSpec::Werner(p) => {
                let p = *p;
                if !(0.0..=1.0).contains(&p) {
                    return Err(WalkError::Parameter(format!("Werner parameter {p} outside [0, 1]")));
                }
                let mut parts = Vec::with_capacity(5);
                if p > 0.0 {
                    parts.push((p, InitialCoinSpec::Bell.coin_amplitudes().expect("pure")));
                }
                if p < 1.0 {
                    for k in 0..4 {
                        let mut e = vec![ZERO; 4];
                        e[k] = Complex64::new(1.0, 0.0);
                        parts.push(((1.0 - p) / 4.0, e));
                    }
                }
                Ok(parts)
            }
            InitialCoinSpec::Explicit(v) if v.len() != 2 && v.len() != 4 => Err(WalkError::Parameter(format!(
                "explicit coin needs 2 or 4 amplitudes, got {}",
                v.len()
            ))),
            _ => Ok(vec![(1.0, self.coin_amplitudes().expect("pure spec"))]),
        }
    }

    /// The initial coin density matrix (2×2 or 4×4).
    pub fn coin_density(&self) -> Result<DensityMatrix> {
        let parts = self.coin_components()?;
        let dim = parts[0].1.len();
        let mut rho = DensityMatrix::zeros(dim);
        for (w, amps) in parts {
            rho.add_scaled(w, &DensityMatrix::from_pure(&amps)?)?;
        }
        Ok(rho)
    }
}

/// Places the coin spec at the lattice origin(s) of `config`.
pub fn build_initial(spec: &InitialCoinSpec, config: &WalkConfig) -> Result<InitialState> {
    if spec.walkers() != config.walkers {
        return Err(WalkError::Parameter(format!(
            "initial state `{}` is for {} walker(s), config has {}",
            spec.label(),
            spec.walkers(),
            config.walkers
        )));
    }
    let layout = config.layout()?;
    let parts = spec.coin_components()?;
    if matches!(spec, InitialCoinSpec::Werner(_)) {
        let comps = parts
            .into_iter()
            .map(|(w, amps)| Ok((w, PureState::localized(layout, &amps)?)))
            .collect::<Result<Vec<_>>>()?;
        return Ok(InitialState::Mixture(comps));
    }
    let (_, amps) = parts.into_iter().next().expect("one component");
    Ok(InitialState::Pure(PureState::localized(layout, &amps)?))
}

/// Evolves every component and returns the weight-averaged reduced coin series.
pub fn evolve_mixture(components: &[(f64, PureState)], config: &WalkConfig) -> Result<Vec<DensityMatrix>> {
    if components.is_empty() {
        return Err(WalkError::Parameter("empty mixture".into()));
    }
    let total: f64 = components.iter().map(|(w, _)| w).sum();
    if (total - 1.0).abs() > 1e-12 || components.iter().any(|(w, _)| *w < 0.0) {
        return Err(WalkError::Parameter(format!("mixture weights sum to {total}, expected 1")));
    }
    let series: Vec<Vec<DensityMatrix>> = components
        .par_iter()
        .map(|(_, state)| evolve_pure(state, config, |_, _| {}))
        .collect::<Result<_>>()?;
    let dim = series[0][0].dim();
    let mut out = vec![DensityMatrix::zeros(dim); config.steps + 1];
    for ((w, _), s) in components.iter().zip(&series) {
        for (acc, rho) in out.iter_mut().zip(s) {
            acc.add_scaled(*w, rho)?;
        }
    }
    Ok(out)
}
