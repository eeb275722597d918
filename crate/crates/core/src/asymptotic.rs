//! Long-time reduced coin state of the Hadamard walk started at the origin.

use std::f64::consts::SQRT_2;
use std::ops::RangeInclusive;

use num_complex::Complex64;

use crate::error::{Result, WalkError};
use crate::experiments::{BlochGrid, CellRecord, SecondAxis, SweepResult};
use crate::magic::{sre, von_neumann_entropy};
use crate::qstate::{BlochAngles, DensityMatrix};
use crate::response::CoinResponse;
use crate::walk::{Boundary, WalkConfig};

/// `(√2 − 1) / (2√2)`.
pub const B1: f64 = (SQRT_2 - 1.0) / (2.0 * SQRT_2);

/// `lim ρ_C = [[A, B], [B*, C]]` with `A + C = 1`, rows and columns ordered `↑, ↓`.
///
/// With `h = θ/2`:
/// `A = b₁(3 + √2 − 2sin²h + sin(2h)cosφ)`,
/// `B = b₁(1 − 2sin²h + sin(2h)(cosφ − i√2 sinφ))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticCoin {
    pub a: f64,
    pub b: Complex64,
    pub c: f64,
}

impl AsymptoticCoin {
    pub fn new(angles: BlochAngles) -> Self {
        let (h, phi) = (angles.theta() / 2.0, angles.phi());
        let sin2 = h.sin().powi(2);
        let sin2h = (2.0 * h).sin();
        let a = B1 * (3.0 + SQRT_2 - 2.0 * sin2 + sin2h * phi.cos());
        let b = B1 * (Complex64::new(1.0 - 2.0 * sin2, 0.0) + sin2h * Complex64::new(phi.cos(), -SQRT_2 * phi.sin()));
        Self { a, b, c: 1.0 - a }
    }

    /// `B` sits at (row ↑, column ↓).
    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::new(
            2,
            vec![Complex64::new(self.a, 0.0), self.b, self.b.conj(), Complex64::new(self.c, 0.0)],
        )
        .expect("2x2")
    }
}

pub fn asymptotic_coin(angles: BlochAngles) -> DensityMatrix {
    AsymptoticCoin::new(angles).density()
}

/// Late-time window used to operationalize the `t → ∞` limit.
pub const DEFAULT_AVERAGE_WINDOW: RangeInclusive<usize> = 300..=400;

/// Mean reduced coin over `window`, simulated on a lattice wide enough that
/// the walker never reaches the boundary.
pub fn time_averaged_coin(angles: BlochAngles, window: RangeInclusive<usize>) -> Result<DensityMatrix> {
    if window.is_empty() {
        return Err(WalkError::Parameter("empty averaging window".into()));
    }
    let end = *window.end();
    let config = WalkConfig::new(1, WalkConfig::minimal_lattice(end), end, Boundary::ErrorOnWrap)?;
    let response = CoinResponse::unitary(&config)?;
    time_averaged_from(&response, angles, window)
}

/// Same as [`time_averaged_coin`] reusing a precomputed propagator.
pub fn time_averaged_from(
    response: &CoinResponse,
    angles: BlochAngles,
    window: RangeInclusive<usize>,
) -> Result<DensityMatrix> {
    let rho0 = DensityMatrix::from_pure(&angles.coin())?;
    let count = window.clone().count() as f64;
    let mut avg = DensityMatrix::zeros(2);
    for t in window {
        avg.add_scaled(1.0 / count, &response.single(t, &rho0)?)?;
    }
    Ok(avg)
}

/// Asymptotic SRE₂ and entropy over a Bloch grid. Each record carries the
/// `t = 0` SRE₂ of the initial coin as its single auxiliary value.
pub fn asymptotic_landscape(grid: &BlochGrid) -> Result<SweepResult> {
    let started = std::time::Instant::now();
    let records = grid.map_cells(|angles| {
        let rho = asymptotic_coin(angles);
        let initial = DensityMatrix::from_pure(&angles.coin())?;
        Ok(CellRecord { sre2: sre(&rho, 2.0)?, entropy: von_neumann_entropy(&rho)?, aux: vec![sre(&initial, 2.0)?] })
    })?;
    Ok(SweepResult::new(
        grid.thetas(),
        SecondAxis::Phi(grid.phis()),
        records,
        vec![
            ("kind".into(), "asymptotic".into()),
            ("grid_theta".into(), grid.n_theta().to_string()),
            ("grid_phi".into(), grid.n_phi().to_string()),
        ],
        started.elapsed().as_secs_f64(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, PI, TAU};

    #[test]
    fn closed_form_examples() {
        let up = AsymptoticCoin::new(BlochAngles::new(0.0, 0.0).unwrap());
        assert_abs_diff_eq!(up.a, B1 * (3.0 + SQRT_2), epsilon = 1e-15);
        assert_abs_diff_eq!(up.a, 0.64645, epsilon = 1e-5);
        assert_abs_diff_eq!(up.b.re, B1, epsilon = 1e-15);
        assert_abs_diff_eq!(up.b.re, 0.14645, epsilon = 1e-5);
        assert_eq!(up.a + up.c, 1.0);

        let down = AsymptoticCoin::new(BlochAngles::new(PI, 0.0).unwrap());
        assert_abs_diff_eq!(down.c, up.a, epsilon = 1e-15);
        assert_abs_diff_eq!(down.b.re, -B1, epsilon = 1e-15);

        // |+i⟩: balanced populations, purely imaginary coherence
        let y = AsymptoticCoin::new(BlochAngles::new(FRAC_PI_2, FRAC_PI_2).unwrap());
        assert_abs_diff_eq!(y.a, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(y.b.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(y.b.im, -SQRT_2 * B1, epsilon = 1e-15);
    }

    #[test]
    fn matches_late_time_average() {
        let config = WalkConfig::new(1, WalkConfig::minimal_lattice(400), 400, Boundary::ErrorOnWrap).unwrap();
        let response = CoinResponse::unitary(&config).unwrap();
        for (theta, phi) in [(0.0, 0.0), (FRAC_PI_2, 0.0), (0.7, 2.0), (2.5, 4.0)] {
            let angles = BlochAngles::new(theta, phi).unwrap();
            let sim = time_averaged_from(&response, angles, DEFAULT_AVERAGE_WINDOW).unwrap();
            assert!(sim.max_abs_diff(&asymptotic_coin(angles)) < 0.01, "theta={theta} phi={phi}");
        }
    }

    #[test]
    fn psd_and_ranges_on_fine_grid() {
        for i in 0..181 {
            for j in 0..360 {
                let angles = BlochAngles::new(PI * i as f64 / 180.0, TAU * j as f64 / 360.0).unwrap();
                let m = AsymptoticCoin::new(angles);
                assert_eq!(m.a + m.c, 1.0);
                assert!((0.0..=1.0).contains(&m.a) && (0.0..=1.0).contains(&m.c));
                assert!(m.b.norm() <= (m.a * m.c).sqrt() + 1e-9);
            }
        }
    }

    #[test]
    fn phi_is_periodic() {
        let m = AsymptoticCoin::new(BlochAngles::new(1.2, 0.3).unwrap());
        // BlochAngles forbids φ ≥ 2π, so compare the raw formula
        let h: f64 = 0.6;
        let phi = 0.3 + TAU;
        let a = B1 * (3.0 + SQRT_2 - 2.0 * h.sin().powi(2) + (2.0 * h).sin() * phi.cos());
        assert_abs_diff_eq!(m.a, a, epsilon = 1e-14);
    }

    #[test]
    fn landscape_shape_and_entropy_bound() {
        let grid = BlochGrid::new(7, 9).unwrap();
        let res = asymptotic_landscape(&grid).unwrap();
        assert_eq!(res.records().len(), 63);
        for r in res.records() {
            assert!(r.entropy <= std::f64::consts::LN_2 + 1e-12);
            assert_eq!(r.aux.len(), 1);
        }
    }
}
