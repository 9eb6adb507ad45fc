//! Sweeps over priors and data: fraction of negatives, the critical prior,
//! robustness across head counts, single-trajectory simulation, and the
//! Malus-law / Jeffreys-prior correspondence.
//!
//! Sweeps evaluate grid points in parallel; output rows are always ordered by
//! α, then n, then h.

mod fon;
mod malus;
mod robustness;
mod trajectory;

pub use fon::{
    critical_alpha, fon, fon_asymptotic, fon_sweep, table1, FoNRow, Table1Row, TABLE1_ALPHAS,
};
pub use malus::{malus_mapping_check, malus_points, MalusPoint};
pub use robustness::{
    black_swan_report, expected_sweep, gain_sweep, robustness, robustness_sweep, ExpectedRow,
    RobustnessRow,
};
pub use trajectory::{trajectory, TrajectoryRow};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::BetaPrior;

const MAX_GRID_STEPS: f64 = 1e6;

/// Grid points are rounded to this many steps per unit, so that e.g.
/// −0.9 + 8·0.05 lands exactly on −0.5.
const GRID_SCALE: f64 = 1e12;

/// Evenly spaced α values `start, start + step, ...` up to and including `stop`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaGrid {
    start: f64,
    stop: f64,
    step: f64,
}

impl AlphaGrid {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self> {
        if !(start.is_finite() && start > -1.0) {
            return Err(Error::InvalidInput(format!(
                "alpha start {start} must be > -1"
            )));
        }
        if !(stop.is_finite() && stop >= start) {
            return Err(Error::InvalidInput(format!(
                "alpha stop {stop} must be >= start {start}"
            )));
        }
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::InvalidInput(format!(
                "alpha step {step} must be > 0"
            )));
        }
        if (stop - start) / step > MAX_GRID_STEPS {
            return Err(Error::InvalidInput(format!(
                "alpha grid ({start}..{stop} step {step}) exceeds 10^6 steps"
            )));
        }
        Ok(Self { start, stop, step })
    }

    /// A single-point grid.
    pub fn point(alpha: f64) -> Result<Self> {
        Self::new(alpha, alpha, 1.0)
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn stop(&self) -> f64 {
        self.stop
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn values(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=count)
            .map(|i| snap(self.start + i as f64 * self.step))
            .filter(|&a| a > -1.0)
            .collect()
    }

    pub fn priors(&self) -> Vec<BetaPrior> {
        self.values()
            .into_iter()
            .map(|a| BetaPrior::new(a).expect("grid values are > -1"))
            .collect()
    }
}

fn snap(x: f64) -> f64 {
    (x * GRID_SCALE).round() / GRID_SCALE
}

/// Population mean and standard deviation (divisor = count).
pub(crate) fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}
