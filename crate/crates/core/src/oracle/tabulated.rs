use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Densities below this are clamped before taking logs.
pub const DENSITY_FLOOR: f64 = 1e-300;

/// Allowed deviation of the interpolant's total mass from 1.
pub const MASS_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Interpolation {
    LinearInLogDensity,
}

/// A prior on (0, 1) given by density values at knots.
///
/// Between knots the log density is interpolated linearly; outside the first
/// and last knot it is held constant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TabulatedPrior {
    knots: Vec<(f64, f64)>,
    ln_density: Vec<f64>,
    interpolation: Interpolation,
}

impl TabulatedPrior {
    /// Builds a prior from `(p, density)` knots, which must be strictly
    /// increasing in `p` inside (0, 1) and integrate to 1 within
    /// [`MASS_TOLERANCE`].
    pub fn new(knots: Vec<(f64, f64)>) -> Result<Self> {
        let prior = Self::unchecked(knots)?;
        let mass = prior.total_mass();
        if (mass - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::InvalidInput(format!(
                "tabulated prior integrates to {mass}, not 1"
            )));
        }
        Ok(prior)
    }

    /// Samples an unnormalised density at `points` and rescales the knot
    /// values so that the interpolant has unit mass.
    pub fn from_density<F: Fn(f64) -> f64>(density: F, points: &[f64]) -> Result<Self> {
        let raw = Self::unchecked(points.iter().map(|&p| (p, density(p))).collect())?;
        let mass = raw.total_mass();
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::InvalidInput(format!(
                "density has non-positive or non-finite mass {mass}"
            )));
        }
        let knots = raw.knots.iter().map(|&(p, d)| (p, d / mass)).collect();
        Self::new(knots)
    }

    fn unchecked(knots: Vec<(f64, f64)>) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::InvalidInput(
                "tabulated prior needs at least 2 knots".into(),
            ));
        }
        for &(p, d) in &knots {
            if !(p > 0.0 && p < 1.0) {
                return Err(Error::InvalidInput(format!("knot p = {p} outside (0, 1)")));
            }
            if !(d.is_finite() && d >= 0.0) {
                return Err(Error::InvalidInput(format!(
                    "knot density {d} at p = {p} must be finite and >= 0"
                )));
            }
        }
        if knots.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::InvalidInput(
                "knots must be strictly increasing in p".into(),
            ));
        }
        let ln_density = knots
            .iter()
            .map(|&(_, d)| d.max(DENSITY_FLOOR).ln())
            .collect();
        Ok(Self {
            knots,
            ln_density,
            interpolation: Interpolation::LinearInLogDensity,
        })
    }

    pub fn knots(&self) -> &[(f64, f64)] {
        &self.knots
    }

    pub fn knot_positions(&self) -> Vec<f64> {
        self.knots.iter().map(|&(p, _)| p).collect()
    }

    pub fn interpolation(&self) -> Interpolation {
        self.interpolation
    }

    /// Log density of the interpolant at `p` in (0, 1).
    pub fn ln_density(&self, p: f64) -> f64 {
        let first = self.knots[0].0;
        let last = self.knots[self.knots.len() - 1].0;
        if p <= first {
            return self.ln_density[0];
        }
        if p >= last {
            return self.ln_density[self.ln_density.len() - 1];
        }
        // First knot strictly greater than p.
        let i = self.knots.partition_point(|&(x, _)| x <= p);
        let (x0, x1) = (self.knots[i - 1].0, self.knots[i].0);
        let (l0, l1) = (self.ln_density[i - 1], self.ln_density[i]);
        let t = (p - x0) / (x1 - x0);
        l0 + t * (l1 - l0)
    }

    /// Exact integral of the interpolant over (0, 1).
    pub fn total_mass(&self) -> f64 {
        let n = self.knots.len();
        let mut mass = self.knots[0].0 * self.ln_density[0].exp();
        mass += (1.0 - self.knots[n - 1].0) * self.ln_density[n - 1].exp();
        for i in 1..n {
            let dx = self.knots[i].0 - self.knots[i - 1].0;
            let (l0, l1) = (self.ln_density[i - 1], self.ln_density[i]);
            let dl = l1 - l0;
            // ∫ exp(l0 + dl·t) dx over the panel
            let seg = if dl.abs() < 1e-8 {
                l0.exp() * (1.0 + 0.5 * dl + dl * dl / 6.0)
            } else {
                l0.exp() * dl.exp_m1() / dl
            };
            mass += dx * seg;
        }
        mass
    }
}
