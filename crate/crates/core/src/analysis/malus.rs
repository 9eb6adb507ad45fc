//! Malus' law p(θ) = cos²(θ/2) and the two identities it carries:
//!
//! 1. |∂θ/∂p|·√(p(1 − p)) = 1, so √N·Δθ is constant for Δp = √(p(1 − p)/N);
//! 2. a uniform density on θ ∈ (0, π) maps to the Jeffreys density
//!    1 / (π √(p(1 − p))) on p.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::table::{Cell, Tabular};

/// Sample count used for Δθ; the checked product √N·Δθ does not depend on it.
const SAMPLES: f64 = 1000.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MalusPoint {
    pub theta: f64,
    pub p: f64,
    pub sqrt_n_delta_theta: f64,
    pub transformed_density: f64,
    pub jeffreys_density: f64,
}

impl MalusPoint {
    pub fn at(theta: f64) -> Self {
        let half = 0.5 * theta;
        let p = half.cos().powi(2);
        // 1 − p without cancellation
        let q = half.sin().powi(2);
        // dp/dθ = −sin θ / 2
        let dtheta_dp = 2.0 / theta.sin().abs();
        let spread = (p * q).sqrt();
        let delta_theta = dtheta_dp * spread / SAMPLES.sqrt();
        Self {
            theta,
            p,
            sqrt_n_delta_theta: SAMPLES.sqrt() * delta_theta,
            transformed_density: dtheta_dp / PI,
            jeffreys_density: 1.0 / (PI * spread),
        }
    }
}

/// `grid_size` interior points θᵢ = π·i/(grid_size + 1), i = 1..=grid_size.
pub fn malus_points(grid_size: usize) -> Result<Vec<MalusPoint>> {
    if grid_size < 3 {
        return Err(Error::InvalidInput(format!(
            "malus grid needs at least 3 points (got {grid_size})"
        )));
    }
    let denom = (grid_size + 1) as f64;
    Ok((1..=grid_size)
        .map(|i| MalusPoint::at(PI * i as f64 / denom))
        .collect())
}

/// Larger of max |√N·Δθ − 1| and the max relative deviation of the
/// transformed θ-density from the Jeffreys density, over the grid.
pub fn malus_mapping_check(grid_size: usize) -> Result<f64> {
    let points = malus_points(grid_size)?;
    let constancy = points
        .iter()
        .map(|m| (m.sqrt_n_delta_theta - 1.0).abs())
        .fold(0.0, f64::max);
    let density = points
        .iter()
        .map(|m| (m.transformed_density / m.jeffreys_density - 1.0).abs())
        .fold(0.0, f64::max);
    Ok(constancy.max(density))
}

impl Tabular for MalusPoint {
    fn columns() -> Vec<&'static str> {
        vec![
            "theta",
            "p",
            "sqrt_n_delta_theta",
            "transformed_density",
            "jeffreys_density",
        ]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![
            self.theta.into(),
            self.p.into(),
            self.sqrt_n_delta_theta.into(),
            self.transformed_density.into(),
            self.jeffreys_density.into(),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fine_grid_is_exact_to_rounding() {
        assert!(malus_mapping_check(101).unwrap() <= 1e-9);
        assert!(malus_mapping_check(1001).unwrap() <= 1e-9);
    }

    #[test]
    fn midpoint_density() {
        let pts = malus_points(3).unwrap();
        let mid = pts[1];
        assert!((mid.theta - PI / 2.0).abs() < 1e-15);
        assert!((mid.p - 0.5).abs() < 1e-15);
        assert!((mid.transformed_density - 2.0 / PI).abs() < 1e-15);
        assert!((mid.jeffreys_density - 2.0 / PI).abs() < 1e-15);
        assert!(malus_mapping_check(3).unwrap().is_finite());
    }

    #[test]
    fn minimal_grid() {
        assert!(malus_points(2).is_err());
    }
}
