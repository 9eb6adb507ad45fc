use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{mean_std, AlphaGrid};
use crate::error::{Error, Result};
use crate::gains::{
    expected_gain, expected_gain_asymptotic, outcome_weighted, GainReport, Measure,
};
use crate::model::{BetaPrior, Outcome, TossSummary};
use crate::table::{Cell, Tabular};

/// Spread of a gain measure over every head count h ∈ {0..n}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RobustnessRow {
    pub alpha: f64,
    pub n: u64,
    pub measure: Measure,
    pub next: Outcome,
    pub mean_gain: f64,
    /// Population standard deviation (divisor n + 1).
    pub std_gain: f64,
}

pub fn robustness(
    prior: BetaPrior,
    n: u64,
    measure: Measure,
    next: Outcome,
) -> Result<RobustnessRow> {
    if n == 0 {
        return Err(Error::InvalidInput("robustness needs n >= 1".into()));
    }
    let values: Vec<f64> = (0..=n)
        .map(|h| measure.eval(prior, TossSummary::new(n, h).expect("h <= n"), next))
        .collect();
    let (mean_gain, std_gain) = mean_std(&values);
    Ok(RobustnessRow {
        alpha: prior.alpha(),
        n,
        measure,
        next,
        mean_gain,
        std_gain,
    })
}

pub fn robustness_sweep(
    grid: &AlphaGrid,
    ns: &[u64],
    measure: Measure,
    next: Outcome,
) -> Result<Vec<RobustnessRow>> {
    let points: Vec<(BetaPrior, u64)> = grid
        .priors()
        .into_iter()
        .flat_map(|p| ns.iter().map(move |&n| (p, n)))
        .collect();
    let mut rows = points
        .into_par_iter()
        .map(|(p, n)| robustness(p, n, measure, next))
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| a.alpha.total_cmp(&b.alpha).then(a.n.cmp(&b.n)));
    Ok(rows)
}

/// Gains for the all-tails-then-head corner: h = 0, next toss a head.
pub fn black_swan_report(prior: BetaPrior, n: u64) -> Result<GainReport> {
    if n == 0 {
        return Err(Error::InvalidInput("black-swan report needs n >= 1".into()));
    }
    Ok(GainReport::new(
        prior,
        TossSummary::new(n, 0)?,
        Outcome::Head,
    ))
}

/// Full gain report for every (α, n, h) in the sweep, ordered by α, n, h.
pub fn gain_sweep(grid: &AlphaGrid, ns: &[u64], next: Outcome) -> Vec<GainReport> {
    let points: Vec<(BetaPrior, u64)> = grid
        .priors()
        .into_iter()
        .flat_map(|p| ns.iter().map(move |&n| (p, n)))
        .collect();
    let mut rows: Vec<GainReport> = points
        .into_par_iter()
        .flat_map_iter(|(p, n)| {
            (0..=n).map(move |h| GainReport::new(p, TossSummary::new(n, h).expect("h <= n"), next))
        })
        .collect();
    rows.sort_by(|a, b| {
        a.alpha
            .total_cmp(&b.alpha)
            .then(a.n.cmp(&b.n))
            .then(a.h.cmp(&b.h))
    });
    rows
}

/// Expected gain of the next toss, with both outcome-weighted routes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpectedRow {
    pub alpha: f64,
    pub n: u64,
    pub h: u64,
    pub expected_gain: f64,
    pub expected_gain_asym: Option<f64>,
    pub weighted_diff: f64,
    pub weighted_rel: f64,
}

pub fn expected_sweep(grid: &AlphaGrid, ns: &[u64]) -> Vec<ExpectedRow> {
    let points: Vec<(BetaPrior, u64)> = grid
        .priors()
        .into_iter()
        .flat_map(|p| ns.iter().map(move |&n| (p, n)))
        .collect();
    let mut rows: Vec<ExpectedRow> = points
        .into_par_iter()
        .flat_map_iter(|(p, n)| {
            (0..=n).map(move |h| {
                let d = TossSummary::new(n, h).expect("h <= n");
                ExpectedRow {
                    alpha: p.alpha(),
                    n,
                    h,
                    expected_gain: expected_gain(p, d),
                    expected_gain_asym: expected_gain_asymptotic(d).ok(),
                    weighted_diff: outcome_weighted(p, d, Measure::Diff),
                    weighted_rel: outcome_weighted(p, d, Measure::Rel),
                }
            })
        })
        .collect();
    rows.sort_by(|a, b| {
        a.alpha
            .total_cmp(&b.alpha)
            .then(a.n.cmp(&b.n))
            .then(a.h.cmp(&b.h))
    });
    rows
}

impl Tabular for RobustnessRow {
    fn columns() -> Vec<&'static str> {
        vec!["alpha", "n", "measure", "next", "mean_gain", "std_gain"]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![
            self.alpha.into(),
            self.n.into(),
            self.measure.as_str().into(),
            self.next.as_str().into(),
            self.mean_gain.into(),
            self.std_gain.into(),
        ]
    }
}

impl Tabular for ExpectedRow {
    fn columns() -> Vec<&'static str> {
        vec![
            "alpha",
            "n",
            "h",
            "expected_gain",
            "expected_gain_asym",
            "weighted_diff",
            "weighted_rel",
        ]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![
            self.alpha.into(),
            self.n.into(),
            self.h.into(),
            self.expected_gain.into(),
            self.expected_gain_asym.into(),
            self.weighted_diff.into(),
            self.weighted_rel.into(),
        ]
    }
}
