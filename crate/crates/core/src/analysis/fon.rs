use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::AlphaGrid;
use crate::error::{Error, Result};
use crate::gains::diff_gain;
use crate::model::{BetaPrior, Outcome, TossSummary};
use crate::table::{Cell, Tabular};

/// Priors tabulated in the reference FoN comparison at N = 1000.
pub const TABLE1_ALPHAS: [f64; 7] = [-0.7, -0.6, -0.5, -0.4, 0.0, 1.0, 3.0];

/// Fraction of head counts h ∈ {0..n} whose differential gain is negative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FoNRow {
    pub alpha: f64,
    pub n: u64,
    pub next: Outcome,
    pub negatives: u64,
    pub fon: f64,
    pub fon_asymptotic: f64,
}

/// Counts h ∈ {0..n} with `diff_gain < 0`, strictly, as computed in f64.
pub fn fon(prior: BetaPrior, n: u64, next: Outcome) -> FoNRow {
    let negatives = (0..=n)
        .filter(|&h| {
            let data = TossSummary::new(n, h).expect("h <= n");
            diff_gain(prior, data, next) < 0.0
        })
        .count() as u64;
    FoNRow {
        alpha: prior.alpha(),
        n,
        next,
        negatives,
        fon: negatives as f64 / (n + 1) as f64,
        fon_asymptotic: fon_asymptotic(prior),
    }
}

/// Large-N limit of the fraction of negatives, (2α + 1)/(4α + 3), clamped to
/// [0, 1]; zero for α ≤ −1/2 (which also covers the pole at α = −3/4).
pub fn fon_asymptotic(prior: BetaPrior) -> f64 {
    let alpha = prior.alpha();
    if alpha <= -0.5 {
        return 0.0;
    }
    ((2.0 * alpha + 1.0) / (4.0 * alpha + 3.0)).clamp(0.0, 1.0)
}

pub fn fon_sweep(grid: &AlphaGrid, ns: &[u64], next: Outcome) -> Vec<FoNRow> {
    let points: Vec<(BetaPrior, u64)> = grid
        .priors()
        .into_iter()
        .flat_map(|p| ns.iter().map(move |&n| (p, n)))
        .collect();
    let mut rows: Vec<FoNRow> = points
        .into_par_iter()
        .map(|(p, n)| fon(p, n, next))
        .collect();
    rows.sort_by(|a, b| a.alpha.total_cmp(&b.alpha).then(a.n.cmp(&b.n)));
    rows
}

/// Largest α (to within `refine_tol`) at which no head count gives a
/// negative differential gain for a head at toss n + 1.
///
/// The grid is scanned upward for the first point with a non-zero fraction
/// of negatives, then the boundary is bisected. Ties resolve to the zero side.
pub fn critical_alpha(n: u64, search: &AlphaGrid, refine_tol: f64) -> Result<f64> {
    if !(refine_tol.is_finite() && refine_tol > 0.0) {
        return Err(Error::InvalidInput(format!(
            "refine tolerance {refine_tol} must be > 0"
        )));
    }
    let zero_at = |alpha: f64| -> bool {
        let prior = BetaPrior::new(alpha).expect("grid values are > -1");
        fon(prior, n, Outcome::Head).negatives == 0
    };
    if !zero_at(search.start()) {
        return Err(Error::Bracket(format!(
            "fraction of negatives is already positive at alpha = {} for n = {n}",
            search.start()
        )));
    }
    if zero_at(search.stop()) {
        return Err(Error::Bracket(format!(
            "fraction of negatives is still zero at alpha = {} for n = {n}",
            search.stop()
        )));
    }

    let mut values = search.values();
    if values.last().is_some_and(|&a| a < search.stop()) {
        values.push(search.stop());
    }
    let mut lo = search.start();
    let mut hi = search.stop();
    for &a in values.iter().skip(1) {
        if zero_at(a) {
            lo = a;
        } else {
            hi = a;
            break;
        }
    }
    while hi - lo > refine_tol {
        let mid = 0.5 * (lo + hi);
        if zero_at(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Table1Row {
    pub alpha: f64,
    pub fon_numeric: f64,
    pub fon_asymptotic: f64,
    /// |numeric − asymptotic|
    pub discrepancy: f64,
}

/// Numeric vs. asymptotic fraction of negatives at `n` for each prior.
pub fn table1(n: u64, alphas: &[f64]) -> Result<Vec<Table1Row>> {
    let priors = alphas
        .iter()
        .map(|&a| BetaPrior::new(a))
        .collect::<Result<Vec<_>>>()?;
    Ok(priors
        .into_par_iter()
        .map(|prior| {
            let row = fon(prior, n, Outcome::Head);
            Table1Row {
                alpha: prior.alpha(),
                fon_numeric: row.fon,
                fon_asymptotic: row.fon_asymptotic,
                discrepancy: (row.fon - row.fon_asymptotic).abs(),
            }
        })
        .collect())
}

impl Tabular for FoNRow {
    fn columns() -> Vec<&'static str> {
        vec!["alpha", "n", "next", "negatives", "fon", "fon_asymptotic"]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![
            self.alpha.into(),
            self.n.into(),
            self.next.as_str().into(),
            self.negatives.into(),
            self.fon.into(),
            self.fon_asymptotic.into(),
        ]
    }
}

impl Tabular for Table1Row {
    fn columns() -> Vec<&'static str> {
        vec!["alpha", "fon_numeric", "fon_asymptotic", "discrepancy"]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![
            self.alpha.into(),
            self.fon_numeric.into(),
            self.fon_asymptotic.into(),
            self.discrepancy.into(),
        ]
    }
}
