//! Seeded batch of closed-form vs. quadrature comparisons.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    diff_gain_by_quadrature, digamma_integral_check, expected_equality_check,
    rel_gain_by_quadrature, QuadratureSpec, TabulatedPrior,
};
use crate::error::{Error, Result};
use crate::gains::{diff_gain, rel_gain};
use crate::model::{BetaPrior, Outcome, TossSummary};
use crate::table::{Cell, Tabular};

/// Largest N drawn for gain checks.
pub const MAX_SAMPLE_N: u64 = 500;
const ALPHA_RANGE: (f64, f64) = (-0.9, 3.0);
const DIGAMMA_ARG_RANGE: (f64, f64) = (0.05, 20.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    DiffGain,
    RelGain,
    DigammaIntegral,
    ExpectedEquality,
}

impl CheckKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckKind::DiffGain => "diff_gain",
            CheckKind::RelGain => "rel_gain",
            CheckKind::DigammaIntegral => "digamma_integral",
            CheckKind::ExpectedEquality => "expected_equality",
        }
    }
}

/// One comparison. `params` holds (α, N, h) for gain checks, (a, b, 0) for
/// the digamma integral and (prior index, N, h) for expected equality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub kind: CheckKind,
    pub params: [f64; 3],
    pub next: Option<Outcome>,
    pub reference: f64,
    pub oracle: f64,
    pub abs_err: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub tol: f64,
    pub rows: Vec<CheckRow>,
}

impl SuiteReport {
    pub fn checks(&self) -> usize {
        self.rows.len()
    }

    pub fn max_err(&self) -> f64 {
        self.rows.iter().map(|r| r.abs_err).fold(0.0, f64::max)
    }

    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| !r.pass).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn summary(&self) -> String {
        format!(
            "checks={} max_err={:e} failures={}",
            self.checks(),
            self.max_err(),
            self.failures()
        )
    }
}

enum Task {
    Gain(BetaPrior, TossSummary, Outcome),
    Digamma(f64, f64),
    Expected(usize, TossSummary),
}

/// Three smooth non-beta priors on (0, 1): a bimodal mixture, a skewed
/// exponential tilt and a flat-topped bump.
pub fn reference_priors() -> Result<Vec<TabulatedPrior>> {
    let grid: Vec<f64> = (1..200).map(|i| i as f64 / 200.0).collect();
    let bump = |p: f64, c: f64, w: f64| (-(p - c) * (p - c) / (2.0 * w * w)).exp();
    Ok(vec![
        TabulatedPrior::from_density(|p| bump(p, 0.25, 0.08) + 0.6 * bump(p, 0.7, 0.12), &grid)?,
        TabulatedPrior::from_density(|p| (4.0 * p).exp() + 0.1, &grid)?,
        TabulatedPrior::from_density(|p| 1.0 / (1.0 + ((p - 0.5).abs() / 0.2).powi(6)), &grid)?,
    ])
}

/// Runs `samples` random gain draws (each checked for both diff and rel),
/// `max(1, samples / 4)` digamma-integral draws, and the expected-equality
/// check for each reference prior at a few data sets.
pub fn run_suite(
    samples: usize,
    seed: u64,
    tol: f64,
    spec: &QuadratureSpec,
) -> Result<SuiteReport> {
    if samples == 0 {
        return Err(Error::InvalidInput("samples must be >= 1".into()));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidInput(format!("tol {tol} must be > 0")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tasks = Vec::new();
    for _ in 0..samples {
        let alpha = rng.random_range(ALPHA_RANGE.0..ALPHA_RANGE.1);
        let n = rng.random_range(0..=MAX_SAMPLE_N);
        let h = rng.random_range(0..=n);
        let next = if rng.random_bool(0.5) {
            Outcome::Head
        } else {
            Outcome::Tail
        };
        tasks.push(Task::Gain(
            BetaPrior::new(alpha)?,
            TossSummary::new(n, h)?,
            next,
        ));
    }
    for _ in 0..(samples / 4).max(1) {
        let a = rng.random_range(DIGAMMA_ARG_RANGE.0..DIGAMMA_ARG_RANGE.1);
        let b = rng.random_range(DIGAMMA_ARG_RANGE.0..DIGAMMA_ARG_RANGE.1);
        tasks.push(Task::Digamma(a, b));
    }
    let priors = reference_priors()?;
    for idx in 0..priors.len() {
        for (n, h) in [(0, 0), (7, 2), (40, 31)] {
            tasks.push(Task::Expected(idx, TossSummary::new(n, h)?));
        }
    }

    let rows = tasks
        .par_iter()
        .map(|task| -> Result<Vec<CheckRow>> {
            let row = |kind, params, next, reference: f64, oracle: f64| {
                let abs_err = (reference - oracle).abs();
                CheckRow {
                    kind,
                    params,
                    next,
                    reference,
                    oracle,
                    abs_err,
                    pass: abs_err <= tol,
                }
            };
            Ok(match *task {
                Task::Gain(prior, data, next) => {
                    let params = [prior.alpha(), data.n() as f64, data.h() as f64];
                    vec![
                        row(
                            CheckKind::DiffGain,
                            params,
                            Some(next),
                            diff_gain(prior, data, next),
                            diff_gain_by_quadrature(prior, data, next, spec)?,
                        ),
                        row(
                            CheckKind::RelGain,
                            params,
                            Some(next),
                            rel_gain(prior, data, next),
                            rel_gain_by_quadrature(prior, data, next, spec)?,
                        ),
                    ]
                }
                Task::Digamma(a, b) => {
                    let (lhs, rhs) = digamma_integral_check(a, b, spec)?;
                    vec![row(CheckKind::DigammaIntegral, [a, b, 0.0], None, rhs, lhs)]
                }
                Task::Expected(idx, data) => {
                    let (exp_diff, exp_rel) = expected_equality_check(&priors[idx], data, spec)?;
                    let params = [idx as f64, data.n() as f64, data.h() as f64];
                    vec![row(
                        CheckKind::ExpectedEquality,
                        params,
                        None,
                        exp_diff,
                        exp_rel,
                    )]
                }
            })
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(SuiteReport { tol, rows })
}

impl Tabular for CheckRow {
    fn columns() -> Vec<&'static str> {
        vec![
            "kind",
            "p0",
            "p1",
            "p2",
            "next",
            "reference",
            "oracle",
            "abs_err",
            "pass",
        ]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![
            self.kind.as_str().into(),
            self.params[0].into(),
            self.params[1].into(),
            self.params[2].into(),
            self.next.map(Outcome::as_str).into(),
            self.reference.into(),
            self.oracle.into(),
            self.abs_err.into(),
            if self.pass { "true" } else { "false" }.into(),
        ]
    }
}
