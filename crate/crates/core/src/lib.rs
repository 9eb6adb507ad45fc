//! Bayesian information gain of two-outcome measurements under symmetric
//! beta priors.
//!
//! Three per-toss measures are provided in closed form by [`gains`]:
//! the differential gain (change in KL divergence from the prior), the
//! relative gain (KL divergence between consecutive posteriors) and the
//! expected gain of the next toss. [`analysis`] sweeps them over priors and
//! data, and [`oracle`] verifies every closed form against direct quadrature.
//!
//! ```
//! use infogain::{diff_gain, rel_gain, BetaPrior, Outcome, TossSummary};
//!
//! // Ten tails, then a head, under the uniform prior.
//! let data = TossSummary::new(10, 0).unwrap();
//! let d = diff_gain(BetaPrior::UNIFORM, data, Outcome::Head);
//! let r = rel_gain(BetaPrior::UNIFORM, data, Outcome::Head);
//! assert!(d < 0.0 && r > 0.0);
//! ```

pub mod analysis;
pub mod error;
pub mod gains;
pub mod model;
pub mod oracle;
pub mod special_fn;
pub mod table;

pub use error::{Error, Result};
pub use gains::{
    diff_gain, diff_gain_asymptotic, expected_gain, expected_gain_asymptotic, outcome_weighted,
    rel_gain, rel_gain_asymptotic, GainReport, Measure,
};
pub use model::{
    expected_p, posterior, posterior_pdf, BetaPrior, Outcome, PosteriorBeta, TossSummary,
};
pub use special_fn::{digamma, log_beta, log_gamma};
pub use table::{Cell, SweepTable, Tabular};
