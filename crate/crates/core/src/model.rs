//! Symmetric beta priors, two-outcome toss data and beta posteriors.
//!
//! A data sequence enters the posterior only through its head count, so
//! [`TossSummary`] stores `(n, h)` and nothing else.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::special_fn::log_beta_pos;

/// Symmetric beta prior with density ∝ p^α (1 − p)^α, α > −1.
///
/// α = 0 is the uniform prior, α = −1/2 the Jeffreys binomial prior.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct BetaPrior {
    alpha: f64,
}

impl BetaPrior {
    pub const UNIFORM: BetaPrior = BetaPrior { alpha: 0.0 };
    pub const JEFFREYS: BetaPrior = BetaPrior { alpha: -0.5 };

    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && alpha > -1.0 {
            Ok(Self { alpha })
        } else {
            Err(domain("alpha", alpha, "must be finite and > -1"))
        }
    }

    pub fn alpha(self) -> f64 {
        self.alpha
    }

    /// The prior itself, as a beta distribution with shapes (α + 1, α + 1).
    pub fn as_beta(self) -> PosteriorBeta {
        PosteriorBeta {
            a: self.alpha + 1.0,
            b: self.alpha + 1.0,
        }
    }
}

impl TryFrom<f64> for BetaPrior {
    type Error = Error;
    fn try_from(alpha: f64) -> Result<Self> {
        Self::new(alpha)
    }
}

impl From<BetaPrior> for f64 {
    fn from(p: BetaPrior) -> f64 {
        p.alpha
    }
}

/// Sufficient statistic of N tosses: the count `n` and the number of heads `h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TossSummary {
    n: u64,
    h: u64,
}

impl TossSummary {
    pub fn new(n: u64, h: u64) -> Result<Self> {
        if h > n {
            return Err(Error::InvalidInput(format!(
                "head count h = {h} exceeds toss count n = {n}"
            )));
        }
        Ok(Self { n, h })
    }

    pub const EMPTY: TossSummary = TossSummary { n: 0, h: 0 };

    pub fn n(self) -> u64 {
        self.n
    }

    pub fn h(self) -> u64 {
        self.h
    }

    pub fn tails(self) -> u64 {
        self.n - self.h
    }

    /// Count of the given outcome among the tosses so far.
    pub fn count(self, outcome: Outcome) -> u64 {
        match outcome {
            Outcome::Head => self.h,
            Outcome::Tail => self.n - self.h,
        }
    }

    /// Summary after appending one more toss.
    pub fn push(self, outcome: Outcome) -> Self {
        Self {
            n: self.n + 1,
            h: self.h + u64::from(outcome == Outcome::Head),
        }
    }

    /// Heads and tails swapped.
    pub fn mirrored(self) -> Self {
        Self {
            n: self.n,
            h: self.n - self.h,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Head,
    Tail,
}

impl Outcome {
    pub fn flip(self) -> Self {
        match self {
            Outcome::Head => Outcome::Tail,
            Outcome::Tail => Outcome::Head,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Head => "head",
            Outcome::Tail => "tail",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Outcome {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "head" | "heads" | "h" => Ok(Outcome::Head),
            "tail" | "tails" | "t" => Ok(Outcome::Tail),
            _ => Err(Error::InvalidInput(format!(
                "unknown outcome {s:?}, expected head or tail"
            ))),
        }
    }
}

/// Beta distribution with shapes `a`, `b` > 0, density p^(a−1) (1−p)^(b−1) / B(a, b).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PosteriorBeta {
    a: f64,
    b: f64,
}

/// Value returned by [`posterior_pdf`] exactly at an endpoint where the
/// density diverges.
pub const ENDPOINT_SENTINEL: f64 = 1e300;

impl PosteriorBeta {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(domain("a", a, "shape must be finite and > 0"));
        }
        if !(b.is_finite() && b > 0.0) {
            return Err(domain("b", b, "shape must be finite and > 0"));
        }
        Ok(Self { a, b })
    }

    pub fn a(self) -> f64 {
        self.a
    }

    pub fn b(self) -> f64 {
        self.b
    }

    pub fn mean(self) -> f64 {
        self.a / (self.a + self.b)
    }

    /// Conjugate update by one toss.
    pub fn updated(self, outcome: Outcome) -> Self {
        match outcome {
            Outcome::Head => Self {
                a: self.a + 1.0,
                b: self.b,
            },
            Outcome::Tail => Self {
                a: self.a,
                b: self.b + 1.0,
            },
        }
    }

    pub fn log_norm(self) -> f64 {
        log_beta_pos(self.a, self.b)
    }

    /// Log density from precomputed `ln p` and `ln(1 − p)`.
    pub fn ln_pdf_logs(self, ln_p: f64, ln_q: f64) -> f64 {
        (self.a - 1.0) * ln_p + (self.b - 1.0) * ln_q - self.log_norm()
    }
}

/// Posterior after observing `data` under `prior`: shapes (h + α + 1, N − h + α + 1).
pub fn posterior(prior: BetaPrior, data: TossSummary) -> PosteriorBeta {
    let alpha = prior.alpha();
    PosteriorBeta {
        a: data.h() as f64 + alpha + 1.0,
        b: data.tails() as f64 + alpha + 1.0,
    }
}

/// Beta density at `p ∈ [0, 1]`.
///
/// At an endpoint where a shape is below 1 the density is unbounded and
/// [`ENDPOINT_SENTINEL`] is returned; where a shape is exactly 1 the finite
/// limit is returned.
pub fn posterior_pdf(post: PosteriorBeta, p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(domain("p", p, "must lie in [0, 1]"));
    }
    let at_endpoint = |shape: f64| -> Option<f64> {
        if shape < 1.0 {
            Some(ENDPOINT_SENTINEL)
        } else if shape > 1.0 {
            Some(0.0)
        } else {
            None
        }
    };
    let ln_norm = post.log_norm();
    if p == 0.0 {
        if let Some(v) = at_endpoint(post.a) {
            return Ok(v);
        }
        // (1 − p)^(b − 1) = 1 at p = 0
        return Ok((-ln_norm).exp());
    }
    if p == 1.0 {
        if let Some(v) = at_endpoint(post.b) {
            return Ok(v);
        }
        return Ok((-ln_norm).exp());
    }
    Ok(post.ln_pdf_logs(p.ln(), (-p).ln_1p()).exp())
}

/// Posterior mean of p: (h + α + 1) / (N + 2α + 2).
pub fn expected_p(prior: BetaPrior, data: TossSummary) -> f64 {
    let alpha = prior.alpha();
    (data.h() as f64 + alpha + 1.0) / (data.n() as f64 + 2.0 * alpha + 2.0)
}
