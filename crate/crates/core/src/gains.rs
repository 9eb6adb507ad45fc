//! Closed-form information gains of one additional toss, in nats.
//!
//! With `k` the count of the next outcome among the first N tosses
//! (k = h for a head, N − h for a tail) and `m = N + 2α + 2`:
//!
//! ```text
//! rel  = ψ(k + α + 2) − ψ(m + 1) + ln(m / (k + α + 1))
//! diff = rel + k / (k + α + 1) − N / m
//! ```
//!
//! `rel` is the KL divergence from the N-toss posterior to the (N+1)-toss
//! posterior; `diff` is the change in KL divergence of the posterior from the
//! prior. Both are evaluated from digamma and log differences only; the
//! quadrature cross-checks live in [`crate::oracle`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{expected_p, BetaPrior, Outcome, TossSummary};
use crate::special_fn::digamma_pos;

/// Which information-gain measure to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Diff,
    Rel,
    Expected,
}

impl Measure {
    pub fn as_str(self) -> &'static str {
        match self {
            Measure::Diff => "diff",
            Measure::Rel => "rel",
            Measure::Expected => "expected",
        }
    }

    /// Evaluates the measure. `next` is ignored for [`Measure::Expected`].
    pub fn eval(self, prior: BetaPrior, data: TossSummary, next: Outcome) -> f64 {
        match self {
            Measure::Diff => diff_gain(prior, data, next),
            Measure::Rel => rel_gain(prior, data, next),
            Measure::Expected => expected_gain(prior, data),
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Measure {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "diff" => Ok(Measure::Diff),
            "rel" => Ok(Measure::Rel),
            "expected" => Ok(Measure::Expected),
            _ => Err(Error::InvalidInput(format!(
                "unknown measure {s:?}, expected diff, rel or expected"
            ))),
        }
    }
}

/// Relative gain with `k` the prior count of the observed outcome.
fn rel_from_count(alpha: f64, n: f64, k: f64) -> f64 {
    let m = n + 2.0 * alpha + 2.0;
    let ka = k + alpha + 1.0;
    digamma_pos(ka + 1.0) - digamma_pos(m + 1.0) + (m / ka).ln()
}

/// Differential information gain of toss N + 1 given its outcome.
pub fn diff_gain(prior: BetaPrior, data: TossSummary, next: Outcome) -> f64 {
    let alpha = prior.alpha();
    let n = data.n() as f64;
    let k = data.count(next) as f64;
    let m = n + 2.0 * alpha + 2.0;
    rel_from_count(alpha, n, k) + k / (k + alpha + 1.0) - n / m
}

/// Relative information gain of toss N + 1 given its outcome. Never negative
/// in exact arithmetic.
pub fn rel_gain(prior: BetaPrior, data: TossSummary, next: Outcome) -> f64 {
    rel_from_count(prior.alpha(), data.n() as f64, data.count(next) as f64)
}

/// Expected gain of the next toss, averaged over its outcome with the
/// posterior predictive weights ⟨p⟩ and ⟨1 − p⟩.
///
/// Evaluated directly from the combined expression rather than by averaging
/// [`diff_gain`] or [`rel_gain`]; the two averages agree with it (and with
/// each other) because the extra terms of `diff` cancel under the weights.
pub fn expected_gain(prior: BetaPrior, data: TossSummary) -> f64 {
    let alpha = prior.alpha();
    let m = data.n() as f64 + 2.0 * alpha + 2.0;
    let heads = data.h() as f64 + alpha + 1.0;
    let tails = data.tails() as f64 + alpha + 1.0;
    let (w_h, w_t) = (heads / m, tails / m);
    w_h * digamma_pos(heads + 1.0) + w_t * digamma_pos(tails + 1.0) - digamma_pos(m + 1.0)
        + w_h * (m / heads).ln()
        + w_t * (m / tails).ln()
}

/// ⟨p⟩·gain(Head) + ⟨1 − p⟩·gain(Tail) for a per-outcome measure.
pub fn outcome_weighted(prior: BetaPrior, data: TossSummary, measure: Measure) -> f64 {
    let w = expected_p(prior, data);
    w * measure.eval(prior, data, Outcome::Head)
        + (1.0 - w) * measure.eval(prior, data, Outcome::Tail)
}

/// Large-N form of [`diff_gain`]:
/// (2k + 1) / (2(k + α + 1)) − (2N + 1) / (2(N + 2α + 2)).
///
/// Evaluated over a common denominator, which is exact for α = −1/2 where
/// the expression collapses to 1 / (2(N + 1)).
pub fn diff_gain_asymptotic(prior: BetaPrior, data: TossSummary, next: Outcome) -> f64 {
    let alpha = prior.alpha();
    let n = data.n() as f64;
    let k = data.count(next) as f64;
    let numer = k * (4.0 * alpha + 3.0) - n * (2.0 * alpha + 1.0) + (alpha + 1.0);
    numer / (2.0 * (k + alpha + 1.0) * (n + 2.0 * alpha + 2.0))
}

/// Large-N form of [`rel_gain`]: (N − k) / (2kN).
///
/// Undefined when the observed outcome has not been seen before (k = 0),
/// which includes N = 0.
pub fn rel_gain_asymptotic(data: TossSummary, next: Outcome) -> Result<f64> {
    let k = data.count(next);
    if k == 0 {
        return Err(Error::InvalidInput(format!(
            "relative-gain asymptote undefined: no prior {next} among n = {} tosses",
            data.n()
        )));
    }
    let (n, k) = (data.n() as f64, k as f64);
    Ok((n - k) / (2.0 * k * n))
}

/// Large-N form of [`expected_gain`]: 1 / (2N).
pub fn expected_gain_asymptotic(data: TossSummary) -> Result<f64> {
    if data.n() == 0 {
        return Err(Error::InvalidInput(
            "expected-gain asymptote needs n >= 1".into(),
        ));
    }
    Ok(0.5 / data.n() as f64)
}

/// All three gains and their large-N forms at one point.
///
/// Asymptotic fields are `None` where the large-N expression is undefined.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GainReport {
    pub alpha: f64,
    pub n: u64,
    pub h: u64,
    pub next: Outcome,
    pub i_diff: f64,
    pub i_rel: f64,
    pub i_expected: f64,
    pub i_diff_asym: f64,
    pub i_rel_asym: Option<f64>,
    pub i_expected_asym: Option<f64>,
}

impl GainReport {
    pub fn new(prior: BetaPrior, data: TossSummary, next: Outcome) -> Self {
        Self {
            alpha: prior.alpha(),
            n: data.n(),
            h: data.h(),
            next,
            i_diff: diff_gain(prior, data, next),
            i_rel: rel_gain(prior, data, next),
            i_expected: expected_gain(prior, data),
            i_diff_asym: diff_gain_asymptotic(prior, data, next),
            i_rel_asym: rel_gain_asymptotic(data, next).ok(),
            i_expected_asym: expected_gain_asymptotic(data).ok(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn prior(alpha: f64) -> BetaPrior {
        BetaPrior::new(alpha).unwrap()
    }

    fn data(n: u64, h: u64) -> TossSummary {
        TossSummary::new(n, h).unwrap()
    }

    /// H_n as a sum of reciprocals, smallest first.
    fn harmonic(n: u64) -> f64 {
        (1..=n).rev().map(|k| 1.0 / k as f64).sum()
    }

    #[test]
    fn first_toss_uniform_prior() {
        // ψ(2) − ψ(3) + ln 2 = −1/2 + ln 2
        let expected = LN_2 - 0.5;
        let d = diff_gain(BetaPrior::UNIFORM, TossSummary::EMPTY, Outcome::Head);
        let r = rel_gain(BetaPrior::UNIFORM, TossSummary::EMPTY, Outcome::Head);
        assert!((d - expected).abs() < 1e-14);
        assert!((r - expected).abs() < 1e-14);
        let e = expected_gain(BetaPrior::UNIFORM, TossSummary::EMPTY);
        assert!((e - expected).abs() < 1e-14);
    }

    #[test]
    fn black_swan_uniform_prior() {
        // ψ(2) − ψ(13) = H_1 − H_12
        let rel = harmonic(1) - harmonic(12) + 12f64.ln();
        let diff = rel - 10.0 / 12.0;
        let d = data(10, 0);
        let got = rel_gain(BetaPrior::UNIFORM, d, Outcome::Head);
        assert!((got - rel).abs() < 1e-13, "{got:e} vs {rel:e}");
        assert!((diff_gain(BetaPrior::UNIFORM, d, Outcome::Head) - diff).abs() < 1e-13);
        assert!((diff + 0.4516).abs() < 1e-4);
        assert!((rel - 0.3817).abs() < 1e-4);
    }

    #[test]
    fn jeffreys_diff_gain_concentrates() {
        let d = data(10_000, 5_000);
        let target = 1.0 / (2.0 * 10_001.0);
        assert!((diff_gain(BetaPrior::JEFFREYS, d, Outcome::Head) - target).abs() < 1e-6);
    }

    #[test]
    fn rel_gain_large_n() {
        // (N − h) / (2hN) = 5e-5 at N = 10⁴, h = 5000.
        let d = data(10_000, 5_000);
        let r = rel_gain(BetaPrior::JEFFREYS, d, Outcome::Head);
        assert!((r - 5e-5).abs() < 2e-6, "{r}");
    }

    #[test]
    fn expected_gain_examples() {
        // Frozen from an independent digamma evaluation (scipy.special).
        let e = expected_gain(BetaPrior::UNIFORM, data(100, 50));
        assert!((e - 0.004_877_932_719_367_428).abs() < 1e-13, "{e}");
        // Large-N form 1/(2N) is within 2.5% here; the gap is O(1/N²).
        assert!((e / 5.0e-3 - 1.0).abs() < 0.025);

        let d = data(10, 0);
        let direct = expected_gain(BetaPrior::UNIFORM, d);
        let by_branch = (1.0 / 12.0) * diff_gain(BetaPrior::UNIFORM, d, Outcome::Head)
            + (11.0 / 12.0) * diff_gain(BetaPrior::UNIFORM, d, Outcome::Tail);
        assert!((direct - by_branch).abs() < 1e-12);
        let by_rel = outcome_weighted(BetaPrior::UNIFORM, d, Measure::Rel);
        assert!((direct - by_rel).abs() < 1e-12);
    }

    #[test]
    fn diff_asymptote_examples() {
        for n in [0u64, 1, 7, 1000, 123_456] {
            for h in [0, n / 3, n] {
                let v = diff_gain_asymptotic(BetaPrior::JEFFREYS, data(n, h), Outcome::Head);
                assert_eq!(v, 1.0 / (2.0 * (n as f64 + 1.0)));
            }
        }
        let v = diff_gain_asymptotic(BetaPrior::UNIFORM, data(10, 5), Outcome::Head);
        assert!((v - 1.0 / 24.0).abs() < 1e-15);
        let d = data(1_000_000, 500_000);
        let exact = diff_gain(BetaPrior::UNIFORM, d, Outcome::Head);
        let approx = diff_gain_asymptotic(BetaPrior::UNIFORM, d, Outcome::Head);
        assert!((exact - approx).abs() < 1e-9);
    }

    #[test]
    fn diff_asymptote_converges_monotonically() {
        for alpha in [-0.5, 0.0, 1.0] {
            let p = prior(alpha);
            let gaps: Vec<f64> = [100u64, 1_000, 10_000]
                .iter()
                .map(|&n| {
                    let d = data(n, n / 2);
                    (diff_gain(p, d, Outcome::Head) - diff_gain_asymptotic(p, d, Outcome::Head))
                        .abs()
                })
                .collect();
            assert!(
                gaps[0] > gaps[1] && gaps[1] > gaps[2],
                "alpha={alpha}: {gaps:?}"
            );
        }
    }

    #[test]
    fn rel_asymptote_examples() {
        assert!((rel_gain_asymptotic(data(100, 50), Outcome::Head).unwrap() - 5e-3).abs() < 1e-18);
        assert_eq!(
            rel_gain_asymptotic(data(100, 100), Outcome::Head).unwrap(),
            0.0
        );
        assert!(rel_gain_asymptotic(data(100, 0), Outcome::Head).is_err());
        assert!(rel_gain_asymptotic(data(100, 100), Outcome::Tail).is_err());
        assert!(rel_gain_asymptotic(TossSummary::EMPTY, Outcome::Head).is_err());
        // Tail branch mirrors h ↦ N − h: h / (2(N − h)N).
        let t = rel_gain_asymptotic(data(100, 20), Outcome::Tail).unwrap();
        assert!((t - 20.0 / (2.0 * 80.0 * 100.0)).abs() < 1e-18);

        // The relative gap closes as O(1/h); at h = 10³ it is ~1.3e-3.
        let d = data(10_000, 1_000);
        let exact = rel_gain(BetaPrior::UNIFORM, d, Outcome::Head);
        let approx = rel_gain_asymptotic(d, Outcome::Head).unwrap();
        assert!((approx / exact - 1.0).abs() < 2e-3);
        let d = data(1_000_000, 100_000);
        let exact = rel_gain(BetaPrior::UNIFORM, d, Outcome::Head);
        let approx = rel_gain_asymptotic(d, Outcome::Head).unwrap();
        assert!((approx / exact - 1.0).abs() < 1e-4);
    }

    #[test]
    fn expected_asymptote_examples() {
        assert_eq!(expected_gain_asymptotic(data(1, 0)).unwrap(), 0.5);
        assert_eq!(expected_gain_asymptotic(data(1000, 3)).unwrap(), 5e-4);
        assert!(expected_gain_asymptotic(TossSummary::EMPTY).is_err());
        let d = data(10_000, 5_000);
        let exact = expected_gain(BetaPrior::UNIFORM, d);
        let approx = expected_gain_asymptotic(d).unwrap();
        assert!((approx / exact - 1.0).abs() < 0.02);
    }

    #[test]
    fn report_black_swan_has_no_rel_asymptote() {
        let r = GainReport::new(BetaPrior::UNIFORM, data(10, 0), Outcome::Head);
        assert!(r.i_rel_asym.is_none());
        assert_eq!(r.i_expected_asym, Some(0.05));
        assert!(r.i_diff < 0.0 && r.i_rel > 0.0);
    }

    #[test]
    fn symmetry_and_bridge_on_small_grid() {
        for i in 0..40 {
            let alpha = -0.9 + 0.1 * i as f64;
            let p = prior(alpha);
            for n in 0..40u64 {
                for h in 0..=n {
                    let d = data(n, h);
                    let dh = diff_gain(p, d, Outcome::Head);
                    let rh = rel_gain(p, d, Outcome::Head);
                    assert!((dh - diff_gain(p, d.mirrored(), Outcome::Tail)).abs() <= 1e-12);
                    assert!((rh - rel_gain(p, d.mirrored(), Outcome::Tail)).abs() <= 1e-12);
                    let bridge = h as f64 / (h as f64 + alpha + 1.0)
                        - n as f64 / (n as f64 + 2.0 * alpha + 2.0);
                    assert!((dh - rh - bridge).abs() <= 1e-12);
                    assert!(rh >= 0.0);
                    if n == 0 {
                        assert!((dh - rh).abs() <= 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn measure_parsing() {
        assert_eq!("REL".parse::<Measure>().unwrap(), Measure::Rel);
        assert!("mutual".parse::<Measure>().is_err());
    }
}
