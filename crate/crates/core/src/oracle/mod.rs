//! Quadrature cross-checks for the closed forms in [`crate::gains`].
//!
//! Every quantity here is computed by integrating its defining KL integral
//! numerically. Nothing in this module is used by the closed-form or sweep
//! paths; it exists to verify them.

mod quadrature;
mod suite;
mod tabulated;

pub use quadrature::{
    integrate_unit, Estimate, QuadratureRule, QuadratureSpec, UnitPoint, Weighted,
};
pub use suite::{reference_priors, run_suite, CheckKind, CheckRow, SuiteReport, MAX_SAMPLE_N};
pub use tabulated::{Interpolation, TabulatedPrior, DENSITY_FLOOR, MASS_TOLERANCE};

use crate::error::{Error, Result};
use crate::model::{posterior, BetaPrior, Outcome, PosteriorBeta, TossSummary};
use crate::special_fn::{digamma, log_beta};

/// KL divergence ∫ post · ln(post / reference) dp, by quadrature.
pub fn kl_beta(
    post: PosteriorBeta,
    reference: PosteriorBeta,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let (ln_b_post, ln_b_ref) = (post.log_norm(), reference.log_norm());
    let est = integrate_unit(
        |pt| {
            let ln_post = (post.a() - 1.0) * pt.ln_p + (post.b() - 1.0) * pt.ln_q - ln_b_post;
            let ln_ref =
                (reference.a() - 1.0) * pt.ln_p + (reference.b() - 1.0) * pt.ln_q - ln_b_ref;
            Weighted::new(ln_post, ln_post - ln_ref)
        },
        &[post.mean()],
        spec,
    )?;
    Ok(est.value)
}

/// Differential gain as KL(posterior after N+1 ‖ prior) − KL(posterior after N ‖ prior).
pub fn diff_gain_by_quadrature(
    prior: BetaPrior,
    data: TossSummary,
    next: Outcome,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let before = posterior(prior, data);
    let after = posterior(prior, data.push(next));
    let base = prior.as_beta();
    Ok(kl_beta(after, base, spec)? - kl_beta(before, base, spec)?)
}

/// Relative gain as KL(posterior after N+1 ‖ posterior after N).
pub fn rel_gain_by_quadrature(
    prior: BetaPrior,
    data: TossSummary,
    next: Outcome,
    spec: &QuadratureSpec,
) -> Result<f64> {
    kl_beta(
        posterior(prior, data.push(next)),
        posterior(prior, data),
        spec,
    )
}

/// Both sides of ∫₀¹ xᵃ (1 − x)ᵇ ln x dx = B(a+1, b+1)·[ψ(a+1) − ψ(a+b+2)].
///
/// Returns `(quadrature, closed_form)`.
pub fn digamma_integral_check(a: f64, b: f64, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    // The integral converges for a, b > −1.
    if !(a.is_finite() && a > -1.0 && b.is_finite() && b > -1.0) {
        return Err(Error::InvalidInput(format!(
            "digamma integral needs a, b > -1 (got a = {a}, b = {b})"
        )));
    }
    let lhs = integrate_unit(
        |pt| Weighted::new(a * pt.ln_p + b * pt.ln_q, pt.ln_p),
        &[],
        spec,
    )?;
    let rhs = log_beta(a + 1.0, b + 1.0)?.exp() * (digamma(a + 1.0)? - digamma(a + b + 2.0)?);
    Ok((lhs.value, rhs))
}

/// Posterior of a tabulated prior after `data`, carried in log form.
struct TabulatedPosterior<'a> {
    prior: &'a TabulatedPrior,
    heads: f64,
    tails: f64,
    ln_norm: f64,
    breakpoints: Vec<f64>,
}

impl<'a> TabulatedPosterior<'a> {
    fn new(
        prior: &'a TabulatedPrior,
        heads: f64,
        tails: f64,
        spec: &QuadratureSpec,
    ) -> Result<Self> {
        let breakpoints = prior.knot_positions();
        let mass = integrate_unit(
            |pt| {
                Weighted::new(
                    prior.ln_density(pt.p) + heads * pt.ln_p + tails * pt.ln_q,
                    1.0,
                )
            },
            &breakpoints,
            spec,
        )?;
        Ok(Self {
            prior,
            heads,
            tails,
            ln_norm: mass.value.ln(),
            breakpoints,
        })
    }

    fn ln_pdf(&self, pt: &UnitPoint) -> f64 {
        self.prior.ln_density(pt.p) + self.heads * pt.ln_p + self.tails * pt.ln_q - self.ln_norm
    }

    fn updated(&self, next: Outcome, spec: &QuadratureSpec) -> Result<Self> {
        match next {
            Outcome::Head => Self::new(self.prior, self.heads + 1.0, self.tails, spec),
            Outcome::Tail => Self::new(self.prior, self.heads, self.tails + 1.0, spec),
        }
    }

    /// ∫ self · (ln self − ln_other)
    fn kl<G: Fn(&UnitPoint) -> f64>(&self, ln_other: G, spec: &QuadratureSpec) -> Result<f64> {
        let est = integrate_unit(
            |pt| {
                let ln_self = self.ln_pdf(pt);
                Weighted::new(ln_self, ln_self - ln_other(pt))
            },
            &self.breakpoints,
            spec,
        )?;
        Ok(est.value)
    }

    fn mean(&self, spec: &QuadratureSpec) -> Result<f64> {
        let est = integrate_unit(
            |pt| Weighted::new(self.ln_pdf(pt), pt.p),
            &self.breakpoints,
            spec,
        )?;
        Ok(est.value)
    }
}

/// Expected differential and expected relative gain of the next toss under an
/// arbitrary tabulated prior, each assembled from its own KL integrals.
///
/// Returns `(expected_diff, expected_rel)`; the two agree for every prior.
pub fn expected_equality_check(
    prior: &TabulatedPrior,
    data: TossSummary,
    spec: &QuadratureSpec,
) -> Result<(f64, f64)> {
    let post = TabulatedPosterior::new(prior, data.h() as f64, data.tails() as f64, spec)?;
    let w_head = post.mean(spec)?;
    let w_tail = 1.0 - w_head;
    let ln_prior = |pt: &UnitPoint| prior.ln_density(pt.p);

    let kl_post_prior = post.kl(ln_prior, spec)?;
    let mut exp_diff = 0.0;
    let mut exp_rel = 0.0;
    for (next, w) in [(Outcome::Head, w_head), (Outcome::Tail, w_tail)] {
        let after = post.updated(next, spec)?;
        let diff = after.kl(ln_prior, spec)? - kl_post_prior;
        let rel = after.kl(|pt| post.ln_pdf(pt), spec)?;
        exp_diff += w * diff;
        exp_rel += w * rel;
    }
    Ok((exp_diff, exp_rel))
}
