use proptest::prelude::*;

use infogain::oracle::{
    diff_gain_by_quadrature, digamma_integral_check, expected_equality_check, kl_beta,
    reference_priors, rel_gain_by_quadrature, QuadratureSpec,
};
use infogain::{
    diff_gain, expected_gain, posterior, rel_gain, BetaPrior, Outcome, PosteriorBeta, TossSummary,
};

fn outcome() -> impl Strategy<Value = Outcome> {
    prop_oneof![Just(Outcome::Head), Just(Outcome::Tail)]
}

fn case() -> impl Strategy<Value = (f64, u64, u64)> {
    (-0.9f64..3.0, 0u64..=500).prop_flat_map(|(a, n)| (Just(a), Just(n), 0..=n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_forms_match_quadrature((alpha, n, h) in case(), next in outcome()) {
        let prior = BetaPrior::new(alpha).unwrap();
        let data = TossSummary::new(n, h).unwrap();
        let spec = QuadratureSpec::default();
        let d = diff_gain_by_quadrature(prior, data, next, &spec).unwrap();
        let r = rel_gain_by_quadrature(prior, data, next, &spec).unwrap();
        prop_assert!((d - diff_gain(prior, data, next)).abs() <= 1e-8);
        prop_assert!((r - rel_gain(prior, data, next)).abs() <= 1e-8);
    }

    #[test]
    fn kl_is_non_negative(a1 in 0.1f64..50.0, b1 in 0.1f64..50.0, a2 in 0.1f64..50.0, b2 in 0.1f64..50.0) {
        let p = PosteriorBeta::new(a1, b1).unwrap();
        let q = PosteriorBeta::new(a2, b2).unwrap();
        let kl = kl_beta(p, q, &QuadratureSpec::default()).unwrap();
        prop_assert!(kl >= -1e-10, "{kl}");
    }

    #[test]
    fn digamma_identity(a in 0.0f64..30.0, b in 0.0f64..30.0) {
        let (lhs, rhs) = digamma_integral_check(a, b, &QuadratureSpec::default()).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-9, "{lhs} vs {rhs}");
    }
}

#[test]
fn beta_prior_expected_equality_via_quadrature() {
    let spec = QuadratureSpec::default();
    for alpha in [-0.5, 0.0, 2.0] {
        let prior = BetaPrior::new(alpha).unwrap();
        for (n, h) in [(0, 0), (5, 1), (30, 30)] {
            let data = TossSummary::new(n, h).unwrap();
            let closed = expected_gain(prior, data);
            let mut exp_rel = 0.0;
            let post = posterior(prior, data);
            for (next, w) in [
                (Outcome::Head, post.mean()),
                (Outcome::Tail, 1.0 - post.mean()),
            ] {
                exp_rel += w * rel_gain_by_quadrature(prior, data, next, &spec).unwrap();
            }
            assert!(
                (closed - exp_rel).abs() <= 1e-9,
                "alpha={alpha} n={n} h={h}"
            );
        }
    }
}

#[test]
fn tabulated_priors_expected_equality() {
    let spec = QuadratureSpec::default();
    for prior in reference_priors().unwrap() {
        for (n, h) in [(0, 0), (3, 0), (12, 9), (60, 20)] {
            let (d, r) =
                expected_equality_check(&prior, TossSummary::new(n, h).unwrap(), &spec).unwrap();
            assert!((d - r).abs() <= 1e-8, "n={n} h={h}: {d} vs {r}");
            assert!(r > 0.0);
        }
    }
}
