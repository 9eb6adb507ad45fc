//! Sequential simulation of one run of tosses.
//!
//! Randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64(seed)`. Each toss consumes one `next_u64()`; the top 53
//! bits scaled by 2⁻⁵³ give a uniform u ∈ [0, 1), and the toss is a head iff
//! u < p. Both steps are platform independent, so a given seed reproduces the
//! same run bit for bit.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gains::{diff_gain, expected_gain, rel_gain};
use crate::model::{BetaPrior, Outcome, TossSummary};
use crate::table::{Cell, Tabular};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRow {
    /// 1-based toss index.
    pub step: u64,
    pub outcome: Outcome,
    /// Heads among the first `step` tosses, this one included.
    pub h_so_far: u64,
    /// Gains of this toss given the preceding `step − 1`.
    pub i_diff: f64,
    pub i_rel: f64,
    /// Expected gain of this toss, as predicted before it was made.
    pub i_expected_next: f64,
}

fn unit_f64(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

pub fn trajectory(
    prior: BetaPrior,
    true_p: f64,
    steps: u64,
    seed: u64,
) -> Result<Vec<TrajectoryRow>> {
    if !(true_p > 0.0 && true_p < 1.0) {
        return Err(Error::InvalidInput(format!(
            "true p = {true_p} must lie in (0, 1)"
        )));
    }
    if steps == 0 {
        return Err(Error::InvalidInput(
            "trajectory needs at least one step".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut data = TossSummary::EMPTY;
    let mut rows = Vec::with_capacity(steps as usize);
    for step in 1..=steps {
        let outcome = if unit_f64(&mut rng) < true_p {
            Outcome::Head
        } else {
            Outcome::Tail
        };
        let i_expected_next = expected_gain(prior, data);
        let i_diff = diff_gain(prior, data, outcome);
        let i_rel = rel_gain(prior, data, outcome);
        data = data.push(outcome);
        rows.push(TrajectoryRow {
            step,
            outcome,
            h_so_far: data.h(),
            i_diff,
            i_rel,
            i_expected_next,
        });
    }
    Ok(rows)
}

impl Tabular for TrajectoryRow {
    fn columns() -> Vec<&'static str> {
        vec![
            "step",
            "outcome",
            "h_so_far",
            "i_diff",
            "i_rel",
            "i_expected_next",
        ]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![
            self.step.into(),
            self.outcome.as_str().into(),
            self.h_so_far.into(),
            self.i_diff.into(),
            self.i_rel.into(),
            self.i_expected_next.into(),
        ]
    }
}
