//! Progressive preference revelation protocols with exact bit accounting.
//!
//! Voters are simulated by a [`Respondent`] that answers queries from hidden
//! full rankings. The protocols only learn what the answers reveal, and every
//! answer is logged in a [`Transcript`] together with its cost:
//!
//! * a top-among-`A` answer costs `⌈log2 |A|⌉` bits (0 when `|A| = 1`);
//! * a left/right direction answer costs 1 bit;
//! * transfers the protocol can infer on its own are not queries and cost 0.

mod bounds;
mod ppr;
mod sp_ppr;
mod stv_ppr;
mod transcript;

pub use bounds::transcript_bound_check;
pub use ppr::run_ppr;
pub use sp_ppr::run_sp_ppr;
pub use stv_ppr::run_stv_ppr;
pub use transcript::{Answer, ProtocolKind, Query, QueryKind, Side, Step, StepEvent, Transcript};

use crate::ballot::{Axis, Candidate, Profile, ProfileError, SinglePeakViolation};
use crate::rules::RuleError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElicitationError {
    #[error("profile is not single-peaked: {0}")]
    NotSinglePeaked(SinglePeakViolation),
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error(transparent)]
    Rule(#[from] RuleError),
    #[error("transcript lacks round structure: {0}")]
    Malformed(String),
}

/// Source of answers for elicitation queries.
pub trait Respondent {
    fn num_voters(&self) -> usize;
    fn num_candidates(&self) -> usize;
    /// The voter's most preferred candidate among those flagged in `active`.
    fn top_among(&self, voter: usize, active: &[bool]) -> Candidate;
    /// Whether the voter's most preferred active candidate lies left or right
    /// of `pivot` on `axis`.
    fn side_of_next(&self, voter: usize, pivot: Candidate, active: &[bool], axis: &Axis) -> Side {
        let next = self.top_among(voter, active);
        if axis.position(next) < axis.position(pivot) {
            Side::Left
        } else {
            Side::Right
        }
    }
}

impl Respondent for Profile {
    fn num_voters(&self) -> usize {
        Profile::num_voters(self)
    }

    fn num_candidates(&self) -> usize {
        Profile::num_candidates(self)
    }

    fn top_among(&self, voter: usize, active: &[bool]) -> Candidate {
        self.voter(voter).top_among(active)
    }
}

/// `⌈log2 k⌉` for `k ≥ 1`.
pub fn ceil_log2(k: usize) -> u32 {
    assert!(k >= 1);
    usize::BITS - (k - 1).leading_zeros()
}
