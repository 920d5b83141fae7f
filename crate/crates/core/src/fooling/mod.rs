//! Fooling sets for IRV, single-peaked IRV and STV.
//!
//! A fooling set is a family of profiles sharing one outcome such that any
//! two members can be mixed voter-wise into a profile with another outcome.
//! Its size lower-bounds the number of bits any elicitation protocol for the
//! rule must exchange. This module builds the families from signatures,
//! counts them exactly and in log space, and checks the fooling property
//! empirically on small instances.

mod asymptotics;
mod construct;
mod count;
mod signature;
mod verify;

pub use asymptotics::{AsymptoticEstimate, ScaledLog, asymptotic_estimate, log_cardinality};
pub use construct::{FoolingProfiles, canonical_fooling_profile, enumerate_fooling_profiles, tie_breaking_block};
pub use count::{count_signature, fooling_cardinality, ln_big};
pub use signature::{
    Flavor, Signature, all_signatures, all_stv_signatures, representative, signature, stv_representative,
    stv_signature,
};
pub use verify::{
    PairFailure, ProfileFailure, VerificationReport, VerifyMode, VerifyOptions, Witness, WitnessHistogram,
    WitnessKind, verify_fooling_pair, verify_fooling_set,
};

use crate::ballot::{Candidate, ProfileError};
use crate::rules::{Rule, RuleError, StvConfig, TieBreakPolicy};
use num_bigint::BigUint;
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, thiserror::Error)]
pub enum FoolingError {
    #[error("invalid fooling spec: {0}")]
    InvalidSpec(String),
    #[error("invalid signature {0}")]
    InvalidSignature(String),
    #[error("{0} voters cannot be materialised")]
    TooLarge(String),
    #[error("fooling set has {cardinality} profiles, above the enumeration ceiling {ceiling}")]
    CeilingExceeded { cardinality: BigUint, ceiling: u64 },
    #[error("profiles are equal")]
    EqualProfiles,
    #[error("the rule disagrees on the two profiles: {p:?} vs {q:?}")]
    OutcomeDisagreement {
        p: BTreeSet<Candidate>,
        q: BTreeSet<Candidate>,
    },
    #[error("{differing} differing voters is too many for the full mix search")]
    TooManyDifferences { differing: usize },
    #[error("worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error(transparent)]
    Rule(#[from] RuleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Irv,
    /// Single-peaked profiles on the identity axis.
    Sp,
    Stv { k: usize },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Irv => f.write_str("irv"),
            Family::Sp => f.write_str("sp"),
            Family::Stv { k } => write!(f, "stv(k={k})"),
        }
    }
}

/// A validated description of one fooling family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FoolingSpec {
    family: Family,
    m: usize,
    ell: usize,
    tiebreak_voters: bool,
}

impl FoolingSpec {
    pub fn new(family: Family, m: usize, ell: usize, tiebreak_voters: bool) -> Result<Self, FoolingError> {
        let bad = |msg: String| Err(FoolingError::InvalidSpec(msg));
        if m == 0 {
            return bad("m must be at least 1".into());
        }
        if ell == 0 {
            return bad("the multiplicity must be positive".into());
        }
        match family {
            Family::Irv => {
                if tiebreak_voters && ell as u128 <= (m as u128 * (m as u128 + 1)) / 2 {
                    return bad(format!(
                        "tie-breaking voters need ell > m(m+1)/2 = {}, got {ell}",
                        m * (m + 1) / 2
                    ));
                }
            }
            Family::Sp => {
                if !m.is_power_of_two() {
                    return bad(format!("single-peaked family needs m a power of two, got {m}"));
                }
                if ell <= 2 {
                    return bad(format!("single-peaked family needs ell > 2, got {ell}"));
                }
                if tiebreak_voters && (m >= usize::BITS as usize || ell < 1usize << m) {
                    return bad(format!("tie-breaking voters need ell >= 2^m, got ell = {ell}, m = {m}"));
                }
            }
            Family::Stv { k } => {
                if k == 0 || k >= m {
                    return bad(format!("STV family needs 1 <= k < m, got k = {k}, m = {m}"));
                }
                if tiebreak_voters {
                    return bad("tie-breaking voters are defined for the irv and sp families only".into());
                }
            }
        }
        Ok(FoolingSpec {
            family,
            m,
            ell,
            tiebreak_voters,
        })
    }

    pub fn irv(m: usize, ell: usize) -> Result<Self, FoolingError> {
        Self::new(Family::Irv, m, ell, false)
    }

    pub fn sp(m: usize, ell: usize) -> Result<Self, FoolingError> {
        Self::new(Family::Sp, m, ell, false)
    }

    pub fn stv(m: usize, k: usize, ell: usize) -> Result<Self, FoolingError> {
        Self::new(Family::Stv { k }, m, ell, false)
    }

    pub fn with_tiebreak_voters(self) -> Result<Self, FoolingError> {
        Self::new(self.family, self.m, self.ell, true)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn num_candidates(&self) -> usize {
        self.m
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn tiebreak_voters(&self) -> bool {
        self.tiebreak_voters
    }

    /// Seats filled by the family's rule: `k` for STV, otherwise 1.
    pub fn seats(&self) -> usize {
        match self.family {
            Family::Stv { k } => k,
            _ => 1,
        }
    }

    /// Number of significant voters `n`, exactly.
    pub fn significant_voters(&self) -> BigUint {
        let ell = BigUint::from(self.ell);
        match self.family {
            Family::Sp => ell * self.m,
            _ => ell * count::factorial(self.m as u64),
        }
    }

    /// Significant voters as a machine integer, when it fits.
    pub fn significant_voters_usize(&self) -> Option<usize> {
        match self.family {
            Family::Sp => self.ell.checked_mul(self.m),
            _ => (2..=self.m).try_fold(self.ell, |acc, j| acc.checked_mul(j)),
        }
    }

    /// Size of the appended tie-breaking block (0 when not requested).
    pub fn tiebreak_block_len(&self) -> usize {
        match (self.tiebreak_voters, self.family) {
            (false, _) | (_, Family::Stv { .. }) => 0,
            (true, Family::Irv) => self.m * (self.m + 1) / 2,
            (true, Family::Sp) => (1usize << self.m) - 1,
        }
    }

    /// Outcome every member of the family should produce.
    pub fn expected_outcome(&self) -> BTreeSet<Candidate> {
        (0..self.seats()).map(Candidate::new).collect()
    }

    /// The rule the family is built for, with lower-index-wins tie-breaking.
    pub fn default_rule(&self) -> Rule {
        match self.family {
            Family::Irv | Family::Sp => Rule::Irv(TieBreakPolicy::default()),
            Family::Stv { k } => Rule::Stv(StvConfig::new(k), TieBreakPolicy::default()),
        }
    }
}

impl fmt::Display for FoolingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} m={} ell={}", self.family, self.m, self.ell)?;
        if self.tiebreak_voters {
            f.write_str(" +tiebreak")?;
        }
        Ok(())
    }
}
