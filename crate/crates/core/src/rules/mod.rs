//! Exact IRV, IRV-Average and STV tallies over full profiles.
//!
//! Every tally returns a [`TallyTrace`] recording, for each round, the active
//! set, the exact score of every active candidate and the round's event.
//! Scores are [`BigRational`] so that fractional STV transfers and tie
//! detection stay exact.

mod average;
mod irv;
mod stv;

pub use average::irv_average_tally;
pub use irv::irv_tally;
pub use stv::{droop_quota, stv_tally};

use crate::ballot::{Candidate, Profile, ProfileError};
use num_rational::BigRational;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("STV needs 1 <= k < m, got k = {k} with m = {m}")]
    InvalidSeats { k: usize, m: usize },
    #[error("invalid tie-break priority: {0}")]
    InvalidPriority(ProfileError),
}

/// How ties for the lowest score are resolved.
///
/// The default favours lower indices: among tied candidates the one with the
/// largest index is eliminated.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub enum TieBreakPolicy {
    #[default]
    LowerIndexWins,
    HigherIndexWins,
    /// Explicit order, most favoured candidate first.
    Priority(PriorityOrder),
}

/// A validated permutation of the candidates used as a tie-break order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PriorityOrder {
    order: Vec<Candidate>,
    rank: Vec<usize>,
}

impl PriorityOrder {
    pub fn as_slice(&self) -> &[Candidate] {
        &self.order
    }
}

impl TieBreakPolicy {
    pub fn priority(order: Vec<Candidate>) -> Result<Self, RuleError> {
        let ranking = crate::ballot::Ranking::new(order).map_err(RuleError::InvalidPriority)?;
        Ok(TieBreakPolicy::Priority(PriorityOrder {
            rank: ranking.positions(),
            order: ranking.as_slice().to_vec(),
        }))
    }

    /// Smaller is more favoured.
    fn rank(&self, c: Candidate) -> usize {
        match self {
            TieBreakPolicy::LowerIndexWins => c.index(),
            TieBreakPolicy::HigherIndexWins => usize::MAX - c.index(),
            // candidates outside the order rank after it, by index
            TieBreakPolicy::Priority(p) => p
                .rank
                .get(c.index())
                .copied()
                .unwrap_or(p.rank.len() + c.index()),
        }
    }

    /// The tied candidate this policy eliminates.
    pub fn loser(&self, tied: impl IntoIterator<Item = Candidate>) -> Candidate {
        tied.into_iter()
            .max_by_key(|&c| self.rank(c))
            .expect("non-empty tie")
    }

    /// The tied candidate this policy favours.
    pub fn favorite(&self, tied: impl IntoIterator<Item = Candidate>) -> Candidate {
        tied.into_iter()
            .min_by_key(|&c| self.rank(c))
            .expect("non-empty tie")
    }

    pub fn check(&self, m: usize) -> Result<(), RuleError> {
        if let TieBreakPolicy::Priority(p) = self {
            if p.order.len() != m {
                return Err(RuleError::InvalidPriority(ProfileError::InconsistentCandidates {
                    expected: m,
                    found: p.order.len(),
                }));
            }
        }
        Ok(())
    }
}

impl fmt::Display for TieBreakPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TieBreakPolicy::LowerIndexWins => f.write_str("lower-index-wins"),
            TieBreakPolicy::HigherIndexWins => f.write_str("higher-index-wins"),
            TieBreakPolicy::Priority(p) => {
                f.write_str("priority:")?;
                let items: Vec<String> = p.order.iter().map(|c| c.to_string()).collect();
                f.write_str(&items.join(","))
            }
        }
    }
}

/// IRV-Average elimination threshold.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum AvgVariant {
    /// Eliminate every candidate strictly below the average.
    #[default]
    Strict,
    /// Eliminate every candidate at or below the average.
    Weak,
}

/// What IRV-Average does when a round would eliminate nobody or everybody.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum AvgException {
    DeclareSmallestIndexWinner,
    #[default]
    EliminateLargestIndex,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AvgConfig {
    pub variant: AvgVariant,
    pub exception: AvgException,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Quota {
    /// `⌊n/(k+1)⌋ + 1`
    #[default]
    Droop,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Transfer {
    /// Supporters of an elected candidate keep `(score − Q)/score` of their weight.
    #[default]
    FractionalGregory,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StvConfig {
    pub k: usize,
    pub quota: Quota,
    pub transfer: Transfer,
}

impl StvConfig {
    pub fn new(k: usize) -> Self {
        StvConfig {
            k,
            quota: Quota::Droop,
            transfer: Transfer::FractionalGregory,
        }
    }

    pub fn check(&self, m: usize) -> Result<(), RuleError> {
        if self.k == 0 || self.k >= m {
            return Err(RuleError::InvalidSeats { k: self.k, m });
        }
        Ok(())
    }
}

/// What happened at the end of a round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RoundEvent {
    Eliminated(Candidate),
    /// IRV-Average may drop several candidates at once.
    EliminatedBatch(Vec<Candidate>),
    Elected(Candidate),
    /// A candidate holds a strict majority; the tally stops.
    MajorityStop(Candidate),
    /// IRV-Average exception: the favoured active candidate is declared winner.
    ExceptionWinner(Candidate),
}

impl RoundEvent {
    /// Candidates leaving the active set at this event.
    pub fn removed(&self) -> Vec<Candidate> {
        match self {
            RoundEvent::Eliminated(c) | RoundEvent::Elected(c) => vec![*c],
            RoundEvent::EliminatedBatch(cs) => cs.clone(),
            RoundEvent::MajorityStop(_) | RoundEvent::ExceptionWinner(_) => Vec::new(),
        }
    }
}

impl fmt::Display for RoundEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RoundEvent::Eliminated(c) => write!(f, "eliminated {c}"),
            RoundEvent::EliminatedBatch(cs) => {
                let items: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
                write!(f, "eliminated {}", items.join(" "))
            }
            RoundEvent::Elected(c) => write!(f, "elected {c}"),
            RoundEvent::MajorityStop(c) => write!(f, "majority {c}"),
            RoundEvent::ExceptionWinner(c) => write!(f, "exception-winner {c}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundRecord {
    /// Active candidates at the start of the round, ascending.
    pub active: Vec<Candidate>,
    pub scores: BTreeMap<Candidate, BigRational>,
    pub event: RoundEvent,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TallyTrace {
    pub rounds: Vec<RoundRecord>,
    /// Election threshold, for STV.
    pub quota: Option<u64>,
}

impl TallyTrace {
    /// Multi-line human-readable rendering, one line per round.
    pub fn render(&self) -> String {
        let mut out = String::new();
        if let Some(q) = self.quota {
            out.push_str(&format!("quota: {q}\n"));
        }
        for (i, round) in self.rounds.iter().enumerate() {
            let scores: Vec<String> = round
                .scores
                .iter()
                .map(|(c, s)| format!("{c}={s}"))
                .collect();
            out.push_str(&format!(
                "round {}: scores {} -> {}\n",
                i + 1,
                scores.join(" "),
                round.event
            ));
        }
        out
    }
}

/// Ascending list of the flagged candidates.
pub(crate) fn active_list(active: &[bool]) -> Vec<Candidate> {
    active
        .iter()
        .enumerate()
        .filter(|(_, a)| **a)
        .map(|(i, _)| Candidate::new(i))
        .collect()
}

/// Plain top-vote counts over the active set, recomputed from full ballots.
pub(crate) fn plurality_counts(p: &Profile, active: &[bool]) -> Vec<u64> {
    let mut counts = vec![0u64; p.num_candidates()];
    for r in p.voters() {
        counts[r.top_among(active).index()] += 1;
    }
    counts
}

pub(crate) fn integer_scores(active: &[Candidate], counts: &[u64]) -> BTreeMap<Candidate, BigRational> {
    active
        .iter()
        .map(|&c| (c, BigRational::from_integer(counts[c.index()].into())))
        .collect()
}

/// The rule used to decide fooling-set outcomes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rule {
    Irv(TieBreakPolicy),
    IrvAverage(AvgConfig, TieBreakPolicy),
    Stv(StvConfig, TieBreakPolicy),
}

impl Rule {
    /// Winner set of `p` under this rule (a singleton for single-winner rules).
    pub fn outcome(&self, p: &Profile) -> Result<BTreeSet<Candidate>, RuleError> {
        Ok(match self {
            Rule::Irv(tb) => {
                tb.check(p.num_candidates())?;
                BTreeSet::from([irv_tally(p, tb, true).0])
            }
            Rule::IrvAverage(cfg, tb) => {
                tb.check(p.num_candidates())?;
                BTreeSet::from([irv_average_tally(p, cfg, tb).0])
            }
            Rule::Stv(cfg, tb) => stv_tally(p, cfg, tb)?.0,
        })
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Irv(tb) => write!(f, "irv ({tb})"),
            Rule::IrvAverage(cfg, tb) => write!(
                f,
                "irv-average ({:?}, {:?}, {tb})",
                cfg.variant, cfg.exception
            ),
            Rule::Stv(cfg, tb) => write!(f, "stv (k={}, droop, gregory, {tb})", cfg.k),
        }
    }
}
