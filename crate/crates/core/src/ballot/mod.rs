//! Candidates, rankings and profiles.
//!
//! Candidates are always the integers `0..m`. Every [`Ranking`] is a full
//! permutation of them, and a [`Profile`] is an ordered sequence of rankings
//! sharing the same `m`, indexed by voter position.

mod format;
mod peaks;
mod random;

pub use format::{parse_profile, serialize_profile};
pub use peaks::{SinglePeakViolation, is_single_peaked, single_peak_violation};
pub use random::{random_profile, random_single_peaked_profile};

use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// Errors raised while building or combining profiles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("ranking is not a permutation of 0..{m}: {detail}")]
    NotAPermutation { m: usize, detail: String },
    #[error("inconsistent candidate count: expected {expected}, found {found}")]
    InconsistentCandidates { expected: usize, found: usize },
    #[error("profile has no voters")]
    Empty,
    #[error("profile dimensions differ: {left_m}x{left_n} vs {right_m}x{right_n}")]
    DimensionMismatch {
        left_m: usize,
        left_n: usize,
        right_m: usize,
        right_n: usize,
    },
    #[error("voter index {index} out of range for {n} voters")]
    VoterOutOfRange { index: usize, n: usize },
    #[error("axis has {axis} candidates but the profile has {m}")]
    AxisLength { axis: usize, m: usize },
}

/// A candidate, identified by its index in `0..m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Candidate(usize);

impl Candidate {
    pub const fn new(index: usize) -> Self {
        Candidate(index)
    }

    pub const fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for Candidate {
    fn from(index: usize) -> Self {
        Candidate(index)
    }
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One voter's strict linear order over all candidates, most preferred first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ranking {
    order: Vec<Candidate>,
}

impl Ranking {
    /// Builds a ranking, checking that `order` is a permutation of `0..order.len()`.
    pub fn new(order: Vec<Candidate>) -> Result<Self, ProfileError> {
        let m = order.len();
        let mut seen = vec![false; m];
        for &c in &order {
            if c.index() >= m {
                return Err(ProfileError::NotAPermutation {
                    m,
                    detail: format!("candidate {c} out of range"),
                });
            }
            if std::mem::replace(&mut seen[c.index()], true) {
                return Err(ProfileError::NotAPermutation {
                    m,
                    detail: format!("candidate {c} appears twice"),
                });
            }
        }
        Ok(Ranking { order })
    }

    pub fn from_indices(order: &[usize]) -> Result<Self, ProfileError> {
        Self::new(order.iter().copied().map(Candidate).collect())
    }

    /// Caller guarantees the permutation invariant.
    pub(crate) fn from_vec_unchecked(order: Vec<Candidate>) -> Self {
        debug_assert!(Ranking::new(order.clone()).is_ok());
        Ranking { order }
    }

    /// The identity order `0 ≻ 1 ≻ … ≻ m−1`.
    pub fn identity(m: usize) -> Self {
        Ranking {
            order: (0..m).map(Candidate).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn as_slice(&self) -> &[Candidate] {
        &self.order
    }

    pub fn top(&self) -> Candidate {
        self.order[0]
    }

    /// Most preferred candidate among those flagged in `active`.
    ///
    /// Panics if no candidate is active.
    pub fn top_among(&self, active: &[bool]) -> Candidate {
        *self
            .order
            .iter()
            .find(|c| active[c.index()])
            .expect("at least one active candidate")
    }

    /// Inverse permutation: `positions()[c]` is the rank of candidate `c`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, c) in self.order.iter().enumerate() {
            pos[c.index()] = i;
        }
        pos
    }
}

impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.order.iter().enumerate() {
            if i > 0 {
                f.write_str(" > ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// An ordered sequence of `n ≥ 1` rankings over the same `m` candidates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Profile {
    m: usize,
    voters: Vec<Ranking>,
}

impl Profile {
    pub fn new(voters: Vec<Ranking>) -> Result<Self, ProfileError> {
        let m = voters.first().ok_or(ProfileError::Empty)?.len();
        if let Some(bad) = voters.iter().find(|r| r.len() != m) {
            return Err(ProfileError::InconsistentCandidates {
                expected: m,
                found: bad.len(),
            });
        }
        Ok(Profile { m, voters })
    }

    /// Convenience constructor from `(multiplicity, ranking)` groups.
    pub fn from_groups(groups: &[(usize, &[usize])]) -> Result<Self, ProfileError> {
        let mut voters = Vec::new();
        for &(count, order) in groups {
            let ranking = Ranking::from_indices(order)?;
            voters.extend(std::iter::repeat_n(ranking, count));
        }
        Profile::new(voters)
    }

    pub fn num_candidates(&self) -> usize {
        self.m
    }

    pub fn num_voters(&self) -> usize {
        self.voters.len()
    }

    pub fn voters(&self) -> &[Ranking] {
        &self.voters
    }

    pub fn voter(&self, v: usize) -> &Ranking {
        &self.voters[v]
    }

    pub fn into_voters(self) -> Vec<Ranking> {
        self.voters
    }

    /// Appends `other`'s voters after this profile's voters.
    pub fn concat(&self, other: &Profile) -> Result<Profile, ProfileError> {
        if other.m != self.m {
            return Err(ProfileError::InconsistentCandidates {
                expected: self.m,
                found: other.m,
            });
        }
        let mut voters = self.voters.clone();
        voters.extend_from_slice(&other.voters);
        Ok(Profile { m: self.m, voters })
    }

    /// Voter indices whose rankings differ between `self` and `other`.
    pub fn differing_voters(&self, other: &Profile) -> Result<Vec<usize>, ProfileError> {
        self.check_same_shape(other)?;
        Ok((0..self.voters.len())
            .filter(|&v| self.voters[v] != other.voters[v])
            .collect())
    }

    fn check_same_shape(&self, other: &Profile) -> Result<(), ProfileError> {
        if self.m != other.m || self.voters.len() != other.voters.len() {
            return Err(ProfileError::DimensionMismatch {
                left_m: self.m,
                left_n: self.voters.len(),
                right_m: other.m,
                right_n: other.voters.len(),
            });
        }
        Ok(())
    }
}

/// `P^{−S} + Q^{S}`: voter `v` takes `q`'s ranking when `v ∈ take_from_q`,
/// and `p`'s ranking otherwise.
pub fn mix(p: &Profile, q: &Profile, take_from_q: &BTreeSet<usize>) -> Result<Profile, ProfileError> {
    p.check_same_shape(q)?;
    let n = p.num_voters();
    if let Some(&bad) = take_from_q.iter().find(|&&v| v >= n) {
        return Err(ProfileError::VoterOutOfRange { index: bad, n });
    }
    let voters = (0..n)
        .map(|v| {
            if take_from_q.contains(&v) {
                q.voters[v].clone()
            } else {
                p.voters[v].clone()
            }
        })
        .collect();
    Ok(Profile { m: p.m, voters })
}

/// A reference axis for single-peakedness: a permutation of the candidates,
/// read left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Axis {
    order: Vec<Candidate>,
    position: Vec<usize>,
}

impl Axis {
    pub fn identity(m: usize) -> Self {
        Axis {
            order: (0..m).map(Candidate).collect(),
            position: (0..m).collect(),
        }
    }

    pub fn new(order: Vec<Candidate>) -> Result<Self, ProfileError> {
        let ranking = Ranking::new(order)?;
        let position = ranking.positions();
        Ok(Axis {
            order: ranking.order,
            position,
        })
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Position of `c` along the axis.
    pub fn position(&self, c: Candidate) -> usize {
        self.position[c.index()]
    }

    /// Candidate at axis position `i`.
    pub fn at(&self, i: usize) -> Candidate {
        self.order[i]
    }

    pub fn as_slice(&self) -> &[Candidate] {
        &self.order
    }

    pub(crate) fn check(&self, m: usize) -> Result<(), ProfileError> {
        if self.len() != m {
            return Err(ProfileError::AxisLength { axis: self.len(), m });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sec42_p() -> Profile {
        Profile::from_groups(&[(2, &[0, 2, 1]), (2, &[1, 2, 0]), (1, &[2, 0, 1]), (1, &[2, 1, 0])])
            .unwrap()
    }

    fn sec42_q() -> Profile {
        Profile::from_groups(&[
            (2, &[0, 2, 1]),
            (1, &[1, 2, 0]),
            (1, &[2, 0, 1]),
            (1, &[1, 2, 0]),
            (1, &[2, 1, 0]),
        ])
        .unwrap()
    }

    #[test]
    fn ranking_rejects_duplicates_and_out_of_range() {
        assert!(Ranking::from_indices(&[0, 0, 1]).is_err());
        assert!(Ranking::from_indices(&[0, 3, 1]).is_err());
        assert!(Ranking::from_indices(&[1, 2, 0]).is_ok());
    }

    #[test]
    fn profile_rejects_mixed_lengths() {
        let a = Ranking::identity(3);
        let b = Ranking::identity(4);
        assert_eq!(
            Profile::new(vec![a, b]),
            Err(ProfileError::InconsistentCandidates { expected: 3, found: 4 })
        );
        assert_eq!(Profile::new(vec![]), Err(ProfileError::Empty));
    }

    #[test]
    fn mix_borrows_fourth_voter() {
        let (p, q) = (sec42_p(), sec42_q());
        let mixed = mix(&p, &q, &BTreeSet::from([3])).unwrap();
        let expected = Profile::from_groups(&[
            (2, &[0, 2, 1]),
            (1, &[1, 2, 0]),
            (2, &[2, 0, 1]),
            (1, &[2, 1, 0]),
        ])
        .unwrap();
        assert_eq!(mixed, expected);
    }

    #[test]
    fn mix_boundaries() {
        let (p, q) = (sec42_p(), sec42_q());
        assert_eq!(mix(&p, &p, &BTreeSet::from([0])).unwrap(), p);
        assert_eq!(mix(&p, &q, &BTreeSet::new()).unwrap(), p);
        let all: BTreeSet<usize> = (0..6).collect();
        assert_eq!(mix(&p, &q, &all).unwrap(), q);
    }

    #[test]
    fn mix_errors() {
        let p = sec42_p();
        let short = Profile::from_groups(&[(1, &[0, 1, 2])]).unwrap();
        assert!(matches!(
            mix(&p, &short, &BTreeSet::new()),
            Err(ProfileError::DimensionMismatch { .. })
        ));
        assert_eq!(
            mix(&p, &p, &BTreeSet::from([6])),
            Err(ProfileError::VoterOutOfRange { index: 6, n: 6 })
        );
    }

    #[test]
    fn differing_voters_of_sec42_pair() {
        assert_eq!(sec42_p().differing_voters(&sec42_q()).unwrap(), vec![3, 4]);
    }
}
