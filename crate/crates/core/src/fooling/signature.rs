//! Signatures and representatives.
//!
//! The signature of a ranking is the list of candidates an IRV count observes
//! for that ballot when candidates are eliminated in the order `m−1, …, 0`:
//! the running minima of the ranking (its record-minimum subsequence). The
//! STV flavour stops at the first candidate below `k`.

use super::FoolingError;
use crate::ballot::{Candidate, Ranking};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flavor {
    Irv,
    Stv { k: usize },
}

/// A strictly decreasing candidate list: ending at 0 for IRV, or with exactly
/// one element below `k`, the last, for STV.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    candidates: Vec<Candidate>,
    flavor: Flavor,
}

impl Signature {
    pub fn new(candidates: Vec<Candidate>, flavor: Flavor) -> Result<Self, FoolingError> {
        let bad = |why: &str| FoolingError::InvalidSignature(format!("{candidates:?}: {why}"));
        let Some(&last) = candidates.last() else {
            return Err(bad("empty"));
        };
        if candidates.windows(2).any(|w| w[0] <= w[1]) {
            return Err(bad("not strictly decreasing"));
        }
        match flavor {
            Flavor::Irv if last.index() != 0 => return Err(bad("does not end at 0")),
            Flavor::Stv { k } if k == 0 || last.index() >= k => {
                return Err(bad("last element is not below k"));
            }
            Flavor::Stv { k } if candidates[..candidates.len() - 1].iter().any(|c| c.index() < k) => {
                return Err(bad("an element before the last is below k"));
            }
            _ => {}
        }
        Ok(Signature { candidates, flavor })
    }

    pub fn from_indices(indices: &[usize], flavor: Flavor) -> Result<Self, FoolingError> {
        Self::new(indices.iter().copied().map(Candidate::new).collect(), flavor)
    }

    pub fn candidates(&self) -> &[Candidate] {
        &self.candidates
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    pub fn last(&self) -> Candidate {
        *self.candidates.last().expect("non-empty")
    }

    fn check_fits(&self, m: usize) -> Result<(), FoolingError> {
        if self.candidates[0].index() >= m {
            return Err(FoolingError::InvalidSignature(format!(
                "{self} mentions candidates outside 0..{m}"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.candidates.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", items.join(","))
    }
}

/// Running minima of `r`, which always end at candidate 0.
pub fn signature(r: &Ranking) -> Signature {
    let mut out: Vec<Candidate> = Vec::new();
    for &c in r.as_slice() {
        if out.last().is_none_or(|&low| c < low) {
            out.push(c);
        }
    }
    Signature {
        candidates: out,
        flavor: Flavor::Irv,
    }
}

/// Running minima of `r`, truncated after the first candidate below `k`.
pub fn stv_signature(r: &Ranking, k: usize) -> Signature {
    assert!(k >= 1 && k < r.len().max(2), "stv_signature needs 1 <= k < m");
    let mut out: Vec<Candidate> = Vec::new();
    for &c in r.as_slice() {
        if out.last().is_none_or(|&low| c < low) {
            out.push(c);
            if c.index() < k {
                break;
            }
        }
    }
    Signature {
        candidates: out,
        flavor: Flavor::Stv { k },
    }
}

/// The ranking with signature `s` that favours higher indices as much as
/// possible: each signature element is followed by every not-yet-placed
/// higher candidate in decreasing order.
pub fn representative(s: &Signature, m: usize) -> Result<Ranking, FoolingError> {
    if s.flavor != Flavor::Irv {
        return Err(FoolingError::InvalidSignature(format!("{s} is not an IRV signature")));
    }
    s.check_fits(m)?;
    Ok(greedy_completion(s, m))
}

/// STV counterpart of [`representative`]: after the final element, every
/// remaining candidate follows in decreasing order.
pub fn stv_representative(s: &Signature, m: usize, k: usize) -> Result<Ranking, FoolingError> {
    if s.flavor != (Flavor::Stv { k }) {
        return Err(FoolingError::InvalidSignature(format!("{s} is not an STV(k={k}) signature")));
    }
    if k >= m {
        return Err(FoolingError::InvalidSignature(format!("k = {k} must be below m = {m}")));
    }
    s.check_fits(m)?;
    Ok(greedy_completion(s, m))
}

fn greedy_completion(s: &Signature, m: usize) -> Ranking {
    let mut placed = vec![false; m];
    let mut order = Vec::with_capacity(m);
    // Candidates above each signature element are exhausted top-down, so one
    // cursor over m-1..0 suffices.
    for &c in &s.candidates {
        order.push(c);
        placed[c.index()] = true;
        for d in (c.index() + 1..m).rev() {
            if !placed[d] {
                placed[d] = true;
                order.push(Candidate::new(d));
            }
        }
    }
    for d in (0..m).rev() {
        if !placed[d] {
            order.push(Candidate::new(d));
        }
    }
    Ranking::from_vec_unchecked(order)
}

/// Every IRV signature over `m` candidates, in lexicographic order.
pub fn all_signatures(m: usize) -> Vec<Signature> {
    assert!(m >= 1);
    let mut out: Vec<Signature> = subsets_descending(1, m)
        .into_iter()
        .map(|mut head| {
            head.push(Candidate::new(0));
            Signature {
                candidates: head,
                flavor: Flavor::Irv,
            }
        })
        .collect();
    out.sort();
    out
}

/// Every STV(k) signature over `m` candidates, in lexicographic order.
pub fn all_stv_signatures(m: usize, k: usize) -> Vec<Signature> {
    assert!(k >= 1 && k < m);
    let mut out = Vec::new();
    for head in subsets_descending(k, m) {
        for last in 0..k {
            let mut candidates = head.clone();
            candidates.push(Candidate::new(last));
            out.push(Signature {
                candidates,
                flavor: Flavor::Stv { k },
            });
        }
    }
    out.sort();
    out
}

/// All subsets of `lo..hi`, each listed in decreasing order.
fn subsets_descending(lo: usize, hi: usize) -> Vec<Vec<Candidate>> {
    let width = hi.saturating_sub(lo);
    assert!(width < usize::BITS as usize, "too many subsets");
    (0..1usize << width)
        .map(|mask| {
            (lo..hi)
                .rev()
                .filter(|c| mask >> (c - lo) & 1 == 1)
                .map(Candidate::new)
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(order: &[usize]) -> Ranking {
        Ranking::from_indices(order).unwrap()
    }

    fn sig(indices: &[usize]) -> Signature {
        Signature::from_indices(indices, Flavor::Irv).unwrap()
    }

    #[test]
    fn signature_examples() {
        assert_eq!(signature(&r(&[2, 4, 3, 0, 1])), sig(&[2, 0]));
        assert_eq!(signature(&r(&[1, 2, 0])), sig(&[1, 0]));
        for m in 1..7 {
            assert_eq!(signature(&Ranking::identity(m)), sig(&[0]));
            let rev: Vec<usize> = (0..m).rev().collect();
            assert_eq!(signature(&r(&rev)), sig(&rev));
        }
    }

    #[test]
    fn representative_examples() {
        assert_eq!(representative(&sig(&[2, 0]), 5).unwrap(), r(&[2, 4, 3, 0, 1]));
        assert_eq!(representative(&sig(&[0]), 3).unwrap(), r(&[0, 2, 1]));
        for m in 1..7 {
            let rev: Vec<usize> = (0..m).rev().collect();
            assert_eq!(representative(&sig(&rev), m).unwrap(), r(&rev));
        }
    }

    #[test]
    fn stv_examples() {
        let ranking = r(&[7, 9, 3, 4, 5, 0, 1, 6, 2, 8]);
        let s = stv_signature(&ranking, 4);
        assert_eq!(s, Signature::from_indices(&[7, 3], Flavor::Stv { k: 4 }).unwrap());
        assert_eq!(
            stv_representative(&s, 10, 4).unwrap(),
            r(&[7, 9, 8, 3, 6, 5, 4, 2, 1, 0])
        );
        // placing 8 below 3 keeps the signature but favours 8 less
        assert_eq!(stv_signature(&r(&[7, 9, 3, 8, 6, 5, 4, 2, 1, 0]), 4), s);
        // top below k stops immediately
        let s = stv_signature(&r(&[1, 3, 0, 2]), 2);
        assert_eq!(s.candidates(), [Candidate::new(1)]);
        assert_eq!(stv_representative(&s, 4, 2).unwrap(), r(&[1, 3, 2, 0]));
    }

    #[test]
    fn invalid_signatures() {
        assert!(Signature::from_indices(&[], Flavor::Irv).is_err());
        assert!(Signature::from_indices(&[1, 2, 0], Flavor::Irv).is_err());
        assert!(Signature::from_indices(&[2, 1], Flavor::Irv).is_err());
        assert!(Signature::from_indices(&[5, 3], Flavor::Stv { k: 3 }).is_err());
        assert!(Signature::from_indices(&[5, 1, 0], Flavor::Stv { k: 3 }).is_err());
        assert!(representative(&sig(&[4, 0]), 3).is_err());
        let stv = Signature::from_indices(&[2], Flavor::Stv { k: 3 }).unwrap();
        assert!(representative(&stv, 4).is_err());
        assert!(stv_representative(&stv, 4, 2).is_err());
    }

    #[test]
    fn representatives_round_trip() {
        for m in 1..=7 {
            for s in all_signatures(m) {
                assert_eq!(signature(&representative(&s, m).unwrap()), s);
            }
        }
        for m in 2..=6 {
            for k in 1..m.min(4) {
                for s in all_stv_signatures(m, k) {
                    assert_eq!(stv_signature(&stv_representative(&s, m, k).unwrap(), k), s);
                }
            }
        }
    }

    #[test]
    fn single_seat_signature_is_irv_signature() {
        for m in 2..=6 {
            for seed in 0..200 {
                let r = crate::ballot::random_profile(m, 1, seed).voter(0).clone();
                assert_eq!(stv_signature(&r, 1).candidates(), signature(&r).candidates());
            }
        }
    }

    #[test]
    fn signature_counts() {
        for m in 1..=8 {
            assert_eq!(all_signatures(m).len(), 1 << (m - 1));
        }
        assert_eq!(all_stv_signatures(5, 2).len(), 2 * 8);
        let ordered = all_signatures(3);
        let shown: Vec<String> = ordered.iter().map(|s| s.to_string()).collect();
        assert_eq!(shown, ["(0)", "(1,0)", "(2,0)", "(2,1,0)"]);
    }
}
