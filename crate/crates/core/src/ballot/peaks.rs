use super::{Axis, Candidate, Profile, ProfileError, Ranking};
use std::fmt;

/// A voter and a triple `left < middle < right` (in axis order) where
/// `middle` is the least preferred of the three.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SinglePeakViolation {
    pub voter: usize,
    pub left: Candidate,
    pub middle: Candidate,
    pub right: Candidate,
}

impl fmt::Display for SinglePeakViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "voter {} ranks {} below both {} and {}",
            self.voter, self.middle, self.left, self.right
        )
    }
}

/// Every prefix of every ranking must occupy a contiguous interval of the axis.
pub fn is_single_peaked(p: &Profile, axis: &Axis) -> Result<bool, ProfileError> {
    Ok(single_peak_violation(p, axis)?.is_none())
}

/// First violating voter, with a witnessing triple, or `None`.
pub fn single_peak_violation(
    p: &Profile,
    axis: &Axis,
) -> Result<Option<SinglePeakViolation>, ProfileError> {
    axis.check(p.num_candidates())?;
    Ok(p
        .voters()
        .iter()
        .enumerate()
        .find_map(|(v, r)| ranking_violation(r, axis).map(|(l, mid, rt)| SinglePeakViolation {
            voter: v,
            left: l,
            middle: mid,
            right: rt,
        })))
}

fn ranking_violation(r: &Ranking, axis: &Axis) -> Option<(Candidate, Candidate, Candidate)> {
    let order = r.as_slice();
    let &top = order.first()?;
    let (mut lo, mut hi) = (axis.position(top), axis.position(top));
    for &c in &order[1..] {
        let pos = axis.position(c);
        if lo > 0 && pos == lo - 1 {
            lo = pos;
        } else if pos == hi + 1 {
            hi = pos;
        } else if pos > hi {
            // the axis neighbour at hi+1 is still unranked, so it comes after c
            return Some((axis.at(lo), axis.at(hi + 1), c));
        } else {
            return Some((c, axis.at(lo - 1), axis.at(hi)));
        }
    }
    None
}
