use super::count::count_signature;
use super::signature::{all_signatures, all_stv_signatures, representative, stv_representative};
use super::{Family, FoolingError, FoolingSpec};
use crate::ballot::{Candidate, Profile, Ranking};
use num_traits::ToPrimitive;

/// Distinct rankings of the significant voters with their multiplicities, in
/// canonical order.
pub(crate) fn canonical_groups(spec: &FoolingSpec) -> Result<Vec<(Ranking, usize)>, FoolingError> {
    let m = spec.num_candidates();
    let ell = spec.ell();
    let n = spec
        .significant_voters_usize()
        .filter(|&n| n <= 1 << 26)
        .ok_or_else(|| FoolingError::TooLarge(spec.significant_voters().to_string()))?;
    let groups = match spec.family() {
        Family::Sp => (0..m).map(|c| (peak_ranking(c, m), ell)).collect(),
        Family::Irv => all_signatures(m)
            .iter()
            .map(|s| Ok((representative(s, m)?, multiplicity(ell, count_signature(s, m)?))))
            .collect::<Result<Vec<_>, FoolingError>>()?,
        Family::Stv { k } => all_stv_signatures(m, k)
            .iter()
            .map(|s| Ok((stv_representative(s, m, k)?, multiplicity(ell, count_signature(s, m)?))))
            .collect::<Result<Vec<_>, FoolingError>>()?,
    };
    debug_assert_eq!(groups.iter().map(|g| g.1).sum::<usize>(), n);
    Ok(groups)
}

fn multiplicity(ell: usize, r: num_bigint::BigUint) -> usize {
    ell * r.to_usize().expect("bounded by n")
}

/// `c ≻ c−1 ≻ … ≻ 0 ≻ c+1 ≻ … ≻ m−1`, single-peaked on the identity axis.
fn peak_ranking(c: usize, m: usize) -> Ranking {
    Ranking::from_vec_unchecked((0..=c).rev().chain(c + 1..m).map(Candidate::new).collect())
}

/// The tie-breaking voters appended after the significant ones.
///
/// IRV: for `i = m−1` down to 0, `m−i` voters rank `i` first and the rest in
/// ascending order. Single-peaked: for peak `c = m−1` down to 0, `2^{m−1−c}`
/// voters with the single-peaked ranking that falls off to the left first.
pub fn tie_breaking_block(m: usize, family: Family) -> Result<Profile, FoolingError> {
    if m == 0 {
        return Err(FoolingError::InvalidSpec("m must be at least 1".into()));
    }
    let mut voters = Vec::new();
    match family {
        Family::Irv => {
            for i in (0..m).rev() {
                let order: Vec<Candidate> = std::iter::once(i)
                    .chain((0..m).filter(|&c| c != i))
                    .map(Candidate::new)
                    .collect();
                voters.extend(std::iter::repeat_n(Ranking::from_vec_unchecked(order), m - i));
            }
        }
        Family::Sp => {
            if m >= 32 {
                return Err(FoolingError::TooLarge(format!("2^{m} - 1")));
            }
            for c in (0..m).rev() {
                voters.extend(std::iter::repeat_n(peak_ranking(c, m), 1 << (m - 1 - c)));
            }
        }
        Family::Stv { .. } => {
            return Err(FoolingError::InvalidSpec(
                "tie-breaking voters are defined for the irv and sp families only".into(),
            ));
        }
    }
    Ok(Profile::new(voters)?)
}

fn block_for(spec: &FoolingSpec) -> Result<Option<Profile>, FoolingError> {
    if spec.tiebreak_voters() {
        tie_breaking_block(spec.num_candidates(), spec.family()).map(Some)
    } else {
        Ok(None)
    }
}

/// The canonical member of the family: each group's ranking repeated its
/// multiplicity times, groups in lexicographic signature order (by peak for
/// the single-peaked family), then the tie-breaking block if requested.
pub fn canonical_fooling_profile(spec: &FoolingSpec) -> Result<Profile, FoolingError> {
    let groups = canonical_groups(spec)?;
    let voters = groups
        .iter()
        .flat_map(|(r, count)| std::iter::repeat_n(r.clone(), *count))
        .collect();
    let significant = Profile::new(voters)?;
    Ok(match block_for(spec)? {
        Some(block) => significant.concat(&block)?,
        None => significant,
    })
}

/// Every distinct reordering of the canonical profile's significant voters,
/// in lexicographic order starting from the canonical profile.
pub fn enumerate_fooling_profiles(spec: &FoolingSpec, limit: Option<u64>) -> Result<FoolingProfiles, FoolingError> {
    let groups = canonical_groups(spec)?;
    let arrangement = groups
        .iter()
        .enumerate()
        .flat_map(|(g, (_, count))| std::iter::repeat_n(g, *count))
        .collect();
    Ok(FoolingProfiles {
        rankings: groups.into_iter().map(|(r, _)| r).collect(),
        block: block_for(spec)?,
        next: Some(arrangement),
        remaining: limit,
    })
}

/// Streaming iterator over a fooling family; see [`enumerate_fooling_profiles`].
#[derive(Debug, Clone)]
pub struct FoolingProfiles {
    rankings: Vec<Ranking>,
    block: Option<Profile>,
    next: Option<Vec<usize>>,
    remaining: Option<u64>,
}

impl Iterator for FoolingProfiles {
    type Item = Profile;

    fn next(&mut self) -> Option<Profile> {
        if self.remaining == Some(0) {
            return None;
        }
        let current = self.next.take()?;
        let voters = current.iter().map(|&g| self.rankings[g].clone()).collect();
        let mut successor = current;
        if next_permutation(&mut successor) {
            self.next = Some(successor);
        }
        if let Some(r) = self.remaining.as_mut() {
            *r -= 1;
        }
        let profile = Profile::new(voters).expect("rankings share m");
        Some(match &self.block {
            Some(block) => profile.concat(block).expect("same m"),
            None => profile,
        })
    }
}

/// Advances to the next lexicographic multiset permutation; false at the last.
fn next_permutation(xs: &mut [usize]) -> bool {
    let Some(i) = xs.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = xs.iter().rposition(|&x| x > xs[i]).expect("pivot has a larger successor");
    xs.swap(i, j);
    xs[i + 1..].reverse();
    true
}
