use super::{RoundEvent, RoundRecord, RuleError, StvConfig, TallyTrace, TieBreakPolicy, active_list};
use crate::ballot::{Candidate, Profile};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// `⌊n/(k+1)⌋ + 1`
pub fn droop_quota(n: u64, k: u64) -> u64 {
    n / (k + 1) + 1
}

/// Single transferable vote with the Droop quota and fractional Gregory
/// transfers.
///
/// Each round the highest-scoring active candidate (ties: the one `tb`
/// favours) is elected if it reaches the quota; its supporters then keep
/// `(score − Q)/score` of their weight and voters left with zero weight drop
/// out. Otherwise the lowest-scoring candidate (ties: `tb`) is eliminated.
/// The count ends once `k` candidates are elected or only `k − |E|` remain
/// active, in which case all of them are elected.
pub fn stv_tally(
    p: &Profile,
    cfg: &StvConfig,
    tb: &TieBreakPolicy,
) -> Result<(BTreeSet<Candidate>, TallyTrace), RuleError> {
    let m = p.num_candidates();
    cfg.check(m)?;
    tb.check(m)?;
    let k = cfg.k;
    let quota_int = droop_quota(p.num_voters() as u64, k as u64);
    let quota = BigRational::from_integer(BigInt::from(quota_int));
    let mut weights: Vec<BigRational> = vec![BigRational::one(); p.num_voters()];
    let mut active = vec![true; m];
    let mut elected = BTreeSet::new();
    let mut trace = TallyTrace {
        rounds: Vec::new(),
        quota: Some(quota_int),
    };
    loop {
        let list = active_list(&active);
        let mut scores: BTreeMap<Candidate, BigRational> =
            list.iter().map(|&c| (c, BigRational::zero())).collect();
        let mut tops = vec![None; p.num_voters()];
        for (v, r) in p.voters().iter().enumerate() {
            if weights[v].is_zero() {
                continue;
            }
            let top = r.top_among(&active);
            tops[v] = Some(top);
            *scores.get_mut(&top).expect("active") += &weights[v];
        }
        let max = scores.values().max().expect("active").clone();
        let best = tb.favorite(list.iter().copied().filter(|c| scores[c] == max));
        if max >= quota {
            elected.insert(best);
            active[best.index()] = false;
            trace.rounds.push(RoundRecord {
                active: list,
                scores,
                event: RoundEvent::Elected(best),
            });
            if elected.len() == k {
                return Ok((elected, trace));
            }
            let keep = (&max - &quota) / &max;
            for (v, top) in tops.iter().enumerate() {
                if *top == Some(best) {
                    weights[v] *= &keep;
                }
            }
        } else {
            let min = scores.values().min().expect("active").clone();
            let loser = tb.loser(list.iter().copied().filter(|c| scores[c] == min));
            active[loser.index()] = false;
            trace.rounds.push(RoundRecord {
                active: list,
                scores,
                event: RoundEvent::Eliminated(loser),
            });
            let remaining = active.iter().filter(|a| **a).count();
            if elected.len() + remaining == k {
                elected.extend(active_list(&active));
                return Ok((elected, trace));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ballot::{parse_profile, random_profile};
    use crate::rules::irv_tally;

    fn set(cs: &[usize]) -> BTreeSet<Candidate> {
        cs.iter().copied().map(Candidate::new).collect()
    }

    #[test]
    fn quota_values() {
        assert_eq!(droop_quota(18, 2), 7);
        assert_eq!(droop_quota(6, 1), 4);
        assert_eq!(droop_quota(9, 2), 4);
    }

    #[test]
    fn two_seats_nine_voters() {
        let p = parse_profile("4 x 0>2>1>3\n3 x 1>2>0>3\n2 x 3>1>2>0").unwrap();
        let (winners, trace) = stv_tally(&p, &StvConfig::new(2), &TieBreakPolicy::default()).unwrap();
        assert_eq!(winners, set(&[0, 1]));
        assert_eq!(trace.quota, Some(4));
        let events: Vec<_> = trace.rounds.iter().map(|r| r.event.clone()).collect();
        assert_eq!(
            events,
            [
                RoundEvent::Elected(Candidate::new(0)),
                RoundEvent::Eliminated(Candidate::new(2)),
                RoundEvent::Eliminated(Candidate::new(3)),
            ]
        );
    }

    #[test]
    fn immediate_quota() {
        let p = parse_profile("3 x 0 > 1\n1 x 1 > 0").unwrap();
        let (winners, _) = stv_tally(&p, &StvConfig::new(1), &TieBreakPolicy::default()).unwrap();
        assert_eq!(winners, set(&[0]));
    }

    #[test]
    fn fractional_transfer_is_exact() {
        // Q = 4; candidate 0 has 5, so its supporters keep 1/5 each and 1 reaches 2 + 1.
        let p = parse_profile("5 x 0 > 1 > 2 > 3\n1 x 2 > 3 > 1 > 0\n1 x 3 > 2 > 1 > 0\n2 x 1 > 0 > 2 > 3")
            .unwrap();
        let (winners, trace) = stv_tally(&p, &StvConfig::new(2), &TieBreakPolicy::default()).unwrap();
        let second = &trace.rounds[1];
        let expected = BigRational::from_integer(3.into());
        assert_eq!(second.scores[&Candidate::new(1)], expected);
        assert_eq!(winners, set(&[0, 1]));
    }

    #[test]
    fn seat_count_validated() {
        let p = random_profile(3, 4, 1);
        assert_eq!(
            stv_tally(&p, &StvConfig::new(3), &TieBreakPolicy::default()).unwrap_err(),
            RuleError::InvalidSeats { k: 3, m: 3 }
        );
        assert!(stv_tally(&p, &StvConfig::new(0), &TieBreakPolicy::default()).is_err());
    }

    #[test]
    fn single_seat_matches_irv_with_majority_stop() {
        for seed in 0..150 {
            let m = 2 + seed as usize % 5;
            let n = 1 + 2 * (seed as usize % 12);
            let p = random_profile(m, n, seed);
            let tb = TieBreakPolicy::default();
            let (w, _) = stv_tally(&p, &StvConfig::new(1), &tb).unwrap();
            assert_eq!(w, set(&[irv_tally(&p, &tb, true).0.index()]), "seed {seed}");
        }
    }

    #[test]
    fn winners_and_round_invariants() {
        for seed in 0..150 {
            let m = 3 + seed as usize % 4;
            let k = 1 + seed as usize % (m - 1);
            let p = random_profile(m, 3 + seed as usize % 17, seed);
            let (winners, trace) = stv_tally(&p, &StvConfig::new(k), &TieBreakPolicy::default()).unwrap();
            assert_eq!(winners.len(), k);
            let q = BigRational::from_integer(trace.quota.unwrap().into());
            for round in &trace.rounds {
                match round.event {
                    RoundEvent::Elected(c) => assert!(round.scores[&c] >= q),
                    RoundEvent::Eliminated(c) => {
                        assert_eq!(&round.scores[&c], round.scores.values().min().unwrap())
                    }
                    _ => unreachable!(),
                }
            }
        }
    }
}
