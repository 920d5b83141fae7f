use super::ppr::top_query;
use super::{ElicitationError, ProtocolKind, Respondent, Step, StepEvent, Transcript};
use crate::ballot::Candidate;
use crate::rules::{StvConfig, TieBreakPolicy, active_list, droop_quota};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeSet;

/// PPR generalised to STV.
///
/// Voters report their top candidate once; afterwards only supporters of a
/// candidate that was just elected (and still hold positive weight) or just
/// eliminated are asked for their top among the remaining candidates.
pub fn run_stv_ppr<R: Respondent + ?Sized>(
    voters: &R,
    cfg: &StvConfig,
    tb: &TieBreakPolicy,
) -> Result<(BTreeSet<Candidate>, Transcript), ElicitationError> {
    let m = voters.num_candidates();
    let n = voters.num_voters();
    cfg.check(m)?;
    tb.check(m)?;
    let quota = BigRational::from_integer(BigInt::from(droop_quota(n as u64, cfg.k as u64)));
    let mut transcript = Transcript::new(ProtocolKind::StvPpr, m, n);
    let mut active = vec![true; m];
    let mut elected = BTreeSet::new();
    let all = active_list(&active);

    // None once a voter's weight reaches zero and they leave the count.
    let mut tops: Vec<Option<Candidate>> = Vec::with_capacity(n);
    let mut initial = Vec::with_capacity(n);
    for v in 0..n {
        let top = voters.top_among(v, &active);
        tops.push(Some(top));
        initial.push(top_query(v, &all, top));
    }
    let mut weights = vec![BigRational::one(); n];
    transcript.push_step(Step {
        event: StepEvent::Initial,
        active_before: all,
        queries: initial,
        forced: 0,
    });

    loop {
        let list = active_list(&active);
        let mut scores = vec![BigRational::zero(); m];
        for (v, top) in tops.iter().enumerate() {
            if let Some(t) = top {
                scores[t.index()] += &weights[v];
            }
        }
        let max = list.iter().map(|c| &scores[c.index()]).max().expect("active").clone();
        let best = tb.favorite(list.iter().copied().filter(|c| scores[c.index()] == max));
        let (removed, event) = if max >= quota {
            elected.insert(best);
            active[best.index()] = false;
            if elected.len() == cfg.k {
                transcript.winners = elected.iter().copied().collect();
                return Ok((elected, transcript));
            }
            let keep = (&max - &quota) / &max;
            for (v, top) in tops.iter_mut().enumerate() {
                if *top == Some(best) {
                    weights[v] *= &keep;
                    if weights[v].is_zero() {
                        *top = None;
                    }
                }
            }
            (best, StepEvent::Elected(best))
        } else {
            let min = list.iter().map(|c| &scores[c.index()]).min().expect("active").clone();
            let loser = tb.loser(list.iter().copied().filter(|c| scores[c.index()] == min));
            active[loser.index()] = false;
            let remaining = active.iter().filter(|a| **a).count();
            if elected.len() + remaining == cfg.k {
                elected.extend(active_list(&active));
                transcript.winners = elected.iter().copied().collect();
                return Ok((elected, transcript));
            }
            (loser, StepEvent::Eliminated(loser))
        };
        let remaining = active_list(&active);
        let mut queries = Vec::new();
        for (v, top) in tops.iter_mut().enumerate() {
            if *top == Some(removed) {
                let next = voters.top_among(v, &active);
                *top = Some(next);
                queries.push(top_query(v, &remaining, next));
            }
        }
        transcript.push_step(Step {
            event,
            active_before: list,
            queries,
            forced: 0,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ballot::{parse_profile, random_profile};
    use crate::elicitation::run_ppr;
    use crate::rules::stv_tally;

    #[test]
    fn two_seats_nine_voters() {
        let p = parse_profile("4 x 0>2>1>3\n3 x 1>2>0>3\n2 x 3>1>2>0").unwrap();
        let (w, t) = run_stv_ppr(&p, &StvConfig::new(2), &TieBreakPolicy::default()).unwrap();
        assert_eq!(w, BTreeSet::from([Candidate::new(0), Candidate::new(1)]));
        // supporters of 0 drop to zero weight and are never asked again
        assert!(t.steps[1..].iter().all(|s| s.queries.is_empty()));
        assert_eq!(t.total_bits, 18);
    }

    #[test]
    fn immediate_quota_four_bits() {
        let p = parse_profile("3 x 0 > 1\n1 x 1 > 0").unwrap();
        let (w, t) = run_stv_ppr(&p, &StvConfig::new(1), &TieBreakPolicy::default()).unwrap();
        assert_eq!(w, BTreeSet::from([Candidate::new(0)]));
        assert_eq!(t.total_bits, 4);
    }

    #[test]
    fn single_seat_transcripts_match_ppr() {
        for seed in 0..100 {
            let p = random_profile(2 + seed as usize % 6, 1 + 2 * (seed as usize % 15), seed);
            let tb = TieBreakPolicy::default();
            let (ws, ts) = run_stv_ppr(&p, &StvConfig::new(1), &tb).unwrap();
            let (w, t) = run_ppr(&p, &tb);
            assert_eq!(ws, BTreeSet::from([w]));
            assert_eq!(ts.steps, t.steps);
            assert_eq!(ts.total_bits, t.total_bits);
        }
    }

    #[test]
    fn agrees_with_stv_tally() {
        for seed in 0..100 {
            let m = 3 + seed as usize % 5;
            let k = 1 + seed as usize % 3.min(m - 1);
            let p = random_profile(m, 2 + seed as usize % 25, seed);
            let cfg = StvConfig::new(k);
            let tb = TieBreakPolicy::default();
            assert_eq!(
                run_stv_ppr(&p, &cfg, &tb).unwrap().0,
                stv_tally(&p, &cfg, &tb).unwrap().0,
                "seed {seed}"
            );
        }
    }
}
