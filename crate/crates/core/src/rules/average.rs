use super::{
    AvgConfig, AvgException, AvgVariant, RoundEvent, RoundRecord, TallyTrace, TieBreakPolicy,
    active_list, integer_scores, plurality_counts,
};
use crate::ballot::{Candidate, Profile};

/// IRV-Average: each round eliminates every active candidate whose score is
/// below (strict) or at most (weak) the average `n/|A|`.
///
/// When that set is empty or the whole active set, `cfg.exception` applies.
/// The exceptions are stated for the default tie-break: "smallest index" is
/// the candidate `tb` favours and "largest index" the one `tb` eliminates.
pub fn irv_average_tally(p: &Profile, cfg: &AvgConfig, tb: &TieBreakPolicy) -> (Candidate, TallyTrace) {
    let m = p.num_candidates();
    let n = p.num_voters() as u64;
    let mut active = vec![true; m];
    let mut trace = TallyTrace::default();
    loop {
        let list = active_list(&active);
        if list.len() == 1 {
            return (list[0], trace);
        }
        let counts = plurality_counts(p, &active);
        let size = list.len() as u64;
        // score < n/|A|  <=>  score * |A| < n
        let doomed: Vec<Candidate> = list
            .iter()
            .copied()
            .filter(|c| {
                let scaled = counts[c.index()] * size;
                match cfg.variant {
                    AvgVariant::Strict => scaled < n,
                    AvgVariant::Weak => scaled <= n,
                }
            })
            .collect();
        let scores = integer_scores(&list, &counts);
        let event = if doomed.is_empty() || doomed.len() == list.len() {
            match cfg.exception {
                AvgException::DeclareSmallestIndexWinner => {
                    let winner = tb.favorite(list.iter().copied());
                    trace.rounds.push(RoundRecord {
                        active: list,
                        scores,
                        event: RoundEvent::ExceptionWinner(winner),
                    });
                    return (winner, trace);
                }
                AvgException::EliminateLargestIndex => {
                    RoundEvent::Eliminated(tb.loser(list.iter().copied()))
                }
            }
        } else {
            RoundEvent::EliminatedBatch(doomed)
        };
        for c in event.removed() {
            active[c.index()] = false;
        }
        trace.rounds.push(RoundRecord {
            active: list,
            scores,
            event,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ballot::{parse_profile, random_profile};

    fn sample() -> Profile {
        parse_profile("3 x 0 > 1 > 2\n2 x 1 > 2 > 0\n1 x 2 > 1 > 0").unwrap()
    }

    fn all_six() -> Profile {
        parse_profile("0>1>2\n0>2>1\n1>0>2\n1>2>0\n2>0>1\n2>1>0").unwrap()
    }

    #[test]
    fn weak_eliminates_two_at_once() {
        let cfg = AvgConfig {
            variant: AvgVariant::Weak,
            exception: AvgException::EliminateLargestIndex,
        };
        let (w, trace) = irv_average_tally(&sample(), &cfg, &TieBreakPolicy::default());
        assert_eq!(w, Candidate::new(0));
        assert_eq!(
            trace.rounds[0].event,
            RoundEvent::EliminatedBatch(vec![Candidate::new(1), Candidate::new(2)])
        );
        assert_eq!(trace.rounds.len(), 1);
    }

    #[test]
    fn strict_then_exception() {
        let cfg = AvgConfig {
            variant: AvgVariant::Strict,
            exception: AvgException::EliminateLargestIndex,
        };
        let (w, trace) = irv_average_tally(&sample(), &cfg, &TieBreakPolicy::default());
        assert_eq!(w, Candidate::new(0));
        let events: Vec<_> = trace.rounds.iter().map(|r| r.event.clone()).collect();
        assert_eq!(
            events,
            [
                RoundEvent::EliminatedBatch(vec![Candidate::new(2)]),
                RoundEvent::Eliminated(Candidate::new(1)),
            ]
        );
    }

    #[test]
    fn perfect_tie_declares_smallest() {
        for variant in [AvgVariant::Strict, AvgVariant::Weak] {
            let cfg = AvgConfig {
                variant,
                exception: AvgException::DeclareSmallestIndexWinner,
            };
            let (w, trace) = irv_average_tally(&all_six(), &cfg, &TieBreakPolicy::default());
            assert_eq!(w, Candidate::new(0));
            assert_eq!(trace.rounds[0].event, RoundEvent::ExceptionWinner(Candidate::new(0)));
        }
    }

    #[test]
    fn weak_declare_never_drops_the_winner_early() {
        let cfg = AvgConfig {
            variant: AvgVariant::Weak,
            exception: AvgException::DeclareSmallestIndexWinner,
        };
        for seed in 0..300 {
            let p = random_profile(2 + seed as usize % 7, 1 + seed as usize % 23, seed);
            let (w, trace) = irv_average_tally(&p, &cfg, &TieBreakPolicy::default());
            for round in &trace.rounds {
                assert!(round.active.contains(&w));
                assert!(!round.event.removed().contains(&w));
            }
        }
    }
}
