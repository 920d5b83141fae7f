use super::{RoundEvent, RoundRecord, TallyTrace, TieBreakPolicy, active_list, integer_scores, plurality_counts};
use crate::ballot::{Candidate, Profile};

/// Instant-runoff voting.
///
/// Each round every voter supports their most preferred active candidate and
/// the lowest-scoring candidate (resolved by `tb`) is eliminated, until one
/// remains. With `majority_stop`, the count ends as soon as a candidate holds
/// more than `n/2` votes.
pub fn irv_tally(p: &Profile, tb: &TieBreakPolicy, majority_stop: bool) -> (Candidate, TallyTrace) {
    let m = p.num_candidates();
    let n = p.num_voters() as u64;
    let mut active = vec![true; m];
    let mut remaining = m;
    let mut trace = TallyTrace::default();
    while remaining > 1 {
        let counts = plurality_counts(p, &active);
        let list = active_list(&active);
        let scores = integer_scores(&list, &counts);
        if majority_stop {
            if let Some(&c) = list.iter().find(|c| 2 * counts[c.index()] > n) {
                trace.rounds.push(RoundRecord {
                    active: list,
                    scores,
                    event: RoundEvent::MajorityStop(c),
                });
                return (c, trace);
            }
        }
        let min = list.iter().map(|c| counts[c.index()]).min().expect("active");
        let loser = tb.loser(list.iter().copied().filter(|c| counts[c.index()] == min));
        active[loser.index()] = false;
        remaining -= 1;
        trace.rounds.push(RoundRecord {
            active: list,
            scores,
            event: RoundEvent::Eliminated(loser),
        });
    }
    (active_list(&active)[0], trace)
}
