use super::{Answer, ProtocolKind, Query, QueryKind, Respondent, Step, StepEvent, Transcript, ceil_log2};
use crate::ballot::Candidate;
use crate::rules::{TieBreakPolicy, active_list};

/// The progressive preference revelation protocol for IRV, with early
/// termination on a strict majority.
///
/// Every voter first reports their top candidate. Each round, if some active
/// candidate holds more than `n/2` supporters it wins; otherwise the
/// lowest-scoring candidate (ties resolved by `tb`) is removed and only its
/// supporters are asked for their top among the remaining candidates.
pub fn run_ppr<R: Respondent + ?Sized>(voters: &R, tb: &TieBreakPolicy) -> (Candidate, Transcript) {
    let m = voters.num_candidates();
    let n = voters.num_voters();
    let mut transcript = Transcript::new(ProtocolKind::Ppr, m, n);
    let mut active = vec![true; m];
    let all = active_list(&active);

    let mut tops = Vec::with_capacity(n);
    let mut initial = Vec::with_capacity(n);
    for v in 0..n {
        let top = voters.top_among(v, &active);
        tops.push(top);
        initial.push(top_query(v, &all, top));
    }
    transcript.push_step(Step {
        event: StepEvent::Initial,
        active_before: all,
        queries: initial,
        forced: 0,
    });

    loop {
        let mut scores = vec![0usize; m];
        for t in &tops {
            scores[t.index()] += 1;
        }
        let list = active_list(&active);
        if let Some(&winner) = list.iter().find(|c| 2 * scores[c.index()] > n) {
            transcript.winners = vec![winner];
            return (winner, transcript);
        }
        let min = list.iter().map(|c| scores[c.index()]).min().expect("active");
        let loser = tb.loser(list.iter().copied().filter(|c| scores[c.index()] == min));
        active[loser.index()] = false;
        let remaining = active_list(&active);
        let mut queries = Vec::new();
        for (v, top) in tops.iter_mut().enumerate() {
            if *top == loser {
                *top = voters.top_among(v, &active);
                queries.push(top_query(v, &remaining, *top));
            }
        }
        transcript.push_step(Step {
            event: StepEvent::Eliminated(loser),
            active_before: list,
            queries,
            forced: 0,
        });
    }
}

pub(super) fn top_query(voter: usize, active: &[Candidate], answer: Candidate) -> Query {
    Query {
        voter,
        kind: QueryKind::TopAmong(active.to_vec()),
        answer: Answer::Top(answer),
        bits: ceil_log2(active.len()),
    }
}
