use super::ppr::top_query;
use super::{
    Answer, ElicitationError, ProtocolKind, Query, QueryKind, Respondent, Side, Step, StepEvent,
    Transcript,
};
use crate::ballot::{Axis, Candidate, Profile, single_peak_violation};
use crate::rules::{TieBreakPolicy, active_list};

/// PPR specialised to profiles single-peaked on `axis`.
///
/// After the initial top query, a supporter of an eliminated candidate `c`
/// only says whether their next favourite lies left or right of `c`, which
/// pins it to the nearest active candidate on that side. When one side has no
/// active candidate the answer is forced and nobody is asked. Ties favour
/// lower indices.
pub fn run_sp_ppr(p: &Profile, axis: &Axis) -> Result<(Candidate, Transcript), ElicitationError> {
    if let Some(v) = single_peak_violation(p, axis)? {
        return Err(ElicitationError::NotSinglePeaked(v));
    }
    Ok(run_sp_ppr_unchecked(p, axis))
}

/// Runs the protocol without checking single-peakedness; answers from a
/// non-single-peaked respondent are still well defined but may not match IRV.
pub fn run_sp_ppr_unchecked<R: Respondent + ?Sized>(voters: &R, axis: &Axis) -> (Candidate, Transcript) {
    let m = voters.num_candidates();
    let n = voters.num_voters();
    let tb = TieBreakPolicy::LowerIndexWins;
    let mut transcript = Transcript::new(ProtocolKind::SinglePeakedPpr, m, n);
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
        let pivot = tb.loser(list.iter().copied().filter(|c| scores[c.index()] == min));
        active[pivot.index()] = false;

        let here = axis.position(pivot);
        let left = (0..here).rev().map(|i| axis.at(i)).find(|c| active[c.index()]);
        let right = (here + 1..m).map(|i| axis.at(i)).find(|c| active[c.index()]);
        let mut queries = Vec::new();
        let mut forced = 0;
        for (v, top) in tops.iter_mut().enumerate() {
            if *top != pivot {
                continue;
            }
            match (left, right) {
                (Some(l), Some(r)) => {
                    let side = voters.side_of_next(v, pivot, &active, axis);
                    *top = if side == Side::Left { l } else { r };
                    queries.push(Query {
                        voter: v,
                        kind: QueryKind::Direction {
                            pivot,
                            left: l,
                            right: r,
                        },
                        answer: Answer::Side(side),
                        bits: 1,
                    });
                }
                (Some(only), None) | (None, Some(only)) => {
                    *top = only;
                    forced += 1;
                }
                (None, None) => unreachable!("majority stop fires before the last candidate goes"),
            }
        }
        transcript.push_step(Step {
            event: StepEvent::Eliminated(pivot),
            active_before: list,
            queries,
            forced,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ballot::{Ranking, random_profile, random_single_peaked_profile};
    use crate::rules::irv_tally;

    fn appendix_profile() -> Profile {
        Profile::from_groups(&[
            (4, &[0, 1, 2, 3, 4]),
            (2, &[1, 0, 2, 3, 4]),
            (2, &[2, 1, 0, 3, 4]),
            (3, &[2, 3, 4, 1, 0]),
            (4, &[3, 4, 2, 1, 0]),
            (3, &[4, 3, 2, 1, 0]),
        ])
        .unwrap()
    }

    #[test]
    fn appendix_walkthrough_costs_61_bits() {
        let (w, t) = run_sp_ppr(&appendix_profile(), &Axis::identity(5)).unwrap();
        assert_eq!(w, Candidate::new(3));
        assert_eq!(t.total_bits, 61);
        assert_eq!(t.requery_counts(), [2, 0, 5]);
        let eliminated: Vec<StepEvent> = t.steps[1..].iter().map(|s| s.event).collect();
        assert_eq!(
            eliminated,
            [1, 4, 2].map(|c| StepEvent::Eliminated(Candidate::new(c)))
        );
        assert_eq!(t.steps[2].forced, 3);
        let sides: Vec<Answer> = t.steps[3].queries.iter().map(|q| q.answer).collect();
        let lefts = sides.iter().filter(|a| **a == Answer::Side(Side::Left)).count();
        assert_eq!((lefts, sides.len() - lefts), (2, 3));
    }

    #[test]
    fn lone_voter() {
        let p = Profile::new(vec![Ranking::from_indices(&[2, 3, 1, 0]).unwrap()]).unwrap();
        let (w, t) = run_sp_ppr(&p, &Axis::identity(4)).unwrap();
        assert_eq!(w, Candidate::new(2));
        assert_eq!(t.total_bits, 2);
    }

    #[test]
    fn rejects_non_single_peaked() {
        let p = Profile::new(vec![Ranking::from_indices(&[0, 2, 1]).unwrap()]).unwrap();
        assert!(matches!(
            run_sp_ppr(&p, &Axis::identity(3)),
            Err(ElicitationError::NotSinglePeaked(_))
        ));
    }

    #[test]
    fn extreme_eliminations_need_no_queries() {
        for seed in 0..100 {
            let m = 2 + seed as usize % 10;
            let p = random_single_peaked_profile(m, 1 + seed as usize % 50, seed);
            let (_, t) = run_sp_ppr(&p, &Axis::identity(m)).unwrap();
            for step in &t.steps[1..] {
                let StepEvent::Eliminated(c) = step.event else { unreachable!() };
                let extreme = step.active_before.first() == Some(&c) || step.active_before.last() == Some(&c);
                if extreme {
                    assert!(step.queries.is_empty());
                } else {
                    assert_eq!(step.forced, 0);
                }
            }
        }
    }

    #[test]
    fn agrees_with_irv_on_permuted_axis() {
        for seed in 0..100 {
            let m = 2 + seed as usize % 8;
            // relabel a single-peaked profile through a random axis
            let axis_order = random_profile(m, 1, seed + 1000).voter(0).as_slice().to_vec();
            let axis = Axis::new(axis_order.clone()).unwrap();
            let base = random_single_peaked_profile(m, 1 + seed as usize % 30, seed);
            let voters = base
                .voters()
                .iter()
                .map(|r| Ranking::new(r.as_slice().iter().map(|c| axis_order[c.index()]).collect()).unwrap())
                .collect();
            let p = Profile::new(voters).unwrap();
            let (w, _) = run_sp_ppr(&p, &axis).unwrap();
            assert_eq!(w, irv_tally(&p, &TieBreakPolicy::default(), true).0);
        }
    }
}
