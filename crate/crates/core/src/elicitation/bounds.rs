use super::{ElicitationError, ProtocolKind, StepEvent, Transcript, ceil_log2};

/// Checks a PPR or single-peaked PPR transcript against the worst-case
/// arithmetic behind the protocols' upper bounds:
///
/// * a candidate eliminated while `j` candidates are active has at most
///   `⌊n/j⌋` supporters (the minimum never exceeds the average);
/// * PPR spends at most `⌈log2 m⌉ · (n + Σ_{j=2..m} ⌊n/j⌋)` bits;
/// * single-peaked PPR spends at most `n⌈log2 m⌉ + Σ_{j=3..m} ⌊n/j⌋` bits.
pub fn transcript_bound_check(t: &Transcript, m: usize, n: usize) -> Result<bool, ElicitationError> {
    if t.protocol == ProtocolKind::StvPpr {
        return Err(ElicitationError::Malformed(
            "bound check applies to ppr and sp-ppr transcripts only".into(),
        ));
    }
    let Some(first) = t.steps.first() else {
        return Err(ElicitationError::Malformed("no steps".into()));
    };
    if first.event != StepEvent::Initial || first.queries.len() != n {
        return Err(ElicitationError::Malformed(
            "first step must query every voter once".into(),
        ));
    }
    if t.steps[1..].iter().any(|s| !matches!(s.event, StepEvent::Eliminated(_))) {
        return Err(ElicitationError::Malformed(
            "later steps must be eliminations".into(),
        ));
    }

    let per_round_ok = t.steps[1..]
        .iter()
        .all(|s| s.supporters() <= n / s.active_before.len());

    let log_m = u64::from(ceil_log2(m.max(1)));
    let n64 = n as u64;
    let floor_sum = |from: usize| (from..=m).map(|j| n64 / j as u64).sum::<u64>();
    let budget = match t.protocol {
        ProtocolKind::Ppr => log_m * (n64 + floor_sum(2)),
        ProtocolKind::SinglePeakedPpr => n64 * log_m + floor_sum(3),
        ProtocolKind::StvPpr => unreachable!(),
    };
    let summed: u64 = t.queries().map(|q| u64::from(q.bits)).sum();
    Ok(per_round_ok && summed == t.total_bits && t.total_bits <= budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ballot::{Axis, Profile, random_profile, random_single_peaked_profile};
    use crate::elicitation::{run_ppr, run_sp_ppr, run_stv_ppr};
    use crate::rules::{StvConfig, TieBreakPolicy};

    #[test]
    fn appendix_transcript_within_67() {
        let p = Profile::from_groups(&[
            (4, &[0, 1, 2, 3, 4]),
            (2, &[1, 0, 2, 3, 4]),
            (2, &[2, 1, 0, 3, 4]),
            (3, &[2, 3, 4, 1, 0]),
            (4, &[3, 4, 2, 1, 0]),
            (3, &[4, 3, 2, 1, 0]),
        ])
        .unwrap();
        let (_, t) = run_sp_ppr(&p, &Axis::identity(5)).unwrap();
        assert!(transcript_bound_check(&t, 5, 18).unwrap());
        // the budget is exactly 54 + 6 + 4 + 3
        let mut padded = t.clone();
        padded.total_bits = 68;
        assert!(!transcript_bound_check(&padded, 5, 18).unwrap());
    }

    #[test]
    fn single_voter_transcripts() {
        for m in 1..6 {
            let p = random_profile(m, 1, m as u64);
            let (_, t) = run_ppr(&p, &TieBreakPolicy::default());
            assert!(transcript_bound_check(&t, m, 1).unwrap());
        }
    }

    #[test]
    fn random_transcripts_within_bounds() {
        for seed in 0..300 {
            let m = 2 + seed as usize % 7;
            let n = 1 + seed as usize % 50;
            let (_, t) = run_ppr(&random_profile(m, n, seed), &TieBreakPolicy::HigherIndexWins);
            assert!(transcript_bound_check(&t, m, n).unwrap());
            let (_, t) = run_sp_ppr(&random_single_peaked_profile(m, n, seed), &Axis::identity(m)).unwrap();
            assert!(transcript_bound_check(&t, m, n).unwrap());
        }
    }

    #[test]
    fn rejects_stv_and_truncated_transcripts() {
        let p = random_profile(4, 5, 3);
        let (_, t) = run_stv_ppr(&p, &StvConfig::new(2), &TieBreakPolicy::default()).unwrap();
        assert!(transcript_bound_check(&t, 4, 5).is_err());
        let (_, mut t) = run_ppr(&p, &TieBreakPolicy::default());
        t.steps.clear();
        assert!(transcript_bound_check(&t, 4, 5).is_err());
    }
}
