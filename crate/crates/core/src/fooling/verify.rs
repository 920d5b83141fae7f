use super::construct::canonical_groups;
use super::count::fooling_cardinality;
use super::{FoolingError, FoolingSpec, enumerate_fooling_profiles};
use crate::ballot::{Candidate, Profile, Ranking, mix};
use crate::rules::Rule;
use num_bigint::BigUint;
use rand::SeedableRng;
use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

type IndexPair = (usize, usize);

/// Environment variable capping the verifier's worker count.
pub const THREADS_ENV: &str = "IRV_COMMLAB_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WitnessKind {
    /// `P^{−v} + Q^{v}`: one voter of `p` replaced by its `q` ballot.
    SwapIntoP,
    /// `Q^{−v} + P^{v}`: one voter of `q` replaced by its `p` ballot.
    SwapIntoQ,
    MultiSwap,
}

/// A mix of `p` and `q` whose outcome differs from theirs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub kind: WitnessKind,
    /// Voters whose ballots come from `q`; everyone else votes as in `p`.
    pub from_q: BTreeSet<usize>,
    pub outcome: BTreeSet<Candidate>,
}

/// Searches for a mix of `p` and `q` that changes the common outcome.
///
/// Single-voter swaps in both directions are tried first; with `full_search`
/// every other subset of the differing voters is tried as well. `Ok(None)`
/// means no witness exists among the mixes searched.
pub fn verify_fooling_pair(
    p: &Profile,
    q: &Profile,
    rule: &Rule,
    full_search: bool,
) -> Result<Option<Witness>, FoolingError> {
    let differing = p.differing_voters(q)?;
    if differing.is_empty() {
        return Err(FoolingError::EqualProfiles);
    }
    let (wp, wq) = (rule.outcome(p)?, rule.outcome(q)?);
    if wp != wq {
        return Err(FoolingError::OutcomeDisagreement { p: wp, q: wq });
    }
    search_witness(p, q, &differing, rule, &wp, full_search)
}

fn search_witness(
    p: &Profile,
    q: &Profile,
    differing: &[usize],
    rule: &Rule,
    common: &BTreeSet<Candidate>,
    full_search: bool,
) -> Result<Option<Witness>, FoolingError> {
    let d = differing.len();
    let attempt = |from_q: BTreeSet<usize>, kind| -> Result<Option<Witness>, FoolingError> {
        let outcome = rule.outcome(&mix(p, q, &from_q)?)?;
        Ok((outcome != *common).then_some(Witness { kind, from_q, outcome }))
    };
    for &v in differing {
        if let Some(w) = attempt(BTreeSet::from([v]), WitnessKind::SwapIntoP)? {
            return Ok(Some(w));
        }
    }
    for &v in differing {
        let rest = differing.iter().copied().filter(|&u| u != v).collect();
        if let Some(w) = attempt(rest, WitnessKind::SwapIntoQ)? {
            return Ok(Some(w));
        }
    }
    if !full_search || d <= 2 {
        return Ok(None);
    }
    if d > 24 {
        return Err(FoolingError::TooManyDifferences { differing: d });
    }
    for mask in 1u32..(1 << d) - 1 {
        let size = mask.count_ones() as usize;
        if size == 1 || size == d - 1 {
            continue;
        }
        let from_q = (0..d).filter(|i| mask >> i & 1 == 1).map(|i| differing[i]).collect();
        if let Some(w) = attempt(from_q, WitnessKind::MultiSwap)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    /// Every profile and every unordered pair; refuses families larger than
    /// `ceiling`.
    Exhaustive { ceiling: u64 },
    /// `pairs` random pairs of distinct members drawn from a seeded RNG.
    Sampled { pairs: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    pub full_search: bool,
    /// Worker count; `None` uses the pool default. Always capped by
    /// `IRV_COMMLAB_THREADS` when set.
    pub threads: Option<usize>,
    /// Evaluate on the calling thread only.
    pub sequential: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct WitnessHistogram {
    pub swap_into_p: u64,
    pub swap_into_q: u64,
    pub multi_swap: u64,
}

impl WitnessHistogram {
    fn record(&mut self, kind: WitnessKind) {
        match kind {
            WitnessKind::SwapIntoP => self.swap_into_p += 1,
            WitnessKind::SwapIntoQ => self.swap_into_q += 1,
            WitnessKind::MultiSwap => self.multi_swap += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.swap_into_p + self.swap_into_q + self.multi_swap
    }
}

/// A member whose outcome is not the expected one. Indices count profiles in
/// enumeration order (exhaustive) or as `2i`, `2i+1` for sample `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileFailure {
    pub index: u64,
    pub outcome: BTreeSet<Candidate>,
}

/// A pair for which no mix changed the outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairFailure {
    pub left: u64,
    pub right: u64,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub spec: FoolingSpec,
    pub rule: String,
    pub mode: VerifyMode,
    pub full_search: bool,
    pub expected: BTreeSet<Candidate>,
    pub profiles_checked: u64,
    pub outcome_failures: Vec<ProfileFailure>,
    pub pairs_checked: u64,
    pub witnesses: WitnessHistogram,
    pub pair_failures: Vec<PairFailure>,
    pub threads: usize,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn failures(&self) -> usize {
        self.outcome_failures.len() + self.pair_failures.len()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    /// `"180 profiles, 16110 pairs, 0 failures"`.
    pub fn summary(&self) -> String {
        format!(
            "{} profiles, {} pairs, {} failures",
            self.profiles_checked,
            self.pairs_checked,
            self.failures()
        )
    }

    /// Line-oriented report. Timing and worker count vary between runs, so
    /// they are only written when asked for.
    pub fn to_structured(&self, with_timing: bool) -> String {
        let mut out = String::from("format: irv-commlab/fooling-report v1\n");
        let set = |s: &BTreeSet<Candidate>| s.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
        let _ = writeln!(out, "family: {}", self.spec.family());
        let _ = writeln!(out, "m: {}", self.spec.num_candidates());
        let _ = writeln!(out, "ell: {}", self.spec.ell());
        let _ = writeln!(out, "tiebreak_voters: {}", self.spec.tiebreak_voters());
        let _ = writeln!(out, "rule: {}", self.rule);
        match self.mode {
            VerifyMode::Exhaustive { ceiling } => {
                let _ = writeln!(out, "mode: exhaustive ceiling={ceiling}");
            }
            VerifyMode::Sampled { pairs, seed } => {
                let _ = writeln!(out, "mode: sampled pairs={pairs} seed={seed}");
            }
        }
        let _ = writeln!(out, "full_search: {}", self.full_search);
        let _ = writeln!(out, "expected: {}", set(&self.expected));
        let _ = writeln!(out, "profiles_checked: {}", self.profiles_checked);
        let _ = writeln!(out, "pairs_checked: {}", self.pairs_checked);
        let _ = writeln!(out, "witness_swap_into_p: {}", self.witnesses.swap_into_p);
        let _ = writeln!(out, "witness_swap_into_q: {}", self.witnesses.swap_into_q);
        let _ = writeln!(out, "witness_multi_swap: {}", self.witnesses.multi_swap);
        let _ = writeln!(out, "outcome_failures: {}", self.outcome_failures.len());
        for f in &self.outcome_failures {
            let _ = writeln!(out, "outcome_failure: profile={} outcome={}", f.index, set(&f.outcome));
        }
        let _ = writeln!(out, "pair_failures: {}", self.pair_failures.len());
        for f in &self.pair_failures {
            let _ = writeln!(out, "pair_failure: {} {}", f.left, f.right);
        }
        if with_timing {
            let _ = writeln!(out, "threads: {}", self.threads);
            let _ = writeln!(out, "elapsed_ms: {}", self.elapsed.as_millis());
        }
        out
    }
}

/// Resolves the worker count: the request (or the pool default), capped by
/// the environment.
fn worker_count(opts: &VerifyOptions) -> usize {
    if opts.sequential {
        return 1;
    }
    let wanted = opts.threads.unwrap_or_else(rayon::current_num_threads).max(1);
    let cap = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&c| c > 0);
    cap.map_or(wanted, |c| wanted.min(c))
}

/// Checks both fooling conditions on a family: every member yields the
/// expected outcome, and every pair of members admits an outcome-changing
/// mix.
pub fn verify_fooling_set(
    spec: &FoolingSpec,
    rule: &Rule,
    mode: VerifyMode,
    opts: VerifyOptions,
) -> Result<VerificationReport, FoolingError> {
    let started = Instant::now();
    let threads = worker_count(&opts);
    let expected = spec.expected_outcome();

    // numbered members, and index pairs into them
    let (profiles, pairs): (Vec<(u64, Profile)>, Vec<IndexPair>) = match mode {
        VerifyMode::Exhaustive { ceiling } => {
            let cardinality = fooling_cardinality(spec)?;
            if cardinality > BigUint::from(ceiling) {
                return Err(FoolingError::CeilingExceeded { cardinality, ceiling });
            }
            let all: Vec<(u64, Profile)> = enumerate_fooling_profiles(spec, None)?
                .enumerate()
                .map(|(i, p)| (i as u64, p))
                .collect();
            let count = all.len();
            let pairs = (0..count).flat_map(|i| (i + 1..count).map(move |j| (i, j))).collect();
            (all, pairs)
        }
        VerifyMode::Sampled { pairs, seed } => {
            let sampled = sample_pairs(spec, pairs, seed)?;
            let count = sampled.len();
            (sampled, (0..count / 2).map(|s| (2 * s, 2 * s + 1)).collect())
        }
    };

    let run = || -> Result<_, FoolingError> {
        let outcomes: Vec<BTreeSet<Candidate>> = profiles
            .par_iter()
            .map(|(_, p)| rule.outcome(p))
            .collect::<Result<_, _>>()?;
        let results: Vec<Option<WitnessKind>> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let (p, q) = (&profiles[i].1, &profiles[j].1);
                let differing = p.differing_voters(q)?;
                Ok(search_witness(p, q, &differing, rule, &expected, opts.full_search)?.map(|w| w.kind))
            })
            .collect::<Result<_, FoolingError>>()?;
        Ok((outcomes, results))
    };
    // a one-worker pool runs everything serially, in order
    let (outcomes, results) = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| FoolingError::Pool(e.to_string()))?
        .install(run)?;

    let outcome_failures = profiles
        .iter()
        .zip(outcomes)
        .filter(|(_, o)| *o != expected)
        .map(|((index, _), outcome)| ProfileFailure { index: *index, outcome })
        .collect();
    let mut witnesses = WitnessHistogram::default();
    let mut pair_failures = Vec::new();
    for (&(i, j), result) in pairs.iter().zip(&results) {
        match result {
            Some(kind) => witnesses.record(*kind),
            None => pair_failures.push(PairFailure {
                left: profiles[i].0,
                right: profiles[j].0,
            }),
        }
    }
    Ok(VerificationReport {
        spec: *spec,
        rule: rule.to_string(),
        mode,
        full_search: opts.full_search,
        expected,
        profiles_checked: profiles.len() as u64,
        outcome_failures,
        pairs_checked: pairs.len() as u64,
        witnesses,
        pair_failures,
        threads,
        elapsed: started.elapsed(),
    })
}

/// Draws `pairs` pairs of distinct family members, flattened so that sample
/// `s` occupies slots `2s` and `2s+1`.
fn sample_pairs(spec: &FoolingSpec, pairs: usize, seed: u64) -> Result<Vec<(u64, Profile)>, FoolingError> {
    let groups = canonical_groups(spec)?;
    if pairs == 0 || groups.len() < 2 {
        // a single distinct ballot admits only one arrangement
        return Ok(Vec::new());
    }
    let base: Vec<Ranking> = groups
        .iter()
        .flat_map(|(r, count)| std::iter::repeat_n(r.clone(), *count))
        .collect();
    let block = if spec.tiebreak_voters() {
        Some(super::tie_breaking_block(spec.num_candidates(), spec.family())?)
    } else {
        None
    };
    let finish = |voters: Vec<Ranking>| -> Result<Profile, FoolingError> {
        let p = Profile::new(voters)?;
        Ok(match &block {
            Some(b) => p.concat(b)?,
            None => p,
        })
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(2 * pairs);
    for s in 0..pairs as u64 {
        let mut left = base.clone();
        left.shuffle(&mut rng);
        let mut right = base.clone();
        loop {
            right.shuffle(&mut rng);
            if right != left {
                break;
            }
        }
        out.push((2 * s, finish(left)?));
        out.push((2 * s + 1, finish(right)?));
    }
    Ok(out)
}
