//! Seeded profile generators. Same `(m, n, seed)` always yields the same profile.

use super::{Candidate, Profile, Ranking};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `n` rankings drawn independently and uniformly from all `m!` permutations.
pub fn random_profile(m: usize, n: usize, seed: u64) -> Profile {
    assert!(m >= 1 && n >= 1, "random_profile needs m >= 1 and n >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let voters = (0..n)
        .map(|_| {
            let mut order: Vec<Candidate> = (0..m).map(Candidate::new).collect();
            order.shuffle(&mut rng);
            Ranking::from_vec_unchecked(order)
        })
        .collect();
    Profile::new(voters).expect("n >= 1")
}

/// `n` rankings single-peaked on the identity axis: a uniform peak, then a
/// walk that repeatedly takes the nearest unused candidate on a uniformly
/// chosen side (forced once one side is exhausted).
pub fn random_single_peaked_profile(m: usize, n: usize, seed: u64) -> Profile {
    assert!(m >= 1 && n >= 1, "random_single_peaked_profile needs m >= 1 and n >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let voters = (0..n)
        .map(|_| {
            let peak = rng.random_range(0..m);
            let mut order = Vec::with_capacity(m);
            order.push(Candidate::new(peak));
            let (mut lo, mut hi) = (peak, peak);
            while order.len() < m {
                let go_left = match (lo > 0, hi + 1 < m) {
                    (true, true) => rng.random_bool(0.5),
                    (left, _) => left,
                };
                if go_left {
                    lo -= 1;
                    order.push(Candidate::new(lo));
                } else {
                    hi += 1;
                    order.push(Candidate::new(hi));
                }
            }
            Ranking::from_vec_unchecked(order)
        })
        .collect();
    Profile::new(voters).expect("n >= 1")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ballot::{Axis, is_single_peaked};
    use std::collections::HashMap;

    #[test]
    fn single_candidate() {
        let p = random_profile(1, 5, 7);
        assert_eq!(p.num_voters(), 5);
        assert!(p.voters().iter().all(|r| *r == Ranking::identity(1)));
        let q = random_single_peaked_profile(1, 2, 7);
        assert!(q.voters().iter().all(|r| *r == Ranking::identity(1)));
    }

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(random_profile(5, 20, 42), random_profile(5, 20, 42));
        assert_ne!(random_profile(5, 20, 42), random_profile(5, 20, 43));
        assert_eq!(
            random_single_peaked_profile(6, 20, 9),
            random_single_peaked_profile(6, 20, 9)
        );
    }

    #[test]
    fn uniform_over_permutations() {
        // 6 cells of expected 10000; sd ~ 91, so +-500 is > 5 sigma.
        let p = random_profile(3, 60_000, 2024);
        let mut freq: HashMap<&Ranking, usize> = HashMap::new();
        for r in p.voters() {
            *freq.entry(r).or_default() += 1;
        }
        assert_eq!(freq.len(), 6);
        for (r, &k) in &freq {
            assert!((9_500..=10_500).contains(&k), "{r}: {k}");
        }
    }

    #[test]
    fn two_candidates_always_single_peaked() {
        let p = random_single_peaked_profile(2, 3, 11);
        let allowed = [Ranking::identity(2), Ranking::from_indices(&[1, 0]).unwrap()];
        assert!(p.voters().iter().all(|r| allowed.contains(r)));
    }

    #[test]
    fn generated_profiles_are_single_peaked() {
        for seed in 0..100 {
            let m = 1 + (seed as usize % 9);
            let p = random_single_peaked_profile(m, 17, seed);
            assert!(is_single_peaked(&p, &Axis::identity(m)).unwrap());
        }
    }
}
