//! Shared inputs for the benchmarks.

use irv_commlab::Profile;
use irv_commlab::ballot::random_profile;

/// Fixed-seed profiles, one per (candidates, voters) size.
pub fn workload(sizes: &[(usize, usize)]) -> Vec<(String, Profile)> {
    sizes
        .iter()
        .map(|&(m, n)| (format!("m{m}_n{n}"), random_profile(m, n, (m * 7919 + n) as u64)))
        .collect()
}
