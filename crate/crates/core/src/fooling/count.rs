use super::signature::{Flavor, Signature};
use super::{Family, FoolingError, FoolingSpec};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

/// Number of rankings over `m` candidates whose signature is `s`.
///
/// For IRV this is the product of the candidates in `[1, m−1]` missing from
/// `s`; for STV the final element of `s` is left out of the exclusion, so the
/// product runs over `[1, m−1]` minus all but the last element.
pub fn count_signature(s: &Signature, m: usize) -> Result<BigUint, FoolingError> {
    if s.candidates()[0].index() >= m {
        return Err(FoolingError::InvalidSignature(format!("{s} does not fit m = {m}")));
    }
    if let Flavor::Stv { k } = s.flavor() {
        if k >= m {
            return Err(FoolingError::InvalidSignature(format!("k = {k} must be below m = {m}")));
        }
    }
    let head = &s.candidates()[..s.len() - 1];
    let mut excluded = vec![false; m];
    for c in head {
        excluded[c.index()] = true;
    }
    Ok((1..m).filter(|&c| !excluded[c]).map(BigUint::from).product())
}

pub(crate) fn factorial(x: u64) -> BigUint {
    // split products keep the multiplications balanced for large x
    fn range(lo: u64, hi: u64) -> BigUint {
        if hi - lo < 32 {
            return (lo..=hi).map(BigUint::from).product();
        }
        let mid = lo + (hi - lo) / 2;
        range(lo, mid) * range(mid + 1, hi)
    }
    if x < 2 { BigUint::one() } else { range(2, x) }
}

/// Exact size of the fooling family (tie-breaking voters do not change it).
///
/// IRV: `n! / ∏_{S⊆[1,m−1]} (ℓ ∏_{c∈S} c)!`;
/// STV: `n! / ∏_{S⊆[k,m−1]} ((ℓ ∏_{c∈[1,m−1]∖S} c)!)^k`;
/// single-peaked: `n! / (ℓ!)^m`.
pub fn fooling_cardinality(spec: &FoolingSpec) -> Result<BigUint, FoolingError> {
    let n = spec
        .significant_voters()
        .to_u64()
        .ok_or_else(|| FoolingError::TooLarge(format!("{spec}: more than 2^64")))?;
    let m = spec.num_candidates();
    let ell = spec.ell() as u64;
    let denominator = match spec.family() {
        Family::Sp => factorial(ell).pow(m as u32),
        Family::Irv => subset_products(1, m)
            .into_iter()
            .map(|prod| factorial(ell * prod))
            .product(),
        Family::Stv { k } => {
            let full: u64 = (1..m as u64).product();
            subset_products(k, m)
                .into_iter()
                .map(|prod| factorial(ell * (full / prod)).pow(k as u32))
                .product()
        }
    };
    Ok(factorial(n) / denominator)
}

/// Products of every subset of `lo..hi` (as u64; callers keep m small).
fn subset_products(lo: usize, hi: usize) -> Vec<u64> {
    let mut out = vec![1u64];
    for c in lo..hi {
        let grown: Vec<u64> = out.iter().map(|p| p * c as u64).collect();
        out.extend(grown);
    }
    out
}

/// Natural logarithm of a big integer, without overflowing `f64`.
pub fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits").ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().expect("fits").ln() + shift as f64 * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ballot::Ranking;
    use crate::fooling::signature::{all_signatures, all_stv_signatures, signature, stv_signature};
    use std::collections::BTreeMap;

    fn all_rankings(m: usize) -> Vec<Ranking> {
        fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Ranking>) {
            if prefix.len() == used.len() {
                out.push(Ranking::from_indices(prefix).unwrap());
                return;
            }
            for c in 0..used.len() {
                if !used[c] {
                    used[c] = true;
                    prefix.push(c);
                    go(prefix, used, out);
                    prefix.pop();
                    used[c] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(&mut Vec::new(), &mut vec![false; m], &mut out);
        out
    }

    #[test]
    fn signature_count_examples() {
        let s = Signature::from_indices(&[0], Flavor::Irv).unwrap();
        assert_eq!(count_signature(&s, 3).unwrap(), BigUint::from(2u32));
        let s = Signature::from_indices(&[2, 0], Flavor::Irv).unwrap();
        assert_eq!(count_signature(&s, 5).unwrap(), BigUint::from(12u32));
        let s = Signature::from_indices(&[4, 3, 2, 1, 0], Flavor::Irv).unwrap();
        assert_eq!(count_signature(&s, 5).unwrap(), BigUint::one());
    }

    #[test]
    fn counts_match_brute_force() {
        for m in 1..=7 {
            let mut tally: BTreeMap<Signature, u64> = BTreeMap::new();
            for r in all_rankings(m) {
                *tally.entry(signature(&r)).or_default() += 1;
            }
            for s in all_signatures(m) {
                let expected = tally.get(&s).copied().unwrap_or(0);
                assert_eq!(count_signature(&s, m).unwrap(), BigUint::from(expected), "{s}");
            }
            for k in 1..m.min(4) {
                let mut tally: BTreeMap<Signature, u64> = BTreeMap::new();
                for r in all_rankings(m) {
                    *tally.entry(stv_signature(&r, k)).or_default() += 1;
                }
                let sigs = all_stv_signatures(m, k);
                assert_eq!(sigs.len(), tally.len());
                for s in sigs {
                    assert_eq!(count_signature(&s, m).unwrap(), BigUint::from(tally[&s]), "{s} k={k}");
                }
            }
        }
    }

    #[test]
    fn counts_sum_to_factorial() {
        for m in 1..=8 {
            let total: BigUint = all_signatures(m).iter().map(|s| count_signature(s, m).unwrap()).sum();
            assert_eq!(total, factorial(m as u64));
        }
        for m in 2..=7 {
            for k in 1..m.min(4) {
                let total: BigUint = all_stv_signatures(m, k)
                    .iter()
                    .map(|s| count_signature(s, m).unwrap())
                    .sum();
                assert_eq!(total, factorial(m as u64));
            }
        }
        for m in 1..=12 {
            let total: u64 = subset_products(1, m).iter().sum();
            assert_eq!(BigUint::from(total), factorial(m as u64));
        }
    }

    #[test]
    fn cardinality_examples() {
        let irv = FoolingSpec::irv(3, 1).unwrap();
        assert_eq!(fooling_cardinality(&irv).unwrap(), BigUint::from(180u32));
        let stv = FoolingSpec::stv(3, 2, 1).unwrap();
        assert_eq!(fooling_cardinality(&stv).unwrap(), BigUint::from(180u32));
        let sp = FoolingSpec::sp(2, 3).unwrap();
        assert_eq!(fooling_cardinality(&sp).unwrap(), BigUint::from(20u32));
        assert_eq!(fooling_cardinality(&FoolingSpec::irv(1, 5).unwrap()).unwrap(), BigUint::one());
    }

    #[test]
    fn single_seat_stv_matches_irv() {
        for m in 2..=5 {
            for ell in 1..=2 {
                assert_eq!(
                    fooling_cardinality(&FoolingSpec::stv(m, 1, ell).unwrap()).unwrap(),
                    fooling_cardinality(&FoolingSpec::irv(m, ell).unwrap()).unwrap()
                );
            }
        }
    }

    #[test]
    fn multinomial_over_signature_counts() {
        // n! / ∏ (ℓ R(s))! over signatures, computed from count_signature
        for m in 2..=5 {
            let spec = FoolingSpec::irv(m, 2).unwrap();
            let n = 2 * factorial(m as u64).to_u64().unwrap();
            let denom: BigUint = all_signatures(m)
                .iter()
                .map(|s| factorial(2 * count_signature(s, m).unwrap().to_u64().unwrap()))
                .product();
            assert_eq!(fooling_cardinality(&spec).unwrap(), factorial(n) / denom);
        }
    }

    #[test]
    fn ln_of_big_values() {
        assert!((ln_big(&BigUint::from(180u32)) - 180f64.ln()).abs() < 1e-12);
        let huge = factorial(2000);
        let expected: f64 = (2..=2000).map(|j| (j as f64).ln()).sum();
        assert!((ln_big(&huge) - expected).abs() / expected < 1e-12);
    }
}
