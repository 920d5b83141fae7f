use super::{Family, FoolingError, FoolingSpec};
use statrs::function::gamma::ln_gamma;
use std::f64::consts::{LN_2, PI};
use std::fmt;

/// Above this many free candidates the subset sum is replaced by its
/// closed-form Stirling expansion.
const EXACT_WIDTH: usize = 16;

/// A quantity of the form `n · per_voter`, kept factored because `n = ℓ·m!`
/// leaves `f64` range long before the per-voter value does.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledLog {
    /// `ln n`.
    pub ln_voters: f64,
    pub per_voter: f64,
}

impl ScaledLog {
    fn new(ln_voters: f64, per_voter: f64) -> Self {
        ScaledLog { ln_voters, per_voter }
    }

    /// The plain value; infinite once it leaves `f64` range.
    pub fn value(&self) -> f64 {
        self.per_voter * self.ln_voters.exp()
    }

    /// `log10` of the value (`-inf` for zero).
    pub fn log10(&self) -> f64 {
        (self.per_voter.ln() + self.ln_voters) / std::f64::consts::LN_10
    }

    /// Ratio of two quantities over the same voter count.
    pub fn ratio(&self, other: &ScaledLog) -> f64 {
        self.per_voter / other.per_voter
    }
}

impl fmt::Display for ScaledLog {
    /// Plain decimal when representable, otherwise `d.dddddde+N`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.value();
        if v == 0.0 || (v.is_finite() && v.abs() < 1e15) {
            return write!(f, "{v:.6}");
        }
        let l = self.log10();
        let exponent = l.floor();
        write!(f, "{:.6}e+{}", 10f64.powf(l - exponent), exponent as i64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticEstimate {
    /// `n Σ_{j} ln j/(j+1)` (from `j = k` for STV); `n ln m` for single-peaked.
    pub finite_sum: ScaledLog,
    /// `n (ln m)² / 2`; `n ln m` for single-peaked.
    pub leading_term: ScaledLog,
}

fn ln_factorial(x: f64) -> f64 {
    ln_gamma(x + 1.0)
}

/// `ln n`, computed without materialising `n`.
pub(crate) fn ln_voters(spec: &FoolingSpec) -> f64 {
    let m = spec.num_candidates() as f64;
    let ell = (spec.ell() as f64).ln();
    match spec.family() {
        Family::Sp => ell + m.ln(),
        _ => ell + ln_factorial(m),
    }
}

/// `ln |F|` via log-factorials, as `n · per_voter`.
///
/// Small instances sum log-factorials over every subset term; wider ones use
/// the Stirling expansion of that sum, whose subset sums collapse into
/// products because the term weights factor over candidates.
pub fn log_cardinality(spec: &FoolingSpec) -> Result<ScaledLog, FoolingError> {
    let m = spec.num_candidates();
    let ell = spec.ell() as f64;
    let ln_n = ln_voters(spec);
    if let Family::Sp = spec.family() {
        let n = ell * m as f64;
        let total = ln_factorial(n) - m as f64 * ln_factorial(ell);
        return Ok(ScaledLog::new(ln_n, total / n));
    }
    let k = spec.seats();
    let width = m - k;
    // b = ℓ (k−1)!, so each subset term is b · ∏_{c∈T} c over T ⊆ [k, m−1]
    let ln_b = ell.ln() + ln_factorial(k as f64 - 1.0);
    if width <= EXACT_WIDTH && ln_n < 700.0 {
        let b = ln_b.exp();
        let n = ln_n.exp();
        let mut products = vec![1f64];
        for c in k..m {
            let grown: Vec<f64> = products.iter().map(|p| p * c as f64).collect();
            products.extend(grown);
        }
        let subtracted: f64 = products.iter().map(|p| ln_factorial((b * p).round())).sum();
        let total = ln_factorial(n.round()) - k as f64 * subtracted;
        return Ok(ScaledLog::new(ln_n, total / n));
    }

    let ln_c_sum: f64 = (k..m).map(|c| (c as f64).ln()).sum();
    let main = (m as f64).ln() + (k..m).map(|c| (c as f64).ln() / (c as f64 + 1.0)).sum::<f64>();
    // corrections of order 2^{m−k} / n, evaluated in log space
    let inv_n = (-ln_n).exp();
    let half_log = 0.5 * ((2.0 * PI).ln() + ln_n) * inv_n + inv_n / 12.0;
    let subset_spread = ((2.0 * PI).ln() + ln_b + 0.5 * ln_c_sum).ln();
    let spread = ((k as f64).ln() + (width as f64 - 1.0) * LN_2 + subset_spread - ln_n).exp();
    let reciprocal = ((m as f64).ln() - 12f64.ln() - ln_b - ln_n).exp();
    Ok(ScaledLog::new(ln_n, main + half_log - spread - reciprocal))
}

/// The finite sum and leading term of the asymptotic estimate for `ln |F|`.
pub fn asymptotic_estimate(spec: &FoolingSpec) -> AsymptoticEstimate {
    let m = spec.num_candidates();
    let ln_m = (m as f64).ln();
    let ln_n = ln_voters(spec);
    match spec.family() {
        Family::Sp => AsymptoticEstimate {
            finite_sum: ScaledLog::new(ln_n, ln_m),
            leading_term: ScaledLog::new(ln_n, ln_m),
        },
        _ => {
            let k = spec.seats();
            let sum = (k.max(1)..m).map(|j| (j as f64).ln() / (j as f64 + 1.0)).sum();
            AsymptoticEstimate {
                finite_sum: ScaledLog::new(ln_n, sum),
                leading_term: ScaledLog::new(ln_n, ln_m * ln_m / 2.0),
            }
        }
    }
}
