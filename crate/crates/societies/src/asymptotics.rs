//! Floating-point growth estimates for the counting sequences.
//!
//! All estimates are carried as natural logarithms so they stay finite far
//! past the range where the counts themselves overflow an f64, and each can
//! be compared against an exact big-integer count through
//! [`AsymptoticEstimate::ratio_to_exact`].
//!
//! The labeled estimates come from the dominant singularity of the
//! generating functions: a simple pole at log 2 for ordered Bell numbers
//! and an essential singularity of the form exp(1/(2(log 2 - x))) for
//! hierarchical orderings. The unlabeled estimate derives from the product
//! form of its ordinary generating function, whose logarithm behaves like
//! x/(1 - 2x) near the dominant singularity at 1/2 plus a convergent tail;
//! the tail contributes the constant factor exp([`unlabeled_tail_constant`])
//! and the rest is saddle-point analysis. [`saddle_point`] exposes the
//! saddle radius itself next to its closed-form expansion.

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::sequences::Count;

use std::f64::consts::{LN_2, PI};

/// A growth estimate held in log space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticEstimate {
    log_value: f64,
}

impl AsymptoticEstimate {
    fn from_log(log_value: f64) -> Self {
        Self { log_value }
    }

    /// Natural logarithm of the estimated count.
    pub fn log_value(&self) -> f64 {
        self.log_value
    }

    /// The estimate itself; infinite once past f64 range.
    pub fn value(&self) -> f64 {
        self.log_value.exp()
    }

    /// Mantissa in [1, 10) and base-10 exponent, safe at any magnitude.
    pub fn decimal_parts(&self) -> (f64, i64) {
        let log10 = self.log_value / std::f64::consts::LN_10;
        let exponent = log10.floor();
        (10f64.powf(log10 - exponent), exponent as i64)
    }

    /// Estimate divided by the exact count; drifts toward one when the
    /// estimate captures the true growth.
    pub fn ratio_to_exact(&self, exact: &Count) -> f64 {
        (self.log_value - log_count(exact)).exp()
    }
}

/// log(n!) summed term by term; exact to near machine precision for the
/// table sizes used here.
pub fn log_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Natural log of a positive big integer from its top 64 bits.
///
/// # Panics
///
/// Panics on zero.
pub fn log_count(value: &Count) -> f64 {
    assert!(!value.is_zero(), "log of zero is undefined");
    let bits = value.bits();
    if bits <= 64 {
        return (value.to_u64().expect("fits in u64") as f64).ln();
    }
    let shift = bits - 64;
    let top = (value >> shift).to_u64().expect("top word fits") as f64;
    top.ln() + shift as f64 * LN_2
}

/// The constant 32 pi^2 e^(3 - 1/log 2) log 2, about 1038.97, whose fourth
/// root normalizes the hierarchical estimate.
pub fn hierarchical_growth_constant() -> f64 {
    32.0 * PI * PI * (3.0 - 1.0 / LN_2).exp() * LN_2
}

/// The convergent tail sum_{k>=2} 1/(k (2^k - 2)), about 0.33479, exposed
/// because its exponential enters the unlabeled estimate as a constant
/// factor.
pub fn unlabeled_tail_constant() -> f64 {
    let mut total = 0.0;
    for k in 2..120 {
        let term = 1.0 / (k as f64 * ((k as f64).exp2() - 2.0));
        total += term;
        if term < 1e-18 {
            break;
        }
    }
    total
}

/// Growth estimate for ordered Bell numbers: n! / (2 (log 2)^(n+1)).
///
/// # Panics
///
/// Panics if `n` is zero; the estimates describe growth, not the empty
/// structure.
pub fn ordered_bell_estimate(n: usize) -> AsymptoticEstimate {
    assert!(n >= 1, "growth estimates need n >= 1");
    AsymptoticEstimate::from_log(log_factorial(n) - LN_2 - (n as f64 + 1.0) * LN_2.ln())
}

/// Growth estimate for hierarchical orderings:
/// n! e^sqrt(2n/log 2) / ((log 2)^n n^(3/4) c^(1/4)) with c the
/// [`hierarchical_growth_constant`].
///
/// # Panics
///
/// Panics if `n` is zero.
pub fn hierarchical_estimate(n: usize) -> AsymptoticEstimate {
    assert!(n >= 1, "growth estimates need n >= 1");
    let nf = n as f64;
    let log = log_factorial(n) - nf * LN_2.ln() + (2.0 * nf / LN_2).sqrt()
        - 0.75 * nf.ln()
        - 0.25 * hierarchical_growth_constant().ln();
    AsymptoticEstimate::from_log(log)
}

/// Growth estimate for unlabeled orderings:
/// e^A 2^n e^sqrt(2n) / (sqrt(2 pi) 2^(3/4) e^(1/4) n^(3/4)) with A the
/// [`unlabeled_tail_constant`].
///
/// # Panics
///
/// Panics if `n` is zero.
pub fn unlabeled_estimate(n: usize) -> AsymptoticEstimate {
    assert!(n >= 1, "growth estimates need n >= 1");
    let nf = n as f64;
    let log = unlabeled_tail_constant() + nf * LN_2 + (2.0 * nf).sqrt()
        - 0.5 * (2.0 * PI).ln()
        - 0.75 * LN_2
        - 0.25
        - 0.75 * nf.ln();
    AsymptoticEstimate::from_log(log)
}

/// Growth estimate for the total rank of a designated member over all
/// hierarchies ([`crate::rank::rank_sum`]): n! n / (8 (log 2)^(n+2)).
///
/// # Panics
///
/// Panics if `n` is zero.
pub fn rank_sum_estimate(n: usize) -> AsymptoticEstimate {
    assert!(n >= 1, "growth estimates need n >= 1");
    let log = log_factorial(n) + (n as f64).ln() - 3.0 * LN_2 - (n as f64 + 2.0) * LN_2.ln();
    AsymptoticEstimate::from_log(log)
}

/// Saddle radius for the unlabeled generating function at a given n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaddlePoint {
    /// Root of sum_k r^k/(1 - 2 r^k)^2 = n, solved by bisection.
    pub radius: f64,
    /// Closed-form expansion 1/2 - sqrt(8n+1)/(8n) + 1/(8n) of the same
    /// root; drifts toward `radius` as n grows.
    pub expansion: f64,
}

/// The saddle equation's left side: sum_k r^k / (1 - 2 r^k)^2.
fn saddle_sum(r: f64) -> f64 {
    let mut total = 0.0;
    let mut power = 1.0;
    loop {
        power *= r;
        let denom = 1.0 - 2.0 * power;
        total += power / (denom * denom);
        if power < 1e-18 {
            return total;
        }
    }
}

/// Solves the saddle equation for the unlabeled generating function on
/// (0, 1/2) by bisection and pairs the root with its closed-form expansion.
///
/// # Panics
///
/// Panics if `n` is zero.
pub fn saddle_point(n: usize) -> Result<SaddlePoint> {
    assert!(n >= 1, "the saddle equation needs n >= 1");
    let budget = 200;
    let target = n as f64;
    let mut lo = 0.0f64;
    let mut hi = 0.5f64;
    let mut converged = false;
    for _ in 0..budget {
        let mid = 0.5 * (lo + hi);
        if saddle_sum(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::SaddleSearch { budget });
    }
    let nf = n as f64;
    Ok(SaddlePoint {
        radius: 0.5 * (lo + hi),
        expansion: 0.5 - (8.0 * nf + 1.0).sqrt() / (8.0 * nf) + 1.0 / (8.0 * nf),
    })
}
