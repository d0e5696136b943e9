//! Rank statistics: where a member sits in a random structure.
//!
//! Two models. In the labeled model a hierarchy on n members is drawn
//! uniformly and we track the rank of one designated member; a hierarchy
//! with i ranks places the member at position r in (i-1)! ways per
//! partition, so the rank-r probability is a tail sum of (i-1)! S(n, i)
//! over i >= r, normalized by the count of all hierarchies. In the
//! unlabeled model a composition of n is drawn uniformly, then a member
//! uniformly; rank probabilities become tail sums of binomial
//! coefficients and the mean collapses to (n + 3)/4.
//!
//! Everything here is exact rational arithmetic; the floating-point
//! growth estimates for these quantities live in [`crate::asymptotics`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::sequences::{binomial, factorial, ordered_bell, stirling2_row, Count};
use crate::series::Rational;

/// Exact distribution of a member's rank, for ranks 1..=n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankDistribution {
    n: usize,
    probabilities: Vec<Rational>,
}

impl RankDistribution {
    fn from_tail_weights(weights: Vec<Count>, denominator: Count) -> Self {
        let n = weights.len();
        let denominator = BigInt::from(denominator);
        let mut tail = Count::zero();
        let mut probabilities = vec![Rational::zero(); n];
        for r in (1..=n).rev() {
            tail += &weights[r - 1];
            probabilities[r - 1] = Rational::new(BigInt::from(tail.clone()), denominator.clone());
        }
        Self { n, probabilities }
    }

    /// Member count the distribution was built for.
    pub fn member_count(&self) -> usize {
        self.n
    }

    /// Probability of the given 1-based rank.
    ///
    /// # Panics
    ///
    /// Panics unless `1 <= rank <= n`.
    pub fn probability(&self, rank: usize) -> &Rational {
        assert!(
            (1..=self.n).contains(&rank),
            "rank must lie in 1..={}, got {rank}",
            self.n
        );
        &self.probabilities[rank - 1]
    }

    /// Probabilities for ranks 1..=n in order.
    pub fn probabilities(&self) -> &[Rational] {
        &self.probabilities
    }

    /// Exact expected rank.
    pub fn mean(&self) -> Rational {
        self.probabilities
            .iter()
            .enumerate()
            .map(|(i, p)| p * Rational::from_integer(BigInt::from(i + 1)))
            .sum()
    }

    /// Sum of all probabilities; one, unless the construction is broken.
    pub fn total(&self) -> Rational {
        self.probabilities.iter().sum()
    }
}

/// Rank distribution of a designated member in a uniform hierarchy on n
/// labeled members.
///
/// # Panics
///
/// Panics if `n` is zero.
pub fn labeled_rank_distribution(n: usize) -> RankDistribution {
    assert!(n >= 1, "rank statistics need at least one member");
    let row = stirling2_row(n);
    let weights = (1..=n).map(|i| factorial(i - 1) * &row[i]).collect();
    RankDistribution::from_tail_weights(weights, ordered_bell(n))
}

/// Rank distribution of a uniform member in a uniform composition of n.
///
/// # Panics
///
/// Panics if `n` is zero.
pub fn unlabeled_rank_distribution(n: usize) -> RankDistribution {
    assert!(n >= 1, "rank statistics need at least one member");
    let weights = (1..=n).map(|i| binomial(n, i)).collect();
    let denominator = Count::from(n) * (Count::one() << (n - 1));
    RankDistribution::from_tail_weights(weights, denominator)
}

/// Total rank of a designated member summed over every hierarchy on n
/// labeled members: half of sum_i (i+1)! S(n, i), always an integer.
///
/// # Panics
///
/// Panics if `n` is zero.
pub fn rank_sum(n: usize) -> Count {
    assert!(n >= 1, "rank statistics need at least one member");
    let row = stirling2_row(n);
    let total: Count = (1..=n).map(|i| factorial(i + 1) * &row[i]).sum();
    let (half, remainder) = total.div_rem(&Count::from(2u32));
    assert!(
        remainder.is_zero(),
        "internal consistency: rank total for n = {n} must be even"
    );
    half
}

/// Doubled rank totals 2 sum_i (i+1)! S(n, i) / 2 for n = 0..=order, so
/// entry n is twice [`rank_sum`] and entry 0 is zero (an empty sum).
///
/// The doubling makes integrality obvious without the evenness argument
/// that [`rank_sum`] asserts, and matches the convention of checking the
/// rank-total generating function with its leading 1/2 cleared.
pub fn rank_sum_values(order: usize) -> Vec<Count> {
    (0..=order)
        .map(|n| {
            if n == 0 {
                Count::zero()
            } else {
                rank_sum(n) * 2u32
            }
        })
        .collect()
}

/// Exact mean rank of a member in a uniform hierarchy on n labeled
/// members: [`rank_sum`] over the hierarchy count.
///
/// # Panics
///
/// Panics if `n` is zero.
pub fn labeled_average_rank(n: usize) -> Rational {
    Rational::new(BigInt::from(rank_sum(n)), BigInt::from(ordered_bell(n)))
}

/// Exact mean rank in the unlabeled model: (n + 3)/4.
///
/// # Panics
///
/// Panics if `n` is zero.
pub fn unlabeled_average_rank(n: usize) -> Rational {
    assert!(n >= 1, "rank statistics need at least one member");
    Rational::new(BigInt::from(n + 3), BigInt::from(4))
}
