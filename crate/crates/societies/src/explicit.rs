//! Explicit partition-sum formula for counting hierarchical orderings.
//!
//! Every hierarchical ordering on n labeled members decomposes the member
//! set into groups that are each ordered internally, so the total count is a
//! sum over integer partitions of n: the partition fixes the group sizes,
//! the multinomial coefficient counts ways to fill the groups, a symmetry
//! factor removes the ordering among equal-sized groups, and each group of
//! size j contributes a factor of the j-th ordered Bell number.
//!
//! [`summands`] exposes the individual terms so the decomposition itself can
//! be inspected; [`hierarchical_explicit`] folds them into the total, which
//! must agree with the recurrence route in [`crate::sequences`].

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::sequences::{factorial, ordered_bell, Count};

/// One distinct part size of an integer partition with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PartitionMultiplicity {
    /// The part size.
    pub part: usize,
    /// How many times the part occurs.
    pub count: usize,
}

/// All partitions of n, each as multiplicities of distinct parts in
/// decreasing part order. The partitions themselves come out in descending
/// lexicographic order: [n] first, all-ones last.
///
/// # Panics
///
/// Panics if `n` is zero.
pub fn partitions_of(n: usize) -> Vec<Vec<PartitionMultiplicity>> {
    assert!(n >= 1, "partitions_of is defined for n >= 1");
    let mut out = Vec::new();
    let mut parts = Vec::new();
    descend(n, n, &mut parts, &mut out);
    out
}

fn descend(
    remaining: usize,
    max_part: usize,
    parts: &mut Vec<usize>,
    out: &mut Vec<Vec<PartitionMultiplicity>>,
) {
    if remaining == 0 {
        out.push(group(parts));
        return;
    }
    for p in (1..=max_part.min(remaining)).rev() {
        parts.push(p);
        descend(remaining - p, p, parts, out);
        parts.pop();
    }
}

fn group(parts: &[usize]) -> Vec<PartitionMultiplicity> {
    let mut grouped: Vec<PartitionMultiplicity> = Vec::new();
    for &p in parts {
        match grouped.last_mut() {
            Some(last) if last.part == p => last.count += 1,
            _ => grouped.push(PartitionMultiplicity { part: p, count: 1 }),
        }
    }
    grouped
}

/// The term one partition contributes to the count on n members:
/// n! times the product of ordered Bell numbers for each part, divided by
/// the product over distinct parts of (multiplicity)! (part!)^multiplicity.
///
/// # Panics
///
/// Panics if the partition does not sum to `n`, or (which the construction
/// rules out) if the division is not exact.
pub fn summand(n: usize, partition: &[PartitionMultiplicity]) -> Count {
    let total: usize = partition.iter().map(|m| m.part * m.count).sum();
    assert!(total == n, "partition sums to {total}, expected {n}");
    let mut numerator = factorial(n);
    let mut denominator = Count::one();
    for m in partition {
        numerator *= ordered_bell(m.part).pow(m.count as u32);
        denominator *= factorial(m.count) * factorial(m.part).pow(m.count as u32);
    }
    let (q, r) = numerator.div_rem(&denominator);
    assert!(
        r.is_zero(),
        "internal consistency: partition summand for n = {n} is not an integer"
    );
    q
}

/// Every partition of n paired with its summand, in the order of
/// [`partitions_of`].
///
/// # Panics
///
/// Panics if `n` is zero.
pub fn summands(n: usize) -> Vec<(Vec<PartitionMultiplicity>, Count)> {
    partitions_of(n)
        .into_iter()
        .map(|partition| {
            let value = summand(n, &partition);
            (partition, value)
        })
        .collect()
}

/// The count of hierarchical orderings on n labeled members by direct
/// summation over partitions. Independent of the recurrence route.
///
/// # Panics
///
/// Panics if `n` is zero; the empty structure is a convention of the
/// sequence table, not of this formula.
pub fn hierarchical_explicit(n: usize) -> Count {
    summands(n).into_iter().map(|(_, v)| v).sum()
}
