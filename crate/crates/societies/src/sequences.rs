//! Big-integer sequences: ordered Bell numbers, hierarchical orderings,
//! unlabeled orderings, the doubly nested variant, and supporting
//! combinatorial kernels (binomials, Stirling numbers of the second kind,
//! factorials).
//!
//! All values are exact. Each sequence is available as a one-shot function
//! and as an append-only [`SequenceTable`] for bulk or incremental use.
//! Recurrences keep a single Pascal row live instead of an n-by-n binomial
//! table, so filling to index n costs O(n^2) big-integer operations and
//! O(n) stored values.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Arbitrary-precision nonnegative count. Round-trips exactly through its
/// decimal `Display`/`FromStr` form.
pub type Count = BigUint;

/// The sequence families a [`SequenceTable`] can hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceKind {
    /// Ordered set partitions of an n-set (hierarchies on n labels).
    OrderedBell,
    /// Hierarchical orderings: unordered collections of hierarchies on
    /// disjoint blocks covering the label set.
    Hierarchical,
    /// Unlabeled hierarchical orderings: multisets of compositions.
    Unlabeled,
    /// Hierarchical orderings nested two levels deeper (collections of
    /// collections of collections of hierarchies).
    NestedHierarchical,
    /// Compositions of n: 2^(n-1) for n >= 1.
    Compositions,
}

/// Append-only memo table for one sequence. Index n holds the n-th term;
/// index 0 is always 1 (empty-structure convention, even for kinds whose
/// one-shot function rejects n = 0).
///
/// Extension is strictly monotone: growing the table never rewrites an
/// existing entry, and the borrow rules give the single-writer /
/// many-reader discipline for free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceTable {
    kind: SequenceKind,
    values: Vec<Count>,
}

impl SequenceTable {
    /// Fresh table holding only the index-0 convention value 1.
    pub fn new(kind: SequenceKind) -> Self {
        Self {
            kind,
            values: vec![Count::one()],
        }
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    /// Number of stored terms (highest filled index + 1).
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Grows the table so that index `n` is filled. No-op if already there.
    pub fn extend_to(&mut self, n: usize) {
        if n < self.values.len() {
            return;
        }
        match self.kind {
            SequenceKind::OrderedBell => fill_ordered_bell(&mut self.values, n),
            SequenceKind::Hierarchical => {
                let bell = filled(SequenceKind::OrderedBell, n);
                fill_iterated_exponential(&bell, &mut self.values, n);
            }
            SequenceKind::NestedHierarchical => {
                let bell = filled(SequenceKind::OrderedBell, n);
                let hier = {
                    let mut v = vec![Count::one()];
                    fill_iterated_exponential(&bell, &mut v, n);
                    v
                };
                // Two more rounds of the same construction sit between the
                // hierarchical sequence and the nested one.
                let sets_of = {
                    let mut v = vec![Count::one()];
                    fill_iterated_exponential(&hier, &mut v, n);
                    v
                };
                fill_iterated_exponential(&sets_of, &mut self.values, n);
            }
            SequenceKind::Unlabeled => fill_unlabeled(&mut self.values, n),
            SequenceKind::Compositions => {
                for i in self.values.len()..=n {
                    self.values.push(Count::one() << (i - 1));
                }
            }
        }
    }

    /// The n-th term, if already filled.
    pub fn get(&self, n: usize) -> Option<&Count> {
        self.values.get(n)
    }

    /// All filled terms, index 0 upward.
    pub fn values(&self) -> &[Count] {
        &self.values
    }
}

/// Fills `values` (which starts at [1]) with ordered Bell numbers through
/// index `target` via B_n = sum_{k=1..n} C(n,k) B_{n-k}.
fn fill_ordered_bell(values: &mut Vec<Count>, target: usize) {
    let mut row = vec![Count::one()]; // Pascal row C(0, *)
    for n in 1..=target {
        pascal_advance(&mut row);
        if n < values.len() {
            continue;
        }
        let mut sum = Count::zero();
        for k in 1..=n {
            sum += &row[k] * &values[n - k];
        }
        values.push(sum);
    }
}

/// Fills `values` with the exponential-formula transform of `base`:
/// F_n = sum_{k=1..n} C(n-1,k-1) G_k F_{n-k}, F_0 = 1. This is the
/// coefficient recurrence of F(x) = exp(G(x) - 1) for e.g.f.s with G_0 = 1.
fn fill_iterated_exponential(base: &[Count], values: &mut Vec<Count>, target: usize) {
    let mut row = vec![Count::one()]; // Pascal row C(0, *)
    for n in 1..=target {
        if n > 1 {
            pascal_advance(&mut row);
        }
        if n < values.len() {
            continue;
        }
        let mut sum = Count::zero();
        for k in 1..=n {
            sum += &row[k - 1] * &base[k] * &values[n - k];
        }
        values.push(sum);
    }
}

/// Fills `values` with unlabeled counts through `target` via
/// n U_n = sum_{k=1..n} alpha_k U_{n-k}.
///
/// # Panics
///
/// Panics if the divisibility that the recurrence guarantees ever fails;
/// that would mean a bug in this module, not bad input.
fn fill_unlabeled(values: &mut Vec<Count>, target: usize) {
    let alphas: Vec<Count> = (0..=target)
        .map(|k| {
            if k == 0 {
                Count::zero()
            } else {
                unlabeled_alpha(k)
            }
        })
        .collect();
    for n in values.len()..=target {
        let mut sum = Count::zero();
        for k in 1..=n {
            sum += &alphas[k] * &values[n - k];
        }
        let (q, r) = sum.div_rem(&Count::from(n));
        assert!(
            r.is_zero(),
            "internal consistency: unlabeled sum at n = {n} not divisible by n"
        );
        values.push(q);
    }
}

/// Advances a Pascal row in place: C(n-1, *) becomes C(n, *).
fn pascal_advance(row: &mut Vec<Count>) {
    let n = row.len(); // new row index
    row.push(Count::one());
    for k in (1..n).rev() {
        let (lo, hi) = row.split_at_mut(k);
        hi[0] += &lo[k - 1];
    }
}

fn filled(kind: SequenceKind, n: usize) -> Vec<Count> {
    let mut t = SequenceTable::new(kind);
    t.extend_to(n);
    t.values
}

/// Number of ordered set partitions of an n-set (n-th ordered Bell number).
pub fn ordered_bell(n: usize) -> Count {
    filled(SequenceKind::OrderedBell, n).swap_remove(n)
}

/// Number of hierarchical orderings of n labeled elements.
pub fn hierarchical(n: usize) -> Count {
    filled(SequenceKind::Hierarchical, n).swap_remove(n)
}

/// Number of doubly nested hierarchical orderings of n labeled elements.
pub fn nested_hierarchical(n: usize) -> Count {
    filled(SequenceKind::NestedHierarchical, n).swap_remove(n)
}

/// Number of unlabeled hierarchical orderings (multisets of compositions)
/// of total size n.
pub fn unlabeled(n: usize) -> Count {
    filled(SequenceKind::Unlabeled, n).swap_remove(n)
}

/// Divisor-weighted kernel of the unlabeled recurrence:
/// alpha_k = sum over divisors d of k of d * 2^(d-1).
///
/// # Panics
///
/// Panics if `k` is 0 (no divisors to sum).
pub fn unlabeled_alpha(k: usize) -> Count {
    assert!(k > 0, "unlabeled_alpha is defined for k >= 1");
    let mut sum = Count::zero();
    let mut d = 1;
    while d * d <= k {
        if k.is_multiple_of(d) {
            sum += Count::from(d) << (d - 1);
            let e = k / d;
            if e != d {
                sum += Count::from(e) << (e - 1);
            }
        }
        d += 1;
    }
    sum
}

/// Number of compositions of n: 2^(n-1).
///
/// # Panics
///
/// Panics if `n` is 0 (the empty total has no composition here).
pub fn compositions(n: usize) -> Count {
    assert!(n > 0, "compositions is defined for n >= 1");
    Count::one() << (n - 1)
}

/// Stirling number of the second kind S(n, h): partitions of an n-set into
/// h nonempty blocks.
///
/// # Panics
///
/// Panics if `h > n`.
pub fn stirling2(n: usize, h: usize) -> Count {
    assert!(h <= n, "stirling2 requires h <= n, got S({n}, {h})");
    stirling2_row(n).swap_remove(h)
}

/// Full row S(n, 0..=n) of the Stirling triangle, via
/// S(n, h) = h S(n-1, h) + S(n-1, h-1).
pub fn stirling2_row(n: usize) -> Vec<Count> {
    let mut row = vec![Count::one()];
    for m in 1..=n {
        let mut next = vec![Count::zero(); m + 1];
        for h in 1..=m {
            let mut v = if h < row.len() {
                &row[h] * &Count::from(h)
            } else {
                Count::zero()
            };
            v += &row[h - 1];
            next[h] = v;
        }
        row = next;
    }
    row
}

/// Binomial coefficient C(n, k).
///
/// # Panics
///
/// Panics if `k > n`.
pub fn binomial(n: usize, k: usize) -> Count {
    assert!(k <= n, "binomial requires k <= n, got C({n}, {k})");
    num_integer::binomial(Count::from(n), Count::from(k))
}

/// n! as a big integer.
pub fn factorial(n: usize) -> Count {
    let mut f = Count::one();
    for i in 2..=n {
        f *= Count::from(i);
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nums(values: &[u64]) -> Vec<Count> {
        values.iter().map(|&v| Count::from(v)).collect()
    }

    #[test]
    fn ordered_bell_small_terms() {
        let mut t = SequenceTable::new(SequenceKind::OrderedBell);
        t.extend_to(7);
        assert_eq!(t.values(), &nums(&[1, 1, 3, 13, 75, 541, 4683, 47293]));
    }

    #[test]
    fn hierarchical_small_terms() {
        let mut t = SequenceTable::new(SequenceKind::Hierarchical);
        t.extend_to(9);
        assert_eq!(
            t.values(),
            &nums(&[1, 1, 4, 23, 173, 1602, 17575, 222497, 3188806, 50988405])
        );
    }

    #[test]
    fn nested_small_terms() {
        let mut t = SequenceTable::new(SequenceKind::NestedHierarchical);
        t.extend_to(9);
        assert_eq!(
            t.values(),
            &nums(&[1, 1, 6, 52, 588, 8174, 134537, 2554647, 54909468, 1316675221])
        );
    }

    #[test]
    fn unlabeled_small_terms() {
        let mut t = SequenceTable::new(SequenceKind::Unlabeled);
        t.extend_to(14);
        assert_eq!(
            t.values(),
            &nums(&[1, 1, 3, 7, 18, 42, 104, 244, 585, 1373, 3233, 7533, 17547, 40591, 93711])
        );
    }

    #[test]
    fn compositions_doubling() {
        let mut t = SequenceTable::new(SequenceKind::Compositions);
        t.extend_to(12);
        for n in 1..=12 {
            assert_eq!(t.get(n).unwrap(), &(Count::one() << (n - 1)));
            assert_eq!(compositions(n), Count::one() << (n - 1));
        }
        assert!(t.get(0).unwrap().is_one());
    }

    #[test]
    fn alpha_values() {
        assert_eq!(unlabeled_alpha(1), Count::from(1u32));
        assert_eq!(unlabeled_alpha(2), Count::from(5u32));
        assert_eq!(unlabeled_alpha(3), Count::from(13u32));
        // divisors of 6: 1, 2, 3, 6 -> 1 + 4 + 12 + 192
        assert_eq!(unlabeled_alpha(6), Count::from(209u32));
    }

    #[test]
    fn stirling_triangle() {
        assert_eq!(stirling2(3, 2), Count::from(3u32));
        assert_eq!(stirling2(4, 2), Count::from(7u32));
        assert_eq!(stirling2(0, 0), Count::one());
        for n in 1..=10 {
            assert_eq!(stirling2(n, 1), Count::one());
            assert_eq!(stirling2(n, n), Count::one());
        }
        assert_eq!(stirling2_row(7), nums(&[0, 1, 63, 301, 350, 140, 21, 1]));
    }

    #[test]
    fn ordered_bell_equals_height_weighted_stirling_sum() {
        for n in 0..=12 {
            let row = stirling2_row(n);
            let mut sum = Count::zero();
            for (h, s) in row.iter().enumerate() {
                sum += s * factorial(h);
            }
            assert_eq!(sum, ordered_bell(n), "n = {n}");
        }
    }

    #[test]
    fn binomial_basics() {
        assert_eq!(binomial(5, 2), Count::from(10u32));
        assert_eq!(binomial(9, 0), Count::one());
        assert_eq!(binomial(9, 9), Count::one());
        // Pascal identity on a midsize entry.
        assert_eq!(binomial(20, 8), binomial(19, 7) + binomial(19, 8));
    }

    #[test]
    fn factorial_basics() {
        assert_eq!(factorial(0), Count::one());
        assert_eq!(factorial(6), Count::from(720u32));
    }

    #[test]
    fn tables_extend_append_only() {
        for kind in [
            SequenceKind::OrderedBell,
            SequenceKind::Hierarchical,
            SequenceKind::Unlabeled,
            SequenceKind::NestedHierarchical,
            SequenceKind::Compositions,
        ] {
            let mut stepped = SequenceTable::new(kind);
            stepped.extend_to(17);
            let snapshot = stepped.values().to_vec();
            stepped.extend_to(40);
            assert_eq!(&stepped.values()[..18], &snapshot[..], "{kind:?}");

            let mut direct = SequenceTable::new(kind);
            direct.extend_to(40);
            assert_eq!(direct.values(), stepped.values(), "{kind:?}");

            // Shrinking requests are no-ops.
            direct.extend_to(3);
            assert_eq!(direct.len(), 41);
        }
    }

    #[test]
    fn decimal_strings_reproduce() {
        let render = || -> Vec<String> {
            let mut t = SequenceTable::new(SequenceKind::Hierarchical);
            t.extend_to(50);
            t.values().iter().map(|v| v.to_string()).collect()
        };
        let first = render();
        assert_eq!(first, render());
        // Decimal round-trip on the largest term.
        let back: Count = first[50].parse().unwrap();
        assert_eq!(back, hierarchical(50));
    }

    #[test]
    #[should_panic(expected = "k >= 1")]
    fn alpha_rejects_zero() {
        unlabeled_alpha(0);
    }

    #[test]
    #[should_panic(expected = "n >= 1")]
    fn compositions_rejects_zero() {
        compositions(0);
    }

    #[test]
    #[should_panic(expected = "h <= n")]
    fn stirling_rejects_h_above_n() {
        stirling2(3, 4);
    }

    #[test]
    #[should_panic(expected = "k <= n")]
    fn binomial_rejects_k_above_n() {
        binomial(3, 4);
    }
}
