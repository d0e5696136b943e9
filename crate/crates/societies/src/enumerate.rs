//! Exhaustive listing, text forms, and uniform sampling of small structures.
//!
//! Members are labeled 1..=n. A hierarchy prints its ranks bottom-up joined
//! by `<`, with the labels inside a rank sorted and comma-joined: `2<1,3`
//! puts member 2 alone at rank 1 and members 1 and 3 together at rank 2.
//! An ordering separates its groups with ` | `, as in `2<1,3 | 4`.
//! Unlabeled shapes keep only the rank sizes, in the same layout: `3 | 2<1`.
//!
//! Enumeration is exact and intended for cross-checking the counting
//! routes, so every function guards its input against sizes whose listing
//! would be unreasonably large and returns
//! [`Error::EnumerationGuard`](crate::Error::EnumerationGuard) beyond them.
//! Iterators are lazy; collect only when the count is known to be small.

use std::collections::HashSet;
use std::fmt;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::explicit::partitions_of;
use crate::sequences::{binomial, Count, SequenceKind, SequenceTable};

/// Largest member count accepted by [`hierarchies`].
pub const MAX_HIERARCHY_MEMBERS: usize = 9;
/// Largest member count accepted by [`orderings`].
pub const MAX_ORDERING_MEMBERS: usize = 8;
/// Largest member count accepted by [`compositions_of`].
pub const MAX_COMPOSITION_MEMBERS: usize = 20;
/// Largest member count accepted by [`unlabeled_orderings`].
pub const MAX_UNLABELED_MEMBERS: usize = 14;

fn guard(what: &'static str, n: usize, max: usize) -> Result<()> {
    if n == 0 || n > max {
        return Err(Error::EnumerationGuard { what, n, max });
    }
    Ok(())
}

/// A hierarchy: members stacked into ranks, bottom rank first.
///
/// Invariants: at least one rank, no empty rank, labels positive and
/// distinct, labels sorted within each rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hierarchy {
    levels: Vec<Vec<u32>>,
}

/// One group of an ordering per hierarchy, groups sorted by smallest label.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HierarchicalOrdering {
    groups: Vec<Hierarchy>,
}

/// Rank sizes of a hierarchy with the labels erased, bottom rank first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<usize>,
}

/// A multiset of compositions: an ordering with all labels erased. Groups
/// are kept in a canonical order, sorted by (member count, rank count,
/// rank sizes), so equal multisets always print identically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnlabeledOrdering {
    groups: Vec<Composition>,
}

fn parse_levels(text: &str) -> Result<Vec<Vec<u32>>> {
    text.split('<')
        .map(|segment| {
            if segment.trim().is_empty() {
                return Err(Error::Malformed(
                    "each rank needs at least one member".into(),
                ));
            }
            segment
                .split(',')
                .map(|token| {
                    let token = token.trim();
                    token
                        .parse::<u32>()
                        .map_err(|_| Error::Malformed(format!("cannot read label {token:?}")))
                })
                .collect()
        })
        .collect()
}

fn parse_parts(text: &str) -> Result<Vec<usize>> {
    text.split('<')
        .map(|segment| {
            let token = segment.trim();
            let part: usize = token
                .parse()
                .map_err(|_| Error::Malformed(format!("cannot read rank size {token:?}")))?;
            if part == 0 {
                return Err(Error::Malformed("rank sizes must be positive".into()));
            }
            Ok(part)
        })
        .collect()
}

/// Checks that `labels` (already known to be distinct) are exactly 1..=n.
fn check_complete<I: Iterator<Item = u32>>(labels: I, n: usize) -> Result<()> {
    let mut present = vec![false; n + 1];
    for label in labels {
        if label == 0 || label as usize > n {
            return Err(Error::LabelOutOfRange { label, n });
        }
        present[label as usize] = true;
    }
    for (label, seen) in present.iter().enumerate().skip(1) {
        if !seen {
            return Err(Error::MissingLabel(label as u32));
        }
    }
    Ok(())
}

impl Hierarchy {
    /// Builds a hierarchy from ranks listed bottom-up, sorting each rank.
    /// Labels may be any positive values but must be distinct, so a
    /// hierarchy can stand alone or serve as one group of an ordering.
    pub fn new(levels: Vec<Vec<u32>>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::Malformed(
                "a hierarchy needs at least one rank".into(),
            ));
        }
        let mut seen = HashSet::new();
        let mut sorted = Vec::with_capacity(levels.len());
        for mut level in levels {
            if level.is_empty() {
                return Err(Error::Malformed(
                    "each rank needs at least one member".into(),
                ));
            }
            for &label in &level {
                if label == 0 {
                    return Err(Error::Malformed("member labels start at 1".into()));
                }
                if !seen.insert(label) {
                    return Err(Error::DuplicateLabel(label));
                }
            }
            level.sort_unstable();
            sorted.push(level);
        }
        Ok(Self { levels: sorted })
    }

    /// Reads the `2<1,3` text form; the members must be exactly 1..=n.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let hierarchy = Self::new(parse_levels(text)?)?;
        check_complete(hierarchy.members(), n)?;
        Ok(hierarchy)
    }

    /// Ranks bottom-up; each rank's labels are sorted.
    pub fn levels(&self) -> &[Vec<u32>] {
        &self.levels
    }

    /// Number of ranks.
    pub fn height(&self) -> usize {
        self.levels.len()
    }

    pub fn member_count(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    /// All labels, bottom rank first.
    pub fn members(&self) -> impl Iterator<Item = u32> + '_ {
        self.levels.iter().flatten().copied()
    }

    /// 1-based rank of a member, or None if the label is absent.
    pub fn rank_of(&self, label: u32) -> Option<usize> {
        self.levels
            .iter()
            .position(|level| level.binary_search(&label).is_ok())
            .map(|i| i + 1)
    }

    /// Rank sizes with the labels erased.
    pub fn shape(&self) -> Composition {
        Composition::new(self.levels.iter().map(Vec::len).collect())
    }

    fn min_label(&self) -> u32 {
        self.members().min().expect("ranks are nonempty")
    }
}

impl fmt::Display for Hierarchy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, level) in self.levels.iter().enumerate() {
            if i > 0 {
                f.write_str("<")?;
            }
            for (j, label) in level.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{label}")?;
            }
        }
        Ok(())
    }
}

impl HierarchicalOrdering {
    /// Builds an ordering from its groups, sorting them by smallest label.
    pub fn new(groups: Vec<Hierarchy>) -> Result<Self> {
        if groups.is_empty() {
            return Err(Error::Malformed(
                "an ordering needs at least one group".into(),
            ));
        }
        let mut seen = HashSet::new();
        for group in &groups {
            for label in group.members() {
                if !seen.insert(label) {
                    return Err(Error::DuplicateLabel(label));
                }
            }
        }
        let mut groups = groups;
        groups.sort_by_key(Hierarchy::min_label);
        Ok(Self { groups })
    }

    /// Reads the `2<1,3 | 4` text form; the members must be exactly 1..=n.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let groups = text
            .split('|')
            .map(|segment| Hierarchy::new(parse_levels(segment)?))
            .collect::<Result<Vec<_>>>()?;
        let ordering = Self::new(groups)?;
        check_complete(ordering.groups.iter().flat_map(Hierarchy::members), n)?;
        Ok(ordering)
    }

    pub fn groups(&self) -> &[Hierarchy] {
        &self.groups
    }

    pub fn member_count(&self) -> usize {
        self.groups.iter().map(Hierarchy::member_count).sum()
    }

    /// The ordering with every label erased.
    pub fn shape(&self) -> UnlabeledOrdering {
        UnlabeledOrdering::new(self.groups.iter().map(Hierarchy::shape).collect())
    }
}

impl fmt::Display for HierarchicalOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, group) in self.groups.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{group}")?;
        }
        Ok(())
    }
}

impl Composition {
    /// Builds a composition from rank sizes, bottom rank first.
    ///
    /// # Panics
    ///
    /// Panics if `parts` is empty or contains a zero.
    pub fn new(parts: Vec<usize>) -> Self {
        assert!(!parts.is_empty(), "a composition needs at least one part");
        assert!(
            parts.iter().all(|&p| p >= 1),
            "composition parts must be positive"
        );
        Self { parts }
    }

    /// Reads the `2<1` text form; the parts must sum to `n`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let parts = parse_parts(text)?;
        let total: usize = parts.iter().sum();
        if total != n {
            return Err(Error::Malformed(format!(
                "rank sizes sum to {total}, expected {n}"
            )));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Total number of members.
    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of ranks.
    pub fn height(&self) -> usize {
        self.parts.len()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, part) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str("<")?;
            }
            write!(f, "{part}")?;
        }
        Ok(())
    }
}

impl UnlabeledOrdering {
    /// Builds an unlabeled ordering, normalizing the group order to
    /// ascending (member count, rank count, rank sizes).
    ///
    /// # Panics
    ///
    /// Panics if `groups` is empty.
    pub fn new(mut groups: Vec<Composition>) -> Self {
        assert!(!groups.is_empty(), "an ordering needs at least one group");
        groups.sort_by(|a, b| {
            (a.total(), a.height(), &a.parts).cmp(&(b.total(), b.height(), &b.parts))
        });
        Self { groups }
    }

    /// Reads the `3 | 2<1` text form; the groups must sum to `n` members.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let groups = text
            .split('|')
            .map(|segment| {
                Ok(Composition {
                    parts: parse_parts(segment)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let total: usize = groups.iter().map(Composition::total).sum();
        if total != n {
            return Err(Error::Malformed(format!(
                "groups sum to {total} members, expected {n}"
            )));
        }
        Ok(Self::new(groups))
    }

    /// Groups in canonical order.
    pub fn groups(&self) -> &[Composition] {
        &self.groups
    }

    pub fn member_count(&self) -> usize {
        self.groups.iter().map(Composition::total).sum()
    }
}

impl fmt::Display for UnlabeledOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, group) in self.groups.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{group}")?;
        }
        Ok(())
    }
}

/// Nonempty submasks of `mask` in decreasing numeric order, starting with
/// `mask` itself.
fn submasks_desc(mask: u32) -> impl Iterator<Item = u32> {
    debug_assert!(mask != 0);
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let current = next?;
        let following = (current - 1) & mask;
        next = (following != 0).then_some(following);
        Some(current)
    })
}

/// Splits `mask` into an ordered list of nonempty levels: the bottom level
/// runs through submasks in decreasing order, then the rest recursively.
fn level_splits(mask: u32) -> Box<dyn Iterator<Item = Vec<u32>>> {
    Box::new(
        submasks_desc(mask).flat_map(move |bottom| -> Box<dyn Iterator<Item = Vec<u32>>> {
            let rest = mask & !bottom;
            if rest == 0 {
                Box::new(std::iter::once(vec![bottom]))
            } else {
                Box::new(level_splits(rest).map(move |mut upper| {
                    upper.insert(0, bottom);
                    upper
                }))
            }
        }),
    )
}

fn mask_to_labels(mask: u32, labels: &[u32]) -> Vec<u32> {
    labels
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &label)| label)
        .collect()
}

/// All hierarchies over an explicit (ascending) label set.
fn hierarchies_over(labels: Vec<u32>) -> impl Iterator<Item = Hierarchy> {
    let full: u32 = (1u32 << labels.len()) - 1;
    level_splits(full).map(move |level_masks| Hierarchy {
        levels: level_masks
            .into_iter()
            .map(|m| mask_to_labels(m, &labels))
            .collect(),
    })
}

/// All hierarchies on members 1..=n. The single-rank hierarchy comes first;
/// after that the bottom rank shrinks through subsets in decreasing bitmask
/// order, with the remaining members stacked recursively above.
pub fn hierarchies(n: usize) -> Result<Box<dyn Iterator<Item = Hierarchy>>> {
    guard("hierarchy enumeration", n, MAX_HIERARCHY_MEMBERS)?;
    Ok(Box::new(hierarchies_over((1..=n as u32).collect())))
}

/// Set partitions of 1..=n with blocks in order of creation, which sorts
/// them by smallest label; labels ascend within each block.
fn set_partitions(n: usize) -> Vec<Vec<Vec<u32>>> {
    fn place(label: u32, n: u32, blocks: &mut Vec<Vec<u32>>, out: &mut Vec<Vec<Vec<u32>>>) {
        if label > n {
            out.push(blocks.clone());
            return;
        }
        for i in 0..blocks.len() {
            blocks[i].push(label);
            place(label + 1, n, blocks, out);
            blocks[i].pop();
        }
        blocks.push(vec![label]);
        place(label + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    place(1, n as u32, &mut Vec::new(), &mut out);
    out
}

/// Lazy cartesian product of hierarchies over each block, blocks already in
/// smallest-label order.
fn group_products(mut blocks: Vec<Vec<u32>>) -> Box<dyn Iterator<Item = Vec<Hierarchy>>> {
    let first = blocks.remove(0);
    if blocks.is_empty() {
        Box::new(hierarchies_over(first).map(|h| vec![h]))
    } else {
        Box::new(hierarchies_over(first).flat_map(move |h| {
            group_products(blocks.clone()).map(move |mut tail| {
                tail.insert(0, h.clone());
                tail
            })
        }))
    }
}

/// All hierarchical orderings on members 1..=n: every way to split the
/// members into groups and stack each group into a hierarchy. Group splits
/// run in the order produced by placing members 1, 2, ... into the first
/// existing group they can join or a new one.
pub fn orderings(n: usize) -> Result<Box<dyn Iterator<Item = HierarchicalOrdering>>> {
    guard("ordering enumeration", n, MAX_ORDERING_MEMBERS)?;
    Ok(Box::new(set_partitions(n).into_iter().flat_map(|blocks| {
        group_products(blocks).map(|groups| HierarchicalOrdering { groups })
    })))
}

/// All compositions of n, ordered so that coarser splits come first: the
/// pattern index runs 0..2^(n-1) and its bit n-1-j decides a cut after
/// member j.
pub fn compositions_of(n: usize) -> Result<Box<dyn Iterator<Item = Composition>>> {
    guard("composition enumeration", n, MAX_COMPOSITION_MEMBERS)?;
    let total = 1u32 << (n - 1);
    Ok(Box::new((0..total).map(move |pattern| {
        let mut parts = Vec::new();
        let mut run = 1usize;
        for j in 1..n {
            if pattern >> (n - 1 - j) & 1 == 1 {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        Composition { parts }
    })))
}

/// Nondecreasing selections of `m` items (repetition allowed) from a slice.
fn multisets<T: Clone>(options: &[T], m: usize) -> Vec<Vec<T>> {
    fn descend<T: Clone>(
        options: &[T],
        start: usize,
        left: usize,
        chosen: &mut Vec<T>,
        out: &mut Vec<Vec<T>>,
    ) {
        if left == 0 {
            out.push(chosen.clone());
            return;
        }
        for i in start..options.len() {
            chosen.push(options[i].clone());
            descend(options, i, left - 1, chosen, out);
            chosen.pop();
        }
    }
    let mut out = Vec::new();
    descend(options, 0, m, &mut Vec::new(), &mut out);
    out
}

/// All unlabeled orderings of n members: pick a partition of n for the
/// group sizes, then for each distinct size a multiset of compositions.
/// Partitions run largest-part-first, matching
/// [`partitions_of`](crate::explicit::partitions_of).
pub fn unlabeled_orderings(n: usize) -> Result<Box<dyn Iterator<Item = UnlabeledOrdering>>> {
    guard("unlabeled enumeration", n, MAX_UNLABELED_MEMBERS)?;
    Ok(Box::new(partitions_of(n).into_iter().flat_map(
        |partition| {
            let mut combos: Vec<Vec<Composition>> = vec![Vec::new()];
            for m in &partition {
                let options: Vec<Composition> = compositions_of(m.part)
                    .expect("parts fit the composition guard")
                    .collect();
                let choices = multisets(&options, m.count);
                let mut next = Vec::with_capacity(combos.len() * choices.len());
                for combo in &combos {
                    for choice in &choices {
                        let mut joined = combo.clone();
                        joined.extend(choice.iter().cloned());
                        next.push(joined);
                    }
                }
                combos = next;
            }
            combos
                .into_iter()
                .map(UnlabeledOrdering::new)
                .collect::<Vec<_>>()
        },
    )))
}

/// Uniform integer in [0, range) by rejection on 64-bit draws.
fn uniform_index(rng: &mut ChaCha8Rng, range: usize) -> usize {
    debug_assert!(range >= 1);
    let range = range as u64;
    let zone = u64::MAX - u64::MAX % range;
    loop {
        let v = rng.next_u64();
        if v < zone {
            return (v % range) as usize;
        }
    }
}

/// Uniform big integer in [0, bound) by masking the top word and rejecting
/// overshoots; at most half the draws are rejected.
fn uniform_below(rng: &mut ChaCha8Rng, bound: &Count) -> Count {
    debug_assert!(bound > &Count::from(0u32));
    let bits = bound.bits();
    let words = bits.div_ceil(64) as usize;
    let top_bits = bits - 64 * (words as u64 - 1);
    let mask = if top_bits == 64 {
        u64::MAX
    } else {
        (1u64 << top_bits) - 1
    };
    loop {
        let mut bytes = Vec::with_capacity(words * 8);
        for i in 0..words {
            let mut word = rng.next_u64();
            if i == words - 1 {
                word &= mask;
            }
            bytes.extend_from_slice(&word.to_le_bytes());
        }
        let candidate = Count::from_bytes_le(&bytes);
        if &candidate < bound {
            return candidate;
        }
    }
}

/// Draws hierarchies on n members uniformly at random, deterministically in
/// the seed.
///
/// Each draw picks the bottom rank's size k with probability proportional
/// to (ways to choose k members) times (hierarchies on the rest), picks the
/// k members by a partial shuffle, and repeats on the remainder. Exact
/// integer weights keep the distribution uniform over all hierarchies.
pub struct HierarchySampler {
    labels: Vec<u32>,
    bells: Vec<Count>,
    rng: ChaCha8Rng,
}

impl HierarchySampler {
    /// # Panics
    ///
    /// Panics if `n` is zero.
    pub fn new(n: usize, seed: u64) -> Self {
        assert!(n >= 1, "sampling needs at least one member");
        let mut table = SequenceTable::new(SequenceKind::OrderedBell);
        table.extend_to(n);
        Self {
            labels: (1..=n as u32).collect(),
            bells: table.values().to_vec(),
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Draws one hierarchy, uniform over all hierarchies on n members.
    pub fn sample(&mut self) -> Hierarchy {
        let mut pool = self.labels.clone();
        let mut levels = Vec::new();
        while !pool.is_empty() {
            let m = pool.len();
            let mut draw = uniform_below(&mut self.rng, &self.bells[m]);
            let mut k = 0usize;
            loop {
                k += 1;
                let weight = binomial(m, k) * &self.bells[m - k];
                if draw < weight {
                    break;
                }
                draw -= weight;
            }
            for i in 0..k {
                let j = i + uniform_index(&mut self.rng, m - i);
                pool.swap(i, j);
            }
            let mut level: Vec<u32> = pool.drain(..k).collect();
            level.sort_unstable();
            levels.push(level);
        }
        Hierarchy { levels }
    }
}

/// One uniform hierarchy on n members from a fresh sampler.
///
/// # Panics
///
/// Panics if `n` is zero.
pub fn sample_hierarchy(n: usize, seed: u64) -> Hierarchy {
    HierarchySampler::new(n, seed).sample()
}
