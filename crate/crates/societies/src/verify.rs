//! Self-verification suite: runs every cross-module identity and oracle
//! comparison and reports them as named pass/fail checks.
//!
//! The library computes most quantities along at least two independent
//! routes (recurrence vs series expansion vs explicit formula vs brute
//! enumeration); this module is where the routes are held against each
//! other. [`run`] executes the suite at a chosen [`Level`] and returns a
//! [`Report`]; nothing here panics on mismatch, so a caller can print the
//! whole report before deciding its exit status.
//!
//! `Options::inject_fault` deliberately corrupts one value in the table
//! used by the three-way count comparison. It exists so that callers (and
//! tests) can confirm the suite actually detects a broken build instead of
//! rubber-stamping it.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::sequences::{self, Count, SequenceKind, SequenceTable};
use crate::series::{self, Rational};
use crate::{asymptotics, enumerate, explicit, rank};

/// How much work the suite performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    /// Small limits everywhere; a couple of seconds.
    Quick,
    /// Larger limits plus the six-member termwise expansion and the
    /// sampled rank-distribution comparison.
    Full,
}

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 17;

/// Knobs for [`run`].
#[derive(Debug, Clone)]
pub struct Options {
    pub level: Level,
    /// Seed for the sampling checks; fixed default keeps runs reproducible.
    pub seed: u64,
    /// Corrupt one table entry to prove the suite can fail.
    pub inject_fault: bool,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            level: Level::Quick,
            seed: DEFAULT_SEED,
            inject_fault: false,
        }
    }
}

/// Outcome of one named check.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// One line of supporting numbers or the first mismatch found.
    pub detail: String,
}

/// All check outcomes of one run.
#[derive(Debug, Clone)]
pub struct Report {
    checks: Vec<Check>,
}

impl Report {
    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    /// True when every check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn big(c: &Count) -> Rational {
    Rational::from_integer(BigInt::from(c.clone()))
}

/// Runs the suite and reports each check.
pub fn run(options: &Options) -> Report {
    let full = options.level == Level::Full;
    let mut checks = Vec::new();
    let mut push = |name: &'static str, outcome: (bool, String)| {
        checks.push(Check {
            name,
            passed: outcome.0,
            detail: outcome.1,
        });
    };

    push("ordered-bell-series", ordered_bell_series());
    push("height-sum-identity", height_sum_identity());
    push(
        "hierarchical-three-way",
        hierarchical_three_way(options.inject_fault, if full { 7 } else { 6 }),
    );
    push("hierarchical-series", hierarchical_series());
    push("nested-series", nested_series());
    push("unlabeled-product", unlabeled_product());
    push("unlabeled-log-identity", unlabeled_log_identity());
    push("hierarchy-count", hierarchy_count(if full { 7 } else { 6 }));
    push(
        "composition-count",
        composition_count(if full { 16 } else { 12 }),
    );
    push(
        "unlabeled-count",
        unlabeled_count(if full { 12 } else { 8 }),
    );
    push(
        "height-decomposition",
        height_decomposition(if full { 7 } else { 6 }),
    );
    push(
        "rank-distribution-oracle",
        rank_distribution_oracle(if full { 6 } else { 5 }),
    );
    push(
        "rank-mean-identities",
        rank_mean_identities(if full { 200 } else { 50 }),
    );
    push("rank-numerator-series", rank_numerator_series());
    push("rank-model-comparison", rank_model_comparison());
    push("ordered-bell-asymptotic", ordered_bell_asymptotic());
    push(
        "hierarchical-asymptotic",
        hierarchical_asymptotic(if full { 400 } else { 100 }),
    );
    push(
        "unlabeled-asymptotic",
        unlabeled_asymptotic(if full { 400 } else { 100 }),
    );
    push("rank-sum-asymptotic", rank_sum_asymptotic());
    push("saddle-point", saddle_point_consistency());
    push("sampler-chi-square", sampler_chi_square(options.seed));
    push(
        "sampler-first-block",
        sampler_first_block(options.seed.wrapping_add(1)),
    );
    push(
        "structure-round-trip",
        structure_round_trip(if full { 6 } else { 4 }),
    );
    push("label-erasure", label_erasure(if full { 5 } else { 4 }));
    if full {
        push("explicit-six-member-terms", explicit_six_member_terms());
        push(
            "sampler-element-rank",
            sampler_element_rank(options.seed.wrapping_add(2)),
        );
    }

    Report { checks }
}

fn ordered_bell_series() -> (bool, String) {
    let values = series::ordered_bell_egf(15).sequence_values();
    for (n, value) in values.iter().enumerate() {
        if value != &big(&sequences::ordered_bell(n)) {
            return (false, format!("series and recurrence disagree at n = {n}"));
        }
    }
    (
        true,
        "1/(2 - e^x) matches the recurrence for n <= 15".into(),
    )
}

fn height_sum_identity() -> (bool, String) {
    for n in 1..=12 {
        let row = sequences::stirling2_row(n);
        let total: Count = (1..=n).map(|h| sequences::factorial(h) * &row[h]).sum();
        if total != sequences::ordered_bell(n) {
            return (false, format!("height sum misses the count at n = {n}"));
        }
    }
    (
        true,
        "sum of h! S(n,h) equals the hierarchy count for n <= 12".into(),
    )
}

fn hierarchical_three_way(inject_fault: bool, enum_limit: usize) -> (bool, String) {
    let mut table = SequenceTable::new(SequenceKind::Hierarchical);
    table.extend_to(12);
    let mut values = table.values().to_vec();
    if inject_fault {
        values[6] += 1u32;
    }
    for (n, value) in values.iter().enumerate().skip(1) {
        if value != &explicit::hierarchical_explicit(n) {
            return (
                false,
                format!("recurrence and explicit formula disagree at n = {n}"),
            );
        }
    }
    for (n, value) in values.iter().enumerate().take(enum_limit + 1).skip(1) {
        let listed = enumerate::orderings(n).expect("within guard").count();
        if &Count::from(listed) != value {
            return (
                false,
                format!("enumeration found {listed} orderings at n = {n}"),
            );
        }
    }
    (
        true,
        format!("recurrence = explicit formula for n <= 12, = enumeration for n <= {enum_limit}"),
    )
}

fn hierarchical_series() -> (bool, String) {
    let values = series::hierarchical_egf(15).sequence_values();
    for (n, value) in values.iter().enumerate() {
        if value != &big(&sequences::hierarchical(n)) {
            return (false, format!("series and recurrence disagree at n = {n}"));
        }
    }
    (true, "exp(B - 1) matches the recurrence for n <= 15".into())
}

fn nested_series() -> (bool, String) {
    let values = series::nested_hierarchical_egf(12).sequence_values();
    for (n, value) in values.iter().enumerate() {
        if value != &big(&sequences::nested_hierarchical(n)) {
            return (false, format!("series and recurrence disagree at n = {n}"));
        }
    }
    (
        true,
        "two further exponentials match the recurrence for n <= 12".into(),
    )
}

fn unlabeled_product() -> (bool, String) {
    let values = series::unlabeled_ogf(20).sequence_values();
    for (n, value) in values.iter().enumerate() {
        if value != &big(&sequences::unlabeled(n)) {
            return (false, format!("product and recurrence disagree at n = {n}"));
        }
    }
    (
        true,
        "the shape product matches the recurrence for n <= 20".into(),
    )
}

fn unlabeled_log_identity() -> (bool, String) {
    let order = 20;
    let ident = series::log_unlabeled_identity(order);
    for n in 1..=order {
        let divisor_form =
            Rational::new(BigInt::from(sequences::unlabeled_alpha(n)), BigInt::from(n));
        if ident.coeff(n) != &divisor_form {
            return (
                false,
                format!("closed form misses the divisor sum at n = {n}"),
            );
        }
    }
    if ident.exp() != series::unlabeled_ogf(order) {
        return (false, "exp of the closed form is not the product".into());
    }
    (
        true,
        format!("log coefficients and exp round-trip agree to order {order}"),
    )
}

fn hierarchy_count(limit: usize) -> (bool, String) {
    for n in 1..=limit {
        let listed = enumerate::hierarchies(n).expect("within guard").count();
        if Count::from(listed) != sequences::ordered_bell(n) {
            return (false, format!("found {listed} hierarchies at n = {n}"));
        }
    }
    (
        true,
        format!("hierarchy streams have the counted lengths for n <= {limit}"),
    )
}

fn composition_count(limit: usize) -> (bool, String) {
    for n in 1..=limit {
        let listed = enumerate::compositions_of(n).expect("within guard").count();
        if Count::from(listed) != sequences::compositions(n) {
            return (false, format!("found {listed} compositions at n = {n}"));
        }
    }
    (
        true,
        format!("composition streams have length 2^(n-1) for n <= {limit}"),
    )
}

fn unlabeled_count(limit: usize) -> (bool, String) {
    for n in 1..=limit {
        let listed = enumerate::unlabeled_orderings(n)
            .expect("within guard")
            .count();
        if Count::from(listed) != sequences::unlabeled(n) {
            return (false, format!("found {listed} shapes at n = {n}"));
        }
    }
    (
        true,
        format!("shape streams have the counted lengths for n <= {limit}"),
    )
}

fn height_decomposition(limit: usize) -> (bool, String) {
    for n in 1..=limit {
        let mut by_height = vec![Count::from(0u32); n + 1];
        for h in enumerate::hierarchies(n).expect("within guard") {
            by_height[h.height()] += 1u32;
        }
        let row = sequences::stirling2_row(n);
        for h in 1..=n {
            if by_height[h] != sequences::factorial(h) * &row[h] {
                return (false, format!("height {h} bucket is off at n = {n}"));
            }
        }
    }
    (
        true,
        format!("height-h hierarchies number h! S(n,h) for n <= {limit}"),
    )
}

fn rank_distribution_oracle(limit: usize) -> (bool, String) {
    for n in 1..=limit {
        let dist = rank::labeled_rank_distribution(n);
        let mut counts = vec![0u64; n];
        let mut total = 0u64;
        for h in enumerate::hierarchies(n).expect("within guard") {
            counts[h.rank_of(1).expect("member 1 present") - 1] += 1;
            total += 1;
        }
        for r in 1..=n {
            let observed = Rational::new(BigInt::from(counts[r - 1]), BigInt::from(total));
            if dist.probability(r) != &observed {
                return (false, format!("rank {r} probability is off at n = {n}"));
            }
        }
    }
    for n in 1..=50 {
        for dist in [
            rank::labeled_rank_distribution(n),
            rank::unlabeled_rank_distribution(n),
        ] {
            if dist.total() != Rational::one() {
                return (false, format!("probabilities do not sum to one at n = {n}"));
            }
            if dist.probabilities().windows(2).any(|w| w[0] < w[1]) {
                return (
                    false,
                    format!("probabilities increase with rank at n = {n}"),
                );
            }
        }
    }
    (
        true,
        format!(
            "matches exhaustive ranks for n <= {limit}; sums to one, non-increasing for n <= 50"
        ),
    )
}

fn rank_mean_identities(unlabeled_limit: usize) -> (bool, String) {
    for n in 1..=30 {
        if rank::labeled_average_rank(n) != rank::labeled_rank_distribution(n).mean() {
            return (false, format!("labeled mean routes disagree at n = {n}"));
        }
    }
    for n in 1..=unlabeled_limit {
        if rank::unlabeled_rank_distribution(n).mean() != rank::unlabeled_average_rank(n) {
            return (false, format!("unlabeled mean is not (n+3)/4 at n = {n}"));
        }
    }
    (
        true,
        format!("labeled mean identity to n <= 30; unlabeled mean exactly (n+3)/4 to n <= {unlabeled_limit}"),
    )
}

fn rank_numerator_series() -> (bool, String) {
    let values = series::rank_numerator_egf(12).sequence_values();
    for (n, value) in values.iter().enumerate().skip(1) {
        if value != &big(&rank::rank_sum(n)) {
            return (false, format!("series and tail sums disagree at n = {n}"));
        }
    }
    (
        true,
        "rank-total e.g.f. matches the tail-sum route for n <= 12".into(),
    )
}

fn rank_model_comparison() -> (bool, String) {
    for n in 4..=50 {
        if rank::labeled_average_rank(n) <= rank::unlabeled_average_rank(n) {
            return (
                false,
                format!("labeled mean fails to exceed (n+3)/4 at n = {n}"),
            );
        }
    }
    (
        true,
        "labeled mean exceeds the unlabeled mean for 4 <= n <= 50".into(),
    )
}

fn ordered_bell_asymptotic() -> (bool, String) {
    let gap = |n: usize| {
        (asymptotics::ordered_bell_estimate(n).ratio_to_exact(&sequences::ordered_bell(n)) - 1.0)
            .abs()
    };
    let at_50 = gap(50);
    if at_50 >= 1e-8 {
        return (false, format!("|ratio - 1| at n = 50 is {at_50:.3e}"));
    }
    if gap(30) >= gap(10) {
        return (
            false,
            "error fails to shrink between n = 10 and n = 30".into(),
        );
    }
    (
        true,
        format!("|ratio - 1| = {at_50:.1e} at n = 50 and shrinking"),
    )
}

fn hierarchical_asymptotic(top: usize) -> (bool, String) {
    let gap = |n: usize| {
        (asymptotics::hierarchical_estimate(n).ratio_to_exact(&sequences::hierarchical(n)) - 1.0)
            .abs()
    };
    let coarse = gap(top / 4);
    let fine = gap(top);
    if fine >= coarse {
        return (
            false,
            format!(
                "error grew from {coarse:.4} (n = {}) to {fine:.4} (n = {top})",
                top / 4
            ),
        );
    }
    if fine >= 0.02 {
        return (false, format!("|ratio - 1| at n = {top} is {fine:.4}"));
    }
    (
        true,
        format!("|ratio - 1| falls {coarse:.4} -> {fine:.4} toward n = {top}"),
    )
}

fn unlabeled_asymptotic(top: usize) -> (bool, String) {
    let gap = |n: usize| {
        (asymptotics::unlabeled_estimate(n).ratio_to_exact(&sequences::unlabeled(n)) - 1.0).abs()
    };
    let coarse = gap(top / 4);
    let fine = gap(top);
    if fine >= coarse {
        return (
            false,
            format!(
                "error grew from {coarse:.4} (n = {}) to {fine:.4} (n = {top})",
                top / 4
            ),
        );
    }
    if fine >= 0.15 {
        return (false, format!("|ratio - 1| at n = {top} is {fine:.4}"));
    }
    (
        true,
        format!("|ratio - 1| falls {coarse:.4} -> {fine:.4} toward n = {top}"),
    )
}

fn rank_sum_asymptotic() -> (bool, String) {
    let gap = |n: usize| {
        (asymptotics::rank_sum_estimate(n).ratio_to_exact(&rank::rank_sum(n)) - 1.0).abs()
    };
    let at_25 = gap(25);
    let at_100 = gap(100);
    if at_100 >= at_25 {
        return (false, format!("error grew from {at_25:.4} to {at_100:.4}"));
    }
    if at_100 >= 0.02 {
        return (false, format!("|ratio - 1| at n = 100 is {at_100:.4}"));
    }
    (
        true,
        format!("|ratio - 1| falls {at_25:.4} -> {at_100:.4} toward n = 100"),
    )
}

fn saddle_point_consistency() -> (bool, String) {
    let r10 = match asymptotics::saddle_point(10) {
        Ok(p) => p,
        Err(e) => return (false, format!("solver failed at n = 10: {e}")),
    };
    if (r10.radius - 0.397858885527636).abs() >= 1e-9 {
        return (
            false,
            format!("n = 10 radius drifted to {:.15}", r10.radius),
        );
    }
    let r1000 = match asymptotics::saddle_point(1000) {
        Ok(p) => p,
        Err(e) => return (false, format!("solver failed at n = 1000: {e}")),
    };
    let drift = (r1000.radius - r1000.expansion).abs();
    if drift >= 1e-4 {
        return (
            false,
            format!("expansion misses the root by {drift:.2e} at n = 1000"),
        );
    }
    (
        true,
        format!("n = 10 radius pinned; expansion within {drift:.1e} at n = 1000"),
    )
}

fn sampler_chi_square(seed: u64) -> (bool, String) {
    let samples = 100_000usize;
    let mut sampler = enumerate::HierarchySampler::new(3, seed);
    let mut counts = std::collections::HashMap::<String, usize>::new();
    for _ in 0..samples {
        *counts.entry(sampler.sample().to_string()).or_default() += 1;
    }
    if counts.len() != 13 {
        return (
            false,
            format!("only {} of 13 outcomes appeared", counts.len()),
        );
    }
    let expected = samples as f64 / 13.0;
    let statistic: f64 = counts
        .values()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum();
    // 0.001 significance limit for 12 degrees of freedom.
    if statistic >= 32.909 {
        return (
            false,
            format!("chi-square statistic {statistic:.2} over the 32.909 limit"),
        );
    }
    (
        true,
        format!("chi-square statistic {statistic:.2} on 12 degrees of freedom"),
    )
}

fn sampler_first_block(seed: u64) -> (bool, String) {
    let samples = 100_000usize;
    let mut sampler = enumerate::HierarchySampler::new(3, seed);
    let mut sizes = [0usize; 4];
    for _ in 0..samples {
        sizes[sampler.sample().levels()[0].len()] += 1;
    }
    // Bottom-rank size k happens with probability C(3,k) B_{3-k} / 13.
    let probabilities = [9.0 / 13.0, 3.0 / 13.0, 1.0 / 13.0];
    let mut worst = 0.0f64;
    for (k, p) in probabilities.iter().enumerate() {
        let sigma = (samples as f64 * p * (1.0 - p)).sqrt();
        let z = (sizes[k + 1] as f64 - samples as f64 * p).abs() / sigma;
        worst = worst.max(z);
    }
    if worst >= 4.0 {
        return (
            false,
            format!("a block-size frequency sits {worst:.2} sigma out"),
        );
    }
    (
        true,
        format!("bottom-rank sizes within {worst:.2} sigma of 9:3:1 over 13"),
    )
}

fn sampler_element_rank(seed: u64) -> (bool, String) {
    let samples = 100_000usize;
    let n = 6;
    let mut sampler = enumerate::HierarchySampler::new(n, seed);
    let mut counts = vec![0usize; n + 1];
    for i in 0..samples {
        let member = (i % n) as u32 + 1;
        counts[sampler.sample().rank_of(member).expect("member present")] += 1;
    }
    let dist = rank::labeled_rank_distribution(n);
    let mut worst = 0.0f64;
    for (r, &observed) in counts.iter().enumerate().skip(1) {
        let p = dist.probability(r).to_f64().expect("probability fits");
        let sigma = (samples as f64 * p * (1.0 - p)).sqrt();
        let z = (observed as f64 - samples as f64 * p).abs() / sigma;
        worst = worst.max(z);
    }
    if worst >= 4.0 {
        return (false, format!("a rank frequency sits {worst:.2} sigma out"));
    }
    (
        true,
        format!("sampled ranks within {worst:.2} sigma of the exact distribution"),
    )
}

fn structure_round_trip(limit: usize) -> (bool, String) {
    for n in 1..=limit {
        for h in enumerate::hierarchies(n).expect("within guard") {
            if enumerate::Hierarchy::parse(&h.to_string(), n).as_ref() != Ok(&h) {
                return (false, format!("hierarchy round-trip broke at n = {n}"));
            }
        }
        for o in enumerate::orderings(n).expect("within guard") {
            if enumerate::HierarchicalOrdering::parse(&o.to_string(), n).as_ref() != Ok(&o) {
                return (false, format!("ordering round-trip broke at n = {n}"));
            }
        }
        for c in enumerate::compositions_of(n).expect("within guard") {
            if enumerate::Composition::parse(&c.to_string(), n).as_ref() != Ok(&c) {
                return (false, format!("composition round-trip broke at n = {n}"));
            }
        }
        for u in enumerate::unlabeled_orderings(n).expect("within guard") {
            if enumerate::UnlabeledOrdering::parse(&u.to_string(), n).as_ref() != Ok(&u) {
                return (false, format!("shape round-trip broke at n = {n}"));
            }
        }
    }
    (
        true,
        format!("format/parse is the identity on every structure for n <= {limit}"),
    )
}

fn label_erasure(limit: usize) -> (bool, String) {
    use std::collections::HashSet;
    for n in 1..=limit {
        let shapes: HashSet<enumerate::UnlabeledOrdering> = enumerate::orderings(n)
            .expect("within guard")
            .map(|o| o.shape())
            .collect();
        let listed: HashSet<enumerate::UnlabeledOrdering> = enumerate::unlabeled_orderings(n)
            .expect("within guard")
            .collect();
        if shapes != listed {
            return (
                false,
                format!("erased orderings miss some shapes at n = {n}"),
            );
        }
    }
    (
        true,
        format!("erasing labels reaches exactly the listed shapes for n <= {limit}"),
    )
}

fn explicit_six_member_terms() -> (bool, String) {
    let expected: [u32; 11] = [4683, 3246, 3375, 1125, 1690, 2340, 260, 405, 405, 45, 1];
    let terms = explicit::summands(6);
    if terms.len() != expected.len() {
        return (false, format!("expected 11 terms, found {}", terms.len()));
    }
    for (i, ((_, value), want)) in terms.iter().zip(expected.iter()).enumerate() {
        if value != &Count::from(*want) {
            return (false, format!("term {i} is {value}, expected {want}"));
        }
    }
    let total: Count = terms.into_iter().map(|(_, v)| v).sum();
    if total != Count::from(17575u32) {
        return (false, format!("terms total {total}, expected 17575"));
    }
    (
        true,
        "all eleven six-member terms and their 17575 total agree".into(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn quick_suite_passes_with_many_named_checks() {
        let report = run(&Options::default());
        for check in report.checks() {
            assert!(check.passed, "{} failed: {}", check.name, check.detail);
        }
        assert!(report.checks().len() >= 10);
        let names: HashSet<&str> = report.checks().iter().map(|c| c.name).collect();
        assert_eq!(names.len(), report.checks().len(), "duplicate check names");
        assert!(report.passed());
    }

    #[test]
    fn fault_injection_is_caught() {
        let report = run(&Options {
            inject_fault: true,
            ..Options::default()
        });
        assert!(!report.passed());
        let failed: Vec<&str> = report.failures().map(|c| c.name).collect();
        assert!(
            failed.contains(&"hierarchical-three-way"),
            "failed: {failed:?}"
        );
    }
}
