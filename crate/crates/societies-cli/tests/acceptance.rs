//! Release acceptance checklist. One test per criterion; each test is the
//! complete check for its criterion, with the time budget noted where it
//! matters. The library criteria run in-process; the command-line
//! criterion drives the built binary.

use std::collections::HashMap;
use std::process::Command;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use societies::enumerate::{
    compositions_of, hierarchies, orderings, unlabeled_orderings, Composition,
    HierarchicalOrdering, Hierarchy, HierarchySampler, UnlabeledOrdering,
};
use societies::sequences::{
    factorial, hierarchical, nested_hierarchical, ordered_bell, stirling2_row, unlabeled,
};
use societies::series::{
    hierarchical_egf, log_unlabeled_identity, ordered_bell_egf, rank_numerator_egf, unlabeled_ogf,
};
use societies::{asymptotics, explicit, rank, verify, Count, Flavor, Rational, Series};
use societies::{SequenceKind, SequenceTable};

fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn big(c: &Count) -> Rational {
    Rational::from_integer(BigInt::from(c.clone()))
}

/// Criterion 1: the published values of all three families, exactly.
#[test]
fn criterion_1_pinned_sequence_values() {
    let h: [u64; 10] = [1, 1, 4, 23, 173, 1602, 17575, 222497, 3188806, 50988405];
    let u: [u64; 10] = [1, 1, 3, 7, 18, 42, 104, 244, 585, 1373];
    let hh: [u64; 10] = [
        1, 1, 6, 52, 588, 8174, 134537, 2554647, 54909468, 1316675221,
    ];
    for n in 0..10 {
        assert_eq!(hierarchical(n), Count::from(h[n]), "H at n = {n}");
        assert_eq!(unlabeled(n), Count::from(u[n]), "U at n = {n}");
        assert_eq!(nested_hierarchical(n), Count::from(hh[n]), "HH at n = {n}");
    }
}

/// Criterion 2: the eleven six-member summands of the closed formula and
/// their total.
#[test]
fn criterion_2_six_member_termwise_expansion() {
    let expected: [u32; 11] = [4683, 3246, 3375, 1125, 1690, 2340, 260, 405, 405, 45, 1];
    let terms = explicit::summands(6);
    assert_eq!(terms.len(), expected.len());
    for (i, ((_, value), want)) in terms.iter().zip(expected.iter()).enumerate() {
        assert_eq!(value, &Count::from(*want), "summand {i}");
    }
    let total: Count = terms.into_iter().map(|(_, v)| v).sum();
    assert_eq!(total, Count::from(17575u32));
}

/// Criterion 3: three independent routes to the labeled counts for
/// n <= 7 and to the unlabeled counts for n <= 12. Budget: < 30 s.
#[test]
fn criterion_3_three_way_count_agreement() {
    for n in 1..=7 {
        let from_recurrence = hierarchical(n);
        assert_eq!(
            from_recurrence,
            explicit::hierarchical_explicit(n),
            "formula at n = {n}"
        );
        assert_eq!(
            from_recurrence,
            Count::from(orderings(n).unwrap().count()),
            "listing at n = {n}"
        );
    }
    let from_product = unlabeled_ogf(12).sequence_values();
    for (n, coefficient) in from_product.iter().enumerate().skip(1) {
        let from_recurrence = unlabeled(n);
        assert_eq!(coefficient, &big(&from_recurrence), "product at n = {n}");
        assert_eq!(
            from_recurrence,
            Count::from(unlabeled_orderings(n).unwrap().count()),
            "listing at n = {n}"
        );
    }
}

/// Criterion 4: the generating-function identities, coefficient by
/// coefficient in exact rationals. Budget: < 5 s.
#[test]
fn criterion_4_series_identities() {
    // The labeled e.g.f. times (2 - e^x) is exactly 1.
    let order = 20;
    let two_minus_ex = Series::constant(Flavor::Egf, rational(2, 1), order)
        .sub(&Series::exp_x(Flavor::Egf, order));
    let product = ordered_bell_egf(order).mul(&two_minus_ex);
    assert_eq!(
        product,
        Series::constant(Flavor::Egf, rational(1, 1), order)
    );

    // The composed e.g.f. solves H'(x) (2 - e^x)^2 = e^x H(x).
    let lhs = hierarchical_egf(order + 1)
        .derivative()
        .mul(&two_minus_ex)
        .mul(&two_minus_ex);
    let rhs = Series::exp_x(Flavor::Egf, order).mul(&hierarchical_egf(order + 1).truncate(order));
    assert_eq!(lhs, rhs);

    // log of the shape product equals its divisor-sum closed form, and
    // exponentiating returns the product.
    let closed_form = log_unlabeled_identity(order);
    assert_eq!(unlabeled_ogf(order).log(), closed_form);
    assert_eq!(closed_form.exp(), unlabeled_ogf(order));

    // The rank-total e.g.f. reproduces the doubled rank totals to 15.
    let values = rank_numerator_egf(15).sequence_values();
    let doubled = rank::rank_sum_values(15);
    for (n, value) in values.iter().enumerate() {
        assert_eq!(&(value * rational(2, 1)), &big(&doubled[n]), "n = {n}");
    }
}

/// Criterion 5: asymptotic estimates converge, with frozen error bounds
/// at the largest tested sizes and the growth constant printed to the
/// published digits. Budget: < 60 s (dominated by the labeled table fill
/// to n = 2000).
#[test]
fn criterion_5_asymptotic_convergence() {
    // Labeled family: error shrinks 100 -> 500 -> 2000, quarter rule at
    // n = 1000, frozen bound at n = 1000.
    let mut h_table = SequenceTable::new(SequenceKind::Hierarchical);
    h_table.extend_to(2000);
    let h_gap = |n: usize| {
        (asymptotics::hierarchical_estimate(n).ratio_to_exact(h_table.get(n).unwrap()) - 1.0).abs()
    };
    assert!(
        h_gap(500) < h_gap(100),
        "500: {}, 100: {}",
        h_gap(500),
        h_gap(100)
    );
    assert!(
        h_gap(2000) < h_gap(500),
        "2000: {}, 500: {}",
        h_gap(2000),
        h_gap(500)
    );
    assert!(
        h_gap(1000) < h_gap(250),
        "1000: {}, 250: {}",
        h_gap(1000),
        h_gap(250)
    );
    assert!(
        h_gap(1000) < 0.006,
        "frozen bound at n = 1000: {}",
        h_gap(1000)
    );

    // Log form: the residual against n ln n - n(1 + ln ln 2) + sqrt(2n/ln 2)
    // stays within a fitted multiple of ln n; the fit is frozen below 1.7.
    let ln_ln2 = std::f64::consts::LN_2.ln();
    let mut fitted = 0.0f64;
    for n in 2..=2000 {
        let log_exact = asymptotics::log_count(h_table.get(n).unwrap());
        let nf = n as f64;
        let leading =
            nf * nf.ln() - nf * (1.0 + ln_ln2) + (2.0 * nf / std::f64::consts::LN_2).sqrt();
        fitted = fitted.max((log_exact - leading).abs() / nf.ln());
    }
    assert!(fitted < 1.7, "fitted log-residual multiple: {fitted}");

    // Hierarchy count: at n = 50 the estimate is within 1e-8 and still
    // strictly better than at a quarter of that size.
    let b_gap = |n: usize| {
        (asymptotics::ordered_bell_estimate(n).ratio_to_exact(&ordered_bell(n)) - 1.0).abs()
    };
    assert!(b_gap(50) < 1e-8, "n = 50: {}", b_gap(50));
    assert!(
        b_gap(50) < b_gap(12),
        "50: {}, 12: {}",
        b_gap(50),
        b_gap(12)
    );

    // Unlabeled family: quarter rule at n = 1600 plus the frozen bound.
    let mut u_table = SequenceTable::new(SequenceKind::Unlabeled);
    u_table.extend_to(1600);
    let u_gap = |n: usize| {
        (asymptotics::unlabeled_estimate(n).ratio_to_exact(u_table.get(n).unwrap()) - 1.0).abs()
    };
    assert!(
        u_gap(1600) < u_gap(400),
        "1600: {}, 400: {}",
        u_gap(1600),
        u_gap(400)
    );
    assert!(
        u_gap(1600) < 0.05,
        "frozen bound at n = 1600: {}",
        u_gap(1600)
    );

    // Rank totals: quarter rule at n = 100 plus the frozen bound.
    let r_gap = |n: usize| {
        (asymptotics::rank_sum_estimate(n).ratio_to_exact(&rank::rank_sum(n)) - 1.0).abs()
    };
    assert!(
        r_gap(100) < r_gap(25),
        "100: {}, 25: {}",
        r_gap(100),
        r_gap(25)
    );
    assert!(r_gap(100) < 0.02, "frozen bound at n = 100: {}", r_gap(100));

    // The growth constant prints to the published digits.
    assert_eq!(
        format!("{:.2}", asymptotics::hierarchical_growth_constant()),
        "1038.97"
    );
}

/// Criterion 6: exact rank statistics, the mean-rank limit slope, and the
/// small pinned distributions. Budget: < 10 s.
#[test]
fn criterion_6_rank_statistics() {
    for n in 1..=200 {
        assert_eq!(
            rank::unlabeled_rank_distribution(n).mean(),
            rational(n as i64 + 3, 4),
            "unlabeled mean at n = {n}"
        );
    }

    let slope = (rank::labeled_average_rank(500) / rational(500, 1))
        .to_f64()
        .unwrap();
    assert!((slope - 0.36067).abs() < 0.02, "a_500/500 = {slope}");

    // Exhaustive check of the labeled distribution at n = 6.
    let dist = rank::labeled_rank_distribution(6);
    let mut counts = [0u64; 6];
    let mut total = 0u64;
    for h in hierarchies(6).unwrap() {
        counts[h.rank_of(1).unwrap() - 1] += 1;
        total += 1;
    }
    for r in 1..=6 {
        assert_eq!(
            dist.probability(r),
            &rational(counts[r - 1] as i64, total as i64),
            "rank {r}"
        );
    }

    let labeled = rank::labeled_rank_distribution(3);
    assert_eq!(
        labeled.probabilities(),
        &[rational(6, 13), rational(5, 13), rational(2, 13)]
    );
    let unlabeled = rank::unlabeled_rank_distribution(3);
    assert_eq!(
        unlabeled.probabilities(),
        &[rational(7, 12), rational(1, 3), rational(1, 12)]
    );
}

/// Criterion 7: structural properties: the height decomposition, its
/// sum identity, seeded sampler uniformity, and the format/parse
/// round-trip. Budget: < 60 s.
#[test]
fn criterion_7_structural_properties() {
    // Hierarchies of height h number h! S(n,h), for n <= 7.
    for n in 1..=7 {
        let mut by_height = vec![Count::zero(); n + 1];
        for h in hierarchies(n).unwrap() {
            by_height[h.height()] += 1u32;
        }
        let row = stirling2_row(n);
        for h in 1..=n {
            assert_eq!(by_height[h], factorial(h) * &row[h], "n = {n}, height {h}");
        }
    }

    // Summing the decomposition recovers the hierarchy count for n <= 12.
    for n in 1..=12 {
        let row = stirling2_row(n);
        let total: Count = (1..=n).map(|h| factorial(h) * &row[h]).sum();
        assert_eq!(total, ordered_bell(n), "n = {n}");
    }

    // Chi-square uniformity over the 13 three-member hierarchies, seeded.
    let samples = 100_000usize;
    let mut sampler = HierarchySampler::new(3, verify::DEFAULT_SEED);
    let mut counts: HashMap<String, usize> = HashMap::new();
    for _ in 0..samples {
        *counts.entry(sampler.sample().to_string()).or_default() += 1;
    }
    assert_eq!(counts.len(), 13, "not every hierarchy appeared");
    let expected = samples as f64 / 13.0;
    let statistic: f64 = counts
        .values()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum();
    // 0.001 significance limit for 12 degrees of freedom.
    assert!(statistic < 32.909, "chi-square statistic {statistic}");

    // Text round-trip is the identity on every structure for n <= 6.
    for n in 1..=6 {
        for h in hierarchies(n).unwrap() {
            assert_eq!(Hierarchy::parse(&h.to_string(), n).unwrap(), h);
        }
        for o in orderings(n).unwrap() {
            assert_eq!(HierarchicalOrdering::parse(&o.to_string(), n).unwrap(), o);
        }
        for c in compositions_of(n).unwrap() {
            assert_eq!(Composition::parse(&c.to_string(), n).unwrap(), c);
        }
        for s in unlabeled_orderings(n).unwrap() {
            assert_eq!(UnlabeledOrdering::parse(&s.to_string(), n).unwrap(), s);
        }
    }
}

/// Criterion 8: the command-line contract: byte-exact b-file output,
/// verify full passing, and fault injection failing. Budget: < 60 s.
#[test]
fn criterion_8_command_line_contract() {
    let binary = env!("CARGO_BIN_EXE_societies");

    let seq = Command::new(binary)
        .args(["seq", "H", "0", "9", "bfile"])
        .output()
        .expect("binary runs");
    assert!(seq.status.success());
    assert_eq!(
        seq.stdout,
        b"0 1\n1 1\n2 4\n3 23\n4 173\n5 1602\n6 17575\n7 222497\n8 3188806\n9 50988405\n"
    );
    assert!(seq.stderr.is_empty());

    let full = Command::new(binary)
        .args(["verify", "full"])
        .output()
        .expect("binary runs");
    assert!(
        full.status.success(),
        "verify full failed:\n{}",
        String::from_utf8_lossy(&full.stdout)
    );
    let report = String::from_utf8(full.stdout).unwrap();
    assert!(report.contains("explicit-six-member-terms"));
    assert!(!report.contains("FAIL"));

    let faulted = Command::new(binary)
        .args(["verify", "quick", "--inject-fault"])
        .output()
        .expect("binary runs");
    assert!(
        !faulted.status.success(),
        "fault injection must fail the run"
    );
    assert!(String::from_utf8_lossy(&faulted.stdout).contains("FAIL"));
}

/// The probabilities criterion 6 pins must also sum to one; a cheap
/// guard that the pinned values were not transcribed against a different
/// normalization.
#[test]
fn pinned_distributions_are_normalized() {
    assert_eq!(rank::labeled_rank_distribution(3).total(), Rational::one());
    assert_eq!(
        rank::unlabeled_rank_distribution(3).total(),
        Rational::one()
    );
}
