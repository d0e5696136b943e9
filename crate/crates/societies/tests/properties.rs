//! Property tests over the series algebra, table growth, sampling, and
//! the structure grammar.

use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;

use societies::enumerate::{sample_hierarchy, HierarchicalOrdering, Hierarchy};
use societies::{Flavor, Rational, SequenceKind, SequenceTable, Series};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6)
        .prop_map(|(num, den)| Rational::new(BigInt::from(num), BigInt::from(den)))
}

fn flavor() -> impl Strategy<Value = Flavor> {
    prop_oneof![Just(Flavor::Egf), Just(Flavor::Ogf)]
}

fn sequence_kind() -> impl Strategy<Value = SequenceKind> {
    prop_oneof![
        Just(SequenceKind::OrderedBell),
        Just(SequenceKind::Hierarchical),
        Just(SequenceKind::NestedHierarchical),
        Just(SequenceKind::Unlabeled),
        Just(SequenceKind::Compositions),
    ]
}

proptest! {
    #[test]
    fn inverting_twice_returns_the_series(
        flavor in flavor(),
        mut coeffs in proptest::collection::vec(small_rational(), 1..8),
    ) {
        coeffs[0] = Rational::one();
        let series = Series::new(flavor, coeffs);
        prop_assert_eq!(series.inv().inv(), series);
    }

    #[test]
    fn log_undoes_exp(
        flavor in flavor(),
        mut coeffs in proptest::collection::vec(small_rational(), 1..8),
    ) {
        coeffs[0] = Rational::new(BigInt::from(0), BigInt::from(1));
        let series = Series::new(flavor, coeffs);
        prop_assert_eq!(series.exp().log(), series);
    }

    #[test]
    fn multiplication_commutes(
        flavor in flavor(),
        a in proptest::collection::vec(small_rational(), 1..8),
        b in proptest::collection::vec(small_rational(), 1..8),
    ) {
        let a = Series::new(flavor, a);
        let b = Series::new(flavor, b);
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn tables_only_append(kind in sequence_kind(), first in 0usize..40, second in 0usize..40) {
        let mut table = SequenceTable::new(kind);
        table.extend_to(first);
        let before = table.values().to_vec();
        table.extend_to(second);
        prop_assert_eq!(&table.values()[..before.len()], &before[..]);
    }

    #[test]
    fn samples_are_complete_hierarchies(n in 1usize..=7, seed in any::<u64>()) {
        let hierarchy = sample_hierarchy(n, seed);
        prop_assert_eq!(hierarchy.member_count(), n);
        for label in 1..=n as u32 {
            prop_assert!(hierarchy.rank_of(label).is_some());
        }
    }

    #[test]
    fn parsing_arbitrary_text_never_panics(text in "\\PC{0,30}", n in 1usize..=6) {
        let _ = Hierarchy::parse(&text, n);
        let _ = HierarchicalOrdering::parse(&text, n);
    }

    #[test]
    fn accepted_text_parses_to_canonical_form(n in 1usize..=6, seed in any::<u64>()) {
        let hierarchy = sample_hierarchy(n, seed);
        let text = hierarchy.to_string();
        let reparsed = Hierarchy::parse(&text, n).expect("own text parses");
        prop_assert_eq!(&reparsed, &hierarchy);
        prop_assert_eq!(reparsed.to_string(), text);
    }
}
