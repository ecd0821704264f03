//! Randomized invariants beyond the acceptance gate: enclosure arithmetic,
//! remainder telescoping, iterate nesting, a grid oracle for measures, the
//! block-decomposition contract, and serialization round trips.

use proptest::prelude::*;

use cantorval::intervals::{Interval, IntervalUnion};
use cantorval::kakeya::kakeya_profile;
use cantorval::numeric::Enclosure;
use cantorval::series::{MMParams, Series, Tail};
use cantorval::subsums::{epsilon_decompose, initial_subsums, iterate};
use cantorval::Rational;

const CAP: usize = 1 << 20;

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

fn rational(numer: std::ops::RangeInclusive<i64>, denom_max: i64) -> impl Strategy<Value = Rational> {
    (numer, 1..=denom_max).prop_map(|(n, d)| r(n, d))
}

/// Series with exact remainders, spanning every built-in family.
fn series_pool() -> impl Strategy<Value = Series> {
    prop_oneof![
        Just(Series::gn()),
        Just(Series::ws()),
        Just(Series::paired_quarters()),
        (rational(1..=5, 4), (1i64..=5, 6i64..=9))
            .prop_map(|(first, (n, d))| Series::geometric(first, r(n, d)).unwrap()),
        (
            prop::collection::vec(1u32..=4, 1..=3),
            prop_oneof![
                (1u32..=4).prop_map(Tail::Constant),
                prop::collection::vec(1u32..=3, 1..=3).prop_map(Tail::Periodic),
            ],
        )
            .prop_map(|(prefix, tail)| Series::mm(MMParams::new(prefix, tail).unwrap())),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, failure_persistence: None, ..ProptestConfig::default() })]

    /// Interval arithmetic on enclosures preserves membership.
    #[test]
    fn enclosure_arithmetic_preserves_membership(
        x in rational(-20..=20, 8),
        y in rational(-20..=20, 8),
        wx in rational(0..=4, 8),
        wy in rational(0..=4, 8),
        c in rational(-6..=6, 4),
    ) {
        let ex = Enclosure::new(&x - &wx, &x + &wx).unwrap();
        let ey = Enclosure::new(&y - &wy, &y + &wy).unwrap();
        prop_assert!(ex.add(&ey).contains(&(&x + &y)));
        prop_assert!(ex.sub(&ey).contains(&(&x - &y)));
        prop_assert!(ex.scale(&c).contains(&(&x * &c)));
        // Widths compose additively under + and -, multiplicatively under
        // scaling.
        prop_assert_eq!(ex.add(&ey).width(), Rational::int(2) * (&wx + &wy));
        prop_assert_eq!(ex.sub(&ey).width(), Rational::int(2) * (&wx + &wy));
        prop_assert_eq!(ex.scale(&c).width(), c.abs() * (&wx + &wx));
    }

    /// Exact remainders telescope: r_(n-1) = a_n + r_n.
    #[test]
    fn remainders_telescope(s in series_pool(), n in 1u64..=40) {
        let lhs = s.remainder_exact(n - 1).unwrap();
        let rhs = s.term(n) + s.remainder_exact(n).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    /// Enclosure-valued remainders of a series without a closed-form tail
    /// stay consistent under telescoping and tighten with more unrolling.
    #[test]
    fn enclosed_remainders_telescope_and_tighten(
        prefix in prop::collection::vec(1u32..=3, 1..=3),
        step in 1u32..=3,
        n in 1u64..=12,
        unroll in 0usize..=6,
    ) {
        let s = Series::mm(MMParams::new(prefix, Tail::Arithmetic { step }).unwrap());
        let parent = s.remainder(n - 1, unroll);
        let child = Enclosure::exact(s.term(n)).add(&s.remainder(n, unroll));
        // Both enclose the same true value, so they must overlap.
        prop_assert!(parent.lo() <= child.hi() && child.lo() <= parent.hi());
        let finer = s.remainder(n, unroll + 1);
        prop_assert!(s.remainder(n, unroll).contains_enclosure(&finer));
    }

    /// Measure agrees with counting cells on a common refinement grid.
    #[test]
    fn measure_matches_grid_oracle(raw in prop::collection::vec((-40i64..=40, 0i64..=16), 0..8)) {
        let u = IntervalUnion::normalize(
            raw.into_iter()
                .map(|(a, len)| Interval::new(r(a, 8), r(a + len, 8)).unwrap())
                .collect(),
        );
        // Endpoints are multiples of 1/8, so every 1/8 cell is either fully
        // inside or fully outside; test the midpoint.
        let mut covered = 0i64;
        for j in -320..448i64 {
            if u.contains_point(&r(2 * j + 1, 16)) {
                covered += 1;
            }
        }
        prop_assert_eq!(u.measure(), r(covered, 8));
    }

    /// Block decomposition partitions the input: order preserved, gaps
    /// within a block at most epsilon, gaps between blocks larger.
    #[test]
    fn block_decomposition_is_a_partition(
        mut values in prop::collection::vec(rational(-30..=30, 6), 1..=24),
        eps in rational(0..=8, 4),
    ) {
        values.sort();
        values.dedup();
        let decomp = epsilon_decompose(&values, &eps).unwrap();
        let blocks = &decomp.blocks;
        let mut rebuilt = Vec::new();
        for b in blocks {
            let members = &values[b.start..b.start + b.len];
            for w in members.windows(2) {
                prop_assert!(&w[1] - &w[0] <= eps);
            }
            rebuilt.extend_from_slice(members);
        }
        prop_assert_eq!(&rebuilt, &values);
        for pair in blocks.windows(2) {
            let gap = &values[pair[1].start] - &values[pair[0].start + pair[0].len - 1];
            prop_assert!(gap > eps);
        }
    }

    /// Exact values survive a JSON round trip.
    #[test]
    fn serde_round_trips(
        v in rational(-99..=99, 97),
        a in rational(-9..=9, 5),
        len in rational(0..=9, 5),
        s in series_pool(),
    ) {
        let json = serde_json::to_string(&v).unwrap();
        prop_assert_eq!(serde_json::from_str::<Rational>(&json).unwrap(), v);

        let iv = Interval::new(a.clone(), &a + &len).unwrap();
        let json = serde_json::to_string(&iv).unwrap();
        prop_assert_eq!(serde_json::from_str::<Interval>(&json).unwrap(), iv);

        let json = serde_json::to_string(s.descriptor()).unwrap();
        let back: cantorval::Descriptor = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&back, s.descriptor());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    /// Iterates nest: each one contains the next, the subsums, and the
    /// achievement-set extremes; the longest component never grows.
    #[test]
    fn iterates_nest_and_norms_shrink(s in series_pool(), depth in 1u64..=8) {
        let mut prev: Option<IntervalUnion> = None;
        for n in 0..=depth {
            let cur = iterate(&s, n, CAP).unwrap();
            let f = initial_subsums(&s, n, CAP).unwrap();
            for v in f.values() {
                prop_assert!(cur.contains_point(v));
            }
            prop_assert!(cur.contains_point(&Rational::zero()));
            prop_assert!(cur.contains_point(&s.remainder_exact(0).unwrap()));
            if let Some(p) = &prev {
                prop_assert!(cur.is_subset_of(p));
                prop_assert!(cur.norm().unwrap() <= p.norm().unwrap());
            }
            prev = Some(cur);
        }
    }

    /// Tag sets partition the index range.
    #[test]
    fn kakeya_tags_partition_indices(s in series_pool(), horizon in 1u64..=60) {
        let profile = kakeya_profile(&s, horizon, 32).unwrap();
        let k = profile.k_indices();
        let kc = profile.kc_indices();
        prop_assert_eq!(k.len() + kc.len(), horizon as usize);
        let mut merged: Vec<u64> = k.into_iter().chain(kc).collect();
        merged.sort();
        let all: Vec<u64> = (1..=horizon).collect();
        prop_assert_eq!(merged, all);
    }

    /// Subsum extremes are the empty and full sums.
    #[test]
    fn subsum_extremes_are_empty_and_full_sums(s in series_pool(), n in 0u64..=10) {
        let f = initial_subsums(&s, n, CAP).unwrap();
        prop_assert_eq!(f.min(), &Rational::zero());
        prop_assert_eq!(f.max(), &s.partial_sum(n));
    }
}
