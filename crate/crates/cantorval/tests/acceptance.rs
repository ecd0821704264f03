//! Acceptance gate: one test per criterion, each printing a single
//! PASS line (visible with `--nocapture`) and enforcing its stated time
//! budget. Every comparison is exact rational arithmetic; there are no
//! tolerances anywhere in this file.

use std::time::{Duration, Instant};

use num::bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use cantorval::boundary;
use cantorval::intervals::{Interval, IntervalUnion};
use cantorval::kakeya::{choose_schedule, kakeya_profile, normalized_kc_trace};
use cantorval::mm;
use cantorval::series::{MMParams, Series, Tail};
use cantorval::subsums::{delta, initial_subsums, iterate};
use cantorval::Rational;

const ENUM_CAP: usize = 1 << 22;
const REFINE_BUDGET: usize = 64;

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

fn reference_params() -> MMParams {
    MMParams::new(vec![1, 3, 5], Tail::Constant(5)).unwrap()
}

fn pass(criterion: usize, what: &str, started: Instant) {
    println!(
        "acceptance {criterion}: PASS — {what} ({:.2?})",
        started.elapsed()
    );
}

fn within(criterion: usize, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    assert!(
        elapsed < budget,
        "acceptance {criterion}: time budget exceeded ({elapsed:.2?} >= {budget:.2?})"
    );
}

/// Independent decision of `a_n > r_n` from truncated tail sums: `t` is a
/// strict lower bound on the remainder, and `t` plus a dominated-pair
/// geometric bound is an upper bound. Panics when the margin does not
/// separate, rather than guessing.
fn oracle_says_kakeya(s: &Series, n: u64, pad: u64) -> bool {
    let m = n + pad;
    // The bound needs a_{i+2} <= a_i / 4 from `m` on; the series under test
    // halves every two indices exactly, which we spot-check well past `m`.
    for i in m..m + 32 {
        assert!(s.term(i + 2) * Rational::int(4) <= s.term(i));
    }
    let t: Rational = (n + 1..=m).map(|i| s.term(i)).sum();
    let upper = &t + (s.term(m + 1) + s.term(m + 2)) * r(4, 3);
    let a = s.term(n);
    if a > upper {
        true
    } else if a <= t {
        false
    } else {
        panic!("oracle could not separate a_{n} from the remainder at pad {pad}");
    }
}

#[test]
fn c1_kakeya_patterns_match_reference_sets() {
    let started = Instant::now();
    let horizon = 200u64;

    let gn = kakeya_profile(&Series::gn(), horizon, REFINE_BUDGET).unwrap();
    let evens: Vec<u64> = (1..=horizon).filter(|i| i % 2 == 0).collect();
    assert_eq!(gn.k_indices(), evens, "first series: even indices only");

    let ws = kakeya_profile(&Series::ws(), horizon, REFINE_BUDGET).unwrap();
    let fives: Vec<u64> = (1..=horizon).filter(|i| i % 5 == 0).collect();
    assert_eq!(ws.k_indices(), fives, "second series: multiples of 5 only");

    let b = Series::paired_quarters();
    let bp = kakeya_profile(&b, horizon, REFINE_BUDGET).unwrap();
    assert_eq!(bp.k_indices(), evens, "paired series: even indices only");
    for n in 1..=horizon {
        assert_eq!(
            !bp.is_kc(n),
            oracle_says_kakeya(&b, n, 50),
            "paired series disagrees with the truncation oracle at {n}"
        );
    }

    within(1, started, Duration::from_secs(1));
    pass(1, "index tag patterns at horizon 200, three series", started);
}

#[test]
fn c2_complement_densities_are_exact_at_aligned_horizons() {
    let started = Instant::now();

    let ws = kakeya_profile(&Series::ws(), 1000, REFINE_BUDGET).unwrap();
    for t in 1..=200u64 {
        // card K^c up to 5t, over 5t, is exactly 4/5.
        assert_eq!(ws.kc_count_upto(5 * t), 4 * t, "at horizon {}", 5 * t);
    }

    let gn = kakeya_profile(&Series::gn(), 400, REFINE_BUDGET).unwrap();
    for t in 1..=200u64 {
        assert_eq!(gn.kc_count_upto(2 * t), t, "at horizon {}", 2 * t);
    }

    pass(2, "complement densities 4/5 and 1/2 at aligned horizons", started);
}

#[test]
fn c3_schedule_and_vanishing_ratio_for_linear_normalizer() {
    let started = Instant::now();
    let m = |n: u64| n;
    let k_max = 44; // deepest group touched by indices up to 2000
    let params = choose_schedule(&m, k_max, 5_000).unwrap();

    for k in 1..=k_max {
        assert_eq!(
            params.group_end(k),
            (k as u64) * (k as u64) + 2 * k as u64,
            "schedule end of group {k}"
        );
        assert_eq!(params.group_size(k), 2 * k as u32 - 1, "size of group {k}");
    }

    // Complement pattern over the first six groups.
    let series = Series::mm(params.clone());
    let horizon = params.group_end(6);
    assert_eq!(horizon, 48);
    let profile = kakeya_profile(&series, horizon, REFINE_BUDGET).unwrap();
    let expected: Vec<u64> = (1..=6)
        .flat_map(|k| {
            let base = params.group_end(k - 1);
            [base + 1, base + 2]
        })
        .collect();
    assert_eq!(profile.kc_indices(), expected);

    // Ratio stays below the per-group bound all the way out, and shrinks.
    let checkpoints: Vec<u64> = (1..=2000).collect();
    let trace = normalized_kc_trace(&params, &m, &checkpoints, REFINE_BUDGET).unwrap();
    for p in &trace {
        assert!(
            p.ratio <= p.bound,
            "ratio {} exceeds bound {} at n={}",
            p.ratio,
            p.bound,
            p.n
        );
    }
    let at_100 = &trace[99].ratio;
    let at_2000 = &trace[1999].ratio;
    assert!(at_2000 < at_100, "ratio must shrink: {at_2000} vs {at_100}");

    within(3, started, Duration::from_secs(5));
    pass(
        3,
        "minimal schedule (3,8,15,24,...), complement pattern, ratio below 2/k out to n=2000",
        started,
    );
}

#[test]
fn c4_group_subsums_closed_form_equals_brute_force() {
    let started = Instant::now();
    for n in 1..=12u32 {
        let terms = mm::group_terms(n).unwrap().terms;
        let mut brute = vec![BigInt::from(0)];
        for t in &terms {
            let shifted: Vec<BigInt> = brute.iter().map(|v| v + t).collect();
            brute.extend(shifted);
        }
        brute.sort();
        brute.dedup();
        assert_eq!(
            mm::group_subsums_closed_form(n).unwrap(),
            brute,
            "closed form differs from 2^{} subsets at n={n}",
            n + 2
        );
    }
    within(4, started, Duration::from_secs(10));
    pass(4, "group subsum closed form vs brute force, n = 1..12", started);
}

#[test]
fn c5_remainder_brackets_hold_exactly() {
    let started = Instant::now();
    let params = reference_params();
    let series = Series::mm(params.clone());
    for k in 1..=6 {
        let b = mm::remainder_bracket(&params, k, REFINE_BUDGET).unwrap();
        let q = params.q(k);
        assert_eq!(b.lower, q);
        assert_eq!(b.upper, Rational::int(2) * &q);
        let r_nk = series.remainder_exact(params.group_end(k)).unwrap();
        assert!(q < r_nk && r_nk < Rational::int(2) * &q, "bracket at k={k}");
    }
    pass(5, "q_k < remainder < 2 q_k for k <= 6, zero tolerance", started);
}

#[test]
fn c6_ladder_structure_and_stretch_floor() {
    let started = Instant::now();
    let params = reference_params();
    let series = Series::mm(params.clone());

    for k in 1..=3 {
        // Construction re-verifies cardinality, monotonicity, gap bound
        // (beta), and exact extrema (gamma); alpha is membership in the
        // materialized initial subsums.
        let ladder = mm::build_ladder(&params, k, ENUM_CAP).unwrap();
        mm::verify_ladder_alpha(&ladder, &params, ENUM_CAP).unwrap();
        let expected_card: usize = (1..=k).map(|i| 3usize << params.group_size(i)).product();
        assert_eq!(ladder.values.len(), expected_card);
    }

    // Stretch at the first level: Delta over F_3 with epsilon = r_3 equals
    // the closed-form floor, exactly 5.
    let f3 = initial_subsums(&series, params.group_end(1), ENUM_CAP).unwrap();
    let eps = series.remainder_exact(params.group_end(1)).unwrap();
    assert_eq!(eps, r(161, 95));
    let stretch = delta(f3.values(), &eps).unwrap();
    assert_eq!(stretch, Rational::int(5));
    assert_eq!(mm::delta_lower_bound(&params, 1), Rational::int(5));

    pass(6, "ladder alpha/beta/gamma for k <= 3; stretch floor 5 at level 1", started);
}

#[test]
fn c7_census_closed_forms_match_iterate_geometry() {
    let started = Instant::now();
    let params = reference_params();
    let series = Series::mm(params.clone());

    for k in 1..=3 {
        let census = boundary::level_census(&params, k, ENUM_CAP).unwrap();
        assert!(census.cross_checked, "census at k={k} must be cross-checked");
        let q = params.q(k);
        let r_nk = series.remainder_exact(params.group_end(k)).unwrap();
        assert_eq!(census.gap_length, Rational::int(2) * &q - &r_nk);
        assert_eq!(census.new_comp_length, r_nk);
        assert_eq!(census.gap_count, boundary::new_comp_count(&params, k));
        assert_eq!(census.comp_count, boundary::comp_count(&params, k));

        // Truncated measure: closed form against a fresh materialization.
        let direct = iterate(&series, params.group_end(k), ENUM_CAP)
            .unwrap()
            .measure();
        assert_eq!(
            boundary::measure_e_truncated(&params, k, ENUM_CAP).unwrap(),
            direct,
            "truncated measure at k={k}"
        );
    }

    pass(7, "census counts/lengths and truncated measures for k <= 3", started);
}

#[test]
fn c8_telescoping_and_residual_decay() {
    let started = Instant::now();
    let params = reference_params();

    for k in 2..=100 {
        assert!(
            boundary::telescoping_check(&params, k).unwrap(),
            "telescoping identity at k={k}"
        );
    }

    // residual_trace re-checks strict decrease internally; freeze the decay
    // ratio as an exact rational.
    let trace = boundary::residual_trace(&params, 6).unwrap();
    for w in trace.windows(2) {
        assert!(w[1].1 < w[0].1, "residuals must strictly decrease");
    }
    let ratio = &trace[6].1 / &trace[1].1;
    assert_eq!(ratio, r(1331, 262_144));
    assert!(ratio < r(1, 100), "residual(6)/residual(1) = {ratio} >= 1/100");

    pass(
        8,
        "telescoping for k <= 100; residuals strictly decreasing with residual(6)/residual(1) = 1331/262144 < 1/100",
        started,
    );
}

fn runner_1000() -> TestRunner {
    TestRunner::new(Config {
        cases: 1000,
        // Failures print their minimized input; no regression files needed.
        failure_persistence: None,
        ..Config::default()
    })
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (1i64..=12, 1i64..=12).prop_map(|(n, d)| r(n, d))
}

fn interval_vec() -> impl Strategy<Value = Vec<Interval>> {
    prop::collection::vec((-50i64..50, 0i64..=20), 0..10).prop_map(|raw| {
        raw.into_iter()
            .map(|(a, len)| Interval::new(r(a, 4), r(a + len, 4)).unwrap())
            .collect()
    })
}

#[test]
fn c9_property_suites_1000_cases_each() {
    let started = Instant::now();

    // Normalization is idempotent.
    runner_1000()
        .run(&interval_vec(), |raw| {
            let once = IntervalUnion::normalize(raw);
            let twice = IntervalUnion::normalize(once.components().to_vec());
            prop_assert_eq!(&twice, &once);
            Ok(())
        })
        .unwrap();

    // Components and gaps tile any ambient interval exactly.
    runner_1000()
        .run(&interval_vec(), |raw| {
            let u = IntervalUnion::normalize(raw);
            let ambient = Interval::new(r(-13, 1), r(18, 1)).unwrap();
            let gaps = u.gaps(&ambient).unwrap();
            let total = u.measure() + gaps.iter().map(|g| g.length()).sum::<Rational>();
            prop_assert_eq!(total, ambient.length());
            Ok(())
        })
        .unwrap();

    // Sorted-merge enumeration equals the 2^n subset brute force.
    runner_1000()
        .run(
            &prop::collection::vec(small_rational(), 1..=16),
            |mut head| {
                head.sort_by(|a, b| b.cmp(a));
                let n = head.len() as u64;
                let tail_first = head.last().unwrap() / Rational::int(2);
                let s = Series::finite_plus_geometric(head.clone(), tail_first, r(1, 2)).unwrap();
                let fast = initial_subsums(&s, n, ENUM_CAP).unwrap();

                let mut brute = vec![Rational::zero()];
                for t in &head {
                    let shifted: Vec<Rational> = brute.iter().map(|v| v + t).collect();
                    brute.extend(shifted);
                }
                brute.sort();
                brute.dedup();
                prop_assert_eq!(fast.values(), &brute[..]);
                Ok(())
            },
        )
        .unwrap();

    // Stretch is scaling-equivariant: Delta(cB, c eps) = c Delta(B, eps).
    let scaling_input = (
        prop::collection::vec((-40i64..=40, 1i64..=8).prop_map(|(n, d)| r(n, d)), 1..=24),
        (0i64..=10, 1i64..=4).prop_map(|(n, d)| r(n, d)),
        (1i64..=9, 1i64..=5).prop_map(|(n, d)| r(n, d)),
    );
    runner_1000()
        .run(&scaling_input, |(mut values, eps, c)| {
            values.sort();
            values.dedup();
            let plain = delta(&values, &eps).unwrap();
            let scaled: Vec<Rational> = values.iter().map(|v| v * &c).collect();
            let scaled_delta = delta(&scaled, &(&eps * &c)).unwrap();
            prop_assert_eq!(scaled_delta, plain * &c);
            Ok(())
        })
        .unwrap();

    pass(9, "four randomized suites, 1000 cases each, zero failures", started);
}
