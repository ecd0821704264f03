//! Proof-level checks for the grouped construction: integer group terms,
//! the closed form of a group's subsums, the `C_k`/`D_k` ladder, the
//! stretch lower bound, and remainder brackets.
//!
//! Group `k` of the series consists of the integers
//! `b_1 = 2^(n+1)`, `b_2 = 2^n + 1`, `b_j = 2^(n+3-j)` for `3 <= j <= n+2`
//! (with `n = n_k`), scaled by `q_k`. The ladder sets
//! `D_1 = C_1`, `D_(k+1) = D_k + C_(k+1)` witness that stretches of the
//! initial subsums stay bounded below, which is what forces an interval
//! inside the achievement set.

use num::bigint::BigInt;
use num::traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{Comparison, Enclosure, Rational};
use crate::series::{MMParams, Series};
use crate::subsums::{delta, initial_subsums};

/// The unscaled integer terms of one group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    /// Size parameter `n >= 1`; the group has `n + 2` terms.
    pub n: u32,
    /// Strictly decreasing positive integers.
    #[serde(with = "crate::numeric::bigint_vec_string")]
    pub terms: Vec<BigInt>,
}

/// Integer terms of a group with size parameter `n >= 1`.
pub fn group_terms(n: u32) -> Result<GroupSpec> {
    if n < 1 {
        return Err(Error::InvalidGroupSize { k: 0 });
    }
    let mut terms = Vec::with_capacity(n as usize + 2);
    terms.push(BigInt::one() << (n as usize + 1));
    terms.push((BigInt::one() << n as usize) + 1);
    for j in 3..=n + 2 {
        terms.push(BigInt::one() << (n + 3 - j) as usize);
    }
    debug_assert!(terms.windows(2).all(|w| w[0] > w[1]));
    Ok(GroupSpec { n, terms })
}

/// Closed form of the set of subset sums of one group's integer terms:
/// the even prefix `{2j-2 : 1 <= j <= 2^(n-1)}`, the solid middle block
/// `{j : 2^n <= j <= 4*2^n - 1}`, and the odd-offset suffix
/// `{4*2^n - 1 + 2j : 1 <= j <= 2^(n-1)}`. Sorted; `4*2^n` values total.
pub fn group_subsums_closed_form(n: u32) -> Result<Vec<BigInt>> {
    if n < 1 {
        return Err(Error::InvalidGroupSize { k: 0 });
    }
    let half = BigInt::one() << (n as usize - 1);
    let low = BigInt::one() << n as usize;
    let high = BigInt::from(4) * &low - 1;
    let mut out = Vec::new();
    let mut j = BigInt::one();
    while j <= half {
        out.push(BigInt::from(2) * &j - 2);
        j += 1;
    }
    let mut v = low.clone();
    while v <= high {
        out.push(v.clone());
        v += 1;
    }
    let mut j = BigInt::one();
    while j <= half {
        out.push(&high + BigInt::from(2) * &j);
        j += 1;
    }
    debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
    Ok(out)
}

/// The scaled middle-block progression
/// `C_k = { p q_k : 2^(n_k) <= p <= 2^(n_k + 2) - 1 }`,
/// an arithmetic progression of step `q_k` with `3 * 2^(n_k)` elements.
pub fn ck_set(params: &MMParams, k: usize) -> Vec<Rational> {
    let q = params.q(k);
    let n = params.group_size(k) as usize;
    let lo = BigInt::one() << n;
    let count = 3usize << n;
    (0..count)
        .map(|i| Rational::from(&lo + i) * &q)
        .collect()
}

/// Materialized ladder level with its verified structure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ladder {
    /// Level index `k >= 1`.
    pub k: usize,
    /// Sorted values of `D_k`.
    pub values: Vec<Rational>,
    /// The per-level progressions `C_1, ..., C_k`.
    pub c_sets: Vec<Vec<Rational>>,
}

/// Builds `D_k` (as `D_1 = C_1`, `D_(j+1) = D_j + C_(j+1)`) and re-verifies
/// its structure exactly:
///
/// * strictly increasing values (the translates never collide),
/// * consecutive gaps at most `q_k`,
/// * minimum `sum of 2^(n_i) q_i` and maximum
///   `sum of (2^(n_i + 2) - 1) q_i` over `i <= k`.
///
/// Errors with the violated property name if any check fails, and with a
/// cap error if the predicted cardinality `prod of 3 * 2^(n_i)` exceeds
/// `cap`. Membership of `D_k` in the initial subsums (`alpha`) is a
/// separate, costlier check: [`verify_ladder_alpha`].
pub fn build_ladder(params: &MMParams, k: usize, cap: usize) -> Result<Ladder> {
    assert!(k >= 1, "ladder levels are 1-based");
    let mut predicted = 1usize;
    for i in 1..=k {
        predicted = predicted
            .checked_mul(3usize << params.group_size(i) as usize)
            .filter(|&c| c <= cap)
            .ok_or(Error::CapExceeded {
                cap,
                depth: params.group_end(i),
            })?;
    }
    let mut c_sets = Vec::with_capacity(k);
    let mut values = ck_set(params, 1);
    c_sets.push(values.clone());
    for j in 2..=k {
        let c = ck_set(params, j);
        let mut next = Vec::with_capacity(values.len() * c.len());
        for d in &values {
            for x in &c {
                next.push(d + x);
            }
        }
        values = next;
        c_sets.push(c);
    }

    if values.len() != predicted {
        return Err(Error::LadderViolation {
            property: "cardinality",
            k,
        });
    }
    let q_k = params.q(k);
    for w in values.windows(2) {
        let gap = &w[1] - &w[0];
        if !gap.is_positive() {
            return Err(Error::LadderViolation {
                property: "strictly increasing",
                k,
            });
        }
        if gap > q_k {
            return Err(Error::LadderViolation { property: "beta", k });
        }
    }
    let (min, max) = ladder_extrema(params, k);
    if values[0] != min || *values.last().unwrap() != max {
        return Err(Error::LadderViolation { property: "gamma", k });
    }
    Ok(Ladder { k, values, c_sets })
}

/// The `alpha` property: every ladder value is an initial subsum at depth
/// `N_k`. Enumerates the subsums (subject to `cap`) and checks membership.
pub fn verify_ladder_alpha(ladder: &Ladder, params: &MMParams, cap: usize) -> Result<()> {
    let series = Series::mm(params.clone());
    let f = initial_subsums(&series, params.group_end(ladder.k), cap)?;
    for v in &ladder.values {
        if !f.contains(v) {
            return Err(Error::LadderViolation {
                property: "alpha",
                k: ladder.k,
            });
        }
    }
    Ok(())
}

/// The induction-step identity behind the gap bound:
/// `q_k + 2^(n_(k+1)) q_(k+1) = 2^(n_(k+1) + 2) q_(k+1)`, which makes a
/// translate of `C_(k+1)` placed `q_k` away continue the previous one with
/// gap exactly `q_(k+1)`.
pub fn ladder_step_identity(params: &MMParams, k: usize) -> bool {
    let n_next = i64::from(params.group_size(k + 1));
    let lhs = params.q(k) + Rational::pow2(n_next) * params.q(k + 1);
    let rhs = Rational::pow2(n_next + 2) * params.q(k + 1);
    lhs == rhs
}

/// Exact extrema of `D_k`:
/// `(sum of 2^(n_i) q_i, sum of (2^(n_i + 2) - 1) q_i)` over `i <= k`.
pub fn ladder_extrema(params: &MMParams, k: usize) -> (Rational, Rational) {
    let mut min = Rational::zero();
    let mut max = Rational::zero();
    for i in 1..=k {
        let n = i64::from(params.group_size(i));
        let q = params.q(i);
        min += &(Rational::pow2(n) * &q);
        max += &((Rational::pow2(n + 2) - Rational::one()) * &q);
    }
    (min, max)
}

/// Lower bound `sum of (3 * 2^(n_i) - 1) q_i` over `i <= k` for the
/// stretch of the depth-`N_k` subsums at epsilon `r_(N_k)`; equal to
/// `max D_k - min D_k`.
pub fn delta_lower_bound(params: &MMParams, k: usize) -> Rational {
    (1..=k)
        .map(|i| {
            (Rational::int(3) * Rational::pow2(i64::from(params.group_size(i))) - Rational::one())
                * params.q(i)
        })
        .sum()
}

/// Computes the actual stretch of the depth-`N_k` subsums and checks it
/// against [`delta_lower_bound`]. The epsilon is the remainder's certified
/// lower bound (conservative: a smaller epsilon only shrinks blocks, and
/// the remainder exceeds `q_k` while ladder gaps stay at most `q_k`, so
/// the bound must survive). Returns the stretch.
pub fn verify_delta_bound(
    params: &MMParams,
    k: usize,
    cap: usize,
    unroll: usize,
) -> Result<Rational> {
    let series = Series::mm(params.clone());
    let n_k = params.group_end(k);
    let f = initial_subsums(&series, n_k, cap)?;
    let eps = series.remainder(n_k, unroll);
    let actual = delta(f.values(), eps.lo())?;
    let bound = delta_lower_bound(params, k);
    if actual < bound {
        return Err(Error::DeltaBoundViolation {
            k,
            delta: actual.to_string(),
            bound: bound.to_string(),
        });
    }
    Ok(actual)
}

/// Verified two-sided bracket `q_k < r_(N_k) < 2 q_k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RemainderBracket {
    pub k: usize,
    /// `q_k`.
    pub lower: Rational,
    /// `2 q_k`.
    pub upper: Rational,
    /// The remainder itself (zero-width for exact tails).
    pub remainder: Enclosure,
}

/// Certifies `q_k < r_(N_k) < 2 q_k`, refining an enclosure-valued
/// remainder up to `refine_budget` extra unrollings if the comparison does
/// not separate at first.
pub fn remainder_bracket(
    params: &MMParams,
    k: usize,
    refine_budget: usize,
) -> Result<RemainderBracket> {
    let series = Series::mm(params.clone());
    let n_k = params.group_end(k);
    let lower = params.q(k);
    let upper = Rational::int(2) * &lower;
    let lower_enc = Enclosure::exact(lower.clone());
    let upper_enc = Enclosure::exact(upper.clone());
    for unroll in 0..=refine_budget {
        let r = series.remainder(n_k, unroll);
        match (lower_enc.compare(&r), r.compare(&upper_enc)) {
            (Comparison::Less, Comparison::Less) => {
                return Ok(RemainderBracket {
                    k,
                    lower,
                    upper,
                    remainder: r,
                })
            }
            (Comparison::Undecided, _) | (_, Comparison::Undecided) => continue,
            _ => return Err(Error::BracketViolation { k }),
        }
    }
    Err(Error::Undecided {
        index: n_k,
        budget: refine_budget,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Tail;

    const CAP: usize = 1 << 22;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn ints(vs: &[i64]) -> Vec<BigInt> {
        vs.iter().map(|&v| BigInt::from(v)).collect()
    }

    fn mm135() -> MMParams {
        MMParams::new(vec![1, 3, 5], Tail::Constant(5)).unwrap()
    }

    #[test]
    fn group_terms_small_cases() {
        assert_eq!(group_terms(1).unwrap().terms, ints(&[4, 3, 2]));
        assert_eq!(group_terms(2).unwrap().terms, ints(&[8, 5, 4, 2]));
        assert_eq!(group_terms(3).unwrap().terms, ints(&[16, 9, 8, 4, 2]));
        assert!(group_terms(0).is_err());
        for n in 1..=10 {
            let g = group_terms(n).unwrap();
            assert_eq!(g.terms.len(), n as usize + 2);
            assert!(g.terms.windows(2).all(|w| w[0] > w[1]));
        }
    }

    #[test]
    fn closed_form_small_cases() {
        assert_eq!(
            group_subsums_closed_form(1).unwrap(),
            ints(&[0, 2, 3, 4, 5, 6, 7, 9])
        );
        let n2: Vec<BigInt> = ints(&[0, 2])
            .into_iter()
            .chain((4..=15).map(BigInt::from))
            .chain(ints(&[17, 19]))
            .collect();
        assert_eq!(group_subsums_closed_form(2).unwrap(), n2);
    }

    #[test]
    fn closed_form_matches_brute_force() {
        for n in 1..=12u32 {
            let g = group_terms(n).unwrap();
            let m = g.terms.len();
            let mut sums: Vec<BigInt> = (0u32..(1 << m))
                .map(|mask| {
                    (0..m)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| &g.terms[i])
                        .sum()
                })
                .collect();
            sums.sort();
            sums.dedup();
            assert_eq!(sums, group_subsums_closed_form(n).unwrap(), "n = {n}");
            assert_eq!(sums.len(), 4 << n as usize, "cardinality at n = {n}");
        }
    }

    #[test]
    fn ck_progression() {
        let p = mm135();
        let c1 = ck_set(&p, 1);
        let expect: Vec<Rational> = (2..=7).map(|v| r(v, 1)).collect();
        assert_eq!(c1, expect);
        for k in 1..=3 {
            let c = ck_set(&p, k);
            assert_eq!(c.len(), 3 << p.group_size(k) as usize);
            let q = p.q(k);
            for w in c.windows(2) {
                assert_eq!(&w[1] - &w[0], q);
            }
            // Every element is a subsum of group k's terms: it appears in
            // the scaled middle block of the closed form.
            let all = group_subsums_closed_form(p.group_size(k)).unwrap();
            for x in &c {
                let unscaled = x / &q;
                assert!(all.binary_search(&unscaled.numer()).is_ok());
                assert!(unscaled.is_integer());
            }
        }
    }

    #[test]
    fn ladder_level_one_and_two() {
        let p = mm135();
        let l1 = build_ladder(&p, 1, CAP).unwrap();
        assert_eq!(l1.values, (2..=7).map(|v| r(v, 1)).collect::<Vec<_>>());
        let l2 = build_ladder(&p, 2, CAP).unwrap();
        assert_eq!(l2.values.len(), 6 * 24);
        assert_eq!(l2.values[0], r(7, 3)); // 2 + 8/24
        let (min, max) = ladder_extrema(&p, 2);
        assert_eq!(min, r(7, 3));
        assert_eq!(l2.values.last().unwrap(), &max);
        let q2 = p.q(2);
        for w in l2.values.windows(2) {
            assert!(&w[1] - &w[0] <= q2);
        }
    }

    #[test]
    fn ladder_alpha_membership() {
        let p = mm135();
        for k in 1..=3 {
            let l = build_ladder(&p, k, CAP).unwrap();
            verify_ladder_alpha(&l, &p, CAP).unwrap();
        }
    }

    #[test]
    fn ladder_growth_and_cap() {
        let p = mm135();
        let l3 = build_ladder(&p, 3, CAP).unwrap();
        assert_eq!(l3.values.len(), 6 * 24 * 96);
        assert_eq!(l3.c_sets.len(), 3);
        assert!(matches!(
            build_ladder(&p, 3, 10_000),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn step_identity_holds() {
        let p = mm135();
        for k in 1..=6 {
            assert!(ladder_step_identity(&p, k), "identity fails at {k}");
        }
        let growing = MMParams::new(vec![1], Tail::Arithmetic { step: 2 }).unwrap();
        for k in 1..=6 {
            assert!(ladder_step_identity(&growing, k));
        }
    }

    #[test]
    fn delta_bound_values() {
        let p = mm135();
        assert_eq!(delta_lower_bound(&p, 1), r(5, 1));
        // Bound equals max - min of the ladder and increases in k.
        for k in 1..=4 {
            let (min, max) = ladder_extrema(&p, k);
            assert_eq!(delta_lower_bound(&p, k), max - min);
        }
        for k in 1..=4 {
            assert!(delta_lower_bound(&p, k + 1) > delta_lower_bound(&p, k));
        }
    }

    #[test]
    fn delta_bound_verified_with_equality_at_level_one() {
        let p = mm135();
        // F_3 = {0, 2..7, 9} with eps = r_3 in (1, 2) splits exactly at the
        // two gaps of length 2, so the stretch is exactly the bound.
        let actual = verify_delta_bound(&p, 1, CAP, 0).unwrap();
        assert_eq!(actual, r(5, 1));
        for k in 2..=3 {
            let actual = verify_delta_bound(&p, k, CAP, 0).unwrap();
            assert!(actual >= delta_lower_bound(&p, k));
        }
        // Growing sizes go through the enclosure path.
        let growing = MMParams::new(vec![1], Tail::Arithmetic { step: 2 }).unwrap();
        let actual = verify_delta_bound(&growing, 2, CAP, 4).unwrap();
        assert!(actual >= delta_lower_bound(&growing, 2));
    }

    #[test]
    fn remainder_brackets() {
        let p = mm135();
        for k in 1..=4 {
            let b = remainder_bracket(&p, k, 0).unwrap();
            assert_eq!(b.lower, p.q(k));
            assert_eq!(b.upper, Rational::int(2) * p.q(k));
            assert!(b.remainder.is_exact());
        }
        let b1 = remainder_bracket(&p, 1, 0).unwrap();
        assert_eq!(b1.remainder.exact_value().unwrap(), &r(161, 95));
        // Enclosure path for growing sizes.
        let growing = MMParams::new(vec![1], Tail::Arithmetic { step: 2 }).unwrap();
        let b = remainder_bracket(&growing, 3, 8).unwrap();
        assert!(!b.remainder.is_exact());
        assert!(b.remainder.lo() > &b.lower);
        assert!(b.remainder.hi() < &b.upper);
    }

    #[test]
    fn bracket_margin_is_positive() {
        // 2 q_k - r_(N_k) > 0 is exactly the per-level gap length of the
        // iterate census; strictness here keeps those gaps nonempty.
        let p = mm135();
        for k in 1..=4 {
            let r_nk = Series::mm(p.clone())
                .remainder_exact(p.group_end(k))
                .unwrap();
            let margin = Rational::int(2) * p.q(k) - r_nk;
            assert!(margin.is_positive());
        }
    }
}
