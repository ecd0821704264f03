//! Gap/component census of the grouped-construction iterates, the
//! eta-classification of the achievement set's component intervals, exact
//! measure formulas, and the zero-boundary-measure verification.
//!
//! Everything here is an exact rational identity, so the whole module
//! requires a group-size rule with a closed-form tail (eventually constant
//! or eventually periodic); enclosure-mode series are rejected.
//!
//! Notation: `N_k` is the index of the last term of group `k`, `q_k` the
//! group scale, `r_(N_k)` the remainder there, and `I_(N_k)` the iterate
//! (union of `[f, f + r_(N_k)]` over depth-`N_k` subsums `f`). Passing from
//! `I_(N_(k-1))` to `I_(N_k)` opens `2^(n_k)` congruent gaps inside each
//! old component; the census tracks those counts and lengths.

use std::collections::HashSet;

use num::bigint::BigInt;
use num::traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intervals::{Interval, IntervalUnion};
use crate::numeric::Rational;
use crate::series::{MMParams, Series, Tail};
use crate::subsums::iterate;

/// Gap and component counts and lengths at one census level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelCensus {
    pub k: usize,
    /// Number of gaps that open when passing to level `k`:
    /// `2^(n_k) * prod over j < k of (2^(n_j) + 1)`.
    #[serde(with = "crate::numeric::bigint_string")]
    pub gap_count: BigInt,
    /// Common length of those gaps: `2 q_k - r_(N_k)`.
    pub gap_length: Rational,
    /// Total component count of `I_(N_k)`:
    /// `prod over j <= k of (2^(n_j) + 1)`.
    #[serde(with = "crate::numeric::bigint_string")]
    pub comp_count: BigInt,
    /// Number of brand-new components (those not concentric with a parent
    /// component); equals `gap_count`.
    #[serde(with = "crate::numeric::bigint_string")]
    pub new_comp_count: BigInt,
    /// Common length of the new components: `r_(N_k)`.
    pub new_comp_length: Rational,
    /// Whether the closed forms were re-derived from a materialized
    /// iterate. Skipped (false) only when enumeration would exceed the cap.
    pub cross_checked: bool,
}

/// One class of the achievement set's component intervals, graded by the
/// first census level whose component centers include the class's centers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaClass {
    pub eta: usize,
    /// `1` for the central interval (`eta = 0`), else the new-component
    /// count of level `eta`.
    #[serde(with = "crate::numeric::bigint_string")]
    pub count: BigInt,
    /// Exact common length:
    /// `r_(N_eta) - sum over i > eta of 2^(n_i + 1) q_i`.
    pub length: Rational,
}

fn require_exact(params: &MMParams) -> Result<()> {
    if params.has_exact_tail() {
        Ok(())
    } else {
        Err(Error::ExactnessRequired)
    }
}

/// `prod over j <= k of (2^(n_j) + 1)`; `1` when `k = 0`.
pub fn comp_count(params: &MMParams, k: usize) -> BigInt {
    (1..=k)
        .map(|j| (BigInt::one() << params.group_size(j) as usize) + 1)
        .product()
}

/// `2^(n_k) * prod over j < k of (2^(n_j) + 1)`, the shared count of new
/// gaps and new components at level `k >= 1`.
pub fn new_comp_count(params: &MMParams, k: usize) -> BigInt {
    assert!(k >= 1, "census levels are 1-based");
    (BigInt::one() << params.group_size(k) as usize) * comp_count(params, k - 1)
}

/// `sum over i > k of 2^(n_i + 1) q_i`, evaluated in closed form.
fn pow2_weighted_tail(params: &MMParams, k: usize) -> Result<Rational> {
    require_exact(params)?;
    let term = |i: usize| Rational::pow2(i64::from(params.group_size(i)) + 1) * params.q(i);
    let base = k.max(params.prefix().len());
    let finite: Rational = (k + 1..=base).map(term).sum();
    match params.tail() {
        Tail::Constant(c) => {
            // Consecutive terms shrink by exactly 1/(3*2^c).
            let lambda = (Rational::int(3) * Rational::pow2(i64::from(*c)))
                .recip()
                .unwrap();
            Ok(finite + term(base + 1) / (Rational::one() - lambda))
        }
        Tail::Periodic(p) => {
            let lambda: Rational = p
                .iter()
                .map(|&c| (Rational::int(3) * Rational::pow2(i64::from(c))).recip().unwrap())
                .fold(Rational::one(), |acc, x| acc * x);
            let one_period: Rational = (base + 1..=base + p.len()).map(term).sum();
            Ok(finite + one_period / (Rational::one() - lambda))
        }
        Tail::Arithmetic { .. } => unreachable!("checked by require_exact"),
    }
}

/// `sum over j > k of new_comp_count(j) * (a q_j + b T_j)` in closed form,
/// where `T_j` is the scale tail sum past group `j`.
///
/// Both the per-level measure deficit `2 q_j - r_(N_j)` and the residual
/// weight `3 q_j - r_(N_j)` have this shape, as does the class-size sum
/// `new_comp_count(j) * q_j`; past the explicit prefix the terms form an
/// exact geometric progression with ratio `(2^c + 1) / (3 * 2^c)` per
/// constant-size group (or its product over one period).
fn weighted_census_tail(
    params: &MMParams,
    k: usize,
    a: &Rational,
    b: &Rational,
) -> Result<Rational> {
    require_exact(params)?;
    let term = |j: usize| -> Result<Rational> {
        let weight = a * params.q(j) + b * params.q_tail_sum(j)?;
        Ok(Rational::from(new_comp_count(params, j)) * weight)
    };
    let base = k.max(params.prefix().len());
    let mut finite = Rational::zero();
    for j in k + 1..=base {
        finite += &term(j)?;
    }
    let level_ratio = |c: u32| {
        (Rational::pow2(i64::from(c)) + Rational::one())
            / (Rational::int(3) * Rational::pow2(i64::from(c)))
    };
    match params.tail() {
        Tail::Constant(c) => Ok(finite + term(base + 1)? / (Rational::one() - level_ratio(*c))),
        Tail::Periodic(p) => {
            let lambda = p
                .iter()
                .map(|&c| level_ratio(c))
                .fold(Rational::one(), |acc, x| acc * x);
            let mut one_period = Rational::zero();
            for j in base + 1..=base + p.len() {
                one_period += &term(j)?;
            }
            Ok(finite + one_period / (Rational::one() - lambda))
        }
        Tail::Arithmetic { .. } => unreachable!("checked by require_exact"),
    }
}

/// The level-`k` window: the part of `I_(N_k)` below the previous
/// remainder, `I_(N_k) intersect [0, r_(N_(k-1))]`, in closed form — the
/// side runs `[(2j-2) q_k, .. + r_(N_k)]` and
/// `[(4*2^(n_k) - 1 + 2j) q_k, .. + r_(N_k)]` for `j <= 2^(n_k - 1)`
/// around the solid middle block
/// `[2^(n_k) q_k, (4*2^(n_k) - 1) q_k + r_(N_k)]`.
///
/// The result is re-derived independently by enumerating the iterate and
/// clipping it; a disagreement is an error (and would falsify the closed
/// form). The enumeration respects `cap`.
pub fn mk_window(params: &MMParams, k: usize, cap: usize) -> Result<IntervalUnion> {
    assert!(k >= 1, "window levels are 1-based");
    require_exact(params)?;
    let series = Series::mm(params.clone());
    let q = params.q(k);
    let r = series.remainder_exact(params.group_end(k))?;
    let n = params.group_size(k) as usize;
    let half = 1usize << (n - 1);
    if (2 * half + 1) > cap {
        return Err(Error::CapExceeded {
            cap,
            depth: params.group_end(k),
        });
    }
    let mut parts = Vec::with_capacity(2 * half + 1);
    let left_of = |p: BigInt| Rational::from(p) * &q;
    for j in 1..=half {
        let left = left_of(BigInt::from(2 * j - 2));
        parts.push(Interval::new(left.clone(), left + &r).unwrap());
    }
    let mid_left = left_of(BigInt::one() << n);
    let mid_right = left_of((BigInt::from(4) << n) - 1) + &r;
    parts.push(Interval::new(mid_left, mid_right).unwrap());
    for j in 1..=half {
        let left = left_of((BigInt::from(4) << n) - 1 + BigInt::from(2 * j));
        parts.push(Interval::new(left.clone(), left + &r).unwrap());
    }
    let window = IntervalUnion::normalize(parts);

    let ambient_right = series.remainder_exact(params.group_end(k - 1))?;
    let ambient = Interval::new(Rational::zero(), ambient_right).unwrap();
    let direct = iterate(&series, params.group_end(k), cap)?.restrict(&ambient);
    if direct != window {
        return Err(Error::WindowMismatch { k });
    }
    Ok(window)
}

/// Census of level `k`: closed-form counts and lengths, re-derived from a
/// materialized iterate whenever the enumeration fits within `cap`
/// (`cross_checked` records whether that oracle ran).
pub fn level_census(params: &MMParams, k: usize, cap: usize) -> Result<LevelCensus> {
    assert!(k >= 1, "census levels are 1-based");
    require_exact(params)?;
    let series = Series::mm(params.clone());
    let q = params.q(k);
    let r = series.remainder_exact(params.group_end(k))?;
    let census = LevelCensus {
        k,
        gap_count: new_comp_count(params, k),
        gap_length: Rational::int(2) * &q - &r,
        comp_count: comp_count(params, k),
        new_comp_count: new_comp_count(params, k),
        new_comp_length: r.clone(),
        cross_checked: false,
    };
    if !census.gap_length.is_positive() {
        return Err(Error::CensusMismatch {
            k,
            detail: "gap length must be positive".into(),
        });
    }

    let current = match iterate(&series, params.group_end(k), cap) {
        Ok(u) => u,
        Err(Error::CapExceeded { .. }) => return Ok(census),
        Err(e) => return Err(e),
    };
    let previous = iterate(&series, params.group_end(k - 1), cap)?;
    let ambient = Interval::new(Rational::zero(), series.remainder_exact(0)?).unwrap();
    let gaps_now = current.gaps(&ambient)?;
    let gaps_before = previous.gaps(&ambient)?;

    if BigInt::from(current.len()) != census.comp_count {
        return Err(Error::CensusMismatch {
            k,
            detail: format!(
                "component count: closed form {} vs iterate {}",
                census.comp_count,
                current.len()
            ),
        });
    }
    // New gaps are the gaps of the current iterate that do not cover a gap
    // of the previous one (old gaps persist, only widening).
    let mut new_gaps = 0usize;
    for g in &gaps_now {
        let covers_old = gaps_before
            .iter()
            .any(|old| g.left() <= old.left() && old.right() <= g.right());
        if covers_old {
            continue;
        }
        new_gaps += 1;
        if g.length() != census.gap_length {
            return Err(Error::CensusMismatch {
                k,
                detail: format!(
                    "new gap length: closed form {} vs iterate {}",
                    census.gap_length,
                    g.length()
                ),
            });
        }
    }
    if BigInt::from(new_gaps) != census.gap_count {
        return Err(Error::CensusMismatch {
            k,
            detail: format!(
                "new gap count: closed form {} vs iterate {}",
                census.gap_count, new_gaps
            ),
        });
    }
    // New components are those not concentric with a previous component.
    let old_centers: HashSet<Rational> =
        previous.components().iter().map(Interval::center).collect();
    let mut new_comps = 0usize;
    for c in current.components() {
        if old_centers.contains(&c.center()) {
            continue;
        }
        new_comps += 1;
        if c.length() != census.new_comp_length {
            return Err(Error::CensusMismatch {
                k,
                detail: format!(
                    "new component length: closed form {} vs iterate {}",
                    census.new_comp_length,
                    c.length()
                ),
            });
        }
    }
    if BigInt::from(new_comps) != census.new_comp_count {
        return Err(Error::CensusMismatch {
            k,
            detail: format!(
                "new component count: closed form {} vs iterate {}",
                census.new_comp_count, new_comps
            ),
        });
    }
    Ok(LevelCensus {
        cross_checked: true,
        ..census
    })
}

/// Measure of `I_(N_k)` by the census formula
/// `r_0 - sum over j <= k of gap_count(j) * gap_length(j)`; `r_0` when
/// `k = 0`. Cross-checked against the measure of the materialized iterate
/// whenever enumeration fits within `cap`.
pub fn measure_e_truncated(params: &MMParams, k: usize, cap: usize) -> Result<Rational> {
    require_exact(params)?;
    let series = Series::mm(params.clone());
    let closed = measure_truncated_closed(params, k, &series)?;
    match iterate(&series, params.group_end(k), cap) {
        Ok(u) => {
            let direct = u.measure();
            if direct != closed {
                return Err(Error::MeasureMismatch {
                    k,
                    closed: closed.to_string(),
                    direct: direct.to_string(),
                });
            }
        }
        Err(Error::CapExceeded { .. }) => {}
        Err(e) => return Err(e),
    }
    Ok(closed)
}

fn measure_truncated_closed(params: &MMParams, k: usize, series: &Series) -> Result<Rational> {
    let mut m = series.remainder_exact(0)?;
    for j in 1..=k {
        let gap_len =
            Rational::int(2) * params.q(j) - series.remainder_exact(params.group_end(j))?;
        m -= &(Rational::from(new_comp_count(params, j)) * gap_len);
    }
    Ok(m)
}

/// Exact measure of the achievement set:
/// `r_0 - sum over all j of gap_count(j) * (2 q_j - r_(N_j))`, with the
/// infinite sum evaluated in closed form.
pub fn measure_e(params: &MMParams) -> Result<Rational> {
    let series = Series::mm(params.clone());
    let r0 = series.remainder_exact(0)?;
    // 2 q_j - r_(N_j) = (1/3) q_j - (2/3) T_j.
    let deficit = weighted_census_tail(
        params,
        0,
        &Rational::new(1, 3).unwrap(),
        &Rational::new(-2, 3).unwrap(),
    )?;
    Ok(r0 - deficit)
}

/// Classes of the achievement set's component intervals for
/// `eta = 0 ..= k_max`, with exact counts and lengths.
pub fn eta_classes(params: &MMParams, k_max: usize) -> Result<Vec<EtaClass>> {
    require_exact(params)?;
    let series = Series::mm(params.clone());
    let mut classes = Vec::with_capacity(k_max + 1);
    for eta in 0..=k_max {
        let count = if eta == 0 {
            BigInt::one()
        } else {
            new_comp_count(params, eta)
        };
        let length =
            series.remainder_exact(params.group_end(eta))? - pow2_weighted_tail(params, eta)?;
        debug_assert!(length.is_positive());
        classes.push(EtaClass { eta, count, length });
    }
    Ok(classes)
}

/// Total length of all component intervals,
/// `sum over eta >= 0 of count(eta) * length(eta)`, in closed form. The
/// length of every class with `eta = k >= 1` collapses to exactly `q_k`,
/// which is what makes the infinite sum expressible.
pub fn eta_total_measure(params: &MMParams) -> Result<Rational> {
    let classes = eta_classes(params, 0)?;
    let central = &classes[0].length;
    let rest = weighted_census_tail(params, 0, &Rational::one(), &Rational::zero())?;
    Ok(central + rest)
}

/// Measure of the boundary: the measure of the achievement set minus the
/// total measure of its component intervals. The boundary carries no
/// measure, so the result is exactly `0`; the two sides are computed by
/// independent closed forms, which makes the subtraction a genuine check
/// rather than a restatement.
pub fn boundary_measure(params: &MMParams) -> Result<Rational> {
    Ok(measure_e(params)? - eta_total_measure(params)?)
}

/// The combinatorial identity that collapses the boundary-measure
/// computation:
/// `1 + sum over i < k of 2^(n_i) * prod over j < i of (2^(n_j) + 1)`
/// equals `prod over j < k of (2^(n_j) + 1)`. Requires `k >= 2`.
pub fn telescoping_check(params: &MMParams, k: usize) -> Result<bool> {
    if k < 2 {
        return Err(Error::LevelTooSmall { k, min: 2 });
    }
    let lhs: BigInt = BigInt::one()
        + (1..k)
            .map(|i| (BigInt::one() << params.group_size(i) as usize) * comp_count(params, i - 1))
            .sum::<BigInt>();
    Ok(lhs == comp_count(params, k - 1))
}

/// Depth-`k` residual: the measure of `I_(N_k)` minus the total measure of
/// the component-interval classes with `eta <= k`. Equals the tail sum
/// `sum over j > k of new_comp_count(j) * (3 q_j - r_(N_j))`, must be
/// positive, and tends to zero; both routes are computed and compared.
pub fn boundary_residual(params: &MMParams, k: usize) -> Result<Rational> {
    require_exact(params)?;
    let series = Series::mm(params.clone());
    // 3 q_j - r_(N_j) = (4/3) q_j - (2/3) T_j.
    let tail_route = weighted_census_tail(
        params,
        k,
        &Rational::new(4, 3).unwrap(),
        &Rational::new(-2, 3).unwrap(),
    )?;
    let mut classes_route = measure_truncated_closed(params, k, &series)?;
    for c in eta_classes(params, k)? {
        classes_route -= &(Rational::from(c.count) * c.length);
    }
    if tail_route != classes_route {
        return Err(Error::MeasureMismatch {
            k,
            closed: tail_route.to_string(),
            direct: classes_route.to_string(),
        });
    }
    if !tail_route.is_positive() {
        return Err(Error::ResidualViolation { k });
    }
    Ok(tail_route)
}

/// Residuals for `k = 0 ..= k_max`, verified strictly decreasing.
pub fn residual_trace(params: &MMParams, k_max: usize) -> Result<Vec<(usize, Rational)>> {
    let mut trace = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let r = boundary_residual(params, k)?;
        if let Some((_, prev)) = trace.last() {
            if &r >= prev {
                return Err(Error::ResidualViolation { k });
            }
        }
        trace.push((k, r));
    }
    Ok(trace)
}
