//! Per-index comparison of terms against remainders, density statistics,
//! and the schedule chooser for the grouped construction.
//!
//! Index `n` satisfies the Kakeya condition when `a_n > r_n`; the reversed
//! condition is `a_n <= r_n` (ties count as reversed). `K` denotes the set
//! of indices satisfying the condition and `Kc` its complement.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{Comparison, Enclosure, Rational};
use crate::series::{MMParams, Series, Tail};

/// Classification of a single index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Tag {
    /// `a_n > r_n`.
    K,
    /// `a_n <= r_n`.
    Kc,
}

/// Exact per-index classification up to a horizon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KakeyaProfile {
    horizon: u64,
    tags: Vec<Tag>,
}

impl KakeyaProfile {
    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    /// Tag of index `i`, `1 <= i <= horizon`.
    pub fn tag(&self, i: u64) -> Tag {
        assert!(i >= 1 && i <= self.horizon, "index out of profile range");
        self.tags[(i - 1) as usize]
    }

    pub fn is_kc(&self, i: u64) -> bool {
        self.tag(i) == Tag::Kc
    }

    /// Indices `<= horizon` satisfying `a_n > r_n`, ascending.
    pub fn k_indices(&self) -> Vec<u64> {
        self.indices_with(Tag::K)
    }

    /// Indices `<= horizon` with `a_n <= r_n`, ascending.
    pub fn kc_indices(&self) -> Vec<u64> {
        self.indices_with(Tag::Kc)
    }

    fn indices_with(&self, want: Tag) -> Vec<u64> {
        self.tags
            .iter()
            .enumerate()
            .filter(|(_, t)| **t == want)
            .map(|(i, _)| i as u64 + 1)
            .collect()
    }

    /// Number of reversed-condition indices `<= n`.
    pub fn kc_count_upto(&self, n: u64) -> u64 {
        assert!(n <= self.horizon, "count beyond profile horizon");
        self.tags[..n as usize]
            .iter()
            .filter(|t| **t == Tag::Kc)
            .count() as u64
    }
}

/// Classifies every index up to `horizon`.
///
/// Exact-remainder series are decided directly. Enclosure-valued remainders
/// are refined by unrolling more groups until the comparison separates;
/// after `refine_budget` failed refinements the offending index is reported.
pub fn kakeya_profile(s: &Series, horizon: u64, refine_budget: usize) -> Result<KakeyaProfile> {
    let mut tags = Vec::with_capacity(horizon as usize);
    for i in 1..=horizon {
        let a = Enclosure::exact(s.term(i));
        let mut decided = None;
        for unroll in 0..=refine_budget {
            let r = s.remainder(i, unroll);
            match a.compare(&r) {
                Comparison::Greater => {
                    decided = Some(Tag::K);
                    break;
                }
                Comparison::Less | Comparison::Equal => {
                    decided = Some(Tag::Kc);
                    break;
                }
                Comparison::Undecided => continue,
            }
        }
        match decided {
            Some(t) => tags.push(t),
            None => {
                return Err(Error::Undecided {
                    index: i,
                    budget: refine_budget,
                })
            }
        }
    }
    Ok(KakeyaProfile { horizon, tags })
}

/// One row of a density report: counts and exact ratio at checkpoint `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensitySample {
    pub n: u64,
    /// `card { i <= n : i in B }`.
    pub card_b: u64,
    /// `card { i <= n : i in A }` for the reference set `A`.
    pub card_a: u64,
    /// `card_b / card_a`.
    pub ratio: Rational,
}

/// Relative-density statistics `card B_(<=n) / card A_(<=n)` along a
/// checkpoint schedule. With the default reference set (all indices) the
/// ratio at `n` is the ordinary density numerator `card B_(<=n) / n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityReport {
    pub horizon: u64,
    pub samples: Vec<DensitySample>,
    /// Ratio at the horizon itself.
    pub ratio_at_horizon: Rational,
    /// Smallest sampled ratio.
    pub min_ratio: Rational,
    /// Largest sampled ratio.
    pub max_ratio: Rational,
}

impl DensityReport {
    /// CSV rendering with header `n,card,ratio`; ratios are exact `p/q`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,card,ratio\n");
        for s in &self.samples {
            out.push_str(&format!("{},{},{}\n", s.n, s.card_b, s.ratio));
        }
        out
    }
}

/// Exact relative density of `pred` against `reference` (all indices when
/// `None`), sampled every `stride` indices plus the horizon itself.
///
/// Fails when the reference set has no members up to the horizon.
pub fn density(
    pred: &dyn Fn(u64) -> bool,
    reference: Option<&dyn Fn(u64) -> bool>,
    horizon: u64,
    stride: u64,
) -> Result<DensityReport> {
    assert!(horizon >= 1 && stride >= 1, "horizon and stride are positive");
    let mut card_b = 0u64;
    let mut card_a = 0u64;
    let mut samples = Vec::new();
    for n in 1..=horizon {
        if pred(n) {
            card_b += 1;
        }
        let in_a = match reference {
            Some(a) => a(n),
            None => true,
        };
        if in_a {
            card_a += 1;
        }
        if (n % stride == 0 || n == horizon) && card_a > 0 {
            samples.push(DensitySample {
                n,
                card_b,
                card_a,
                ratio: Rational::new(card_b, card_a).unwrap(),
            });
        }
    }
    if card_a == 0 {
        return Err(Error::EmptyReference { horizon });
    }
    let last = samples.last().expect("card_a > 0 guarantees a horizon sample");
    let ratio_at_horizon = last.ratio.clone();
    let min_ratio = samples.iter().map(|s| &s.ratio).min().unwrap().clone();
    let max_ratio = samples.iter().map(|s| &s.ratio).max().unwrap().clone();
    Ok(DensityReport {
        horizon,
        samples,
        ratio_at_horizon,
        min_ratio,
        max_ratio,
    })
}

/// Chooses the minimal group schedule for a prescribed normalizer sequence.
///
/// Given a non-decreasing integer sequence `m` diverging to infinity, picks
/// the smallest boundary indices `N_k` with
///
/// * `m_n >= (k+1)^2` for every `n > N_k`, and
/// * `N_k - N_(k-1) >= 3`,
///
/// then returns the grouped-series parameters with sizes
/// `n_k = N_k - N_(k-1) - 2` for `k <= k_max`, continued by a constant
/// tail equal to the last chosen size. (The reversed-condition index
/// pattern `{N_(k-1)+1, N_(k-1)+2}` depends only on the boundaries up to
/// `k_max`, so any continuation would do; the constant one keeps
/// remainders exact.)
///
/// Scanning stops with an error if `m` fails to reach a threshold within
/// `scan_budget` indices, or if `m` is found to decrease or vanish.
pub fn choose_schedule(
    m: &dyn Fn(u64) -> u64,
    k_max: usize,
    scan_budget: u64,
) -> Result<MMParams> {
    assert!(k_max >= 1, "need at least one group");
    let mut sizes = Vec::with_capacity(k_max);
    let mut prev_n = 0u64;
    let mut prev_m = 0u64;
    let mut scanned = 0u64;
    for k in 1..=k_max {
        let target = (k as u64 + 1) * (k as u64 + 1);
        // Smallest N with m_n >= target for all n > N; by monotonicity this
        // is one less than the first index reaching the target.
        let first_reaching;
        let mut i = scanned.max(1);
        loop {
            if i > scan_budget {
                return Err(Error::ScheduleScanExhausted {
                    target,
                    budget: scan_budget,
                });
            }
            let mi = m(i);
            if i > scanned {
                if mi == 0 {
                    return Err(Error::InvalidMSeq {
                        index: i,
                        reason: "sequence value is zero",
                    });
                }
                if mi < prev_m {
                    return Err(Error::InvalidMSeq {
                        index: i,
                        reason: "sequence decreases",
                    });
                }
                prev_m = mi;
                scanned = i;
            }
            if mi >= target {
                first_reaching = i;
                break;
            }
            i += 1;
        }
        let n_k_boundary = first_reaching - 1;
        let boundary = n_k_boundary.max(prev_n + 3);
        sizes.push(u32::try_from(boundary - prev_n - 2).expect("group size overflow"));
        prev_n = boundary;
    }
    let last = *sizes.last().unwrap();
    MMParams::new(sizes, Tail::Constant(last))
}

/// One evaluation of the reversed-condition ratio at index `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchedulePoint {
    pub n: u64,
    /// `card { i <= n : a_i <= r_i }`, decided from the series itself.
    pub kc_count: u64,
    /// Normalizer value `m_n`.
    pub m: u64,
    /// `kc_count / m`.
    pub ratio: Rational,
    /// The group `k` with `N_(k-1) < n <= N_k`.
    pub group: usize,
    /// Proof bound `2k / k^2` for that group.
    pub bound: Rational,
}

/// Ratio `card { i <= n : a_i <= r_i } / m_n` for a grouped series, together
/// with the bound `2k/k^2` where `k` is the group containing `n`.
pub fn normalized_kc_ratio(
    params: &MMParams,
    m: &dyn Fn(u64) -> u64,
    n: u64,
    refine_budget: usize,
) -> Result<SchedulePoint> {
    Ok(normalized_kc_trace(params, m, &[n], refine_budget)?.pop().unwrap())
}

/// [`normalized_kc_ratio`] at each checkpoint, sharing one profile computation.
pub fn normalized_kc_trace(
    params: &MMParams,
    m: &dyn Fn(u64) -> u64,
    checkpoints: &[u64],
    refine_budget: usize,
) -> Result<Vec<SchedulePoint>> {
    assert!(!checkpoints.is_empty(), "need at least one checkpoint");
    assert!(checkpoints.iter().all(|&n| n >= 1), "indices are 1-based");
    let horizon = *checkpoints.iter().max().unwrap();
    let series = Series::mm(params.clone());
    let profile = kakeya_profile(&series, horizon, refine_budget)?;
    let mut points = Vec::with_capacity(checkpoints.len());
    for &n in checkpoints {
        let kc_count = profile.kc_count_upto(n);
        let mn = m(n);
        let group = params.group_of_index(n);
        let k = group as u64;
        points.push(SchedulePoint {
            n,
            kc_count,
            m: mn,
            ratio: Rational::new(kc_count, mn).map_err(|_| Error::InvalidMSeq {
                index: n,
                reason: "sequence value is zero",
            })?,
            group,
            bound: Rational::new(2 * k, k * k).unwrap(),
        });
    }
    Ok(points)
}
