//! Convergent positive non-increasing series with exact terms and
//! exact-or-enclosed remainders.
//!
//! Indices are 1-based: `term(1)` is the first term, `remainder(n)` is the
//! tail sum of all terms after index `n`, and `remainder(0)` is the full sum
//! of the series. Every built-in generator keeps terms strictly positive and
//! non-increasing.
//!
//! Remainders are exact rationals whenever the descriptor admits a closed
//! form (all fixed generators; grouped series whose group-size rule is
//! eventually constant or eventually periodic). A grouped series with
//! unboundedly growing group sizes has no closed-form tail; its remainders
//! are certified [`Enclosure`]s that can be refined by unrolling more groups.

use num::bigint::BigInt;
use num::traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{Enclosure, Rational};

/// Group-size rule beyond the explicitly listed prefix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tail {
    /// All further groups have size `c`. Remainders stay exact.
    Constant(u32),
    /// Further group sizes repeat this pattern. Remainders stay exact.
    Periodic(Vec<u32>),
    /// Sizes keep growing by `step` past the end of the prefix. There is no
    /// closed-form tail; remainders become refinable enclosures.
    Arithmetic { step: u32 },
}

/// Parameters of the grouped series construction.
///
/// Group `k` (1-based) has size rule `n_k >= 1` and scale
/// `q_1 = 1`, `q_(k+1) = q_k / (3 * 2^(n_(k+1)))`. The series consists of
/// consecutive blocks of `n_k + 2` terms; `N_k` denotes the index of the
/// last term of group `k`, with `N_0 = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MMParams {
    prefix: Vec<u32>,
    tail: Tail,
}

impl MMParams {
    /// Validates group sizes (`>= 1` everywhere; a periodic tail must be
    /// nonempty; an arithmetic tail needs a nonempty prefix to grow from).
    pub fn new(prefix: Vec<u32>, tail: Tail) -> Result<Self> {
        for (i, &n) in prefix.iter().enumerate() {
            if n == 0 {
                return Err(Error::InvalidGroupSize { k: i + 1 });
            }
        }
        match &tail {
            Tail::Constant(c) => {
                if *c == 0 {
                    return Err(Error::InvalidGroupSize { k: prefix.len() + 1 });
                }
            }
            Tail::Periodic(p) => {
                if p.is_empty() {
                    return Err(Error::BadDescriptor("periodic tail is empty".into()));
                }
                if let Some(pos) = p.iter().position(|&n| n == 0) {
                    return Err(Error::InvalidGroupSize { k: prefix.len() + pos + 1 });
                }
            }
            Tail::Arithmetic { .. } => {
                if prefix.is_empty() {
                    return Err(Error::BadDescriptor(
                        "arithmetic tail needs a nonempty prefix".into(),
                    ));
                }
            }
        }
        Ok(MMParams { prefix, tail })
    }

    /// Convenience constructor: listed sizes, then constant continuation by
    /// the last listed size.
    pub fn with_constant_tail(prefix: Vec<u32>) -> Result<Self> {
        let last = *prefix.last().ok_or_else(|| {
            Error::BadDescriptor("group size prefix is empty".into())
        })?;
        MMParams::new(prefix, Tail::Constant(last))
    }

    pub fn prefix(&self) -> &[u32] {
        &self.prefix
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    /// Whether remainders admit exact closed forms.
    pub fn has_exact_tail(&self) -> bool {
        !matches!(self.tail, Tail::Arithmetic { .. })
    }

    /// Group size `n_k`, `k >= 1`.
    pub fn group_size(&self, k: usize) -> u32 {
        assert!(k >= 1, "group indices are 1-based");
        let m = self.prefix.len();
        if k <= m {
            return self.prefix[k - 1];
        }
        match &self.tail {
            Tail::Constant(c) => *c,
            Tail::Periodic(p) => p[(k - m - 1) % p.len()],
            Tail::Arithmetic { step } => {
                self.prefix[m - 1] + step * u32::try_from(k - m).expect("group index overflow")
            }
        }
    }

    /// Index `N_k` of the last term of group `k` (`N_0 = 0`); group `k`
    /// contributes the `n_k + 2` terms at indices `N_(k-1) + 1 ..= N_k`.
    pub fn group_end(&self, k: usize) -> u64 {
        (1..=k).map(|j| u64::from(self.group_size(j)) + 2).sum()
    }

    /// The group `k` with `N_(k-1) < i <= N_k`, for a term index `i >= 1`.
    pub fn group_of_index(&self, i: u64) -> usize {
        assert!(i >= 1, "term indices are 1-based");
        let mut k = 0;
        let mut end = 0u64;
        while end < i {
            k += 1;
            end += u64::from(self.group_size(k)) + 2;
        }
        k
    }

    /// Group scale `q_k`: `q_1 = 1` and `q_(k+1) = q_k / (3 * 2^(n_(k+1)))`,
    /// so `q_k = 3^(1-k) * 2^(-(n_2 + ... + n_k))`.
    pub fn q(&self, k: usize) -> Rational {
        assert!(k >= 1, "group indices are 1-based");
        let shift: u64 = (2..=k).map(|j| u64::from(self.group_size(j))).sum();
        let denom = BigInt::from(3u8).pow(u32::try_from(k - 1).expect("level overflow"))
            * (BigInt::one() << usize::try_from(shift).expect("shift overflow"));
        Rational::new(BigInt::one(), denom).expect("denominator is positive")
    }

    /// Alternate scale convention `3^(1-k) * 2^(-(n_1 + ... + n_(k-1)))`,
    /// i.e. scaling by the sizes of groups `1..k-1` instead of `2..k`.
    ///
    /// This convention circulates alongside the recursive one but disagrees
    /// with it unless the size sequence is constant; nothing in this crate
    /// computes with it. It is provided so the discrepancy can be exhibited.
    pub fn q_alt_indexing(&self, k: usize) -> Rational {
        assert!(k >= 1, "group indices are 1-based");
        let shift: u64 = (1..k).map(|j| u64::from(self.group_size(j))).sum();
        let denom = BigInt::from(3u8).pow(u32::try_from(k - 1).expect("level overflow"))
            * (BigInt::one() << usize::try_from(shift).expect("shift overflow"));
        Rational::new(BigInt::one(), denom).expect("denominator is positive")
    }

    /// Exact tail sum `T_k = sum_(j>k) q_j`; fails when the group-size rule
    /// has no closed form.
    pub fn q_tail_sum(&self, k: usize) -> Result<Rational> {
        let m = self.prefix.len();
        match &self.tail {
            Tail::Arithmetic { .. } => Err(Error::ExactnessRequired),
            Tail::Constant(c) => {
                let base = k.max(m);
                let finite: Rational = (k + 1..=base).map(|j| self.q(j)).sum();
                // Beyond `base` each q shrinks by exactly 1/(3*2^c).
                let s = Rational::int(3) * Rational::pow2(i64::from(*c));
                let geo = self.q(base + 1) * &s / (&s - Rational::one());
                Ok(finite + geo)
            }
            Tail::Periodic(p) => {
                let base = k.max(m);
                let finite: Rational = (k + 1..=base).map(|j| self.q(j)).sum();
                // Over one full period the scale shrinks by a fixed factor.
                let lambda: Rational = p
                    .iter()
                    .map(|&c| (Rational::int(3) * Rational::pow2(i64::from(c))).recip().unwrap())
                    .fold(Rational::one(), |acc, x| acc * x);
                let one_period: Rational =
                    (base + 1..=base + p.len()).map(|j| self.q(j)).sum();
                Ok(finite + one_period / (Rational::one() - lambda))
            }
        }
    }

    /// Certified bracket for `T_k = sum_(j>k) q_j`, valid for any group-size
    /// rule: after unrolling `unroll` further groups exactly, the rest is
    /// bounded via `q_(j+1) <= q_j / 6`, giving
    /// `q_(K+1) <= sum_(j>K) q_j <= (6/5) q_(K+1)` for `K = k + unroll`.
    pub fn q_tail_sum_enclosure(&self, k: usize, unroll: usize) -> Enclosure {
        let finite: Rational = (k + 1..=k + unroll).map(|j| self.q(j)).sum();
        let first_rest = self.q(k + unroll + 1);
        let lo = &finite + &first_rest;
        let hi = finite + first_rest * Rational::new(6, 5).unwrap();
        Enclosure::new(lo, hi).expect("lower bound below upper bound")
    }

    /// Exact remainder at a group boundary:
    /// `r_(N_k) = (5/3) q_k + (2/3) T_k` for `k >= 1`, and the full sum for
    /// `k = 0`. Fails without a closed-form tail.
    pub fn remainder_at_group_end(&self, k: usize) -> Result<Rational> {
        if k == 0 {
            let group1 = (Rational::int(5) * Rational::pow2(i64::from(self.group_size(1)))
                - Rational::one())
                * self.q(1);
            return Ok(group1 + self.remainder_at_group_end(1)?);
        }
        let t = self.q_tail_sum(k)?;
        Ok((Rational::new(5, 3).unwrap() * self.q(k)) + Rational::new(2, 3).unwrap() * t)
    }

    /// Certified remainder bracket at a group boundary, with the tail sum
    /// replaced by [`MMParams::q_tail_sum_enclosure`] at the given unroll
    /// depth. Exact descriptors still produce a genuine enclosure (useful
    /// for cross-checking the closed form).
    pub fn remainder_at_group_end_enclosure(&self, k: usize, unroll: usize) -> Enclosure {
        if k == 0 {
            let group1 = (Rational::int(5) * Rational::pow2(i64::from(self.group_size(1)))
                - Rational::one())
                * self.q(1);
            return self
                .remainder_at_group_end_enclosure(1, unroll)
                .add(&Enclosure::exact(group1));
        }
        let head = Enclosure::exact(Rational::new(5, 3).unwrap() * self.q(k));
        let tail = self
            .q_tail_sum_enclosure(k, unroll)
            .scale(&Rational::new(2, 3).unwrap());
        head.add(&tail)
    }
}

/// Structured description of a supported series.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Descriptor {
    /// Guthrie–Nymann series: `c_(2n-1) = 3/4^n`, `c_(2n) = 2/4^n`.
    GuthrieNymann,
    /// Weinstein–Shapiro series: `d_(5(k-1)+m) = 3(9-m)/10^(k+1)` for
    /// `m = 1..5`.
    WeinsteinShapiro,
    /// Paired powers of four: `b_(2k-1) = b_(2k) = 1/4^k`.
    PairedQuarters,
    /// Geometric series `first * ratio^(i-1)` with `ratio` in `(0, 1)`.
    Geometric { first: Rational, ratio: Rational },
    /// Grouped series built from [`MMParams`].
    Mm(MMParams),
    /// Finitely many listed terms followed by a geometric tail.
    FinitePlusGeometricTail {
        head: Vec<Rational>,
        tail_first: Rational,
        tail_ratio: Rational,
    },
}

/// A convergent series of positive non-increasing terms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Series {
    descriptor: Descriptor,
}

impl Series {
    /// Guthrie–Nymann series, sum `5/3`.
    pub fn gn() -> Series {
        Series {
            descriptor: Descriptor::GuthrieNymann,
        }
    }

    /// Weinstein–Shapiro series, sum `1`.
    pub fn ws() -> Series {
        Series {
            descriptor: Descriptor::WeinsteinShapiro,
        }
    }

    /// Paired powers of four `1/4, 1/4, 1/16, 1/16, ...`, sum `2/3`.
    pub fn paired_quarters() -> Series {
        Series {
            descriptor: Descriptor::PairedQuarters,
        }
    }

    /// Geometric series; requires `first > 0` and `0 < ratio < 1`.
    pub fn geometric(first: Rational, ratio: Rational) -> Result<Series> {
        if !first.is_positive() {
            return Err(Error::BadDescriptor("geometric first term must be positive".into()));
        }
        if !ratio.is_positive() || ratio >= Rational::one() {
            return Err(Error::BadDescriptor("geometric ratio must be in (0, 1)".into()));
        }
        Ok(Series {
            descriptor: Descriptor::Geometric { first, ratio },
        })
    }

    /// Grouped series for the given parameters.
    pub fn mm(params: MMParams) -> Series {
        Series {
            descriptor: Descriptor::Mm(params),
        }
    }

    /// Listed positive non-increasing head followed by a geometric tail that
    /// splices monotonically (`tail_first <= last head term`).
    pub fn finite_plus_geometric(
        head: Vec<Rational>,
        tail_first: Rational,
        tail_ratio: Rational,
    ) -> Result<Series> {
        for (i, t) in head.iter().enumerate() {
            if !t.is_positive() {
                return Err(Error::NonpositiveTerm { index: i as u64 + 1 });
            }
            if i > 0 && t > &head[i - 1] {
                return Err(Error::NotMonotone { index: i as u64 });
            }
        }
        if !tail_first.is_positive() {
            return Err(Error::NonpositiveTerm { index: head.len() as u64 + 1 });
        }
        if let Some(last) = head.last() {
            if &tail_first > last {
                return Err(Error::NotMonotone { index: head.len() as u64 });
            }
        }
        if !tail_ratio.is_positive() || tail_ratio >= Rational::one() {
            return Err(Error::BadDescriptor("tail ratio must be in (0, 1)".into()));
        }
        Ok(Series {
            descriptor: Descriptor::FinitePlusGeometricTail {
                head,
                tail_first,
                tail_ratio,
            },
        })
    }

    pub fn descriptor(&self) -> &Descriptor {
        &self.descriptor
    }

    /// Grouped-series parameters, when this is a grouped series.
    pub fn mm_params(&self) -> Option<&MMParams> {
        match &self.descriptor {
            Descriptor::Mm(p) => Some(p),
            _ => None,
        }
    }

    /// Whether `remainder_exact` succeeds at every index.
    pub fn has_exact_remainders(&self) -> bool {
        match &self.descriptor {
            Descriptor::Mm(p) => p.has_exact_tail(),
            _ => true,
        }
    }

    /// Descriptor-level proof that only finitely many indices satisfy the
    /// Kakeya condition `a_n > r_n`: a geometric tail with ratio `>= 1/2`
    /// forces `a_n <= r_n` for every tail index.
    pub fn proves_finitely_many_kakeya(&self) -> bool {
        let half = Rational::new(1, 2).unwrap();
        match &self.descriptor {
            Descriptor::Geometric { ratio, .. } => ratio >= &half,
            Descriptor::FinitePlusGeometricTail { tail_ratio, .. } => tail_ratio >= &half,
            _ => false,
        }
    }

    /// Term `a_i`, `i >= 1`. Exact for every descriptor.
    pub fn term(&self, i: u64) -> Rational {
        assert!(i >= 1, "term indices are 1-based");
        match &self.descriptor {
            Descriptor::GuthrieNymann => {
                if i % 2 == 1 {
                    let n = (i + 1) / 2;
                    Rational::int(3) * Rational::pow2(-2 * n as i64)
                } else {
                    let n = i / 2;
                    Rational::int(2) * Rational::pow2(-2 * n as i64)
                }
            }
            Descriptor::WeinsteinShapiro => {
                let k = (i - 1) / 5 + 1;
                let m = (i - 1) % 5 + 1;
                let denom = BigInt::from(10u8).pow(u32::try_from(k + 1).expect("index overflow"));
                Rational::new(BigInt::from(3 * (9 - m)), denom).unwrap()
            }
            Descriptor::PairedQuarters => {
                let k = (i + 1) / 2;
                Rational::pow2(-2 * k as i64)
            }
            Descriptor::Geometric { first, ratio } => {
                first * ratio.pow(i32::try_from(i - 1).expect("index overflow"))
            }
            Descriptor::Mm(p) => {
                let k = p.group_of_index(i);
                let j = i - p.group_end(k - 1);
                let n = i64::from(p.group_size(k));
                let b = match j {
                    1 => Rational::pow2(n + 1),
                    2 => Rational::pow2(n) + Rational::one(),
                    _ => Rational::pow2(n + 3 - j as i64),
                };
                b * p.q(k)
            }
            Descriptor::FinitePlusGeometricTail {
                head,
                tail_first,
                tail_ratio,
            } => {
                let h = head.len() as u64;
                if i <= h {
                    head[(i - 1) as usize].clone()
                } else {
                    tail_first * tail_ratio.pow(i32::try_from(i - h - 1).expect("index overflow"))
                }
            }
        }
    }

    /// Partial sum `a_1 + ... + a_n` (zero when `n = 0`).
    pub fn partial_sum(&self, n: u64) -> Rational {
        (1..=n).map(|i| self.term(i)).sum()
    }

    /// Exact remainder `r_n = sum_(i>n) a_i`; fails when the descriptor has
    /// no closed-form tail.
    pub fn remainder_exact(&self, n: u64) -> Result<Rational> {
        match &self.descriptor {
            Descriptor::GuthrieNymann => {
                // r_(2m) = (5/3) 4^(-m), r_(2m-1) = (11/3) 4^(-m).
                if n % 2 == 0 {
                    Ok(Rational::new(5, 3).unwrap() * Rational::pow2(-(n as i64)))
                } else {
                    Ok(Rational::new(11, 3).unwrap() * Rational::pow2(-(n as i64 + 1)))
                }
            }
            Descriptor::WeinsteinShapiro => {
                if n == 0 {
                    return Ok(Rational::one());
                }
                let k = (n - 1) / 5 + 1;
                let m = (n - 1) % 5 + 1;
                let in_group: Rational = (m + 1..=5)
                    .map(|mm| {
                        let denom =
                            BigInt::from(10u8).pow(u32::try_from(k + 1).expect("index overflow"));
                        Rational::new(BigInt::from(3 * (9 - mm)), denom).unwrap()
                    })
                    .sum();
                let full_groups = Rational::new(
                    BigInt::one(),
                    BigInt::from(10u8).pow(u32::try_from(k).expect("index overflow")),
                )
                .unwrap();
                Ok(in_group + full_groups)
            }
            Descriptor::PairedQuarters => {
                // r_(2m) = (2/3) 4^(-m), r_(2m-1) = (5/3) 4^(-m).
                if n % 2 == 0 {
                    Ok(Rational::new(2, 3).unwrap() * Rational::pow2(-(n as i64)))
                } else {
                    Ok(Rational::new(5, 3).unwrap() * Rational::pow2(-(n as i64 + 1)))
                }
            }
            Descriptor::Geometric { first, ratio } => {
                let rn = ratio.pow(i32::try_from(n).expect("index overflow"));
                Ok(first * rn / (Rational::one() - ratio))
            }
            Descriptor::Mm(p) => {
                if n == 0 {
                    return p.remainder_at_group_end(0);
                }
                let k = p.group_of_index(n);
                let nk = p.group_end(k);
                let in_group: Rational = (n + 1..=nk).map(|i| self.term(i)).sum();
                Ok(in_group + p.remainder_at_group_end(k)?)
            }
            Descriptor::FinitePlusGeometricTail {
                head,
                tail_first,
                tail_ratio,
            } => {
                let h = head.len() as u64;
                let tail_from = |j: u64| {
                    // sum of tail terms with index > j, for j >= h
                    tail_first * tail_ratio.pow(i32::try_from(j - h).expect("index overflow"))
                        / (Rational::one() - tail_ratio)
                };
                if n >= h {
                    Ok(tail_from(n))
                } else {
                    let head_rest: Rational = head[n as usize..].iter().sum();
                    Ok(head_rest + tail_from(h))
                }
            }
        }
    }

    /// Certified remainder enclosure.
    ///
    /// Exact-tail descriptors return a zero-width enclosure. A grouped
    /// series with growing sizes returns a bracket whose width shrinks by a
    /// factor of at least six per additional `unroll` step.
    pub fn remainder(&self, n: u64, unroll: usize) -> Enclosure {
        match &self.descriptor {
            Descriptor::Mm(p) if !p.has_exact_tail() => {
                if n == 0 {
                    return p.remainder_at_group_end_enclosure(0, unroll);
                }
                let k = p.group_of_index(n);
                let nk = p.group_end(k);
                let in_group: Rational = (n + 1..=nk).map(|i| self.term(i)).sum();
                p.remainder_at_group_end_enclosure(k, unroll)
                    .add(&Enclosure::exact(in_group))
            }
            _ => Enclosure::exact(self.remainder_exact(n).expect("descriptor has exact tail")),
        }
    }

    /// Audits positivity and monotonicity of the terms up to `horizon`.
    pub fn check_monotone(&self, horizon: u64) -> Result<()> {
        let mut prev: Option<Rational> = None;
        for i in 1..=horizon {
            let t = self.term(i);
            if !t.is_positive() {
                return Err(Error::NonpositiveTerm { index: i });
            }
            if let Some(p) = prev {
                if t > p {
                    return Err(Error::NotMonotone { index: i });
                }
            }
            prev = Some(t);
        }
        Ok(())
    }
}
