//! Exact geometry of finite unions of closed intervals.
//!
//! [`IntervalUnion`] keeps its components normalized: sorted, pairwise
//! disjoint, with touching components merged. All measures, gaps and
//! containment queries are exact rational computations.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numeric::Rational;

/// Closed interval `[left, right]` with `left <= right`.
#[derive(Clone, PartialEq, Eq)]
pub struct Interval {
    left: Rational,
    right: Rational,
}

impl Interval {
    /// Builds `[left, right]`; fails when `left > right`.
    pub fn new(left: Rational, right: Rational) -> Result<Self> {
        if left > right {
            return Err(Error::InvalidInterval {
                left: left.to_string(),
                right: right.to_string(),
            });
        }
        Ok(Interval { left, right })
    }

    /// Degenerate interval `[v, v]`.
    pub fn point(v: Rational) -> Self {
        Interval {
            left: v.clone(),
            right: v,
        }
    }

    pub fn left(&self) -> &Rational {
        &self.left
    }

    pub fn right(&self) -> &Rational {
        &self.right
    }

    pub fn length(&self) -> Rational {
        &self.right - &self.left
    }

    pub fn center(&self) -> Rational {
        (&self.left + &self.right) * Rational::new(1, 2).unwrap()
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.left <= v && v <= &self.right
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.left <= other.left && other.right <= self.right
    }

    /// Intersection with `other`, or `None` when disjoint.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let left = self.left.clone().max(other.left.clone());
        let right = self.right.clone().min(other.right.clone());
        (left <= right).then(|| Interval { left, right })
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.left, self.right)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        (&self.left, &self.right).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let (left, right) = <(Rational, Rational)>::deserialize(deserializer)?;
        Interval::new(left, right).map_err(D::Error::custom)
    }
}

/// Normalized finite union of closed intervals.
///
/// Components are sorted in increasing order and separated by gaps of
/// positive length; touching or overlapping raw intervals are merged on
/// construction. Two unions describing the same point set are therefore
/// structurally equal.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct IntervalUnion {
    components: Vec<Interval>,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        IntervalUnion { components: vec![] }
    }

    /// Normalizes an arbitrary finite family of closed intervals.
    pub fn normalize(mut raw: Vec<Interval>) -> Self {
        raw.sort_by(|a, b| a.left.cmp(&b.left).then_with(|| a.right.cmp(&b.right)));
        let mut components: Vec<Interval> = Vec::with_capacity(raw.len());
        for iv in raw {
            match components.last_mut() {
                Some(last) if iv.left <= last.right => {
                    if iv.right > last.right {
                        last.right = iv.right;
                    }
                }
                _ => components.push(iv),
            }
        }
        IntervalUnion { components }
    }

    /// Union of translates: `{[f, f + length] : f in offsets}`, normalized.
    pub fn translate_union(offsets: &[Rational], length: &Rational) -> Result<Self> {
        if length.is_negative() {
            return Err(Error::NegativeLength(length.to_string()));
        }
        let raw = offsets
            .iter()
            .map(|f| Interval {
                left: f.clone(),
                right: f + length,
            })
            .collect();
        Ok(Self::normalize(raw))
    }

    pub fn components(&self) -> &[Interval] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Smallest closed interval containing the union, when nonempty.
    pub fn span(&self) -> Option<Interval> {
        match (self.components.first(), self.components.last()) {
            (Some(first), Some(last)) => Some(Interval {
                left: first.left.clone(),
                right: last.right.clone(),
            }),
            _ => None,
        }
    }

    /// Total length (Lebesgue measure) of the union.
    pub fn measure(&self) -> Rational {
        self.components.iter().map(Interval::length).sum()
    }

    /// Length of the longest component; fails on the empty union.
    pub fn norm(&self) -> Result<Rational> {
        self.components
            .iter()
            .map(Interval::length)
            .max()
            .ok_or(Error::EmptyUnion)
    }

    pub fn contains_point(&self, v: &Rational) -> bool {
        // Components are sorted, so binary search on left endpoints.
        let idx = self.components.partition_point(|c| &c.left <= v);
        idx > 0 && self.components[idx - 1].contains(v)
    }

    /// Whether every component of `self` lies inside a component of `other`.
    pub fn is_subset_of(&self, other: &IntervalUnion) -> bool {
        let mut j = 0;
        'outer: for c in &self.components {
            while j < other.components.len() {
                let o = &other.components[j];
                if o.right < c.left {
                    j += 1;
                } else if o.contains_interval(c) {
                    continue 'outer;
                } else {
                    return false;
                }
            }
            return false;
        }
        true
    }

    /// Intersection with a closed window interval.
    pub fn restrict(&self, window: &Interval) -> IntervalUnion {
        let components = self
            .components
            .iter()
            .filter_map(|c| c.intersect(window))
            .collect();
        IntervalUnion { components }
    }

    /// Maximal open subintervals of `ambient` disjoint from the union, in
    /// increasing order. Each returned [`Interval`] denotes the open interval
    /// between its endpoints; slack between the ambient boundary and the
    /// first or last component is reported the same way. Fails when the
    /// union is not contained in `ambient`.
    pub fn gaps(&self, ambient: &Interval) -> Result<Vec<Interval>> {
        if let Some(span) = self.span() {
            if !ambient.contains_interval(&span) {
                return Err(Error::NotInAmbient);
            }
        }
        let mut gaps = Vec::new();
        let mut cursor = ambient.left.clone();
        for c in &self.components {
            if c.left > cursor {
                gaps.push(Interval {
                    left: cursor,
                    right: c.left.clone(),
                });
            }
            cursor = c.right.clone();
        }
        if ambient.right > cursor {
            gaps.push(Interval {
                left: cursor,
                right: ambient.right.clone(),
            });
        }
        Ok(gaps)
    }
}

impl fmt::Display for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'de> Deserialize<'de> for IntervalUnion {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            components: Vec<Interval>,
        }
        let raw = Raw::deserialize(deserializer)?;
        Ok(IntervalUnion::normalize(raw.components))
    }
}
