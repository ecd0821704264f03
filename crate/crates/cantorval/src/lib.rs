//! Exact rational analysis of achievement sets — the sets of all subsums —
//! of convergent positive series.
//!
//! Everything is computed in arbitrary-precision rational arithmetic:
//! subsum enumeration ([`subsums`]), Kakeya-condition profiles and density
//! schedules ([`kakeya`]), the grouped construction whose achievement set
//! is a Cantorval with asymptotically rare reversed indices ([`mm`]), and
//! the census that accounts for its measure down to an exactly-zero
//! boundary ([`boundary`]). Series without closed-form remainders fall
//! back to certified two-sided enclosures ([`numeric::Enclosure`]) so that
//! every reported comparison is still a proof, never a float.
//!
//! Start with the runnable programs in `examples/`; the `cantorval` binary
//! ([`cli`]) exposes the same capabilities as deterministic JSON/CSV/SVG
//! reports.

pub mod boundary;
pub mod cli;
pub mod error;
pub mod intervals;
pub mod kakeya;
pub mod mm;
pub mod numeric;
pub mod render;
pub mod series;
pub mod subsums;

pub use error::{Error, Result};
pub use intervals::{Interval, IntervalUnion};
pub use kakeya::{DensityReport, KakeyaProfile, Tag};
pub use numeric::{Comparison, Enclosure, Rational};
pub use series::{Descriptor, MMParams, Series, Tail};
pub use subsums::{ClassificationEvidence, SubsumSet, Verdict};
