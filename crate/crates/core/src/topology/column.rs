use super::HeightSet;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A height in a chromatic column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ht {
    Fin(u64),
    Inf,
}

impl fmt::Display for Ht {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ht::Fin(n) => write!(f, "{n}"),
            Ht::Inf => write!(f, "inf"),
        }
    }
}

impl Ht {
    pub fn parse(s: &str) -> Option<Ht> {
        match s {
            "inf" | "∞" => Some(Ht::Inf),
            _ => s.parse().ok().map(Ht::Fin),
        }
    }
}

/// A subset of one column: the finite heights it contains plus a flag for
/// height infinity.
///
/// A column starts at height `base` (0 for the single column, 1 for the
/// columns of the plane, whose height 0 is the shared generic point).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColumnSet {
    pub heights: HeightSet,
    pub inf: bool,
}

impl ColumnSet {
    pub fn new(heights: HeightSet, inf: bool) -> Self {
        ColumnSet { heights, inf }
    }

    pub fn empty() -> Self {
        ColumnSet::new(HeightSet::empty(), false)
    }

    pub fn whole(base: u64) -> Self {
        ColumnSet::new(HeightSet::tail(base), true)
    }

    /// `cl{n}`: heights `n..` together with infinity.
    pub fn tail(n: u64) -> Self {
        ColumnSet::new(HeightSet::tail(n), true)
    }

    pub fn contains(&self, h: Ht) -> bool {
        match h {
            Ht::Fin(n) => self.heights.contains(n),
            Ht::Inf => self.inf,
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.inf && self.heights.is_empty()
    }

    pub fn is_whole(&self, base: u64) -> bool {
        self.inf && self.heights == HeightSet::tail(base)
    }

    pub fn union(&self, o: &Self) -> Self {
        ColumnSet::new(self.heights.union(&o.heights), self.inf || o.inf)
    }

    pub fn intersect(&self, o: &Self) -> Self {
        ColumnSet::new(self.heights.intersect(&o.heights), self.inf && o.inf)
    }

    pub fn complement(&self, base: u64) -> Self {
        ColumnSet::new(
            self.heights.complement().intersect(&HeightSet::tail(base)),
            !self.inf,
        )
    }

    /// The least point, finite heights first.
    pub fn least(&self) -> Option<Ht> {
        match self.heights.least() {
            Some(n) => Some(Ht::Fin(n)),
            None => self.inf.then_some(Ht::Inf),
        }
    }

    pub fn closure(&self) -> Self {
        match self.least() {
            Some(Ht::Fin(n)) => ColumnSet::tail(n),
            Some(Ht::Inf) => ColumnSet::new(HeightSet::empty(), true),
            None => ColumnSet::empty(),
        }
    }

    /// `Some(n)` if the set is `cl{n}` for a finite `n`.
    pub fn as_tail(&self) -> Option<u64> {
        if self.inf {
            self.heights.as_tail()
        } else {
            None
        }
    }

    pub fn is_thomason(&self) -> bool {
        self.is_empty() || self.as_tail().is_some()
    }

    /// Sets of the form `cl{n} \ cl{m}`: empty, `[n, m)` or `[n, inf]`.
    pub fn weakly_visible_witness(&self) -> Option<(ColumnSet, ColumnSet)> {
        if self.is_empty() {
            return Some((ColumnSet::empty(), ColumnSet::empty()));
        }
        if self.inf {
            return self.heights.as_tail().map(|n| (ColumnSet::tail(n), ColumnSet::empty()));
        }
        self.heights
            .as_interval()
            .map(|(n, m)| (ColumnSet::tail(n), ColumnSet::tail(m)))
    }

    /// Infinity is in the localizing closure iff infinitely many finite
    /// heights are present.
    pub fn localizing_closure(&self) -> Self {
        ColumnSet::new(self.heights.clone(), self.inf || !self.heights.is_finite())
    }

    pub fn is_subset(&self, o: &Self) -> bool {
        self.heights.is_subset(&o.heights) && (!self.inf || o.inf)
    }
}
