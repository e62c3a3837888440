use super::Cofin;
use serde::{Deserialize, Serialize};

/// A subset of a space with one generic point over infinitely many closed
/// points: a finite or cofinite set of closed points plus a flag for the
/// generic point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pointed<T: Ord> {
    pub closed: Cofin<T>,
    pub generic: bool,
}

impl<T: Ord + Clone> Pointed<T> {
    pub fn new(closed: Cofin<T>, generic: bool) -> Self {
        Pointed { closed, generic }
    }

    pub fn empty() -> Self {
        Pointed::new(Cofin::empty(), false)
    }

    pub fn whole() -> Self {
        Pointed::new(Cofin::all(), true)
    }

    pub fn all_closed() -> Self {
        Pointed::new(Cofin::all(), false)
    }

    pub fn generic_only() -> Self {
        Pointed::new(Cofin::empty(), true)
    }

    pub fn closed_points(c: Cofin<T>) -> Self {
        Pointed::new(c, false)
    }

    pub fn is_empty(&self) -> bool {
        !self.generic && self.closed.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.generic && self.closed.is_all()
    }

    pub fn complement(&self) -> Self {
        Pointed::new(self.closed.complement(), !self.generic)
    }

    pub fn union(&self, o: &Self) -> Self {
        Pointed::new(self.closed.union(&o.closed), self.generic || o.generic)
    }

    pub fn intersect(&self, o: &Self) -> Self {
        Pointed::new(self.closed.intersect(&o.closed), self.generic && o.generic)
    }

    pub fn minus(&self, o: &Self) -> Self {
        self.intersect(&o.complement())
    }

    pub fn is_subset(&self, o: &Self) -> bool {
        self.minus(o).is_empty()
    }

    pub fn map<U: Ord + Clone>(&self, f: impl Fn(&T) -> U) -> Pointed<U> {
        Pointed::new(self.closed.map(f), self.generic)
    }

    /// Specialization closure: the generic point specializes to everything.
    pub fn closure(&self) -> Self {
        if self.generic {
            Self::whole()
        } else {
            self.clone()
        }
    }

    /// Thomason subsets are arbitrary sets of closed points and the whole space.
    pub fn is_thomason(&self) -> bool {
        !self.generic || self.is_whole()
    }

    /// Closure in the constructible topology, where the neighbourhoods of
    /// the generic point are cofinite.
    pub fn constructible_closure(&self) -> Self {
        let mut out = self.clone();
        if !self.closed.is_finite() {
            out.generic = true;
        }
        out
    }

    /// Every subset is weakly visible.
    pub fn weakly_visible_witness(&self) -> (Self, Self) {
        if self.generic {
            (Self::whole(), self.complement())
        } else {
            (self.clone(), Self::empty())
        }
    }
}
