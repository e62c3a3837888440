use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// A finite or cofinite subset of an infinite ordered universe. The listed
/// elements are the members (finite) or the non-members (cofinite).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cofin<T: Ord> {
    Finite(BTreeSet<T>),
    Cofinite(BTreeSet<T>),
}

impl<T: Ord + Clone> Cofin<T> {
    pub fn empty() -> Self {
        Cofin::Finite(BTreeSet::new())
    }

    pub fn all() -> Self {
        Cofin::Cofinite(BTreeSet::new())
    }

    pub fn finite(items: impl IntoIterator<Item = T>) -> Self {
        Cofin::Finite(items.into_iter().collect())
    }

    pub fn cofinite(missing: impl IntoIterator<Item = T>) -> Self {
        Cofin::Cofinite(missing.into_iter().collect())
    }

    pub fn singleton(x: T) -> Self {
        Cofin::finite([x])
    }

    pub fn contains(&self, x: &T) -> bool {
        match self {
            Cofin::Finite(s) => s.contains(x),
            Cofin::Cofinite(s) => !s.contains(x),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Cofin::Finite(s) if s.is_empty())
    }

    pub fn is_all(&self) -> bool {
        matches!(self, Cofin::Cofinite(s) if s.is_empty())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Cofin::Finite(_))
    }

    /// The explicitly listed elements.
    pub fn listed(&self) -> &BTreeSet<T> {
        match self {
            Cofin::Finite(s) | Cofin::Cofinite(s) => s,
        }
    }

    pub fn complement(&self) -> Self {
        match self {
            Cofin::Finite(s) => Cofin::Cofinite(s.clone()),
            Cofin::Cofinite(s) => Cofin::Finite(s.clone()),
        }
    }

    pub fn union(&self, o: &Self) -> Self {
        use Cofin::*;
        match (self, o) {
            (Finite(a), Finite(b)) => Finite(a | b),
            (Finite(a), Cofinite(b)) | (Cofinite(b), Finite(a)) => Cofinite(b - a),
            (Cofinite(a), Cofinite(b)) => Cofinite(a & b),
        }
    }

    pub fn intersect(&self, o: &Self) -> Self {
        self.complement().union(&o.complement()).complement()
    }

    pub fn minus(&self, o: &Self) -> Self {
        self.intersect(&o.complement())
    }

    pub fn is_subset(&self, o: &Self) -> bool {
        self.minus(o).is_empty()
    }

    pub fn insert(&self, x: T) -> Self {
        self.union(&Cofin::singleton(x))
    }

    pub fn map<U: Ord + Clone>(&self, f: impl Fn(&T) -> U) -> Cofin<U> {
        match self {
            Cofin::Finite(s) => Cofin::Finite(s.iter().map(&f).collect()),
            Cofin::Cofinite(s) => Cofin::Cofinite(s.iter().map(&f).collect()),
        }
    }

    /// The least member in the order given by `universe`, which must
    /// enumerate every element.
    pub fn first_in(&self, universe: impl Iterator<Item = T>) -> Option<T> {
        if self.is_empty() {
            return None;
        }
        universe.into_iter().find(|x| self.contains(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_laws() {
        let a = Cofin::finite([1, 2, 3]);
        let b = Cofin::cofinite([2, 5]);
        assert_eq!(a.union(&b), Cofin::cofinite([5]));
        assert_eq!(a.intersect(&b), Cofin::finite([1, 3]));
        assert_eq!(b.complement().complement(), b);
        assert_eq!(
            a.union(&b).complement(),
            a.complement().intersect(&b.complement())
        );
        assert_eq!(b.first_in(0..), Some(0));
        assert_eq!(Cofin::cofinite([0, 1]).first_in(0..), Some(2));
    }
}
