//! Spectral spaces: finite posets and four symbolic infinite families, with
//! a subset calculus for each and the Thomason / weakly visible /
//! localizing / scatteredness predicates.

pub mod checks;
mod cofin;
mod column;
mod heights;
mod pointed;
mod poset;

pub use cofin::Cofin;
pub use column::{ColumnSet, Ht};
pub use heights::HeightSet;
pub use pointed::Pointed;
pub use poset::{bits, FinitePoset, Mask};

use crate::arith::{Euclid, Fpx, Int};
use crate::error::{Error, Result};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Default size cap for brute-force searches over finite posets.
pub const DEFAULT_POSET_CAP: usize = 12;

/// Text label of a prime, ordered by length and then text so that decimal
/// integers sort numerically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Label(pub String);

impl Ord for Label {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.len().cmp(&o.0.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Base ring of a fan: the integers or `F_p[x]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FanBase {
    Z,
    Fpx(u64),
}

impl FanBase {
    pub fn parse(base: &str, p: Option<u64>) -> Result<Self> {
        match (base, p) {
            ("Z", None) => Ok(FanBase::Z),
            ("Fp[x]" | "Fp_x", Some(p)) => {
                crate::with_field_prime!(p, P => Ok(FanBase::Fpx(P)))
            }
            ("Fp[x]" | "Fp_x", None) => Err(Error::input("fan over Fp[x] needs \"p\"")),
            ("Z", Some(_)) => Err(Error::input("fan over Z takes no \"p\"")),
            (other, _) => Err(Error::input(format!("unknown fan base {other:?}"))),
        }
    }

    /// Canonical label of a prime element, or an input error.
    pub fn canonical(&self, s: &str) -> Result<Label> {
        fn go<R: Euclid>(s: &str) -> Result<Label> {
            let r = R::parse_elem(s)?;
            if r.normalized() != r || !r.is_prime_elem() {
                return Err(Error::input(format!("{s:?} is not a normalized prime of {}", R::ring_name())));
            }
            Ok(Label(r.to_string()))
        }
        match *self {
            FanBase::Z => go::<Int>(s),
            FanBase::Fpx(p) => crate::with_field_prime!(p, P => go::<Fpx<P>>(s)),
        }
    }

    /// Primes in enumeration order.
    pub fn primes(&self) -> Box<dyn Iterator<Item = Label>> {
        fn go<R: Euclid>() -> Box<dyn Iterator<Item = Label>> {
            Box::new(R::primes().map(|p| Label(p.to_string())))
        }
        match *self {
            FanBase::Z => go::<Int>(),
            FanBase::Fpx(p) => crate::with_field_prime!(p, P => Ok::<_, Error>(go::<Fpx<P>>()))
                .expect("base validated on construction"),
        }
    }

    /// The least prime of `c` in enumeration order.
    pub fn least(&self, c: &Cofin<Label>) -> Option<Label> {
        match c {
            Cofin::Finite(s) if s.is_empty() => None,
            Cofin::Finite(s) => self.primes().find(|p| s.contains(p)),
            Cofin::Cofinite(s) => self.primes().find(|p| !s.contains(p)),
        }
    }
}

/// A spectral space model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Space {
    Poset(FinitePoset),
    SInfinity,
    Column,
    Plane,
    Fan(FanBase),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum SpaceDesc {
    FinitePoset { points: Vec<String>, le: Vec<(String, String)> },
    SInfinity {},
    ChromaticColumn {},
    ChromaticPlane {},
    Fan {
        base: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        p: Option<u64>,
    },
}

impl Serialize for Space {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let d = match self {
            Space::Poset(p) => SpaceDesc::FinitePoset { points: p.labels().to_vec(), le: p.relations() },
            Space::SInfinity => SpaceDesc::SInfinity {},
            Space::Column => SpaceDesc::ChromaticColumn {},
            Space::Plane => SpaceDesc::ChromaticPlane {},
            Space::Fan(FanBase::Z) => SpaceDesc::Fan { base: "Z".into(), p: None },
            Space::Fan(FanBase::Fpx(p)) => SpaceDesc::Fan { base: "Fp[x]".into(), p: Some(*p) },
        };
        d.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Space {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let desc = SpaceDesc::deserialize(d)?;
        Space::from_desc(desc).map_err(|e| match e {
            Error::Input(m) => D::Error::custom(m),
            other => D::Error::custom(other),
        })
    }
}

impl Space {
    fn from_desc(d: SpaceDesc) -> Result<Space> {
        Ok(match d {
            SpaceDesc::FinitePoset { points, le } => Space::Poset(FinitePoset::new(points, &le)?),
            SpaceDesc::SInfinity {} => Space::SInfinity,
            SpaceDesc::ChromaticColumn {} => Space::Column,
            SpaceDesc::ChromaticPlane {} => Space::Plane,
            SpaceDesc::Fan { base, p } => Space::Fan(FanBase::parse(&base, p)?),
        })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Space::Poset(_) => "finite_poset",
            Space::SInfinity => "s_infinity",
            Space::Column => "chromatic_column",
            Space::Plane => "chromatic_plane",
            Space::Fan(_) => "fan",
        }
    }
}

/// A point of a space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Label(String),
    Tag(u64),
    /// The point at infinity of `S_inf`, which is its generic point.
    Infinity,
    Height(Ht),
    Generic,
    /// Height `n >= 1` over the prime `p` in the plane.
    Plane(u64, Ht),
    Closed(Label),
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Label(s) => f.write_str(s),
            Point::Tag(n) => write!(f, "{n}"),
            Point::Infinity => f.write_str("inf"),
            Point::Height(h) => write!(f, "{h}"),
            Point::Generic => f.write_str("generic"),
            Point::Plane(p, h) => write!(f, "{p}:{h}"),
            Point::Closed(l) => write!(f, "{l}"),
        }
    }
}

impl Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Plane subsets: a default column for all primes but finitely many
/// exceptions, plus the generic point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaneSet {
    pub default: ColumnSet,
    #[serde(default)]
    pub exceptions: BTreeMap<u64, ColumnSet>,
    pub generic: bool,
}

impl PlaneSet {
    pub fn new(default: ColumnSet, exceptions: BTreeMap<u64, ColumnSet>, generic: bool) -> Self {
        let lift = |c: ColumnSet| ColumnSet::new(c.heights.intersect(&HeightSet::tail(1)), c.inf);
        let default = lift(default);
        let exceptions = exceptions
            .into_iter()
            .map(|(p, c)| (p, lift(c)))
            .filter(|(_, c)| *c != default)
            .collect();
        PlaneSet { default, exceptions, generic }
    }

    pub fn column(&self, p: u64) -> &ColumnSet {
        self.exceptions.get(&p).unwrap_or(&self.default)
    }

    /// The exceptional primes plus the least non-exceptional prime, in
    /// increasing order: enough to realize every column behaviour.
    pub fn representative_primes(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.exceptions.keys().copied().collect();
        let q = small_primes().find(|p| !self.exceptions.contains_key(p)).expect("infinitely many primes");
        v.push(q);
        v.sort();
        v
    }

    fn zip(&self, o: &Self, f: impl Fn(&ColumnSet, &ColumnSet) -> ColumnSet, g: impl Fn(bool, bool) -> bool) -> Self {
        let keys: BTreeSet<u64> = self.exceptions.keys().chain(o.exceptions.keys()).copied().collect();
        PlaneSet::new(
            f(&self.default, &o.default),
            keys.into_iter().map(|p| (p, f(self.column(p), o.column(p)))).collect(),
            g(self.generic, o.generic),
        )
    }

    fn map_columns(&self, f: impl Fn(&ColumnSet) -> ColumnSet, generic: bool) -> Self {
        PlaneSet::new(
            f(&self.default),
            self.exceptions.iter().map(|(p, c)| (*p, f(c))).collect(),
            generic,
        )
    }
}

/// Primes as machine integers, by trial division.
pub fn small_primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

fn is_small_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// A subset of a space in the normal form of its kind.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Subset {
    FinitePoset(BTreeSet<String>),
    /// Labels of `S_inf`; the flag is the point at infinity.
    SInfinity(Pointed<u64>),
    ChromaticColumn(ColumnSet),
    ChromaticPlane(PlaneSet),
    Fan(Pointed<Label>),
}

/// Verdict of a global predicate with an optional counterexample point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointVerdict {
    pub value: bool,
    pub witness: Option<Point>,
}

/// One entry of a Hochster weakly scattered certificate: for the Thomason
/// set `y`, the point `point` outside it and the Thomason `open` with
/// `point ∈ open ∩ y^c ⊆ gen(point)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HwsEntry {
    pub y: Subset,
    pub point: Point,
    pub open: Subset,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HwsVerdict {
    pub value: bool,
    pub failing: Option<Subset>,
    pub witnesses: Vec<HwsEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScatteredVerdict {
    pub value: bool,
    pub weakly_noetherian: bool,
    pub hochster_weakly_scattered: bool,
    /// The same answer computed from isolated points of the dual.
    pub direct: bool,
    /// A dual-closed set without isolated points, if any.
    pub failing: Option<Subset>,
}

impl Space {
    pub fn fan_z() -> Space {
        Space::Fan(FanBase::Z)
    }

    fn poset(&self) -> &FinitePoset {
        match self {
            Space::Poset(p) => p,
            _ => unreachable!("checked kind"),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Space::Poset(_))
    }

    /// Validates a descriptor against this space.
    pub fn check(&self, s: &Subset) -> Result<()> {
        match (self, s) {
            (Space::Poset(p), Subset::FinitePoset(pts)) => {
                for l in pts {
                    p.index(l)?;
                }
                Ok(())
            }
            (Space::SInfinity, Subset::SInfinity(_)) => Ok(()),
            (Space::Column, Subset::ChromaticColumn(_)) => Ok(()),
            (Space::Plane, Subset::ChromaticPlane(ps)) => {
                let check_col = |c: &ColumnSet| {
                    if c.heights.contains(0) {
                        Err(Error::input("plane columns start at height 1; height 0 is the generic point"))
                    } else {
                        Ok(())
                    }
                };
                check_col(&ps.default)?;
                for (p, c) in &ps.exceptions {
                    if !is_small_prime(*p) {
                        return Err(Error::input(format!("{p} is not a prime")));
                    }
                    check_col(c)?;
                    if *c == ps.default {
                        return Err(Error::input(format!("exception at {p} repeats the default column")));
                    }
                }
                Ok(())
            }
            (Space::Fan(b), Subset::Fan(ps)) => {
                for l in ps.closed.listed() {
                    if b.canonical(&l.0)? != *l {
                        return Err(Error::input(format!("label {l} is not canonical")));
                    }
                }
                Ok(())
            }
            _ => Err(Error::input(format!("subset descriptor does not match a {} space", self.kind()))),
        }
    }

    pub fn parse_point(&self, s: &str) -> Result<Point> {
        let bad = || Error::input(format!("{s:?} is not a point of a {} space", self.kind()));
        match self {
            Space::Poset(p) => p.index(s).map(|_| Point::Label(s.to_string())),
            Space::SInfinity => match s {
                "inf" | "∞" => Ok(Point::Infinity),
                _ => s.parse().map(Point::Tag).map_err(|_| bad()),
            },
            Space::Column => Ht::parse(s).map(Point::Height).ok_or_else(bad),
            Space::Plane => {
                if s == "generic" {
                    return Ok(Point::Generic);
                }
                let (p, h) = s.split_once(':').ok_or_else(bad)?;
                let p: u64 = p.parse().map_err(|_| bad())?;
                let h = Ht::parse(h).ok_or_else(bad)?;
                if !is_small_prime(p) || h == Ht::Fin(0) {
                    return Err(bad());
                }
                Ok(Point::Plane(p, h))
            }
            Space::Fan(b) => {
                if s == "generic" {
                    Ok(Point::Generic)
                } else {
                    b.canonical(s).map(Point::Closed)
                }
            }
        }
    }

    pub fn empty(&self) -> Subset {
        match self {
            Space::Poset(_) => Subset::FinitePoset(BTreeSet::new()),
            Space::SInfinity => Subset::SInfinity(Pointed::empty()),
            Space::Column => Subset::ChromaticColumn(ColumnSet::empty()),
            Space::Plane => Subset::ChromaticPlane(PlaneSet::new(ColumnSet::empty(), BTreeMap::new(), false)),
            Space::Fan(_) => Subset::Fan(Pointed::empty()),
        }
    }

    pub fn whole(&self) -> Subset {
        self.complement(&self.empty())
    }

    pub fn singleton(&self, x: &Point) -> Result<Subset> {
        let bad = || Error::input(format!("{x} is not a point of a {} space", self.kind()));
        Ok(match (self, x) {
            (Space::Poset(p), Point::Label(l)) => {
                p.index(l)?;
                Subset::FinitePoset([l.clone()].into())
            }
            (Space::SInfinity, Point::Tag(n)) => Subset::SInfinity(Pointed::closed_points(Cofin::singleton(*n))),
            (Space::SInfinity, Point::Infinity) => Subset::SInfinity(Pointed::generic_only()),
            (Space::Column, Point::Height(Ht::Fin(n))) => {
                Subset::ChromaticColumn(ColumnSet::new(HeightSet::from_finite([*n]), false))
            }
            (Space::Column, Point::Height(Ht::Inf)) => Subset::ChromaticColumn(ColumnSet::new(HeightSet::empty(), true)),
            (Space::Plane, Point::Generic) => {
                Subset::ChromaticPlane(PlaneSet::new(ColumnSet::empty(), BTreeMap::new(), true))
            }
            (Space::Plane, Point::Plane(p, h)) => {
                let c = match h {
                    Ht::Fin(n) => ColumnSet::new(HeightSet::from_finite([*n]), false),
                    Ht::Inf => ColumnSet::new(HeightSet::empty(), true),
                };
                Subset::ChromaticPlane(PlaneSet::new(ColumnSet::empty(), [(*p, c)].into(), false))
            }
            (Space::Fan(_), Point::Generic) => Subset::Fan(Pointed::generic_only()),
            (Space::Fan(b), Point::Closed(l)) => {
                if b.canonical(&l.0)? != *l {
                    return Err(bad());
                }
                Subset::Fan(Pointed::closed_points(Cofin::singleton(l.clone())))
            }
            _ => return Err(bad()),
        })
    }

    pub fn contains(&self, s: &Subset, x: &Point) -> bool {
        match (s, x) {
            (Subset::FinitePoset(v), Point::Label(l)) => v.contains(l),
            (Subset::SInfinity(v), Point::Tag(n)) => v.closed.contains(n),
            (Subset::SInfinity(v), Point::Infinity) => v.generic,
            (Subset::ChromaticColumn(c), Point::Height(h)) => c.contains(*h),
            (Subset::ChromaticPlane(ps), Point::Generic) => ps.generic,
            (Subset::ChromaticPlane(ps), Point::Plane(p, h)) => ps.column(*p).contains(*h),
            (Subset::Fan(v), Point::Generic) => v.generic,
            (Subset::Fan(v), Point::Closed(l)) => v.closed.contains(l),
            _ => false,
        }
    }

    fn to_mask(&self, s: &Subset) -> Mask {
        let p = self.poset();
        match s {
            Subset::FinitePoset(v) => v.iter().map(|l| p.index(l).expect("checked")).fold(0, |m, i| m | 1 << i),
            _ => unreachable!("checked kind"),
        }
    }

    fn from_mask(&self, m: Mask) -> Subset {
        let p = self.poset();
        Subset::FinitePoset(bits(m).map(|i| p.labels()[i].clone()).collect())
    }

    pub fn complement(&self, s: &Subset) -> Subset {
        match s {
            Subset::FinitePoset(_) => self.from_mask(self.poset().full() & !self.to_mask(s)),
            Subset::SInfinity(v) => Subset::SInfinity(v.complement()),
            Subset::ChromaticColumn(c) => Subset::ChromaticColumn(c.complement(0)),
            Subset::ChromaticPlane(ps) => Subset::ChromaticPlane(ps.map_columns(|c| c.complement(1), !ps.generic)),
            Subset::Fan(v) => Subset::Fan(v.complement()),
        }
    }

    pub fn union(&self, a: &Subset, b: &Subset) -> Subset {
        match (a, b) {
            (Subset::FinitePoset(_), Subset::FinitePoset(_)) => self.from_mask(self.to_mask(a) | self.to_mask(b)),
            (Subset::SInfinity(x), Subset::SInfinity(y)) => Subset::SInfinity(x.union(y)),
            (Subset::ChromaticColumn(x), Subset::ChromaticColumn(y)) => Subset::ChromaticColumn(x.union(y)),
            (Subset::ChromaticPlane(x), Subset::ChromaticPlane(y)) => {
                Subset::ChromaticPlane(x.zip(y, |c, d| c.union(d), |g, h| g || h))
            }
            (Subset::Fan(x), Subset::Fan(y)) => Subset::Fan(x.union(y)),
            _ => panic!("kind mismatch"),
        }
    }

    pub fn intersect(&self, a: &Subset, b: &Subset) -> Subset {
        self.complement(&self.union(&self.complement(a), &self.complement(b)))
    }

    pub fn minus(&self, a: &Subset, b: &Subset) -> Subset {
        self.intersect(a, &self.complement(b))
    }

    pub fn is_empty(&self, s: &Subset) -> bool {
        *s == self.empty()
    }

    pub fn is_subset(&self, a: &Subset, b: &Subset) -> bool {
        self.is_empty(&self.minus(a, b))
    }

    /// Specialization closure.
    pub fn closure(&self, s: &Subset) -> Result<Subset> {
        self.check(s)?;
        Ok(match s {
            Subset::FinitePoset(_) => self.from_mask(self.poset().closure(self.to_mask(s))),
            Subset::SInfinity(v) => Subset::SInfinity(v.closure()),
            Subset::ChromaticColumn(c) => Subset::ChromaticColumn(c.closure()),
            Subset::ChromaticPlane(ps) if ps.generic => self.whole(),
            Subset::ChromaticPlane(ps) => Subset::ChromaticPlane(ps.map_columns(|c| c.closure(), false)),
            Subset::Fan(v) => Subset::Fan(v.closure()),
        })
    }

    /// The generalizations of `x`.
    pub fn gen(&self, x: &Point) -> Result<Subset> {
        let single = self.singleton(x)?;
        Ok(match (self, x) {
            (Space::Poset(p), Point::Label(l)) => self.from_mask(p.down_of(p.index(l)?)),
            (Space::SInfinity | Space::Fan(_), Point::Infinity | Point::Generic) => single,
            (Space::SInfinity | Space::Fan(_), _) => {
                let g = self.singleton(if matches!(self, Space::SInfinity) { &Point::Infinity } else { &Point::Generic })?;
                self.union(&single, &g)
            }
            (Space::Column, Point::Height(Ht::Fin(n))) => {
                Subset::ChromaticColumn(ColumnSet::new(HeightSet::interval(0, n + 1), false))
            }
            (Space::Column, _) => self.whole(),
            (Space::Plane, Point::Generic) => single,
            (Space::Plane, Point::Plane(p, h)) => {
                let c = match h {
                    Ht::Fin(n) => ColumnSet::new(HeightSet::interval(1, n + 1), false),
                    Ht::Inf => ColumnSet::whole(1),
                };
                Subset::ChromaticPlane(PlaneSet::new(ColumnSet::empty(), [(*p, c)].into(), true))
            }
            _ => unreachable!("singleton validated the point"),
        })
    }

    pub fn is_thomason(&self, s: &Subset) -> Result<bool> {
        self.check(s)?;
        Ok(match s {
            Subset::FinitePoset(_) => self.poset().is_up_set(self.to_mask(s)),
            Subset::SInfinity(v) => v.is_thomason(),
            Subset::Fan(v) => v.is_thomason(),
            Subset::ChromaticColumn(c) => c.is_thomason(),
            Subset::ChromaticPlane(ps) => {
                *s == self.whole()
                    || (!ps.generic && ps.default.is_thomason() && ps.exceptions.values().all(|c| c.is_thomason()))
            }
        })
    }

    /// Thomason `(U, V)` with `s = U ∩ V^c`, the least such pair.
    pub fn weakly_visible_witness(&self, s: &Subset) -> Result<Option<(Subset, Subset)>> {
        self.check(s)?;
        Ok(match s {
            Subset::FinitePoset(_) => self
                .poset()
                .weakly_visible_witness(self.to_mask(s))
                .map(|(u, v)| (self.from_mask(u), self.from_mask(v))),
            Subset::SInfinity(v) => {
                let (a, b) = v.weakly_visible_witness();
                Some((Subset::SInfinity(a), Subset::SInfinity(b)))
            }
            Subset::Fan(v) => {
                let (a, b) = v.weakly_visible_witness();
                Some((Subset::Fan(a), Subset::Fan(b)))
            }
            Subset::ChromaticColumn(c) => c
                .weakly_visible_witness()
                .map(|(u, v)| (Subset::ChromaticColumn(u), Subset::ChromaticColumn(v))),
            Subset::ChromaticPlane(ps) if ps.generic => {
                let v = self.complement(s);
                self.is_thomason(&v)?.then(|| (self.whole(), v))
            }
            Subset::ChromaticPlane(ps) => {
                let w = |c: &ColumnSet| c.weakly_visible_witness();
                let Some((du, dv)) = w(&ps.default) else { return Ok(None) };
                let mut eu = BTreeMap::new();
                let mut ev = BTreeMap::new();
                for (p, c) in &ps.exceptions {
                    let Some((u, v)) = w(c) else { return Ok(None) };
                    eu.insert(*p, u);
                    ev.insert(*p, v);
                }
                Some((
                    Subset::ChromaticPlane(PlaneSet::new(du, eu, false)),
                    Subset::ChromaticPlane(PlaneSet::new(dv, ev, false)),
                ))
            }
        })
    }

    pub fn is_weakly_visible(&self, s: &Subset) -> Result<bool> {
        Ok(self.weakly_visible_witness(s)?.is_some())
    }

    pub fn is_weakly_noetherian(&self) -> PointVerdict {
        match self {
            Space::Column => PointVerdict { value: false, witness: Some(Point::Height(Ht::Inf)) },
            Space::Plane => PointVerdict { value: false, witness: Some(Point::Plane(2, Ht::Inf)) },
            _ => PointVerdict { value: true, witness: None },
        }
    }

    /// Closure in the localizing topology.
    pub fn localizing_closure(&self, s: &Subset) -> Result<Subset> {
        self.check(s)?;
        Ok(match s {
            Subset::ChromaticColumn(c) => Subset::ChromaticColumn(c.localizing_closure()),
            Subset::ChromaticPlane(ps) => {
                Subset::ChromaticPlane(ps.map_columns(|c| c.localizing_closure(), ps.generic))
            }
            _ => s.clone(),
        })
    }

    pub fn is_localizing_closed(&self, s: &Subset) -> Result<bool> {
        Ok(self.localizing_closure(s)? == *s)
    }

    /// Closure in the constructible topology.
    pub fn constructible_closure(&self, s: &Subset) -> Result<Subset> {
        self.check(s)?;
        Ok(match s {
            Subset::FinitePoset(_) => s.clone(),
            Subset::SInfinity(v) => Subset::SInfinity(v.constructible_closure()),
            Subset::Fan(v) => Subset::Fan(v.constructible_closure()),
            Subset::ChromaticColumn(c) => Subset::ChromaticColumn(c.localizing_closure()),
            Subset::ChromaticPlane(ps) => Subset::ChromaticPlane(
                ps.map_columns(|c| c.localizing_closure(), ps.generic || !ps.default.is_empty()),
            ),
        })
    }

    pub fn is_constructible_discrete(&self) -> bool {
        self.is_finite()
    }

    pub fn hochster_dual(&self) -> Result<Space> {
        match self {
            Space::Poset(p) => Ok(Space::Poset(p.dual())),
            _ => Err(Error::unsupported(format!("Hochster dual of a {} space is not modelled", self.kind()))),
        }
    }

    /// For a proper Thomason `y`: a point `P ∉ y` and Thomason `U` with
    /// `P ∈ U ∩ y^c ⊆ gen(P)`.
    pub fn hochster_weak_witness(&self, y: &Subset) -> Result<Option<(Point, Subset)>> {
        if !self.is_thomason(y)? {
            return Err(Error::input("expected a Thomason subset"));
        }
        if *y == self.whole() {
            return Err(Error::input("expected a proper Thomason subset"));
        }
        Ok(match y {
            Subset::FinitePoset(_) => {
                let p = self.poset();
                p.hochster_weak_witness(self.to_mask(y))
                    .map(|(i, u)| (Point::Label(p.labels()[i].clone()), self.from_mask(u)))
            }
            Subset::SInfinity(v) => Some(match v.closed.complement().first_in(0u64..) {
                Some(n) => (Point::Tag(n), Subset::SInfinity(Pointed::closed_points(Cofin::singleton(n)))),
                None => (Point::Infinity, self.whole()),
            }),
            Subset::Fan(v) => {
                let Space::Fan(b) = self else { unreachable!() };
                Some(match b.least(&v.closed.complement()) {
                    Some(l) => (Point::Closed(l.clone()), Subset::Fan(Pointed::closed_points(Cofin::singleton(l)))),
                    None => (Point::Generic, self.whole()),
                })
            }
            Subset::ChromaticColumn(c) => Some(match c.as_tail() {
                None => (Point::Height(Ht::Inf), self.whole()),
                Some(n) => (Point::Height(Ht::Fin(n - 1)), Subset::ChromaticColumn(ColumnSet::tail(n - 1))),
            }),
            Subset::ChromaticPlane(ps) => {
                let open_at = |p: u64, c: ColumnSet| {
                    Subset::ChromaticPlane(PlaneSet::new(ColumnSet::empty(), [(p, c)].into(), false))
                };
                let found = ps.representative_primes().into_iter().find(|&p| !ps.column(p).is_whole(1));
                Some(match found {
                    None => (Point::Generic, self.whole()),
                    Some(p) => match ps.column(p).as_tail() {
                        None => (Point::Plane(p, Ht::Inf), open_at(p, ColumnSet::tail(1))),
                        Some(n) => (Point::Plane(p, Ht::Fin(n - 1)), open_at(p, ColumnSet::tail(n - 1))),
                    },
                })
            }
        })
    }

    /// A weakly isolated point of the dual-closed set `s`, evaluated in the
    /// Hochster dual: `{x} ⊆ U ∩ s ⊆ gen(x)` with `U` Thomason.
    pub fn weakly_isolated_witness(&self, s: &Subset) -> Result<Option<(Point, Subset)>> {
        self.check(s)?;
        if self.is_empty(s) {
            return Err(Error::input("weakly isolated points of the empty set"));
        }
        let y = self.complement(s);
        if !self.is_thomason(&y)? {
            return Err(Error::input("subset is not closed in the Hochster dual"));
        }
        self.hochster_weak_witness(&y)
    }

    /// A point `x` of the dual-closed `s` with Thomason `U`, `U ∩ s = {x}`.
    pub fn isolated_witness(&self, s: &Subset) -> Result<Option<(Point, Subset)>> {
        let y = self.complement(s);
        if !self.is_thomason(&y)? || self.is_empty(s) {
            return Err(Error::input("expected a nonempty dual-closed subset"));
        }
        Ok(match s {
            Subset::FinitePoset(_) => {
                let p = self.poset();
                p.isolated_in(self.to_mask(s))
                    .map(|(i, u)| (Point::Label(p.labels()[i].clone()), self.from_mask(u)))
            }
            // Closed points are isolated by their singletons, and if no
            // closed point is left the generic point is isolated by the
            // whole space. So this agrees with the weak witness.
            Subset::SInfinity(_) | Subset::Fan(_) => self.hochster_weak_witness(&y)?,
            Subset::ChromaticColumn(_) => match self.hochster_weak_witness(&y)? {
                Some((Point::Height(Ht::Fin(n)), u)) => Some((Point::Height(Ht::Fin(n)), u)),
                _ => None,
            },
            Subset::ChromaticPlane(ps) => {
                let yp = match &y {
                    Subset::ChromaticPlane(yp) => yp,
                    _ => unreachable!(),
                };
                if yp.default.is_whole(1) && yp.exceptions.is_empty() {
                    Some((Point::Generic, self.whole()))
                } else {
                    let _ = ps;
                    yp.representative_primes()
                        .into_iter()
                        .find_map(|p| yp.column(p).as_tail().filter(|&n| n >= 2).map(|n| (p, n)))
                        .map(|(p, n)| {
                            (
                                Point::Plane(p, Ht::Fin(n - 1)),
                                Subset::ChromaticPlane(PlaneSet::new(
                                    ColumnSet::empty(),
                                    [(p, ColumnSet::tail(n - 1))].into(),
                                    false,
                                )),
                            )
                        })
                }
            }
        })
    }

    /// Proper Thomason subsets: all of them for a poset, a representative
    /// sample of the closed-form family otherwise.
    pub fn thomason_family(&self, poset_cap: usize) -> Result<Vec<Subset>> {
        let fam = match self {
            Space::Poset(p) => {
                if p.len() > poset_cap {
                    return Err(Error::resource(format!("{} points exceed the poset cap {poset_cap}", p.len())));
                }
                let full = p.full();
                return Ok(p.up_sets().into_iter().filter(|&m| m != full).map(|m| self.from_mask(m)).collect());
            }
            Space::SInfinity => vec![
                Pointed::empty(),
                Pointed::closed_points(Cofin::finite([0, 2])),
                Pointed::closed_points(Cofin::cofinite([1])),
                Pointed::all_closed(),
            ]
            .into_iter()
            .map(Subset::SInfinity)
            .collect(),
            Space::Fan(b) => {
                let ps: Vec<Label> = b.primes().take(3).collect();
                vec![
                    Pointed::empty(),
                    Pointed::closed_points(Cofin::finite([ps[0].clone(), ps[2].clone()])),
                    Pointed::closed_points(Cofin::cofinite([ps[1].clone()])),
                    Pointed::all_closed(),
                ]
                .into_iter()
                .map(Subset::Fan)
                .collect()
            }
            Space::Column => std::iter::once(ColumnSet::empty())
                .chain((1..=4).map(ColumnSet::tail))
                .map(Subset::ChromaticColumn)
                .collect(),
            Space::Plane => {
                let t = |d: ColumnSet, e: Vec<(u64, ColumnSet)>| {
                    Subset::ChromaticPlane(PlaneSet::new(d, e.into_iter().collect(), false))
                };
                vec![
                    t(ColumnSet::empty(), vec![]),
                    t(ColumnSet::empty(), vec![(3, ColumnSet::tail(2))]),
                    t(ColumnSet::tail(1), vec![]),
                    t(ColumnSet::tail(1), vec![(2, ColumnSet::empty())]),
                    t(ColumnSet::tail(1), vec![(2, ColumnSet::tail(4))]),
                    t(ColumnSet::tail(3), vec![(5, ColumnSet::tail(1))]),
                ]
            }
        };
        Ok(fam)
    }

    pub fn is_hochster_weakly_scattered(&self, poset_cap: usize) -> Result<HwsVerdict> {
        let mut witnesses = Vec::new();
        for y in self.thomason_family(poset_cap)? {
            match self.hochster_weak_witness(&y)? {
                Some((point, open)) => witnesses.push(HwsEntry { y, point, open }),
                None => return Ok(HwsVerdict { value: false, failing: Some(y), witnesses }),
            }
        }
        Ok(HwsVerdict { value: true, failing: None, witnesses })
    }

    pub fn is_hochster_scattered(&self, poset_cap: usize) -> Result<ScatteredVerdict> {
        let wn = self.is_weakly_noetherian().value;
        let hws = self.is_hochster_weakly_scattered(poset_cap)?.value;
        let mut failing = None;
        for y in self.thomason_family(poset_cap)? {
            let s = self.complement(&y);
            if self.isolated_witness(&s)?.is_none() {
                failing = Some(s);
                break;
            }
        }
        let direct = failing.is_none();
        if direct != (wn && hws) {
            return Err(Error::invariant(format!(
                "scatteredness routes disagree on a {} space: direct {direct}, factored {}",
                self.kind(),
                wn && hws
            )));
        }
        Ok(ScatteredVerdict { value: direct, weakly_noetherian: wn, hochster_weakly_scattered: hws, direct, failing })
    }

    pub fn non_localizing_closed_witness(&self) -> Option<Subset> {
        let evens = |from: u64| ColumnSet::new(HeightSet::progression(from, 2), false);
        match self {
            Space::Column => Some(Subset::ChromaticColumn(evens(0))),
            Space::Plane => Some(Subset::ChromaticPlane(PlaneSet::new(
                ColumnSet::empty(),
                [(2, evens(2))].into(),
                false,
            ))),
            _ => None,
        }
    }

    /// A random descriptor of this space.
    pub fn random_subset<G: Rng + ?Sized>(&self, rng: &mut G) -> Subset {
        let rand_col = |rng: &mut G, base: u64| {
            ColumnSet::new(HeightSet::random(rng).intersect(&HeightSet::tail(base)), rng.gen_bool(0.5))
        };
        match self {
            Space::Poset(p) => self.from_mask(rng.gen::<u64>() & p.full()),
            Space::SInfinity => {
                let set: BTreeSet<u64> = (0..6).filter(|_| rng.gen_bool(0.4)).collect();
                let c = if rng.gen_bool(0.5) { Cofin::Finite(set) } else { Cofin::Cofinite(set) };
                Subset::SInfinity(Pointed::new(c, rng.gen_bool(0.5)))
            }
            Space::Fan(b) => {
                let set: BTreeSet<Label> = b.primes().take(5).filter(|_| rng.gen_bool(0.4)).collect();
                let c = if rng.gen_bool(0.5) { Cofin::Finite(set) } else { Cofin::Cofinite(set) };
                Subset::Fan(Pointed::new(c, rng.gen_bool(0.5)))
            }
            Space::Column => Subset::ChromaticColumn(rand_col(rng, 0)),
            Space::Plane => {
                let default = if rng.gen_bool(0.3) { ColumnSet::empty() } else { rand_col(rng, 1) };
                let mut ex = BTreeMap::new();
                for p in [2, 3, 5, 7] {
                    if rng.gen_bool(0.3) {
                        ex.insert(p, rand_col(rng, 1));
                    }
                }
                Subset::ChromaticPlane(PlaneSet::new(default, ex, rng.gen_bool(0.3)))
            }
        }
    }

    /// The model instances used by the global checks.
    pub fn models() -> Vec<Space> {
        vec![
            Space::SInfinity,
            Space::Column,
            Space::Plane,
            Space::Fan(FanBase::Z),
            Space::Fan(FanBase::Fpx(2)),
            Space::Fan(FanBase::Fpx(3)),
        ]
    }
}

#[cfg(test)]
mod tests;
