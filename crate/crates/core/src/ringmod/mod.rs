//! Rings (Euclidean domains, quotients and finite products of quotients),
//! ideals, modules as sums of elementary atoms, weakly associated primes,
//! supports and torsion functors.

pub mod checks;
mod desc;
pub mod oracle;
pub mod random;

pub use desc::{parse_elem, parse_ideal, parse_prime, AtomDesc, Built, Entry, ModuleDesc, RingDesc};

use crate::arith::linalg::{smith, Mat};
use crate::arith::{gcd, lcm, Euclid, Frac};
use crate::error::{Error, Result};
use crate::topology::{Cofin, FanBase, FinitePoset, Label, Point, Pointed, Space, Subset};
use num_traits::{One, Zero};
use std::collections::BTreeSet;
use std::fmt;

/// Runs `$body` with `$R` bound to the element type of `$base`.
#[macro_export]
macro_rules! with_base {
    ($base:expr, $R:ident => $body:expr) => {
        match $base {
            $crate::topology::FanBase::Z => {
                type $R = $crate::arith::Int;
                $body
            }
            $crate::topology::FanBase::Fpx(p) => $crate::with_field_prime!(p, P => {
                type $R = $crate::arith::Fpx<P>;
                $body
            }),
        }
    };
}

pub fn base_of<R: Euclid>() -> FanBase {
    match R::characteristic() {
        0 => FanBase::Z,
        p => FanBase::Fpx(p),
    }
}

/// A commutative ring over the Euclidean domain `R`: `R` itself, or a
/// finite product of proper quotients `R/(m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring<R: Euclid> {
    /// `None` only for the domain itself, which then is the single component.
    comps: Vec<Option<R>>,
}

/// A prime ideal: component index and a normalized prime element, or zero
/// for the zero ideal of the domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime<R: Euclid> {
    pub comp: usize,
    pub p: R,
}

impl<R: Euclid> Prime<R> {
    pub fn zero() -> Self {
        Prime { comp: 0, p: R::zero() }
    }

    pub fn closed(p: R) -> Self {
        Prime { comp: 0, p }
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero()
    }
}

/// A finitely generated ideal, one normalized generator per component. In
/// a quotient component the generator divides the modulus, and the zero
/// ideal is the modulus itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ideal<R: Euclid> {
    pub gens: Vec<R>,
}

/// A set of primes of a ring: symbolic for the domain, explicit otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PrimeSet<R: Euclid> {
    Spec(Pointed<R>),
    Finite(BTreeSet<Prime<R>>),
}

impl<R: Euclid> Ring<R> {
    pub fn domain() -> Self {
        Ring { comps: vec![None] }
    }

    pub fn quotient(m: R) -> Result<Self> {
        Self::product(vec![m])
    }

    pub fn product(ms: Vec<R>) -> Result<Self> {
        if ms.is_empty() {
            return Err(Error::input("a product ring needs at least one component"));
        }
        let mut comps = Vec::new();
        for m in ms {
            if m.is_zero() || m.is_unit() {
                return Err(Error::input(format!("modulus {m} must be nonzero and not a unit")));
            }
            comps.push(Some(m.normalized()));
        }
        Ok(Ring { comps })
    }

    pub fn is_domain(&self) -> bool {
        self.comps[0].is_none()
    }

    pub fn ncomps(&self) -> usize {
        self.comps.len()
    }

    pub fn modulus(&self, i: usize) -> Option<&R> {
        self.comps[i].as_ref()
    }

    pub fn moduli(&self) -> impl Iterator<Item = Option<&R>> {
        self.comps.iter().map(|c| c.as_ref())
    }

    /// Number of elements, if finite and at most `limit`.
    pub fn size(&self, limit: usize) -> Option<usize> {
        let mut n = 1usize;
        for m in &self.comps {
            let k = R::residues(m.as_ref()?, limit)?.len();
            n = n.checked_mul(k).filter(|&n| n <= limit)?;
        }
        Some(n)
    }

    /// Reduces an element into canonical residues.
    pub fn reduce(&self, x: &[R]) -> Vec<R> {
        x.iter()
            .zip(&self.comps)
            .map(|(a, m)| match m {
                Some(m) => a.rem_e(m),
                None => a.clone(),
            })
            .collect()
    }

    pub fn check_elem(&self, x: &[R]) -> Result<()> {
        if x.len() != self.ncomps() {
            return Err(Error::input(format!(
                "element has {} components, ring has {}",
                x.len(),
                self.ncomps()
            )));
        }
        Ok(())
    }

    pub fn ideal(&self, gens: &[Vec<R>]) -> Result<Ideal<R>> {
        for g in gens {
            self.check_elem(g)?;
        }
        let gens = (0..self.ncomps())
            .map(|i| {
                let g = gens.iter().fold(R::zero(), |acc, x| gcd(&acc, &x[i]));
                match &self.comps[i] {
                    Some(m) => gcd(&g, m),
                    None => g,
                }
            })
            .collect();
        Ok(Ideal { gens })
    }

    pub fn principal(&self, g: Vec<R>) -> Result<Ideal<R>> {
        self.ideal(&[g])
    }

    pub fn is_zero_ideal(&self, a: &Ideal<R>, i: usize) -> bool {
        match &self.comps[i] {
            Some(m) => a.gens[i] == *m,
            None => a.gens[i].is_zero(),
        }
    }

    pub fn is_proper(&self, a: &Ideal<R>) -> bool {
        a.gens.iter().any(|g| !g.is_unit())
    }

    /// Validates and normalizes a prime.
    pub fn prime(&self, comp: usize, p: R) -> Result<Prime<R>> {
        let bad = || Error::input(format!("{p} is not a prime of {}", self.name()));
        let Some(m) = self.comps.get(comp) else { return Err(bad()) };
        let p = p.normalized();
        let ok = match m {
            None => p.is_zero() || p.is_prime_elem(),
            Some(m) => !p.is_zero() && p.is_prime_elem() && p.divides(m),
        };
        if ok {
            Ok(Prime { comp, p })
        } else {
            Err(bad())
        }
    }

    pub fn name(&self) -> String {
        let q = |m: &Option<R>| match m {
            None => R::ring_name(),
            Some(m) => format!("{}/({m})", R::ring_name()),
        };
        self.comps.iter().map(q).collect::<Vec<_>>().join(" x ")
    }

    /// All primes of a finite ring, ordered.
    pub fn finite_primes(&self, bound: u64) -> Result<BTreeSet<Prime<R>>> {
        let mut out = BTreeSet::new();
        for (i, m) in self.comps.iter().enumerate() {
            let m = m.as_ref().ok_or_else(|| Error::unsupported("the domain has infinitely many primes"))?;
            for p in m.prime_divisors(bound)? {
                out.insert(Prime { comp: i, p });
            }
        }
        Ok(out)
    }

    pub fn label(&self, q: &Prime<R>) -> String {
        if self.ncomps() == 1 {
            q.p.to_string()
        } else {
            format!("{}:{}", q.comp, q.p)
        }
    }

    pub fn point(&self, q: &Prime<R>) -> Point {
        if self.is_domain() {
            if q.is_zero() {
                Point::Generic
            } else {
                Point::Closed(Label(q.p.to_string()))
            }
        } else {
            Point::Label(self.label(q))
        }
    }

    /// The prime spectrum: a fan for the domain, a discrete poset otherwise.
    pub fn spec_space(&self, bound: u64) -> Result<Space> {
        if self.is_domain() {
            return Ok(Space::Fan(base_of::<R>()));
        }
        let labels = self.finite_primes(bound)?.iter().map(|q| self.label(q)).collect();
        Ok(Space::Poset(FinitePoset::new(labels, &[])?))
    }

    pub fn empty_set(&self) -> PrimeSet<R> {
        if self.is_domain() {
            PrimeSet::Spec(Pointed::empty())
        } else {
            PrimeSet::Finite(BTreeSet::new())
        }
    }

    pub fn whole_set(&self, bound: u64) -> Result<PrimeSet<R>> {
        Ok(if self.is_domain() {
            PrimeSet::Spec(Pointed::whole())
        } else {
            PrimeSet::Finite(self.finite_primes(bound)?)
        })
    }

    /// `V(a)`: the primes containing `a`.
    pub fn zero_locus(&self, a: &Ideal<R>, bound: u64) -> Result<PrimeSet<R>> {
        if self.is_domain() {
            let g = &a.gens[0];
            return Ok(PrimeSet::Spec(if g.is_zero() {
                Pointed::whole()
            } else {
                Pointed::closed_points(Cofin::finite(g.prime_divisors(bound)?))
            }));
        }
        let mut out = BTreeSet::new();
        for (i, g) in a.gens.iter().enumerate() {
            for p in g.prime_divisors(bound)? {
                out.insert(Prime { comp: i, p });
            }
        }
        Ok(PrimeSet::Finite(out))
    }

    /// Primes minimal over `a`; empty for the unit ideal.
    pub fn minimal_primes_over(&self, a: &Ideal<R>, bound: u64) -> Result<PrimeSet<R>> {
        if self.is_domain() && a.gens[0].is_zero() {
            return Ok(PrimeSet::Spec(Pointed::generic_only()));
        }
        self.zero_locus(a, bound)
    }

    /// `gen(q)`: the primes contained in `q`.
    pub fn generalizations(&self, q: &Prime<R>) -> PrimeSet<R> {
        if self.is_domain() {
            PrimeSet::Spec(if q.is_zero() {
                Pointed::generic_only()
            } else {
                Pointed::new(Cofin::singleton(q.p.clone()), true)
            })
        } else {
            PrimeSet::Finite([q.clone()].into())
        }
    }

    pub fn to_subset(&self, s: &PrimeSet<R>) -> Subset {
        match s {
            PrimeSet::Spec(v) => Subset::Fan(v.map(|p| Label(p.to_string()))),
            PrimeSet::Finite(v) => Subset::FinitePoset(v.iter().map(|q| self.label(q)).collect()),
        }
    }
}

impl<R: Euclid> PrimeSet<R> {
    pub fn is_empty(&self) -> bool {
        match self {
            PrimeSet::Spec(v) => v.is_empty(),
            PrimeSet::Finite(v) => v.is_empty(),
        }
    }

    pub fn contains(&self, q: &Prime<R>) -> bool {
        match self {
            PrimeSet::Spec(v) if q.is_zero() => v.generic,
            PrimeSet::Spec(v) => v.closed.contains(&q.p),
            PrimeSet::Finite(v) => v.contains(q),
        }
    }

    fn zip(
        &self,
        o: &Self,
        f: impl Fn(&Pointed<R>, &Pointed<R>) -> Pointed<R>,
        g: impl Fn(&BTreeSet<Prime<R>>, &BTreeSet<Prime<R>>) -> BTreeSet<Prime<R>>,
    ) -> Self {
        match (self, o) {
            (PrimeSet::Spec(a), PrimeSet::Spec(b)) => PrimeSet::Spec(f(a, b)),
            (PrimeSet::Finite(a), PrimeSet::Finite(b)) => PrimeSet::Finite(g(a, b)),
            _ => panic!("prime sets of different rings"),
        }
    }

    pub fn union(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.union(b), |a, b| a | b)
    }

    pub fn intersect(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.intersect(b), |a, b| a & b)
    }

    pub fn minus(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.minus(b), |a, b| a - b)
    }

    pub fn is_subset(&self, o: &Self) -> bool {
        self.minus(o).is_empty()
    }

    /// Specialization closure. Finite rings have discrete spectra.
    pub fn closure(&self) -> Self {
        match self {
            PrimeSet::Spec(v) => PrimeSet::Spec(v.closure()),
            PrimeSet::Finite(_) => self.clone(),
        }
    }
}

impl<R: Euclid> fmt::Display for Prime<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.p)
    }
}

/// A summand of an elementary module over the domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom<R: Euclid> {
    /// `R`.
    Free,
    /// `R/(d)`, `d` a nonzero nonunit.
    Cyclic(R),
    /// `R_P`, `R` with the primes in `P` inverted; `P` nonempty.
    Loc(Cofin<R>),
    /// `R_P/R`, `P` nonempty.
    LocModR(Cofin<R>),
}

impl<R: Euclid> Atom<R> {
    /// Canonical form, or `None` for a zero atom.
    pub fn normalize(self) -> Option<Self> {
        match self {
            Atom::Cyclic(d) if d.is_zero() => Some(Atom::Free),
            Atom::Cyclic(d) if d.is_unit() => None,
            Atom::Cyclic(d) => Some(Atom::Cyclic(d.normalized())),
            Atom::Loc(p) if p.is_empty() => Some(Atom::Free),
            Atom::LocModR(p) if p.is_empty() => None,
            a => Some(a),
        }
    }

    pub fn is_torsion(&self) -> bool {
        matches!(self, Atom::Cyclic(_) | Atom::LocModR(_))
    }

    /// Inverted primes of a flat atom.
    pub fn inverted(&self) -> Cofin<R> {
        match self {
            Atom::Free | Atom::Cyclic(_) => Cofin::empty(),
            Atom::Loc(p) | Atom::LocModR(p) => p.clone(),
        }
    }
}

impl<R: Euclid> fmt::Display for Atom<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |p: &Cofin<R>| match p {
            Cofin::Finite(s) => format!("{{{}}}", s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")),
            Cofin::Cofinite(s) if s.is_empty() => "all".to_string(),
            Cofin::Cofinite(s) => {
                format!("all\\{{{}}}", s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            }
        };
        match self {
            Atom::Free => write!(f, "R"),
            Atom::Cyclic(d) => write!(f, "R/({d})"),
            Atom::Loc(p) => write!(f, "R_{}", set(p)),
            Atom::LocModR(p) => write!(f, "R_{}/R", set(p)),
        }
    }
}

/// A module over a `Ring`, as a sum of atoms per component. Components of
/// a quotient ring only hold cyclic atoms `R/(d)` with `d` dividing the
/// modulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Module<R: Euclid> {
    ring: Ring<R>,
    parts: Vec<Vec<Atom<R>>>,
}

/// An element of a module: per component, one coordinate per atom.
pub type ModElem<R> = Vec<Vec<Frac<R>>>;

fn cofin_prime_check<R: Euclid>(p: &Cofin<R>) -> Result<()> {
    for q in p.listed() {
        if q.normalized() != *q || !q.is_prime_elem() {
            return Err(Error::input(format!("{q} is not a normalized prime")));
        }
    }
    Ok(())
}

fn frac_in<R: Euclid>(x: &Frac<R>, p: &Cofin<R>, _bound: u64) -> Result<bool> {
    Ok(in_localization(x, p))
}

/// Does `x` lie in `R_P`, i.e. do all denominator primes lie in `p`?
pub fn in_localization<R: Euclid>(x: &Frac<R>, p: &Cofin<R>) -> bool {
    match p {
        Cofin::Cofinite(out) => out.iter().all(|q| !q.divides(x.den())),
        Cofin::Finite(s) => {
            let mut d = x.den().clone();
            for q in s {
                while q.divides(&d) {
                    d = d.exact_div(q);
                }
            }
            d.is_unit()
        }
    }
}

/// The part of `d` supported at primes dividing `g`, by iterated gcd.
fn part_dividing<R: Euclid>(d: &R, g: &R) -> R {
    if g.is_zero() {
        return d.clone();
    }
    let mut e = R::one();
    loop {
        let next = gcd(d, &(e.clone() * g.clone()));
        if next == e {
            return e;
        }
        e = next;
    }
}

impl<R: Euclid> Module<R> {
    pub fn new(ring: Ring<R>, parts: Vec<Vec<Atom<R>>>) -> Result<Self> {
        if parts.len() != ring.ncomps() {
            return Err(Error::input("one atom list per ring component is required"));
        }
        let mut out = Vec::new();
        for (atoms, m) in parts.into_iter().zip(ring.moduli()) {
            let mut v = Vec::new();
            for a in atoms {
                if let Atom::Loc(p) | Atom::LocModR(p) = &a {
                    cofin_prime_check(p)?;
                }
                let a = match (m, a) {
                    (Some(m), Atom::Free) => Atom::Cyclic(m.clone()),
                    (Some(m), Atom::Cyclic(d)) => Atom::Cyclic(gcd(&d, m)),
                    (Some(_), a) => {
                        return Err(Error::input(format!("atom {a} is not a module over {}", ring.name())))
                    }
                    (None, a) => a,
                };
                v.extend(a.normalize());
            }
            out.push(v);
        }
        Ok(Module { ring, parts: out })
    }

    pub fn zero(ring: Ring<R>) -> Self {
        let parts = vec![vec![]; ring.ncomps()];
        Module { ring, parts }
    }

    pub fn ring(&self) -> &Ring<R> {
        &self.ring
    }

    pub fn parts(&self) -> &[Vec<Atom<R>>] {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|p| p.is_empty())
    }

    pub fn direct_sum(&self, o: &Self) -> Self {
        assert_eq!(self.ring, o.ring);
        let parts = self.parts.iter().zip(&o.parts).map(|(a, b)| a.iter().chain(b).cloned().collect()).collect();
        Module { ring: self.ring.clone(), parts }
    }

    /// Splits cyclic atoms into prime powers and sorts, so that isomorphic
    /// modules compare equal.
    pub fn canonical(&self, bound: u64) -> Result<Self> {
        let mut parts = Vec::new();
        for atoms in &self.parts {
            let mut v = Vec::new();
            for a in atoms {
                match a {
                    Atom::Cyclic(d) => {
                        for (p, e) in d.factor_with(bound)? {
                            v.push(Atom::Cyclic(crate::arith::pow(&p, e)));
                        }
                    }
                    a => v.push(a.clone()),
                }
            }
            v.sort();
            parts.push(v);
        }
        Ok(Module { ring: self.ring.clone(), parts })
    }

    /// Validates an element and reduces it to canonical coordinates.
    pub fn element(&self, x: ModElem<R>, bound: u64) -> Result<ModElem<R>> {
        if x.len() != self.parts.len() || x.iter().zip(&self.parts).any(|(c, a)| c.len() != a.len()) {
            return Err(Error::input("element does not match the module's atoms"));
        }
        let mut out = Vec::new();
        for (coords, atoms) in x.into_iter().zip(&self.parts) {
            let mut v = Vec::new();
            for (c, a) in coords.into_iter().zip(atoms) {
                let bad = || Error::input(format!("{c} is not an element of {a}"));
                let r = match a {
                    Atom::Free | Atom::Cyclic(_) if !c.is_integral() => return Err(bad()),
                    Atom::Free => c,
                    Atom::Cyclic(d) => Frac::int(c.num().rem_e(d)),
                    Atom::Loc(p) => {
                        if !frac_in(&c, p, bound)? {
                            return Err(bad());
                        }
                        c
                    }
                    Atom::LocModR(p) => {
                        if !frac_in(&c, p, bound)? {
                            return Err(bad());
                        }
                        Frac::new(c.num().rem_e(c.den()), c.den().clone())
                    }
                };
                v.push(r);
            }
            out.push(v);
        }
        Ok(out)
    }

    /// `Ann(x)` for a reduced element.
    pub fn annihilator(&self, x: &ModElem<R>) -> Ideal<R> {
        let gens = x
            .iter()
            .zip(&self.parts)
            .zip(self.ring.moduli())
            .map(|((coords, atoms), m)| {
                let g = coords.iter().zip(atoms).fold(R::one(), |acc, (c, a)| {
                    let h = match a {
                        _ if c.is_zero() => R::one(),
                        Atom::Free | Atom::Loc(_) => R::zero(),
                        Atom::Cyclic(d) => d.exact_div(&gcd(c.num(), d)),
                        Atom::LocModR(_) => c.den().clone(),
                    };
                    lcm(&acc, &h)
                });
                match m {
                    Some(m) => gcd(&g, m),
                    None => g,
                }
            })
            .collect();
        Ideal { gens }
    }

    fn per_atom<T>(&self, mut f: impl FnMut(usize, Option<&R>, &Atom<R>) -> Result<T>) -> Result<Vec<T>> {
        let mut out = Vec::new();
        for (i, (atoms, m)) in self.parts.iter().zip(self.ring.moduli()).enumerate() {
            for a in atoms {
                out.push(f(i, m, a)?);
            }
        }
        Ok(out)
    }

    fn union_all(&self, sets: Vec<PrimeSet<R>>) -> PrimeSet<R> {
        sets.into_iter().fold(self.ring.empty_set(), |acc, s| acc.union(&s))
    }

    fn closed_set(&self, i: usize, ps: impl IntoIterator<Item = R>) -> PrimeSet<R> {
        if self.ring.is_domain() {
            PrimeSet::Spec(Pointed::closed_points(Cofin::finite(ps)))
        } else {
            PrimeSet::Finite(ps.into_iter().map(|p| Prime { comp: i, p }).collect())
        }
    }

    /// Weakly associated primes: minimal primes over the annihilators of
    /// the atom generators.
    pub fn weak_ass(&self, bound: u64) -> Result<PrimeSet<R>> {
        let sets = self.per_atom(|i, _, a| {
            Ok(match a {
                Atom::Free | Atom::Loc(_) => PrimeSet::Spec(Pointed::generic_only()),
                Atom::Cyclic(d) => self.closed_set(i, d.prime_divisors(bound)?),
                Atom::LocModR(p) => PrimeSet::Spec(Pointed::closed_points(p.clone())),
            })
        })?;
        Ok(self.union_all(sets))
    }

    /// Associated primes, found as annihilators of explicit elements.
    pub fn ass(&self, bound: u64) -> Result<PrimeSet<R>> {
        let mut sets = Vec::new();
        for (i, atoms) in self.parts.iter().enumerate() {
            for (j, a) in atoms.iter().enumerate() {
                let probe = |c: Frac<R>| {
                    let mut x: ModElem<R> = self.parts.iter().map(|v| vec![Frac::zero(); v.len()]).collect();
                    x[i][j] = c;
                    self.annihilator(&x).gens[i].clone()
                };
                let s = match a {
                    Atom::Free | Atom::Loc(_) => {
                        debug_assert!(probe(Frac::one()).is_zero());
                        PrimeSet::Spec(Pointed::generic_only())
                    }
                    Atom::Cyclic(d) => {
                        let mut ps = Vec::new();
                        for p in d.prime_divisors(bound)? {
                            let ann = probe(Frac::int(d.exact_div(&p)));
                            if ann == p {
                                ps.push(p);
                            }
                        }
                        self.closed_set(i, ps)
                    }
                    // Every 1/p has annihilator (p); cofinite sets are taken whole.
                    Atom::LocModR(Cofin::Finite(ps)) => {
                        let ps = ps.iter().filter(|p| probe(Frac::new(R::one(), (*p).clone())) == **p).cloned();
                        PrimeSet::Spec(Pointed::closed_points(Cofin::finite(ps)))
                    }
                    Atom::LocModR(p) => PrimeSet::Spec(Pointed::closed_points(p.clone())),
                };
                sets.push(s);
            }
        }
        Ok(self.union_all(sets))
    }

    pub fn small_supp(&self, bound: u64) -> Result<PrimeSet<R>> {
        self.weak_ass(bound)
    }

    /// `{q : M_q != 0}`, from the localization rules of each atom.
    pub fn big_supp(&self, bound: u64) -> Result<PrimeSet<R>> {
        let sets = self.per_atom(|i, _, a| {
            Ok(match a {
                Atom::Free | Atom::Loc(_) => PrimeSet::Spec(Pointed::whole()),
                Atom::Cyclic(d) => self.closed_set(i, d.prime_divisors(bound)?),
                Atom::LocModR(p) => PrimeSet::Spec(Pointed::closed_points(p.clone())),
            })
        })?;
        Ok(self.union_all(sets))
    }

    /// `M_q`, as a module over the same ring.
    pub fn localize(&self, q: &Prime<R>) -> Self {
        let mut parts = vec![vec![]; self.parts.len()];
        for a in &self.parts[q.comp] {
            let b = if q.is_zero() {
                match a {
                    Atom::Free | Atom::Loc(_) => Some(Atom::Loc(Cofin::all())),
                    _ => None,
                }
            } else {
                let p = &q.p;
                let away = Cofin::cofinite([p.clone()]);
                match a {
                    Atom::Free => Some(Atom::Loc(away)),
                    Atom::Loc(s) => Some(Atom::Loc(if s.contains(p) { Cofin::all() } else { away })),
                    Atom::Cyclic(d) => Atom::Cyclic(crate::arith::pow(p, d.valuation(p))).normalize(),
                    Atom::LocModR(s) => s.contains(p).then(|| Atom::LocModR(Cofin::singleton(p.clone()))),
                }
            };
            parts[q.comp].extend(b);
        }
        Module { ring: self.ring.clone(), parts }
    }

    /// Is every element killed by a power of `a`?
    pub fn is_torsion(&self, a: &Ideal<R>) -> bool {
        self.parts.iter().enumerate().all(|(i, atoms)| {
            let g = &a.gens[i];
            self.ring.is_zero_ideal(a, i)
                || atoms.iter().all(|x| match x {
                    Atom::Free | Atom::Loc(_) => false,
                    Atom::Cyclic(d) => part_dividing(d, g) == *d,
                    Atom::LocModR(Cofin::Finite(ps)) => ps.iter().all(|p| p.divides(g)),
                    Atom::LocModR(_) => false,
                })
        })
    }

    /// `Γ_a M`: elements killed by a power of `a`.
    pub fn torsion_small(&self, a: &Ideal<R>, bound: u64) -> Result<Self> {
        let mut parts = Vec::new();
        for (i, atoms) in self.parts.iter().enumerate() {
            let g = &a.gens[i];
            let all = self.ring.is_zero_ideal(a, i);
            let mut v = Vec::new();
            for x in atoms {
                let y = match x {
                    _ if all => Some(x.clone()),
                    Atom::Free | Atom::Loc(_) => None,
                    Atom::Cyclic(d) => Atom::Cyclic(part_dividing(d, g)).normalize(),
                    Atom::LocModR(p) => {
                        let ps = g.prime_divisors(bound)?.into_iter().filter(|q| p.contains(q));
                        Atom::LocModR(Cofin::finite(ps)).normalize()
                    }
                };
                v.extend(y);
            }
            parts.push(v);
        }
        Ok(Module { ring: self.ring.clone(), parts })
    }

    /// `Γ̄_a M`: elements whose annihilator has radical containing `a`.
    pub fn torsion_large(&self, a: &Ideal<R>, bound: u64) -> Result<Self> {
        let mut parts = Vec::new();
        for (i, atoms) in self.parts.iter().enumerate() {
            let g = &a.gens[i];
            let in_radical = |p: &R| p.divides(g);
            let mut v = Vec::new();
            for x in atoms {
                let y = match x {
                    Atom::Free | Atom::Loc(_) => g.is_zero().then(|| x.clone()),
                    Atom::Cyclic(d) => {
                        let keep = d.factor_with(bound)?.into_iter().filter(|(p, _)| in_radical(p));
                        let e = keep.fold(R::one(), |acc, (p, k)| acc * crate::arith::pow(&p, k));
                        Atom::Cyclic(e).normalize()
                    }
                    Atom::LocModR(p) if g.is_zero() => Some(Atom::LocModR(p.clone())),
                    Atom::LocModR(p) => {
                        let ps = g.prime_divisors(bound)?.into_iter().filter(|q| p.contains(q) && in_radical(q));
                        Atom::LocModR(Cofin::finite(ps)).normalize()
                    }
                };
                v.extend(y);
            }
            parts.push(v);
        }
        Ok(Module { ring: self.ring.clone(), parts })
    }

    /// Number of elements, if finite and at most `limit`.
    pub fn size(&self, limit: usize) -> Option<usize> {
        let mut n = 1usize;
        for a in self.parts.iter().flatten() {
            let Atom::Cyclic(d) = a else { return None };
            n = n.checked_mul(R::residues(d, limit)?.len()).filter(|&n| n <= limit)?;
        }
        Some(n)
    }
}

impl<R: Euclid> fmt::Display for Module<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, atoms) in self.parts.iter().enumerate() {
            for a in atoms {
                if self.ring.ncomps() == 1 {
                    terms.push(a.to_string());
                } else {
                    terms.push(format!("{a}@{i}"));
                }
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// A module given by generators and relations, with its cyclic
/// decomposition.
#[derive(Clone, Debug)]
pub struct Presented<R: Euclid> {
    gens: usize,
    rels: Vec<Vec<Vec<R>>>,
    /// Per component: generator coordinates times `basis` give Smith
    /// coordinates; `keep` lists those that survive as atoms.
    basis: Vec<Mat<R>>,
    keep: Vec<Vec<usize>>,
    module: Module<R>,
}

impl<R: Euclid> Presented<R> {
    /// `rels[k][j][i]`: coefficient of generator `j` in relation `k`, at
    /// ring component `i`.
    pub fn new(ring: Ring<R>, gens: usize, rels: &[Vec<Vec<R>>]) -> Result<Self> {
        for r in rels {
            if r.len() != gens {
                return Err(Error::input(format!("relation has {} entries, expected {gens}", r.len())));
            }
            for x in r {
                ring.check_elem(x)?;
            }
        }
        let mut basis = Vec::new();
        let mut keep = Vec::new();
        let mut parts = Vec::new();
        for (i, m) in ring.moduli().enumerate() {
            let mut rows: Vec<Vec<R>> = rels.iter().map(|r| r.iter().map(|x| x[i].clone()).collect()).collect();
            if let Some(m) = m {
                for j in 0..gens {
                    let mut row = vec![R::zero(); gens];
                    row[j] = m.clone();
                    rows.push(row);
                }
            }
            let a = Mat::from_rows(gens, rows);
            let s = smith(&a);
            let mut k = Vec::new();
            let mut atoms = Vec::new();
            for j in 0..gens {
                let d = s.diag.get(j).cloned().unwrap_or_else(R::zero);
                if !d.is_unit() {
                    k.push(j);
                    atoms.push(if d.is_zero() { Atom::Free } else { Atom::Cyclic(d) });
                }
            }
            basis.push(s.v);
            keep.push(k);
            parts.push(atoms);
        }
        Ok(Presented { gens, rels: rels.to_vec(), basis, keep, module: Module { ring, parts } })
    }

    pub fn module(&self) -> &Module<R> {
        &self.module
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn relations(&self) -> &[Vec<Vec<R>>] {
        &self.rels
    }

    /// Coordinates of `Σ x_j g_j` in the atoms of `module()`.
    pub fn element(&self, x: &[Vec<R>], bound: u64) -> Result<ModElem<R>> {
        if x.len() != self.gens {
            return Err(Error::input(format!("element needs {} coordinates", self.gens)));
        }
        let coords = (0..self.basis.len())
            .map(|i| {
                let v = &self.basis[i];
                self.keep[i]
                    .iter()
                    .map(|&c| {
                        let s = (0..self.gens).fold(R::zero(), |acc, j| acc + x[j][i].clone() * v.a[j][c].clone());
                        Frac::int(s)
                    })
                    .collect()
            })
            .collect();
        self.module.element(coords, bound)
    }
}

#[cfg(test)]
mod tests;
