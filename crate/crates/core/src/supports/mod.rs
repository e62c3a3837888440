//! Tensor-triangular and BIK supports of complexes over a Euclidean domain.
//!
//! Both supports are decided point by point on the generic point, the
//! relevant primes of the complex, and one representative prime standing for
//! every other closed point. The tt route tests `g_W ⊗ X` for the weakly
//! visible `W = {𝔭}`; the BIK route tests `e_{V(a)} ⊗ f_{Z(𝔭)} ⊗ X` for the
//! principal ideal `a` generated by `𝔭`.

pub mod checks;
#[cfg(test)]
mod tests;

use crate::arith::Euclid;
use crate::complexes::{homology, is_zero, relevant_primes, Complex, FanSet, LocalHomology, Place, SetDesc};
use crate::error::{Error, Result};
use crate::topology::{Cofin, FanBase, Label, Pointed, Space, Subset};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

/// A point of the spectrum of a Euclidean domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pt<R> {
    Generic,
    Closed(R),
}

impl<R: Euclid> Pt<R> {
    pub fn name(&self) -> String {
        match self {
            Pt::Generic => "(0)".into(),
            Pt::Closed(p) => format!("({p})"),
        }
    }

    pub fn place(&self) -> Place<R> {
        match self {
            Pt::Generic => Place::Generic,
            Pt::Closed(p) => Place::Closed(p.clone()),
        }
    }

    pub fn in_set(&self, s: &FanSet<R>) -> bool {
        match self {
            Pt::Generic => s.generic,
            Pt::Closed(p) => s.closed.contains(p),
        }
    }
}

/// Why a point is outside a support.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "route", rename_all = "snake_case")]
pub enum Witness {
    /// `g_W ⊗ X` is acyclic for `W = U ∩ V^c`.
    Tt { point: String, representative: bool, u: SetDesc, v: SetDesc },
    /// `e_{V(ideal)} ⊗ f_{away_from} ⊗ X` is acyclic.
    Bik { point: String, representative: bool, ideal: String, away_from: SetDesc },
}

/// The relevant primes of a complex and the least prime outside them.
pub struct Probe<R> {
    pub relevant: Vec<R>,
    pub representative: R,
}

impl<R: Euclid> Probe<R> {
    pub fn new(x: &Complex<R>, bound: u64) -> Result<Self> {
        let rel = relevant_primes(x, bound)?;
        let representative = R::primes().find(|p| !rel.contains(p)).expect("infinitely many primes");
        Ok(Probe { relevant: rel.into_iter().collect(), representative })
    }

    /// Generic point, relevant primes, representative.
    pub fn points(&self) -> Vec<Pt<R>> {
        let mut out = vec![Pt::Generic];
        out.extend(self.relevant.iter().cloned().map(Pt::Closed));
        out.push(Pt::Closed(self.representative.clone()));
        out
    }

    fn is_rep(&self, pt: &Pt<R>) -> bool {
        matches!(pt, Pt::Closed(p) if *p == self.representative)
    }

    /// The set with the given members among `points()`.
    pub fn assemble(&self, member: impl Fn(&Pt<R>) -> bool) -> FanSet<R> {
        let inside: BTreeSet<R> = self.relevant.iter().filter(|p| member(&Pt::Closed((*p).clone()))).cloned().collect();
        let closed = if member(&Pt::Closed(self.representative.clone())) {
            Cofin::cofinite(self.relevant.iter().filter(|p| !inside.contains(p)).cloned())
        } else {
            Cofin::Finite(inside)
        };
        Pointed::new(closed, member(&Pt::Generic))
    }
}

fn singleton<R: Euclid>(p: &R) -> FanSet<R> {
    Pointed::closed_points(Cofin::singleton(p.clone()))
}

/// `V(a)` for a principal ideal.
pub fn v_of<R: Euclid>(a: &R, bound: u64) -> Result<FanSet<R>> {
    if a.is_zero() {
        return Ok(Pointed::whole());
    }
    Ok(Pointed::closed_points(Cofin::finite(a.prime_divisors(bound)?)))
}

/// `Z(𝔭)`: the primes not contained in `𝔭`.
pub fn z_of<R: Euclid>(pt: &Pt<R>) -> FanSet<R> {
    match pt {
        Pt::Generic => Pointed::all_closed(),
        Pt::Closed(p) => Pointed::closed_points(Cofin::cofinite([p.clone()])),
    }
}

/// Thomason `(U, V)` with `U ∩ V^c = {pt}`.
pub fn visible_pair<R: Euclid>(pt: &Pt<R>) -> (FanSet<R>, FanSet<R>) {
    match pt {
        Pt::Generic => (Pointed::whole(), Pointed::all_closed()),
        Pt::Closed(p) => (singleton(p), Pointed::empty()),
    }
}

/// `g_{{pt}} ⊗ X` is acyclic.
pub fn tt_excludes<R: Euclid>(x: &Complex<R>, pt: &Pt<R>, bound: u64) -> Result<bool> {
    let (u, v) = visible_pair(pt);
    is_zero(&Complex::g(&u, &v)?.tensor(x), bound)
}

/// The principal ideal tested at a point: the point itself.
pub fn bik_ideal<R: Euclid>(pt: &Pt<R>) -> R {
    match pt {
        Pt::Generic => R::zero(),
        Pt::Closed(p) => p.clone(),
    }
}

/// `e_{V(a)} ⊗ f_{Z(pt)} ⊗ X` is acyclic.
pub fn bik_excludes_with<R: Euclid>(x: &Complex<R>, pt: &Pt<R>, a: &R, bound: u64) -> Result<bool> {
    let e = Complex::e(&v_of(a, bound)?)?;
    let f = Complex::f(&z_of(pt))?;
    is_zero(&e.tensor(&f).tensor(x), bound)
}

pub fn bik_excludes<R: Euclid>(x: &Complex<R>, pt: &Pt<R>, bound: u64) -> Result<bool> {
    bik_excludes_with(x, pt, &bik_ideal(pt), bound)
}

/// Both supports of a complex with the witnesses for excluded points.
#[derive(Clone, Debug)]
pub struct Supports<R: Euclid> {
    pub tt: FanSet<R>,
    pub bik: FanSet<R>,
    pub witnesses: Vec<Witness>,
    pub zero: bool,
    pub probe_relevant: Vec<R>,
    pub representative: R,
}

impl<R: Euclid> Supports<R> {
    pub fn agree(&self) -> bool {
        self.tt == self.bik
    }
}

pub fn tt_supp<R: Euclid>(x: &Complex<R>, bound: u64) -> Result<FanSet<R>> {
    let probe = Probe::new(x, bound)?;
    let pts = probe.points();
    let out: Vec<bool> = pts.par_iter().map(|pt| tt_excludes(x, pt, bound)).collect::<Result<_>>()?;
    let out: BTreeMap<&Pt<R>, bool> = pts.iter().zip(out).collect();
    Ok(probe.assemble(|pt| !out[pt]))
}

pub fn bik_supp<R: Euclid>(x: &Complex<R>, bound: u64) -> Result<FanSet<R>> {
    let probe = Probe::new(x, bound)?;
    let pts = probe.points();
    let out: Vec<bool> = pts.par_iter().map(|pt| bik_excludes(x, pt, bound)).collect::<Result<_>>()?;
    let out: BTreeMap<&Pt<R>, bool> = pts.iter().zip(out).collect();
    Ok(probe.assemble(|pt| !out[pt]))
}

/// Both supports, computed independently, with witnesses.
pub fn supports<R: Euclid>(x: &Complex<R>, bound: u64) -> Result<Supports<R>> {
    let probe = Probe::new(x, bound)?;
    let pts = probe.points();
    let res: Vec<(bool, bool)> = pts
        .par_iter()
        .map(|pt| Ok((tt_excludes(x, pt, bound)?, bik_excludes(x, pt, bound)?)))
        .collect::<Result<_>>()?;
    let by: BTreeMap<&Pt<R>, (bool, bool)> = pts.iter().zip(res.iter().copied()).collect();
    let tt = probe.assemble(|pt| !by[pt].0);
    let bik = probe.assemble(|pt| !by[pt].1);
    let mut witnesses = Vec::new();
    for (pt, (t, b)) in pts.iter().zip(res) {
        let representative = probe.is_rep(pt);
        if t {
            let (u, v) = visible_pair(pt);
            witnesses.push(Witness::Tt { point: pt.name(), representative, u: SetDesc::of(&u), v: SetDesc::of(&v) });
        }
        if b {
            witnesses.push(Witness::Bik {
                point: pt.name(),
                representative,
                ideal: format!("({})", bik_ideal(pt)),
                away_from: SetDesc::of(&z_of(pt)),
            });
        }
    }
    Ok(Supports {
        tt,
        bik,
        witnesses,
        zero: is_zero(x, bound)?,
        probe_relevant: probe.relevant,
        representative: probe.representative,
    })
}

/// The fan over the base ring of `R`.
pub fn fan_base<R: Euclid>() -> FanBase {
    match R::characteristic() {
        0 => FanBase::Z,
        p => FanBase::Fpx(p),
    }
}

pub fn to_subset<R: Euclid>(s: &FanSet<R>) -> Subset {
    Subset::Fan(s.map(|p| Label(p.to_string())))
}

pub fn is_localizing_closed<R: Euclid>(s: &FanSet<R>) -> Result<bool> {
    Space::Fan(fan_base::<R>()).is_localizing_closed(&to_subset(s))
}

/// A short rendering such as `{(2), (3)}` or `{(0)} ∪ closed points except {(5)}`.
pub fn describe<R: Euclid>(s: &FanSet<R>) -> String {
    let list = |v: &BTreeSet<R>| v.iter().map(|p| format!("({p})")).collect::<Vec<_>>().join(", ");
    let closed = match &s.closed {
        Cofin::Finite(v) if v.is_empty() => None,
        Cofin::Finite(v) => Some(format!("{{{}}}", list(v))),
        Cofin::Cofinite(v) if v.is_empty() => Some("all closed points".to_string()),
        Cofin::Cofinite(v) => Some(format!("closed points except {{{}}}", list(v))),
    };
    match (s.generic, closed) {
        _ if s.is_whole() => "whole space".into(),
        (false, None) => "∅".into(),
        (true, None) => "{(0)}".into(),
        (false, Some(c)) => c,
        (true, Some(c)) => format!("{{(0)}} ∪ {c}"),
    }
}

/// The comparison report for one complex.
#[derive(Clone, Debug, Serialize)]
pub struct SupportReport {
    pub object: String,
    pub tt_supp: Subset,
    pub bik_supp: Subset,
    pub tt_text: String,
    pub bik_text: String,
    pub witnesses: Vec<Witness>,
    pub relevant_primes: Vec<String>,
    pub representative: String,
    pub localizing_closed: bool,
    pub zero: bool,
    pub agree: bool,
}

pub fn compare_supports<R: Euclid>(x: &Complex<R>, bound: u64) -> Result<SupportReport> {
    let s = supports(x, bound)?;
    Ok(SupportReport {
        object: x.to_string(),
        tt_supp: to_subset(&s.tt),
        bik_supp: to_subset(&s.bik),
        tt_text: describe(&s.tt),
        bik_text: describe(&s.bik),
        witnesses: s.witnesses.clone(),
        relevant_primes: s.probe_relevant.iter().map(|p| p.to_string()).collect(),
        representative: s.representative.to_string(),
        localizing_closed: is_localizing_closed(&s.tt)? && is_localizing_closed(&s.bik)?,
        zero: s.zero,
        agree: s.agree(),
    })
}

/// Points where the homology of `X` is nonzero.
pub fn homology_big_supp<R: Euclid>(x: &Complex<R>, bound: u64) -> Result<FanSet<R>> {
    local_set(x, bound, |h| !h.is_empty())
}

/// Weakly associated primes of the homology of `X`: the generic point when
/// some homology has positive rank, a closed point when some homology has
/// torsion there.
pub fn homology_small_supp<R: Euclid>(x: &Complex<R>, bound: u64) -> Result<FanSet<R>> {
    let fraction = homology(x, &Place::Generic)?.values().any(|m| m.fraction > 0);
    let s = local_set(x, bound, |h| h.values().any(LocalHomology::has_torsion))?;
    Ok(Pointed::new(s.closed, fraction))
}

fn local_set<R: Euclid>(
    x: &Complex<R>,
    bound: u64,
    keep: impl Fn(&BTreeMap<i64, LocalHomology>) -> bool + Sync,
) -> Result<FanSet<R>> {
    let probe = Probe::new(x, bound)?;
    let pts = probe.points();
    let mut places: Vec<(Pt<R>, Place<R>)> = pts.iter().map(|pt| (pt.clone(), pt.place())).collect();
    places.pop();
    places.push((Pt::Closed(probe.representative.clone()), Place::Default));
    let res: Vec<bool> = places.par_iter().map(|(_, pl)| Ok(keep(&homology(x, pl)?))).collect::<Result<_>>()?;
    let by: BTreeMap<&Pt<R>, bool> = places.iter().map(|(pt, _)| pt).zip(res).collect();
    Ok(probe.assemble(|pt| by[pt]))
}

/// Minimal points of a set: the generic point if present, otherwise the set.
pub fn minimal<R: Euclid>(s: &FanSet<R>) -> FanSet<R> {
    if s.generic {
        Pointed::generic_only()
    } else {
        s.clone()
    }
}

/// Symbolic local-to-global analysis of a cover of the chromatic column by
/// weakly visible sets: the member containing infinity and its height.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColumnCover {
    pub member: usize,
    pub height: u64,
}

pub fn column_cover(cover: &[crate::topology::ColumnSet]) -> Result<ColumnCover> {
    use crate::topology::{ColumnSet, Ht};
    for (i, w) in cover.iter().enumerate() {
        if w.weakly_visible_witness().is_none() {
            return Err(Error::input(format!("cover member {i} is not weakly visible")));
        }
    }
    let union = cover.iter().fold(ColumnSet::empty(), |a, b| a.union(b));
    if !union.is_whole(0) {
        return Err(Error::input("the proposed sets do not cover the column"));
    }
    let i = cover.iter().position(|w| w.contains(Ht::Inf)).expect("a cover contains infinity");
    match cover[i].as_tail() {
        Some(n) if cover[i] == ColumnSet::tail(n) => Ok(ColumnCover { member: i, height: n }),
        _ => Err(Error::invariant(format!("cover member {i} contains infinity but is not a closure of a height"))),
    }
}
