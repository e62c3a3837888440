//! JSON descriptors for complexes: explicit terms and differentials, or a
//! tree of constructions.

use super::{Complex, FanSet, MultSet};
use crate::arith::linalg::Mat;
use crate::arith::{Euclid, Frac};
use crate::error::{Error, Result};
use crate::ringmod::{AtomDesc, RingDesc};
use crate::topology::{Cofin, Pointed};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A complex over a domain. Either `terms` (keyed by degree) with `diffs`
/// (key `n` holds `d_n : X_n -> X_{n-1}`, rows indexed by the atoms of
/// `X_{n-1}`), or `build`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDesc {
    pub ring: RingDesc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lo: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hi: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<BTreeMap<String, Vec<AtomDesc>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diffs: Option<BTreeMap<String, Vec<Vec<String>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub build: Option<Construct>,
}

/// A set in the Thomason descriptor family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SetDesc {
    Empty {},
    Whole {},
    AllClosed {},
    Finite { primes: Vec<String> },
    Cofinite { primes: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum Construct {
    Unit {},
    Zero {},
    Atom {
        atom: AtomDesc,
        #[serde(default)]
        degree: i64,
    },
    Explicit {
        lo: i64,
        hi: i64,
        terms: BTreeMap<String, Vec<AtomDesc>>,
        #[serde(default)]
        diffs: BTreeMap<String, Vec<Vec<String>>>,
    },
    Shift { of: Box<Construct>, n: i64 },
    Sum { of: Vec<Construct> },
    Tensor { of: Vec<Construct> },
    Koszul { of: Box<Construct>, elements: Vec<String> },
    StableKoszul { ideal: Vec<String> },
    E { set: SetDesc },
    F { set: SetDesc },
    G { u: SetDesc, v: SetDesc },
    Localize {
        of: Box<Construct>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        outside: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        powers: Option<String>,
    },
}

fn prime<R: Euclid>(s: &str) -> Result<R> {
    let p = R::parse_elem(s)?.normalized();
    if !p.is_prime_elem() {
        return Err(Error::input(format!("{s} is not prime")));
    }
    Ok(p)
}

impl SetDesc {
    pub fn build<R: Euclid>(&self) -> Result<FanSet<R>> {
        let list = |v: &[String]| v.iter().map(|s| prime::<R>(s)).collect::<Result<Vec<_>>>();
        Ok(match self {
            SetDesc::Empty {} => Pointed::empty(),
            SetDesc::Whole {} => Pointed::whole(),
            SetDesc::AllClosed {} => Pointed::all_closed(),
            SetDesc::Finite { primes } => Pointed::closed_points(Cofin::finite(list(primes)?)),
            SetDesc::Cofinite { primes } => Pointed::closed_points(Cofin::cofinite(list(primes)?)),
        })
    }

    pub fn of<R: Euclid>(y: &FanSet<R>) -> Self {
        let strs = |s: &std::collections::BTreeSet<R>| s.iter().map(|p| p.to_string()).collect();
        match (&y.closed, y.generic) {
            (_, true) => SetDesc::Whole {},
            (Cofin::Finite(s), _) if s.is_empty() => SetDesc::Empty {},
            (Cofin::Cofinite(s), _) if s.is_empty() => SetDesc::AllClosed {},
            (Cofin::Finite(s), _) => SetDesc::Finite { primes: strs(s) },
            (Cofin::Cofinite(s), _) => SetDesc::Cofinite { primes: strs(s) },
        }
    }
}

fn explicit<R: Euclid>(
    lo: i64,
    hi: i64,
    terms: &BTreeMap<String, Vec<AtomDesc>>,
    diffs: &BTreeMap<String, Vec<Vec<String>>>,
    bound: u64,
) -> Result<Complex<R>> {
    if hi < lo {
        return Err(Error::input(format!("empty degree range [{lo}, {hi}]")));
    }
    let key = |k: &String| k.trim().parse::<i64>().map_err(|_| Error::input(format!("degree key {k:?} is not an integer")));
    let mut ts: BTreeMap<i64, Vec<_>> = BTreeMap::new();
    for (k, atoms) in terms {
        let n = key(k)?;
        if n < lo || n > hi {
            return Err(Error::input(format!("term in degree {n} outside [{lo}, {hi}]")));
        }
        for a in atoms {
            if a.component.is_some() {
                return Err(Error::input("complexes live over a domain; atoms take no component"));
            }
        }
        ts.insert(n, atoms.iter().map(|a| a.build::<R>(bound)).collect::<Result<_>>()?);
    }
    let mut ds: BTreeMap<i64, Vec<Vec<String>>> = BTreeMap::new();
    for (k, m) in diffs {
        let n = key(k)?;
        if n <= lo || n > hi {
            return Err(Error::input(format!("d_{n} leaves the degree range [{lo}, {hi}]")));
        }
        ds.insert(n, m.clone());
    }
    let terms: Vec<_> = (lo..=hi).map(|n| ts.remove(&n).unwrap_or_default()).collect();
    let mut mats = Vec::new();
    for n in lo + 1..=hi {
        let (rows, cols) = (terms[(n - lo - 1) as usize].len(), terms[(n - lo) as usize].len());
        let m = match ds.remove(&n) {
            None => Mat::zeros(rows, cols),
            Some(m) => {
                if m.len() != rows || m.iter().any(|r| r.len() != cols) {
                    return Err(Error::input(format!("d_{n} should be {rows}x{cols}")));
                }
                let a = m
                    .iter()
                    .map(|r| r.iter().map(|s| Frac::<R>::parse(s)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                Mat { rows, cols, a }
            }
        };
        mats.push(m);
    }
    Complex::new(lo, terms, mats)
}

impl Construct {
    pub fn build<R: Euclid>(&self, bound: u64) -> Result<Complex<R>> {
        let many = |v: &[Construct]| v.iter().map(|c| c.build::<R>(bound)).collect::<Result<Vec<_>>>();
        let elems = |v: &[String]| v.iter().map(|s| R::parse_elem(s)).collect::<Result<Vec<_>>>();
        Ok(match self {
            Construct::Unit {} => Complex::unit(),
            Construct::Zero {} => Complex::zero(),
            Construct::Atom { atom, degree } => {
                if atom.component.is_some() {
                    return Err(Error::input("complexes live over a domain; atoms take no component"));
                }
                Complex::atom(atom.build(bound)?, *degree)
            }
            Construct::Explicit { lo, hi, terms, diffs } => explicit(*lo, *hi, terms, diffs, bound)?,
            Construct::Shift { of, n } => of.build::<R>(bound)?.shift(*n),
            Construct::Sum { of } => many(of)?.iter().fold(Complex::zero(), |a, b| a.sum(b)),
            Construct::Tensor { of } => many(of)?.iter().fold(Complex::unit(), |a, b| a.tensor(b)),
            Construct::Koszul { of, elements } => of.build::<R>(bound)?.koszul_ideal(&elems(elements)?),
            Construct::StableKoszul { ideal } => Complex::stable_koszul(&elems(ideal)?, bound)?,
            Construct::E { set } => Complex::e(&set.build()?)?,
            Construct::F { set } => Complex::f(&set.build()?)?,
            Construct::G { u, v } => Complex::g(&u.build()?, &v.build()?)?,
            Construct::Localize { of, outside, powers } => {
                let s = match (outside, powers) {
                    (Some(p), None) => {
                        let p = R::parse_elem(p)?;
                        MultSet::Outside(if p.is_zero() { p } else { prime::<R>(&p.to_string())? })
                    }
                    (None, Some(u)) => MultSet::Powers(R::parse_elem(u)?),
                    _ => return Err(Error::input("localize needs exactly one of outside, powers")),
                };
                of.build::<R>(bound)?.localize(&s, bound)?
            }
        })
    }

    /// The explicit form of a complex.
    pub fn of<R: Euclid>(x: &Complex<R>) -> Self {
        if x.is_empty() {
            return Construct::Zero {};
        }
        let terms = (x.lo()..=x.hi())
            .filter(|&n| !x.term(n).is_empty())
            .map(|n| (n.to_string(), x.term(n).iter().map(|a| AtomDesc::of(a, None)).collect()))
            .collect();
        let diffs = (x.lo() + 1..=x.hi())
            .filter(|&n| !x.diff(n).is_zero())
            .map(|n| (n.to_string(), x.diff(n).a.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect()))
            .collect();
        Construct::Explicit { lo: x.lo(), hi: x.hi(), terms, diffs }
    }
}

impl ComplexDesc {
    pub fn build<R: Euclid>(&self, bound: u64) -> Result<Complex<R>> {
        if !matches!(self.ring, RingDesc::Z {} | RingDesc::Fpx { .. }) {
            return Err(Error::unsupported("complexes are over Z or F_p[x]"));
        }
        match (&self.build, self.lo, self.hi, &self.terms) {
            (Some(c), None, None, None) if self.diffs.is_none() => c.build(bound),
            (None, Some(lo), Some(hi), Some(terms)) => {
                explicit(lo, hi, terms, self.diffs.as_ref().unwrap_or(&BTreeMap::new()), bound)
            }
            _ => Err(Error::input("a complex needs either \"build\" or \"lo\", \"hi\" and \"terms\"")),
        }
    }

    /// An explicit descriptor that rebuilds `x`.
    pub fn of<R: Euclid>(ring: RingDesc, x: &Complex<R>) -> Self {
        match Construct::of(x) {
            Construct::Explicit { lo, hi, terms, diffs } => ComplexDesc {
                ring,
                lo: Some(lo),
                hi: Some(hi),
                terms: Some(terms),
                diffs: Some(diffs),
                build: None,
            },
            c => ComplexDesc { ring, lo: None, hi: None, terms: None, diffs: None, build: Some(c) },
        }
    }
}
