//! JSON descriptors for rings, modules, elements and ideals.

use super::{Atom, Ideal, ModElem, Module, Presented, Prime, Ring};
use crate::arith::{Euclid, Frac, SUPPORTED_FIELD_PRIMES};
use crate::error::{Error, Result};
use crate::topology::{Cofin, FanBase};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum RingDesc {
    #[serde(rename = "Z")]
    Z {},
    #[serde(rename = "Fp_x")]
    Fpx { p: u64 },
    #[serde(rename = "quotient")]
    Quotient { base: Box<RingDesc>, modulus: String },
    #[serde(rename = "product")]
    Product { components: Vec<RingDesc> },
}

/// One ring element: a single string, or one string per product component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    One(String),
    Many(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomDesc {
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primes: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub all_but: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invert: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDesc {
    pub ring: RingDesc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<Vec<Vec<Entry>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub atoms: Option<Vec<AtomDesc>>,
}

impl RingDesc {
    /// The Euclidean base, after checking the descriptor's shape.
    pub fn base(&self) -> Result<FanBase> {
        match self {
            RingDesc::Z {} => Ok(FanBase::Z),
            RingDesc::Fpx { p } => {
                if !SUPPORTED_FIELD_PRIMES.contains(p) {
                    return Err(Error::unsupported(format!(
                        "F_p[x] is available for p in {SUPPORTED_FIELD_PRIMES:?}, not {p}"
                    )));
                }
                Ok(FanBase::Fpx(*p))
            }
            RingDesc::Quotient { base, .. } => match **base {
                RingDesc::Z {} | RingDesc::Fpx { .. } => base.base(),
                _ => Err(Error::input("a quotient's base must be Z or Fp_x")),
            },
            RingDesc::Product { components } => {
                let mut bases = components.iter().map(|c| match c {
                    RingDesc::Quotient { .. } => c.base(),
                    _ => Err(Error::input("product components must be quotients")),
                });
                let first = bases.next().ok_or_else(|| Error::input("empty product"))??;
                for b in bases {
                    if b? != first {
                        return Err(Error::unsupported("product components must share one base ring"));
                    }
                }
                Ok(first)
            }
        }
    }

    pub fn build<R: Euclid>(&self) -> Result<Ring<R>> {
        match self {
            RingDesc::Z {} | RingDesc::Fpx { .. } => Ok(Ring::domain()),
            RingDesc::Quotient { modulus, .. } => Ring::quotient(R::parse_elem(modulus)?),
            RingDesc::Product { components } => {
                let ms = components
                    .iter()
                    .map(|c| match c {
                        RingDesc::Quotient { modulus, .. } => R::parse_elem(modulus),
                        _ => Err(Error::input("product components must be quotients")),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ring::product(ms)
            }
        }
    }
}

/// Parses a ring element; a single string is used in every component.
pub fn parse_elem<R: Euclid>(ring: &Ring<R>, e: &Entry) -> Result<Vec<R>> {
    let v = match e {
        Entry::One(s) => vec![R::parse_elem(s)?; ring.ncomps()],
        Entry::Many(v) => v.iter().map(|s| R::parse_elem(s)).collect::<Result<_>>()?,
    };
    ring.check_elem(&v)?;
    Ok(ring.reduce(&v))
}

pub fn parse_ideal<R: Euclid>(ring: &Ring<R>, gens: &[Entry]) -> Result<Ideal<R>> {
    let gens = gens.iter().map(|g| parse_elem(ring, g)).collect::<Result<Vec<_>>>()?;
    ring.ideal(&gens)
}

/// Parses "generic"/"0", a prime element, or "i:p" in a product ring.
pub fn parse_prime<R: Euclid>(ring: &Ring<R>, s: &str) -> Result<Prime<R>> {
    let (comp, p) = match s.split_once(':') {
        Some((i, p)) => (i.trim().parse().map_err(|_| Error::input(format!("bad component in {s}")))?, p),
        None => (0, s),
    };
    let p = p.trim();
    let p = if p == "generic" { R::zero() } else { R::parse_elem(p)? };
    ring.prime(comp, p)
}

fn prime_list<R: Euclid>(v: &[String]) -> Result<Vec<R>> {
    v.iter()
        .map(|s| {
            let p = R::parse_elem(s)?.normalized();
            if !p.is_prime_elem() {
                return Err(Error::input(format!("{s} is not prime")));
            }
            Ok(p)
        })
        .collect()
}

impl AtomDesc {
    fn prime_set<R: Euclid>(&self, bound: u64) -> Result<Cofin<R>> {
        match (&self.primes, &self.all_but, &self.invert) {
            (Some(v), None, None) => Ok(Cofin::finite(prime_list(v)?)),
            (None, Some(v), None) => Ok(Cofin::cofinite(prime_list(v)?)),
            (None, None, Some(u)) => Ok(Cofin::finite(R::parse_elem(u)?.prime_divisors(bound)?)),
            _ => Err(Error::input(format!(
                "atom {} needs exactly one of primes, all_but, invert",
                self.kind
            ))),
        }
    }

    pub fn build<R: Euclid>(&self, bound: u64) -> Result<Atom<R>> {
        let no_set = self.primes.is_none() && self.all_but.is_none() && self.invert.is_none();
        match self.kind.as_str() {
            "R" if no_set && self.d.is_none() => Ok(Atom::Free),
            "cyclic" if no_set => {
                let d = self.d.as_ref().ok_or_else(|| Error::input("cyclic atom needs d"))?;
                let d = R::parse_elem(d)?;
                if d.is_zero() || d.is_unit() {
                    return Err(Error::input(format!("cyclic atom needs a nonzero nonunit, got {d}")));
                }
                Ok(Atom::Cyclic(d.normalized()))
            }
            "loc" if self.d.is_none() => Ok(Atom::Loc(self.prime_set(bound)?)),
            "loc_mod_R" if self.d.is_none() => Ok(Atom::LocModR(self.prime_set(bound)?)),
            "R" | "cyclic" | "loc" | "loc_mod_R" => Err(Error::input(format!("bad fields for atom {}", self.kind))),
            k => Err(Error::input(format!("unknown atom type {k}"))),
        }
    }

    pub fn of<R: Euclid>(a: &Atom<R>, component: Option<usize>) -> Self {
        let mut d = AtomDesc {
            kind: String::new(),
            d: None,
            primes: None,
            all_but: None,
            invert: None,
            component,
        };
        let list = |s: &std::collections::BTreeSet<R>| Some(s.iter().map(|p| p.to_string()).collect());
        let set = |d: &mut AtomDesc, p: &Cofin<R>| match p {
            Cofin::Finite(s) => d.primes = list(s),
            Cofin::Cofinite(s) => d.all_but = list(s),
        };
        match a {
            Atom::Free => d.kind = "R".into(),
            Atom::Cyclic(x) => {
                d.kind = "cyclic".into();
                d.d = Some(x.to_string());
            }
            Atom::Loc(p) => {
                d.kind = "loc".into();
                set(&mut d, p);
            }
            Atom::LocModR(p) => {
                d.kind = "loc_mod_R".into();
                set(&mut d, p);
            }
        }
        d
    }
}

/// A module built from a descriptor, remembering how elements are given.
pub enum Built<R: Euclid> {
    Atoms(Module<R>),
    Presented(Presented<R>),
}

impl<R: Euclid> Built<R> {
    pub fn module(&self) -> &Module<R> {
        match self {
            Built::Atoms(m) => m,
            Built::Presented(p) => p.module(),
        }
    }

    /// An element: one fraction per atom, or one ring element per generator.
    pub fn element(&self, x: &[Entry], bound: u64) -> Result<ModElem<R>> {
        match self {
            Built::Atoms(m) => {
                let n: usize = m.parts().iter().map(|p| p.len()).sum();
                if x.len() != n {
                    return Err(Error::input(format!("element needs one entry per atom ({n})")));
                }
                let mut it = x.iter();
                let mut out = Vec::new();
                for atoms in m.parts() {
                    let mut v = Vec::new();
                    for _ in atoms {
                        match it.next() {
                            Some(Entry::One(s)) => v.push(Frac::parse(s)?),
                            _ => return Err(Error::input("atom coordinates are single strings")),
                        }
                    }
                    out.push(v);
                }
                m.element(out, bound)
            }
            Built::Presented(p) => {
                let ring = p.module().ring();
                let x = x.iter().map(|e| parse_elem(ring, e)).collect::<Result<Vec<_>>>()?;
                p.element(&x, bound)
            }
        }
    }
}

impl ModuleDesc {
    pub fn build<R: Euclid>(&self, bound: u64) -> Result<Built<R>> {
        let ring = self.ring.build::<R>()?;
        match (&self.presentation, &self.atoms) {
            (Some(rels), None) => {
                let gens = match (self.generators, rels.first()) {
                    (Some(n), _) => n,
                    (None, Some(r)) => r.len(),
                    (None, None) => return Err(Error::input("an empty presentation needs \"generators\"")),
                };
                let rels = rels
                    .iter()
                    .map(|r| r.iter().map(|e| parse_elem(&ring, e)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                Ok(Built::Presented(Presented::new(ring, gens, &rels)?))
            }
            (None, Some(atoms)) => {
                if self.generators.is_some() {
                    return Err(Error::input("\"generators\" only applies to presentations"));
                }
                let mut parts = vec![vec![]; ring.ncomps()];
                for a in atoms {
                    let i = a.component.unwrap_or(0);
                    if i >= ring.ncomps() {
                        return Err(Error::input(format!("atom component {i} out of range")));
                    }
                    parts[i].push(a.build(bound)?);
                }
                Ok(Built::Atoms(Module::new(ring, parts)?))
            }
            _ => Err(Error::input("a module needs exactly one of \"presentation\" and \"atoms\"")),
        }
    }
}

impl<R: Euclid> Module<R> {
    /// Atom descriptors in component order.
    pub fn atom_descs(&self) -> Vec<AtomDesc> {
        let multi = self.ring().ncomps() > 1;
        let mut out = Vec::new();
        for (i, atoms) in self.parts().iter().enumerate() {
            for a in atoms {
                out.push(AtomDesc::of(a, multi.then_some(i)));
            }
        }
        out
    }
}
