//! Homology of a complex after localizing at a prime, and vanishing.
//!
//! Over the local ring `V` at a prime every flat atom becomes `V` or the
//! fraction field `K`, and homology is a sum of copies of `K`, `V`, `K/V` and
//! `V/p^e`. The multiplicities are read off from ranks over `K` and from
//! Smith forms over `V`: with `Z_n` the cycles (a sum of a `K`-space and a
//! lattice of rank `β_n`) and `M` the matrix of the boundaries of the
//! `V`-atoms of degree `n+1` in a basis of that lattice,
//!
//! * `V`-rank of `H_n` is `β_n - rank M`,
//! * torsion exponents are the positive valuations of the Smith diagonal of `M`,
//! * copies of `K/V` number `#V-atoms in degree n+1 - rank M - β_{n+1}`,
//! * copies of `K` make up the rest of `dim_K H_n(X ⊗ K)`.
//!
//! At a closed prime outside the finite set of primes returned by
//! [`relevant_primes`], the computation takes the same path as at a
//! "generic closed prime" where every nonzero element is a unit; running it
//! that way records every element whose valuation was consulted.

use super::Complex;
use crate::arith::linalg::{kernel, local_smith, rank, Mat};
use crate::arith::{pow, Euclid, Frac, FracField, ResidueField};
use crate::error::{Error, Result};
use crate::ringmod::{Atom, Prime};
use num_traits::Zero;
use serde::Serialize;
use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Where to localize.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Place<R> {
    /// The zero ideal: tensor with the fraction field.
    Generic,
    /// A closed point, given by a normalized prime element.
    Closed(R),
    /// Any closed point outside the relevant primes of the complex.
    Default,
}

impl<R: Euclid> Place<R> {
    pub fn of(q: &Prime<R>) -> Self {
        if q.p.is_zero() {
            Place::Generic
        } else {
            Place::Closed(q.p.clone())
        }
    }
}

/// `K^fraction ⊕ V^local ⊕ (K/V)^divisible ⊕ ⊕ V/p^e`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct LocalHomology {
    pub fraction: usize,
    pub local: usize,
    pub divisible: usize,
    pub torsion: Vec<u32>,
}

impl LocalHomology {
    pub fn is_zero(&self) -> bool {
        self.fraction == 0 && self.local == 0 && self.divisible == 0 && self.torsion.is_empty()
    }

    /// Tensor with the fraction field.
    pub fn rationalize(&self) -> Self {
        LocalHomology { fraction: self.fraction + self.local, ..Default::default() }
    }

    /// Has a nonzero element killed by the maximal ideal.
    pub fn has_torsion(&self) -> bool {
        self.divisible > 0 || !self.torsion.is_empty()
    }

    pub fn is_torsion_free(&self) -> bool {
        !self.has_torsion()
    }
}

impl fmt::Display for LocalHomology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let pw = |s: &str, k: usize| if k == 1 { s.to_string() } else { format!("{s}^{k}") };
        if self.fraction > 0 {
            parts.push(pw("K", self.fraction));
        }
        if self.local > 0 {
            parts.push(pw("V", self.local));
        }
        if self.divisible > 0 {
            parts.push(pw("(K/V)", self.divisible));
        }
        for e in &self.torsion {
            parts.push(format!("V/p^{e}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

struct Local<'a, R: Euclid> {
    place: &'a Place<R>,
    seen: RefCell<Vec<Frac<R>>>,
}

struct Cycles<R: Euclid> {
    /// Positions of the atoms that localize to `V`.
    vidx: Vec<usize>,
    dim: usize,
    beta: usize,
    /// Columns `0..beta` of `x · v` are the lattice coordinates of `x`.
    v: Mat<Frac<R>>,
}

impl<R: Euclid> Local<'_, R> {
    fn is_field(&self, a: &Atom<R>) -> bool {
        match self.place {
            Place::Generic => true,
            Place::Closed(p) => a.inverted().contains(p),
            Place::Default => !a.inverted().is_finite(),
        }
    }

    fn val(&self, x: &Frac<R>) -> i64 {
        match self.place {
            Place::Closed(p) => x.valuation(p).expect("valuation of zero"),
            _ => {
                self.seen.borrow_mut().push(x.clone());
                0
            }
        }
    }

    fn cycles(&self, t: &Prepared<R>, n: i64) -> Cycles<R> {
        let atoms = t.x.term(n);
        let vidx: Vec<usize> = (0..atoms.len()).filter(|&i| !self.is_field(&atoms[i])).collect();
        let ker = &t.kernels[&n];
        let rows: Vec<Vec<Frac<R>>> = ker
            .iter()
            .map(|z| {
                let row: Vec<Frac<R>> = vidx.iter().map(|&i| z[i].clone()).collect();
                let m = row.iter().filter(|c| !c.is_zero()).map(|c| self.val(c)).min().unwrap_or(0);
                match self.place {
                    Place::Closed(p) if m < 0 => {
                        let s = Frac::int(pow(p, (-m) as u32));
                        row.into_iter().map(|c| c * s.clone()).collect()
                    }
                    _ => row,
                }
            })
            .collect();
        let proj = Mat::from_rows(vidx.len(), rows);
        let sm = local_smith(&proj, &|x| self.val(x));
        Cycles { dim: ker.len(), beta: sm.diag.len(), v: sm.v, vidx }
    }

    fn run(&self, p: &Prepared<R>) -> Result<BTreeMap<i64, LocalHomology>> {
        let mut out = BTreeMap::new();
        let t = &p.x;
        if t.is_empty() {
            return Ok(out);
        }
        let cyc: BTreeMap<i64, Cycles<R>> = (t.lo()..=t.hi() + 1).map(|n| (n, self.cycles(p, n))).collect();
        for n in t.lo()..=t.hi() {
            let (z, z1) = (&cyc[&n], &cyc[&(n + 1)]);
            let kdim = z.dim - (t.term(n + 1).len() - z1.dim);
            let d = t.diff(n + 1);
            let cols: Vec<Vec<Frac<R>>> = z1
                .vidx
                .iter()
                .map(|&j| {
                    (0..z.beta)
                        .map(|k| {
                            z.vidx
                                .iter()
                                .enumerate()
                                .fold(Frac::zero(), |acc, (r, &i)| acc + d.a[i][j].clone() * z.v.a[r][k].clone())
                        })
                        .collect()
                })
                .collect();
            let m = Mat::from_fn(z.beta, cols.len(), |i, j| cols[j][i].clone());
            if let Place::Closed(_) = self.place {
                if m.a.iter().flatten().any(|c| !c.is_zero() && self.val(c) < 0) {
                    return Err(Error::invariant(format!("boundary outside the cycle lattice in degree {n}")));
                }
            }
            let sm = local_smith(&m, &|x| self.val(x));
            let k = sm.diag.len();
            let mut torsion: Vec<u32> = sm.diag.iter().map(|c| self.val(c) as u32).filter(|&e| e > 0).collect();
            torsion.sort();
            let local = z.beta - k;
            let divisible = (z1.vidx.len() - k)
                .checked_sub(z1.beta)
                .ok_or_else(|| Error::invariant(format!("negative divisible rank in degree {n}")))?;
            let fraction = kdim
                .checked_sub(local)
                .ok_or_else(|| Error::invariant(format!("negative fraction-field rank in degree {n}")))?;
            let h = LocalHomology { fraction, local, divisible, torsion };
            if !h.is_zero() {
                out.insert(n, h);
            }
        }
        Ok(out)
    }
}

/// A flat resolution with the kernels of its differentials over the
/// fraction field, shared by every place.
pub struct Prepared<R: Euclid> {
    x: Complex<R>,
    kernels: BTreeMap<i64, Vec<Vec<Frac<R>>>>,
}

impl<R: Euclid> Prepared<R> {
    pub fn new(x: &Complex<R>) -> Self {
        let x = x.resolve();
        let f = FracField::<R>::default();
        let kernels = if x.is_empty() {
            BTreeMap::new()
        } else {
            (x.lo()..=x.hi() + 1).map(|n| (n, kernel(&f, &x.diff(n)))).collect()
        };
        Prepared { x, kernels }
    }

    pub fn homology(&self, place: &Place<R>) -> Result<BTreeMap<i64, LocalHomology>> {
        Local { place, seen: RefCell::new(vec![]) }.run(self)
    }

    /// Homology at a default closed point and the relevant primes.
    pub fn default_and_relevant(&self, bound: u64) -> Result<(BTreeMap<i64, LocalHomology>, BTreeSet<R>)> {
        let t = &self.x;
        let mut out = BTreeSet::new();
        let mut elems: Vec<Frac<R>> = Vec::new();
        for a in t.atoms() {
            match a {
                Atom::Cyclic(d) => elems.push(Frac::int(d.clone())),
                Atom::Loc(p) | Atom::LocModR(p) => out.extend(p.listed().iter().cloned()),
                Atom::Free => {}
            }
        }
        if !t.is_empty() {
            for n in t.lo() + 1..=t.hi() {
                elems.extend(t.diff(n).a.into_iter().flatten().filter(|c| !c.is_zero()));
            }
        }
        let l = Local { place: &Place::Default, seen: RefCell::new(vec![]) };
        let h = l.run(self)?;
        elems.extend(l.seen.into_inner());
        let mut done = BTreeSet::new();
        for e in elems {
            for r in [e.num(), e.den()] {
                let r = r.normalized();
                if !r.is_unit() && done.insert(r.clone()) {
                    out.extend(r.prime_divisors(bound)?);
                }
            }
        }
        Ok((h, out))
    }

    pub fn is_zero(&self, bound: u64) -> Result<bool> {
        if self.x.is_empty() {
            return Ok(true);
        }
        if !self.homology(&Place::Generic)?.is_empty() {
            return Ok(false);
        }
        let (h, rel) = self.default_and_relevant(bound)?;
        if !h.is_empty() {
            return Ok(false);
        }
        for p in rel {
            if !self.homology(&Place::Closed(p))?.is_empty() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Nonzero homology of `X` localized at `place`, by degree.
pub fn homology<R: Euclid>(x: &Complex<R>, place: &Place<R>) -> Result<BTreeMap<i64, LocalHomology>> {
    Prepared::new(x).homology(place)
}

pub fn homology_at<R: Euclid>(x: &Complex<R>, q: &Prime<R>, n: i64) -> Result<LocalHomology> {
    Ok(homology(x, &Place::of(q))?.remove(&n).unwrap_or_default())
}

pub fn is_zero_at<R: Euclid>(x: &Complex<R>, q: &Prime<R>) -> Result<bool> {
    Ok(homology(x, &Place::of(q))?.is_empty())
}

/// Closed points where the localized complex may differ from its value at
/// a default closed point: primes named by atoms or code entries of the
/// flat resolution, and the primes of every element whose valuation the
/// default run consulted.
pub fn relevant_primes<R: Euclid>(x: &Complex<R>, bound: u64) -> Result<BTreeSet<R>> {
    Ok(Prepared::new(x).default_and_relevant(bound)?.1)
}

/// Acyclic at the generic point, at a default closed point and at every
/// relevant prime.
pub fn is_zero<R: Euclid>(x: &Complex<R>, bound: u64) -> Result<bool> {
    Prepared::new(x).is_zero(bound)
}

/// A second vanishing test at a closed prime, by ranks only: a bounded
/// complex of flat modules over `V` is acyclic iff it is acyclic after
/// tensoring with `K` and with the residue field.
pub fn rank_oracle_is_zero_at<R: Euclid>(x: &Complex<R>, p: &R) -> bool {
    let t = x.resolve();
    if t.is_empty() {
        return true;
    }
    let f = FracField::<R>::default();
    let k = ResidueField::new(p.clone());
    let vidx = |n: i64| -> Vec<usize> {
        (0..t.term(n).len()).filter(|&i| !t.term(n)[i].inverted().contains(p)).collect()
    };
    let (mut rk, mut rr) = (BTreeMap::new(), BTreeMap::new());
    for n in t.lo()..=t.hi() + 1 {
        let d = t.diff(n);
        rk.insert(n, rank(&f, &d));
        let (s, r) = (vidx(n), vidx(n - 1));
        let red = Mat::from_fn(r.len(), s.len(), |i, j| d.a[r[i]][s[j]].reduce(p).expect("entry in the local ring"));
        rr.insert(n, rank(&k, &red));
    }
    (t.lo()..=t.hi()).all(|n| {
        t.term(n).len() == rk[&n] + rk[&(n + 1)] && vidx(n).len() == rr[&n] + rr[&(n + 1)]
    })
}
