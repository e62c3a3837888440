//! Bounded chain complexes of elementary modules over a Euclidean domain:
//! shifts, cones, derived tensor products, Koszul objects and the smashing
//! idempotents `e_Y`, `f_Y`, `g_W`.
//!
//! Differentials are matrices of multiplication codes: the entry in row `b`,
//! column `a` of `d_n` is an element `c` of the fraction field acting as
//! `x -> c x` from atom `a` of `X_n` to atom `b` of `X_{n-1}`. Which codes are
//! allowed for a pair of atoms is fixed by [`valid_code`].

pub mod checks;
mod desc;
mod local;
pub mod random;
#[cfg(test)]
mod tests;

pub use desc::{ComplexDesc, Construct, SetDesc};
pub use local::{homology, homology_at, is_zero, is_zero_at, rank_oracle_is_zero_at, relevant_primes, LocalHomology, Place};

use crate::arith::linalg::{mat_mul, Mat};
use crate::arith::{Euclid, Frac, FracField};
use crate::error::{Error, Result};
use crate::ringmod::{in_localization, Atom};
use crate::topology::{Cofin, Pointed};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A set of primes of the domain in the Thomason descriptor family: any
/// finite or cofinite set of closed points, or the whole space.
pub type FanSet<R> = Pointed<R>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Complex<R: Euclid> {
    lo: i64,
    terms: Vec<Vec<Atom<R>>>,
    /// `diffs[i]` is `d` from degree `lo + i + 1` to `lo + i`.
    diffs: Vec<Mat<Frac<R>>>,
}

/// Is multiplication by `c` a well-defined map `src -> tgt`?
pub fn valid_code<R: Euclid>(src: &Atom<R>, tgt: &Atom<R>, c: &Frac<R>) -> bool {
    use Atom::*;
    if c.is_zero() {
        return true;
    }
    match (src, tgt) {
        (Free | Loc(_), Free | Loc(_)) => {
            src.inverted().is_subset(&tgt.inverted()) && in_localization(c, &tgt.inverted())
        }
        (Free, Cyclic(_)) => c.is_integral(),
        (Free | Loc(_), LocModR(q)) => src.inverted().is_subset(q) && in_localization(c, q),
        (Cyclic(d), Cyclic(e)) => c.is_integral() && e.divides(&(c.num().clone() * d.clone())),
        (Cyclic(d), LocModR(q)) => (c.clone() * Frac::int(d.clone())).is_integral() && in_localization(c, q),
        (LocModR(p), LocModR(q)) => c.is_integral() && p.is_subset(q),
        _ => false,
    }
}

/// Is multiplication by `s` the zero map `src -> tgt`?
pub fn acts_as_zero<R: Euclid>(src: &Atom<R>, tgt: &Atom<R>, s: &Frac<R>) -> bool {
    if s.is_zero() {
        return true;
    }
    let bounded = matches!(src, Atom::Free | Atom::Cyclic(_));
    match tgt {
        Atom::Free | Atom::Loc(_) => false,
        Atom::Cyclic(d) => bounded && s.is_integral() && d.divides(s.num()),
        Atom::LocModR(_) => bounded && s.is_integral(),
    }
}

fn ff<R: Euclid>() -> FracField<R> {
    FracField::default()
}

fn neg<R: Euclid>(m: &Mat<Frac<R>>) -> Mat<Frac<R>> {
    m.map(|c| -c.clone())
}

/// Assembles a block matrix from blocks placed at (row block, column block).
fn blocks<R: Euclid>(rows: &[usize], cols: &[usize], parts: Vec<(usize, usize, Mat<Frac<R>>)>) -> Mat<Frac<R>> {
    let ro: Vec<usize> = rows.iter().scan(0, |s, &r| { let o = *s; *s += r; Some(o) }).collect();
    let co: Vec<usize> = cols.iter().scan(0, |s, &c| { let o = *s; *s += c; Some(o) }).collect();
    let mut m = Mat::zeros(rows.iter().sum(), cols.iter().sum());
    for (i, j, b) in parts {
        assert_eq!((b.rows, b.cols), (rows[i], cols[j]), "block shape");
        for r in 0..b.rows {
            for c in 0..b.cols {
                m.a[ro[i] + r][co[j] + c] = b.a[r][c].clone();
            }
        }
    }
    m
}

impl<R: Euclid> Complex<R> {
    /// Checks shapes, codes and `d∘d = 0` before building.
    pub fn new(lo: i64, terms: Vec<Vec<Atom<R>>>, diffs: Vec<Mat<Frac<R>>>) -> Result<Self> {
        for a in terms.iter().flatten() {
            if a.clone().normalize().as_ref() != Some(a) {
                return Err(Error::input(format!("atom {a} is not in normal form")));
            }
        }
        if diffs.len() + 1 != terms.len().max(1) {
            return Err(Error::input("need one differential between each pair of adjacent degrees"));
        }
        let x = Complex { lo, terms, diffs };
        x.check()?;
        Ok(x.trim())
    }

    /// Shapes, code table and `d∘d = 0`, atom by atom.
    pub fn check(&self) -> Result<()> {
        for n in self.lo + 1..=self.hi() {
            let d = &self.diffs[(n - self.lo - 1) as usize];
            let (src, tgt) = (self.term(n), self.term(n - 1));
            if (d.rows, d.cols) != (tgt.len(), src.len()) {
                return Err(Error::input(format!("d_{n} should be {}x{}", tgt.len(), src.len())));
            }
            for (b, t) in tgt.iter().enumerate() {
                for (a, s) in src.iter().enumerate() {
                    if !valid_code(s, t, &d.a[b][a]) {
                        return Err(Error::input(format!(
                            "d_{n}: multiplication by {} is not a map {s} -> {t}",
                            d.a[b][a]
                        )));
                    }
                }
            }
        }
        for n in self.lo + 2..=self.hi() {
            let dd = mat_mul(&ff(), &self.diff(n - 1), &self.diff(n));
            for (b, t) in self.term(n - 2).iter().enumerate() {
                for (a, s) in self.term(n).iter().enumerate() {
                    if !acts_as_zero(s, t, &dd.a[b][a]) {
                        return Err(Error::input(format!("d_{} d_{n} is nonzero from {s} to {t}", n - 1)));
                    }
                }
            }
        }
        Ok(())
    }

    /// Builds from a degree range and a differential for each degree.
    fn build(lo: i64, hi: i64, term: impl Fn(i64) -> Vec<Atom<R>>, diff: impl Fn(i64) -> Mat<Frac<R>>) -> Self {
        if hi < lo {
            return Self::zero();
        }
        let terms: Vec<_> = (lo..=hi).map(term).collect();
        let diffs = (lo + 1..=hi).map(diff).collect();
        let x = Complex { lo, terms, diffs };
        debug_assert!(x.check().is_ok(), "internal construction: {:?}", x.check());
        x.trim()
    }

    /// Drops zero terms at both ends.
    fn trim(mut self) -> Self {
        while self.terms.last().is_some_and(|t| t.is_empty()) {
            self.terms.pop();
            self.diffs.pop();
        }
        let k = self.terms.iter().take_while(|t| t.is_empty()).count();
        if k == self.terms.len() {
            return Self::zero();
        }
        self.terms.drain(..k);
        self.diffs.drain(..k);
        self.lo += k as i64;
        self
    }

    pub fn zero() -> Self {
        Complex { lo: 0, terms: vec![], diffs: vec![] }
    }

    /// A single atom in degree `n`.
    pub fn atom(a: Atom<R>, n: i64) -> Self {
        match a.normalize() {
            Some(a) => Complex { lo: n, terms: vec![vec![a]], diffs: vec![] },
            None => Self::zero(),
        }
    }

    /// `R` in degree zero.
    pub fn unit() -> Self {
        Self::atom(Atom::Free, 0)
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    /// Whether there are no terms at all (which is stronger than acyclic).
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(&self, n: i64) -> &[Atom<R>] {
        if n < self.lo || n > self.hi() {
            return &[];
        }
        &self.terms[(n - self.lo) as usize]
    }

    /// `d_n : X_n -> X_{n-1}`.
    pub fn diff(&self, n: i64) -> Mat<Frac<R>> {
        if n <= self.lo || n > self.hi() {
            return Mat::zeros(self.term(n - 1).len(), self.term(n).len());
        }
        self.diffs[(n - self.lo - 1) as usize].clone()
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom<R>> {
        self.terms.iter().flatten()
    }

    pub fn is_flat(&self) -> bool {
        self.atoms().all(|a| !a.is_torsion())
    }

    /// Bounded complex of finitely generated free modules.
    pub fn is_perfect(&self) -> bool {
        self.atoms().all(|a| *a == Atom::Free)
    }

    /// `Σ^k X`: `(Σ^k X)_n = X_{n-k}` with the differential signed by `(-1)^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_empty() {
            return Self::zero();
        }
        let flip = k.rem_euclid(2) == 1;
        Complex {
            lo: self.lo + k,
            terms: self.terms.clone(),
            diffs: self.diffs.iter().map(|d| if flip { neg(d) } else { d.clone() }).collect(),
        }
    }

    pub fn sum(&self, o: &Self) -> Self {
        if self.is_empty() {
            return o.clone();
        }
        if o.is_empty() {
            return self.clone();
        }
        let lo = self.lo.min(o.lo);
        let hi = self.hi().max(o.hi());
        Self::build(
            lo,
            hi,
            |n| [self.term(n), o.term(n)].concat(),
            |n| {
                let rows = [self.term(n - 1).len(), o.term(n - 1).len()];
                let cols = [self.term(n).len(), o.term(n).len()];
                blocks(&rows, &cols, vec![(0, 0, self.diff(n)), (1, 1, o.diff(n))])
            },
        )
    }

    /// Total complex of flat resolutions: each torsion atom `A` is replaced
    /// by `F1 -> F0` (`R -d-> R` for `R/(d)`, `R -> R_P` for `R_P/R`), with a
    /// correction term making the result a complex. Quasi-isomorphic to `self`.
    pub fn resolve(&self) -> Self {
        if self.is_flat() {
            return self.clone();
        }
        let f0 = |a: &Atom<R>| match a {
            Atom::Free | Atom::Cyclic(_) => Atom::Free,
            Atom::Loc(p) | Atom::LocModR(p) => Atom::Loc(p.clone()),
        };
        let delta = |a: &Atom<R>| match a {
            Atom::Cyclic(d) => Frac::int(d.clone()),
            _ => Frac::one(),
        };
        let tors = |n: i64| -> Vec<usize> { (0..self.term(n).len()).filter(|&i| self.term(n)[i].is_torsion()).collect() };
        // f1 lift of the code c between torsion atoms.
        let lift = |s: &Atom<R>, t: &Atom<R>, c: &Frac<R>| -> Frac<R> {
            match (s, t) {
                (Atom::Cyclic(d), Atom::Cyclic(e)) => c.clone() * Frac::new(d.clone(), e.clone()),
                (Atom::Cyclic(d), Atom::LocModR(_)) => c.clone() * Frac::int(d.clone()),
                (Atom::LocModR(_), Atom::LocModR(_)) => c.clone(),
                _ => {
                    debug_assert!(c.is_zero());
                    Frac::zero()
                }
            }
        };
        Self::build(
            self.lo,
            self.hi() + 1,
            |n| {
                let mut t: Vec<Atom<R>> = self.term(n).iter().map(f0).collect();
                t.extend(tors(n - 1).iter().map(|_| Atom::Free));
                t
            },
            |n| {
                let (x0, x1, x2) = (self.term(n), self.term(n - 1), self.term(n - 2));
                let (t1, t2) = (tors(n - 1), tors(n - 2));
                let dn = self.diff(n);
                let dn1 = self.diff(n - 1);
                let dd = mat_mul(&ff(), &dn1, &dn);
                let del = Mat::from_fn(x1.len(), t1.len(), |b, k| if t1[k] == b { delta(&x1[b]) } else { Frac::zero() });
                let h = Mat::from_fn(t2.len(), x0.len(), |k, a| -(dd.a[t2[k]][a].clone() / delta(&x2[t2[k]])));
                let f1 = Mat::from_fn(t2.len(), t1.len(), |k, l| {
                    -lift(&x1[t1[l]], &x2[t2[k]], &dn1.a[t2[k]][t1[l]])
                });
                blocks(
                    &[x1.len(), t2.len()],
                    &[x0.len(), t1.len()],
                    vec![(0, 0, dn), (0, 1, del), (1, 0, h), (1, 1, f1)],
                )
            },
        )
    }

    /// Derived tensor product, computed on flat resolutions. The result is flat.
    pub fn tensor(&self, o: &Self) -> Self {
        let (x, y) = (self.resolve(), o.resolve());
        if x.is_empty() || y.is_empty() {
            return Self::zero();
        }
        // For each degree n, the blocks (i, n - i) in increasing i.
        let layout = |n: i64| -> Vec<(i64, i64)> {
            (x.lo..=x.hi()).map(|i| (i, n - i)).filter(|&(_, j)| j >= y.lo && j <= y.hi()).collect()
        };
        let pair = |a: &Atom<R>, b: &Atom<R>| {
            Atom::Loc(a.inverted().union(&b.inverted())).normalize().expect("flat atoms are nonzero")
        };
        Self::build(
            x.lo + y.lo,
            x.hi() + y.hi(),
            |n| {
                let mut t = Vec::new();
                for (i, j) in layout(n) {
                    for a in x.term(i) {
                        for b in y.term(j) {
                            t.push(pair(a, b));
                        }
                    }
                }
                t
            },
            |n| {
                let (src, tgt) = (layout(n), layout(n - 1));
                let offsets = |l: &[(i64, i64)]| -> BTreeMap<(i64, i64), usize> {
                    let mut o = 0;
                    l.iter()
                        .map(|&(i, j)| {
                            let start = o;
                            o += x.term(i).len() * y.term(j).len();
                            ((i, j), start)
                        })
                        .collect()
                };
                let (so, to) = (offsets(&src), offsets(&tgt));
                let rows: usize = tgt.iter().map(|&(i, j)| x.term(i).len() * y.term(j).len()).sum();
                let cols: usize = src.iter().map(|&(i, j)| x.term(i).len() * y.term(j).len()).sum();
                let mut m = Mat::zeros(rows, cols);
                for &(i, j) in &src {
                    let (nx, ny) = (x.term(i).len(), y.term(j).len());
                    let s0 = so[&(i, j)];
                    if let Some(&t0) = to.get(&(i - 1, j)) {
                        let dx = x.diff(i);
                        for a in 0..nx {
                            for a2 in 0..x.term(i - 1).len() {
                                for b in 0..ny {
                                    m.a[t0 + a2 * ny + b][s0 + a * ny + b] = dx.a[a2][a].clone();
                                }
                            }
                        }
                    }
                    if let Some(&t0) = to.get(&(i, j - 1)) {
                        let dy = y.diff(j);
                        let ny2 = y.term(j - 1).len();
                        let sign = if i.rem_euclid(2) == 1 { -Frac::one() } else { Frac::one() };
                        for a in 0..nx {
                            for b in 0..ny {
                                for b2 in 0..ny2 {
                                    m.a[t0 + a * ny2 + b2][s0 + a * ny + b] = sign.clone() * dy.a[b2][b].clone();
                                }
                            }
                        }
                    }
                }
                m
            },
        )
    }

    /// `cone(r: X -> X)`.
    pub fn koszul(&self, r: &R) -> Self {
        ChainMap::scalar(self, &Frac::int(r.clone())).cone()
    }

    /// Iterated Koszul object on the generators.
    pub fn koszul_ideal(&self, gens: &[R]) -> Self {
        gens.iter().fold(self.clone(), |x, r| x.koszul(r))
    }

    /// `fib(R -> R_P)`: `R` in degree 0 and `R_P` in degree -1.
    pub fn fib_to_loc(p: &Cofin<R>) -> Self {
        if p.is_empty() {
            return Self::zero();
        }
        Complex {
            lo: -1,
            terms: vec![vec![Atom::Loc(p.clone())], vec![Atom::Free]],
            diffs: vec![Mat::from_rows(1, vec![vec![-Frac::one()]])],
        }
    }

    /// Stable Koszul complex `⊗ fib(R -> R[1/a_i])`. A zero generator
    /// contributes the unit, so the zero ideal gives the unit.
    pub fn stable_koszul(gens: &[R], bound: u64) -> Result<Self> {
        let mut out = Self::unit();
        for a in gens {
            if a.is_zero() {
                continue;
            }
            let ps = Cofin::finite(a.prime_divisors(bound)?);
            out = out.tensor(&Self::fib_to_loc(&ps));
        }
        Ok(out)
    }

    /// The pair `(e_Y, f_Y)` with `e_Y -> R -> f_Y` exact.
    pub fn idempotents(y: &FanSet<R>) -> Result<(Self, Self)> {
        if !y.is_thomason() {
            return Err(Error::input("only sets of closed points and the whole space are Thomason"));
        }
        if y.generic {
            return Ok((Self::unit(), Self::zero()));
        }
        Ok((Self::fib_to_loc(&y.closed), Self::atom(Atom::Loc(y.closed.clone()), 0)))
    }

    pub fn e(y: &FanSet<R>) -> Result<Self> {
        Ok(Self::idempotents(y)?.0)
    }

    pub fn f(y: &FanSet<R>) -> Result<Self> {
        Ok(Self::idempotents(y)?.1)
    }

    /// `g_W = e_U ⊗ f_V` for `W = U ∩ V^c`.
    pub fn g(u: &FanSet<R>, v: &FanSet<R>) -> Result<Self> {
        Ok(Self::e(u)?.tensor(&Self::f(v)?))
    }

    /// `g` for a single point: `e_{{p}}` at a closed point, the fraction
    /// field at the generic point.
    pub fn g_point(p: &R) -> Self {
        if p.is_zero() {
            Self::atom(Atom::Loc(Cofin::all()), 0)
        } else {
            Self::fib_to_loc(&Cofin::singleton(p.clone()))
        }
    }

    /// Termwise localization `S^{-1} X`, on the flat resolution.
    pub fn localize(&self, s: &MultSet<R>, bound: u64) -> Result<Self> {
        let q = match s {
            MultSet::Outside(p) if p.is_zero() => Cofin::all(),
            MultSet::Outside(p) => Cofin::cofinite([p.normalized()]),
            MultSet::Powers(u) if u.is_zero() => return Ok(Self::zero()),
            MultSet::Powers(u) => Cofin::finite(u.prime_divisors(bound)?),
        };
        Ok(self.tensor(&Self::atom(Atom::Loc(q), 0)))
    }

    /// `Hom(X, R)` for a perfect complex, placed in degrees `-hi..=-lo`.
    pub fn dual(&self) -> Self {
        assert!(self.is_perfect(), "dual of a non-perfect complex");
        if self.is_empty() {
            return Self::zero();
        }
        Self::build(-self.hi(), -self.lo, |n| self.term(-n).to_vec(), |n| self.diff(-n + 1).transpose())
    }
}

/// A multiplicative set: the complement of a prime (zero for the generic
/// point), or the powers of an element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultSet<R> {
    Outside(R),
    Powers(R),
}

/// A degreewise map of complexes given by code matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap<R: Euclid> {
    pub source: Complex<R>,
    pub target: Complex<R>,
    mats: BTreeMap<i64, Mat<Frac<R>>>,
}

impl<R: Euclid> ChainMap<R> {
    pub fn new(source: Complex<R>, target: Complex<R>, mats: BTreeMap<i64, Mat<Frac<R>>>) -> Result<Self> {
        let f = ChainMap { source, target, mats };
        for (&n, m) in &f.mats {
            let (s, t) = (f.source.term(n), f.target.term(n));
            if (m.rows, m.cols) != (t.len(), s.len()) {
                return Err(Error::input(format!("map in degree {n} should be {}x{}", t.len(), s.len())));
            }
            for (b, tb) in t.iter().enumerate() {
                for (a, sa) in s.iter().enumerate() {
                    if !valid_code(sa, tb, &m.a[b][a]) {
                        return Err(Error::input(format!("multiplication by {} is not a map {sa} -> {tb}", m.a[b][a])));
                    }
                }
            }
        }
        let lo = f.source.lo().min(f.target.lo());
        let hi = f.source.hi().max(f.target.hi());
        for n in lo..=hi + 1 {
            let l = mat_mul(&ff(), &f.target.diff(n), &f.at(n));
            let r = mat_mul(&ff(), &f.at(n - 1), &f.source.diff(n));
            for (b, tb) in f.target.term(n - 1).iter().enumerate() {
                for (a, sa) in f.source.term(n).iter().enumerate() {
                    if !acts_as_zero(sa, tb, &(l.a[b][a].clone() - r.a[b][a].clone())) {
                        return Err(Error::input(format!("map does not commute with d in degree {n}")));
                    }
                }
            }
        }
        Ok(f)
    }

    /// Multiplication by `r` on every atom.
    pub fn scalar(x: &Complex<R>, r: &Frac<R>) -> Self {
        let mats = (x.lo()..=x.hi())
            .map(|n| {
                let k = x.term(n).len();
                (n, Mat::from_fn(k, k, |i, j| if i == j { r.clone() } else { Frac::zero() }))
            })
            .collect();
        ChainMap { source: x.clone(), target: x.clone(), mats }
    }

    /// `f_n`, zero where not given.
    pub fn at(&self, n: i64) -> Mat<Frac<R>> {
        self.mats
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Mat::zeros(self.target.term(n).len(), self.source.term(n).len()))
    }

    /// `cone_n = A_{n-1} ⊕ B_n` with `d(a, b) = (-d a, f a + d b)`.
    pub fn cone(&self) -> Complex<R> {
        let (a, b) = (&self.source, &self.target);
        if a.is_empty() {
            return b.clone();
        }
        if b.is_empty() {
            return a.shift(1);
        }
        Complex::build(
            (a.lo() + 1).min(b.lo()),
            (a.hi() + 1).max(b.hi()),
            |n| [a.term(n - 1), b.term(n)].concat(),
            |n| {
                let rows = [a.term(n - 2).len(), b.term(n - 1).len()];
                let cols = [a.term(n - 1).len(), b.term(n).len()];
                blocks(&rows, &cols, vec![(0, 0, neg(&a.diff(n - 1))), (1, 0, self.at(n - 1)), (1, 1, b.diff(n))])
            },
        )
    }

    pub fn fib(&self) -> Complex<R> {
        self.cone().shift(-1)
    }
}

/// The finite localization `F = f_Y ⊗ -` with its fully faithful right
/// adjoint `U`, which forgets that an object is local.
pub struct FiniteLocalization<R: Euclid> {
    pub y: FanSet<R>,
    f: Complex<R>,
}

impl<R: Euclid> FiniteLocalization<R> {
    pub fn new(y: FanSet<R>) -> Result<Self> {
        let f = Complex::f(&y)?;
        Ok(FiniteLocalization { y, f })
    }

    pub fn apply(&self, x: &Complex<R>) -> Complex<R> {
        self.f.tensor(x)
    }

    pub fn forget(&self, d: &Complex<R>) -> Complex<R> {
        d.clone()
    }
}

impl<R: Euclid> fmt::Display for Complex<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for n in (self.lo..=self.hi()).rev() {
            if !first {
                let d = self.diff(n + 1);
                let rows: Vec<String> = d
                    .a
                    .iter()
                    .map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "))
                    .collect();
                write!(f, " --[{}]--> ", rows.join("; "))?;
            }
            first = false;
            let t: Vec<String> = self.term(n).iter().map(|a| a.to_string()).collect();
            write!(f, "({})_{n}", if t.is_empty() { "0".to_string() } else { t.join(" + ") })?;
        }
        Ok(())
    }
}
