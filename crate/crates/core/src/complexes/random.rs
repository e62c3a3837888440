//! Random complexes built from the constructors, for property tests and the
//! verify suite.

use super::{valid_code, ChainMap, Complex, FanSet};
use crate::arith::linalg::Mat;
use crate::arith::{Euclid, Frac};
use crate::ringmod::random::random_nonunit;
use crate::ringmod::Atom;
use crate::topology::{Cofin, Pointed};
use num_traits::{One, Zero};
use rand::Rng;
use std::collections::BTreeMap;

/// Generated complexes are kept below this many atoms.
pub const ATOM_CAP: usize = 24;

fn size<R: Euclid>(x: &Complex<R>) -> usize {
    x.atoms().count()
}

/// A random atom in normal form.
pub fn atom<R: Euclid, G: Rng + ?Sized>(rng: &mut G) -> Atom<R> {
    loop {
        if let Some(a) = crate::ringmod::random::atom(rng).normalize() {
            return a;
        }
    }
}

/// A small prime among the first few.
pub fn small_prime<R: Euclid, G: Rng + ?Sized>(rng: &mut G) -> R {
    R::random_prime(rng, 4)
}

/// A set in the Thomason descriptor family.
pub fn fan_set<R: Euclid, G: Rng + ?Sized>(rng: &mut G) -> FanSet<R> {
    let ps = |rng: &mut G| -> Vec<R> { (0..rng.gen_range(1..=2)).map(|_| small_prime(rng)).collect() };
    match rng.gen_range(0..10) {
        0 => Pointed::empty(),
        1 => Pointed::whole(),
        2 => Pointed::all_closed(),
        3 | 4 => {
            let v = ps(rng);
            Pointed::closed_points(Cofin::cofinite(v))
        }
        _ => {
            let v = ps(rng);
            Pointed::closed_points(Cofin::finite(v))
        }
    }
}

/// A code that is valid from `s` to `t`, often nonzero.
pub fn code<R: Euclid, G: Rng + ?Sized>(rng: &mut G, s: &Atom<R>, t: &Atom<R>) -> Frac<R> {
    for _ in 0..6 {
        let num = match rng.gen_range(0..4) {
            0 => R::one(),
            1 => -R::one(),
            _ => random_nonunit(rng, 0.0),
        };
        let den = match (t, rng.gen_range(0..3)) {
            (Atom::Loc(p) | Atom::LocModR(p), 0) => p.first_in(R::primes().take(6)).unwrap_or_else(R::one),
            (Atom::Cyclic(_) | Atom::LocModR(_), 1) => match s {
                Atom::Cyclic(d) => d.clone(),
                _ => R::one(),
            },
            _ => R::one(),
        };
        let c = Frac::new(num, den);
        if valid_code(s, t, &c) {
            return c;
        }
    }
    Frac::zero()
}

/// One or two atoms in each of two adjacent degrees with random codes.
pub fn two_term<R: Euclid, G: Rng + ?Sized>(rng: &mut G) -> Complex<R> {
    let src: Vec<Atom<R>> = (0..rng.gen_range(1..=2)).map(|_| atom(rng)).collect();
    let tgt: Vec<Atom<R>> = (0..rng.gen_range(1..=2)).map(|_| atom(rng)).collect();
    let a = tgt.iter().map(|t| src.iter().map(|s| code(rng, s, t)).collect()).collect();
    let d = Mat { rows: tgt.len(), cols: src.len(), a };
    Complex::new(0, vec![tgt, src], vec![d]).expect("valid codes")
}

/// A bounded complex of finite free modules: a Koszul complex or a random
/// integer matrix, possibly shifted.
pub fn perfect<R: Euclid, G: Rng + ?Sized>(rng: &mut G) -> Complex<R> {
    let x = match rng.gen_range(0..3) {
        0 => {
            let gens: Vec<R> = (0..rng.gen_range(1..=2)).map(|_| random_nonunit(rng, 0.1)).collect();
            Complex::unit().koszul_ideal(&gens)
        }
        1 => Complex::unit(),
        _ => {
            let (r, c) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
            let a = (0..r).map(|_| (0..c).map(|_| Frac::int(R::random(rng, 6))).collect()).collect();
            let d = Mat { rows: r, cols: c, a };
            Complex::new(0, vec![vec![Atom::Free; r], vec![Atom::Free; c]], vec![d]).expect("free codes")
        }
    };
    x.shift(rng.gen_range(-1..=1))
}

/// A degree-zero map between sums of atoms, with random codes.
pub fn map<R: Euclid, G: Rng + ?Sized>(rng: &mut G) -> ChainMap<R> {
    let src: Vec<Atom<R>> = (0..rng.gen_range(1..=2)).map(|_| atom(rng)).collect();
    let tgt: Vec<Atom<R>> = (0..rng.gen_range(1..=2)).map(|_| atom(rng)).collect();
    let a = tgt.iter().map(|t| src.iter().map(|s| code(rng, s, t)).collect()).collect();
    let m = Mat { rows: tgt.len(), cols: src.len(), a };
    let s = Complex::new(0, vec![src], vec![]).expect("atoms");
    let t = Complex::new(0, vec![tgt], vec![]).expect("atoms");
    ChainMap::new(s, t, BTreeMap::from([(0, m)])).expect("degree zero maps commute")
}

pub fn leaf<R: Euclid, G: Rng + ?Sized>(rng: &mut G) -> Complex<R> {
    match rng.gen_range(0..9) {
        0..=2 => two_term(rng),
        3 | 4 => Complex::atom(atom(rng), 0),
        5 => map(rng).cone(),
        6 => {
            let gens: Vec<R> = (0..rng.gen_range(1..=2)).map(|_| random_nonunit(rng, 0.1)).collect();
            Complex::stable_koszul(&gens, crate::arith::DEFAULT_FACTOR_BOUND).expect("small generators")
        }
        7 => {
            let y = fan_set(rng);
            if rng.gen_bool(0.5) { Complex::e(&y) } else { Complex::f(&y) }.expect("descriptor family")
        }
        _ => Complex::unit(),
    }
}

/// A random complex from the constructors, with at most `ATOM_CAP` atoms.
pub fn complex<R: Euclid, G: Rng + ?Sized>(rng: &mut G) -> Complex<R> {
    loop {
        let x = build(rng, 2);
        if size(&x) <= ATOM_CAP {
            return x;
        }
    }
}

fn build<R: Euclid, G: Rng + ?Sized>(rng: &mut G, depth: u32) -> Complex<R> {
    if depth == 0 {
        return leaf(rng);
    }
    let x = match rng.gen_range(0..8) {
        0..=2 => leaf(rng),
        3 => build(rng, depth - 1).sum(&build(rng, depth - 1)),
        4 => build(rng, depth - 1).tensor(&leaf(rng)),
        5 => build(rng, depth - 1).koszul(&random_nonunit(rng, 0.1)),
        6 => {
            let y = fan_set(rng);
            let k = if rng.gen_bool(0.5) { Complex::e(&y) } else { Complex::f(&y) }.expect("descriptor family");
            build(rng, depth - 1).tensor(&k)
        }
        _ => build(rng, depth - 1).shift(rng.gen_range(-1..=1)),
    };
    if rng.gen_bool(0.2) {
        x.shift(rng.gen_range(-1..=1))
    } else {
        x
    }
}

/// A complex that is acyclic by construction.
pub fn acyclic<R: Euclid, G: Rng + ?Sized>(rng: &mut G) -> Complex<R> {
    let x: Complex<R> = leaf(rng);
    match rng.gen_range(0..4) {
        0 => x.koszul(&R::one()),
        1 => ChainMap::scalar(&x, &Frac::one()).cone(),
        2 => {
            let y = fan_set(rng);
            Complex::e(&y).expect("family").tensor(&Complex::f(&y).expect("family")).tensor(&x)
        }
        _ => Complex::zero(),
    }
}
