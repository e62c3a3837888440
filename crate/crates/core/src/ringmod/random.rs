//! Random rings and modules for property tests and the verify suite.

use super::{Atom, Module, Presented, Ring};
use crate::arith::{pow, Euclid};
use crate::topology::Cofin;
use rand::Rng;

/// Upper bound on the size of generated finite modules.
pub const FINITE_MODULE_CAP: usize = 4096;

fn random_modulus<R: Euclid, G: Rng + ?Sized>(rng: &mut G) -> R {
    let k = rng.gen_range(1..=2);
    (0..k).fold(R::one(), |acc, _| acc * pow(&R::random_prime(rng, 3), rng.gen_range(1..=2)))
}

/// A quotient or a product of up to two quotients with at most 64 elements.
pub fn finite_ring<R: Euclid, G: Rng + ?Sized>(rng: &mut G) -> Ring<R> {
    loop {
        let n = if rng.gen_bool(0.3) { 2 } else { 1 };
        let r = Ring::product((0..n).map(|_| random_modulus(rng)).collect()).expect("nonunit moduli");
        if r.size(64).is_some() {
            return r;
        }
    }
}

/// A random nonzero nonunit, or zero with probability `zero`.
pub fn random_nonunit<R: Euclid, G: Rng + ?Sized>(rng: &mut G, zero: f64) -> R {
    if rng.gen_bool(zero) {
        return R::zero();
    }
    let k = rng.gen_range(1..=3);
    (0..k).fold(R::one(), |acc, _| acc * R::random_prime(rng, 4))
}

pub fn prime_set<R: Euclid, G: Rng + ?Sized>(rng: &mut G) -> Cofin<R> {
    let k = rng.gen_range(0..=2);
    let ps: Vec<R> = (0..k).map(|_| R::random_prime(rng, 5)).collect();
    if rng.gen_bool(0.5) {
        Cofin::finite(ps)
    } else {
        Cofin::cofinite(ps)
    }
}

pub fn atom<R: Euclid, G: Rng + ?Sized>(rng: &mut G) -> Atom<R> {
    match rng.gen_range(0..4) {
        0 => Atom::Free,
        1 => Atom::Cyclic(random_nonunit(rng, 0.0)),
        2 => Atom::Loc(prime_set(rng)),
        _ => Atom::LocModR(prime_set(rng)),
    }
}

/// Up to three atoms over the domain; possibly zero.
pub fn domain_module<R: Euclid, G: Rng + ?Sized>(rng: &mut G) -> Module<R> {
    let n = rng.gen_range(0..=3);
    Module::new(Ring::domain(), vec![(0..n).map(|_| atom(rng)).collect()]).expect("valid atoms")
}

/// Cyclic atoms over a finite ring, at most `FINITE_MODULE_CAP` elements.
pub fn finite_module<R: Euclid, G: Rng + ?Sized>(rng: &mut G, ring: &Ring<R>) -> Module<R> {
    loop {
        let parts = ring
            .moduli()
            .map(|m| {
                let m = m.expect("finite ring");
                let n = rng.gen_range(0..=2);
                (0..n)
                    .map(|_| {
                        let ds: Vec<R> = (0..3).map(|_| R::random_prime(rng, 3)).collect();
                        let d = ds.iter().filter(|_| rng.gen_bool(0.6)).fold(m.clone(), |acc, p| {
                            if p.divides(&acc) {
                                acc.exact_div(p)
                            } else {
                                acc
                            }
                        });
                        if d.is_unit() {
                            Atom::Cyclic(m.clone())
                        } else {
                            Atom::Cyclic(d)
                        }
                    })
                    .collect()
            })
            .collect();
        let m = Module::new(ring.clone(), parts).expect("valid atoms");
        if m.size(FINITE_MODULE_CAP).is_some() {
            return m;
        }
    }
}

/// A presentation with up to three generators and three relations.
pub fn presented<R: Euclid, G: Rng + ?Sized>(rng: &mut G, ring: &Ring<R>) -> Presented<R> {
    loop {
        let gens = rng.gen_range(1..=3);
        let nrel = rng.gen_range(0..=3);
        let rels: Vec<Vec<Vec<R>>> = (0..nrel)
            .map(|_| {
                (0..gens)
                    .map(|_| {
                        let v: Vec<R> = (0..ring.ncomps()).map(|_| small_elem(rng)).collect();
                        ring.reduce(&v)
                    })
                    .collect()
            })
            .collect();
        let p = Presented::new(ring.clone(), gens, &rels).expect("valid presentation");
        if ring.is_domain() || p.module().size(FINITE_MODULE_CAP).is_some() {
            return p;
        }
    }
}

/// A small element, often zero or a product of small primes.
pub fn small_elem<R: Euclid, G: Rng + ?Sized>(rng: &mut G) -> R {
    match rng.gen_range(0..4) {
        0 => R::zero(),
        1 => R::random(rng, 12),
        _ => {
            let u = R::random(rng, 2);
            let u = if u.is_zero() { R::one() } else { u };
            random_nonunit::<R, G>(rng, 0.0) * u
        }
    }
}
