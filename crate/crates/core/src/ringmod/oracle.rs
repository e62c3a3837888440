//! Brute-force answers for modules over finite rings, by enumerating every
//! element. Used to cross-check the atom rules.

use super::{Atom, Ideal, ModElem, Module, Prime, Ring};
use crate::arith::{gcd, Euclid, Frac};
use crate::error::{Error, Result};
use num_traits::Zero;
use std::collections::BTreeSet;

/// Per-component residues of a finite ring.
fn comp_residues<R: Euclid>(ring: &Ring<R>, limit: usize) -> Result<Vec<Vec<R>>> {
    ring.moduli()
        .map(|m| {
            let m = m.ok_or_else(|| Error::unsupported("enumeration needs a finite ring"))?;
            R::residues(m, limit).ok_or_else(|| Error::resource(format!("more than {limit} residues mod {m}")))
        })
        .collect()
}

/// Every element of a finite module.
pub fn elements<R: Euclid>(m: &Module<R>, limit: usize) -> Result<Vec<ModElem<R>>> {
    if m.size(limit).is_none() {
        return Err(Error::resource(format!("module has more than {limit} elements or is infinite")));
    }
    let mut out: Vec<ModElem<R>> = vec![vec![]];
    for atoms in m.parts() {
        let mut next = Vec::new();
        let mut comp: Vec<Vec<Frac<R>>> = vec![vec![]];
        for a in atoms {
            let Atom::Cyclic(d) = a else { unreachable!() };
            let rs = R::residues(d, limit).expect("sized above");
            comp = comp
                .into_iter()
                .flat_map(|v| {
                    rs.iter().map(move |r| {
                        let mut w = v.clone();
                        w.push(Frac::int(r.clone()));
                        w
                    })
                })
                .collect();
        }
        for x in &out {
            for c in &comp {
                let mut y = x.clone();
                y.push(c.clone());
                next.push(y);
            }
        }
        out = next;
    }
    Ok(out)
}

fn is_zero_elem<R: Euclid>(x: &ModElem<R>) -> bool {
    x.iter().flatten().all(|c| c.is_zero())
}

/// `r * x` in a module of cyclic atoms, for `r` in component `i`.
fn scale<R: Euclid>(m: &Module<R>, i: usize, r: &R, x: &[Frac<R>]) -> Vec<Frac<R>> {
    x.iter()
        .zip(&m.parts()[i])
        .map(|(c, a)| {
            let Atom::Cyclic(d) = a else { unreachable!() };
            Frac::int((c.num().clone() * r.clone()).rem_e(d))
        })
        .collect()
}

/// `Ann(x)` by testing every ring element.
pub fn annihilator<R: Euclid>(m: &Module<R>, x: &ModElem<R>, limit: usize) -> Result<Ideal<R>> {
    let res = comp_residues(m.ring(), limit)?;
    let gens = res
        .iter()
        .enumerate()
        .map(|(i, rs)| {
            let modulus = m.ring().modulus(i).expect("finite").clone();
            rs.iter()
                .filter(|r| scale(m, i, r, &x[i]).iter().all(|c| c.is_zero()))
                .fold(modulus, |g, r| gcd(&g, r))
        })
        .collect();
    Ok(Ideal { gens })
}

fn primes_of<R: Euclid>(a: &Ideal<R>, bound: u64) -> Result<BTreeSet<Prime<R>>> {
    let mut out = BTreeSet::new();
    for (i, g) in a.gens.iter().enumerate() {
        for p in g.prime_divisors(bound)? {
            out.insert(Prime { comp: i, p });
        }
    }
    Ok(out)
}

/// Is the ideal exactly the prime `q`?
fn is_prime_ideal<R: Euclid>(a: &Ideal<R>, q: &Prime<R>) -> bool {
    a.gens.iter().enumerate().all(|(i, g)| if i == q.comp { *g == q.p } else { g.is_unit() })
}

/// Minimal primes over annihilators of all elements.
pub fn weak_ass<R: Euclid>(m: &Module<R>, limit: usize, bound: u64) -> Result<BTreeSet<Prime<R>>> {
    let mut out = BTreeSet::new();
    for x in elements(m, limit)? {
        if !is_zero_elem(&x) {
            out.extend(primes_of(&annihilator(m, &x, limit)?, bound)?);
        }
    }
    Ok(out)
}

/// Primes that occur as annihilators of elements.
pub fn ass<R: Euclid>(m: &Module<R>, limit: usize, bound: u64) -> Result<BTreeSet<Prime<R>>> {
    let primes = m.ring().finite_primes(bound)?;
    let mut out = BTreeSet::new();
    for x in elements(m, limit)? {
        let a = annihilator(m, &x, limit)?;
        out.extend(primes.iter().filter(|q| is_prime_ideal(&a, q)).cloned());
    }
    Ok(out)
}

/// Sorted annihilators of all elements; determines a finite module up to
/// isomorphism.
pub fn profile<R: Euclid>(elems: &[ModElem<R>], m: &Module<R>, limit: usize) -> Result<Vec<Vec<R>>> {
    let mut v = elems
        .iter()
        .map(|x| annihilator(m, x, limit).map(|a| a.gens))
        .collect::<Result<Vec<_>>>()?;
    v.sort();
    Ok(v)
}

/// Elements killed by some power of `a`.
pub fn torsion_small<R: Euclid>(m: &Module<R>, a: &Ideal<R>, limit: usize) -> Result<Vec<ModElem<R>>> {
    let elems = elements(m, limit)?;
    let steps = usize::BITS - elems.len().leading_zeros() + 1;
    Ok(elems
        .into_iter()
        .filter(|x| {
            (0..x.len()).all(|i| {
                let mut y = x[i].clone();
                for _ in 0..steps {
                    y = scale(m, i, &a.gens[i], &y);
                }
                y.iter().all(|c| c.is_zero())
            })
        })
        .collect())
}

/// Elements whose annihilator lies in no prime avoiding `a`.
pub fn torsion_large<R: Euclid>(
    m: &Module<R>,
    a: &Ideal<R>,
    limit: usize,
    bound: u64,
) -> Result<Vec<ModElem<R>>> {
    let va = primes_of(a, bound)?;
    let mut out = Vec::new();
    for x in elements(m, limit)? {
        if primes_of(&annihilator(m, &x, limit)?, bound)?.is_subset(&va) {
            out.push(x);
        }
    }
    Ok(out)
}
