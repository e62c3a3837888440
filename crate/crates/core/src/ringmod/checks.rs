//! Randomized invariant checks shared by the verify suite and the tests.

use super::{oracle, random, Atom, Module, Prime, PrimeSet, Ring};
use crate::arith::Euclid;
use crate::topology::{Cofin, Pointed};
use rand::seq::SliceRandom;
use rand::Rng;

pub type Check = std::result::Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Primes worth probing for a domain module: small primes plus every prime
/// mentioned by its atoms, and the zero ideal.
pub fn candidates<R: Euclid>(m: &Module<R>) -> Vec<Prime<R>> {
    let mut ps: Vec<R> = R::primes().take(12).collect();
    for a in m.parts().iter().flatten() {
        match a {
            Atom::Loc(s) | Atom::LocModR(s) => ps.extend(s.listed().iter().cloned()),
            Atom::Cyclic(d) => ps.extend(d.prime_divisors(crate::arith::DEFAULT_FACTOR_BOUND).unwrap_or_default()),
            Atom::Free => {}
        }
    }
    ps.sort();
    ps.dedup();
    let mut out = vec![Prime::zero()];
    out.extend(ps.into_iter().map(Prime::closed));
    out
}

/// Atom rules against full enumeration over a random finite ring.
pub fn finite_case<R: Euclid, G: Rng + ?Sized>(rng: &mut G, bound: u64) -> Check {
    let cap = random::FINITE_MODULE_CAP;
    let ring: Ring<R> = random::finite_ring(rng);
    let m = if rng.gen_bool(0.5) {
        random::finite_module(rng, &ring)
    } else {
        random::presented(rng, &ring).module().clone()
    };
    let wa = m.weak_ass(bound).map_err(err)?;
    let asp = m.ass(bound).map_err(err)?;
    let owa = oracle::weak_ass(&m, cap, bound).map_err(err)?;
    let oas = oracle::ass(&m, cap, bound).map_err(err)?;
    ensure!(wa == PrimeSet::Finite(owa.clone()), "{m}: weak_ass {wa:?} vs enumeration {owa:?}");
    ensure!(asp == PrimeSet::Finite(oas.clone()), "{m}: ass {asp:?} vs enumeration {oas:?}");
    ensure!(asp == wa, "{m}: ass differs from weak_ass");

    let elems = oracle::elements(&m, cap).map_err(err)?;
    let x = elems.choose(rng).expect("nonempty").clone();
    let ann = m.annihilator(&x);
    let oann = oracle::annihilator(&m, &x, cap).map_err(err)?;
    ensure!(ann == oann, "{m}: Ann({x:?}) = {ann:?}, enumeration {oann:?}");

    let gens: Vec<Vec<R>> = (0..rng.gen_range(0..=2))
        .map(|_| ring.reduce(&(0..ring.ncomps()).map(|_| random::small_elem(rng)).collect::<Vec<_>>()))
        .collect();
    let a = ring.ideal(&gens).map_err(err)?;
    let small = m.torsion_small(&a, bound).map_err(err)?;
    let large = m.torsion_large(&a, bound).map_err(err)?;
    let profile = |mm: &Module<R>| oracle::profile(&oracle::elements(mm, cap)?, mm, cap);
    let ps = profile(&small).map_err(err)?;
    let pl = profile(&large).map_err(err)?;
    let os = oracle::profile(&oracle::torsion_small(&m, &a, cap).map_err(err)?, &m, cap).map_err(err)?;
    let ol = oracle::profile(&oracle::torsion_large(&m, &a, cap, bound).map_err(err)?, &m, cap).map_err(err)?;
    ensure!(ps == os, "{m}: small torsion at {a:?} is {small}, enumeration disagrees");
    ensure!(pl == ol, "{m}: large torsion at {a:?} is {large}, enumeration disagrees");
    ensure!(ps == pl, "{m}: small and large torsion differ at {a:?}");
    ensure!(m.is_torsion(&a) == (os.len() == elems.len()), "{m}: is_torsion at {a:?}");

    let primes: Vec<_> = ring.finite_primes(bound).map_err(err)?.into_iter().collect();
    let q = primes.choose(rng).expect("finite rings have primes").clone();
    let mq = m.localize(&q);
    let mut qa = vec![R::one(); ring.ncomps()];
    qa[q.comp] = q.p.clone();
    let qi = ring.ideal(&[qa]).map_err(err)?;
    let oq = oracle::profile(&oracle::torsion_small(&m, &qi, cap).map_err(err)?, &m, cap).map_err(err)?;
    ensure!(profile(&mq).map_err(err)? == oq, "{m}: localization at {q} is {mq}, enumeration disagrees");
    Ok(())
}

fn random_spec_closed<R: Euclid, G: Rng + ?Sized>(rng: &mut G) -> PrimeSet<R> {
    if rng.gen_bool(0.15) {
        return PrimeSet::Spec(Pointed::whole());
    }
    let k = rng.gen_range(0..=3);
    PrimeSet::Spec(Pointed::closed_points(Cofin::finite((0..k).map(|_| R::random_prime(rng, 5)))))
}

/// Support and torsion identities over the domain.
pub fn domain_case<R: Euclid, G: Rng + ?Sized>(rng: &mut G, bound: u64) -> Check {
    let ring = Ring::<R>::domain();
    let m = if rng.gen_bool(0.7) {
        random::domain_module(rng)
    } else {
        random::presented(rng, &ring).module().clone()
    };
    let wa = m.weak_ass(bound).map_err(err)?;
    let asp = m.ass(bound).map_err(err)?;
    let big = m.big_supp(bound).map_err(err)?;
    ensure!(asp.is_subset(&wa) && wa.is_subset(&big), "{m}: ass ⊆ weak_ass ⊆ Supp fails");
    ensure!(asp == wa, "{m}: ass {asp:?} differs from weak_ass {wa:?}");
    ensure!(wa.is_empty() == m.is_zero(), "{m}: weak_ass empty iff zero fails");
    ensure!(wa.closure() == big, "{m}: closure of weak_ass {wa:?} is not Supp {big:?}");

    let cands = candidates(&m);
    for q in &cands {
        let mq = m.localize(q);
        ensure!(big.contains(q) == !mq.is_zero(), "{m}: Supp membership at {q} disagrees with {mq}");
        let lhs = mq.weak_ass(bound).map_err(err)?;
        let rhs = wa.intersect(&ring.generalizations(q));
        ensure!(lhs == rhs, "{m}: weak_ass of localization at {q} is {lhs:?}, expected {rhs:?}");
    }

    let v = random_spec_closed::<R, G>(rng);
    let inside = wa.is_subset(&v);
    let local = cands.iter().filter(|q| !v.contains(q)).all(|q| m.localize(q).is_zero());
    ensure!(inside == local, "{m}: supp ⊆ {v:?} is {inside}, local vanishing says {local}");

    let g = match rng.gen_range(0..10) {
        0 => R::one(),
        1 => R::zero(),
        _ => random::random_nonunit(rng, 0.0),
    };
    let a = ring.principal(vec![g]).map_err(err)?;
    let va = ring.zero_locus(&a, bound).map_err(err)?;
    let tors = m.is_torsion(&a);
    ensure!(tors == wa.is_subset(&va), "{m}: torsion at {a:?} is {tors}, supp ⊆ V(a) disagrees");
    let small = m.torsion_small(&a, bound).map_err(err)?;
    let large = m.torsion_large(&a, bound).map_err(err)?;
    ensure!(
        small.canonical(bound).map_err(err)? == large.canonical(bound).map_err(err)?,
        "{m}: small torsion {small} differs from large {large} at {a:?}"
    );
    ensure!(small.weak_ass(bound).map_err(err)?.is_subset(&va), "{m}: supp of torsion not in V(a)");
    ensure!(small.is_torsion(&a), "{m}: torsion part {small} is not torsion");
    if tors {
        ensure!(
            small.canonical(bound).map_err(err)? == m.canonical(bound).map_err(err)?,
            "{m}: torsion module is not its own torsion part"
        );
    }
    Ok(())
}

/// Supports in `0 -> <g1> -> M -> M/<g1> -> 0` for a random presentation.
pub fn serre_case<R: Euclid, G: Rng + ?Sized>(rng: &mut G, bound: u64) -> Check {
    let ring = if rng.gen_bool(0.5) { Ring::<R>::domain() } else { random::finite_ring(rng) };
    let p = random::presented(rng, &ring);
    let n = p.gens();
    let mut e1 = vec![vec![R::zero(); ring.ncomps()]; n];
    e1[0] = vec![R::one(); ring.ncomps()];
    let x = p.element(&e1, bound).map_err(err)?;
    let ann = p.module().annihilator(&x);
    let sub = Module::new(ring.clone(), ann.gens.iter().map(|g| vec![Atom::Cyclic(g.clone())]).collect())
        .map_err(err)?;
    let mut rels = p.relations().to_vec();
    rels.push(e1);
    let quot = super::Presented::new(ring.clone(), n, &rels).map_err(err)?;
    let mid = p.module().weak_ass(bound).map_err(err)?;
    let outer = sub.weak_ass(bound).map_err(err)?.union(&quot.module().weak_ass(bound).map_err(err)?);
    ensure!(
        mid.closure() == outer.closure(),
        "{}: Supp of middle {mid:?} vs outer terms {outer:?}",
        p.module()
    );
    ensure!(mid.is_subset(&outer), "{}: supp of middle {mid:?} not in {outer:?}", p.module());
    let ends_zero = sub.is_zero() && quot.module().is_zero();
    ensure!(ends_zero == p.module().is_zero(), "{}: vanishing of middle and ends disagree", p.module());
    Ok(())
}
