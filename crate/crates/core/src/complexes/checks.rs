//! Randomized invariant checks for complexes, shared by the verify suite and
//! the tests.

use super::{homology, random, rank_oracle_is_zero_at, relevant_primes, ChainMap, Complex, MultSet, Place};
use crate::arith::{Euclid, Frac};
use crate::ringmod::random::random_nonunit;
use crate::topology::Cofin;
use num_traits::One;
use rand::Rng;
use std::collections::BTreeSet;

pub use crate::ringmod::checks::Check;

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

/// Places where complexes are compared: generic, default, and the union of
/// their relevant primes.
pub fn places<R: Euclid>(xs: &[&Complex<R>], bound: u64) -> Result<Vec<Place<R>>, String> {
    let mut ps = BTreeSet::new();
    for x in xs {
        ps.extend(relevant_primes(x, bound).map_err(err)?);
    }
    let mut out = vec![Place::Generic, Place::Default];
    out.extend(ps.into_iter().map(Place::Closed));
    Ok(out)
}

/// Same localized homology at every place that can tell them apart.
pub fn same_homology<R: Euclid>(x: &Complex<R>, y: &Complex<R>, bound: u64) -> Result<bool, String> {
    for p in places(&[x, y], bound)? {
        if homology(x, &p).map_err(err)? != homology(y, &p).map_err(err)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn is_zero<R: Euclid>(x: &Complex<R>, bound: u64) -> Result<bool, String> {
    super::is_zero(x, bound).map_err(err)
}

/// The canonical map `R -> f_Y`.
fn unit_to_f<R: Euclid>(f: &Complex<R>) -> ChainMap<R> {
    let m = crate::arith::linalg::Mat::from_fn(f.term(0).len(), 1, |_, _| Frac::one());
    ChainMap::new(Complex::unit(), f.clone(), [(0, m)].into()).expect("R -> R_P is a chain map")
}

/// Idempotent laws, the triangle `e -> R -> f`, products of `e`s and `f`s,
/// and `g` of an intersection.
pub fn idempotent_case<R: Euclid, G: Rng + ?Sized>(rng: &mut G, bound: u64) -> Check {
    let (y1, y2) = (random::fan_set::<R, G>(rng), random::fan_set::<R, G>(rng));
    let (e1, f1) = Complex::idempotents(&y1).map_err(err)?;
    let (e2, f2) = Complex::idempotents(&y2).map_err(err)?;
    ensure!(same_homology(&e1.tensor(&e1), &e1, bound)?, "e⊗e ≄ e for Y = {y1:?}");
    ensure!(same_homology(&f1.tensor(&f1), &f1, bound)?, "f⊗f ≄ f for Y = {y1:?}");
    ensure!(is_zero(&e1.tensor(&f1), bound)?, "e⊗f ≄ 0 for Y = {y1:?}");
    if !f1.is_empty() {
        let c = unit_to_f(&f1).cone();
        ensure!(same_homology(&c, &e1.shift(1), bound)?, "cone(R -> f) ≄ Σe for Y = {y1:?}");
    } else {
        ensure!(same_homology(&e1, &Complex::unit(), bound)?, "e ≄ R for Y = {y1:?}");
    }
    let meet = y1.intersect(&y2);
    let join = y1.union(&y2);
    ensure!(
        same_homology(&e1.tensor(&e2), &Complex::e(&meet).map_err(err)?, bound)?,
        "e_Y1⊗e_Y2 ≄ e_(Y1∩Y2) for {y1:?}, {y2:?}"
    );
    ensure!(
        same_homology(&f1.tensor(&f2), &Complex::f(&join).map_err(err)?, bound)?,
        "f_Y1⊗f_Y2 ≄ f_(Y1∪Y2) for {y1:?}, {y2:?}"
    );
    let (u1, v1, u2, v2) = (y1.clone(), random::fan_set(rng), y2.clone(), random::fan_set(rng));
    let g12 = Complex::g(&u1, &v1).map_err(err)?.tensor(&Complex::g(&u2, &v2).map_err(err)?);
    let g = Complex::g(&u1.intersect(&u2), &v1.union(&v2)).map_err(err)?;
    ensure!(same_homology(&g12, &g, bound)?, "g_W1⊗g_W2 ≄ g_(W1∩W2) for U={u1:?},{u2:?} V={v1:?},{v2:?}");
    let w_empty = u1.intersect(&v1.complement()).is_empty();
    ensure!(
        w_empty == is_zero(&Complex::g(&u1, &v1).map_err(err)?, bound)?,
        "g_W vanishes iff W is empty fails for U={u1:?}, V={v1:?}"
    );
    Ok(())
}

/// `K^∞(a)` depends only on the radical of `a`.
pub fn radical_case<R: Euclid, G: Rng + ?Sized>(rng: &mut G, bound: u64) -> Check {
    let gens: Vec<R> = (0..rng.gen_range(1..=2)).map(|_| random_nonunit(rng, 0.1)).collect();
    let powers: Vec<R> = gens.iter().map(|g| crate::arith::pow(g, rng.gen_range(1..=3))).collect();
    let rad = radical_of(&gens, bound)?;
    let k = Complex::stable_koszul(&gens, bound).map_err(err)?;
    let kp = Complex::stable_koszul(&powers, bound).map_err(err)?;
    let kr = Complex::stable_koszul(&[rad.clone()], bound).map_err(err)?;
    ensure!(same_homology(&k, &kp, bound)?, "K^∞({gens:?}) ≄ K^∞({powers:?})");
    ensure!(same_homology(&k, &kr, bound)?, "K^∞({gens:?}) ≄ K^∞({rad})");
    Ok(())
}

/// Generator of the radical of the ideal generated by `gens`.
pub fn radical_of<R: Euclid>(gens: &[R], bound: u64) -> Result<R, String> {
    let g = gens.iter().fold(R::zero(), |a, b| crate::arith::gcd(&a, b));
    if g.is_zero() || g.is_unit() {
        return Ok(g.normalized());
    }
    crate::arith::radical(&g, bound).map_err(err)
}

/// Tensor symmetry, associativity and unit, shift inverse, cone of the
/// identity, rank Euler characteristic along cones, and agreement of the
/// two vanishing tests.
pub fn tensor_case<R: Euclid, G: Rng + ?Sized>(rng: &mut G, bound: u64) -> Check {
    let x: Complex<R> = random::complex(rng);
    let y: Complex<R> = random::two_term(rng);
    let z: Complex<R> = random::leaf(rng);
    ensure!(x.shift(1).shift(-1) == x, "shift(shift(X,1),-1) != X for {x}");
    ensure!(same_homology(&x.tensor(&Complex::unit()), &x, bound)?, "X⊗R ≄ X for {x}");
    ensure!(same_homology(&x.tensor(&y), &y.tensor(&x), bound)?, "X⊗Y ≄ Y⊗X for {x}, {y}");
    ensure!(
        same_homology(&x.tensor(&y).tensor(&z), &x.tensor(&y.tensor(&z)), bound)?,
        "(X⊗Y)⊗Z ≄ X⊗(Y⊗Z) for {x}, {y}, {z}"
    );
    ensure!(is_zero(&ChainMap::scalar(&x, &Frac::one()).cone(), bound)?, "cone(id) not acyclic for {x}");
    ensure!(same_homology(&x.resolve(), &x, bound)?, "resolution changed homology of {x}");
    let f = random::map::<R, G>(rng);
    let c = f.cone();
    for p in places(&[&f.source, &f.target, &c], bound)? {
        let chi = |w: &Complex<R>| -> Result<i64, String> {
            let h = homology(w, &p).map_err(err)?;
            Ok(h.iter().map(|(n, m)| if n.rem_euclid(2) == 0 { 1 } else { -1 } * (m.fraction + m.local) as i64).sum())
        };
        let (ka, kb, kc) = (chi(&f.source)?, chi(&f.target)?, chi(&c)?);
        ensure!(kc == kb - ka, "rank Euler characteristic fails along cone at {p:?}: {kc} != {kb} - {ka}");
    }
    let rel = relevant_primes(&x, bound).map_err(err)?;
    for p in rel.iter().cloned().chain(R::primes().take(3)) {
        let a = homology(&x, &Place::Closed(p.clone())).map_err(err)?.is_empty();
        let b = rank_oracle_is_zero_at(&x, &p);
        ensure!(a == b, "vanishing at {p} by homology ({a}) and by ranks ({b}) disagree for {x}");
    }
    Ok(())
}

/// `π_*(S^{-1} X) = S^{-1} π_*(X)` at every place.
pub fn localization_case<R: Euclid, G: Rng + ?Sized>(rng: &mut G, bound: u64) -> Check {
    let x: Complex<R> = random::complex(rng);
    let s = match rng.gen_range(0..3) {
        0 => MultSet::Outside(R::zero()),
        1 => MultSet::Outside(random::small_prime(rng)),
        _ => MultSet::Powers(random_nonunit(rng, 0.0)),
    };
    let l = x.localize(&s, bound).map_err(err)?;
    let inverted = match &s {
        MultSet::Outside(p) if p.is_zero() => Cofin::all(),
        MultSet::Outside(p) => Cofin::cofinite([p.clone()]),
        MultSet::Powers(u) => Cofin::finite(u.prime_divisors(bound).map_err(err)?),
    };
    for p in places(&[&x, &l], bound)? {
        let meets = match &p {
            Place::Generic => false,
            Place::Closed(q) => inverted.contains(q),
            Place::Default => !inverted.is_finite(),
        };
        let h = homology(&x, &p).map_err(err)?;
        let want: std::collections::BTreeMap<_, _> = if meets {
            h.into_iter().map(|(n, m)| (n, m.rationalize())).filter(|(_, m)| !m.is_zero()).collect()
        } else {
            h
        };
        ensure!(homology(&l, &p).map_err(err)? == want, "localization of {x} at {s:?} disagrees at {p:?}");
    }
    Ok(())
}

/// `U(F(x) ⊗ y) ≃ x ⊗ U(y)` for local `y`, and `F` of the unit is `f_Y`.
pub fn projection_case<R: Euclid, G: Rng + ?Sized>(rng: &mut G, bound: u64) -> Check {
    let y = random::fan_set::<R, G>(rng);
    let loc = super::FiniteLocalization::new(y.clone()).map_err(err)?;
    let x: Complex<R> = random::complex(rng);
    let d = loc.apply(&random::complex(rng));
    let lhs = loc.forget(&loc.apply(&x).tensor(&d));
    let rhs = x.tensor(&loc.forget(&d));
    ensure!(same_homology(&lhs, &rhs, bound)?, "projection formula fails for Y = {y:?}, x = {x}");
    if y.is_empty() {
        ensure!(same_homology(&loc.apply(&x), &x, bound)?, "F is not the identity for Y = ∅");
    }
    Ok(())
}
