//! Randomized invariant checks for the spaces, shared by the verify suite
//! and the tests.

use super::{FinitePoset, HwsVerdict, Point, Space, Subset};
use rand::Rng;

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

/// On the column, a subset is localizing closed iff it contains infinity
/// or is finite.
pub fn localizing_case<G: Rng + ?Sized>(rng: &mut G) -> Check {
    let x = Space::Column;
    let s = x.random_subset(rng);
    let Subset::ChromaticColumn(c) = &s else { unreachable!() };
    let expected = c.inf || c.heights.is_finite();
    let got = x.is_localizing_closed(&s).map_err(err)?;
    ensure!(got == expected, "is_localizing_closed({s:?}) = {got}, expected {expected}");
    let cl = x.localizing_closure(&s).map_err(err)?;
    ensure!(x.is_subset(&s, &cl), "localizing closure of {s:?} does not contain it");
    ensure!(x.is_localizing_closed(&cl).map_err(err)?, "localizing closure of {s:?} is not closed");
    Ok(())
}

/// Every entry of a weakly scattered certificate is valid.
pub fn certificate_ok(x: &Space, v: &HwsVerdict) -> Check {
    for w in &v.witnesses {
        ensure!(x.is_thomason(&w.y).map_err(err)?, "certificate set {:?} is not Thomason", w.y);
        ensure!(!x.contains(&w.y, &w.point), "certificate point {} lies in {:?}", w.point, w.y);
        ensure!(x.is_thomason(&w.open).map_err(err)?, "certificate open {:?} is not Thomason", w.open);
        ensure!(x.contains(&w.open, &w.point), "certificate open misses {}", w.point);
        let cut = x.minus(&w.open, &w.y);
        ensure!(x.is_subset(&cut, &x.gen(&w.point).map_err(err)?), "U ∩ Y^c is not inside gen({})", w.point);
    }
    if let Some(y) = &v.failing {
        ensure!(x.hochster_weak_witness(y).map_err(err)?.is_none(), "failing set {y:?} has a witness");
    }
    Ok(())
}

/// Scattered iff weakly Noetherian and Hochster weakly scattered, with a
/// valid certificate.
pub fn factorization_check(x: &Space, poset_cap: usize) -> Check {
    let v = x.is_hochster_scattered(poset_cap).map_err(err)?;
    let wn = x.is_weakly_noetherian().value;
    let hws = x.is_hochster_weakly_scattered(poset_cap).map_err(err)?;
    ensure!(v.value == (wn && hws.value), "{}: scattered {} but factors give {wn} and {}", x.kind(), v.value, hws.value);
    ensure!(v.value == v.direct, "{}: direct route disagrees", x.kind());
    certificate_ok(x, &hws)
}

/// The factorization on every model instance.
pub fn models_check(poset_cap: usize) -> Check {
    for x in Space::models() {
        factorization_check(&x, poset_cap)?;
    }
    Ok(())
}

/// The factorization on a random poset of at most 8 points, plus duality
/// and weak visibility against a search over up-sets.
pub fn poset_case<G: Rng + ?Sized>(rng: &mut G, poset_cap: usize) -> Check {
    let n = rng.gen_range(1..=8);
    let density = rng.gen_range(0.1..0.6);
    let p = FinitePoset::random(rng, n, density);
    ensure!(p.dual().dual() == p, "double dual differs for {:?}", p.relations());
    let x = Space::Poset(p.clone());
    factorization_check(&x, poset_cap)?;
    let ups = p.up_sets();
    let s = rng.gen::<u64>() & p.full();
    let found = ups.iter().any(|&u| ups.iter().any(|&v| u & !v == s));
    ensure!(p.weakly_visible_witness(s).is_some() == found, "weak visibility of {s:#b} disagrees with search");
    Ok(())
}

/// Boolean laws, closures and witnesses for random subsets of `x`.
pub fn subset_case<G: Rng + ?Sized>(x: &Space, rng: &mut G) -> Check {
    let (a, b) = (x.random_subset(rng), x.random_subset(rng));
    let k = x.kind();
    ensure!(x.complement(&x.complement(&a)) == a, "{k}: complement is not an involution on {a:?}");
    ensure!(
        x.complement(&x.union(&a, &b)) == x.intersect(&x.complement(&a), &x.complement(&b)),
        "{k}: De Morgan fails for {a:?}, {b:?}"
    );
    ensure!(x.is_subset(&a, &x.union(&a, &b)), "{k}: a ⊄ a ∪ b");
    let cl = x.closure(&a).map_err(err)?;
    ensure!(x.is_subset(&a, &cl), "{k}: closure of {a:?} does not contain it");
    ensure!(x.closure(&cl).map_err(err)? == cl, "{k}: closure of {a:?} is not idempotent");
    let loc = x.localizing_closure(&a).map_err(err)?;
    ensure!(x.is_subset(&loc, &cl), "{k}: localizing closure exceeds closure for {a:?}");
    ensure!(
        x.is_subset(&loc, &x.constructible_closure(&a).map_err(err)?),
        "{k}: localizing closure exceeds constructible closure for {a:?}"
    );
    if x.is_thomason(&a).map_err(err)? {
        ensure!(x.is_weakly_visible(&a).map_err(err)?, "{k}: Thomason {a:?} is not weakly visible");
    }
    if let Some((u, v)) = x.weakly_visible_witness(&a).map_err(err)? {
        ensure!(x.is_thomason(&u).map_err(err)? && x.is_thomason(&v).map_err(err)?, "{k}: witness for {a:?} not Thomason");
        ensure!(x.minus(&u, &v) == a, "{k}: witness does not cut out {a:?}");
    }
    let text = serde_json::to_string(&a).map_err(err)?;
    let back: Subset = serde_json::from_str(&text).map_err(err)?;
    ensure!(back == a, "{k}: JSON round trip changed {a:?}");
    if let Some(pt) = first_point(x, &a) {
        ensure!(x.is_subset(&x.singleton(&pt).map_err(err)?, &a), "{k}: singleton of {pt} escapes {a:?}");
    }
    Ok(())
}

fn first_point(x: &Space, s: &Subset) -> Option<Point> {
    let cands: Vec<String> = match x {
        Space::Poset(p) => p.labels().to_vec(),
        Space::SInfinity => ["inf", "0", "1", "2", "3"].map(String::from).to_vec(),
        Space::Column => ["inf", "0", "1", "2", "3"].map(String::from).to_vec(),
        Space::Plane => ["generic", "2:1", "3:2", "2:inf"].map(String::from).to_vec(),
        Space::Fan(b) => std::iter::once("generic".to_string()).chain(b.primes().take(4).map(|l| l.0)).collect(),
    };
    cands.into_iter().filter_map(|c| x.parse_point(&c).ok()).find(|p| x.contains(s, p))
}
