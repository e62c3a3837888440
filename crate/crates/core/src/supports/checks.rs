//! Randomized checks of the support axioms, the comparison of the two
//! supports, detection, base change and local-to-global certificates.

use super::*;
use crate::complexes::{random, MultSet};
use crate::ringmod::random::random_nonunit;
use crate::topology::{ColumnSet, HeightSet, Ht};
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

type Pair<R> = (FanSet<R>, FanSet<R>);

/// Both supports, which must agree and be localizing closed.
fn both<R: Euclid>(x: &Complex<R>, bound: u64) -> std::result::Result<Pair<R>, String> {
    let s = supports(x, bound).map_err(err)?;
    for t in [&s.tt, &s.bik] {
        ensure!(is_localizing_closed(t).map_err(err)?, "support {} of {x} is not localizing closed", describe(t));
    }
    Ok((s.tt, s.bik))
}

fn show<R: Euclid>(s: &FanSet<R>) -> String {
    describe(s)
}

/// Support axioms for both supports on random complexes: shifts, sums,
/// cones, tensor containment, the idempotents, the half-tensor formula for
/// perfect complexes, and the cut formulas for `e` and `f`.
pub fn axiom_case<R: Euclid, G: Rng + ?Sized>(rng: &mut G, bound: u64) -> Check {
    let x: Complex<R> = random::complex(rng);
    let y: Complex<R> = random::leaf(rng);
    let sx = both(&x, bound)?;
    let sy = both(&y, bound)?;
    let routes = |s: &Pair<R>| [s.0.clone(), s.1.clone()];
    let check2 = |name: &str, got: &Pair<R>, want: [FanSet<R>; 2], subset: bool| -> Check {
        for (route, (g, w)) in ["tt", "bik"].iter().zip(routes(got).iter().zip(want.iter())) {
            let ok = if subset { g.is_subset(w) } else { g == w };
            ensure!(ok, "{name} fails for {route}: got {}, expected {}", show(g), show(w));
        }
        Ok(())
    };
    let k = rng.gen_range(-2..=2);
    check2("shift", &both(&x.shift(k), bound)?, routes(&sx), false)?;
    let sum = both(&x.sum(&y), bound)?;
    check2("sum", &sum, [sx.0.union(&sy.0), sx.1.union(&sy.1)], false)?;
    let prod = both(&x.tensor(&y), bound)?;
    check2("tensor", &prod, [sx.0.intersect(&sy.0), sx.1.intersect(&sy.1)], true)?;
    let r = random_nonunit::<R, G>(rng, 0.2);
    let kos = both(&x.koszul(&r), bound)?;
    check2("cone of a scalar", &kos, routes(&sx), true)?;
    let f = random::map::<R, G>(rng);
    let (ss, st) = (both(&f.source, bound)?, both(&f.target, bound)?);
    let cone = both(&f.cone(), bound)?;
    check2("cone", &cone, [ss.0.union(&st.0), ss.1.union(&st.1)], true)?;

    let yset = random::fan_set::<R, G>(rng);
    let (e, fy) = Complex::idempotents(&yset).map_err(err)?;
    check2("support of e_Y", &both(&e, bound)?, [yset.clone(), yset.clone()], false)?;
    let yc = yset.complement();
    check2("support of f_Y", &both(&fy, bound)?, [yc.clone(), yc.clone()], false)?;
    let ex = both(&e.tensor(&x), bound)?;
    check2("e_Y cut", &ex, [sx.0.intersect(&yset), sx.1.intersect(&yset)], false)?;
    let fx = both(&fy.tensor(&x), bound)?;
    check2("f_Y cut", &fx, [sx.0.intersect(&yc), sx.1.intersect(&yc)], false)?;

    let a = random_nonunit::<R, G>(rng, 0.2);
    let va = v_of(&a, bound).map_err(err)?;
    let ea = both(&Complex::e(&va).map_err(err)?.tensor(&x), bound)?;
    check2("e_V(a) cut", &ea, [sx.0.intersect(&va), sx.1.intersect(&va)], false)?;
    let fa = both(&Complex::f(&va).map_err(err)?.tensor(&x), bound)?;
    check2("f_V(a) cut", &fa, [sx.0.minus(&va), sx.1.minus(&va)], false)?;

    let p: Complex<R> = random::perfect(rng);
    let small = homology_big_supp(&p, bound).map_err(err)?;
    let px = both(&p.tensor(&x), bound)?;
    check2("half tensor", &px, [small.intersect(&sx.0), small.intersect(&sx.1)], false)?;

    let g0 = Complex::g(&yset, &yset.union(&random::fan_set(rng))).map_err(err)?;
    ensure!(is_zero(&g0.tensor(&x), bound).map_err(err)?, "g of an empty W does not kill {x}");
    Ok(())
}

/// The unit has full support and zero has none.
pub fn unit_and_zero<R: Euclid>(bound: u64) -> Check {
    let u = both(&Complex::<R>::unit(), bound)?;
    ensure!(u.0.is_whole() && u.1.is_whole(), "support of the unit is {}", show(&u.0));
    let z = both(&Complex::<R>::zero(), bound)?;
    ensure!(z.0.is_empty() && z.1.is_empty(), "support of zero is {}", show(&z.0));
    Ok(())
}

/// The two supports agree on a random complex.
pub fn compare_case<R: Euclid, G: Rng + ?Sized>(rng: &mut G, bound: u64) -> Check {
    let x: Complex<R> = if rng.gen_bool(0.15) { random::acyclic(rng) } else { random::complex(rng) };
    let s = supports(&x, bound).map_err(err)?;
    ensure!(s.agree(), "supports of {x} disagree: tt {}, bik {}", show(&s.tt), show(&s.bik));
    Ok(())
}

/// Empty support exactly for acyclic complexes.
pub fn detection_case<R: Euclid, G: Rng + ?Sized>(rng: &mut G, bound: u64) -> Check {
    let x: Complex<R> = if rng.gen_bool(0.3) { random::acyclic(rng) } else { random::complex(rng) };
    let s = supports(&x, bound).map_err(err)?;
    ensure!(s.zero == s.tt.is_empty(), "{x}: acyclic = {}, tt support {}", s.zero, show(&s.tt));
    ensure!(s.zero == s.bik.is_empty(), "{x}: acyclic = {}, bik support {}", s.zero, show(&s.bik));
    Ok(())
}

/// `min supp H(x^∨ ⊗ X) ⊆ Supp_BIK(X) ⊆ Supp H(X)` for a perfect `x`.
pub fn sandwich_case<R: Euclid, G: Rng + ?Sized>(rng: &mut G, bound: u64) -> Check {
    let t: Complex<R> = random::complex(rng);
    let x: Complex<R> = if rng.gen_bool(0.3) { Complex::unit() } else { random::perfect(rng) };
    let bik = bik_supp(&t, bound).map_err(err)?;
    let small = homology_small_supp(&x.dual().tensor(&t), bound).map_err(err)?;
    let low = minimal(&small);
    let high = homology_big_supp(&t, bound).map_err(err)?;
    ensure!(low.is_subset(&bik), "min supp {} ⊄ bik {} for x = {x}, X = {t}", show(&low), show(&bik));
    ensure!(bik.is_subset(&high), "bik {} ⊄ homology support {} for {t}", show(&bik), show(&high));
    Ok(())
}

/// Finite localization away from `Y`: `Supp(F c) = Supp(c) ∩ Y^c`,
/// `Supp(U d) ⊆ Y^c` for local `d`, and `Supp(U(unit)) = Y^c`, which is
/// localizing closed.
pub fn base_change_case<R: Euclid, G: Rng + ?Sized>(rng: &mut G, bound: u64) -> Check {
    let y = random::fan_set::<R, G>(rng);
    let loc = crate::complexes::FiniteLocalization::new(y.clone()).map_err(err)?;
    let yc = y.complement();
    let c: Complex<R> = random::complex(rng);
    let sc = both(&c, bound)?;
    let sf = both(&loc.apply(&c), bound)?;
    ensure!(sf.0 == sc.0.intersect(&yc), "Supp(F c) = {} but Supp(c) ∩ Y^c = {}", show(&sf.0), show(&sc.0.intersect(&yc)));
    ensure!(sf.1 == sc.1.intersect(&yc), "bik: Supp(F c) = {}", show(&sf.1));
    let d = loc.apply(&random::complex(rng));
    let sd = both(&loc.forget(&d), bound)?;
    ensure!(sd.0.is_subset(&yc), "Supp(U d) = {} ⊄ Y^c", show(&sd.0));
    let su = both(&loc.forget(&loc.apply(&Complex::unit())), bound)?;
    ensure!(su.0 == yc && su.1 == yc, "Supp(U(unit)) = {} but Y^c = {}", show(&su.0), show(&yc));
    ensure!(is_localizing_closed(&yc).map_err(err)?, "Y^c is not localizing closed");
    Ok(())
}

/// `Supp(X)` is the union over closed points `m` of the supports of the
/// localizations `X_m`, each inside `gen(m)`.
pub fn assembly_case<R: Euclid, G: Rng + ?Sized>(rng: &mut G, bound: u64) -> Check {
    let x: Complex<R> = random::complex(rng);
    let s = tt_supp(&x, bound).map_err(err)?;
    let probe = Probe::new(&x, bound).map_err(err)?;
    let mut generic = false;
    let mut at = BTreeMap::new();
    for pt in probe.points() {
        let Pt::Closed(m) = pt else { continue };
        let xm = x.localize(&MultSet::Outside(m.clone()), bound).map_err(err)?;
        let sm = tt_supp(&xm, bound).map_err(err)?;
        let gen_m = Pointed::new(Cofin::singleton(m.clone()), true);
        ensure!(sm.is_subset(&gen_m), "Supp(X_{m}) = {} ⊄ gen({m})", show(&sm));
        generic |= sm.generic;
        at.insert(Pt::Closed(m.clone()), sm.closed.contains(&m));
    }
    let assembled = probe.assemble(|pt| if let Pt::Generic = pt { generic } else { at[pt] });
    ensure!(assembled == s, "assembled {} but Supp = {} for {x}", show(&assembled), show(&s));
    Ok(())
}

/// Detection from the cover of the fan by the generic point, the relevant
/// primes of `X`, and the set of all other closed points.
pub fn cover_case<R: Euclid, G: Rng + ?Sized>(rng: &mut G, bound: u64) -> Check {
    let x: Complex<R> = if rng.gen_bool(0.3) { random::acyclic(rng) } else { random::complex(rng) };
    let probe = Probe::new(&x, bound).map_err(err)?;
    let mut cover: Vec<FanSet<R>> = vec![Pointed::generic_only()];
    cover.extend(probe.relevant.iter().map(singleton));
    cover.push(Pointed::closed_points(Cofin::cofinite(probe.relevant.iter().cloned())));
    let space = Space::Fan(fan_base::<R>());
    let union = cover.iter().fold(Pointed::empty(), |a, b| a.union(b));
    ensure!(union.is_whole(), "cover misses points");
    let mut all_vanish = true;
    for w in &cover {
        let (u, v) = space
            .weakly_visible_witness(&to_subset(w))
            .map_err(err)?
            .ok_or_else(|| format!("{} is not weakly visible", show(w)))?;
        let back = |s: &Subset| -> FanSet<R> {
            let Subset::Fan(p) = s else { unreachable!() };
            let closed = match &p.closed {
                Cofin::Finite(v) => Cofin::finite(v.iter().map(|l| R::parse_elem(&l.0).expect("label"))),
                Cofin::Cofinite(v) => Cofin::cofinite(v.iter().map(|l| R::parse_elem(&l.0).expect("label"))),
            };
            Pointed::new(closed, p.generic)
        };
        let (u, v) = (back(&u), back(&v));
        ensure!(u.minus(&v) == *w, "weakly visible witness does not cut out {}", show(w));
        let g = Complex::g(&u, &v).map_err(err)?;
        all_vanish &= is_zero(&g.tensor(&x), bound).map_err(err)?;
    }
    let zero = is_zero(&x, bound).map_err(err)?;
    ensure!(all_vanish == zero, "{x}: slices vanish = {all_vanish}, acyclic = {zero}");
    Ok(())
}

/// A random family of weakly visible subsets of the column, which may or
/// may not cover it.
pub fn column_family<G: Rng + ?Sized>(rng: &mut G) -> Vec<ColumnSet> {
    let mut out = Vec::new();
    for _ in 0..rng.gen_range(1..=4) {
        let n = rng.gen_range(0..6);
        out.push(match rng.gen_range(0..3) {
            0 => ColumnSet::tail(n),
            1 => ColumnSet::new(HeightSet::interval(n, n + rng.gen_range(1..4)), false),
            _ => ColumnSet::empty(),
        });
    }
    if rng.gen_bool(0.5) {
        let m = rng.gen_range(0..8);
        out.push(ColumnSet::new(HeightSet::interval(0, m), false));
        out.push(ColumnSet::tail(m));
    }
    out
}

/// The symbolic cover analysis on the column: a covering family has a
/// member `cl{n}` containing infinity; a non-covering one is rejected.
pub fn column_case<G: Rng + ?Sized>(rng: &mut G) -> Check {
    let fam = column_family(rng);
    let covers = {
        let inf = fam.iter().any(|w| w.inf);
        let upto = fam.iter().filter_map(|w| w.heights.as_tail()).min();
        let heights = (0..upto.unwrap_or(64)).all(|h| fam.iter().any(|w| w.contains(Ht::Fin(h))));
        inf && upto.is_some() && heights
    };
    match column_cover(&fam) {
        Ok(c) => {
            ensure!(covers, "accepted a non-covering family {fam:?}");
            ensure!(fam[c.member].contains(Ht::Inf), "member {} misses infinity", c.member);
            ensure!(fam[c.member] == ColumnSet::tail(c.height), "member {} is not cl{{{}}}", c.member, c.height);
        }
        Err(Error::Input(_)) => ensure!(!covers, "rejected the covering family {fam:?}"),
        Err(e) => return Err(e.to_string()),
    }
    Ok(())
}

/// `tt_supp(kos(unit, G))` depends only on the radical of `G`.
pub fn radical_supp_case<R: Euclid, G: Rng + ?Sized>(rng: &mut G, bound: u64) -> Check {
    let gens: Vec<R> = (0..rng.gen_range(1..=2)).map(|_| random_nonunit(rng, 0.1)).collect();
    let powers: Vec<R> = gens.iter().map(|g| crate::arith::pow(g, rng.gen_range(1..=3))).collect();
    let a = tt_supp(&Complex::unit().koszul_ideal(&gens), bound).map_err(err)?;
    let b = tt_supp(&Complex::unit().koszul_ideal(&powers), bound).map_err(err)?;
    ensure!(a == b, "kos({gens:?}) has support {} but kos({powers:?}) has {}", show(&a), show(&b));
    let rad = crate::complexes::checks::radical_of(&gens, bound)?;
    let want = v_of(&rad, bound).map_err(err)?;
    ensure!(a == want, "kos({gens:?}) has support {} but V(radical) = {}", show(&a), show(&want));
    Ok(())
}

/// Named complexes over the integers with their expected support.
pub fn fixtures(bound: u64) -> Vec<(&'static str, Complex<crate::arith::Int>, FanSet<crate::arith::Int>)> {
    use crate::arith::Int;
    use crate::ringmod::Atom;
    let z = Int::from;
    let closed = |ps: &[i64]| Pointed::closed_points(Cofin::finite(ps.iter().map(|&p| z(p))));
    let cyclic = |d: i64| Complex::atom(Atom::Cyclic(z(d)), 0);
    vec![
        ("Z/5", cyclic(5), closed(&[5])),
        ("Z/6", cyclic(6), closed(&[2, 3])),
        ("Q", Complex::atom(Atom::Loc(Cofin::all()), 0), Pointed::generic_only()),
        ("K^inf(3)", Complex::stable_koszul(&[z(3)], bound).expect("small generator"), closed(&[3])),
        (
            "Z[1/7]",
            Complex::atom(Atom::Loc(Cofin::singleton(z(7))), 0),
            Pointed::new(Cofin::cofinite([z(7)]), true),
        ),
        ("unit", Complex::unit(), Pointed::whole()),
        ("0", Complex::zero(), Pointed::empty()),
        (
            "cone(id on Z/4)",
            crate::complexes::ChainMap::scalar(&cyclic(4), &crate::arith::Frac::int(z(1))).cone(),
            Pointed::empty(),
        ),
    ]
}

/// Both supports of every fixture equal the expected set.
pub fn fixture_case(bound: u64) -> Check {
    for (name, x, want) in fixtures(bound) {
        let (tt, bik) = both(&x, bound)?;
        ensure!(tt == want, "{name}: tt support {} but expected {}", show(&tt), show(&want));
        ensure!(bik == want, "{name}: bik support {} but expected {}", show(&bik), show(&want));
    }
    Ok(())
}
