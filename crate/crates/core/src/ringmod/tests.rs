use super::*;
use crate::arith::{Fpx, Int, DEFAULT_FACTOR_BOUND as B};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn z(v: i64) -> Int {
    Int::from(v)
}

fn zmod(n: i64) -> Ring<Int> {
    Ring::quotient(z(n)).unwrap()
}

fn cyclic(ring: &Ring<Int>, d: i64) -> Module<Int> {
    Module::new(ring.clone(), vec![vec![Atom::Cyclic(z(d))]]).unwrap()
}

fn primes(ps: &[i64]) -> PrimeSet<Int> {
    PrimeSet::Finite(ps.iter().map(|&p| Prime::closed(z(p))).collect())
}

fn rationals() -> Module<Int> {
    Module::new(Ring::domain(), vec![vec![Atom::Loc(Cofin::all())]]).unwrap()
}

fn prufer(p: i64) -> Module<Int> {
    Module::new(Ring::domain(), vec![vec![Atom::LocModR(Cofin::singleton(z(p)))]]).unwrap()
}

#[test]
fn annihilators() {
    let r = zmod(12);
    let m = cyclic(&r, 12);
    let x = m.element(vec![vec![Frac::int(z(6))]], B).unwrap();
    assert_eq!(m.annihilator(&x).gens, vec![z(2)]);

    let zz = Module::new(Ring::domain(), vec![vec![Atom::Free]]).unwrap();
    let one = zz.element(vec![vec![Frac::int(z(1))]], B).unwrap();
    assert_eq!(zz.annihilator(&one).gens, vec![z(0)]);

    type F2 = Fpx<2>;
    let x2 = F2::parse_elem("x^2").unwrap();
    let r2 = Ring::quotient(x2.clone()).unwrap();
    let m2 = Module::new(r2, vec![vec![Atom::Free]]).unwrap();
    let e = m2.element(vec![vec![Frac::int(F2::x())]], B).unwrap();
    assert_eq!(m2.annihilator(&e).gens, vec![F2::x()]);
}

#[test]
fn minimal_primes() {
    let zr = Ring::<Int>::domain();
    let a = zr.principal(vec![z(12)]).unwrap();
    assert_eq!(
        zr.minimal_primes_over(&a, B).unwrap(),
        PrimeSet::Spec(Pointed::closed_points(Cofin::finite([z(2), z(3)])))
    );
    let zero = zr.principal(vec![z(0)]).unwrap();
    assert_eq!(zr.minimal_primes_over(&zero, B).unwrap(), PrimeSet::Spec(Pointed::generic_only()));
    let r = zmod(12);
    let zero = r.principal(vec![z(0)]).unwrap();
    assert_eq!(r.minimal_primes_over(&zero, B).unwrap(), primes(&[2, 3]));
    let unit = r.principal(vec![z(5)]).unwrap();
    assert!(r.minimal_primes_over(&unit, B).unwrap().is_empty());
}

#[test]
fn weak_ass_and_supports() {
    let r = zmod(12);
    let m = cyclic(&r, 12);
    assert_eq!(m.weak_ass(B).unwrap(), primes(&[2, 3]));
    assert_eq!(m.ass(B).unwrap(), primes(&[2, 3]));

    let q = rationals();
    let generic = PrimeSet::Spec(Pointed::generic_only());
    assert_eq!(q.ass(B).unwrap(), generic);
    assert_eq!(q.small_supp(B).unwrap(), generic);
    assert_eq!(q.big_supp(B).unwrap(), PrimeSet::Spec(Pointed::whole()));
    assert_eq!(prufer(5).weak_ass(B).unwrap(), PrimeSet::Spec(Pointed::closed_points(Cofin::singleton(z(5)))));

    let z8 = Module::new(Ring::domain(), vec![vec![Atom::Cyclic(z(8))]]).unwrap();
    let two = PrimeSet::Spec(Pointed::closed_points(Cofin::singleton(z(2))));
    assert_eq!(z8.small_supp(B).unwrap(), two);
    assert_eq!(z8.big_supp(B).unwrap(), two);
    assert!(Module::zero(Ring::<Int>::domain()).ass(B).unwrap().is_empty());
}

#[test]
fn localization() {
    let r = zmod(12);
    let m = cyclic(&r, 12);
    let l = m.localize(&r.prime(0, z(2)).unwrap());
    assert_eq!(l, cyclic(&r, 4));
    let q = rationals();
    assert_eq!(q.localize(&Prime::closed(z(7))), q);
    let zz = Module::new(Ring::domain(), vec![vec![Atom::Free]]).unwrap();
    assert_eq!(zz.localize(&Prime::closed(z(3))).parts()[0], vec![Atom::Loc(Cofin::cofinite([z(3)]))]);
}

#[test]
fn torsion() {
    let zr = Ring::<Int>::domain();
    let two = zr.principal(vec![z(2)]).unwrap();
    let z8 = Module::new(zr.clone(), vec![vec![Atom::Cyclic(z(8))]]).unwrap();
    assert!(z8.is_torsion(&two));
    assert!(!Module::new(zr.clone(), vec![vec![Atom::Free]]).unwrap().is_torsion(&two));
    assert!(prufer(2).is_torsion(&two));

    let r = zmod(12);
    let m = cyclic(&r, 12);
    let a = r.principal(vec![z(2)]).unwrap();
    assert_eq!(m.torsion_small(&a, B).unwrap(), cyclic(&r, 4));
    assert_eq!(m.torsion_large(&a, B).unwrap(), cyclic(&r, 4));
    let unit = r.principal(vec![z(1)]).unwrap();
    assert!(m.torsion_small(&unit, B).unwrap().is_zero());
    assert!(rationals().torsion_small(&zr.principal(vec![z(3)]).unwrap(), B).unwrap().is_zero());
    let zero = zr.principal(vec![z(0)]).unwrap();
    assert_eq!(rationals().torsion_large(&zero, B).unwrap(), rationals());
    let six = Ring::quotient(z(4)).unwrap();
    let z4 = cyclic(&six, 4);
    assert_eq!(z4.torsion_large(&six.principal(vec![z(6)]).unwrap(), B).unwrap(), z4);
}

#[test]
fn spectra() {
    assert_eq!(Ring::<Int>::domain().spec_space(B).unwrap(), Space::fan_z());
    let s = zmod(12).spec_space(B).unwrap();
    let Space::Poset(p) = s else { panic!() };
    assert_eq!(p.labels(), ["2", "3"]);
    assert!(p.relations().is_empty());
    type F2 = Fpx<2>;
    let r = Ring::quotient(F2::parse_elem("x^3+x^2").unwrap()).unwrap();
    let Space::Poset(p) = r.spec_space(B).unwrap() else { panic!() };
    assert_eq!(p.labels(), ["x", "x+1"]);
}

#[test]
fn presentations() {
    let zr = Ring::<Int>::domain();
    // <a, b | 2a + 4b, 6b> is Z/2 + Z/12.
    let rels = vec![vec![vec![z(2)], vec![z(4)]], vec![vec![z(0)], vec![z(6)]]];
    let p = Presented::new(zr.clone(), 2, &rels).unwrap();
    let mut want = Module::new(zr, vec![vec![Atom::Cyclic(z(2)), Atom::Cyclic(z(6))]]).unwrap();
    want = want.canonical(B).unwrap();
    assert_eq!(p.module().canonical(B).unwrap(), want);
    let b = p.element(&[vec![z(0)], vec![z(1)]], B).unwrap();
    assert_eq!(p.module().annihilator(&b).gens, vec![z(6)]);
}

#[test]
fn descriptors() {
    let d: ModuleDesc = serde_json::from_str(
        r#"{"ring":{"kind":"quotient","base":{"kind":"Z"},"modulus":"12"},"atoms":[{"type":"R"}]}"#,
    )
    .unwrap();
    let built = d.build::<Int>(B).unwrap();
    assert_eq!(built.module(), &cyclic(&zmod(12), 12));
    let x = built.element(&[Entry::One("6".into())], B).unwrap();
    assert_eq!(built.module().annihilator(&x).gens, vec![z(2)]);

    let prod: RingDesc = serde_json::from_str(
        r#"{"kind":"product","components":[{"kind":"quotient","base":{"kind":"Z"},"modulus":"4"},
            {"kind":"quotient","base":{"kind":"Z"},"modulus":"9"}]}"#,
    )
    .unwrap();
    let r = prod.build::<Int>().unwrap();
    assert_eq!(parse_prime(&r, "1:3").unwrap(), Prime { comp: 1, p: z(3) });
    assert!(parse_prime(&r, "0:3").is_err());

    let bad = r#"{"ring":{"kind":"Z"},"atoms":[{"type":"cyclic","d":"1"}]}"#;
    assert!(serde_json::from_str::<ModuleDesc>(bad).unwrap().build::<Int>(B).is_err());
    assert!(serde_json::from_str::<ModuleDesc>(r#"{"ring":{"kind":"Z"},"atoms":[],"x":1}"#).is_err());
    let zero_ring = r#"{"kind":"quotient","base":{"kind":"Z"},"modulus":"1"}"#;
    assert!(serde_json::from_str::<RingDesc>(zero_ring).unwrap().build::<Int>().is_err());
}

fn run(f: fn(&mut ChaCha8Rng, u64) -> checks::Check, seed: u64, n: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..n {
        if let Err(e) = f(&mut rng, B) {
            panic!("case {i}: {e}");
        }
    }
}

#[test]
fn finite_rings_match_enumeration() {
    run(checks::finite_case::<Int, _>, 1, 150);
    run(checks::finite_case::<Fpx<2>, _>, 2, 60);
    run(checks::finite_case::<Fpx<3>, _>, 3, 40);
}

#[test]
fn domain_identities() {
    run(checks::domain_case::<Int, _>, 4, 300);
    run(checks::domain_case::<Fpx<2>, _>, 5, 100);
}

#[test]
fn short_exact_sequences() {
    run(checks::serre_case::<Int, _>, 6, 200);
    run(checks::serre_case::<Fpx<3>, _>, 7, 60);
}
