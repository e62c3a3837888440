use super::*;
use crate::arith::{Fpx, Int, DEFAULT_FACTOR_BOUND as B};
use crate::complexes::MultSet;
use crate::ringmod::Atom;
use crate::topology::{ColumnSet, HeightSet};
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn z(v: i64) -> Int {
    Int::from(v)
}

fn cyclic(d: i64) -> Complex<Int> {
    Complex::atom(Atom::Cyclic(z(d)), 0)
}

fn closed(ps: &[i64]) -> FanSet<Int> {
    Pointed::closed_points(Cofin::finite(ps.iter().map(|&p| z(p))))
}

fn rationals() -> Complex<Int> {
    Complex::atom(Atom::Loc(Cofin::all()), 0)
}

#[test]
fn named_fixtures() {
    checks::fixture_case(B).unwrap();
    assert_eq!(checks::fixtures(B).len(), 8);
}

#[test]
fn report_shape() {
    let r = compare_supports(&cyclic(6), B).unwrap();
    assert!(r.agree && !r.zero && r.localizing_closed);
    assert_eq!(r.tt_text, "{(2), (3)}");
    assert!(r.witnesses.iter().any(|w| matches!(w, Witness::Tt { point, .. } if point == "(0)")));
    assert!(r.witnesses.iter().any(|w| matches!(w, Witness::Bik { representative: true, .. })));
    let r = compare_supports(&Complex::<Int>::zero(), B).unwrap();
    assert!(r.zero && r.agree && r.tt_text == "∅");
    let q = compare_supports(&rationals(), B).unwrap();
    assert_eq!(q.tt_text, "{(0)}");
    let loc = compare_supports(&Complex::atom(Atom::Loc(Cofin::singleton(z(2))), 0), B).unwrap();
    assert_eq!(loc.tt_text, "{(0)} ∪ closed points except {(2)}");
}

#[test]
fn detection_examples() {
    for x in [cyclic(4), rationals(), Complex::stable_koszul(&[z(2)], B).unwrap()] {
        assert!(!tt_supp(&x, B).unwrap().is_empty());
        assert!(!bik_supp(&x, B).unwrap().is_empty());
    }
    assert!(tt_supp(&Complex::<Int>::zero(), B).unwrap().is_empty());
}

#[test]
fn sandwich_examples() {
    let q = rationals();
    assert_eq!(minimal(&homology_small_supp(&q, B).unwrap()), Pointed::generic_only());
    assert_eq!(homology_big_supp(&q, B).unwrap(), Pointed::whole());
    let c = cyclic(3);
    assert_eq!(homology_small_supp(&c, B).unwrap(), closed(&[3]));
    assert_eq!(homology_big_supp(&c, B).unwrap(), closed(&[3]));
    assert_eq!(homology_small_supp(&Complex::<Int>::unit(), B).unwrap(), Pointed::generic_only());
}

#[test]
fn base_change_examples() {
    let y = closed(&[2]);
    let loc = crate::complexes::FiniteLocalization::new(y.clone()).unwrap();
    assert_eq!(tt_supp(&loc.apply(&cyclic(3)), B).unwrap(), closed(&[3]));
    assert!(tt_supp(&loc.apply(&cyclic(2)), B).unwrap().is_empty());
    assert_eq!(tt_supp(&loc.apply(&Complex::unit()), B).unwrap(), y.complement());
}

#[test]
fn assembly_examples() {
    let x = cyclic(5);
    let l5 = x.localize(&MultSet::Outside(z(5)), B).unwrap();
    assert_eq!(tt_supp(&l5, B).unwrap(), closed(&[5]));
    let l2 = x.localize(&MultSet::Outside(z(2)), B).unwrap();
    assert!(tt_supp(&l2, B).unwrap().is_empty());
    let u2 = Complex::<Int>::unit().localize(&MultSet::Outside(z(2)), B).unwrap();
    assert_eq!(tt_supp(&u2, B).unwrap(), Pointed::new(Cofin::singleton(z(2)), true));
}

#[test]
fn column_covers() {
    let good = [ColumnSet::new(HeightSet::interval(0, 3), false), ColumnSet::tail(3)];
    assert_eq!(column_cover(&good).unwrap(), ColumnCover { member: 1, height: 3 });
    let missing_inf = [ColumnSet::new(HeightSet::interval(0, 3), false)];
    assert!(matches!(column_cover(&missing_inf), Err(Error::Input(_))));
    let gap = [ColumnSet::new(HeightSet::interval(0, 2), false), ColumnSet::tail(3)];
    assert!(column_cover(&gap).is_err());
}

#[test]
fn polynomial_fixtures() {
    type P = Fpx<2>;
    let x = P::x();
    let c = Complex::<P>::atom(Atom::Cyclic(x.clone() * (x.clone() + P::one())), 0);
    let s = supports(&c, B).unwrap();
    assert!(s.agree());
    assert_eq!(s.tt, Pointed::closed_points(Cofin::finite([x.clone(), x + P::one()])));
}

macro_rules! random_suite {
    ($name:ident, $case:ident, $n:expr) => {
        #[test]
        fn $name() {
            for seed in 0..$n {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                checks::$case::<Int, _>(&mut rng, B).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                checks::$case::<Fpx<2>, _>(&mut rng, B).unwrap_or_else(|e| panic!("F2[x] seed {seed}: {e}"));
            }
        }
    };
}

random_suite!(random_axioms, axiom_case, 10);
random_suite!(random_comparison, compare_case, 25);
random_suite!(random_detection, detection_case, 25);
random_suite!(random_sandwich, sandwich_case, 25);
random_suite!(random_base_change, base_change_case, 15);
random_suite!(random_assembly, assembly_case, 15);
random_suite!(random_cover, cover_case, 25);
random_suite!(random_radical_support, radical_supp_case, 25);

#[test]
fn random_column_covers() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..200 {
        checks::column_case(&mut rng).unwrap();
    }
}

#[test]
fn identities() {
    checks::unit_and_zero::<Int>(B).unwrap();
    checks::unit_and_zero::<Fpx<3>>(B).unwrap();
}
