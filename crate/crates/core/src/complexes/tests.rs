use super::*;
use crate::arith::{Fpx, Int, DEFAULT_FACTOR_BOUND as B};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn z(v: i64) -> Int {
    Int::from(v)
}

fn c(v: i64) -> Frac<Int> {
    Frac::int(z(v))
}

fn mult(n: i64) -> Complex<Int> {
    ChainMap::scalar(&Complex::unit(), &c(n)).cone()
}

fn cyclic(d: i64) -> Complex<Int> {
    Complex::atom(Atom::Cyclic(z(d)), 0)
}

fn at(p: i64) -> Place<Int> {
    if p == 0 {
        Place::Generic
    } else {
        Place::Closed(z(p))
    }
}

fn h(x: &Complex<Int>, p: i64) -> BTreeMap<i64, LocalHomology> {
    homology(x, &at(p)).unwrap()
}

fn tors(e: &[u32]) -> LocalHomology {
    LocalHomology { torsion: e.to_vec(), ..Default::default() }
}

fn same(x: &Complex<Int>, y: &Complex<Int>) -> bool {
    checks::same_homology(x, y, B).unwrap()
}

#[test]
fn cone_of_multiplication() {
    let x = mult(2);
    assert_eq!(x.to_string(), "(R)_1 --[2]--> (R)_0");
    assert_eq!(h(&x, 2), BTreeMap::from([(0, tors(&[1]))]));
    assert!(h(&x, 3).is_empty());
    assert!(h(&x, 0).is_empty());
    assert!(same(&x, &cyclic(2)));
    assert!(!same(&x, &cyclic(4)));
    assert!(!is_zero(&x, B).unwrap());
    assert!(relevant_primes(&x, B).unwrap().contains(&z(2)));
}

#[test]
fn tensor_of_cyclics() {
    assert!(is_zero(&cyclic(2).tensor(&cyclic(3)), B).unwrap());
    let x = cyclic(2).tensor(&cyclic(2));
    assert_eq!(h(&x, 2), BTreeMap::from([(0, tors(&[1])), (1, tors(&[1]))]));
    let y = cyclic(4).tensor(&cyclic(8));
    assert_eq!(h(&y, 2), BTreeMap::from([(0, tors(&[2])), (1, tors(&[2]))]));
}

#[test]
fn koszul_objects() {
    let k6 = Complex::unit().koszul(&z(6));
    assert!(same(&k6, &cyclic(6)));
    assert_eq!(h(&k6, 3), BTreeMap::from([(0, tors(&[1]))]));
    let k23 = Complex::unit().koszul_ideal(&[z(2), z(3)]);
    assert!(is_zero(&k23, B).unwrap());
    let k44 = Complex::unit().koszul_ideal(&[z(4), z(6)]);
    assert!(same(&k44, &Complex::unit().koszul_ideal(&[z(2), z(2)])));
}

#[test]
fn stable_koszul() {
    let k = Complex::stable_koszul(&[z(3)], B).unwrap();
    let prufer = LocalHomology { divisible: 1, ..Default::default() };
    assert_eq!(h(&k, 3), BTreeMap::from([(-1, prufer)]));
    assert!(h(&k, 2).is_empty());
    assert!(h(&k, 0).is_empty());
    assert!(is_zero(&Complex::stable_koszul(&[z(1)], B).unwrap(), B).unwrap());
    assert!(is_zero(&Complex::stable_koszul(&[z(2), z(3)], B).unwrap(), B).unwrap());
    let whole = Complex::stable_koszul(&[z(0)], B).unwrap();
    assert!(same(&whole, &Complex::unit()));
    assert!(same(&Complex::stable_koszul(&[z(12)], B).unwrap(), &Complex::stable_koszul(&[z(6)], B).unwrap()));
}

#[test]
fn localization_at_primes() {
    let x = cyclic(6);
    let l2 = x.localize(&MultSet::Outside(z(2)), B).unwrap();
    assert!(same(&l2, &cyclic(2)));
    let q = Complex::atom(Atom::Loc(Cofin::all()), 0);
    for p in [0, 2, 5] {
        let want = LocalHomology { fraction: 1, ..Default::default() };
        assert_eq!(h(&q, p), BTreeMap::from([(0, want)]));
    }
    let l = cyclic(3).localize(&MultSet::Outside(z(2)), B).unwrap();
    assert!(is_zero(&l, B).unwrap());
    assert!(is_zero(&cyclic(5).localize(&MultSet::Outside(z(0)), B).unwrap(), B).unwrap());
    assert!(is_zero(&cyclic(4).localize(&MultSet::Powers(z(2)), B).unwrap(), B).unwrap());
}

#[test]
fn local_homology_shapes() {
    let zz = Complex::<Int>::unit();
    assert_eq!(h(&zz, 5), BTreeMap::from([(0, LocalHomology { local: 1, ..Default::default() })]));
    let q_mod_z = Complex::atom(Atom::LocModR(Cofin::all()), 2);
    let hq = h(&q_mod_z, 7);
    assert_eq!(hq[&2].divisible, 1);
    assert_eq!(hq[&2].to_string(), "(K/V)");
    assert!(h(&q_mod_z, 0).is_empty());
    let x = Complex::new(0, vec![vec![Atom::Free], vec![Atom::Free, Atom::Free]], vec![Mat::from_rows(2, vec![vec![c(4), c(0)]])])
        .unwrap();
    let hx = h(&x, 2);
    assert_eq!(hx[&0], tors(&[2]));
    assert_eq!(hx[&1], LocalHomology { local: 1, ..Default::default() });
}

#[test]
fn idempotent_examples() {
    let y = Pointed::closed_points(Cofin::singleton(z(2)));
    let (e, f) = Complex::idempotents(&y).unwrap();
    assert!(same(&e, &Complex::stable_koszul(&[z(2)], B).unwrap()));
    assert!(is_zero(&e.tensor(&f), B).unwrap());
    assert!(same(&e.tensor(&cyclic(4)), &cyclic(4)));
    assert!(is_zero(&f.tensor(&cyclic(4)), B).unwrap());
    assert!(same(&f.tensor(&cyclic(3)), &cyclic(3)));
    let bad = Pointed::new(Cofin::empty(), true);
    assert!(Complex::<Int>::idempotents(&bad).is_err());
    let (e, f) = Complex::<Int>::idempotents(&Pointed::whole()).unwrap();
    assert!(same(&e, &Complex::unit()) && f.is_empty());
}

#[test]
fn chain_maps_are_validated() {
    let s = Complex::atom(Atom::Cyclic(z(4)), 0);
    let t = Complex::atom(Atom::Cyclic(z(6)), 0);
    assert!(ChainMap::new(s.clone(), t.clone(), BTreeMap::from([(0, Mat::from_rows(1, vec![vec![c(3)]]))])).is_ok());
    assert!(ChainMap::new(s, t, BTreeMap::from([(0, Mat::from_rows(1, vec![vec![c(1)]]))])).is_err());
    let bad = Complex::new(0, vec![vec![Atom::Free], vec![Atom::Loc(Cofin::all())]], vec![Mat::from_rows(1, vec![vec![c(1)]])]);
    assert!(bad.is_err());
    let not_complex = Complex::new(
        0,
        vec![vec![Atom::Free], vec![Atom::Free], vec![Atom::Free]],
        vec![Mat::from_rows(1, vec![vec![c(1)]]), Mat::from_rows(1, vec![vec![c(1)]])],
    );
    assert!(not_complex.is_err());
}

#[test]
fn vanishing_oracles_agree_on_examples() {
    for x in [mult(2), cyclic(6), Complex::stable_koszul(&[z(6)], B).unwrap(), cyclic(2).tensor(&cyclic(2))] {
        for p in [2, 3, 5] {
            assert_eq!(h(&x, p).is_empty(), rank_oracle_is_zero_at(&x, &z(p)), "{x} at {p}");
        }
    }
}

#[test]
fn descriptors_round_trip() {
    let json = r#"{"ring": {"kind": "Z"}, "build": {"op": "tensor", "of": [
        {"op": "koszul", "of": {"op": "unit"}, "elements": ["6"]},
        {"op": "e", "set": {"kind": "finite", "primes": ["2"]}}]}}"#;
    let d: ComplexDesc = serde_json::from_str(json).unwrap();
    let x: Complex<Int> = d.build(B).unwrap();
    assert!(same(&x, &cyclic(2)));
    let back = ComplexDesc::of(d.ring.clone(), &x);
    let text = serde_json::to_string(&back).unwrap();
    let y: Complex<Int> = serde_json::from_str::<ComplexDesc>(&text).unwrap().build(B).unwrap();
    assert_eq!(x, y);
    let explicit = r#"{"ring": {"kind": "Z"}, "lo": 0, "hi": 1, "terms": {"0": [{"type": "R"}], "1": [{"type": "R"}]},
        "diffs": {"1": [["2"]]}}"#;
    let x: Complex<Int> = serde_json::from_str::<ComplexDesc>(explicit).unwrap().build(B).unwrap();
    assert_eq!(x, mult(2));
    let bad = r#"{"ring": {"kind": "Z"}, "build": {"op": "e", "set": {"kind": "finite", "primes": ["4"]}}}"#;
    assert!(serde_json::from_str::<ComplexDesc>(bad).unwrap().build::<Int>(B).is_err());
}

#[test]
fn polynomial_ring() {
    type P = Fpx<3>;
    let x = P::x();
    let k = Complex::<P>::unit().koszul(&(x.clone() * x.clone()));
    let h = homology(&k, &Place::Closed(x.clone())).unwrap();
    assert_eq!(h[&0].torsion, vec![2]);
    assert!(homology(&k, &Place::Closed(x.clone() + P::one())).unwrap().is_empty());
    assert!(is_zero(&Complex::<P>::unit().koszul_ideal(&[x.clone(), x + P::one()]), B).unwrap());
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

random_suite!(random_idempotents, idempotent_case, 40);
random_suite!(random_radicals, radical_case, 40);
random_suite!(random_tensors, tensor_case, 40);
random_suite!(random_localizations, localization_case, 40);
random_suite!(random_projection, projection_case, 40);
