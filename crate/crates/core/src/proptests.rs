use crate::arith::linalg::{smith, Mat};
use crate::arith::{xgcd, Euclid, Fpx, Frac, Int, DEFAULT_FACTOR_BOUND as B};
use crate::complexes::{checks as cx, random, Complex};
use crate::supports::{checks as sp, compare_supports};
use crate::topology::{Cofin, ColumnSet, HeightSet, Space, Subset};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Sets of heights built from the basic shapes, with a membership oracle.
#[derive(Clone, Debug)]
enum Expr {
    Finite(Vec<u64>),
    Tail(u64),
    Prog(u64, u64),
    Union(Box<Expr>, Box<Expr>),
    Meet(Box<Expr>, Box<Expr>),
    Not(Box<Expr>),
}

impl Expr {
    fn eval(&self) -> HeightSet {
        match self {
            Expr::Finite(v) => HeightSet::from_finite(v.iter().copied()),
            Expr::Tail(n) => HeightSet::tail(*n),
            Expr::Prog(o, p) => HeightSet::progression(*o, *p),
            Expr::Union(a, b) => a.eval().union(&b.eval()),
            Expr::Meet(a, b) => a.eval().intersect(&b.eval()),
            Expr::Not(a) => a.eval().complement(),
        }
    }

    fn has(&self, n: u64) -> bool {
        match self {
            Expr::Finite(v) => v.contains(&n),
            Expr::Tail(t) => n >= *t,
            Expr::Prog(o, p) => n >= *o && (n - o) % p == 0,
            Expr::Union(a, b) => a.has(n) || b.has(n),
            Expr::Meet(a, b) => a.has(n) && b.has(n),
            Expr::Not(a) => !a.has(n),
        }
    }
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        prop::collection::vec(0u64..20, 0..5).prop_map(Expr::Finite),
        (0u64..20).prop_map(Expr::Tail),
        (0u64..12, 1u64..6).prop_map(|(o, p)| Expr::Prog(o, p)),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Union(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Meet(Box::new(a), Box::new(b))),
            inner.prop_map(|a| Expr::Not(Box::new(a))),
        ]
    })
}

// Periods divide 60 and prefixes stay below 20, so 400 heights decide a set.
const HORIZON: u64 = 400;

fn cofin() -> impl Strategy<Value = Cofin<u64>> {
    (any::<bool>(), prop::collection::vec(0u64..12, 0..5))
        .prop_map(|(co, v)| if co { Cofin::cofinite(v) } else { Cofin::finite(v) })
}

fn small_int() -> impl Strategy<Value = Int> {
    (-60i64..60).prop_map(Int::from)
}

fn fpx3() -> impl Strategy<Value = Fpx<3>> {
    prop::collection::vec(0u64..3, 0..5).prop_map(Fpx::from_coeffs)
}

fn frac() -> impl Strategy<Value = Frac<Int>> {
    (small_int(), (1i64..30).prop_map(Int::from)).prop_map(|(n, d)| Frac::new(n, d))
}

fn mat_mul<R: Euclid>(x: &Mat<R>, y: &Mat<R>) -> Mat<R> {
    Mat::from_fn(x.rows, y.cols, |i, j| {
        (0..x.cols).fold(R::zero(), |s, k| s + x.a[i][k].clone() * y.a[k][j].clone())
    })
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn heights_match_oracle(e in expr()) {
        let h = e.eval();
        for n in 0..HORIZON {
            prop_assert_eq!(h.contains(n), e.has(n), "height {}", n);
        }
        prop_assert_eq!(h.is_finite(), (HORIZON - 60..HORIZON).all(|n| !e.has(n)));
    }

    #[test]
    fn heights_normal_form_is_canonical(a in expr(), b in expr()) {
        let same = (0..HORIZON).all(|n| a.has(n) == b.has(n));
        prop_assert_eq!(a.eval() == b.eval(), same);
    }

    #[test]
    fn heights_serde_round_trip(e in expr()) {
        let h = e.eval();
        let back: HeightSet = serde_json::from_str(&serde_json::to_string(&h).unwrap()).unwrap();
        prop_assert_eq!(back, h);
    }

    #[test]
    fn cofin_boolean_laws(a in cofin(), b in cofin(), c in cofin()) {
        prop_assert_eq!(a.complement().complement(), a.clone());
        prop_assert_eq!(a.union(&b).complement(), a.complement().intersect(&b.complement()));
        prop_assert_eq!(a.intersect(&b.union(&c)), a.intersect(&b).union(&a.intersect(&c)));
        prop_assert_eq!(a.minus(&b), a.intersect(&b.complement()));
        prop_assert_eq!(a.is_subset(&b), a.union(&b) == b);
        for n in 0..16 {
            prop_assert_eq!(a.union(&b).contains(&n), a.contains(&n) || b.contains(&n));
        }
    }

    #[test]
    fn column_localizing_closed(e in expr(), inf in any::<bool>()) {
        let c = ColumnSet { heights: e.eval(), inf };
        let finite = c.heights.is_finite();
        let s = Subset::ChromaticColumn(c);
        prop_assert_eq!(Space::Column.is_localizing_closed(&s).unwrap(), inf || finite);
    }

    #[test]
    fn frac_field_laws(a in frac(), b in frac(), c in frac()) {
        prop_assert_eq!((a.clone() + b.clone()) - b.clone(), a.clone());
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        if !b.num().is_zero() {
            prop_assert_eq!(a.clone() * b.clone() * b.inv(), a.clone());
        }
    }

    #[test]
    fn frac_normal_form(n in small_int(), d in (1i64..30).prop_map(Int::from), k in (1i64..20).prop_map(Int::from)) {
        prop_assert_eq!(Frac::new(n.clone() * k.clone(), d.clone() * k), Frac::new(n, d));
    }

    #[test]
    fn xgcd_bezout_int(a in small_int(), b in small_int()) {
        let (g, s, t) = xgcd(&a, &b);
        prop_assert_eq!(s * a.clone() + t * b.clone(), g.clone());
        if !g.is_zero() {
            prop_assert!(a.rem_e(&g).is_zero() && b.rem_e(&g).is_zero());
        }
    }

    #[test]
    fn euclidean_division_fpx(a in fpx3(), b in fpx3()) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem_e(&b);
        prop_assert_eq!(q * b.clone() + r.clone(), a.clone());
        prop_assert!(r.is_zero() || r.degree() < b.degree());
        let (g, s, t) = xgcd(&a, &b);
        prop_assert_eq!(s * a + t * b, g);
    }

    #[test]
    fn smith_diagonalizes(rows in 1usize..4, cols in 1usize..4, entries in prop::collection::vec(-9i64..10, 9)) {
        let m = Mat::from_fn(rows, cols, |i, j| Int::from(entries[i * 3 + j]));
        let s = smith(&m);
        let d = mat_mul(&mat_mul(&s.u, &m), &s.v);
        for i in 0..rows {
            for j in 0..cols {
                let want = if i == j && i < s.diag.len() { s.diag[i].clone() } else { Int::zero() };
                prop_assert_eq!(&d.a[i][j], &want);
            }
        }
        prop_assert_eq!(mat_mul(&s.v, &s.v_inv), Mat::identity(cols));
        for w in s.diag.windows(2) {
            prop_assert!(w[0].is_zero() && w[1].is_zero() || w[1].rem_e(&w[0]).is_zero());
        }
        prop_assert!(s.diag.iter().all(|x| x.is_zero() || x.unit_part().is_one()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn tensor_shift_cone(seed in any::<u64>()) {
        prop_assert_eq!(cx::tensor_case::<Int, _>(&mut rng(seed), B), Ok(()));
        prop_assert_eq!(cx::tensor_case::<Fpx<2>, _>(&mut rng(seed), B), Ok(()));
    }

    #[test]
    fn supports_axioms(seed in any::<u64>()) {
        prop_assert_eq!(sp::axiom_case::<Int, _>(&mut rng(seed), B), Ok(()));
    }

    #[test]
    fn supports_agree_and_are_localizing_closed(seed in any::<u64>()) {
        let mut g = rng(seed);
        let x: Complex<Int> = random::complex(&mut g);
        let r = compare_supports(&x, B).unwrap();
        prop_assert!(r.agree && r.localizing_closed, "{}: tt {}, bik {}", r.object, r.tt_text, r.bik_text);
        let y: Complex<Fpx<2>> = random::complex(&mut g);
        let r = compare_supports(&y, B).unwrap();
        prop_assert!(r.agree && r.localizing_closed, "{}: tt {}, bik {}", r.object, r.tt_text, r.bik_text);
    }
}
