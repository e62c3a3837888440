use super::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn diamond() -> Space {
    let pts = ["a", "b", "c", "d"].map(String::from).to_vec();
    let le = [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")]
        .map(|(x, y)| (x.to_string(), y.to_string()))
        .to_vec();
    Space::Poset(FinitePoset::new(pts, &le).unwrap())
}

fn pts(s: &[&str]) -> Subset {
    Subset::FinitePoset(s.iter().map(|x| x.to_string()).collect())
}

#[test]
fn poset_closure_and_gen() {
    let x = diamond();
    assert_eq!(x.closure(&pts(&["b"])).unwrap(), pts(&["b", "d"]));
    assert_eq!(x.gen(&Point::Label("d".into())).unwrap(), x.whole());
    assert!(x.is_thomason(&pts(&["b", "c", "d"])).unwrap());
    assert!(!x.is_thomason(&pts(&["b", "c"])).unwrap());
}

#[test]
fn poset_rejects_cycles() {
    let pts = vec!["a".to_string(), "b".to_string()];
    let le = vec![("a".into(), "b".into()), ("b".into(), "a".into())];
    assert!(FinitePoset::new(pts, &le).is_err());
}

#[test]
fn poset_weakly_visible_matches_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..30 {
        let n = rand::Rng::gen_range(&mut rng, 1..=6);
        let p = FinitePoset::random(&mut rng, n, 0.4);
        let ups = p.up_sets();
        for s in 0..=p.full() {
            let found = ups.iter().any(|&u| ups.iter().any(|&v| u & !v == s));
            assert_eq!(p.weakly_visible_witness(s).is_some(), found);
        }
    }
}

#[test]
fn finite_spaces_are_scattered() {
    let x = diamond();
    let v = x.is_hochster_scattered(DEFAULT_POSET_CAP).unwrap();
    assert!(v.value && v.weakly_noetherian && v.hochster_weakly_scattered);
}

#[test]
fn infinity_space() {
    let x = Space::SInfinity;
    let odd = Subset::SInfinity(Pointed::closed_points(Cofin::finite([1, 3])));
    assert!(x.is_thomason(&odd).unwrap());
    assert!(!x.is_thomason(&Subset::SInfinity(Pointed::generic_only())).unwrap());
    assert_eq!(x.closure(&x.singleton(&Point::Infinity).unwrap()).unwrap(), x.whole());
    let v = x.is_hochster_scattered(DEFAULT_POSET_CAP).unwrap();
    assert!(v.value);
    let cofinite = Subset::SInfinity(Pointed::closed_points(Cofin::cofinite([0])));
    assert!(x.contains(&x.constructible_closure(&cofinite).unwrap(), &Point::Infinity));
}

#[test]
fn column_is_not_scattered() {
    let x = Space::Column;
    assert_eq!(x.is_weakly_noetherian().witness, Some(Point::Height(Ht::Inf)));
    let (p, u) = x.hochster_weak_witness(&x.empty()).unwrap().unwrap();
    assert_eq!((p, u), (Point::Height(Ht::Inf), x.whole()));
    let v = x.is_hochster_scattered(DEFAULT_POSET_CAP).unwrap();
    assert!(!v.value && v.failing == Some(x.whole()));
    let evens = x.non_localizing_closed_witness().unwrap();
    assert!(!x.is_localizing_closed(&evens).unwrap());
    assert!(x.contains(&x.localizing_closure(&evens).unwrap(), &Point::Height(Ht::Inf)));
}

#[test]
fn column_weakly_visible_sets() {
    let x = Space::Column;
    let iv = Subset::ChromaticColumn(ColumnSet::new(HeightSet::interval(2, 5), false));
    assert!(x.is_weakly_visible(&iv).unwrap());
    let gap = Subset::ChromaticColumn(ColumnSet::new(HeightSet::from_finite([1, 3]), false));
    assert!(!x.is_weakly_visible(&gap).unwrap());
}

#[test]
fn plane_witnesses() {
    let x = Space::Plane;
    let (p, _) = x.hochster_weak_witness(&x.empty()).unwrap().unwrap();
    assert_eq!(p, Point::Plane(2, Ht::Inf));
    let y = Subset::ChromaticPlane(PlaneSet::new(ColumnSet::tail(1), [(3, ColumnSet::tail(4))].into(), false));
    let (p, u) = x.hochster_weak_witness(&y).unwrap().unwrap();
    assert_eq!(p, Point::Plane(3, Ht::Fin(3)));
    assert!(x.is_subset(&x.minus(&u, &y), &x.gen(&p).unwrap()));
    assert!(x.is_hochster_scattered(DEFAULT_POSET_CAP).is_ok());
}

#[test]
fn plane_generic_closure() {
    let x = Space::Plane;
    let g = x.singleton(&Point::Generic).unwrap();
    assert_eq!(x.closure(&g).unwrap(), x.whole());
    assert!(!x.is_thomason(&g).unwrap());
}

#[test]
fn fan_labels_are_canonical() {
    let z = Space::fan_z();
    assert!(z.parse_point("7").is_ok());
    assert!(z.parse_point("-7").is_err());
    assert!(z.parse_point("9").is_err());
    let f2 = Space::Fan(FanBase::Fpx(2));
    assert!(f2.parse_point("x^2+x+1").is_ok());
    assert!(f2.parse_point("x^2+1").is_err());
    assert!(FanBase::parse("Fp[x]", Some(4)).is_err());
}

#[test]
fn subset_json_roundtrip() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for x in Space::models() {
        for _ in 0..20 {
            let s = x.random_subset(&mut rng);
            x.check(&s).unwrap();
            let j = serde_json::to_string(&s).unwrap();
            let back: Subset = serde_json::from_str(&j).unwrap();
            assert_eq!(back, s);
        }
        let j = serde_json::to_string(&x).unwrap();
        let back: Space = serde_json::from_str(&j).unwrap();
        assert_eq!(back, x);
    }
}

#[test]
fn space_json_rejects_unknown_fields() {
    assert!(serde_json::from_str::<Space>(r#"{"kind":"s_infinity","extra":1}"#).is_err());
    let x: Space = serde_json::from_str(r#"{"kind":"fan","base":"Fp[x]","p":3}"#).unwrap();
    assert_eq!(x, Space::Fan(FanBase::Fpx(3)));
}

#[test]
fn random_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        checks::localizing_case(&mut rng).unwrap();
    }
    for _ in 0..60 {
        checks::poset_case(&mut rng, DEFAULT_POSET_CAP).unwrap();
    }
    checks::models_check(DEFAULT_POSET_CAP).unwrap();
    for x in Space::models() {
        for _ in 0..40 {
            checks::subset_case(&x, &mut rng).unwrap();
        }
    }
}
