//! Handlers for the single-object commands.

use super::Config;
use crate::arith::Euclid;
use crate::complexes::{self, Complex, ComplexDesc, Place};
use crate::error::{Error, Result};
use crate::ringmod::{parse_ideal, parse_prime, Entry, Ideal, Module, ModuleDesc, PrimeSet, Ring, RingDesc};
use crate::supports;
use crate::topology::{Space, Subset};
use crate::with_base;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

pub enum Request {
    Check(String),
    Op(String),
    Default,
}

pub type Handler = fn(&Value, &Request, &Config) -> Result<(Value, bool)>;

fn from<T: DeserializeOwned>(v: &Value) -> Result<T> {
    T::deserialize(v).map_err(|e| Error::input(e.to_string()))
}

fn unknown(kind: &str, name: &str, valid: &[&str]) -> Error {
    Error::input(format!("unknown {kind} {name:?}; expected one of {}", valid.join(", ")))
}

fn need<'a, T>(x: &'a Option<T>, field: &str, what: &str) -> Result<&'a T> {
    x.as_ref().ok_or_else(|| Error::input(format!("{what} needs \"{field}\" in the input")))
}

fn value(b: bool) -> Value {
    json!({ "value": b })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceInput {
    space: Space,
    #[serde(default)]
    subset: Option<Subset>,
    #[serde(default)]
    point: Option<String>,
}

const SPACE_CHECKS: &[&str] = &[
    "weakly-noetherian",
    "constructible-discrete",
    "hochster-weakly-scattered",
    "hochster-scattered",
    "thomason",
    "weakly-visible",
    "localizing-closed",
];

const SPACE_OPS: &[&str] = &[
    "closure",
    "gen",
    "complement",
    "localizing-closure",
    "constructible-closure",
    "hochster-dual",
    "weakly-visible-witness",
    "weakly-isolated-witness",
    "hochster-weak-witness",
    "non-localizing-closed-witness",
    "thomason-family",
];

pub fn space(input: &Value, req: &Request, cfg: &Config) -> Result<(Value, bool)> {
    let inp: SpaceInput = if input.get("space").is_some() {
        from(input)?
    } else {
        SpaceInput { space: from(input)?, subset: None, point: None }
    };
    let x = &inp.space;
    if let Some(s) = &inp.subset {
        x.check(s)?;
    }
    let subset = || need(&inp.subset, "subset", "this request");
    let point = || x.parse_point(need(&inp.point, "point", "this request")?);
    let out = match req {
        Request::Default => json!({
            "kind": x.kind(),
            "space": x,
            "weakly_noetherian": x.is_weakly_noetherian(),
            "constructible_discrete": x.is_constructible_discrete(),
        }),
        Request::Check(c) => match c.as_str() {
            "weakly-noetherian" => json!(x.is_weakly_noetherian()),
            "constructible-discrete" => value(x.is_constructible_discrete()),
            "hochster-weakly-scattered" => json!(x.is_hochster_weakly_scattered(cfg.poset_cap)?),
            "hochster-scattered" => json!(x.is_hochster_scattered(cfg.poset_cap)?),
            "thomason" => value(x.is_thomason(subset()?)?),
            "weakly-visible" => value(x.is_weakly_visible(subset()?)?),
            "localizing-closed" => value(x.is_localizing_closed(subset()?)?),
            other => return Err(unknown("check", other, SPACE_CHECKS)),
        },
        Request::Op(o) => match o.as_str() {
            "closure" => json!({ "subset": x.closure(subset()?)? }),
            "gen" => json!({ "subset": x.gen(&point()?)? }),
            "complement" => json!({ "subset": x.complement(subset()?) }),
            "localizing-closure" => json!({ "subset": x.localizing_closure(subset()?)? }),
            "constructible-closure" => json!({ "subset": x.constructible_closure(subset()?)? }),
            "hochster-dual" => json!({ "space": x.hochster_dual()? }),
            "weakly-visible-witness" => match x.weakly_visible_witness(subset()?)? {
                Some((u, v)) => json!({ "u": u, "v": v }),
                None => Value::Null,
            },
            "weakly-isolated-witness" => match x.weakly_isolated_witness(subset()?)? {
                Some((p, u)) => json!({ "point": p, "open": u }),
                None => Value::Null,
            },
            "hochster-weak-witness" => match x.hochster_weak_witness(subset()?)? {
                Some((p, u)) => json!({ "point": p, "open": u }),
                None => Value::Null,
            },
            "non-localizing-closed-witness" => json!({ "subset": x.non_localizing_closed_witness() }),
            "thomason-family" => json!({ "subsets": x.thomason_family(cfg.poset_cap)? }),
            other => return Err(unknown("op", other, SPACE_OPS)),
        },
    };
    Ok((out, false))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RingInput {
    ring: RingDesc,
    #[serde(default)]
    ideal: Option<Vec<Entry>>,
    #[serde(default)]
    prime: Option<String>,
}

fn prime_set_json<R: Euclid>(ring: &Ring<R>, s: &PrimeSet<R>) -> Value {
    let text = match s {
        PrimeSet::Spec(v) => supports::describe(v),
        PrimeSet::Finite(v) if v.is_empty() => "∅".to_string(),
        PrimeSet::Finite(v) => {
            let names: Vec<String> = v
                .iter()
                .map(|q| if ring.ncomps() > 1 { format!("{}:{q}", q.comp) } else { q.to_string() })
                .collect();
            format!("{{{}}}", names.join(", "))
        }
    };
    json!({ "subset": ring.to_subset(s), "text": text })
}

fn ideal_json<R: Euclid>(a: &Ideal<R>) -> Value {
    json!(a.gens.iter().map(|g| g.to_string()).collect::<Vec<_>>())
}

const RING_CHECKS: &[&str] = &["domain", "proper"];
const RING_OPS: &[&str] = &["spec-space", "primes", "minimal-primes", "zero-locus", "generalizations"];

pub fn ring(input: &Value, req: &Request, cfg: &Config) -> Result<(Value, bool)> {
    let inp: RingInput = if input.get("ring").is_some() {
        from(input)?
    } else {
        RingInput { ring: from(input)?, ideal: None, prime: None }
    };
    with_base!(inp.ring.base()?, R => ring_with::<R>(&inp, req, cfg.factor_bound))
}

fn ring_with<R: Euclid>(inp: &RingInput, req: &Request, bound: u64) -> Result<(Value, bool)> {
    let ring = inp.ring.build::<R>()?;
    let ideal = || parse_ideal(&ring, need(&inp.ideal, "ideal", "this request")?);
    let prime = || parse_prime(&ring, need(&inp.prime, "prime", "this request")?);
    let out = match req {
        Request::Default => json!({ "name": ring.name(), "domain": ring.is_domain(), "spec_space": ring.spec_space(bound)? }),
        Request::Check(c) => match c.as_str() {
            "domain" => value(ring.is_domain()),
            "proper" => value(ring.is_proper(&ideal()?)),
            other => return Err(unknown("check", other, RING_CHECKS)),
        },
        Request::Op(o) => match o.as_str() {
            "spec-space" => json!({ "space": ring.spec_space(bound)? }),
            "primes" => {
                let ps = ring.finite_primes(bound)?;
                json!({ "primes": ps.iter().map(|q| ring.label(q)).collect::<Vec<_>>() })
            }
            "minimal-primes" => prime_set_json(&ring, &ring.minimal_primes_over(&ideal()?, bound)?),
            "zero-locus" => prime_set_json(&ring, &ring.zero_locus(&ideal()?, bound)?),
            "generalizations" => prime_set_json(&ring, &ring.generalizations(&prime()?)),
            other => return Err(unknown("op", other, RING_OPS)),
        },
    };
    Ok((out, false))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleInput {
    module: ModuleDesc,
    #[serde(default)]
    element: Option<Vec<Entry>>,
    #[serde(default)]
    ideal: Option<Vec<Entry>>,
    #[serde(default)]
    prime: Option<String>,
}

fn module_json<R: Euclid>(m: &Module<R>) -> Value {
    json!({ "display": m.to_string(), "atoms": m.atom_descs() })
}

const MODULE_CHECKS: &[&str] = &["zero", "torsion"];
const MODULE_OPS: &[&str] = &[
    "canonical",
    "weak-ass",
    "ass",
    "small-supp",
    "big-supp",
    "annihilator",
    "localize",
    "torsion-small",
    "torsion-large",
];

pub fn module(input: &Value, req: &Request, cfg: &Config) -> Result<(Value, bool)> {
    let inp: ModuleInput = if input.get("module").is_some() {
        from(input)?
    } else {
        ModuleInput { module: from(input)?, element: None, ideal: None, prime: None }
    };
    with_base!(inp.module.ring.base()?, R => module_with::<R>(&inp, req, cfg.factor_bound))
}

fn module_with<R: Euclid>(inp: &ModuleInput, req: &Request, bound: u64) -> Result<(Value, bool)> {
    let built = inp.module.build::<R>(bound)?;
    let m = built.module();
    let ring = m.ring();
    let ideal = || parse_ideal(ring, need(&inp.ideal, "ideal", "this request")?);
    let prime = || parse_prime(ring, need(&inp.prime, "prime", "this request")?);
    let out = match req {
        Request::Default => json!({
            "module": module_json(&m.canonical(bound)?),
            "zero": m.is_zero(),
            "weak_ass": prime_set_json(ring, &m.weak_ass(bound)?),
            "big_supp": prime_set_json(ring, &m.big_supp(bound)?),
        }),
        Request::Check(c) => match c.as_str() {
            "zero" => value(m.is_zero()),
            "torsion" => value(m.is_torsion(&ideal()?)),
            other => return Err(unknown("check", other, MODULE_CHECKS)),
        },
        Request::Op(o) => match o.as_str() {
            "canonical" => module_json(&m.canonical(bound)?),
            "weak-ass" => prime_set_json(ring, &m.weak_ass(bound)?),
            "ass" => prime_set_json(ring, &m.ass(bound)?),
            "small-supp" => prime_set_json(ring, &m.small_supp(bound)?),
            "big-supp" => prime_set_json(ring, &m.big_supp(bound)?),
            "annihilator" => {
                let x = built.element(need(&inp.element, "element", "annihilator")?, bound)?;
                json!({ "ideal": ideal_json(&m.annihilator(&x)) })
            }
            "localize" => module_json(&m.localize(&prime()?)),
            "torsion-small" => module_json(&m.torsion_small(&ideal()?, bound)?),
            "torsion-large" => module_json(&m.torsion_large(&ideal()?, bound)?),
            other => return Err(unknown("op", other, MODULE_OPS)),
        },
    };
    Ok((out, false))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexInput {
    complex: ComplexDesc,
    #[serde(default)]
    prime: Option<String>,
}

fn complex_input(input: &Value) -> Result<ComplexInput> {
    if input.get("complex").is_some() {
        from(input)
    } else {
        Ok(ComplexInput { complex: from(input)?, prime: None })
    }
}

fn place_name<R: Euclid>(p: &Place<R>) -> String {
    match p {
        Place::Generic => "(0)".into(),
        Place::Closed(q) => format!("({q})"),
        Place::Default => "other closed points".into(),
    }
}

fn parse_place<R: Euclid>(s: &str) -> Result<Place<R>> {
    let s = s.trim();
    if s == "generic" || s == "0" || s == "(0)" {
        return Ok(Place::Generic);
    }
    let p = R::parse_elem(s.trim_start_matches('(').trim_end_matches(')'))?;
    if p.normalized() != p || !p.is_prime_elem() {
        return Err(Error::input(format!("{s} is not a normalized prime of {}", R::ring_name())));
    }
    Ok(Place::Closed(p))
}

fn homology_json<R: Euclid>(x: &Complex<R>, p: &Place<R>) -> Result<Value> {
    let h = complexes::homology(x, p)?;
    let degrees: serde_json::Map<String, Value> = h
        .iter()
        .map(|(n, m)| (n.to_string(), json!({ "text": m.to_string(), "data": m })))
        .collect();
    Ok(json!({ "place": place_name(p), "homology": degrees }))
}

const COMPLEX_CHECKS: &[&str] = &["zero", "zero-at", "perfect"];
const COMPLEX_OPS: &[&str] = &["show", "homology", "relevant-primes", "resolve"];

pub fn complex(input: &Value, req: &Request, cfg: &Config) -> Result<(Value, bool)> {
    let inp = complex_input(input)?;
    with_base!(inp.complex.ring.base()?, R => complex_with::<R>(&inp, req, cfg.factor_bound))
}

fn complex_with<R: Euclid>(inp: &ComplexInput, req: &Request, bound: u64) -> Result<(Value, bool)> {
    let x: Complex<R> = inp.complex.build(bound)?;
    let ring = inp.complex.ring.clone();
    let show = |y: &Complex<R>| json!({ "display": y.to_string(), "explicit": ComplexDesc::of(ring.clone(), y) });
    let place = || parse_place::<R>(need(&inp.prime, "prime", "this request")?);
    let out = match req {
        Request::Default => show(&x),
        Request::Check(c) => match c.as_str() {
            "zero" => value(complexes::is_zero(&x, bound)?),
            "zero-at" => value(complexes::homology(&x, &place()?)?.is_empty()),
            "perfect" => value(x.is_perfect()),
            other => return Err(unknown("check", other, COMPLEX_CHECKS)),
        },
        Request::Op(o) => match o.as_str() {
            "show" => show(&x),
            "resolve" => show(&x.resolve()),
            "relevant-primes" => {
                let ps = complexes::relevant_primes(&x, bound)?;
                json!({ "primes": ps.iter().map(|p| p.to_string()).collect::<Vec<_>>() })
            }
            "homology" => {
                let places = match &inp.prime {
                    Some(_) => vec![place()?],
                    None => {
                        let mut v = vec![Place::Generic, Place::Default];
                        v.extend(complexes::relevant_primes(&x, bound)?.into_iter().map(Place::Closed));
                        v
                    }
                };
                let hs = places.iter().map(|p| homology_json(&x, p)).collect::<Result<Vec<_>>>()?;
                json!({ "places": hs })
            }
            other => return Err(unknown("op", other, COMPLEX_OPS)),
        },
    };
    Ok((out, false))
}

pub fn support(input: &Value, req: &Request, cfg: &Config) -> Result<(Value, bool)> {
    if !matches!(req, Request::Default) {
        return Err(Error::input("support takes no --check or --op"));
    }
    let inp = complex_input(input)?;
    if inp.prime.is_some() {
        return Err(Error::input("support takes no \"prime\""));
    }
    with_base!(inp.complex.ring.base()?, R => {
        let x: Complex<R> = inp.complex.build(cfg.factor_bound)?;
        let r = supports::compare_supports(&x, cfg.factor_bound)?;
        let violated = !r.agree || !r.localizing_closed;
        Ok((json!(r), violated))
    })
}
