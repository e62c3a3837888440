//! Acceptance run: one pass/fail line per criterion.

use rand_chacha::ChaCha8Rng;
use std::time::Instant;
use ttsupport::arith::{Fpx, Int, DEFAULT_FACTOR_BOUND as B};
use ttsupport::cli::verify::{run_invariant, Check, Invariant};
use ttsupport::complexes::checks as cx;
use ttsupport::ringmod::checks as rm;
use ttsupport::supports::checks as sp;
use ttsupport::topology::checks as tp;
use ttsupport::topology::{Point, Space, Subset, DEFAULT_POSET_CAP as CAP};

const SEED: u64 = 20_241_017;

struct Line {
    ok: bool,
    cases: usize,
    detail: Vec<String>,
}

impl Line {
    fn new() -> Self {
        Line { ok: true, cases: 0, detail: Vec::new() }
    }

    fn expect(&mut self, what: &str, ok: bool) {
        self.cases += 1;
        if !ok {
            self.ok = false;
            self.detail.push(what.to_string());
        }
    }

    fn batch(&mut self, name: &'static str, n: usize, f: impl Fn(&mut ChaCha8Rng, usize) -> Check + Sync + 'static) {
        let inv = Invariant { suite: "acceptance", name, random: true, run: Box::new(f) };
        let r = run_invariant(&inv, SEED, n);
        self.cases += r.cases;
        if r.failed > 0 {
            self.ok = false;
            let first = r.failures.first().map(|f| f.message.clone()).unwrap_or_default();
            self.detail.push(format!("{name}: {}/{} failed, first: {first}", r.failed, r.cases));
        }
    }

    fn once(&mut self, name: &str, r: Check) {
        self.cases += 1;
        if let Err(e) = r {
            self.ok = false;
            self.detail.push(format!("{name}: {e}"));
        }
    }
}

macro_rules! both_rings {
    ($m:ident :: $f:ident) => {
        |rng: &mut ChaCha8Rng, i: usize| {
            if i % 2 == 0 {
                $m::$f::<Int, _>(rng, B)
            } else {
                $m::$f::<Fpx<2>, _>(rng, B)
            }
        }
    };
}

fn ground_truth() -> Line {
    let mut l = Line::new();
    let (sinf, col, fan) = (Space::SInfinity, Space::Column, Space::fan_z());
    l.expect("S_inf weakly Noetherian", sinf.is_weakly_noetherian().value);
    l.expect("S_inf not constructible discrete", !sinf.is_constructible_discrete());
    let wn = col.is_weakly_noetherian();
    l.expect("column not weakly Noetherian, witness inf", !wn.value && wn.witness == Some(Point::Height(ttsupport::topology::Ht::Inf)));
    match col.is_hochster_weakly_scattered(CAP) {
        Ok(v) => l.expect(
            &format!(
                "column Hochster weakly scattered: expected false failing at ∅, computed {} (the empty set is witnessed by inf with U the whole column)",
                v.value
            ),
            !v.value && v.failing == Some(Subset::ChromaticColumn(ttsupport::topology::ColumnSet::empty())),
        ),
        Err(e) => l.expect(&format!("column weakly scattered: {e}"), false),
    }
    l.expect("fan Hochster scattered", fan.is_hochster_scattered(CAP).map(|v| v.value).unwrap_or(false));
    l
}

fn localizing_closure() -> Line {
    let mut l = Line::new();
    l.batch("column localizing closure", 500, |rng, _| tp::localizing_case(rng));
    l
}

fn scatteredness() -> Line {
    let mut l = Line::new();
    l.once("model instances", tp::models_check(CAP));
    l.batch("random posets", 50, |rng, _| tp::poset_case(rng, CAP));
    l
}

fn algebra_lemmas() -> Line {
    let mut l = Line::new();
    l.batch("domain supports and torsion", 300, both_rings!(rm::domain_case));
    l.batch("short exact sequences", 300, |rng, i| match i % 3 {
        0 => rm::serre_case::<Int, _>(rng, B),
        1 => rm::serre_case::<Fpx<2>, _>(rng, B),
        _ => rm::serre_case::<Fpx<3>, _>(rng, B),
    });
    l.batch("finite rings and products", 300, |rng, i| match i % 3 {
        0 => rm::finite_case::<Int, _>(rng, B),
        1 => rm::finite_case::<Fpx<2>, _>(rng, B),
        _ => rm::finite_case::<Fpx<3>, _>(rng, B),
    });
    l
}

fn oracle_equivalence() -> Line {
    let mut l = Line::new();
    l.batch("normal forms against enumeration", 120, |rng, i| match i % 3 {
        0 => rm::finite_case::<Int, _>(rng, B),
        1 => rm::finite_case::<Fpx<2>, _>(rng, B),
        _ => rm::finite_case::<Fpx<3>, _>(rng, B),
    });
    l
}

fn idempotents() -> Line {
    let mut l = Line::new();
    l.batch("idempotent calculus", 100, both_rings!(cx::idempotent_case));
    l.batch("stable Koszul radical invariance", 100, both_rings!(cx::radical_case));
    l
}

fn axioms() -> Line {
    let mut l = Line::new();
    l.once("unit and zero over Z", sp::unit_and_zero::<Int>(B));
    l.once("unit and zero over F2[x]", sp::unit_and_zero::<Fpx<2>>(B));
    l.batch("support axioms", 200, both_rings!(sp::axiom_case));
    l
}

fn comparison() -> Line {
    let mut l = Line::new();
    l.once("named fixtures", sp::fixture_case(B));
    l.batch("tt and bik agree", 200, both_rings!(sp::compare_case));
    l
}

fn detection() -> Line {
    let mut l = Line::new();
    l.batch("detection", 200, both_rings!(sp::detection_case));
    l
}

fn base_change() -> Line {
    let mut l = Line::new();
    l.batch("finite localization", 100, both_rings!(sp::base_change_case));
    l.batch("closed point assembly", 100, both_rings!(sp::assembly_case));
    l.batch("homology of localizations", 100, both_rings!(cx::localization_case));
    l
}

fn local_to_global() -> Line {
    let mut l = Line::new();
    l.batch("fan cover detection", 100, both_rings!(sp::cover_case));
    l.batch("column cover analysis", 100, |rng, _| sp::column_case(rng));
    l
}

fn main() {
    let criteria: [(&str, fn() -> Line); 11] = [
        ("topology ground truth", ground_truth),
        ("localizing closure on the column", localizing_closure),
        ("scatteredness factorization", scatteredness),
        ("commutative algebra identities", algebra_lemmas),
        ("oracle equivalence on finite rings", oracle_equivalence),
        ("idempotent calculus", idempotents),
        ("support axioms", axioms),
        ("tt and bik comparison", comparison),
        ("detection", detection),
        ("base change and assembly", base_change),
        ("local-to-global certificates", local_to_global),
    ];
    let start = Instant::now();
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let line = f();
        let status = if line.ok { "pass" } else { "FAIL" };
        println!("[{status}] {:>2}. {name} ({} cases, {:.1}s)", i + 1, line.cases, t.elapsed().as_secs_f64());
        for d in &line.detail {
            println!("         {d}");
        }
        if !line.ok {
            failed.push(i + 1);
        }
    }
    println!("{} of {} criteria passed in {:.1}s", criteria.len() - failed.len(), criteria.len(), start.elapsed().as_secs_f64());
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
