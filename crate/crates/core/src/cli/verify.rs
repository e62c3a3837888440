//! Named verification suites. Every case draws from its own generator,
//! seeded from the run seed, the invariant name and the case index, so
//! cases can run in parallel and any one of them can be replayed alone.

use super::{Config, Suite};
use crate::arith::{Fpx, Int};
use crate::complexes::checks as cx;
use crate::ringmod::checks as rm;
use crate::supports::checks as sp;
use crate::topology::checks as tp;
use crate::topology::Space;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::panic::{catch_unwind, AssertUnwindSafe};

pub type Check = rm::Check;
type Body = Box<dyn Fn(&mut ChaCha8Rng, usize) -> Check + Sync>;

/// A randomized invariant: `run(rng, case)` checks one case.
pub struct Invariant {
    pub suite: &'static str,
    pub name: &'static str,
    /// `false` for deterministic checks, which run once.
    pub random: bool,
    pub run: Body,
}

/// At most this many failures are kept per invariant.
const KEEP_FAILURES: usize = 5;

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub case: usize,
    pub case_seed: u64,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub suite: &'static str,
    pub name: &'static str,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<Failure>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub invariants: Vec<InvariantReport>,
    pub cases: usize,
    pub failed: usize,
    pub passed: bool,
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The seed of case `i` of the named invariant.
pub fn case_seed(seed: u64, name: &str, i: usize) -> u64 {
    let h = name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    splitmix(splitmix(seed ^ h) ^ i as u64)
}

/// Runs case `i` of `inv`, turning panics into failures.
pub fn run_case(inv: &Invariant, seed: u64, i: usize) -> std::result::Result<(), Failure> {
    let s = case_seed(seed, inv.name, i);
    let mut rng = ChaCha8Rng::seed_from_u64(s);
    let r = catch_unwind(AssertUnwindSafe(|| (inv.run)(&mut rng, i)));
    let message = match r {
        Ok(Ok(())) => return Ok(()),
        Ok(Err(m)) => m,
        Err(p) => {
            let m = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            format!("panic: {}", m.unwrap_or_default())
        }
    };
    Err(Failure { case: i, case_seed: s, message })
}

pub fn run_invariant(inv: &Invariant, seed: u64, cases: usize) -> InvariantReport {
    let n = if inv.random { cases } else { 1 };
    let results: Vec<_> = (0..n).into_par_iter().map(|i| run_case(inv, seed, i)).collect();
    let failures: Vec<Failure> = results.into_iter().filter_map(|r| r.err()).collect();
    InvariantReport {
        suite: inv.suite,
        name: inv.name,
        cases: n,
        passed: n - failures.len(),
        failed: failures.len(),
        failures: failures.into_iter().take(KEEP_FAILURES).collect(),
    }
}

pub fn run(suite: Suite, config: &Config) -> SuiteReport {
    let invariants: Vec<InvariantReport> =
        invariants(suite, config).iter().map(|inv| run_invariant(inv, config.seed, config.cases)).collect();
    let failed = invariants.iter().map(|r| r.failed).sum();
    SuiteReport {
        cases: invariants.iter().map(|r| r.cases).sum(),
        failed,
        passed: failed == 0,
        invariants,
    }
}

fn inv(suite: &'static str, name: &'static str, random: bool, run: Body) -> Invariant {
    Invariant { suite, name, random, run }
}

/// Alternates the integers and `F_2[x]` by case parity.
macro_rules! two_rings {
    ($m:ident :: $f:ident, $bound:expr) => {{
        let b = $bound;
        Box::new(move |rng: &mut ChaCha8Rng, i: usize| {
            if i % 2 == 0 {
                $m::$f::<Int, _>(rng, b)
            } else {
                $m::$f::<Fpx<2>, _>(rng, b)
            }
        }) as Body
    }};
}

pub fn invariants(suite: Suite, config: &Config) -> Vec<Invariant> {
    let (b, cap) = (config.factor_bound, config.poset_cap);
    let mut out = Vec::new();
    if matches!(suite, Suite::Topology | Suite::All) {
        let t = "topology";
        out.push(inv(t, "column localizing closure", true, Box::new(|rng, _| tp::localizing_case(rng))));
        out.push(inv(t, "scatteredness factorization on models", false, Box::new(move |_, _| tp::models_check(cap))));
        out.push(inv(t, "scatteredness factorization on posets", true, Box::new(move |rng, _| tp::poset_case(rng, cap))));
        out.push(inv(
            t,
            "subset calculus",
            true,
            Box::new(|rng, i| {
                let models = Space::models();
                tp::subset_case(&models[i % models.len()], rng)
            }),
        ));
    }
    if matches!(suite, Suite::Ringmod | Suite::All) {
        let r = "ringmod";
        out.push(inv(
            r,
            "finite rings against enumeration",
            true,
            Box::new(move |rng, i| match i % 3 {
                0 => rm::finite_case::<Int, _>(rng, b),
                1 => rm::finite_case::<Fpx<2>, _>(rng, b),
                _ => rm::finite_case::<Fpx<3>, _>(rng, b),
            }),
        ));
        out.push(inv(r, "domain supports and torsion", true, two_rings!(rm::domain_case, b)));
        out.push(inv(
            r,
            "short exact sequences",
            true,
            Box::new(move |rng, i| {
                if i % 2 == 0 {
                    rm::serre_case::<Int, _>(rng, b)
                } else {
                    rm::serre_case::<Fpx<3>, _>(rng, b)
                }
            }),
        ));
    }
    if matches!(suite, Suite::Complexes | Suite::All) {
        let c = "complexes";
        out.push(inv(c, "idempotents", true, two_rings!(cx::idempotent_case, b)));
        out.push(inv(c, "stable Koszul radical invariance", true, two_rings!(cx::radical_case, b)));
        out.push(inv(c, "tensor, shift and cone", true, two_rings!(cx::tensor_case, b)));
        out.push(inv(c, "homology of localizations", true, two_rings!(cx::localization_case, b)));
        out.push(inv(c, "projection formula", true, two_rings!(cx::projection_case, b)));
    }
    if matches!(suite, Suite::Supports | Suite::All) {
        let s = "supports";
        out.push(inv(
            s,
            "unit and zero",
            false,
            Box::new(move |_, _| sp::unit_and_zero::<Int>(b).and_then(|_| sp::unit_and_zero::<Fpx<2>>(b))),
        ));
        out.push(inv(s, "named fixtures", false, Box::new(move |_, _| sp::fixture_case(b))));
        out.push(inv(s, "support axioms", true, two_rings!(sp::axiom_case, b)));
        out.push(inv(s, "tt and bik supports agree", true, two_rings!(sp::compare_case, b)));
        out.push(inv(s, "detection", true, two_rings!(sp::detection_case, b)));
        out.push(inv(s, "minimal support sandwich", true, two_rings!(sp::sandwich_case, b)));
        out.push(inv(s, "base change", true, two_rings!(sp::base_change_case, b)));
        out.push(inv(s, "closed point assembly", true, two_rings!(sp::assembly_case, b)));
        out.push(inv(s, "detection from a cover", true, two_rings!(sp::cover_case, b)));
        out.push(inv(s, "column cover analysis", true, Box::new(|rng, _| sp::column_case(rng))));
        out.push(inv(s, "Koszul support radical invariance", true, two_rings!(sp::radical_supp_case, b)));
    }
    out
}
