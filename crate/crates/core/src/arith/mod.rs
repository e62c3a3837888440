//! Exact scalar arithmetic: the Euclidean-domain trait, its two instances
//! (integers and polynomials over a prime field), fractions, residue fields
//! and small linear algebra.

mod frac;
mod int;
pub mod linalg;
mod poly;

pub use frac::{Frac, FracField, ResidueField};
pub use int::Int;
pub use poly::Fpx;

use crate::error::Result;
use num_traits::{One, Zero};
use rand::Rng;
use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

/// Default work budget for factorization (trial divisors tried).
pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000;

/// A Euclidean domain with decidable factorization at desk scale.
///
/// `Ord` is a total order used only for canonical forms; for integers it is
/// the numeric order, for polynomials degree-then-coefficients.
pub trait Euclid:
    Clone
    + Eq
    + Ord
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Name of the ring as used in descriptors ("Z", "F2[x]", ...).
    fn ring_name() -> String;

    /// 0 for the integers, `p` for `F_p[x]`.
    fn characteristic() -> u64;

    /// Euclidean division: `self = q * d + r` with `r` smaller than `d`.
    fn div_rem_e(&self, d: &Self) -> (Self, Self);

    fn is_unit(&self) -> bool;

    /// The unit `u` with `self = u * normalized(self)`; one for zero.
    fn unit_part(&self) -> Self;

    /// Inverse of a unit.
    fn unit_inverse(&self) -> Self;

    /// Prime factorization of a nonzero nonunit normalized element.
    fn factor_with(&self, bound: u64) -> Result<Vec<(Self, u32)>>;

    /// Primes in canonical order, starting from the smallest.
    fn primes() -> Box<dyn Iterator<Item = Self>>;

    /// All residues modulo a nonzero `m`, if there are at most `limit` of them.
    fn residues(m: &Self, limit: usize) -> Option<Vec<Self>>;

    fn parse_elem(s: &str) -> Result<Self>;

    fn from_i64(v: i64) -> Self;

    /// A random element of size roughly bounded by `size`.
    fn random<G: Rng + ?Sized>(rng: &mut G, size: u32) -> Self;

    /// A random prime among the first few.
    fn random_prime<G: Rng + ?Sized>(rng: &mut G, among: usize) -> Self {
        let k = rng.gen_range(0..among.max(1));
        Self::primes().nth(k).expect("infinitely many primes")
    }

    fn normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.clone() * self.unit_part().unit_inverse()
    }

    fn rem_e(&self, d: &Self) -> Self {
        self.div_rem_e(d).1
    }

    fn divides(&self, x: &Self) -> bool {
        if self.is_zero() {
            return x.is_zero();
        }
        x.rem_e(self).is_zero()
    }

    /// Exact quotient; panics if `d` does not divide `self`.
    fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem_e(d);
        assert!(r.is_zero(), "inexact division {self} / {d}");
        q
    }

    fn is_prime_elem(&self) -> bool {
        if self.is_zero() || self.is_unit() {
            return false;
        }
        match self.normalized().factor_with(DEFAULT_FACTOR_BOUND) {
            Ok(f) => f.len() == 1 && f[0].1 == 1,
            Err(_) => false,
        }
    }

    /// Number of times the prime `p` divides a nonzero element.
    fn valuation(&self, p: &Self) -> u32 {
        assert!(!self.is_zero());
        let mut x = self.clone();
        let mut v = 0;
        loop {
            let (q, r) = x.div_rem_e(p);
            if !r.is_zero() {
                return v;
            }
            x = q;
            v += 1;
        }
    }

    /// Distinct normalized prime divisors.
    fn prime_divisors(&self, bound: u64) -> Result<Vec<Self>> {
        if self.is_zero() || self.is_unit() {
            return Ok(vec![]);
        }
        Ok(self
            .normalized()
            .factor_with(bound)?
            .into_iter()
            .map(|(p, _)| p)
            .collect())
    }
}

pub fn gcd<R: Euclid>(a: &R, b: &R) -> R {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.rem_e(&y);
        x = y;
        y = r;
    }
    x.normalized()
}

/// Returns `(g, s, t)` with `g = s*a + t*b` and `g` normalized.
pub fn xgcd<R: Euclid>(a: &R, b: &R) -> (R, R, R) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (R::one(), R::zero());
    let (mut t0, mut t1) = (R::zero(), R::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem_e(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let s = s0 - q.clone() * s1.clone();
        s0 = std::mem::replace(&mut s1, s);
        let t = t0 - q * t1.clone();
        t0 = std::mem::replace(&mut t1, t);
    }
    if r0.is_zero() {
        return (r0, R::one(), R::zero());
    }
    let u = r0.unit_part().unit_inverse();
    (r0 * u.clone(), s0 * u.clone(), t0 * u)
}

pub fn lcm<R: Euclid>(a: &R, b: &R) -> R {
    if a.is_zero() || b.is_zero() {
        return R::zero();
    }
    (a.clone() * b.exact_div(&gcd(a, b))).normalized()
}

/// `a^e`.
pub fn pow<R: Euclid>(a: &R, e: u32) -> R {
    let mut out = R::one();
    for _ in 0..e {
        out = out * a.clone();
    }
    out
}

/// Product of the distinct primes dividing `a` (the radical generator).
pub fn radical<R: Euclid>(a: &R, bound: u64) -> Result<R> {
    if a.is_zero() {
        return Ok(R::zero());
    }
    Ok(a.prime_divisors(bound)?
        .into_iter()
        .fold(R::one(), |acc, p| acc * p))
}

/// Primes `p` for which `F_p[x]` is available at runtime.
pub const SUPPORTED_FIELD_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

/// Runs `$body` with `$P` bound to the runtime prime `$p` as a const.
#[macro_export]
macro_rules! with_field_prime {
    ($p:expr, $P:ident => $body:expr) => {
        match $p {
            2 => { const $P: u64 = 2; $body }
            3 => { const $P: u64 = 3; $body }
            5 => { const $P: u64 = 5; $body }
            7 => { const $P: u64 = 7; $body }
            11 => { const $P: u64 = 11; $body }
            13 => { const $P: u64 = 13; $body }
            other => Err($crate::error::Error::unsupported(format!(
                "F_p[x] is available for p in {:?}, not {}",
                $crate::arith::SUPPORTED_FIELD_PRIMES, other
            ))),
        }
    };
}
