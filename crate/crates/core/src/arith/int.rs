use super::Euclid;
use crate::error::{Error, Result};
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

/// Arbitrary-precision integers.
pub type Int = BigInt;

impl Euclid for BigInt {
    fn ring_name() -> String {
        "Z".to_string()
    }

    fn characteristic() -> u64 {
        0
    }

    fn div_rem_e(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero");
        let r = self.mod_floor(&d.abs());
        let q = (self - &r) / d;
        (q, r)
    }

    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }

    fn unit_part(&self) -> Self {
        if self.sign() == Sign::Minus {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }

    fn unit_inverse(&self) -> Self {
        assert!(self.is_unit());
        self.clone()
    }

    fn factor_with(&self, bound: u64) -> Result<Vec<(Self, u32)>> {
        let mut n = self.abs();
        assert!(!n.is_zero());
        let mut out = Vec::new();
        let push = |p: BigInt, e: u32, out: &mut Vec<(BigInt, u32)>| {
            if e > 0 {
                out.push((p, e));
            }
        };
        let mut d: u64 = 2;
        while !n.is_one() {
            let db = BigInt::from(d);
            if &db * &db > n {
                push(n.clone(), 1, &mut out);
                n = BigInt::one();
                break;
            }
            if d > bound {
                break;
            }
            let mut e = 0;
            while (&n % &db).is_zero() {
                n /= &db;
                e += 1;
            }
            push(db, e, &mut out);
            d += if d == 2 { 1 } else { 2 };
        }
        if !n.is_one() {
            if probably_prime(&n) {
                out.push((n, 1));
            } else {
                return Err(Error::resource(format!(
                    "cannot factor {self} with trial division bound {bound}"
                )));
            }
        }
        out.sort();
        Ok(out)
    }

    fn primes() -> Box<dyn Iterator<Item = Self>> {
        Box::new(
            (2u64..)
                .filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
                .map(BigInt::from),
        )
    }

    fn residues(m: &Self, limit: usize) -> Option<Vec<Self>> {
        let n = m.abs().to_usize()?;
        if n > limit {
            return None;
        }
        Some((0..n).map(BigInt::from).collect())
    }

    fn parse_elem(s: &str) -> Result<Self> {
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::input(format!("not an integer: {s:?}")))
    }

    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn random<G: Rng + ?Sized>(rng: &mut G, size: u32) -> Self {
        let s = size.max(1) as i64;
        BigInt::from(rng.gen_range(-s..=s))
    }
}

/// Miller-Rabin with the first twelve prime bases; deterministic below 3.3e24.
fn probably_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if n < &two {
        return false;
    }
    let bases = [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in bases {
        let b = BigInt::from(b);
        if &b == n {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let nm1: BigInt = n - 1u32;
    let mut d = nm1.clone();
    let mut s = 0;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'outer: for b in bases {
        let mut x = BigInt::from(b).modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == nm1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{gcd, xgcd};

    fn z(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn remainder_is_nonnegative() {
        assert_eq!(z(-7).div_rem_e(&z(3)), (z(-3), z(2)));
        assert_eq!(z(7).div_rem_e(&z(-3)), (z(-2), z(1)));
    }

    #[test]
    fn factors_small_and_large() {
        assert_eq!(z(12).factor_with(1000).unwrap(), vec![(z(2), 2), (z(3), 1)]);
        let big = z(1_000_003) * z(1_000_033);
        assert_eq!(
            big.factor_with(10).unwrap_err().exit_code(),
            3,
            "semiprime beyond the bound is a resource error"
        );
        let p = z(1_000_000_007);
        assert_eq!(p.factor_with(100).unwrap(), vec![(p.clone(), 1)]);
    }

    #[test]
    fn bezout() {
        let (g, s, t) = xgcd(&z(12), &z(-18));
        assert_eq!(g, z(6));
        assert_eq!(s * z(12) + t * z(-18), z(6));
        assert_eq!(gcd(&z(0), &z(-4)), z(4));
    }

    #[test]
    fn first_primes() {
        let ps: Vec<_> = BigInt::primes().take(5).collect();
        assert_eq!(ps, vec![z(2), z(3), z(5), z(7), z(11)]);
    }
}
