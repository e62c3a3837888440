use super::Euclid;
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use rand::Rng;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomials over the prime field with `P` elements, coefficients stored
/// low degree first with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Fpx<const P: u64> {
    c: Vec<u64>,
}

fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "inverse of zero");
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

impl<const P: u64> Fpx<P> {
    pub fn from_coeffs(c: Vec<u64>) -> Self {
        let mut c: Vec<u64> = c.into_iter().map(|v| v % P).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        Fpx { c }
    }

    pub fn x() -> Self {
        Self::from_coeffs(vec![0, 1])
    }

    pub fn constant(v: u64) -> Self {
        Self::from_coeffs(vec![v])
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    fn lead(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    /// The `i`-th monic polynomial of degree `d`, in the canonical order.
    fn monic_nth(d: usize, mut i: u64) -> Self {
        let mut c = vec![0; d + 1];
        c[d] = 1;
        for slot in c.iter_mut().take(d) {
            *slot = i % P;
            i /= P;
        }
        Fpx { c }
    }

    fn count_monic(d: usize) -> Option<u64> {
        P.checked_pow(d as u32)
    }

    fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else { return false };
        if n == 0 {
            return false;
        }
        for d in 1..=n / 2 {
            for i in 0..Self::count_monic(d).unwrap_or(u64::MAX) {
                if self.rem_e(&Self::monic_nth(d, i)).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Largest divisor degree tried during factorization.
const MAX_FACTOR_DEGREE: usize = 8;

impl<const P: u64> Ord for Fpx<P> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c
            .len()
            .cmp(&other.c.len())
            .then_with(|| self.c.iter().rev().cmp(other.c.iter().rev()))
    }
}

impl<const P: u64> PartialOrd for Fpx<P> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<const P: u64> fmt::Display for Fpx<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &v) in self.c.iter().enumerate().rev() {
            if v == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (k, v) {
                (0, v) => write!(f, "{v}")?,
                (1, 1) => write!(f, "x")?,
                (1, v) => write!(f, "{v}x")?,
                (k, 1) => write!(f, "x^{k}")?,
                (k, v) => write!(f, "{v}x^{k}")?,
            }
        }
        Ok(())
    }
}

impl<const P: u64> fmt::Debug for Fpx<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<const P: u64> Zero for Fpx<P> {
    fn zero() -> Self {
        Fpx { c: vec![] }
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
}

impl<const P: u64> One for Fpx<P> {
    fn one() -> Self {
        Fpx { c: vec![1] }
    }
}

impl<const P: u64> Add for Fpx<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| self.c.get(i).unwrap_or(&0) + o.c.get(i).unwrap_or(&0))
            .collect();
        Self::from_coeffs(c)
    }
}

impl<const P: u64> Neg for Fpx<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_coeffs(self.c.iter().map(|v| (P - v) % P).collect())
    }
}

impl<const P: u64> Sub for Fpx<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<const P: u64> Mul for Fpx<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.c.is_empty() || o.c.is_empty() {
            return Self::zero();
        }
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b) % P;
            }
        }
        Self::from_coeffs(c)
    }
}

impl<const P: u64> Euclid for Fpx<P> {
    fn ring_name() -> String {
        format!("F{P}[x]")
    }

    fn characteristic() -> u64 {
        P
    }

    fn div_rem_e(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero");
        let li = inv_mod(d.lead(), P);
        let mut r = self.c.clone();
        let mut q = vec![0u64; self.c.len().saturating_sub(dd).max(1)];
        while r.len() > dd {
            let k = r.len() - 1 - dd;
            let t = r[r.len() - 1] * li % P;
            q[k] = t;
            for (i, &v) in d.c.iter().enumerate() {
                r[k + i] = (r[k + i] + P - v * t % P) % P;
            }
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    fn is_unit(&self) -> bool {
        self.c.len() == 1
    }

    fn unit_part(&self) -> Self {
        if self.c.is_empty() {
            Self::one()
        } else {
            Self::constant(self.lead())
        }
    }

    fn unit_inverse(&self) -> Self {
        assert!(self.is_unit());
        Self::constant(inv_mod(self.c[0], P))
    }

    fn factor_with(&self, bound: u64) -> Result<Vec<(Self, u32)>> {
        let mut n = self.normalized();
        assert!(!n.is_zero());
        let mut out = Vec::new();
        let mut work = 0u64;
        let mut d = 1;
        'deg: while n.degree().unwrap_or(0) >= 2 * d {
            if d > MAX_FACTOR_DEGREE {
                break;
            }
            let count = Self::count_monic(d).unwrap_or(u64::MAX);
            for i in 0..count {
                work += 1;
                if work > bound {
                    break 'deg;
                }
                let q = Self::monic_nth(d, i);
                let mut e = 0;
                loop {
                    let (a, r) = n.div_rem_e(&q);
                    if !r.is_zero() {
                        break;
                    }
                    n = a;
                    e += 1;
                }
                if e > 0 {
                    out.push((q, e));
                }
                if n.degree().unwrap_or(0) < 2 * d {
                    break;
                }
            }
            d += 1;
        }
        if let Some(nd) = n.degree() {
            if nd > 0 {
                if nd >= 2 * d && !n.is_irreducible_bounded(bound) {
                    return Err(Error::resource(format!(
                        "cannot factor {self} within the work budget {bound}"
                    )));
                }
                out.push((n, 1));
            }
        }
        out.sort();
        Ok(out)
    }

    fn primes() -> Box<dyn Iterator<Item = Self>> {
        Box::new(
            (1usize..)
                .flat_map(|d| (0..Self::count_monic(d).unwrap_or(u64::MAX)).map(move |i| (d, i)))
                .map(|(d, i)| Self::monic_nth(d, i))
                .filter(|q| q.is_irreducible()),
        )
    }

    fn residues(m: &Self, limit: usize) -> Option<Vec<Self>> {
        let d = m.degree()?;
        let n = Self::count_monic(d)?;
        if n > limit as u64 {
            return None;
        }
        Some(
            (0..n)
                .map(|mut i| {
                    let mut c = vec![0; d];
                    for slot in c.iter_mut() {
                        *slot = i % P;
                        i /= P;
                    }
                    Self::from_coeffs(c)
                })
                .collect(),
        )
    }

    fn parse_elem(s: &str) -> Result<Self> {
        parse_poly::<P>(s).ok_or_else(|| Error::input(format!("not a polynomial over F{P}: {s:?}")))
    }

    fn from_i64(v: i64) -> Self {
        Self::constant(v.rem_euclid(P as i64) as u64)
    }

    fn random<G: Rng + ?Sized>(rng: &mut G, size: u32) -> Self {
        let maxdeg = (32 - size.max(1).leading_zeros()).saturating_sub(1).min(4) as usize;
        let d = rng.gen_range(0..=maxdeg);
        Self::from_coeffs((0..=d).map(|_| rng.gen_range(0..P)).collect())
    }
}

impl<const P: u64> Fpx<P> {
    /// Irreducibility by trial division, giving up after `bound` divisors.
    fn is_irreducible_bounded(&self, bound: u64) -> bool {
        let n = self.degree().unwrap_or(0);
        let mut work = 0u64;
        for d in 1..=n / 2 {
            for i in 0..Self::count_monic(d).unwrap_or(u64::MAX) {
                work += 1;
                if work > bound {
                    return false;
                }
                if self.rem_e(&Self::monic_nth(d, i)).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

fn parse_poly<const P: u64>(s: &str) -> Option<Fpx<P>> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    let mut acc = Fpx::<P>::zero();
    let mut terms = Vec::new();
    let mut cur = String::new();
    for (i, ch) in s.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    for t in terms {
        let (neg, body) = match t.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, t.strip_prefix('+').unwrap_or(&t)),
        };
        if body.is_empty() {
            return None;
        }
        let term = match body.find('x') {
            None => Fpx::<P>::constant(body.parse::<u64>().ok()? % P),
            Some(pos) => {
                let coef = body[..pos].trim_end_matches('*');
                let c = if coef.is_empty() { 1 } else { coef.parse::<u64>().ok()? % P };
                let rest = &body[pos + 1..];
                let e = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')?.parse::<usize>().ok()?
                };
                let mut v = vec![0; e + 1];
                v[e] = c;
                Fpx::from_coeffs(v)
            }
        };
        acc = if neg { acc - term } else { acc + term };
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    type F2 = Fpx<2>;
    type F3 = Fpx<3>;

    fn p2(s: &str) -> F2 {
        F2::parse_elem(s).unwrap()
    }

    #[test]
    fn display_roundtrip() {
        for s in ["0", "1", "x", "x^2+x+1", "x^5+x^2"] {
            assert_eq!(p2(s).to_string(), s);
        }
        assert_eq!(F3::parse_elem("2x^2-x+4").unwrap().to_string(), "2x^2+2x+1");
    }

    #[test]
    fn division() {
        let (q, r) = p2("x^3+1").div_rem_e(&p2("x+1"));
        assert_eq!((q, r), (p2("x^2+x+1"), F2::zero()));
        let (q, r) = p2("x^2").div_rem_e(&p2("x+1"));
        assert_eq!(q * p2("x+1") + r.clone(), p2("x^2"));
        assert!(r.degree().unwrap_or(0) < 1);
    }

    #[test]
    fn irreducibles_over_f2() {
        let ps: Vec<String> = F2::primes().take(5).map(|p| p.to_string()).collect();
        assert_eq!(ps, ["x", "x+1", "x^2+x+1", "x^3+x+1", "x^3+x^2+1"]);
    }

    #[test]
    fn factorization() {
        let f = p2("x^2") * p2("x+1");
        assert_eq!(f.factor_with(1000).unwrap(), vec![(p2("x"), 2), (p2("x+1"), 1)]);
        let g = p2("x^2+x+1") * p2("x^2+x+1") * p2("x^3+x+1");
        assert_eq!(
            g.factor_with(1000).unwrap(),
            vec![(p2("x^2+x+1"), 2), (p2("x^3+x+1"), 1)]
        );
    }

    #[test]
    fn order_is_degree_first() {
        assert!(p2("x^2") > p2("x+1"));
        assert!(p2("x+1") > p2("x"));
    }
}
