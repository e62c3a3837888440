use super::{gcd, xgcd, Euclid};
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// An element of the fraction field, kept in lowest terms with a
/// normalized denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Frac<R: Euclid> {
    num: R,
    den: R,
}

impl<R: Euclid> Frac<R> {
    pub fn new(num: R, den: R) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Frac { num, den: R::one() };
        }
        if den.is_one() {
            return Frac { num, den };
        }
        let g = gcd(&num, &den);
        let (n, d) = (num.exact_div(&g), den.exact_div(&g));
        let u = d.unit_part().unit_inverse();
        Frac { num: n * u.clone(), den: d * u }
    }

    pub fn int(r: R) -> Self {
        Frac { num: r, den: R::one() }
    }

    pub fn num(&self) -> &R {
        &self.num
    }

    pub fn den(&self) -> &R {
        &self.den
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Self {
        Frac::new(self.den.clone(), self.num.clone())
    }

    /// `p`-adic valuation; `None` for zero.
    pub fn valuation(&self, p: &R) -> Option<i64> {
        if self.num.is_zero() {
            return None;
        }
        Some(self.num.valuation(p) as i64 - self.den.valuation(p) as i64)
    }

    /// Reduction into `R/(p)` of an element with denominator prime to `p`.
    pub fn reduce(&self, p: &R) -> Option<R> {
        let (g, s, _) = xgcd(&self.den, p);
        if !g.is_one() {
            return None;
        }
        Some((self.num.clone() * s).rem_e(p))
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.split_once('/') {
            None => Ok(Frac::int(R::parse_elem(s)?)),
            Some((a, b)) => {
                let den = R::parse_elem(b.trim_matches(|c| c == '(' || c == ')'))?;
                if den.is_zero() {
                    return Err(Error::input(format!("zero denominator in {s:?}")));
                }
                Ok(Frac::new(R::parse_elem(a.trim_matches(|c| c == '(' || c == ')'))?, den))
            }
        }
    }
}

impl<R: Euclid> fmt::Display for Frac<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let paren = |s: String| {
            if s.contains('+') {
                format!("({s})")
            } else {
                s
            }
        };
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", paren(self.num.to_string()), paren(self.den.to_string()))
        }
    }
}

impl<R: Euclid> fmt::Debug for Frac<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<R: Euclid> Zero for Frac<R> {
    fn zero() -> Self {
        Frac::int(R::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<R: Euclid> One for Frac<R> {
    fn one() -> Self {
        Frac::int(R::one())
    }
}

impl<R: Euclid> Add for Frac<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        if o.num.is_zero() {
            return self;
        }
        if self.num.is_zero() {
            return o;
        }
        if self.den.is_one() && o.den.is_one() {
            return Frac { num: self.num + o.num, den: self.den };
        }
        if self.den == o.den {
            return Frac::new(self.num + o.num, self.den);
        }
        Frac::new(
            self.num * o.den.clone() + o.num * self.den.clone(),
            self.den * o.den,
        )
    }
}

impl<R: Euclid> Sub for Frac<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<R: Euclid> Neg for Frac<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Frac { num: -self.num, den: self.den }
    }
}

impl<R: Euclid> Mul for Frac<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Frac { num: self.num * o.num, den: self.den };
        }
        Frac::new(self.num * o.num, self.den * o.den)
    }
}

impl<R: Euclid> Div for Frac<R> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self * o.inv()
    }
}

/// A field given as a context object, so that residue fields can carry
/// their modulus.
pub trait Field: Sync {
    type E: Clone + PartialEq + fmt::Debug + Send + Sync;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;

    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.add(a, &self.neg(b))
    }
}

/// The fraction field of `R`.
pub struct FracField<R>(PhantomData<fn() -> R>);

impl<R> Default for FracField<R> {
    fn default() -> Self {
        FracField(PhantomData)
    }
}

impl<R: Euclid> Field for FracField<R> {
    type E = Frac<R>;
    fn zero(&self) -> Frac<R> {
        Frac::zero()
    }
    fn one(&self) -> Frac<R> {
        Frac::one()
    }
    fn add(&self, a: &Frac<R>, b: &Frac<R>) -> Frac<R> {
        a.clone() + b.clone()
    }
    fn neg(&self, a: &Frac<R>) -> Frac<R> {
        -a.clone()
    }
    fn mul(&self, a: &Frac<R>, b: &Frac<R>) -> Frac<R> {
        a.clone() * b.clone()
    }
    fn inv(&self, a: &Frac<R>) -> Frac<R> {
        a.inv()
    }
    fn is_zero(&self, a: &Frac<R>) -> bool {
        a.is_zero()
    }
}

/// The residue field `R/(p)` for a prime `p`; elements are reduced residues.
pub struct ResidueField<R: Euclid> {
    pub p: R,
}

impl<R: Euclid> ResidueField<R> {
    pub fn new(p: R) -> Self {
        ResidueField { p }
    }

    pub fn reduce(&self, a: &R) -> R {
        a.rem_e(&self.p)
    }
}

impl<R: Euclid> Field for ResidueField<R> {
    type E = R;
    fn zero(&self) -> R {
        R::zero()
    }
    fn one(&self) -> R {
        R::one().rem_e(&self.p)
    }
    fn add(&self, a: &R, b: &R) -> R {
        (a.clone() + b.clone()).rem_e(&self.p)
    }
    fn neg(&self, a: &R) -> R {
        (-a.clone()).rem_e(&self.p)
    }
    fn mul(&self, a: &R, b: &R) -> R {
        (a.clone() * b.clone()).rem_e(&self.p)
    }
    fn inv(&self, a: &R) -> R {
        let (g, s, _) = xgcd(a, &self.p);
        assert!(g.is_one(), "not invertible mod {}", self.p);
        s.rem_e(&self.p)
    }
    fn is_zero(&self, a: &R) -> bool {
        a.rem_e(&self.p).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Int;

    fn q(a: i64, b: i64) -> Frac<Int> {
        Frac::new(Int::from(a), Int::from(b))
    }

    #[test]
    fn lowest_terms() {
        assert_eq!(q(4, -6), q(-2, 3));
        assert_eq!(q(1, 2) + q(1, 3), q(5, 6));
        assert_eq!(q(0, 5), Frac::zero());
        assert_eq!(q(3, 4).to_string(), "3/4");
        assert_eq!(Frac::<Int>::parse("-3/6").unwrap(), q(-1, 2));
    }

    #[test]
    fn valuation_and_reduction() {
        assert_eq!(q(12, 5).valuation(&Int::from(2)), Some(2));
        assert_eq!(q(3, 8).valuation(&Int::from(2)), Some(-3));
        assert_eq!(q(1, 2).reduce(&Int::from(5)), Some(Int::from(3)));
        assert_eq!(q(1, 5).reduce(&Int::from(5)), None);
    }
}
