//! Arbitrary-precision rationals in lowest terms.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ExactError;

/// A rational number `numer / denom` with `gcd(|numer|, denom) = 1` and `denom > 0`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(num_rational_inner::Ratio);

// Thin private wrapper so the public type does not leak the backing crate.
mod num_rational_inner {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Signed, Zero};
    use std::cmp::Ordering;

    #[derive(Clone, PartialEq, Eq, Hash)]
    pub struct Ratio {
        pub numer: BigInt,
        pub denom: BigInt,
    }

    impl Ratio {
        pub fn new(numer: BigInt, denom: BigInt) -> Ratio {
            debug_assert!(!denom.is_zero());
            if numer.is_zero() {
                return Ratio {
                    numer,
                    denom: BigInt::one(),
                };
            }
            let g = numer.gcd(&denom);
            let (mut n, mut d) = if g.is_one() {
                (numer, denom)
            } else {
                (numer / &g, denom / &g)
            };
            if d.is_negative() {
                n = -n;
                d = -d;
            }
            Ratio { numer: n, denom: d }
        }
    }

    impl PartialOrd for Ratio {
        fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
            Some(self.cmp(other))
        }
    }

    impl Ord for Ratio {
        fn cmp(&self, other: &Self) -> Ordering {
            if self.denom == other.denom {
                return self.numer.cmp(&other.numer);
            }
            (&self.numer * &other.denom).cmp(&(&other.numer * &self.denom))
        }
    }
}

use num_rational_inner::Ratio;

impl Rational {
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Rational, ExactError> {
        if denom.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Rational(Ratio::new(numer, denom)))
    }

    pub fn from_int<T: Into<BigInt>>(n: T) -> Rational {
        Rational(Ratio {
            numer: n.into(),
            denom: BigInt::one(),
        })
    }

    /// `n / d` for machine integers. Panics if `d == 0`.
    pub fn frac(n: i64, d: i64) -> Rational {
        assert!(d != 0, "zero denominator");
        Rational(Ratio::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn zero() -> Rational {
        Rational::from_int(0)
    }

    pub fn one() -> Rational {
        Rational::from_int(1)
    }

    pub fn numer(&self) -> &BigInt {
        &self.0.numer
    }

    pub fn denom(&self) -> &BigInt {
        &self.0.denom
    }

    pub fn is_zero(&self) -> bool {
        self.0.numer.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.numer.is_one() && self.0.denom.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.denom.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.numer.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.numer.is_positive()
    }

    pub fn signum(&self) -> i32 {
        match self.0.numer.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Rational {
        Rational(Ratio {
            numer: self.0.numer.abs(),
            denom: self.0.denom.clone(),
        })
    }

    pub fn recip(&self) -> Option<Rational> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(Ratio::new(self.0.denom.clone(), self.0.numer.clone())))
        }
    }

    pub fn pow(&self, e: u32) -> Rational {
        Rational(Ratio {
            numer: num_traits::pow(self.0.numer.clone(), e as usize),
            denom: num_traits::pow(self.0.denom.clone(), e as usize),
        })
    }

    pub fn to_f64(&self) -> f64 {
        let n = self.0.numer.to_f64().unwrap_or(f64::NAN);
        let d = self.0.denom.to_f64().unwrap_or(f64::NAN);
        n / d
    }

    /// gcd of numerators over lcm of denominators; used for polynomial contents.
    pub fn gcd(&self, other: &Rational) -> Rational {
        if self.is_zero() {
            return other.abs();
        }
        if other.is_zero() {
            return self.abs();
        }
        let n = self.0.numer.gcd(&other.0.numer);
        let d = self.0.denom.lcm(&other.0.denom);
        Rational(Ratio::new(n, d))
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::from_int(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_int(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom.is_one() {
            write!(f, "{}", self.0.numer)
        } else {
            write!(f, "{}/{}", self.0.numer, self.0.denom)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ExactError;

    /// Accepts `n`, `-n`, `p/q` with decimal integers. `q = 0` is rejected.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ExactError::ParseRational(s.to_string());
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (t, None),
        };
        let valid_int = |x: &str| {
            let digits = x.strip_prefix('-').unwrap_or(x);
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        };
        if !valid_int(n) {
            return Err(bad());
        }
        let numer = BigInt::from_str(n).map_err(|_| bad())?;
        let denom = match d {
            Some(d) => {
                if !valid_int(d) || d.starts_with('-') {
                    return Err(bad());
                }
                BigInt::from_str(d).map_err(|_| bad())?
            }
            None => BigInt::one(),
        };
        if denom.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Rational(Ratio::new(numer, denom)))
    }
}

fn add_ratio(a: &Ratio, b: &Ratio) -> Ratio {
    if a.denom == b.denom {
        return Ratio::new(&a.numer + &b.numer, a.denom.clone());
    }
    Ratio::new(
        &a.numer * &b.denom + &b.numer * &a.denom,
        &a.denom * &b.denom,
    )
}

fn mul_ratio(a: &Ratio, b: &Ratio) -> Ratio {
    if a.numer.is_zero() || b.numer.is_zero() {
        return Ratio::new(BigInt::zero(), BigInt::one());
    }
    // cross-cancel before multiplying
    let g1 = a.numer.gcd(&b.denom);
    let g2 = b.numer.gcd(&a.denom);
    let n = (&a.numer / &g1) * (&b.numer / &g2);
    let d = (&a.denom / &g2) * (&b.denom / &g1);
    let mut r = Ratio { numer: n, denom: d };
    if r.denom.is_negative() {
        r.numer = -r.numer;
        r.denom = -r.denom;
    }
    r
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, rhs: &'a Rational) -> Rational {
        Rational(add_ratio(&self.0, &rhs.0))
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn sub(self, rhs: &'a Rational) -> Rational {
        let neg = Ratio {
            numer: -rhs.0.numer.clone(),
            denom: rhs.0.denom.clone(),
        };
        Rational(add_ratio(&self.0, &neg))
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn mul(self, rhs: &'a Rational) -> Rational {
        Rational(mul_ratio(&self.0, &rhs.0))
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    /// Panics on division by zero; use [`Rational::recip`] to test first.
    fn div(self, rhs: &'a Rational) -> Rational {
        let r = rhs.recip().expect("division by zero rational");
        self * &r
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(Ratio {
            numer: -self.0.numer.clone(),
            denom: self.0.denom.clone(),
        })
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(Ratio {
            numer: -self.0.numer,
            denom: self.0.denom,
        })
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &'a Rational) -> Rational {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        *self = &*self * rhs;
    }
}

impl Rational {
    pub fn cmp_value(&self, other: &Rational) -> Ordering {
        self.0.cmp(&other.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_sign() {
        let q = Rational::frac(6, -4);
        assert_eq!(q.to_string(), "-3/2");
        assert_eq!(q.denom(), &BigInt::from(2));
        assert_eq!(Rational::frac(0, -7).to_string(), "0");
    }

    #[test]
    fn parse_forms() {
        assert_eq!("12".parse::<Rational>().unwrap(), Rational::from_int(12));
        assert_eq!("-3/6".parse::<Rational>().unwrap(), Rational::frac(-1, 2));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("1/-2".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
    }

    #[test]
    fn arithmetic() {
        let a = Rational::frac(1, 3);
        let b = Rational::frac(1, 6);
        assert_eq!(&a + &b, Rational::frac(1, 2));
        assert_eq!(&a - &b, Rational::frac(1, 6));
        assert_eq!(&a * &b, Rational::frac(1, 18));
        assert_eq!(&a / &b, Rational::from_int(2));
        assert!(Rational::zero().recip().is_none());
        assert!(Rational::frac(-1, 2) < Rational::frac(1, 3));
    }
}
