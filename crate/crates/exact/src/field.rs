//! The scalar abstraction shared by ℚ and ℚ(params).

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::rational::Rational;
use crate::ratfun::RatFun;
use crate::var::Var;

pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    fn try_div(&self, other: &Self) -> Option<Self>;
    fn from_rational(q: Rational) -> Self;
    fn to_ratfun(&self) -> RatFun;
    /// `None` when the value depends on parameters this field lacks.
    fn from_ratfun(r: &RatFun) -> Option<Self>;

    fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_int(n))
    }

    fn add_ref(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.clone() - other.clone()
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }

    fn neg_ref(&self) -> Self {
        -self.clone()
    }

    /// Rough size used to pick cheap pivots.
    fn complexity(&self) -> usize {
        0
    }

    fn params(&self) -> BTreeSet<Var> {
        BTreeSet::new()
    }

    /// Rescales a vector (by a nonzero scalar) so its entries are as simple as
    /// possible; kernels are only defined up to such scaling.
    fn clear_denominators(_v: &mut [Self]) {}
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Rational::is_one(self)
    }
    fn inv(&self) -> Option<Self> {
        self.recip()
    }
    fn try_div(&self, other: &Self) -> Option<Self> {
        other.recip().map(|r| self * &r)
    }
    fn from_rational(q: Rational) -> Self {
        q
    }
    fn to_ratfun(&self) -> RatFun {
        RatFun::from_rational(self.clone())
    }
    fn from_ratfun(r: &RatFun) -> Option<Self> {
        r.as_rational()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn complexity(&self) -> usize {
        (self.numer().bits() + self.denom().bits()) as usize
    }
    fn clear_denominators(v: &mut [Self]) {
        let mut g = Rational::zero();
        for x in v.iter() {
            g = g.gcd(x);
        }
        if g.is_zero() {
            return;
        }
        let s = Rational::one() / g;
        for x in v.iter_mut() {
            *x = &*x * &s;
        }
    }
}

impl Field for RatFun {
    fn zero() -> Self {
        RatFun::zero()
    }
    fn one() -> Self {
        RatFun::one()
    }
    fn is_zero(&self) -> bool {
        RatFun::is_zero(self)
    }
    fn is_one(&self) -> bool {
        RatFun::is_one(self)
    }
    fn inv(&self) -> Option<Self> {
        RatFun::inv(self)
    }
    fn try_div(&self, other: &Self) -> Option<Self> {
        self.checked_div(other)
    }
    fn from_rational(q: Rational) -> Self {
        RatFun::from_rational(q)
    }
    fn to_ratfun(&self) -> RatFun {
        self.clone()
    }
    fn from_ratfun(r: &RatFun) -> Option<Self> {
        Some(r.clone())
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn complexity(&self) -> usize {
        let den: usize = self
            .denom_factors()
            .iter()
            .map(|(f, m)| f.num_terms() * *m as usize)
            .sum();
        self.numer().num_terms() + 2 * den
    }
    fn params(&self) -> BTreeSet<Var> {
        self.vars()
    }
    fn clear_denominators(v: &mut [Self]) {
        // multiply by the lcm of the factor lists, then strip rational content
        let mut lcm: Vec<(crate::mpoly::MPoly, u32)> = Vec::new();
        for x in v.iter() {
            for (f, m) in x.denom_factors() {
                match lcm.iter_mut().find(|(g, _)| g == f) {
                    Some(entry) => entry.1 = entry.1.max(*m),
                    None => lcm.push((f.clone(), *m)),
                }
            }
        }
        let mut p = crate::mpoly::MPoly::one();
        for (f, m) in &lcm {
            p = &p * &f.pow(*m);
        }
        let scale = RatFun::from_poly(p);
        let mut content = Rational::zero();
        for x in v.iter_mut() {
            *x = &*x * &scale;
            content = content.gcd(&x.numer().content());
        }
        if content.is_zero() {
            return;
        }
        let s = Rational::one() / content;
        for x in v.iter_mut() {
            *x = x.scale(&s);
        }
    }
}
