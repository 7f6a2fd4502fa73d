//! Rational functions with factored denominators.
//!
//! A [`RatFun`] is `num / Π f_i^{m_i}`. Each `f_i` is an integral, primitive,
//! nonconstant polynomial whose name-leading coefficient is positive; all
//! rational constants live in `num`. Factors are kept apart so that the
//! denominators arising from Pfaffians and from linear solves stay small:
//! sums use the lcm of the factor lists and every result is cancelled by trial
//! division. The representation is not canonical, so equality is decided by
//! cross-multiplication.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::ExactError;
use crate::mpoly::{uni, MPoly, Monomial};
use crate::rational::Rational;
use crate::var::Var;

#[derive(Clone)]
pub struct RatFun {
    num: MPoly,
    den: Vec<(MPoly, u32)>,
}

/// Splits a nonzero polynomial into `scalar * Π f^m` with normalized factors.
/// Monomial content and univariate linear factors are separated; remaining
/// multivariate parts stay whole.
pub fn factor_poly(p: &MPoly) -> (Rational, Vec<(MPoly, u32)>) {
    assert!(!p.is_zero(), "factoring zero");
    let (scale, prim) = p.normalize();
    let mut out: Vec<(MPoly, u32)> = Vec::new();
    let mc = prim.monomial_content();
    let rest = if mc.is_one() {
        prim
    } else {
        for &(v, e) in mc.pairs() {
            out.push((MPoly::var(v), e));
        }
        prim.div_monomial(&mc).expect("monomial content divides")
    };
    if rest.is_constant() {
        let c = rest.as_constant().expect("constant");
        return (&scale * &c, out);
    }
    let vars = rest.vars();
    if vars.len() == 1 {
        let v = *vars.iter().next().expect("one var");
        let coeffs = rest.as_univariate(v).expect("univariate");
        for (part, mult) in uni::squarefree(&coeffs) {
            let mut remaining = part;
            for root in uni::rational_roots(&remaining) {
                let lin = vec![-root.clone(), Rational::one()];
                let (q, _) = uni::divrem(&remaining, &lin);
                remaining = q;
                out.push((MPoly::from_univariate(v, &lin).normalize().1, mult));
            }
            if remaining.len() > 1 {
                out.push((MPoly::from_univariate(v, &remaining).normalize().1, mult));
            }
        }
        // squarefree parts are monic; restore the leading coefficient
        let mut prod = MPoly::one();
        for (f, m) in &out {
            prod = &prod * &f.pow(*m);
        }
        let ratio = p
            .div_exact(&prod)
            .and_then(|q| q.as_constant())
            .expect("factorization reproduces the input");
        return (ratio, merge_equal(out));
    }
    out.push((rest, 1));
    (scale, merge_equal(out))
}

fn merge_equal(list: Vec<(MPoly, u32)>) -> Vec<(MPoly, u32)> {
    let mut out: Vec<(MPoly, u32)> = Vec::new();
    for (f, m) in list {
        push_factor(&mut out, f, m);
    }
    out.sort();
    out
}

fn push_factor(list: &mut Vec<(MPoly, u32)>, f: MPoly, m: u32) {
    if m == 0 {
        return;
    }
    for entry in list.iter_mut() {
        if entry.0 == f {
            entry.1 += m;
            return;
        }
    }
    list.push((f, m));
    list.sort();
}

fn mult_of(list: &[(MPoly, u32)], f: &MPoly) -> u32 {
    list.iter().find(|(g, _)| g == f).map(|(_, m)| *m).unwrap_or(0)
}

fn product(list: &[(MPoly, u32)]) -> MPoly {
    let mut p = MPoly::one();
    for (f, m) in list {
        p = &p * &f.pow(*m);
    }
    p
}

impl RatFun {
    pub fn zero() -> RatFun {
        RatFun::from_poly(MPoly::zero())
    }

    pub fn one() -> RatFun {
        RatFun::from_poly(MPoly::one())
    }

    pub fn from_poly(p: MPoly) -> RatFun {
        RatFun {
            num: p,
            den: Vec::new(),
        }
    }

    pub fn from_rational(q: Rational) -> RatFun {
        RatFun::from_poly(MPoly::constant(q))
    }

    pub fn from_int(n: i64) -> RatFun {
        RatFun::from_rational(Rational::from_int(n))
    }

    pub fn var(v: Var) -> RatFun {
        RatFun::from_poly(MPoly::var(v))
    }

    /// Interns `name` and returns it as a rational function.
    pub fn param(name: &str) -> RatFun {
        RatFun::var(Var::new(name))
    }

    pub fn new(num: MPoly, den: MPoly) -> Result<RatFun, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFun::zero());
        }
        let (s, factors) = factor_poly(&den);
        let mut r = RatFun {
            num: num.scale(&s.recip().expect("nonzero")),
            den: factors,
        };
        r.cancel();
        Ok(r)
    }

    fn cancel(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let mut kept = Vec::with_capacity(self.den.len());
        for (f, mut m) in std::mem::take(&mut self.den) {
            while m > 0 {
                match self.num.div_exact(&f) {
                    Some(q) => {
                        self.num = q;
                        m -= 1;
                    }
                    None => break,
                }
            }
            if m > 0 {
                kept.push((f, m));
            }
        }
        self.den = kept;
    }

    pub fn numer(&self) -> &MPoly {
        &self.num
    }

    pub fn denom_factors(&self) -> &[(MPoly, u32)] {
        &self.den
    }

    pub fn denom(&self) -> MPoly {
        product(&self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_polynomial(&self) -> Option<&MPoly> {
        self.den.is_empty().then_some(&self.num)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_rational().is_some()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut s = self.num.vars();
        for (f, _) in &self.den {
            s.extend(f.vars());
        }
        s
    }

    pub fn inv(&self) -> Option<RatFun> {
        if self.num.is_zero() {
            return None;
        }
        let (s, factors) = factor_poly(&self.num);
        let num = product(&self.den).scale(&s.recip().expect("nonzero"));
        Some(RatFun { num, den: factors })
    }

    pub fn pow(&self, e: u32) -> RatFun {
        RatFun {
            num: self.num.pow(e),
            den: self.den.iter().map(|(f, m)| (f.clone(), m * e)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> RatFun {
        if c.is_zero() {
            return RatFun::zero();
        }
        RatFun {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    fn add_impl(&self, other: &RatFun, negate: bool) -> RatFun {
        let rhs_num = if negate { -&other.num } else { other.num.clone() };
        if self.num.is_zero() {
            return RatFun {
                num: rhs_num,
                den: other.den.clone(),
            };
        }
        if other.num.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let mut r = RatFun {
                num: &self.num + &rhs_num,
                den: self.den.clone(),
            };
            r.cancel();
            return r;
        }
        let mut lcm: Vec<(MPoly, u32)> = self.den.clone();
        for (f, m) in &other.den {
            let have = mult_of(&lcm, f);
            if *m > have {
                push_factor(&mut lcm, f.clone(), m - have);
            }
        }
        let cofactor = |den: &[(MPoly, u32)]| -> MPoly {
            let mut p = MPoly::one();
            for (f, m) in &lcm {
                let k = m - mult_of(den, f);
                if k > 0 {
                    p = &p * &f.pow(k);
                }
            }
            p
        };
        let a = &self.num * &cofactor(&self.den);
        let b = &rhs_num * &cofactor(&other.den);
        let mut r = RatFun {
            num: &a + &b,
            den: lcm,
        };
        r.cancel();
        r
    }

    fn mul_impl(&self, other: &RatFun) -> RatFun {
        if self.num.is_zero() || other.num.is_zero() {
            return RatFun::zero();
        }
        let mut a = RatFun {
            num: self.num.clone(),
            den: other.den.clone(),
        };
        a.cancel();
        let mut b = RatFun {
            num: other.num.clone(),
            den: self.den.clone(),
        };
        b.cancel();
        let mut den = a.den;
        for (f, m) in b.den {
            push_factor(&mut den, f, m);
        }
        RatFun {
            num: &a.num * &b.num,
            den,
        }
    }

    pub fn checked_div(&self, other: &RatFun) -> Option<RatFun> {
        Some(self.mul_impl(&other.inv()?))
    }

    /// Substitutes rational values; fails when a denominator vanishes.
    pub fn eval(&self, bindings: &HashMap<Var, Rational>) -> Result<RatFun, ExactError> {
        let num = self.num.eval_partial(bindings);
        let den = self.denom().eval_partial(bindings);
        if den.is_zero() {
            return Err(ExactError::Pole(self.to_string()));
        }
        RatFun::new(num, den)
    }

    pub fn eval_rational(&self, bindings: &HashMap<Var, Rational>) -> Result<Rational, ExactError> {
        let r = self.eval(bindings)?;
        r.as_rational().ok_or_else(|| {
            ExactError::Shape(format!("{r} still depends on parameters after evaluation"))
        })
    }

    /// Replaces `v` by a rational function.
    pub fn substitute(&self, v: Var, value: &RatFun) -> Result<RatFun, ExactError> {
        let n = subst_poly(&self.num, v, value);
        let d = subst_poly(&self.denom(), v, value);
        n.checked_div(&d).ok_or(ExactError::DivisionByZero)
    }

    pub fn derivative(&self, v: Var) -> RatFun {
        let d = self.denom();
        let num = &(&self.num.derivative(v) * &d) - &(&self.num * &d.derivative(v));
        RatFun::new(num, &d * &d).expect("nonzero denominator")
    }
}

fn subst_poly(p: &MPoly, v: Var, value: &RatFun) -> RatFun {
    let mut acc = RatFun::zero();
    let mut powers: Vec<RatFun> = vec![RatFun::one()];
    for (m, c) in p.terms() {
        let e = m.exponent(v) as usize;
        while powers.len() <= e {
            let next = powers[powers.len() - 1].mul_impl(value);
            powers.push(next);
        }
        let rest = Monomial::from_pairs(m.pairs().iter().copied().filter(|&(w, _)| w != v));
        let term = powers[e].mul_impl(&RatFun::from_poly(MPoly::monomial(rest, c.clone())));
        acc = acc.add_impl(&term, false);
    }
    acc
}

impl PartialEq for RatFun {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        if self.num.is_zero() || other.num.is_zero() {
            return self.num.is_zero() && other.num.is_zero();
        }
        &self.num * &other.denom() == &other.num * &self.denom()
    }
}

impl Eq for RatFun {}

impl Default for RatFun {
    fn default() -> Self {
        RatFun::zero()
    }
}

impl From<Rational> for RatFun {
    fn from(q: Rational) -> Self {
        RatFun::from_rational(q)
    }
}

impl From<MPoly> for RatFun {
    fn from(p: MPoly) -> Self {
        RatFun::from_poly(p)
    }
}

impl From<i64> for RatFun {
    fn from(n: i64) -> Self {
        RatFun::from_int(n)
    }
}

fn needs_parens(p: &MPoly) -> bool {
    p.num_terms() > 1
        || p
            .terms()
            .next()
            .is_some_and(|(m, c)| c.is_negative() || (!m.is_one() && !c.is_one()) || !c.is_integer())
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/(", self.num)?;
        let mut den: Vec<&(MPoly, u32)> = self.den.iter().collect();
        den.sort_by_key(|(p, _)| p.to_string());
        for (k, (p, m)) in den.into_iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            let wrap = needs_parens(p) && (self.den.len() > 1 || *m > 1);
            if wrap {
                write!(f, "({p})")?;
            } else {
                write!(f, "{p}")?;
            }
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        f.write_str(")")
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn add(self, rhs: &'a RatFun) -> RatFun {
        self.add_impl(rhs, false)
    }
}

impl<'a> Sub<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &'a RatFun) -> RatFun {
        self.add_impl(rhs, true)
    }
}

impl<'a> Mul<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &'a RatFun) -> RatFun {
        self.mul_impl(rhs)
    }
}

impl<'a> Div<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    /// Panics when `rhs` is zero; see [`RatFun::checked_div`].
    fn div(self, rhs: &'a RatFun) -> RatFun {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -self.num,
            den: self.den,
        }
    }
}

macro_rules! forward_owned_rf {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFun> for RatFun {
            type Output = RatFun;
            fn $m(self, rhs: RatFun) -> RatFun {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a RatFun> for RatFun {
            type Output = RatFun;
            fn $m(self, rhs: &'a RatFun) -> RatFun {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned_rf!(Add, add);
forward_owned_rf!(Sub, sub);
forward_owned_rf!(Mul, mul);
forward_owned_rf!(Div, div);

// ---------------------------------------------------------------------------
// expression parser

/// Recursive-descent parser for rational-function expressions:
/// `+ - * / ^`, parentheses, decimal integers and identifiers.
/// `−` and `·` are accepted as ASCII `-` and `*`.
pub struct ExprParser<'a> {
    src: &'a str,
    pos: usize,
    base: usize,
}

impl<'a> ExprParser<'a> {
    /// `base` is added to reported offsets so that errors point into an
    /// enclosing document.
    pub fn new(src: &'a str, base: usize) -> ExprParser<'a> {
        ExprParser { src, pos: 0, base }
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    fn err(&self, msg: impl Into<String>) -> ExactError {
        ExactError::ParseExpr {
            offset: self.base + self.pos,
            message: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(ch) = self.peek_raw() {
            if ch.is_whitespace() {
                self.pos += ch.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw().map(|c| match c {
            '−' => '-',
            '·' => '*',
            c => c,
        })
    }

    fn bump(&mut self) {
        if let Some(c) = self.peek_raw() {
            self.pos += c.len_utf8();
        }
    }

    /// Parses one full expression; trailing input is left for the caller.
    pub fn expr(&mut self) -> Result<RatFun, ExactError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some('-') => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFun, ExactError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    let t = self.unary()?;
                    acc = &acc * &t;
                }
                Some('/') => {
                    self.bump();
                    let at = self.pos;
                    let t = self.unary()?;
                    acc = acc.checked_div(&t).ok_or(ExactError::ParseExpr {
                        offset: self.base + at,
                        message: "division by zero".into(),
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFun, ExactError> {
        match self.peek() {
            Some('-') => {
                self.bump();
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFun, ExactError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.bump();
            self.skip_ws();
            let start = self.pos;
            while self.peek_raw().is_some_and(|c| c.is_ascii_digit()) {
                self.bump();
            }
            let e: u32 = self.src[start..self.pos]
                .parse()
                .map_err(|_| self.err("expected exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFun, ExactError> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.bump();
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek_raw().is_some_and(|c| c.is_ascii_digit()) {
                    self.bump();
                }
                let q: Rational = self.src[start..self.pos]
                    .parse()
                    .map_err(|_| self.err("bad integer"))?;
                Ok(RatFun::from_rational(q))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self
                    .peek_raw()
                    .is_some_and(|c| c.is_alphanumeric() || c == '_')
                {
                    self.bump();
                }
                let name = &self.src[start..self.pos];
                Var::try_new(name)
                    .map(RatFun::var)
                    .map_err(|_| self.err(format!("bad identifier {name:?}")))
            }
            Some(c) => Err(self.err(format!("unexpected character {c:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

impl FromStr for RatFun {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = ExprParser::new(s, 0);
        let r = p.expr()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(r)
    }
}

/// Parses an expression that must be free of parameters.
pub fn parse_rational_expr(s: &str) -> Result<Rational, ExactError> {
    let r: RatFun = s.parse()?;
    r.as_rational()
        .ok_or_else(|| ExactError::ParseRational(s.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RatFun {
        s.parse().unwrap()
    }

    #[test]
    fn cancellation() {
        let a = rf("(c^2 - 1)/(c - 1)");
        assert_eq!(a.denom_factors().len(), 0);
        assert_eq!(a, rf("c + 1"));
        let b = rf("1/c + 1/(c+1)");
        assert_eq!(b, rf("(2*c + 1)/(c^2 + c)"));
        assert_eq!(b.denom_factors().len(), 2);
    }

    #[test]
    fn inverse_and_display() {
        let a = rf("(c+1)/c");
        assert_eq!(a.to_string(), "(c + 1)/(c)");
        assert_eq!(a.inv().unwrap().to_string(), "(c)/(c + 1)");
        assert_eq!(rf(&a.to_string()), a);
        let b = rf("1/(2*c^2 - 3)^2/c");
        assert_eq!(rf(&b.to_string()), b);
    }

    #[test]
    fn evaluation_and_poles() {
        let a = rf("(c+1)/(c-2)");
        let mut env = HashMap::new();
        env.insert(Var::new("c"), Rational::from_int(3));
        assert_eq!(a.eval_rational(&env).unwrap(), Rational::from_int(4));
        env.insert(Var::new("c"), Rational::from_int(2));
        assert!(matches!(a.eval(&env), Err(ExactError::Pole(_))));
    }

    #[test]
    fn parse_errors_have_offsets() {
        match "1 + * c".parse::<RatFun>() {
            Err(ExactError::ParseExpr { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("{other:?}"),
        }
        assert!("c/0".parse::<RatFun>().is_err());
    }
}
