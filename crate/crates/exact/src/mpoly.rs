//! Sparse multivariate polynomials over the rationals.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`] under graded
//! lexicographic order (variables ranked by interning handle), so the
//! leading term needed by exact division is the last map entry.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

use crate::rational::Rational;
use crate::var::Var;

/// Power product `Π v^e`, stored sorted by variable with positive exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(Var, u32); 4]>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var, e: u32) -> Monomial {
        let mut m = Monomial::one();
        if e > 0 {
            m.0.push((v, e));
        }
        m
    }

    pub fn from_pairs<I: IntoIterator<Item = (Var, u32)>>(pairs: I) -> Monomial {
        let mut acc: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *acc.entry(v).or_insert(0) += e;
        }
        Monomial(acc.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out: SmallVec<[(Var, u32); 4]> = SmallVec::new();
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                let f = other.0[j].1;
                if f > e {
                    return None;
                }
                if e > f {
                    out.push((v, e - f));
                }
                j += 1;
            } else {
                out.push((v, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = SmallVec::new();
        for &(v, e) in &self.0 {
            let f = other.exponent(v);
            if f > 0 {
                out.push((v, e.min(f)));
            }
        }
        Monomial(out)
    }

    fn lex_cmp_with(&self, other: &Monomial, order: impl Fn(Var, Var) -> Ordering) -> Ordering {
        // lex: the monomial with the larger exponent on the highest-ranked
        // variable where they differ wins
        let mut a: SmallVec<[(Var, u32); 4]> = self.0.clone();
        let mut b: SmallVec<[(Var, u32); 4]> = other.0.clone();
        a.sort_by(|x, y| order(x.0, y.0));
        b.sort_by(|x, y| order(x.0, y.0));
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => match order(va, vb) {
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                },
            }
        }
    }

    /// Graded lex under name order; used for printing and normalization.
    pub fn cmp_by_name(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.lex_cmp_with(other, |a, b| a.cmp_by_name(b)))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va == vb {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    } else if va < vb {
                        return Ordering::Greater;
                    } else {
                        return Ordering::Less;
                    }
                }
            }
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut pairs: Vec<(Var, u32)> = self.0.to_vec();
        pairs.sort_by(|a, b| a.0.cmp_by_name(b.0));
        for (k, (v, e)) in pairs.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Multivariate polynomial with rational coefficients; no stored zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly::default()
    }

    pub fn one() -> MPoly {
        MPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> MPoly {
        MPoly::monomial(Monomial::one(), c)
    }

    pub fn int(n: i64) -> MPoly {
        MPoly::constant(Rational::from_int(n))
    }

    pub fn var(v: Var) -> MPoly {
        MPoly::monomial(Monomial::var(v, 1), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> MPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> MPoly {
        let mut p = MPoly::zero();
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&Monomial::one()))
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Monomial::one()) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Terms in descending name-based graded lex order (printing order).
    pub fn terms_by_name(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.cmp_by_name(a.0));
        v
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn trailing(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.pairs().iter().map(|&(v, _)| v))
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(n, a)| (n.mul(m), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut result = MPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(MPoly::zero());
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip().expect("nonzero constant")));
        }
        let (lm_d, lc_d) = d.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let (tm_d, _) = d.trailing()?;
        // the smallest monomial of a product is the product of the smallest ones
        let (tm_s, _) = self.trailing()?;
        tm_s.div(tm_d)?;
        if self.total_degree() < d.total_degree() {
            return None;
        }
        for v in d.vars() {
            if self.degree_in(v) < d.degree_in(v) {
                return None;
            }
        }
        let inv_lc = lc_d.recip().expect("nonzero leading coefficient");
        let mut rem = self.terms.clone();
        let mut quot = MPoly::zero();
        while let Some((lm_r, lc_r)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = lm_r.div(&lm_d)?;
            let qc = &lc_r * &inv_lc;
            for (m, c) in d.terms.iter() {
                let key = m.mul(&qm);
                let delta = c * &qc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let s = e.get() - &delta;
                        if s.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = s;
                        }
                    }
                }
            }
            quot.terms.insert(qm, qc);
        }
        Some(quot)
    }

    /// gcd of the coefficients (positive; zero for the zero polynomial).
    pub fn content(&self) -> Rational {
        self.terms
            .values()
            .fold(Rational::zero(), |acc, c| acc.gcd(c))
    }

    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        it.fold(first.clone(), |acc, m| acc.gcd(m))
    }

    pub fn div_monomial(&self, m: &Monomial) -> Option<MPoly> {
        let mut terms = BTreeMap::new();
        for (n, c) in &self.terms {
            terms.insert(n.div(m)?, c.clone());
        }
        Some(MPoly { terms })
    }

    /// Leading term under name-based graded lex order.
    pub fn leading_by_name(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| a.0.cmp_by_name(b.0))
    }

    /// Splits `self = scale * p` with `p` integral, primitive, and its
    /// name-leading coefficient positive.
    pub fn normalize(&self) -> (Rational, MPoly) {
        if self.is_zero() {
            return (Rational::one(), MPoly::zero());
        }
        let mut content = self.content();
        if self
            .leading_by_name()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false)
        {
            content = -content;
        }
        let inv = content.recip().expect("nonzero content");
        (content, self.scale(&inv))
    }

    pub fn substitute(&self, v: Var, value: &MPoly) -> MPoly {
        if self.degree_in(v) == 0 {
            return self.clone();
        }
        let mut powers: Vec<MPoly> = vec![MPoly::one()];
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v) as usize;
            while powers.len() <= e {
                let next = &powers[powers.len() - 1] * value;
                powers.push(next);
            }
            let rest = Monomial(m.0.iter().copied().filter(|&(w, _)| w != v).collect());
            out = &out + &powers[e].mul_monomial(&rest, c);
        }
        out
    }

    /// Substitutes rational values for the bound variables; others stay symbolic.
    pub fn eval_partial(&self, bindings: &HashMap<Var, Rational>) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut rest: SmallVec<[(Var, u32); 4]> = SmallVec::new();
            for &(v, e) in m.pairs() {
                match bindings.get(&v) {
                    Some(val) => coef = &coef * &val.pow(e),
                    None => rest.push((v, e)),
                }
            }
            out.add_term(Monomial(rest), &coef);
        }
        out
    }

    pub fn eval_full(&self, bindings: &HashMap<Var, Rational>) -> Option<Rational> {
        self.eval_partial(bindings).as_constant()
    }

    pub fn derivative(&self, v: Var) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let rest = Monomial::from_pairs(
                m.pairs()
                    .iter()
                    .map(|&(w, f)| if w == v { (w, f - 1) } else { (w, f) }),
            );
            out.add_term(rest, &(c * &Rational::from_int(e as i64)));
        }
        out
    }

    /// Coefficients in `v` (ascending) when `self` involves no other variable.
    pub fn as_univariate(&self, v: Var) -> Option<Vec<Rational>> {
        let deg = self.degree_in(v) as usize;
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (m, c) in &self.terms {
            if m.pairs().iter().any(|&(w, _)| w != v) {
                return None;
            }
            coeffs[m.exponent(v) as usize] = c.clone();
        }
        Some(coeffs)
    }

    pub fn from_univariate(v: Var, coeffs: &[Rational]) -> MPoly {
        MPoly::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(e, c)| (Monomial::var(v, e as u32), c.clone())),
        )
    }

    /// Parenthesization-free rendering used by [`fmt::Display`].
    fn fmt_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms_by_name().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }

    /// True when the polynomial is a single term (monomial times constant).
    pub fn is_term(&self) -> bool {
        self.terms.len() == 1
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_terms(f)
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_terms(f)
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &'a MPoly) -> MPoly {
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &'a MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &'a MPoly) -> MPoly {
        if self.is_zero() || rhs.is_zero() {
            return MPoly::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().expect("one term");
            return rhs.mul_monomial(m, c);
        }
        if rhs.terms.len() == 1 {
            let (m, c) = rhs.terms.iter().next().expect("one term");
            return self.mul_monomial(m, c);
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let key = m1.mul(m2);
                let prod = c1 * c2;
                match acc.entry(key) {
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += &prod;
                    }
                }
            }
        }
        MPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned_poly {
    ($tr:ident, $m:ident) => {
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned_poly!(Add, add);
forward_owned_poly!(Sub, sub);
forward_owned_poly!(Mul, mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

/// Exact zero test on stored terms (no sampling).
pub fn poly_identically_zero(p: &MPoly) -> bool {
    p.is_zero()
}

/// Dense univariate helpers over ℚ, coefficients ascending.
pub(crate) mod uni {
    use super::*;

    pub fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        p
    }

    pub fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let b = trim(b.to_vec());
        assert!(!b.is_empty(), "division by zero polynomial");
        let mut r = trim(a.to_vec());
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lb = b.last().expect("nonempty").clone();
        let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
        while r.len() >= b.len() && !r.is_empty() {
            let shift = r.len() - b.len();
            let coef = r.last().expect("nonempty") / &lb;
            for (i, bc) in b.iter().enumerate() {
                let t = bc * &coef;
                r[shift + i] -= &t;
            }
            q[shift] = coef;
            r = trim(r);
        }
        (trim(q), r)
    }

    pub fn monic(p: Vec<Rational>) -> Vec<Rational> {
        let p = trim(p);
        match p.last().cloned() {
            None => p,
            Some(l) => p.iter().map(|c| c / &l).collect(),
        }
    }

    pub fn gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut x = trim(a.to_vec());
        let mut y = trim(b.to_vec());
        while !y.is_empty() {
            let (_, r) = divrem(&x, &y);
            x = y;
            y = r;
        }
        monic(x)
    }

    pub fn derivative(p: &[Rational]) -> Vec<Rational> {
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &Rational::from_int(i as i64))
            .collect()
    }

    pub fn eval(p: &[Rational], x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in p.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); a.len().max(b.len())];
        for (k, v) in a.iter().enumerate() {
            out[k] += v;
        }
        for (k, v) in b.iter().enumerate() {
            out[k] -= v;
        }
        trim(out)
    }

    /// Yun's square-free decomposition: `p = lc * Π f_i^i`.
    pub fn squarefree(p: &[Rational]) -> Vec<(Vec<Rational>, u32)> {
        let p = monic(p.to_vec());
        if p.len() <= 1 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let dp = derivative(&p);
        let a = gcd(&p, &dp);
        let (mut b, _) = divrem(&p, &a);
        let (c, _) = divrem(&dp, &a);
        let mut d = sub(&c, &derivative(&b));
        let mut i = 1;
        while b.len() > 1 {
            let g = gcd(&b, &d);
            if g.len() > 1 {
                out.push((g.clone(), i));
            }
            let (nb, _) = divrem(&b, &g);
            let (c, _) = divrem(&d, &g);
            d = sub(&c, &derivative(&nb));
            b = nb;
            i += 1;
        }
        out
    }

    fn small_divisors(n: &BigInt) -> Option<Vec<u64>> {
        let n = n.abs().to_u64()?;
        if n == 0 || n > 1_000_000_000_000 {
            return None;
        }
        let mut ds = Vec::new();
        let mut k = 1u64;
        while k * k <= n {
            if n % k == 0 {
                ds.push(k);
                if k * k != n {
                    ds.push(n / k);
                }
            }
            k += 1;
        }
        Some(ds)
    }

    /// Rational roots of a polynomial with nonzero constant term.
    pub fn rational_roots(p: &[Rational]) -> Vec<Rational> {
        let p = trim(p.to_vec());
        if p.len() <= 1 {
            return Vec::new();
        }
        // clear denominators
        let mut l = BigInt::one();
        for c in &p {
            l = l.lcm(c.denom());
        }
        let ints: Vec<BigInt> = p
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        let a0 = &ints[0];
        let an = ints.last().expect("nonempty");
        if a0.is_zero() {
            return vec![Rational::zero()];
        }
        let (Some(ps), Some(qs)) = (small_divisors(a0), small_divisors(an)) else {
            return Vec::new();
        };
        let mut roots = Vec::new();
        for &pp in &ps {
            for &qq in &qs {
                for sign in [1i64, -1] {
                    let cand = Rational::new(
                        BigInt::from(pp) * BigInt::from(sign),
                        BigInt::from(qq),
                    )
                    .expect("nonzero q");
                    if eval(&p, &cand).is_zero() && !roots.contains(&cand) {
                        roots.push(cand);
                    }
                }
            }
        }
        roots
    }

    #[cfg(test)]
    mod tests {
        use super::*;

        fn q(v: &[i64]) -> Vec<Rational> {
            v.iter().map(|&x| Rational::from_int(x)).collect()
        }

        #[test]
        fn gcd_and_squarefree() {
            // (x-1)^2 (x+2) = x^3 - 3x + 2
            let p = q(&[2, -3, 0, 1]);
            let g = gcd(&p, &derivative(&p));
            assert_eq!(g, q(&[-1, 1]));
            let sf = squarefree(&p);
            assert_eq!(sf.len(), 2);
            assert!(sf.contains(&(q(&[2, 1]), 1)));
            assert!(sf.contains(&(q(&[-1, 1]), 2)));
        }

        #[test]
        fn roots() {
            // (2x+3)(x-1) = 2x^2 + x - 3
            let mut r = rational_roots(&q(&[-3, 1, 2]));
            r.sort();
            assert_eq!(r, vec![Rational::frac(-3, 2), Rational::one()]);
            assert!(rational_roots(&q(&[-3, 0, 2])).is_empty());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> MPoly {
        MPoly::var(Var::new("x"))
    }
    fn y() -> MPoly {
        MPoly::var(Var::new("y"))
    }

    #[test]
    fn exact_division() {
        let p = &(&x() + &y()) * &(&x() - &MPoly::int(2));
        assert_eq!(p.div_exact(&(&x() + &y())), Some(&x() - &MPoly::int(2)));
        assert_eq!(p.div_exact(&(&x() + &MPoly::int(1))), None);
        assert_eq!(p.div_exact(&y()), None);
    }

    #[test]
    fn normalize_sign_and_content() {
        let p = (&x().scale(&Rational::frac(-2, 3))) + &MPoly::constant(Rational::frac(4, 3));
        let (s, n) = p.normalize();
        assert_eq!(s, Rational::frac(-2, 3));
        assert_eq!(n, &x() - &MPoly::int(2));
    }

    #[test]
    fn substitute_and_derivative() {
        let vx = Var::new("x");
        let p = &x().pow(2) * &y();
        assert_eq!(p.substitute(vx, &(&y() + &MPoly::one())), &(&y() + &MPoly::one()).pow(2) * &y());
        assert_eq!(p.derivative(vx), &x().scale(&Rational::from_int(2)) * &y());
    }

    #[test]
    fn display_is_name_ordered() {
        let p = &(&y() + &x().pow(2)) - &MPoly::int(3);
        assert_eq!(p.to_string(), "x^2 + y - 3");
    }
}
