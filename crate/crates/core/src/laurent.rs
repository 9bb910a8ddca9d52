//! Sparse multivariate Laurent polynomials with arbitrary-precision integer
//! coefficients.
//!
//! Every other module stores its values here: cluster variables are Laurent
//! polynomials in the `x` variables (plus principal coefficients `y`), and
//! q-characters live in the `Y[i,p]` variables or, after renormalization, in
//! the `t[i]` variables.
//!
//! Values are kept in canonical form at all times: no zero coefficient and no
//! zero exponent is ever stored, so structural equality is ring equality.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("cannot substitute a negative power of {var}: its image is not a unit")]
    NonInvertibleImage { var: Var },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// A namespaced variable.
///
/// The derived order (namespace first, then index) is the canonical variable
/// order used for term sorting and text rendering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// Initial cluster variable `x[i]`.
    X(u32),
    /// Principal coefficient `y[i]`.
    Coef(u32),
    /// Loop-algebra variable `Y[i,p]`.
    Y(u32, i32),
    /// Renormalized character variable `t[i]`.
    T(u32),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Var::X(i) => write!(f, "x[{i}]"),
            Var::Coef(i) => write!(f, "y[{i}]"),
            Var::Y(i, p) => write!(f, "Y[{i},{p}]"),
            Var::T(i) => write!(f, "t[{i}]"),
        }
    }
}

/// A Laurent monomial: variables with nonzero integer exponents, sorted by
/// variable.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Var, i64)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn var_pow(v: Var, e: i64) -> Self {
        if e == 0 {
            Self::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    /// Builds a monomial from arbitrary `(var, exp)` pairs; repeated
    /// variables are merged and zero exponents dropped.
    pub fn from_pairs<I: IntoIterator<Item = (Var, i64)>>(pairs: I) -> Self {
        let mut acc: BTreeMap<Var, i64> = BTreeMap::new();
        for (v, e) in pairs {
            *acc.entry(v).or_insert(0) += e;
        }
        Monomial(acc.into_iter().filter(|&(_, e)| e != 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: Var) -> i64 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|k| self.0[k].1)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, i64)> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inv(&self) -> Self {
        Monomial(self.0.iter().map(|&(v, e)| (v, -e)).collect())
    }

    pub fn pow(&self, k: i64) -> Self {
        if k == 0 {
            return Self::one();
        }
        Monomial(self.0.iter().map(|&(v, e)| (v, e * k)).collect())
    }

    /// True if no exponent is negative.
    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&(_, e)| e >= 0)
    }

    /// Sum of all exponents.
    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    /// Drops every variable for which `keep` is false.
    pub fn filter<F: Fn(Var) -> bool>(&self, keep: F) -> Self {
        Monomial(self.0.iter().copied().filter(|&(v, _)| keep(v)).collect())
    }

    fn merge(&self, other: &Self, sign: i64) -> Self {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b[j].0, sign * b[j].1));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let e = a[i].1 + sign * b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(v, e)| (v, sign * e)));
        Monomial(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.merge(other, 1)
    }

    pub fn div(&self, other: &Self) -> Self {
        self.merge(other, -1)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{v}^{e}")?;
        }
        Ok(())
    }
}

/// A Laurent polynomial with integer coefficients in canonical form.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::one())
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v))
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(1, m)
    }

    pub fn term<C: Into<BigInt>>(c: C, m: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c.into());
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The single term of a one-term polynomial.
    pub fn as_term(&self) -> Option<(&Monomial, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// The monomial of a one-term polynomial with coefficient 1.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        self.as_term().filter(|(_, c)| c.is_one()).map(|(m, _)| m)
    }

    /// All variables occurring with nonzero exponent.
    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.iter().map(|(v, _)| v))
            .collect()
    }

    /// True if no monomial carries a negative exponent.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|(_, e)| e >= 0))
    }

    pub fn all_coefficients_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces variables by polynomials.
    ///
    /// A variable that occurs with a negative exponent may only be replaced
    /// by a unit, i.e. a single term with coefficient `±1`.
    pub fn substitute(&self, assignment: &BTreeMap<Var, LaurentPoly>) -> Result<Self, LaurentError> {
        if assignment.is_empty() {
            return Ok(self.clone());
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut acc = LaurentPoly::constant(c.clone());
            for (v, e) in m.iter() {
                match assignment.get(&v) {
                    None => kept.push((v, e)),
                    Some(image) if e >= 0 => acc = &acc * &image.pow(e as u32),
                    Some(image) => {
                        let inv = image
                            .unit_inverse()
                            .ok_or(LaurentError::NonInvertibleImage { var: v })?;
                        acc = &acc * &inv.pow((-e) as u32);
                    }
                }
            }
            out += acc.mul_monomial(&Monomial::from_pairs(kept));
        }
        Ok(out)
    }

    /// Sets each listed variable to 1.
    pub fn specialize_to_one<F: Fn(Var) -> bool>(&self, pick: F) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.filter(|v| !pick(v)), c.clone());
        }
        out
    }

    fn unit_inverse(&self) -> Option<Self> {
        let (m, c) = self.as_term()?;
        if c.abs().is_one() {
            Some(LaurentPoly::term(c.clone(), m.inv()))
        } else {
            None
        }
    }

    /// Exact quotient `self / divisor`, or `None` when the division does not
    /// come out exactly in the Laurent ring.
    pub fn checked_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if let Some(inv) = divisor.unit_inverse() {
            return Some(self * &inv);
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let vars: Vec<Var> = self
            .variables()
            .union(&divisor.variables())
            .copied()
            .collect();
        let (num, num_shift) = to_dense(self, &vars);
        let (den, den_shift) = to_dense(divisor, &vars);
        let (den_lead, den_coef) = den.iter().next_back().map(|(m, c)| (m.clone(), c.clone()))?;

        // Polynomial long division under lex order; exact division never
        // meets a leading term that the divisor's leading term fails to divide.
        let mut rem = num;
        let mut quot: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        while let Some((lead, coef)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            let shift: Vec<i64> = lead.iter().zip(&den_lead).map(|(a, b)| a - b).collect();
            if shift.iter().any(|&e| e < 0) || !(&coef % &den_coef).is_zero() {
                return None;
            }
            let q = &coef / &den_coef;
            for (m, c) in &den {
                let key: Vec<i64> = m.iter().zip(&shift).map(|(a, b)| a + b).collect();
                let entry = rem.entry(key.clone()).or_default();
                *entry -= &q * c;
                if entry.is_zero() {
                    rem.remove(&key);
                }
            }
            quot.insert(shift, q);
        }
        let correction = den_shift.div(&num_shift);
        Some(LaurentPoly::from_terms(quot.into_iter().map(|(e, c)| {
            let m = Monomial::from_pairs(vars.iter().copied().zip(e));
            (m.mul(&correction), c)
        })))
    }

    /// Deterministic text rendering, e.g. `+1*Y[1,1]^1*Y[2,4]^1 -1*Y[2,2]^1`.
    ///
    /// The zero polynomial renders as `0` and the unit polynomial as `1`.
    pub fn canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        if self.is_one() {
            return "1".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                out.push(' ');
            }
            out.push(if c.is_negative() { '-' } else { '+' });
            out.push_str(&c.abs().to_string());
            for (v, e) in m.iter() {
                out.push_str(&format!("*{v}^{e}"));
            }
        }
        out
    }

    /// JSON rendering as a list of `{coef, exps: [[var, exp], ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let coef = match c.to_i64() {
                    Some(v) => serde_json::Value::from(v),
                    None => serde_json::Value::from(c.to_string()),
                };
                let exps: Vec<serde_json::Value> = m
                    .iter()
                    .map(|(v, e)| serde_json::json!([v.to_string(), e]))
                    .collect();
                serde_json::json!({ "coef": coef, "exps": exps })
            })
            .collect();
        serde_json::Value::Array(terms)
    }
}

fn to_dense(p: &LaurentPoly, vars: &[Var]) -> (BTreeMap<Vec<i64>, BigInt>, Monomial) {
    let mut min = vec![i64::MAX; vars.len()];
    let rows: Vec<(Vec<i64>, BigInt)> = p
        .terms
        .iter()
        .map(|(m, c)| {
            let e: Vec<i64> = vars.iter().map(|&v| m.exponent(v)).collect();
            for (lo, x) in min.iter_mut().zip(&e) {
                *lo = (*lo).min(*x);
            }
            (e, c.clone())
        })
        .collect();
    let dense = rows
        .into_iter()
        .map(|(e, c)| (e.iter().zip(&min).map(|(a, b)| a - b).collect(), c))
        .collect();
    let shift = Monomial::from_pairs(vars.iter().copied().zip(min.iter().map(|&e| -e)));
    (dense, shift)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.canonical_string())
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<Monomial> for LaurentPoly {
    fn from(m: Monomial) -> Self {
        LaurentPoly::monomial(m)
    }
}

impl From<Var> for LaurentPoly {
    fn from(v: Var) -> Self {
        LaurentPoly::var(v)
    }
}

impl AddAssign<LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += rhs;
        self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl FromStr for LaurentPoly {
    type Err = LaurentError;

    /// Accepts the canonical rendering and a slightly looser hand-written
    /// form: optional `+` on the first term, optional coefficient, optional
    /// `^1`, e.g. `1 + 2*t[3]*t[4] - Y[2,2]^-1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Parser { src: s.as_bytes(), pos: 0 }.poly()
    }
}

impl FromStr for Monomial {
    type Err = LaurentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let p: LaurentPoly = s.parse()?;
        p.as_monomial().cloned().ok_or(LaurentError::Parse {
            pos: 0,
            msg: "expected a single monomial with coefficient 1".into(),
        })
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T, LaurentError> {
        Err(LaurentError::Parse { pos: self.pos, msg: msg.to_string() })
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), LaurentError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(&format!("expected '{}'", c as char))
        }
    }

    fn digits(&mut self) -> Option<&str> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            None
        } else {
            std::str::from_utf8(&self.src[start..self.pos]).ok()
        }
    }

    fn int(&mut self) -> Result<i64, LaurentError> {
        let neg = self.eat(b'-');
        match self.digits().map(str::parse::<i64>) {
            Some(Ok(v)) => Ok(if neg { -v } else { v }),
            _ => self.err("expected integer"),
        }
    }

    fn poly(&mut self) -> Result<LaurentPoly, LaurentError> {
        let mut out = LaurentPoly::zero();
        self.skip_ws();
        if self.peek().is_none() {
            return self.err("empty input");
        }
        let mut first = true;
        while {
            self.skip_ws();
            self.peek().is_some()
        } {
            let negative = self.eat(b'-');
            if !negative && !self.eat(b'+') && !first {
                return self.err("expected '+' or '-' between terms");
            }
            first = false;
            self.skip_ws();
            let (m, c) = self.term()?;
            out.add_term(m, if negative { -c } else { c });
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Monomial, BigInt), LaurentError> {
        let mut coef = BigInt::one();
        let mut pairs = Vec::new();
        if let Some(d) = self.digits() {
            coef = d.parse().expect("ascii digits");
            if !self.eat(b'*') {
                return Ok((Monomial::one(), coef));
            }
        }
        let mut need_factor = true;
        while need_factor {
            pairs.push(self.factor()?);
            need_factor = self.eat(b'*');
        }
        Ok((Monomial::from_pairs(pairs), coef))
    }

    fn factor(&mut self) -> Result<(Var, i64), LaurentError> {
        let name = match self.peek() {
            Some(c @ (b'x' | b'y' | b'Y' | b't')) => c,
            _ => return self.err("expected variable"),
        };
        self.pos += 1;
        self.expect(b'[')?;
        let a = self.int()?;
        let var = if name == b'Y' {
            self.expect(b',')?;
            let p = self.int()?;
            Var::Y(index(a, self.pos)?, p as i32)
        } else {
            let i = index(a, self.pos)?;
            match name {
                b'x' => Var::X(i),
                b'y' => Var::Coef(i),
                _ => Var::T(i),
            }
        };
        self.expect(b']')?;
        let e = if self.eat(b'^') { self.int()? } else { 1 };
        Ok((var, e))
    }
}

fn index(a: i64, pos: usize) -> Result<u32, LaurentError> {
    u32::try_from(a).map_err(|_| LaurentError::Parse { pos, msg: "negative variable index".into() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn mul_distributes_over_terms() {
        let a = p("x[1] + x[2]^-1");
        assert_eq!(&a * &p("x[2]"), p("x[1]*x[2] + 1"));
    }

    #[test]
    fn self_subtraction_is_empty() {
        let a = p("3*x[1]^2 - x[2]^-1*y[1] + 7");
        let z = &a - &a;
        assert!(z.is_zero());
        assert_eq!(z.num_terms(), 0);
        assert_eq!(z.canonical_string(), "0");
    }

    #[test]
    fn hand_expansion_in_t() {
        let lhs = &p("1 + t[2]") * &p("1 + t[1]*t[2]");
        assert_eq!(lhs, p("1 + t[2] + t[1]*t[2] + t[1]*t[2]^2"));
    }

    #[test]
    fn substitute_t_by_a_inverse() {
        // A_{1,2} = Y[1,1] Y[1,3] Y[2,2]^-1 in type A_2.
        let a12: Monomial = "Y[1,1]*Y[1,3]*Y[2,2]^-1".parse().unwrap();
        let map = BTreeMap::from([(Var::T(1), LaurentPoly::monomial(a12.inv()))]);
        let got = p("1 + t[1]").substitute(&map).unwrap();
        assert_eq!(got, p("1 + Y[1,1]^-1*Y[1,3]^-1*Y[2,2]"));
    }

    #[test]
    fn substitute_empty_is_identity() {
        let a = p("x[1]^-2*x[3] - 4");
        assert_eq!(a.substitute(&BTreeMap::new()).unwrap(), a);
    }

    #[test]
    fn substitute_rejects_non_unit_inverse() {
        let map = BTreeMap::from([(Var::X(1), p("x[1] + 1"))]);
        assert_eq!(
            p("x[1]^-1").substitute(&map),
            Err(LaurentError::NonInvertibleImage { var: Var::X(1) })
        );
        // nonnegative powers are fine
        assert_eq!(p("x[1]^2").substitute(&map).unwrap(), p("x[1]^2 + 2*x[1] + 1"));
    }

    #[test]
    fn canonical_rendering() {
        assert_eq!(LaurentPoly::one().canonical_string(), "1");
        assert_eq!(
            p("Y[1,1]*Y[2,4] - Y[2,2]").canonical_string(),
            "+1*Y[1,1]^1*Y[2,4]^1 -1*Y[2,2]^1"
        );
        assert_eq!(p("1 + t[1]").canonical_string(), "+1 +1*t[1]^1");
        assert_eq!(p("Y[3,-1]^-2").canonical_string(), "+1*Y[3,-1]^-2");
    }

    #[test]
    fn namespace_order_sorts_terms() {
        let s = p("t[1] + Y[1,0] + y[1] + x[1]").canonical_string();
        assert_eq!(s, "+1*x[1]^1 +1*y[1]^1 +1*Y[1,0]^1 +1*t[1]^1");
    }

    #[test]
    fn parse_errors() {
        assert!("".parse::<LaurentPoly>().is_err());
        assert!("x[1] x[2]".parse::<LaurentPoly>().is_err());
        assert!("z[1]".parse::<LaurentPoly>().is_err());
        assert!("x[-1]".parse::<LaurentPoly>().is_err());
        assert!("2*x[1]".parse::<Monomial>().is_err());
    }

    #[test]
    fn exact_division() {
        let num = p("x[2] + 1");
        let den = p("x[1]");
        assert_eq!(num.checked_div(&den).unwrap(), p("x[1]^-1*x[2] + x[1]^-1"));
        let f = &p("x[1] + x[2] + 1") * &p("x[1]^-1 + 3*x[2]^2");
        assert_eq!(f.checked_div(&p("x[1]^-1 + 3*x[2]^2")).unwrap(), p("x[1] + x[2] + 1"));
        assert!(p("x[1] + 2").checked_div(&p("x[1] + 1")).is_none());
        assert!(p("1").checked_div(&p("2*x[1]")).is_none());
        assert!(p("x[1]").checked_div(&LaurentPoly::zero()).is_none());
    }

    #[test]
    fn json_rendering() {
        let j = p("2*Y[1,1]*Y[2,4]^-1").to_json();
        assert_eq!(j, serde_json::json!([{ "coef": 2, "exps": [["Y[1,1]", 1], ["Y[2,4]", -1]] }]));
    }

    fn arb_var() -> impl Strategy<Value = Var> {
        prop_oneof![
            (1u32..4).prop_map(Var::X),
            (1u32..3).prop_map(Var::Coef),
            (1u32..3, -2i32..4).prop_map(|(i, p)| Var::Y(i, p)),
            (1u32..3).prop_map(Var::T),
        ]
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        let term = (-5i64..6, prop::collection::vec((arb_var(), -2i64..3), 0..3));
        prop::collection::vec(term, 0..5).prop_map(|ts| {
            LaurentPoly::from_terms(ts.into_iter().map(|(c, m)| (Monomial::from_pairs(m), c)))
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn canonical_string_round_trips(a in arb_poly()) {
            let s = a.canonical_string();
            prop_assert_eq!(s.parse::<LaurentPoly>().unwrap(), a);
        }

        #[test]
        fn canonical_form_has_no_zeros(a in arb_poly(), b in arb_poly()) {
            let prod = &(&a * &b) - &b;
            for (m, c) in prod.terms() {
                prop_assert!(!c.is_zero());
                prop_assert!(m.iter().all(|(_, e)| e != 0));
            }
        }

        #[test]
        fn product_divides_exactly(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.checked_div(&b), Some(a));
        }
    }
}
