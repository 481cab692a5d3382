//! Exact Laurent-polynomial arithmetic.
//!
//! Two concrete types: [`LaurentPoly`] in one variable (the bracket variable
//! `q`) and [`LaurentPoly2`] in two variables (the HOMFLY variables `q`, `z`).
//! Coefficients are arbitrary-precision rationals and every value is kept in
//! canonical form: zero coefficients are never stored, so equality is plain
//! coefficient-map equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::EvalError;

/// Integer-valued rational, a convenience for building exact coefficients.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn rat_to_f64(r: &BigRational) -> f64 {
    // Exact conversion can overflow for huge terms; fall back through BigInt.
    r.to_f64().unwrap_or(f64::NAN)
}

/// A Laurent polynomial `sum c_e * var^e` with rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    var: char,
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero(var: char) -> Self {
        LaurentPoly { var, terms: BTreeMap::new() }
    }

    pub fn one(var: char) -> Self {
        Self::monomial(var, 0, rat(1))
    }

    /// The monomial `coeff * var^exp`.
    pub fn monomial(var: char, exp: i64, coeff: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPoly { var, terms }
    }

    /// Convenience constructor from `(exponent, integer coefficient)` pairs.
    pub fn from_terms(var: char, pairs: &[(i64, i64)]) -> Self {
        let mut p = Self::zero(var);
        for &(e, c) in pairs {
            p.add_term(e, rat(c));
        }
        p
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        self.terms.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub(crate) fn add_term(&mut self, exp: i64, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Multiply by the monomial `coeff * var^exp` in place.
    pub fn mul_monomial(&self, exp: i64, coeff: &BigRational) -> Self {
        let mut out = Self::zero(self.var);
        if coeff.is_zero() {
            return out;
        }
        for (e, c) in &self.terms {
            out.terms.insert(e + exp, c * coeff);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.var);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Integer power; negative exponents are defined for monomials only.
    pub fn pow_int(&self, n: i64) -> Result<Self, EvalError> {
        if n >= 0 {
            return Ok(self.pow(n as u32));
        }
        if self.terms.len() != 1 {
            return Err(EvalError::NegativePowerOfNonMonomial);
        }
        let (e, c) = self.terms.iter().next().expect("single term");
        let inv = Self::monomial(self.var, -e, c.recip());
        Ok(inv.pow((-n) as u32))
    }

    /// Evaluate at a nonzero complex point.
    pub fn eval(&self, x: Complex64) -> Result<Complex64, EvalError> {
        if x.norm() == 0.0 {
            return Err(EvalError::ZeroEvaluationPoint);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            acc += Complex64::new(rat_to_f64(c), 0.0) * x.powi(*e as i32);
        }
        Ok(acc)
    }

    pub fn eval_real(&self, x: f64) -> Result<f64, EvalError> {
        Ok(self.eval(Complex64::new(x, 0.0))?.re)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.var, rhs.var, "variable mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            var: self.var,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.var, rhs.var, "variable mismatch");
        let mut out = LaurentPoly::zero(self.var);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{}*{}", c, self.var)?,
                _ => write!(f, "{}*{}^{}", c, self.var, e)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            var: char,
            terms: Terms<'a>,
        }
        struct Terms<'a>(&'a BTreeMap<i64, BigRational>);
        impl Serialize for Terms<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(self.0.len()))?;
                for (e, c) in self.0 {
                    seq.serialize_element(&(e, c.to_string()))?;
                }
                seq.end()
            }
        }
        Repr { var: self.var, terms: Terms(&self.terms) }.serialize(s)
    }
}

/// A Laurent polynomial in two variables.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly2 {
    vars: (char, char),
    terms: BTreeMap<(i64, i64), BigRational>,
}

impl LaurentPoly2 {
    pub fn zero(vars: (char, char)) -> Self {
        LaurentPoly2 { vars, terms: BTreeMap::new() }
    }

    pub fn one(vars: (char, char)) -> Self {
        Self::monomial(vars, (0, 0), rat(1))
    }

    pub fn monomial(vars: (char, char), exp: (i64, i64), coeff: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPoly2 { vars, terms }
    }

    pub fn from_terms(vars: (char, char), pairs: &[(i64, i64, i64)]) -> Self {
        let mut p = Self::zero(vars);
        for &(e1, e2, c) in pairs {
            p.add_term((e1, e2), rat(c));
        }
        p
    }

    pub fn vars(&self) -> (char, char) {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &BigRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub(crate) fn add_term(&mut self, exp: (i64, i64), coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn mul_monomial(&self, exp: (i64, i64), coeff: &BigRational) -> Self {
        let mut out = Self::zero(self.vars);
        if coeff.is_zero() {
            return out;
        }
        for (e, c) in &self.terms {
            out.terms.insert((e.0 + exp.0, e.1 + exp.1), c * coeff);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.vars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluate at a pair of nonzero complex points.
    pub fn eval(&self, x: Complex64, y: Complex64) -> Result<Complex64, EvalError> {
        if x.norm() == 0.0 || y.norm() == 0.0 {
            return Err(EvalError::ZeroEvaluationPoint);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for ((e1, e2), c) in &self.terms {
            acc += Complex64::new(rat_to_f64(c), 0.0) * x.powi(*e1 as i32) * y.powi(*e2 as i32);
        }
        Ok(acc)
    }
}

impl Add for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn add(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        assert_eq!(self.vars, rhs.vars, "variable mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn sub(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn neg(self) -> LaurentPoly2 {
        LaurentPoly2 {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn mul(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        assert_eq!(self.vars, rhs.vars, "variable mismatch");
        let mut out = LaurentPoly2::zero(self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term((e1.0 + e2.0, e1.1 + e2.1), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((e1, e2), c) in &self.terms {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            if *e1 != 0 {
                write!(f, "*{}^{}", self.vars.0, e1)?;
            }
            if *e2 != 0 {
                write!(f, "*{}^{}", self.vars.1, e2)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for LaurentPoly2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            vars: (char, char),
            terms: Terms<'a>,
        }
        struct Terms<'a>(&'a BTreeMap<(i64, i64), BigRational>);
        impl Serialize for Terms<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(self.0.len()))?;
                for ((e1, e2), c) in self.0 {
                    seq.serialize_element(&(e1, e2, c.to_string()))?;
                }
                seq.end()
            }
        }
        Repr { vars: self.vars, terms: Terms(&self.terms) }.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> LaurentPoly {
        LaurentPoly::monomial('q', 1, rat(1))
    }

    #[test]
    fn difference_of_squares() {
        let sum = LaurentPoly::from_terms('q', &[(1, 1), (-1, 1)]);
        let diff = LaurentPoly::from_terms('q', &[(1, 1), (-1, -1)]);
        assert_eq!(&sum * &diff, LaurentPoly::from_terms('q', &[(2, 1), (-2, -1)]));
    }

    #[test]
    fn additive_inverse() {
        let p = LaurentPoly::from_terms('q', &[(3, 2), (0, -7), (-2, 5)]);
        assert!((&p + &(-&p)).is_zero());
    }

    #[test]
    fn loop_value_cube() {
        // (-q^2 - q^-2)^3 expanded by repeated multiplication.
        let delta = LaurentPoly::from_terms('q', &[(2, -1), (-2, -1)]);
        let expect = LaurentPoly::from_terms('q', &[(6, -1), (2, -3), (-2, -3), (-6, -1)]);
        assert_eq!(delta.pow(3), expect);
    }

    #[test]
    fn eval_points() {
        let delta = LaurentPoly::from_terms('q', &[(2, -1), (-2, -1)]);
        assert!((delta.eval_real(-1.0).unwrap() + 2.0).abs() < 1e-14);
        let p = LaurentPoly::from_terms('q', &[(3, 1)]);
        assert!((p.eval_real(2.0).unwrap() - 8.0).abs() < 1e-14);
        // At q = 1 every polynomial evaluates to the sum of its coefficients.
        let r = LaurentPoly::from_terms('q', &[(5, 2), (0, 3), (-4, -1)]);
        assert!((r.eval_real(1.0).unwrap() - 4.0).abs() < 1e-14);
        assert_eq!(r.eval(Complex64::new(0.0, 0.0)), Err(EvalError::ZeroEvaluationPoint));
    }

    #[test]
    fn negative_powers() {
        let m = LaurentPoly::monomial('q', 3, rat(-1));
        let inv = m.pow_int(-2).unwrap();
        assert_eq!(inv, LaurentPoly::from_terms('q', &[(-6, 1)]));
        let p = LaurentPoly::from_terms('q', &[(1, 1), (0, 1)]);
        assert_eq!(p.pow_int(-1), Err(EvalError::NegativePowerOfNonMonomial));
    }

    #[test]
    fn two_variable_basics() {
        let vars = ('q', 'z');
        let p = LaurentPoly2::from_terms(vars, &[(1, 0, 1), (-1, 0, -1)]);
        let unlink2 = p.mul_monomial((0, -1), &rat(1));
        assert_eq!(unlink2, LaurentPoly2::from_terms(vars, &[(1, -1, 1), (-1, -1, -1)]));
        let sq = &unlink2 * &unlink2;
        assert_eq!(
            sq,
            LaurentPoly2::from_terms(vars, &[(2, -2, 1), (0, -2, -2), (-2, -2, 1)])
        );
    }

    #[test]
    fn render_and_json() {
        let p = LaurentPoly::from_terms('q', &[(2, -1), (0, 3), (-2, -1)]);
        assert_eq!(p.to_string(), "-1*q^-2 + 3 + -1*q^2");
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"var":"q","terms":[[-2,"-1"],[0,"3"],[2,"-1"]]}"#);
    }

    #[test]
    fn q_display() {
        assert_eq!(q().to_string(), "1*q");
    }
}
