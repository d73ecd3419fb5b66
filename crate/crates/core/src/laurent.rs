//! Exact Laurent polynomials over `BigInt`, their fraction field, and unit normalization.
//!
//! One formal variable per value: `q`, or `u` standing for `t^{1/2}` so that
//! half-integer powers of `t` stay integral.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("variable mismatch: {0} vs {1}")]
    VariableMismatch(Var, Var),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no unit normal form")]
    ZeroNormalForm,
    #[error("expected a polynomial in {expected}, got one in {found}")]
    WrongVariable { expected: Var, found: Var },
    #[error("division is not exact")]
    InexactDivision,
}

/// The formal variable of a polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Q,
    /// `u = t^{1/2}`.
    U,
}

impl Var {
    pub fn symbol(self) -> &'static str {
        match self {
            Var::Q => "q",
            Var::U => "u",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Sparse Laurent polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    var: Var,
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero(var: Var) -> Self {
        LaurentPoly { var, terms: BTreeMap::new() }
    }

    pub fn one(var: Var) -> Self {
        Self::monomial(var, 1, 0)
    }

    pub fn constant(var: Var, c: impl Into<BigInt>) -> Self {
        Self::monomial(var, c, 0)
    }

    pub fn monomial(var: Var, coef: impl Into<BigInt>, exp: i64) -> Self {
        let coef = coef.into();
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(exp, coef);
        }
        LaurentPoly { var, terms }
    }

    /// `x^exp` with coefficient one.
    pub fn power(var: Var, exp: i64) -> Self {
        Self::monomial(var, 1, exp)
    }

    pub fn from_terms<C: Into<BigInt>>(var: Var, terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = Self::zero(var);
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// A single term `c·x^e`.
    pub fn as_monomial(&self) -> Option<(&BigInt, i64)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (c, *e))
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn lowest_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next()
    }

    fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(AlgebraError::VariableMismatch(self.var, other.var))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = Self::zero(self.var);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.var);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            var: self.var,
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.var);
        }
        LaurentPoly {
            var: self.var,
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Substitute `x ↦ x^k` (k may be negative) and relabel the variable.
    pub fn substitute_power(&self, k: i64, var: Var) -> Self {
        let mut out = Self::zero(var);
        for (e, c) in &self.terms {
            out.add_term(e * k, c.clone());
        }
        out
    }

    /// Gcd of the coefficients, non-negative.
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Exact quotient `self / other`, or `InexactDivision`.
    pub fn try_div_exact(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        if other.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.var));
        }
        let (a, sa) = to_dense(self);
        let (b, sb) = to_dense(other);
        let q = dense_div_exact(&a, &b).ok_or(AlgebraError::InexactDivision)?;
        Ok(from_dense(self.var, &q, sa - sb))
    }

    /// Positive-normalized gcd up to units: min exponent 0, positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        if self.is_zero() && other.is_zero() {
            return Ok(Self::zero(self.var));
        }
        if self.is_zero() {
            return Ok(unit_strip(other));
        }
        if other.is_zero() {
            return Ok(unit_strip(self));
        }
        let (a, _) = to_dense(self);
        let (b, _) = to_dense(other);
        Ok(from_dense(self.var, &dense_gcd(&a, &b), 0))
    }

    pub fn json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("polynomial serializes")
    }
}

/// `x^k − x^{-k}`.
pub fn qnum(k: i64, var: Var) -> LaurentPoly {
    let mut p = LaurentPoly::zero(var);
    p.add_term(k, BigInt::one());
    p.add_term(-k, -BigInt::one());
    p
}

/// `t ↦ q^{-4}`, i.e. `u ↦ q^{-2}`.
pub fn specialize_t_to_q(p: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
    if p.var != Var::U {
        return Err(AlgebraError::WrongVariable { expected: Var::U, found: p.var });
    }
    Ok(p.substitute_power(-2, Var::Q))
}

fn unit_strip(p: &LaurentPoly) -> LaurentPoly {
    let (d, _) = to_dense(p);
    let mut d = primitive_part(&d);
    if d.last().is_some_and(|c| c.is_negative()) {
        d.iter_mut().for_each(|c| *c = -&*c);
    }
    from_dense(p.var, &d, 0)
}

// Dense helpers: index = exponent offset from the minimum, trailing entry nonzero.

fn to_dense(p: &LaurentPoly) -> (Vec<BigInt>, i64) {
    let lo = p.min_exp().unwrap_or(0);
    let hi = p.max_exp().unwrap_or(0);
    let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
    for (e, c) in &p.terms {
        v[(e - lo) as usize] = c.clone();
    }
    (v, lo)
}

fn from_dense(var: Var, v: &[BigInt], shift: i64) -> LaurentPoly {
    let mut p = LaurentPoly::zero(var);
    for (i, c) in v.iter().enumerate() {
        p.add_term(i as i64 + shift, c.clone());
    }
    p
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn content_of(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive_part(v: &[BigInt]) -> Vec<BigInt> {
    let c = content_of(v);
    if c.is_zero() || c.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &c).collect()
}

/// Pseudo-remainder of `a` by `b` (`b` nonzero, trimmed).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let off = dr - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + off] -= &lr * bc;
        }
        trim(&mut r);
    }
    r
}

fn dense_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    // Strip powers of x first; they are units in the Laurent ring.
    let strip = |v: &[BigInt]| -> Vec<BigInt> {
        let z = v.iter().take_while(|c| c.is_zero()).count();
        let mut w = v[z..].to_vec();
        trim(&mut w);
        w
    };
    let mut a = primitive_part(&strip(a));
    let mut b = primitive_part(&strip(b));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = primitive_part(&r);
        trim(&mut b);
    }
    let mut g = primitive_part(&a);
    if g.last().is_some_and(|c| c.is_negative()) {
        g.iter_mut().for_each(|c| *c = -&*c);
    }
    g
}

fn dense_div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    if r.is_empty() {
        return Some(Vec::new());
    }
    if r.len() < b.len() {
        return None;
    }
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let (quot, rem) = r[dr].div_rem(&lb);
        if !rem.is_zero() {
            return None;
        }
        let off = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[i + off] -= &quot * bc;
        }
        q[off] = quot;
        trim(&mut r);
    }
    if r.iter().all(|c| c.is_zero()) {
        trim(&mut q);
        Some(q)
    } else {
        None
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("Laurent add")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_sub(rhs).expect("Laurent sub")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("Laurent mul")
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

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident, $ty:ty) => {
        impl $tr for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &$ty) -> $ty {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add, LaurentPoly);
forward_owned!(Sub, sub, LaurentPoly);
forward_owned!(Mul, mul, LaurentPoly);

fn write_monomial(f: &mut fmt::Formatter<'_>, var: Var, exp: i64) -> fmt::Result {
    match var {
        Var::Q => match exp {
            1 => write!(f, "q"),
            e => write!(f, "q^{e}"),
        },
        Var::U => {
            if exp % 2 == 0 {
                match exp / 2 {
                    1 => write!(f, "t"),
                    e => write!(f, "t^{e}"),
                }
            } else {
                write!(f, "t^({exp}/2)")
            }
        }
    }
}

/// Increasing exponents; `u^k` is shown as `t^(k/2)`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if *e == 0 {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write_monomial(f, self.var, *e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.var, self)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<(i64, String)> = self.terms.iter().map(|(e, c)| (*e, c.to_string())).collect();
        let mut st = s.serialize_struct("LaurentPoly", 2)?;
        st.serialize_field("var", self.var.symbol())?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            var: String,
            terms: Vec<(i64, String)>,
        }
        let raw = Raw::deserialize(d)?;
        let var = match raw.var.as_str() {
            "q" => Var::Q,
            "u" => Var::U,
            other => return Err(de::Error::custom(format!("unknown variable {other:?}"))),
        };
        let mut p = LaurentPoly::zero(var);
        for (e, c) in raw.terms {
            let c: BigInt = c.parse().map_err(de::Error::custom)?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

/// A quotient of Laurent polynomials kept in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFn {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, AlgebraError> {
        num.check(&den)?;
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        let den = LaurentPoly::one(p.var);
        RatFn { num: p, den }
    }

    pub fn zero(var: Var) -> Self {
        Self::from_poly(LaurentPoly::zero(var))
    }

    pub fn one(var: Var) -> Self {
        Self::from_poly(LaurentPoly::one(var))
    }

    fn canonical(num: LaurentPoly, den: LaurentPoly) -> Self {
        let var = num.var;
        if num.is_zero() {
            return Self::zero(var);
        }
        let g = num.gcd(&den).expect("same variable");
        let mut num = num.try_div_exact(&g).expect("gcd divides numerator");
        let mut den = den.try_div_exact(&g).expect("gcd divides denominator");
        let m = den.min_exp().expect("nonzero denominator");
        num = num.shift(-m);
        den = den.shift(-m);
        if den.lowest_coeff().is_some_and(|c| c.is_negative()) {
            num = -num;
            den = -den;
        }
        // Integer content left over after the primitive gcd.
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = LaurentPoly {
                var,
                terms: num.terms.into_iter().map(|(e, v)| (e, v / &c)).collect(),
            };
            den = LaurentPoly {
                var,
                terms: den.terms.into_iter().map(|(e, v)| (e, v / &c)).collect(),
            };
        }
        RatFn { num, den }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn var(&self) -> Var {
        self.num.var
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial value when the denominator is `1`.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    /// Laurent value when the denominator is a monomial.
    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        let (c, e) = self.den.as_monomial()?;
        let c = c.clone();
        let mut out = LaurentPoly::zero(self.var());
        for (k, v) in self.num.terms() {
            let (q, r) = v.div_rem(&c);
            if !r.is_zero() {
                return None;
            }
            out.add_term(k - e, q);
        }
        Some(out)
    }

    pub fn add(&self, o: &Self) -> Result<Self, AlgebraError> {
        let n = self.num.try_mul(&o.den)?.try_add(&o.num.try_mul(&self.den)?)?;
        Ok(Self::canonical(n, self.den.try_mul(&o.den)?))
    }

    pub fn sub(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Result<Self, AlgebraError> {
        Ok(Self::canonical(self.num.try_mul(&o.num)?, self.den.try_mul(&o.den)?))
    }

    pub fn div(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.num.check(&o.num)?;
        if o.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::canonical(self.num.try_mul(&o.den)?, self.den.try_mul(&o.num)?))
    }

    pub fn neg(&self) -> Self {
        RatFn { num: -&self.num, den: self.den.clone() }
    }

    pub fn json(&self) -> serde_json::Value {
        serde_json::json!({ "num": self.num.json(), "den": self.den.json() })
    }
}

/// Arithmetic selector used by [`rat_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rat_arith(op: RatOp, a: &RatFn, b: &RatFn) -> Result<RatFn, AlgebraError> {
    match op {
        RatOp::Add => a.add(b),
        RatOp::Sub => a.sub(b),
        RatOp::Mul => a.mul(b),
        RatOp::Div => a.div(b),
    }
}

impl From<LaurentPoly> for RatFn {
    fn from(p: LaurentPoly) -> Self {
        RatFn::from_poly(p)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.var(), self)
    }
}

impl Serialize for RatFn {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RatFn", 2)?;
        st.serialize_field("num", &self.num)?;
        st.serialize_field("den", &self.den)?;
        st.end()
    }
}

/// `p = sign · x^exponent · normal` with `normal` starting at `x^0` with a positive coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitNormalForm {
    pub unit_sign: i8,
    pub unit_exponent: i64,
    pub normal: LaurentPoly,
}

pub fn normalize_unit(p: &LaurentPoly) -> Result<UnitNormalForm, AlgebraError> {
    let m = p.min_exp().ok_or(AlgebraError::ZeroNormalForm)?;
    let mut normal = p.shift(-m);
    let mut sign = 1;
    if normal.lowest_coeff().is_some_and(|c| c.is_negative()) {
        sign = -1;
        normal = -normal;
    }
    Ok(UnitNormalForm { unit_sign: sign, unit_exponent: m, normal })
}

impl UnitNormalForm {
    /// Renders the unit as `+q^k` / `-t^(k/2)`.
    pub fn unit_string(&self) -> String {
        let sign = if self.unit_sign < 0 { "-" } else { "+" };
        let mono = LaurentPoly::power(self.normal.var(), self.unit_exponent);
        format!("{sign}{mono}")
    }
}
