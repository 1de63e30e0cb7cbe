use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use super::RingError;

/// An element of ℤ[v, v⁻¹], stored sparsely by exponent.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `v^e`
    pub fn v_pow(e: i64) -> Self {
        Self::monomial(1, e)
    }

    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        Self { coeffs }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeff(0).is_one()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// `v ↦ v⁻¹`.
    pub fn bar(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Returns `Some((c, e))` when the polynomial is the single term `c·v^e`.
    pub fn as_monomial(&self) -> Option<(BigInt, i64)> {
        if self.coeffs.len() == 1 {
            let (e, c) = self.coeffs.iter().next().unwrap();
            Some((c.clone(), *e))
        } else {
            None
        }
    }

    /// Whether all exponents are strictly negative (the zero polynomial qualifies).
    pub fn in_neg_span(&self) -> bool {
        self.max_exp().map_or(true, |e| e < 0)
    }

    /// Part with negative exponents only.
    pub fn negative_part(&self) -> Self {
        Self {
            coeffs: self.coeffs.range(..0).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval_int(&self, v: &BigInt) -> Option<num_rational::BigRational> {
        use num_rational::BigRational;
        if v.is_zero() && self.min_exp().is_some_and(|e| e < 0) {
            return None;
        }
        let mut total = BigRational::zero();
        for (e, c) in self.terms() {
            let base = num_traits::pow(v.clone(), e.unsigned_abs() as usize);
            let term = if e >= 0 {
                BigRational::from_integer(c * base)
            } else {
                BigRational::new(c.clone(), base)
            };
            total += term;
        }
        Some(total)
    }

    /// Value at `v = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Exact division; fails unless `self = other · quotient` in ℤ[v, v⁻¹].
    pub fn div_exact(&self, other: &Self) -> Result<Self, RingError> {
        if other.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (dlow, dhigh) = (other.min_exp().unwrap(), other.max_exp().unwrap());
        let lead = other.coeff(dhigh);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(top) = rem.max_exp() {
            if top - dhigh < rem.min_exp().unwrap() - dlow {
                return Err(RingError::Inexact);
            }
            let (q, r) = rem.coeff(top).div_rem(&lead);
            if !r.is_zero() {
                return Err(RingError::Inexact);
            }
            let e = top - dhigh;
            rem = &rem - &other.shift(e).scale(&q);
            quot.add_term(e, q);
        }
        Ok(quot)
    }

    /// JSON object mapping exponent strings to integer coefficients.
    pub fn to_json(&self) -> Value {
        let mut map = serde_json::Map::new();
        for (e, c) in self.terms() {
            let num = match c.to_string().parse::<serde_json::Number>() {
                Ok(n) => Value::Number(n),
                Err(_) => Value::String(c.to_string()),
            };
            map.insert(e.to_string(), num);
        }
        Value::Object(map)
    }

    pub fn from_json(value: &Value) -> Result<Self, RingError> {
        let obj = value
            .as_object()
            .ok_or_else(|| RingError::Parse("expected an object of exponent → coefficient".into()))?;
        let mut p = Self::zero();
        for (k, c) in obj {
            let e: i64 = k
                .parse()
                .map_err(|_| RingError::Parse(format!("bad exponent {k:?}")))?;
            let c: BigInt = match c {
                Value::Number(n) => n
                    .to_string()
                    .parse()
                    .map_err(|_| RingError::Parse(format!("bad coefficient {n}")))?,
                Value::String(s) => s
                    .parse()
                    .map_err(|_| RingError::Parse(format!("bad coefficient {s:?}")))?,
                _ => return Err(RingError::Parse("coefficient must be an integer".into())),
            };
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            match (*e, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (_, true) => write!(f, "v^{e}")?,
                (_, false) => write!(f, "{abs}*v^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(c: BigInt) -> Self {
        Self::constant(c)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, -c);
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

/// `[m] = (v^m − v^{−m})/(v − v^{−1})`.
pub fn quantum_integer(m: i64) -> Result<LaurentPoly, RingError> {
    if m < 0 {
        return Err(RingError::NegativeArgument(m));
    }
    Ok(LaurentPoly::from_terms(
        (0..m).map(|k| (m - 1 - 2 * k, 1i64)),
    ))
}

/// `[t]! = [t][t−1]⋯[1]`.
pub fn quantum_factorial(t: i64) -> Result<LaurentPoly, RingError> {
    if t < 0 {
        return Err(RingError::NegativeArgument(t));
    }
    let mut acc = LaurentPoly::one();
    for k in 1..=t {
        acc = &acc * &quantum_integer(k)?;
    }
    Ok(acc)
}

/// Gaussian binomial `[m choose t]`, built with the q-Pascal rule.
pub fn gauss_binomial(m: i64, t: i64) -> Result<LaurentPoly, RingError> {
    if m < 0 {
        return Err(RingError::NegativeArgument(m));
    }
    if t < 0 {
        return Err(RingError::NegativeArgument(t));
    }
    if t > m {
        return Err(RingError::OutOfRange { m, t });
    }
    // [m, t] = v^{-t} [m-1, t] + v^{m-t} [m-1, t-1]
    let mut row = vec![LaurentPoly::one()];
    for mm in 1..=m {
        let mut next = Vec::with_capacity(mm as usize + 1);
        for tt in 0..=mm {
            let mut x = LaurentPoly::zero();
            if tt < mm {
                x += &row[tt as usize].shift(-tt);
            }
            if tt >= 1 {
                x += &row[(tt - 1) as usize].shift(mm - tt);
            }
            next.push(x);
        }
        row = next;
    }
    Ok(row[t as usize].clone())
}
