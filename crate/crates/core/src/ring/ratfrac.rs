use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::{LaurentPoly, RingError};

/// A fraction of Laurent polynomials in canonical form: the denominator is an
/// ordinary polynomial with nonzero constant term and positive leading
/// coefficient, and numerator and denominator are coprime over ℚ[v] with
/// integer content 1 overall.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFrac {
    num: LaurentPoly,
    den: LaurentPoly,
}

/// Dense polynomial with ascending coefficients.
type Dense = Vec<BigInt>;

fn to_dense(p: &LaurentPoly) -> (Dense, i64) {
    let low = p.min_exp().unwrap_or(0);
    let high = p.max_exp().unwrap_or(0);
    let mut d = vec![BigInt::zero(); (high - low + 1) as usize];
    for (e, c) in p.terms() {
        d[(e - low) as usize] = c.clone();
    }
    (d, low)
}

fn from_dense(d: &[BigInt], low: i64) -> LaurentPoly {
    LaurentPoly::from_terms(d.iter().enumerate().map(|(k, c)| (low + k as i64, c.clone())))
}

fn trim(d: &mut Dense) {
    while d.len() > 1 && d.last().is_some_and(|c| c.is_zero()) {
        d.pop();
    }
}

fn content(d: &[BigInt]) -> BigInt {
    d.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(d: &[BigInt]) -> Dense {
    let g = content(d);
    if g.is_zero() {
        return d.to_vec();
    }
    d.iter().map(|c| c / &g).collect()
}

fn is_zero_dense(d: &[BigInt]) -> bool {
    d.iter().all(|c| c.is_zero())
}

/// Pseudo-remainder of `a` by `b` (deg b ≥ 0, b nonzero).
fn prem(a: &[BigInt], b: &[BigInt]) -> Dense {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db && !is_zero_dense(&r) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (k, bc) in b.iter().enumerate() {
            r[k + shift] -= &lr * bc;
        }
        trim(&mut r);
        if r.len() - 1 == dr {
            // Leading term cancelled exactly to zero above; guard against a stall.
            r.pop();
            trim(&mut r);
        }
    }
    r
}

/// Primitive gcd over ℤ[v] via the primitive remainder sequence.
fn poly_gcd(a: &[BigInt], b: &[BigInt]) -> Dense {
    let mut x = primitive(a);
    let mut y = primitive(b);
    trim(&mut x);
    trim(&mut y);
    if is_zero_dense(&x) {
        return y;
    }
    while !is_zero_dense(&y) {
        let r = prem(&x, &y);
        x = y;
        y = primitive(&r);
        trim(&mut y);
    }
    let mut g = primitive(&x);
    if g.last().is_some_and(|c| c.is_negative()) {
        g = g.iter().map(|c| -c).collect();
    }
    g
}

/// Exact division of dense polynomials over ℤ, scaling the dividend when
/// the divisor is not monic (the quotient is then rescaled by the caller).
fn div_dense(a: &[BigInt], b: &[BigInt]) -> Option<Dense> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() < b.len() {
        return if is_zero_dense(&r) { Some(vec![BigInt::zero()]) } else { None };
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].clone();
        let (qq, rr) = c.div_rem(&b[db]);
        if !rr.is_zero() {
            return None;
        }
        for (j, bc) in b.iter().enumerate() {
            r[k + j] -= &qq * bc;
        }
        q[k] = qq;
    }
    if is_zero_dense(&r) {
        Some(q)
    } else {
        None
    }
}

impl RatFrac {
    /// Canonical form of `num / den`.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, RingError> {
        if den.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self { num, den: LaurentPoly::one() });
        }
        let (nd, nlow) = to_dense(&num);
        let (dd, dlow) = to_dense(&den);
        // g is primitive, so by Gauss's lemma both quotients are integral.
        let g = poly_gcd(&nd, &dd);
        let mut nq = div_dense(&nd, &g).expect("gcd divides the numerator");
        let mut dq = div_dense(&dd, &g).expect("gcd divides the denominator");
        let c = content(&nq).gcd(&content(&dq));
        if !c.is_one() {
            nq = nq.iter().map(|x| x / &c).collect();
            dq = dq.iter().map(|x| x / &c).collect();
        }
        trim(&mut dq);
        if dq.last().unwrap().is_negative() {
            nq = nq.iter().map(|x| -x).collect();
            dq = dq.iter().map(|x| -x).collect();
        }
        let num = from_dense(&nq, nlow - dlow);
        let den = from_dense(&dq, 0);
        Ok(Self { num, den })
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self { num: p, den: LaurentPoly::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The Laurent polynomial this fraction equals, if any.
    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        self.num.div_exact(&self.den).ok()
    }

    pub fn bar(&self) -> Self {
        Self::new(self.num.bar(), self.den.bar()).expect("nonzero denominator")
    }

    pub fn inv(&self) -> Result<Self, RingError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn scale_poly(&self, p: &LaurentPoly) -> Self {
        Self::new(&self.num * p, self.den.clone()).expect("nonzero denominator")
    }

    /// `{"num": …, "den": …}` with Laurent-polynomial objects.
    pub fn to_json(&self) -> Value {
        json!({"num": self.num.to_json(), "den": self.den.to_json()})
    }

    pub fn from_json(value: &Value) -> Result<Self, RingError> {
        let part = |key: &str| {
            value
                .get(key)
                .ok_or_else(|| RingError::Parse(format!("fraction is missing {key:?}")))
                .and_then(LaurentPoly::from_json)
        };
        Self::new(part("num")?, part("den")?)
    }
}

impl PartialEq<LaurentPoly> for RatFrac {
    fn eq(&self, other: &LaurentPoly) -> bool {
        &self.num == &(other * &self.den)
    }
}

impl fmt::Display for RatFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFrac({self})")
    }
}

impl From<LaurentPoly> for RatFrac {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &RatFrac {
    type Output = RatFrac;
    fn add(self, rhs: &RatFrac) -> RatFrac {
        RatFrac::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("nonzero denominator")
    }
}

impl Sub for &RatFrac {
    type Output = RatFrac;
    fn sub(self, rhs: &RatFrac) -> RatFrac {
        self + &(-rhs)
    }
}

impl Mul for &RatFrac {
    type Output = RatFrac;
    fn mul(self, rhs: &RatFrac) -> RatFrac {
        RatFrac::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl Div for &RatFrac {
    type Output = Result<RatFrac, RingError>;
    fn div(self, rhs: &RatFrac) -> Result<RatFrac, RingError> {
        RatFrac::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RatFrac {
    type Output = RatFrac;
    fn neg(self) -> RatFrac {
        RatFrac { num: -&self.num, den: self.den.clone() }
    }
}

/// Cross-multiplication equality, independent of canonicalisation.
pub fn frac_eq(a: &RatFrac, b: &RatFrac) -> bool {
    &a.num * &b.den == &b.num * &a.den
}

impl RatFrac {
    /// Lowest-terms check used by tests: gcd over ℚ[v] of the stored parts is 1.
    pub fn is_reduced(&self) -> bool {
        let (n, _) = to_dense(&self.num);
        let (d, _) = to_dense(&self.den);
        poly_gcd(&n, &d).len() == 1
    }
}

#[cfg(test)]
fn dense_gcd_degree(a: &LaurentPoly, b: &LaurentPoly) -> usize {
    let (x, _) = to_dense(a);
    let (y, _) = to_dense(b);
    poly_gcd(&x, &y).len() - 1
}
