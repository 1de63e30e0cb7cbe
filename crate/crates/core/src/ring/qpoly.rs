use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{LaurentPoly, RingError};

/// Integer polynomial in `q`; embeds into Laurent polynomials via `q = v²`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct IntPolyQ {
    coeffs: BTreeMap<u32, BigInt>,
}

impl IntPolyQ {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, e: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c.into());
        p
    }

    pub fn from_coeffs<C: Into<BigInt>>(cs: impl IntoIterator<Item = C>) -> Self {
        let mut p = Self::zero();
        for (e, c) in cs.into_iter().enumerate() {
            p.add_term(e as u32, c.into());
        }
        p
    }

    pub fn add_term(&mut self, e: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: u32) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        let Some(deg) = self.degree() else { return BigInt::zero() };
        (0..=deg).rev().fold(BigInt::zero(), |acc, e| acc * q + self.coeff(e))
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.coeffs.iter().map(|(e, c)| (2 * *e as i64, c.clone())))
    }

    /// Inverse of [`to_laurent`](Self::to_laurent), if `p` only has even nonnegative exponents.
    pub fn from_laurent(p: &LaurentPoly) -> Option<Self> {
        let mut out = Self::zero();
        for (e, c) in p.terms() {
            if e < 0 || e % 2 != 0 {
                return None;
            }
            out.add_term((e / 2) as u32, c.clone());
        }
        Some(out)
    }
}

impl Add for &IntPolyQ {
    type Output = IntPolyQ;
    fn add(self, rhs: &IntPolyQ) -> IntPolyQ {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Mul for &IntPolyQ {
    type Output = IntPolyQ;
    fn mul(self, rhs: &IntPolyQ) -> IntPolyQ {
        let mut out = IntPolyQ::zero();
        for (a, x) in self.terms() {
            for (b, y) in rhs.terms() {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl fmt::Display for IntPolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            }
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{mag}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolyQ({self})")
    }
}

/// Fits an integer polynomial through all but the last sample by Newton
/// interpolation, then checks the fit against the last sample.
pub fn interpolate(samples: &[(BigInt, BigInt)]) -> Result<IntPolyQ, RingError> {
    if samples.len() < 2 {
        return Err(RingError::Interpolation);
    }
    let (fit, check) = samples.split_at(samples.len() - 1);
    let xs: Vec<BigRational> = fit.iter().map(|(x, _)| BigRational::from_integer(x.clone())).collect();
    let mut dd: Vec<BigRational> = fit.iter().map(|(_, y)| BigRational::from_integer(y.clone())).collect();
    for level in 1..dd.len() {
        for k in (level..dd.len()).rev() {
            let den = &xs[k] - &xs[k - level];
            dd[k] = (&dd[k] - &dd[k - 1]) / den;
        }
    }
    // Expand the Newton form into monomial coefficients.
    let mut poly: Vec<BigRational> = vec![BigRational::zero()];
    for k in (0..dd.len()).rev() {
        let mut next = vec![BigRational::zero(); poly.len() + 1];
        for (e, c) in poly.iter().enumerate() {
            next[e + 1] += c;
            next[e] -= c * &xs[k];
        }
        next[0] += &dd[k];
        poly = next;
    }
    let mut out = IntPolyQ::zero();
    for (e, c) in poly.into_iter().enumerate() {
        if !c.is_integer() {
            return Err(RingError::Interpolation);
        }
        out.add_term(e as u32, c.to_integer());
    }
    let (x, y) = &check[0];
    if &out.eval(x) != y {
        return Err(RingError::Interpolation);
    }
    Ok(out)
}
