//! The level-one module Ω with basis `ω_s`, its tensor powers, q-wedges and
//! semi-infinite wedges.

mod action;
mod hecke;

use std::fmt;

use serde_json::{json, Value};

use crate::quiver::{DimVector, Partition, QuiverError};
use crate::ring::{Combination, LaurentPoly, RingError};

pub use action::{
    act_tensor, act_wedge, act_wedge_at, default_prefix_len, heisenberg_b, semisimple_closed_form, wedge_class,
};
pub use hecke::{hecke_t, hecke_x, pair_hecke, straighten};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WedgeError {
    #[error("n must be ≥ 2, got {0}")]
    InvalidN(i64),
    #[error("expected charge 0, got {0}")]
    NotChargeZero(i64),
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("{0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Generators of the double Hall algebra acting on Ω and its relatives.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Generator {
    /// `u_i^±`, i.e. `E_i` / `F_i`.
    U(i64, Sign),
    /// `K_i^power`.
    K { i: i64, power: i64 },
    /// `K_{tδ}`, `t` of either sign.
    KDelta(i64),
    /// `z_t^±`, `t ≥ 1`.
    Z(i64, Sign),
    /// `ũ_α^±` for a semisimple `α`.
    Tilde(DimVector, Sign),
}

impl Generator {
    pub fn e(i: i64) -> Self {
        Generator::U(i, Sign::Plus)
    }

    pub fn f(i: i64) -> Self {
        Generator::U(i, Sign::Minus)
    }

    pub fn k(i: i64) -> Self {
        Generator::K { i, power: 1 }
    }

    pub fn k_inv(i: i64) -> Self {
        Generator::K { i, power: -1 }
    }
}

pub fn check_n(n: i64) -> Result<(), WedgeError> {
    if n < 2 {
        return Err(WedgeError::InvalidN(n));
    }
    Ok(())
}

/// `ω_{i_1} ⊗ ⋯ ⊗ ω_{i_r}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorMonomial(pub Vec<i64>);

impl TensorMonomial {
    pub fn new(indices: impl Into<Vec<i64>>) -> Self {
        Self(indices.into())
    }

    pub fn indices(&self) -> &[i64] {
        &self.0
    }

    pub fn is_strictly_decreasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] > w[1])
    }
}

impl fmt::Debug for TensorMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ω{:?}", self.0)
    }
}

pub type TensorVector = Combination<TensorMonomial>;

/// `ω_{i_1} ∧ ω_{i_2} ∧ ⋯` with `i_s = charge − s + 1` past the prefix. The
/// prefix is kept trimmed: its last entry never follows the tail pattern.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WedgeMonomial {
    charge: i64,
    prefix: Vec<i64>,
}

impl WedgeMonomial {
    /// `|m⟩ = ω_m ∧ ω_{m−1} ∧ ⋯`.
    pub fn vacuum(charge: i64) -> Self {
        Self { charge, prefix: Vec::new() }
    }

    /// Any strictly decreasing prefix whose last entry stays above the tail.
    pub fn new(charge: i64, mut prefix: Vec<i64>) -> Result<Self, WedgeError> {
        if prefix.windows(2).any(|w| w[0] <= w[1]) {
            return Err(WedgeError::Invalid(format!("prefix {prefix:?} is not strictly decreasing")));
        }
        let len = prefix.len() as i64;
        if let Some(&last) = prefix.last() {
            if last <= charge - len {
                return Err(WedgeError::Invalid(format!("prefix {prefix:?} runs into the tail of charge {charge}")));
            }
        }
        while let Some(&last) = prefix.last() {
            if last != charge - prefix.len() as i64 + 1 {
                break;
            }
            prefix.pop();
        }
        Ok(Self { charge, prefix })
    }

    pub fn charge(&self) -> i64 {
        self.charge
    }

    pub fn prefix(&self) -> &[i64] {
        &self.prefix
    }

    /// The first `len` indices; `len` must cover the prefix.
    pub fn padded(&self, len: usize) -> Vec<i64> {
        assert!(len >= self.prefix.len());
        let mut out = self.prefix.clone();
        out.extend((self.prefix.len()..len).map(|s| self.charge - s as i64));
        out
    }

    pub fn to_json(&self) -> Value {
        json!({ "charge": self.charge, "prefix": self.prefix })
    }

    pub fn from_json(value: &Value) -> Result<Self, WedgeError> {
        let charge = value
            .get("charge")
            .and_then(Value::as_i64)
            .ok_or_else(|| WedgeError::Parse("wedge needs an integer \"charge\"".into()))?;
        let prefix = value
            .get("prefix")
            .and_then(Value::as_array)
            .ok_or_else(|| WedgeError::Parse("wedge needs a \"prefix\" list".into()))?
            .iter()
            .map(|x| x.as_i64().ok_or_else(|| WedgeError::Parse("prefix entries must be integers".into())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(charge, prefix)
    }
}

impl fmt::Debug for WedgeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "∧{:?}|{}⟩", self.prefix, self.charge - self.prefix.len() as i64)
    }
}

pub type WedgeVector = Combination<WedgeMonomial>;

pub fn wedge_vector_to_json(x: &WedgeVector) -> Value {
    let terms: Vec<Value> = x.iter().map(|(w, c)| json!({ "wedge": w.to_json(), "coeff": c.to_json() })).collect();
    json!({ "terms": terms })
}

pub fn wedge_vector_from_json(value: &Value) -> Result<WedgeVector, WedgeError> {
    if value.get("charge").is_some() && value.get("prefix").is_some() {
        return Ok(WedgeVector::basis(WedgeMonomial::from_json(value)?));
    }
    let terms = value
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| WedgeError::Parse("wedge vector needs \"terms\"".into()))?;
    let mut out = WedgeVector::zero();
    let mut charge = None;
    for t in terms {
        let w = WedgeMonomial::from_json(t.get("wedge").ok_or_else(|| WedgeError::Parse("term needs \"wedge\"".into()))?)?;
        if *charge.get_or_insert(w.charge) != w.charge {
            return Err(WedgeError::Invalid("mixed charges in one wedge vector".into()));
        }
        let c = LaurentPoly::from_json(t.get("coeff").ok_or_else(|| WedgeError::Parse("term needs \"coeff\"".into()))?)?;
        out.add_term(w, &c);
    }
    Ok(out)
}

/// `|λ⟩ ↦ ∧ω_{i_λ}` with `i_s = λ_s − s + 1`.
pub fn kappa(lam: &Partition) -> WedgeMonomial {
    let prefix = lam.parts().iter().enumerate().map(|(s, &p)| p - s as i64).collect();
    WedgeMonomial::new(0, prefix).expect("partitions give normal wedges")
}

pub fn kappa_inv(w: &WedgeMonomial) -> Result<Partition, WedgeError> {
    if w.charge != 0 {
        return Err(WedgeError::NotChargeZero(w.charge));
    }
    Ok(Partition::new(w.prefix.iter().enumerate().map(|(s, &i)| i + s as i64).collect())?)
}
