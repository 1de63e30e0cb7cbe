//! The twisted generic Ringel–Hall algebra of the cyclic quiver and of the
//! infinite line, stored in the basis `u_m` of isoclasses.

mod canonical;
mod central;
mod gamma;
mod product;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde_json::{json, Value};

use crate::quiver::{end_dim, DimVector, Multisegment, QuiverError, QuiverKind};
use crate::ring::{LaurentPoly, RatFrac, RingError};

pub use canonical::{bar_hall, bar_matrix, canonical_basis_hall};
pub use central::{central_c, central_elements, central_x, central_z, pairing_elements, pairing_psi};
pub use gamma::{gamma_d, gamma_monomial, h_form, kappa_form, lifts};
pub use product::{
    apply_word, aut_order, distinguished_word, expand_in_monomials, hall_poly, monomial_of_word, mul,
    mul_semisimple_left, mul_semisimple_right, one_step_degree_bound, MonomialExpansion, SemisimpleWord,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HallError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("grades differ: {0:?} vs {1:?}")]
    GradeMismatch(DimVector, DimVector),
    #[error("{0:?} is not a semisimple dimension vector")]
    NotSemisimple(DimVector),
    #[error("Hall coefficient is not a polynomial in q: {0}")]
    NotPolynomial(String),
    #[error("malformed Hall element: {0}")]
    Parse(String),
    #[error("{0}")]
    Internal(String),
}

/// Exponent `e` in `ũ_m = v^e u_m`.
pub fn tilde_exponent(m: &Multisegment) -> i64 {
    end_dim(m) - m.total_dim()
}

/// Which basis coefficients are written in, at the JSON boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Basis {
    #[default]
    U,
    Tilde,
}

/// A homogeneous element `Σ c_m u_m`.
#[derive(Clone, PartialEq, Eq)]
pub struct HallElement {
    kind: QuiverKind,
    grade: DimVector,
    terms: BTreeMap<Multisegment, LaurentPoly>,
}

impl HallElement {
    pub fn zero(kind: QuiverKind, grade: DimVector) -> Self {
        Self { kind, grade: grade.reduce(kind), terms: BTreeMap::new() }
    }

    pub fn one(kind: QuiverKind) -> Self {
        Self::u(&Multisegment::zero(kind))
    }

    /// The basis element `u_m`.
    pub fn u(m: &Multisegment) -> Self {
        let mut x = Self::zero(m.kind(), m.dim_vector());
        x.add_term(m.clone(), &LaurentPoly::one());
        x
    }

    /// `ũ_m = v^{dim End − dim} u_m`.
    pub fn u_tilde(m: &Multisegment) -> Self {
        let mut x = Self::zero(m.kind(), m.dim_vector());
        x.add_term(m.clone(), &LaurentPoly::v_pow(tilde_exponent(m)));
        x
    }

    /// `Σ c_m ũ_m` from ũ-coefficients.
    pub fn from_tilde(kind: QuiverKind, grade: DimVector, terms: impl IntoIterator<Item = (Multisegment, LaurentPoly)>) -> Self {
        let mut x = Self::zero(kind, grade);
        for (m, c) in terms {
            let c = c.shift(tilde_exponent(&m));
            x.add_term(m, &c);
        }
        x
    }

    pub fn kind(&self) -> QuiverKind {
        self.kind
    }

    pub fn grade(&self) -> &DimVector {
        &self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficients in the `u`-basis.
    pub fn terms(&self) -> impl Iterator<Item = (&Multisegment, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Multisegment) -> LaurentPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Coefficient of `ũ_m`.
    pub fn tilde_coeff(&self, m: &Multisegment) -> LaurentPoly {
        self.coeff(m).shift(-tilde_exponent(m))
    }

    /// All coefficients in the ũ-basis.
    pub fn tilde_terms(&self) -> BTreeMap<Multisegment, LaurentPoly> {
        self.terms.iter().map(|(m, c)| (m.clone(), c.shift(-tilde_exponent(m)))).collect()
    }

    pub fn add_term(&mut self, m: Multisegment, c: &LaurentPoly) {
        assert_eq!(m.kind(), self.kind, "term of another quiver");
        assert_eq!(m.dim_vector(), self.grade, "term {m} outside grade {:?}", self.grade);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.kind, self.grade.clone());
        for (m, x) in &self.terms {
            out.add_term(m.clone(), &(x * c));
        }
        out
    }

    pub fn support(&self) -> Vec<Multisegment> {
        self.terms.keys().cloned().collect()
    }

    pub fn to_json(&self, basis: Basis) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let c = match basis {
                    Basis::U => c.clone(),
                    Basis::Tilde => c.shift(-tilde_exponent(m)),
                };
                json!({"m": m.to_json(), "coeff": c.to_json()})
            })
            .collect();
        let mut out = kind_json(self.kind);
        out.insert("grade".into(), self.grade.to_json());
        if basis == Basis::Tilde {
            out.insert("basis".into(), json!("tilde"));
        }
        out.insert("terms".into(), Value::Array(terms));
        Value::Object(out)
    }

    pub fn from_json(value: &Value) -> Result<Self, HallError> {
        let kind = kind_from_json(value)?;
        let basis = basis_from_json(value)?;
        let mut terms = Vec::new();
        for item in terms_from_json(value)? {
            let m = Multisegment::from_json(kind, item.get("m").ok_or_else(|| HallError::Parse("term without \"m\"".into()))?)?;
            let c = LaurentPoly::from_json(item.get("coeff").ok_or_else(|| HallError::Parse("term without \"coeff\"".into()))?)?;
            terms.push((m, c));
        }
        let grade = grade_from_json(value, kind, terms.first().map(|(m, _)| m))?;
        let mut x = Self::zero(kind, grade.clone());
        for (m, c) in terms {
            if m.dim_vector() != x.grade {
                return Err(HallError::GradeMismatch(m.dim_vector(), grade));
            }
            let c = match basis {
                Basis::U => c,
                Basis::Tilde => c.shift(tilde_exponent(&m)),
            };
            x.add_term(m, &c);
        }
        Ok(x)
    }
}

fn kind_json(kind: QuiverKind) -> serde_json::Map<String, Value> {
    let mut out = serde_json::Map::new();
    match kind {
        QuiverKind::Cyclic(n) => {
            out.insert("kind".into(), json!("cyclic"));
            out.insert("n".into(), json!(n));
        }
        QuiverKind::InfiniteLine => {
            out.insert("kind".into(), json!("line"));
        }
    }
    out
}

fn kind_from_json(value: &Value) -> Result<QuiverKind, HallError> {
    match value.get("kind").and_then(Value::as_str) {
        Some("cyclic") => {
            let n = value.get("n").and_then(Value::as_i64).ok_or_else(|| HallError::Parse("cyclic kind needs \"n\"".into()))?;
            Ok(QuiverKind::cyclic(n)?)
        }
        Some("line") => Ok(QuiverKind::InfiniteLine),
        _ => Err(HallError::Parse("\"kind\" must be \"cyclic\" or \"line\"".into())),
    }
}

fn basis_from_json(value: &Value) -> Result<Basis, HallError> {
    match value.get("basis").map(|b| b.as_str()) {
        None | Some(Some("u")) => Ok(Basis::U),
        Some(Some("tilde")) => Ok(Basis::Tilde),
        _ => Err(HallError::Parse("\"basis\" must be \"u\" or \"tilde\"".into())),
    }
}

fn terms_from_json(value: &Value) -> Result<&Vec<Value>, HallError> {
    value
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| HallError::Parse("\"terms\" must be a list".into()))
}

fn grade_from_json(value: &Value, kind: QuiverKind, first: Option<&Multisegment>) -> Result<DimVector, HallError> {
    match value.get("grade") {
        Some(g) => Ok(DimVector::from_json(g)?.reduce(kind)),
        None => Ok(first.map(Multisegment::dim_vector).unwrap_or_default()),
    }
}

fn check_same(x: &HallElement, y: &HallElement) {
    assert_eq!(x.kind, y.kind, "elements of different quivers");
    assert_eq!(x.grade, y.grade, "elements of different grades");
}

impl Add for &HallElement {
    type Output = HallElement;
    fn add(self, rhs: &HallElement) -> HallElement {
        check_same(self, rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Sub for &HallElement {
    type Output = HallElement;
    fn sub(self, rhs: &HallElement) -> HallElement {
        self + &(-rhs)
    }
}

impl Neg for &HallElement {
    type Output = HallElement;
    fn neg(self) -> HallElement {
        self.scale(&LaurentPoly::constant(-1))
    }
}

impl fmt::Debug for HallElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c})·u[{m}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A homogeneous element with coefficients in `ℚ(v)`.
#[derive(Clone, PartialEq, Eq)]
pub struct RatHallElement {
    kind: QuiverKind,
    grade: DimVector,
    terms: BTreeMap<Multisegment, RatFrac>,
}

impl RatHallElement {
    pub fn zero(kind: QuiverKind, grade: DimVector) -> Self {
        Self { kind, grade: grade.reduce(kind), terms: BTreeMap::new() }
    }

    /// `s · x`.
    pub fn scaled(x: &HallElement, s: &RatFrac) -> Self {
        let mut out = Self::zero(x.kind, x.grade.clone());
        for (m, c) in x.terms() {
            out.add_term(m.clone(), &s.scale_poly(c));
        }
        out
    }

    pub fn kind(&self) -> QuiverKind {
        self.kind
    }

    pub fn grade(&self) -> &DimVector {
        &self.grade
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Multisegment, &RatFrac)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Multisegment) -> RatFrac {
        self.terms.get(m).cloned().unwrap_or_else(RatFrac::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Multisegment, c: &RatFrac) {
        assert_eq!(m.dim_vector(), self.grade, "term {m} outside grade {:?}", self.grade);
        let sum = &self.coeff(&m) + c;
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> =
            self.terms.iter().map(|(m, c)| json!({"m": m.to_json(), "coeff": c.to_json()})).collect();
        let mut out = kind_json(self.kind);
        out.insert("grade".into(), self.grade.to_json());
        out.insert("terms".into(), Value::Array(terms));
        Value::Object(out)
    }

    pub fn from_json(value: &Value) -> Result<Self, HallError> {
        let kind = kind_from_json(value)?;
        let mut terms = Vec::new();
        for item in terms_from_json(value)? {
            let m = Multisegment::from_json(kind, item.get("m").ok_or_else(|| HallError::Parse("term without \"m\"".into()))?)?;
            let c = RatFrac::from_json(item.get("coeff").ok_or_else(|| HallError::Parse("term without \"coeff\"".into()))?)?;
            terms.push((m, c));
        }
        let grade = grade_from_json(value, kind, terms.first().map(|(m, _)| m))?;
        let mut x = Self::zero(kind, grade.clone());
        for (m, c) in terms {
            if m.dim_vector() != x.grade {
                return Err(HallError::GradeMismatch(m.dim_vector(), grade));
            }
            x.add_term(m, &c);
        }
        Ok(x)
    }
}

impl fmt::Debug for RatHallElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c})·u[{m}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
