//! The Fock space with basis `|λ⟩` over partitions.

mod canonical;
mod hall_action;

use serde_json::{json, Value};

use crate::hall::{h_form, kappa_form, HallError};
use crate::quiver::{is_n_regular, m_of_partition, radical_layers, DimVector, Partition, QuiverError, QuiverKind};
use crate::ring::{Combination, LaurentPoly, RingError};
use crate::wedge::{check_n, Generator, Sign, WedgeError};

pub use canonical::{bar_fock, block_of, canonical_basis, canonical_table, ladder_vector, BlockTable, ContentBlock};
pub use hall_action::{act_hall, act_hall_n, act_line_word, act_cyclic_word, act_pbw_inf, act_z};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FockError {
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Wedge(#[from] WedgeError),
    #[error(transparent)]
    Hall(#[from] HallError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

pub type FockVector = Combination<Partition>;

pub fn vacuum() -> FockVector {
    FockVector::basis(Partition::empty())
}

pub fn fock_to_json(x: &FockVector) -> Value {
    let terms: Vec<Value> = x.iter().map(|(l, c)| json!({ "lambda": l.to_json(), "coeff": c.to_json() })).collect();
    json!({ "terms": terms })
}

pub fn fock_from_json(value: &Value) -> Result<FockVector, FockError> {
    let terms = value
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| QuiverError::Parse("Fock vector needs \"terms\"".into()))?;
    let mut out = FockVector::zero();
    for t in terms {
        let lam = Partition::from_json(t.get("lambda").ok_or_else(|| QuiverError::Parse("term needs \"lambda\"".into()))?)?;
        let c = LaurentPoly::from_json(t.get("coeff").ok_or_else(|| QuiverError::Parse("term needs \"coeff\"".into()))?)?;
        out.add_term(lam, &c);
    }
    Ok(out)
}

/// Addable and removable boxes of one integer colour.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoxColorProfile {
    pub addable: u32,
    pub removable: u32,
}

impl BoxColorProfile {
    /// `n_i(λ)`.
    pub fn weight(self) -> i64 {
        self.addable as i64 - self.removable as i64
    }
}

pub fn box_profile(lam: &Partition, i: i64) -> BoxColorProfile {
    BoxColorProfile {
        addable: lam.addable_colours().iter().filter(|&&c| c == i).count() as u32,
        removable: lam.removable_colours().iter().filter(|&&c| c == i).count() as u32,
    }
}

/// Integer colours with nonzero `n_c(λ)`, with that value.
fn weights(lam: &Partition) -> Vec<(i64, i64)> {
    let mut out: Vec<(i64, i64)> = lam.addable_colours().into_iter().map(|c| (c, 1)).collect();
    out.extend(lam.removable_colours().into_iter().map(|c| (c, -1)));
    out
}

/// `n_i(λ)`.
pub fn n_colour(lam: &Partition, i: i64) -> i64 {
    box_profile(lam, i).weight()
}

/// `n_ī(λ) = Σ_{j ≡ i} n_j(λ)`.
pub fn n_residue(lam: &Partition, i: i64, n: i64) -> i64 {
    weights(lam).into_iter().filter(|(c, _)| (c - i).rem_euclid(n) == 0).map(|(_, w)| w).sum()
}

/// `n_j^+(λ) = Σ_{i > j, i ≡ j} n_i(λ)`.
pub fn n_above(lam: &Partition, j: i64, n: i64) -> i64 {
    weights(lam).into_iter().filter(|&(c, _)| c > j && (c - j).rem_euclid(n) == 0).map(|(_, w)| w).sum()
}

/// `n_j^−(λ) = Σ_{i < j, i ≡ j} n_i(λ)`.
pub fn n_below(lam: &Partition, j: i64, n: i64) -> i64 {
    weights(lam).into_iter().filter(|&(c, _)| c < j && (c - j).rem_euclid(n) == 0).map(|(_, w)| w).sum()
}

/// The `sl_∞` action: `F_i` adds the `i`-box, `E_i` removes it, `K_i` scales
/// by `v^{n_i(λ)}`.
pub fn act_inf(gen: &Generator, x: &FockVector) -> Result<FockVector, FockError> {
    x.try_map_linear(|lam| {
        Ok(match gen {
            Generator::U(i, Sign::Minus) => lam.add_box(*i).map(FockVector::basis).unwrap_or_default(),
            Generator::U(i, Sign::Plus) => lam.remove_box(*i).map(FockVector::basis).unwrap_or_default(),
            Generator::K { i, power } => FockVector::term(lam.clone(), LaurentPoly::v_pow(power * n_colour(lam, *i))),
            other => return Err(FockError::InvalidGenerator(format!("{other:?} is not an sl_∞ generator"))),
        })
    })
}

/// The quantum affine action:
/// `F_ī = Σ_{j∈ī} v^{−n_j^+} F_j`, `E_ī = Σ_{j∈ī} v^{n_j^−} E_j`, `K_ī = v^{n_ī}`.
/// `ũ_α^±` and `z_t^±` are routed through the Hall-algebra actions.
pub fn act_hayashi(gen: &Generator, x: &FockVector, n: i64) -> Result<FockVector, FockError> {
    check_n(n)?;
    let same = move |c: i64, i: i64| (c - i).rem_euclid(n) == 0;
    match gen {
        Generator::Tilde(alpha, sign) => {
            let kind = QuiverKind::cyclic(n)?;
            let alpha = alpha.reduce(kind);
            let m = crate::quiver::Multisegment::semisimple(kind, &alpha);
            return act_hall(&crate::hall::HallElement::u_tilde(&m), *sign, x);
        }
        Generator::Z(t, sign) => return act_z(*t, *sign, x, n),
        _ => {}
    }
    x.try_map_linear(|lam| {
        let mut out = FockVector::zero();
        match gen {
            Generator::U(i, Sign::Minus) => {
                for c in lam.addable_colours().into_iter().filter(|&c| same(c, *i)) {
                    out.add_term(lam.add_box(c).unwrap(), &LaurentPoly::v_pow(-n_above(lam, c, n)));
                }
            }
            Generator::U(i, Sign::Plus) => {
                for c in lam.removable_colours().into_iter().filter(|&c| same(c, *i)) {
                    out.add_term(lam.remove_box(c).unwrap(), &LaurentPoly::v_pow(n_below(lam, c, n)));
                }
            }
            Generator::K { i, power } => out.add_term(lam.clone(), &LaurentPoly::v_pow(power * n_residue(lam, *i, n))),
            Generator::KDelta(t) => out.add_term(lam.clone(), &LaurentPoly::v_pow(*t)),
            Generator::Tilde(..) | Generator::Z(..) => unreachable!(),
        }
        Ok(out)
    })
}

/// Boxes counted by residue.
pub fn content(lam: &Partition, n: i64) -> DimVector {
    lam.residue_content(n)
}

/// `Σ_{s<t} κ(d_s, d_t) − Σ_s h(d_s)` over the radical layers `d_s` of the
/// line representation of `λ`.
pub fn theta(lam: &Partition, n: i64) -> i64 {
    let layers = radical_layers(&m_of_partition(lam, QuiverKind::InfiniteLine));
    let mut total = -layers.iter().map(|d| h_form(d, n)).sum::<i64>();
    for s in 0..layers.len() {
        for t in s + 1..layers.len() {
            total += kappa_form(&layers[s], &layers[t], n);
        }
    }
    total
}

/// `−Σ_{i<0, i≡0} d_i` for the colour content `d` of `λ`.
pub fn sigma(lam: &Partition, n: i64) -> i64 {
    -lam.colour_content().iter().filter(|&(i, _)| i < 0 && i.rem_euclid(n) == 0).map(|(_, c)| c).sum::<i64>()
}

fn partitions_count(m: i64) -> i64 {
    Partition::all_of_size(m).len() as i64
}

/// `(#{λ : content β}, Σ_{m≥0} p(m) · #{n-regular μ : content β − mδ})`.
pub fn decomposition_census(beta: &DimVector, n: i64) -> Result<(i64, i64), FockError> {
    check_n(n)?;
    let kind = QuiverKind::cyclic(n)?;
    let beta = beta.reduce(kind);
    let size = beta.total();
    let with_content = |b: &DimVector, regular: bool| {
        Partition::all_of_size(b.total())
            .into_iter()
            .filter(|l| &content(l, n) == b && (!regular || is_n_regular(l, n)))
            .count() as i64
    };
    let lhs = with_content(&beta, false);
    let delta = DimVector::delta(n);
    let mut rhs = 0;
    let mut rest = Some(beta);
    let mut m = 0;
    while let Some(b) = rest {
        rhs += partitions_count(m) * with_content(&b, true);
        rest = b.checked_sub(&delta);
        m += 1;
        debug_assert!(m <= size + 1);
    }
    Ok((lhs, rhs))
}
