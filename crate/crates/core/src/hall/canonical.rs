use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::product::expand_in_monomials;
use super::{HallElement, HallError};
use crate::quiver::{DimVector, Multisegment, QuiverKind};
use crate::ring::LaurentPoly;

type BarRows = Arc<Vec<BTreeMap<usize, LaurentPoly>>>;

/// Row `k`: the ũ-coefficients of `bar(ũ_m)` for `m = order[k]` of the grade's
/// expansion. Monomials in semisimple letters are bar-fixed, so
/// `bar(ũ_m) = Σ_w bar(e_{m,w}) · monomial_w`.
pub fn bar_matrix(kind: QuiverKind, grade: &DimVector) -> Result<BarRows, HallError> {
    static CACHE: OnceLock<Mutex<HashMap<(QuiverKind, DimVector), BarRows>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (kind, grade.reduce(kind));
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let data = expand_in_monomials(kind, &key.1)?;
    let mut rows = Vec::with_capacity(data.order().len());
    for k in 0..data.order().len() {
        let mut row: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
        for (&w, e) in data.tilde_in_monomials(k) {
            let e = e.bar();
            for (&p, t) in data.monomial(w) {
                *row.entry(p).or_default() += &(&e * t);
            }
        }
        row.retain(|_, c| !c.is_zero());
        if row.get(&k).is_none_or(|c| !c.is_one()) || row.keys().any(|&p| !data.leq(p, k)) {
            return Err(HallError::Internal(format!("bar of ũ_{} is not unitriangular", data.order()[k])));
        }
        rows.push(row);
    }
    let rows = Arc::new(rows);
    cache.lock().unwrap().insert(key, rows.clone());
    Ok(rows)
}

/// The semilinear involution fixing every semisimple `ũ_α`.
pub fn bar_hall(x: &HallElement) -> Result<HallElement, HallError> {
    let kind = x.kind();
    let data = expand_in_monomials(kind, x.grade())?;
    let rows = bar_matrix(kind, x.grade())?;
    let mut acc: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
    for (m, c) in x.tilde_terms() {
        let k = data.position(&m).expect("term inside its grade");
        let c = c.bar();
        for (&p, r) in &rows[k] {
            *acc.entry(p).or_default() += &(&c * r);
        }
    }
    Ok(HallElement::from_tilde(
        kind,
        x.grade().clone(),
        acc.into_iter().map(|(p, c)| (data.order()[p].clone(), c)),
    ))
}

type Basis = Arc<BTreeMap<Multisegment, HallElement>>;

/// `b_m`: bar-invariant, in `ũ_m + Σ_{p <_deg m} v⁻¹ℤ[v⁻¹] ũ_p`.
pub fn canonical_basis_hall(kind: QuiverKind, grade: &DimVector) -> Result<Basis, HallError> {
    static CACHE: OnceLock<Mutex<HashMap<(QuiverKind, DimVector), Basis>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (kind, grade.reduce(kind));
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let data = expand_in_monomials(kind, &key.1)?;
    let rows = bar_matrix(kind, &key.1)?;
    let order = data.order();
    let mut out = BTreeMap::new();
    for k in 0..order.len() {
        let mut pi: BTreeMap<usize, LaurentPoly> = BTreeMap::from([(k, LaurentPoly::one())]);
        for p in (0..k).rev().filter(|&p| data.leq(p, k)) {
            // π_p − bar(π_p) = Σ_{q > p} r_{p,q} bar(π_q)
            let mut s = LaurentPoly::zero();
            for (&q, c) in pi.iter() {
                if let Some(r) = rows[q].get(&p) {
                    s += &(r * &c.bar());
                }
            }
            let low = s.negative_part();
            if &low - &low.bar() != s {
                return Err(HallError::Internal(format!(
                    "no bar-invariant correction at {} in b_{}",
                    order[p], order[k]
                )));
            }
            if !low.is_zero() {
                pi.insert(p, low);
            }
        }
        let b = HallElement::from_tilde(kind, key.1.clone(), pi.into_iter().map(|(p, c)| (order[p].clone(), c)));
        out.insert(order[k].clone(), b);
    }
    let out = Arc::new(out);
    cache.lock().unwrap().insert(key, out.clone());
    Ok(out)
}
