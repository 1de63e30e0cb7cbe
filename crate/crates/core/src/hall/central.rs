use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::product::{aut_order, mul};
use super::{HallElement, HallError, RatHallElement};
use crate::quiver::{end_dim, euler_form, multisegments, symmetric_euler, DimVector, Multisegment, QuiverKind};
use crate::ring::{LaurentPoly, RatFrac};

/// `c_t = (−1)^t v^{−2nt} Σ (−1)^{dim End} a_m(v²) u_m` over `m` of dimension
/// `tδ` with square-free socle.
pub fn central_c(t: i64, n: i64) -> Result<HallElement, HallError> {
    let kind = QuiverKind::cyclic(n)?;
    let grade = DimVector::delta(n).scaled(t);
    let sign = if t % 2 == 0 { 1 } else { -1 };
    let mut out = HallElement::zero(kind, grade.clone());
    for m in multisegments(kind, &grade) {
        if !m.socle().is_square_free() {
            continue;
        }
        let s = if end_dim(&m) % 2 == 0 { sign } else { -sign };
        let c = aut_order(&m).to_laurent().scale(&s.into()).shift(-2 * n * t);
        out.add_term(m, &c);
    }
    Ok(out)
}

/// `x_t = t c_t − Σ_{s<t} x_s c_{t−s}`.
pub fn central_x(t: i64, n: i64) -> Result<HallElement, HallError> {
    static CACHE: OnceLock<Mutex<HashMap<(i64, i64), HallElement>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&(t, n)) {
        return Ok(hit.clone());
    }
    let mut x = central_c(t, n)?.scale(&LaurentPoly::constant(t));
    for s in 1..t {
        x = &x - &mul(&central_x(s, n)?, &central_c(t - s, n)?)?;
    }
    cache.lock().unwrap().insert((t, n), x.clone());
    Ok(x)
}

/// `z_t = v^{tn} / (v^t − v^{−t}) · x_t`.
pub fn central_z(t: i64, n: i64) -> Result<RatHallElement, HallError> {
    let scalar = RatFrac::new(
        LaurentPoly::v_pow(t * n),
        &LaurentPoly::v_pow(t) - &LaurentPoly::v_pow(-t),
    )?;
    Ok(RatHallElement::scaled(&central_x(t, n)?, &scalar))
}

pub fn central_elements(t: i64, n: i64) -> Result<(HallElement, HallElement, RatHallElement), HallError> {
    if t < 1 {
        return Err(HallError::Internal(format!("central elements are indexed by t ≥ 1, got {t}")));
    }
    Ok((central_c(t, n)?, central_x(t, n)?, central_z(t, n)?))
}

/// `ψ(K_α u_m^+, K_β u_{m'}^-) = v^{(α,β) − ⟨d(m),d(m')⟩ + 2 dim m} δ_{m,m'} / a_m(v²)`.
pub fn pairing_psi(alpha: &DimVector, m: &Multisegment, beta: &DimVector, m2: &Multisegment) -> Result<RatFrac, HallError> {
    if m.kind() != m2.kind() {
        return Err(crate::quiver::QuiverError::KindMismatch.into());
    }
    if m != m2 {
        return Ok(RatFrac::zero());
    }
    let kind = m.kind();
    let d = m.dim_vector();
    let e = symmetric_euler(&alpha.reduce(kind), &beta.reduce(kind), kind) - euler_form(&d, &d, kind) + 2 * m.total_dim();
    Ok(RatFrac::new(LaurentPoly::v_pow(e), aut_order(m).to_laurent())?)
}

/// `ψ(x^+, y^-)` extended bilinearly, with `K`-parts trivial.
pub fn pairing_elements(x: &RatHallElement, y: &RatHallElement) -> Result<RatFrac, HallError> {
    let zero = DimVector::zero();
    let mut total = RatFrac::zero();
    for (m, a) in x.terms() {
        let b = y.coeff(m);
        if b.is_zero() {
            continue;
        }
        total = &total + &(&(a * &b) * &pairing_psi(&zero, m, &zero, m)?);
    }
    Ok(total)
}
