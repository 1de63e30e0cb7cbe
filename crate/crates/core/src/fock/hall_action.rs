//! Hall-algebra elements acting on `|λ⟩`.
//!
//! Words are in Hall-product order. The positive half is a copy of the Hall
//! algebra and the negative half of its opposite, so under `+` the last letter
//! acts first and under `−` the first one does. A square-free letter `a` of
//! the line acts as `ũ_a^+ = E_{c_max} ⋯ E_{c_min}` (lowest colour first) and
//! `ũ_a^- = F_{c_min} ⋯ F_{c_max}` (highest colour first); a repeated colour
//! acts by zero. A cyclic letter acts through its lifts to the line, with the
//! weights of the `γ` maps and the Cartan factors `K_{−d'}` / `K_{d''}`.

use std::collections::BTreeMap;

use super::{n_above, n_below, FockError, FockVector};
use crate::hall::{expand_in_monomials, h_form, kappa_form, HallElement, SemisimpleWord};
use crate::quiver::{DimVector, Multisegment, Partition, QuiverKind};
use crate::ring::LaurentPoly;
use crate::wedge::{act_wedge, check_n, kappa, kappa_inv, Generator, Sign, WedgeVector};

fn apply_box(lam: &Partition, c: i64, sign: Sign) -> Option<Partition> {
    match sign {
        Sign::Minus => lam.add_box(c),
        Sign::Plus => lam.remove_box(c),
    }
}

/// Colours usable next, in the order they act within one letter.
fn candidates(lam: &Partition, sign: Sign, after: Option<i64>) -> Vec<i64> {
    let mut cs = match sign {
        Sign::Minus => lam.addable_colours(),
        Sign::Plus => lam.removable_colours(),
    };
    cs.retain(|&c| match (sign, after) {
        (_, None) => true,
        (Sign::Minus, Some(a)) => c < a,
        (Sign::Plus, Some(a)) => c > a,
    });
    cs.sort_unstable();
    cs
}

/// Word positions in acting order.
fn acting_order(len: usize, sign: Sign) -> Vec<usize> {
    match sign {
        Sign::Minus => (0..len).collect(),
        Sign::Plus => (0..len).rev().collect(),
    }
}

fn letter_colours(a: &DimVector, sign: Sign) -> Vec<i64> {
    let mut cs: Vec<i64> = a.iter().map(|(c, _)| c).collect();
    if sign == Sign::Minus {
        cs.reverse();
    }
    cs
}

/// `ũ_{a_1}^± ⋯ ũ_{a_ℓ}^± · |λ⟩` for letters on the line.
pub fn act_line_word(word: &[DimVector], sign: Sign, x: &FockVector) -> FockVector {
    x.map_linear(|lam| {
        let mut cur = lam.clone();
        for p in acting_order(word.len(), sign) {
            let a = &word[p];
            if !a.is_square_free() {
                return FockVector::zero();
            }
            for c in letter_colours(a, sign) {
                match apply_box(&cur, c, sign) {
                    Some(next) => cur = next,
                    None => return FockVector::zero(),
                }
            }
        }
        FockVector::basis(cur)
    })
}

/// `ũ_z^± · x` for a multisegment `z` of the line, via its expansion into
/// monomials of distinguished words.
pub fn act_pbw_inf(z: &Multisegment, sign: Sign, x: &FockVector) -> Result<FockVector, FockError> {
    if z.kind() != QuiverKind::InfiniteLine {
        return Err(crate::quiver::QuiverError::KindMismatch.into());
    }
    let data = expand_in_monomials(QuiverKind::InfiniteLine, &z.dim_vector())?;
    let k = data.position(z).expect("multisegment inside its grade");
    let mut out = FockVector::zero();
    for (&w, c) in data.tilde_in_monomials(k) {
        out.add_scaled(&act_line_word(data.word(w).letters(), sign, x), c);
    }
    Ok(out)
}

/// All ways to lift one cyclic letter on `lam`: colours in acting order, each
/// addable (or removable) at the moment it is used.
fn letter_lifts(lam: &Partition, need: &mut BTreeMap<i64, i64>, n: i64, sign: Sign, after: Option<i64>, out: &mut Vec<(DimVector, Partition)>, chosen: &mut Vec<i64>) {
    if need.values().all(|&c| c == 0) {
        out.push((DimVector::from_pairs(chosen.iter().map(|&c| (c, 1))), lam.clone()));
        return;
    }
    for c in candidates(lam, sign, after) {
        let r = c.rem_euclid(n);
        let Some(left) = need.get_mut(&r).filter(|l| **l > 0) else { continue };
        *left -= 1;
        let next = apply_box(lam, c, sign).expect("candidate colour applies");
        chosen.push(c);
        letter_lifts(&next, need, n, sign, Some(c), out, chosen);
        chosen.pop();
        *need.get_mut(&r).unwrap() += 1;
    }
}

/// `ũ_{α_1}^± ⋯ ũ_{α_ℓ}^± · |λ⟩` for cyclic letters: the sum over lifts
/// `a_1, …, a_ℓ` of `v^{Σ_{s<t} κ(a_s, a_t) − Σ_s h(a_s) + c(d)}` times the
/// line action, where `d = Σ a_s` and `c(d) = −Σ_j d_j n_j^+(λ)` for `−`,
/// `+Σ_j d_j n_j^−(λ)` for `+`.
pub fn act_cyclic_word(word: &[DimVector], sign: Sign, x: &FockVector, n: i64) -> Result<FockVector, FockError> {
    check_n(n)?;
    let kind = QuiverKind::cyclic(n)?;
    let letters: Vec<DimVector> = word.iter().map(|a| a.reduce(kind)).collect();
    Ok(x.map_linear(|lam| {
        let cartan = |c: i64| match sign {
            Sign::Minus => -n_above(lam, c, n),
            Sign::Plus => n_below(lam, c, n),
        };
        let order = acting_order(letters.len(), sign);
        let mut out = FockVector::zero();
        // (steps taken, current partition, exponent, lifts chosen with their word positions)
        let mut stack: Vec<(usize, Partition, i64, Vec<(usize, DimVector)>)> = vec![(0, lam.clone(), 0, Vec::new())];
        while let Some((k, mu, e, chosen)) = stack.pop() {
            if k == order.len() {
                out.add_term(mu, &LaurentPoly::v_pow(e));
                continue;
            }
            let p = order[k];
            let mut need: BTreeMap<i64, i64> = letters[p].iter().collect();
            let mut lifts = Vec::new();
            letter_lifts(&mu, &mut need, n, sign, None, &mut lifts, &mut Vec::new());
            for (a, next) in lifts {
                let pairs: i64 = chosen
                    .iter()
                    .map(|(q, b)| if *q < p { kappa_form(b, &a, n) } else { kappa_form(&a, b, n) })
                    .sum();
                let step = pairs - h_form(&a, n) + a.iter().map(|(c, k)| k * cartan(c)).sum::<i64>();
                let mut chosen = chosen.clone();
                chosen.push((p, a));
                stack.push((k + 1, next, e + step, chosen));
            }
        }
        out
    }))
}

/// `x^± · v` for a Hall element of a cyclic quiver.
pub fn act_hall(x: &HallElement, sign: Sign, v: &FockVector) -> Result<FockVector, FockError> {
    let kind = x.kind();
    let Some(n) = kind.n() else {
        return Err(crate::quiver::QuiverError::KindMismatch.into());
    };
    let data = expand_in_monomials(kind, x.grade())?;
    let mut per_word: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
    for (m, c) in x.tilde_terms() {
        let k = data.position(&m).expect("term inside its grade");
        for (&w, e) in data.tilde_in_monomials(k) {
            *per_word.entry(w).or_default() += &(&c * e);
        }
    }
    let mut out = FockVector::zero();
    for (w, c) in per_word {
        if !c.is_zero() {
            let word: SemisimpleWord = data.word(w);
            out.add_scaled(&act_cyclic_word(word.letters(), sign, v, n)?, &c);
        }
    }
    Ok(out)
}

/// `u_m^± · x` for a multisegment of a cyclic quiver.
pub fn act_hall_n(m: &Multisegment, sign: Sign, x: &FockVector) -> Result<FockVector, FockError> {
    act_hall(&HallElement::u(m), sign, x)
}

/// `z_t^± · x`, transported from semi-infinite wedges through `κ`.
pub fn act_z(t: i64, sign: Sign, x: &FockVector, n: i64) -> Result<FockVector, FockError> {
    check_n(n)?;
    x.try_map_linear(|lam| {
        let w = act_wedge(&Generator::Z(t, sign), &WedgeVector::basis(kappa(lam)), n)?;
        let mut out = FockVector::zero();
        for (m, c) in w.iter() {
            out.add_term(kappa_inv(m)?, c);
        }
        Ok(out)
    })
}
