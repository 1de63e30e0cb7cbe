//! The maps `γ_d` from the cyclic Hall algebra to the Hall algebra of the line,
//! splitting an element of grade `d̄` over the lifts of its letters.

use std::collections::BTreeMap;

use super::product::{apply_word, expand_in_monomials, SemisimpleWord};
use super::{HallElement, HallError};
use crate::quiver::{DimVector, QuiverKind};
use crate::ring::LaurentPoly;

/// `κ(a, b) = Σ_{i>j, i≡j} a_i (2b_j − b_{j−1} − b_{j+1})`.
pub fn kappa_form(a: &DimVector, b: &DimVector, n: i64) -> i64 {
    let Some((lo, hi)) = b.support() else { return 0 };
    let mut total = 0;
    for (i, ai) in a.iter() {
        let mut j = i - n;
        while j >= lo - 1 {
            if j <= hi + 1 {
                total += ai * (2 * b.get(j) - b.get(j - 1) - b.get(j + 1));
            }
            j -= n;
        }
    }
    total
}

/// `h(d) = Σ_{i<j, i≡j} d_i (d_{j+1} − d_j)`.
pub fn h_form(d: &DimVector, n: i64) -> i64 {
    let Some((_, hi)) = d.support() else { return 0 };
    let mut total = 0;
    for (i, di) in d.iter() {
        let mut j = i + n;
        while j <= hi {
            total += di * (d.get(j + 1) - d.get(j));
            j += n;
        }
    }
    total
}

/// Lifts `(a_1, …, a_ℓ)` of the letters of `word` to the line with `Σ a_s = d`.
pub fn lifts(d: &DimVector, n: i64, word: &SemisimpleWord) -> Vec<Vec<DimVector>> {
    fn spread(
        slots: &[i64],
        amount: i64,
        remaining: &mut DimVector,
        current: &mut DimVector,
        emit: &mut dyn FnMut(&mut DimVector, &mut DimVector),
    ) {
        let Some((&j, rest)) = slots.split_first() else {
            if amount == 0 {
                emit(remaining, current);
            }
            return;
        };
        let cap = remaining.get(j).min(amount);
        for c in (0..=cap).rev() {
            if c > 0 {
                remaining.add_at(j, -c);
                current.add_at(j, c);
            }
            spread(rest, amount - c, remaining, current, emit);
            if c > 0 {
                remaining.add_at(j, c);
                current.add_at(j, -c);
            }
        }
    }

    fn letter(
        alpha: &[(i64, i64)],
        vertices: &[i64],
        n: i64,
        remaining: &mut DimVector,
        current: &mut DimVector,
        emit: &mut dyn FnMut(&mut DimVector, &mut DimVector),
    ) {
        let Some((&(r, c), rest)) = alpha.split_first() else {
            emit(remaining, current);
            return;
        };
        let slots: Vec<i64> = vertices.iter().copied().filter(|j| j.rem_euclid(n) == r).collect();
        spread(&slots, c, remaining, current, &mut |rem, cur| letter(rest, vertices, n, rem, cur, emit));
    }

    fn go(
        letters: &[DimVector],
        vertices: &[i64],
        n: i64,
        remaining: &mut DimVector,
        prefix: &mut Vec<DimVector>,
        out: &mut Vec<Vec<DimVector>>,
    ) {
        let Some((alpha, rest)) = letters.split_first() else {
            if remaining.is_zero() {
                out.push(prefix.clone());
            }
            return;
        };
        let pairs: Vec<(i64, i64)> = alpha.iter().collect();
        letter(&pairs, vertices, n, remaining, &mut DimVector::zero(), &mut |rem, cur| {
            prefix.push(cur.clone());
            go(rest, vertices, n, rem, prefix, out);
            prefix.pop();
        });
    }

    let vertices: Vec<i64> = d.iter().map(|(i, _)| i).collect();
    let letters: Vec<DimVector> = word.letters().iter().map(|a| a.reduce(QuiverKind::Cyclic(n))).collect();
    let mut out = Vec::new();
    go(&letters, &vertices, n, &mut d.clone(), &mut Vec::new(), &mut out);
    out
}

/// `γ_d(ũ_{α_1} ⋯ ũ_{α_ℓ}) = Σ v^{Σ_{s<t} κ(a_s, a_t) − Σ_s h(a_s)} ũ_{a_1} ⋯ ũ_{a_ℓ}`.
pub fn gamma_monomial(d: &DimVector, n: i64, word: &SemisimpleWord) -> Result<HallElement, HallError> {
    let line = QuiverKind::InfiniteLine;
    if word.grade().reduce(QuiverKind::cyclic(n)?) != d.reduce(QuiverKind::Cyclic(n)) {
        return Err(HallError::GradeMismatch(word.grade(), d.reduce(QuiverKind::Cyclic(n))));
    }
    let mut out = HallElement::zero(line, d.clone());
    for lift in lifts(d, n, word) {
        let mut e = -lift.iter().map(|a| h_form(a, n)).sum::<i64>();
        for s in 0..lift.len() {
            for t in s + 1..lift.len() {
                e += kappa_form(&lift[s], &lift[t], n);
            }
        }
        let mono = apply_word(&SemisimpleWord::new(lift)?, &HallElement::one(line))?;
        out = &out + &mono.scale(&LaurentPoly::v_pow(e));
    }
    Ok(out)
}

/// `γ_d(x)` through the expansion of `x` in monomials of distinguished words.
pub fn gamma_d(d: &DimVector, x: &HallElement) -> Result<HallElement, HallError> {
    let kind = x.kind();
    let Some(n) = kind.n() else {
        return Err(crate::quiver::QuiverError::KindMismatch.into());
    };
    if d.reduce(kind) != *x.grade() {
        return Err(HallError::GradeMismatch(d.reduce(kind), x.grade().clone()));
    }
    let data = expand_in_monomials(kind, x.grade())?;
    let mut per_word: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
    for (m, c) in x.tilde_terms() {
        let k = data.position(&m).expect("term inside its grade");
        for (&w, e) in data.tilde_in_monomials(k) {
            *per_word.entry(w).or_default() += &(&c * e);
        }
    }
    let mut out = HallElement::zero(QuiverKind::InfiniteLine, d.clone());
    for (w, c) in per_word {
        if !c.is_zero() {
            out = &out + &gamma_monomial(d, n, &data.word(w))?.scale(&c);
        }
    }
    Ok(out)
}
