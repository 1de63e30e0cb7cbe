//! The right affine Hecke action on `Ω^{⊗r}` and straightening modulo
//! `Σ_k Im(1 + T_k)`.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use super::{TensorMonomial, TensorVector};
use crate::ring::{Combination, LaurentPoly};

fn q_minus_one() -> LaurentPoly {
    LaurentPoly::from_terms([(2, 1), (0, -1)])
}

/// `ω_{(a,b)} · T` on two adjacent factors.
///
/// On the window `−n < a, b ≤ 0` the action is the standard one; elsewhere it
/// follows from the Bernstein relations. `X_1 X_2` is central, so the pair is
/// first translated until its larger entry lies in the window; a remaining
/// low entry is then raised with
/// `X_1 T = T X_2 − (v² − 1) X_2` and `X_2 T = T X_1 + (v² − 1) X_2`.
pub fn pair_hecke(a: i64, b: i64, n: i64) -> Combination<(i64, i64)> {
    let k = -(-a.max(b)).div_euclid(n);
    let (a0, b0) = (a - k * n, b - k * n);
    let local = if a0 > -n && b0 > -n {
        if a0 == b0 {
            Combination::term((a0, b0), LaurentPoly::v_pow(2))
        } else if a0 < b0 {
            Combination::term((b0, a0), LaurentPoly::v_pow(1))
        } else {
            let mut out = Combination::term((b0, a0), LaurentPoly::v_pow(1));
            out.add_term((a0, b0), &q_minus_one());
            out
        }
    } else if a0 <= -n {
        let mut out: Combination<(i64, i64)> =
            pair_hecke(a0 + n, b0, n).iter().map(|(&(x, y), c)| ((x, y - n), c.clone())).collect();
        out.add_term((a0 + n, b0 - n), &-q_minus_one());
        out
    } else {
        let mut out: Combination<(i64, i64)> =
            pair_hecke(a0, b0 + n, n).iter().map(|(&(x, y), c)| ((x - n, y), c.clone())).collect();
        out.add_term((a0, b0), &q_minus_one());
        out
    };
    local.iter().map(|(&(x, y), c)| ((x + k * n, y + k * n), c.clone())).collect()
}

/// `ω_i · T_k` for 0-based adjacent positions `k, k + 1`.
pub fn hecke_t(x: &TensorMonomial, k: usize, n: i64) -> TensorVector {
    let idx = x.indices();
    assert!(k + 1 < idx.len(), "T_{k} needs two factors");
    pair_hecke(idx[k], idx[k + 1], n)
        .iter()
        .map(|(&(a, b), c)| {
            let mut w = idx.to_vec();
            w[k] = a;
            w[k + 1] = b;
            (TensorMonomial(w), c.clone())
        })
        .collect()
}

/// `ω_i · X_t`: the factor at 0-based position `t` moves down by `n`.
pub fn hecke_x(x: &TensorMonomial, t: usize, n: i64) -> TensorMonomial {
    let mut w = x.indices().to_vec();
    w[t] -= n;
    TensorMonomial(w)
}

type Words = Combination<Vec<i64>>;

thread_local! {
    static INSERT: RefCell<HashMap<(i64, i64, Vec<i64>), Rc<Words>>> = RefCell::new(HashMap::new());
}

/// Class of `ω_a ∧ (normal word)` in the normal basis.
fn insert(a: i64, rest: &[i64], n: i64) -> Rc<Words> {
    match rest.first() {
        None => return Rc::new(Words::basis(vec![a])),
        Some(&b) if a > b => {
            let mut w = Vec::with_capacity(rest.len() + 1);
            w.push(a);
            w.extend_from_slice(rest);
            return Rc::new(Words::basis(w));
        }
        Some(&b) if a == b => return Rc::new(Words::zero()),
        _ => {}
    }
    let key = (n, a, rest.to_vec());
    if let Some(hit) = INSERT.with(|c| c.borrow().get(&key).cloned()) {
        return hit;
    }
    // ω ≡ −ω·T_1 modulo Im(1 + T_1).
    let b = rest[0];
    let mut out = Words::zero();
    for (&(x, y), c) in pair_hecke(a, b, n).iter() {
        assert!((x, y) != (a, b), "straightening of ({a}, {b}) does not progress");
        let neg = -c;
        for (w, d) in insert(y, &rest[1..], n).iter() {
            out.add_scaled(&insert(x, w, n), &(&neg * d));
        }
    }
    let out = Rc::new(out);
    INSERT.with(|c| c.borrow_mut().insert(key, out.clone()));
    out
}

/// The class of `ω_{i_1} ∧ ⋯ ∧ ω_{i_r}` as a combination of strictly
/// decreasing words.
pub fn straighten(word: &TensorMonomial, n: i64) -> TensorVector {
    let mut acc = Words::basis(Vec::new());
    for &a in word.indices().iter().rev() {
        let mut next = Words::zero();
        for (w, c) in acc.iter() {
            next.add_scaled(&insert(a, w, n), c);
        }
        acc = next;
        if acc.is_zero() {
            break;
        }
    }
    acc.iter().map(|(w, c)| (TensorMonomial(w.clone()), c.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn pair_examples() {
        assert_eq!(pair_hecke(-2, 0, 2), Combination::basis((0, -2)));
        let mut want = Combination::term((0, -3), lp(&[(1, 1)]));
        want.add_term((-1, -2), &lp(&[(2, -1), (0, 1)]));
        assert_eq!(pair_hecke(-3, 0, 2), want);
        assert_eq!(pair_hecke(5, 5, 3), Combination::term((5, 5), lp(&[(2, 1)])));
    }

    #[test]
    fn straighten_examples() {
        assert!(straighten(&TensorMonomial::new([0, 0]), 2).is_zero());
        let got = straighten(&TensorMonomial::new([-1, 0]), 2);
        assert_eq!(got, Combination::term(TensorMonomial::new([0, -1]), lp(&[(1, -1)])));
        let w = TensorMonomial::new([4, 1, -3]);
        assert_eq!(straighten(&w, 3), Combination::basis(w));
    }
}
