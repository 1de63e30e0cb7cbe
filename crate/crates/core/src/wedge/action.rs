use super::{check_n, straighten, Generator, Sign, TensorMonomial, TensorVector, WedgeError, WedgeMonomial, WedgeVector};
use crate::quiver::{DimVector, QuiverKind};
use crate::ring::LaurentPoly;

fn res(i: i64, n: i64) -> i64 {
    i.rem_euclid(n)
}

/// `⟨ε_a, ε_b⟩` over `ℤ/n`.
fn euler_eps(a: i64, b: i64, n: i64) -> i64 {
    (res(a, n) == res(b, n)) as i64 - (res(a + 1, n) == res(b, n)) as i64
}

/// The colour each factor contributes to `α` when the generator moves it.
fn moved_colour(i: i64, sign: Sign, n: i64) -> i64 {
    match sign {
        Sign::Plus => res(i - 1, n),
        Sign::Minus => res(i, n),
    }
}

fn step(sign: Sign) -> i64 {
    match sign {
        Sign::Plus => -1,
        Sign::Minus => 1,
    }
}

/// Sets of factors that can absorb `α`, one letter each.
fn selections(alpha: &DimVector, sign: Sign, word: &[i64], n: i64) -> Vec<Vec<bool>> {
    fn go(s: usize, word: &[i64], sign: Sign, n: i64, left: &mut [i64], cur: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        let remaining: i64 = left.iter().sum();
        if remaining == 0 {
            let mut sel = cur.clone();
            sel.resize(word.len(), false);
            out.push(sel);
            return;
        }
        if s == word.len() || ((word.len() - s) as i64) < remaining {
            return;
        }
        let c = moved_colour(word[s], sign, n) as usize;
        if left[c] > 0 {
            left[c] -= 1;
            cur.push(true);
            go(s + 1, word, sign, n, left, cur, out);
            cur.pop();
            left[c] += 1;
        }
        cur.push(false);
        go(s + 1, word, sign, n, left, cur, out);
        cur.pop();
    }
    let mut left = vec![0; n as usize];
    for (i, c) in alpha.reduce(QuiverKind::Cyclic(n)).iter() {
        left[i as usize] = c;
    }
    let mut out = Vec::new();
    go(0, word, sign, n, &mut left, &mut Vec::new(), &mut out);
    out
}

fn moved(word: &[i64], sel: &[bool], sign: Sign) -> Vec<i64> {
    word.iter().zip(sel).map(|(&i, &m)| if m { i + step(sign) } else { i }).collect()
}

/// `ũ_α^±` through the iterated comultiplication: factor `s` receives
/// `ũ_{α(s)}^+ K_{α(1)+⋯+α(s−1)}` (resp. `ũ_{α(s)}^- K_{−(α(s+1)+⋯+α(r))}`),
/// with the overall twist `v^{Σ_{s>t} ⟨α(s), α(t)⟩}`.
fn semisimple_by_coproduct(alpha: &DimVector, sign: Sign, word: &[i64], n: i64) -> Vec<(Vec<i64>, i64)> {
    selections(alpha, sign, word, n)
        .into_iter()
        .map(|sel| {
            let colours: Vec<Option<i64>> =
                word.iter().zip(&sel).map(|(&i, &m)| m.then(|| moved_colour(i, sign, n))).collect();
            let mut e = 0;
            for s in 0..word.len() {
                for t in 0..word.len() {
                    let Some(ct) = colours[t] else { continue };
                    if let Some(cs) = colours[s] {
                        if s > t {
                            e += euler_eps(cs, ct, n);
                        }
                    }
                    match sign {
                        Sign::Plus if t < s => e += euler_eps(ct, word[s], n),
                        Sign::Minus if t > s => e -= euler_eps(ct, word[s], n),
                        _ => {}
                    }
                }
            }
            (moved(word, &sel, sign), e)
        })
        .collect()
}

/// The closed forms for `ũ_α^± · ω_i` as sums over 0/1 moves `n_s`:
/// exponent `Σ_{s<t} n_s (n_t − 1) ⟨ε_{i_t}, ε_{i_s}⟩` for `+` and
/// `Σ_{s<t} n_t (n_s − 1) ⟨ε_{i_t}, ε_{i_s}⟩` for `−`.
pub fn semisimple_closed_form(alpha: &DimVector, sign: Sign, word: &TensorMonomial, n: i64) -> TensorVector {
    let word = word.indices();
    selections(alpha, sign, word, n)
        .into_iter()
        .map(|sel| {
            let ns: Vec<i64> = sel.iter().map(|&m| m as i64).collect();
            let mut e = 0;
            for s in 0..word.len() {
                for t in s + 1..word.len() {
                    let w = match sign {
                        Sign::Plus => ns[s] * (ns[t] - 1),
                        Sign::Minus => ns[t] * (ns[s] - 1),
                    };
                    e += w * euler_eps(word[t], word[s], n);
                }
            }
            (TensorMonomial(moved(word, &sel, sign)), LaurentPoly::v_pow(e))
        })
        .collect()
}

fn k_exponent(i: i64, word: &[i64], n: i64) -> i64 {
    word.iter().map(|&j| euler_eps(i, j, n)).sum()
}

fn z_shift(t: i64, sign: Sign, n: i64) -> Result<i64, WedgeError> {
    if t < 1 {
        return Err(WedgeError::InvalidGenerator(format!("z_t needs t ≥ 1, got {t}")));
    }
    Ok(match sign {
        Sign::Plus => -t * n,
        Sign::Minus => t * n,
    })
}

fn shifted_at(word: &[i64], s: usize, by: i64) -> Vec<i64> {
    let mut w = word.to_vec();
    w[s] += by;
    w
}

fn act_tensor_monomial(gen: &Generator, word: &[i64], n: i64) -> Result<TensorVector, WedgeError> {
    Ok(match gen {
        Generator::U(i, sign) => act_tensor_monomial(&Generator::Tilde(DimVector::unit(res(*i, n)), *sign), word, n)?,
        Generator::Tilde(alpha, sign) => {
            let out: TensorVector = semisimple_by_coproduct(alpha, *sign, word, n)
                .into_iter()
                .map(|(w, e)| (TensorMonomial(w), LaurentPoly::v_pow(e)))
                .collect();
            debug_assert_eq!(
                out,
                semisimple_closed_form(alpha, *sign, &TensorMonomial(word.to_vec()), n),
                "comultiplication and closed form disagree on {word:?}"
            );
            out
        }
        Generator::K { i, power } => {
            TensorVector::term(TensorMonomial(word.to_vec()), LaurentPoly::v_pow(power * k_exponent(*i, word, n)))
        }
        // K_δ acts trivially on every ω_s.
        Generator::KDelta(_) => TensorVector::basis(TensorMonomial(word.to_vec())),
        Generator::Z(t, sign) => {
            let by = z_shift(*t, *sign, n)?;
            (0..word.len()).map(|s| (TensorMonomial(shifted_at(word, s, by)), LaurentPoly::one())).collect()
        }
    })
}

/// A generator on `Ω^{⊗r}` through the comultiplication.
pub fn act_tensor(gen: &Generator, x: &TensorVector, n: i64) -> Result<TensorVector, WedgeError> {
    check_n(n)?;
    x.try_map_linear(|w| act_tensor_monomial(gen, w.indices(), n))
}

/// The class of `ω_{i_1} ∧ ⋯ ∧ ω_{i_N} ∧ |charge − N⟩`, for any finite word.
/// The word is first extended along the tail until all its entries sit above
/// the remaining tail; straightening never leaves the range of its input, so
/// the result is normal.
pub fn wedge_class(charge: i64, word: &[i64], n: i64) -> Result<WedgeVector, WedgeError> {
    check_n(n)?;
    let mut word = word.to_vec();
    if let Some(&lo) = word.iter().min() {
        while lo <= charge - word.len() as i64 {
            word.push(charge - word.len() as i64);
        }
    }
    straighten(&TensorMonomial(word), n)
        .iter()
        .map(|(w, c)| Ok((WedgeMonomial::new(charge, w.indices().to_vec())?, c.clone())))
        .collect()
}

/// Prefix length used for `gen` on `w`: room for every moved factor plus the
/// full `z`-shift, and two spare tail entries.
pub fn default_prefix_len(gen: &Generator, w: &WedgeMonomial, n: i64) -> usize {
    let extra = match gen {
        Generator::U(..) => 1,
        Generator::Tilde(alpha, _) => alpha.total(),
        Generator::Z(t, _) => t * n,
        Generator::K { .. } | Generator::KDelta(_) => 0,
    };
    w.prefix().len() + extra.max(0) as usize + 2
}

/// `gen · w` computed on the first `len` factors, with the tail `|charge − len⟩`
/// contributing only its weight `K_i ↦ v^{δ_{i, charge − len}}` to the
/// positive part of the comultiplication.
pub fn act_wedge_at(gen: &Generator, w: &WedgeMonomial, n: i64, len: usize) -> Result<WedgeVector, WedgeError> {
    check_n(n)?;
    if len < w.prefix().len() {
        return Err(WedgeError::Invalid(format!("prefix length {len} is shorter than {w:?}")));
    }
    let word = w.padded(len);
    let charge = w.charge();
    let tail_top = charge - len as i64;
    let tail_res = res(tail_top, n);
    let mut out = WedgeVector::zero();
    match gen {
        Generator::U(i, sign) => {
            return act_wedge_at(&Generator::Tilde(DimVector::unit(res(*i, n)), *sign), w, n, len);
        }
        Generator::Tilde(alpha, sign) => {
            let alpha = alpha.reduce(QuiverKind::Cyclic(n));
            let tail = match sign {
                Sign::Plus => alpha.get(tail_res),
                Sign::Minus => 0,
            };
            for (m, c) in act_tensor_monomial(&Generator::Tilde(alpha.clone(), *sign), &word, n)?.iter() {
                out.add_scaled(&wedge_class(charge, m.indices(), n)?, &c.shift(tail));
            }
        }
        Generator::K { i, power } => {
            let e = k_exponent(*i, &word, n) + (res(*i, n) == tail_res) as i64;
            out.add_term(w.clone(), &LaurentPoly::v_pow(power * e));
        }
        Generator::KDelta(t) => out.add_term(w.clone(), &LaurentPoly::v_pow(*t)),
        Generator::Z(t, sign) => {
            let by = z_shift(*t, *sign, n)?;
            let twist = match sign {
                Sign::Plus => *t,
                Sign::Minus => 0,
            };
            for s in 0..len {
                out.add_scaled(&wedge_class(charge, &shifted_at(&word, s, by), n)?, &LaurentPoly::v_pow(twist));
            }
        }
    }
    Ok(out)
}

fn check_len_independence(
    w: &WedgeMonomial,
    len: usize,
    got: &WedgeVector,
    f: impl Fn(usize) -> Result<WedgeVector, WedgeError>,
) -> Result<(), WedgeError> {
    if cfg!(debug_assertions) {
        let again = f(len + 1)?;
        if &again != got {
            return Err(WedgeError::Internal(format!(
                "result on {w:?} depends on the prefix length: {got:?} at {len}, {again:?} at {}",
                len + 1
            )));
        }
    }
    Ok(())
}

/// A generator on semi-infinite wedges. Debug builds recompute every term
/// with one more factor and insist on the same answer.
pub fn act_wedge(gen: &Generator, x: &WedgeVector, n: i64) -> Result<WedgeVector, WedgeError> {
    x.try_map_linear(|w| {
        let len = default_prefix_len(gen, w, n);
        let got = act_wedge_at(gen, w, n, len)?;
        check_len_independence(w, len, &got, |l| act_wedge_at(gen, w, n, l))?;
        Ok(got)
    })
}

fn heisenberg_at(t: i64, sign: Sign, w: &WedgeMonomial, n: i64, len: usize) -> Result<WedgeVector, WedgeError> {
    let by = z_shift(t, sign, n)?;
    let word = w.padded(len);
    let mut out = WedgeVector::zero();
    for s in 0..len {
        out.add_scaled(&wedge_class(w.charge(), &shifted_at(&word, s, by), n)?, &LaurentPoly::one());
    }
    Ok(out)
}

/// `B_t^±`: the sum over single factors shifted by `∓tn`. Factors deep in the
/// tail contribute nothing, so a prefix of length `len + tn + 2` suffices.
pub fn heisenberg_b(t: i64, sign: Sign, x: &WedgeVector, n: i64) -> Result<WedgeVector, WedgeError> {
    check_n(n)?;
    x.try_map_linear(|w| {
        let len = w.prefix().len() + (t * n).max(0) as usize + 2;
        let got = heisenberg_at(t, sign, w, n, len)?;
        check_len_independence(w, len, &got, |l| heisenberg_at(t, sign, w, n, l))?;
        Ok(got)
    })
}
