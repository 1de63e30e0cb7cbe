use num_bigint::BigInt;

use super::{
    deg_leq, is_n_regular, left_table, m_of_partition, radical_layers, DimVector, Multisegment, Partition,
    QuiverError, QuiverKind,
};

/// Generic extension `S_α * M(m)`: the `≤_deg`-maximum among middle terms of
/// extensions with submodule `M(m)` and quotient `S_α`.
fn semisimple_ext(alpha: &DimVector, m: &Multisegment) -> Result<Multisegment, QuiverError> {
    let kind = m.kind();
    let grade = &m.dim_vector() + alpha;
    let table = left_table(kind, alpha, &grade);
    let admitted: Vec<&Multisegment> = table
        .by_factor
        .get(m)
        .into_iter()
        .flatten()
        .filter(|(_, phi)| [2, 3, 4].iter().any(|&q| phi.eval(&BigInt::from(q)) != BigInt::from(0)))
        .map(|(p, _)| p)
        .collect();
    let maxima: Vec<&Multisegment> = admitted
        .iter()
        .copied()
        .filter(|p| admitted.iter().all(|other| deg_leq(other, p)))
        .collect();
    match maxima.as_slice() {
        [p] => Ok((*p).clone()),
        _ => Err(QuiverError::Internal(format!(
            "no unique generic extension of {m} by semisimple {alpha:?}"
        ))),
    }
}

/// `M(m1) * M(m2)`, with `M(m1)` the quotient and `M(m2)` the submodule.
///
/// Writing `M(m1) = S_{α_1} * ⋯ * S_{α_ℓ}` by radical layers, associativity
/// reduces the product to semisimple steps folded from the bottom layer up.
pub fn generic_ext(m1: &Multisegment, m2: &Multisegment) -> Result<Multisegment, QuiverError> {
    if m1.kind() != m2.kind() {
        return Err(QuiverError::KindMismatch);
    }
    let mut acc = m2.clone();
    for alpha in radical_layers(m1).iter().rev() {
        acc = semisimple_ext(alpha, &acc)?;
    }
    Ok(acc)
}

/// The ladder word `i_1^{k_1} ⋯ i_d^{k_d}` of an `n`-regular partition: peel off
/// `k + 1` boxes of one residue from the ends of rows `s, s + (n−1), …`, where
/// `s` closes the first block of equal parts, and recurse on what is left.
/// Every step is checked against `M(m_μ) * (k+1)S_i = M(m_λ)`.
pub fn ladder_word(lam: &Partition, n: i64) -> Result<Vec<(i64, u32)>, QuiverError> {
    let kind = QuiverKind::cyclic(n)?;
    if !is_n_regular(lam, n) {
        return Err(QuiverError::NotRegular(lam.to_string()));
    }
    let step = (n - 1) as usize;
    let mut word = Vec::new();
    let mut cur = lam.clone();
    while !cur.is_empty() {
        let s = (1..=cur.len()).take_while(|&a| cur.part(a) == cur.part(1)).last().unwrap();
        let mut k = 0;
        loop {
            let base = s + k * step;
            let block_equal = (base + 1..=base + step).all(|a| cur.part(a) == cur.part(base + 1));
            let drops_by_one = cur.part(base) == cur.part(base + 1) + 1;
            if block_equal && drops_by_one && cur.part(base + step) >= 1 {
                k += 1;
            } else {
                break;
            }
        }
        let residue = (cur.part(s) - s as i64).rem_euclid(n);
        let mut parts = cur.parts().to_vec();
        for l in 0..=k {
            parts[s + l * step - 1] -= 1;
        }
        let mu = Partition::new(parts)?;
        if !is_n_regular(&mu, n) {
            return Err(QuiverError::Internal(format!("ladder step {cur} → {mu} left the regular set")));
        }
        let boxes = Multisegment::semisimple(kind, &DimVector::from_pairs([(residue, k as i64 + 1)]));
        let target = m_of_partition(&cur, kind);
        if generic_ext(&m_of_partition(&mu, kind), &boxes)? != target {
            return Err(QuiverError::Internal(format!("ladder step {cur} → {mu} is not a generic extension")));
        }
        word.push((residue, k as u32 + 1));
        cur = mu;
    }
    Ok(word)
}
