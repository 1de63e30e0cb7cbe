//! Bar involution and canonical basis of the Fock space, one residue-content
//! block at a time.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde_json::{json, Value};

use super::{act_cyclic_word, act_hayashi, content, vacuum, FockError, FockVector};
use crate::hall::distinguished_word;
use crate::quiver::{dominates, ladder_word, m_of_partition, DimVector, Partition, QuiverKind};
use crate::ring::{quantum_factorial, LaurentPoly};
use crate::wedge::{check_n, Generator};

/// Partitions of one residue content with their bar images and canonical
/// basis vectors.
#[derive(Debug)]
pub struct ContentBlock {
    pub n: i64,
    pub content: DimVector,
    /// Increasing lexicographic order, a linear extension of dominance.
    pub parts: Vec<Partition>,
    pub bar: BTreeMap<Partition, FockVector>,
    pub canonical: BTreeMap<Partition, FockVector>,
}

fn bar_with(bars: &BTreeMap<Partition, FockVector>, x: &FockVector) -> FockVector {
    let mut out = FockVector::zero();
    for (lam, c) in x.iter() {
        out.add_scaled(&bars[lam], &c.bar());
    }
    out
}

fn build_block(content_vec: &DimVector, n: i64) -> Result<ContentBlock, FockError> {
    let kind = QuiverKind::cyclic(n)?;
    let mut parts: Vec<Partition> = Partition::all_of_size(content_vec.total())
        .into_iter()
        .filter(|l| &content(l, n) == content_vec)
        .collect();
    parts.sort();

    // A_λ = (monomial of the distinguished word of m_λ)·|∅⟩ is bar-invariant
    // and equals |λ⟩ plus dominance-lower terms.
    let mut bar: BTreeMap<Partition, FockVector> = BTreeMap::new();
    for lam in &parts {
        let word = distinguished_word(&m_of_partition(lam, kind));
        let a = act_cyclic_word(word.letters(), crate::wedge::Sign::Minus, &vacuum(), n)?;
        if !a.coeff(lam).is_one() {
            return Err(FockError::Internal(format!("monomial of {lam} has leading coefficient {}", a.coeff(lam))));
        }
        let mut b = a.clone();
        for (mu, tau) in a.iter().filter(|(mu, _)| *mu != lam) {
            if !dominates(lam, mu) {
                return Err(FockError::Internal(format!("monomial of {lam} reaches {mu}, which it does not dominate")));
            }
            b.add_scaled(&bar[mu], &-tau.bar());
        }
        bar.insert(lam.clone(), b);
    }
    for lam in &parts {
        if bar_with(&bar, &bar[lam]) != FockVector::basis(lam.clone()) {
            return Err(FockError::Internal(format!("bar is not an involution at {lam}")));
        }
    }

    let mut canonical = BTreeMap::new();
    for (k, lam) in parts.iter().enumerate() {
        let mut coeffs: BTreeMap<usize, LaurentPoly> = BTreeMap::from([(k, LaurentPoly::one())]);
        for p in (0..k).rev() {
            // c_ν − bar(c_ν) = Σ_{μ above ν} a_{ν,μ} bar(c_μ)
            let mut s = LaurentPoly::zero();
            for (&q, c) in &coeffs {
                s += &(&bar[&parts[q]].coeff(&parts[p]) * &c.bar());
            }
            let low = s.negative_part();
            if &low - &low.bar() != s {
                return Err(FockError::Internal(format!("no bar-invariant correction at {} in b_{lam}", parts[p])));
            }
            if !low.is_zero() {
                coeffs.insert(p, low);
            }
        }
        let b: FockVector = coeffs.into_iter().map(|(p, c)| (parts[p].clone(), c)).collect();
        if bar_with(&bar, &b) != b {
            return Err(FockError::Internal(format!("b_{lam} is not bar-invariant")));
        }
        canonical.insert(lam.clone(), b);
    }
    Ok(ContentBlock { n, content: content_vec.clone(), parts, bar, canonical })
}

pub fn block_of(content_vec: &DimVector, n: i64) -> Result<Arc<ContentBlock>, FockError> {
    check_n(n)?;
    static CACHE: OnceLock<Mutex<HashMap<(i64, DimVector), Arc<ContentBlock>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (n, content_vec.reduce(QuiverKind::cyclic(n)?));
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let block = Arc::new(build_block(&key.1, n)?);
    cache.lock().unwrap().insert(key, block.clone());
    Ok(block)
}

/// The semilinear involution fixing `|∅⟩` and commuting with the negative
/// half.
pub fn bar_fock(x: &FockVector, n: i64) -> Result<FockVector, FockError> {
    let mut out = FockVector::zero();
    for (lam, c) in x.iter() {
        out.add_scaled(&block_of(&content(lam, n), n)?.bar[lam], &c.bar());
    }
    Ok(out)
}

/// `b_λ`: bar-invariant and in `|λ⟩ + Σ_{μ◁λ} v⁻¹ℤ[v⁻¹]|μ⟩`.
pub fn canonical_basis(lam: &Partition, n: i64) -> Result<FockVector, FockError> {
    Ok(block_of(&content(lam, n), n)?.canonical[lam].clone())
}

/// `F_{i_1}^{(k_1)} ⋯ F_{i_d}^{(k_d)}|∅⟩` for the ladder word of an
/// `n`-regular partition.
pub fn ladder_vector(lam: &Partition, n: i64) -> Result<FockVector, FockError> {
    let word = ladder_word(lam, n)?;
    let mut x = vacuum();
    for &(i, k) in word.iter().rev() {
        for _ in 0..k {
            x = act_hayashi(&Generator::f(i), &x, n)?;
        }
        let fact = quantum_factorial(k as i64)?;
        x = x.iter().map(|(mu, c)| Ok((mu.clone(), c.div_exact(&fact)?))).collect::<Result<_, FockError>>()?;
    }
    if !x.coeff(lam).is_one() || x.keys().any(|mu| mu != lam && !dominates(lam, mu)) {
        return Err(FockError::Internal(format!("ladder vector of {lam} is not unitriangular")));
    }
    Ok(x)
}

/// One content block of the canonical-basis table, rows in decreasing
/// dominance (ties lexicographic).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTable {
    pub n: i64,
    pub content: DimVector,
    pub rows: Vec<(Partition, FockVector)>,
}

impl BlockTable {
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|(lam, b)| {
                let terms: Vec<Value> = b
                    .iter()
                    .rev()
                    .map(|(mu, c)| json!({ "mu": mu.to_json(), "coeff": c.to_json() }))
                    .collect();
                json!({ "lambda": lam.to_json(), "terms": terms })
            })
            .collect();
        json!({ "n": self.n, "block_content": self.content.to_json(), "rows": rows })
    }

    pub fn from_json(value: &Value) -> Result<Self, FockError> {
        let bad = |what: &str| FockError::Quiver(crate::quiver::QuiverError::Parse(format!("table needs {what}")));
        let n = value.get("n").and_then(Value::as_i64).ok_or_else(|| bad("\"n\""))?;
        let content = DimVector::from_json(value.get("block_content").ok_or_else(|| bad("\"block_content\""))?)?;
        let mut rows = Vec::new();
        for row in value.get("rows").and_then(Value::as_array).ok_or_else(|| bad("\"rows\""))? {
            let lam = Partition::from_json(row.get("lambda").ok_or_else(|| bad("\"lambda\""))?)?;
            let mut b = FockVector::zero();
            for t in row.get("terms").and_then(Value::as_array).ok_or_else(|| bad("\"terms\""))? {
                let mu = Partition::from_json(t.get("mu").ok_or_else(|| bad("\"mu\""))?)?;
                b.add_term(mu, &LaurentPoly::from_json(t.get("coeff").ok_or_else(|| bad("\"coeff\""))?)?);
            }
            rows.push((lam, b));
        }
        Ok(Self { n, content, rows })
    }
}

/// Canonical basis vectors for every `|λ| ≤ max_size`, grouped by content.
pub fn canonical_table(n: i64, max_size: i64) -> Result<Vec<BlockTable>, FockError> {
    check_n(n)?;
    let mut out = Vec::new();
    for size in 0..=max_size {
        let mut contents: Vec<DimVector> = Partition::all_of_size(size).iter().map(|l| content(l, n)).collect();
        contents.sort();
        contents.dedup();
        for c in contents {
            let block = block_of(&c, n)?;
            let rows = block.parts.iter().rev().map(|l| (l.clone(), block.canonical[l].clone())).collect();
            out.push(BlockTable { n, content: c, rows });
        }
    }
    Ok(out)
}
