use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::{tilde_exponent, HallElement, HallError};
use crate::quiver::{
    deg_leq, end_dim, euler_form, left_table, multisegments, radical_layers, right_table, DimVector, Multisegment,
    QuiverKind,
};
use crate::ring::{IntPolyQ, LaurentPoly};

/// A word of semisimple letters; its monomial is `ũ_{α_1} ⋯ ũ_{α_ℓ}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemisimpleWord {
    letters: Vec<DimVector>,
}

impl SemisimpleWord {
    pub fn new(letters: Vec<DimVector>) -> Result<Self, HallError> {
        if let Some(bad) = letters.iter().find(|a| a.is_zero()) {
            return Err(HallError::NotSemisimple(bad.clone()));
        }
        Ok(Self { letters })
    }

    pub fn letters(&self) -> &[DimVector] {
        &self.letters
    }

    pub fn grade(&self) -> DimVector {
        self.letters.iter().fold(DimVector::zero(), |acc, a| &acc + a)
    }
}

/// Radical layers, top first.
pub fn distinguished_word(m: &Multisegment) -> SemisimpleWord {
    SemisimpleWord { letters: radical_layers(m) }
}

/// `u_{[S_α]} · x`.
pub fn mul_semisimple_left(alpha: &DimVector, x: &HallElement) -> Result<HallElement, HallError> {
    let kind = x.kind();
    let alpha = alpha.reduce(kind);
    let grade = &alpha + x.grade();
    let mut out = HallElement::zero(kind, grade.clone());
    if alpha.is_zero() {
        return Ok(x.clone());
    }
    let twist = euler_form(&alpha, x.grade(), kind);
    let table = left_table(kind, &alpha, &grade);
    for (m, c) in x.terms() {
        for (p, phi) in table.by_factor.get(m).into_iter().flatten() {
            out.add_term(p.clone(), &(c * &phi.to_laurent().shift(twist)));
        }
    }
    Ok(out)
}

/// `x · u_{[S_α]}`.
pub fn mul_semisimple_right(x: &HallElement, alpha: &DimVector) -> Result<HallElement, HallError> {
    let kind = x.kind();
    let alpha = alpha.reduce(kind);
    let grade = &alpha + x.grade();
    let mut out = HallElement::zero(kind, grade.clone());
    if alpha.is_zero() {
        return Ok(x.clone());
    }
    let twist = euler_form(x.grade(), &alpha, kind);
    let table = right_table(kind, &alpha, &grade);
    for (m, c) in x.terms() {
        for (p, phi) in table.by_factor.get(m).into_iter().flatten() {
            out.add_term(p.clone(), &(c * &phi.to_laurent().shift(twist)));
        }
    }
    Ok(out)
}

fn tilde_semisimple(kind: QuiverKind, alpha: &DimVector) -> i64 {
    tilde_exponent(&Multisegment::semisimple(kind, alpha))
}

/// `ũ_{α_1} ⋯ ũ_{α_ℓ} · y`, applying the last letter first.
pub fn apply_word(word: &SemisimpleWord, y: &HallElement) -> Result<HallElement, HallError> {
    let kind = y.kind();
    let mut acc = y.clone();
    for alpha in word.letters.iter().rev() {
        acc = mul_semisimple_left(alpha, &acc)?.scale(&LaurentPoly::v_pow(tilde_semisimple(kind, alpha)));
    }
    Ok(acc)
}

pub fn monomial_of_word(kind: QuiverKind, word: &SemisimpleWord) -> Result<HallElement, HallError> {
    apply_word(word, &HallElement::one(kind))
}

/// Per-grade data of the unitriangular change of basis between `ũ_m` and the
/// monomials of distinguished words.
#[derive(Debug)]
pub struct MonomialExpansion {
    order: Vec<Multisegment>,
    index: HashMap<Multisegment, usize>,
    below: Vec<Vec<bool>>,
    /// `theta[k]`: ũ-coefficients of the monomial of `order[k]`.
    theta: Vec<BTreeMap<usize, LaurentPoly>>,
    /// `inverse[k]`: `ũ_{order[k]}` as a combination of monomials.
    inverse: Vec<BTreeMap<usize, LaurentPoly>>,
}

impl MonomialExpansion {
    /// The grade's multisegments in a linear extension of `≤_deg`.
    pub fn order(&self) -> &[Multisegment] {
        &self.order
    }

    pub fn position(&self, m: &Multisegment) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// `order[a] ≤_deg order[b]`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.below[b][a]
    }

    /// The monomial of `order[k]` in the ũ-basis.
    pub fn monomial(&self, k: usize) -> &BTreeMap<usize, LaurentPoly> {
        &self.theta[k]
    }

    /// `ũ_{order[k]}` in terms of monomials.
    pub fn tilde_in_monomials(&self, k: usize) -> &BTreeMap<usize, LaurentPoly> {
        &self.inverse[k]
    }

    pub fn word(&self, k: usize) -> SemisimpleWord {
        distinguished_word(&self.order[k])
    }
}

/// Topological sort of `≤_deg`, always taking the smallest available element.
fn linear_extension(items: &[Multisegment]) -> (Vec<Multisegment>, Vec<Vec<bool>>) {
    let n = items.len();
    let rel: Vec<Vec<bool>> = (0..n).map(|b| (0..n).map(|a| deg_leq(&items[a], &items[b])).collect()).collect();
    let mut indeg: Vec<usize> = (0..n).map(|b| (0..n).filter(|&a| a != b && rel[b][a]).count()).collect();
    let mut ready: BTreeSet<usize> = (0..n).filter(|&b| indeg[b] == 0).collect();
    let mut perm = Vec::with_capacity(n);
    while let Some(a) = ready.pop_first() {
        perm.push(a);
        for b in 0..n {
            if b != a && rel[b][a] {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    ready.insert(b);
                }
            }
        }
    }
    assert_eq!(perm.len(), n, "degeneration order has a cycle");
    let order = perm.iter().map(|&k| items[k].clone()).collect();
    let below = perm.iter().map(|&b| perm.iter().map(|&a| rel[b][a]).collect()).collect();
    (order, below)
}

fn build_expansion(kind: QuiverKind, grade: &DimVector) -> Result<MonomialExpansion, HallError> {
    let (order, below) = linear_extension(&multisegments(kind, grade));
    let index: HashMap<Multisegment, usize> = order.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();
    let mut theta = Vec::with_capacity(order.len());
    for (k, m) in order.iter().enumerate() {
        let mono = monomial_of_word(kind, &distinguished_word(m))?;
        let mut row = BTreeMap::new();
        for (p, c) in mono.tilde_terms() {
            let j = index[&p];
            if j != k && !below[k][j] {
                return Err(HallError::Internal(format!("monomial of {m} reaches {p}, which is not below it")));
            }
            row.insert(j, c);
        }
        if row.get(&k).is_none_or(|c| !c.is_one()) {
            return Err(HallError::Internal(format!("monomial of {m} does not lead with ũ_m")));
        }
        theta.push(row);
    }
    let mut inverse: Vec<BTreeMap<usize, LaurentPoly>> = Vec::with_capacity(order.len());
    for k in 0..order.len() {
        let mut row = BTreeMap::from([(k, LaurentPoly::one())]);
        for (&j, c) in &theta[k] {
            if j == k {
                continue;
            }
            for (&w, e) in &inverse[j] {
                let slot = row.entry(w).or_default();
                *slot -= &(c * e);
            }
        }
        row.retain(|_, c| !c.is_zero());
        inverse.push(row);
    }
    Ok(MonomialExpansion { order, index, below, theta, inverse })
}

/// Cached per `(kind, grade)`.
pub fn expand_in_monomials(kind: QuiverKind, grade: &DimVector) -> Result<Arc<MonomialExpansion>, HallError> {
    type Cache = Mutex<HashMap<(QuiverKind, DimVector), Arc<MonomialExpansion>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (kind, grade.reduce(kind));
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let built = Arc::new(build_expansion(kind, &key.1)?);
    cache.lock().unwrap().insert(key, built.clone());
    Ok(built)
}

/// `x · y`, writing `x` in monomials and applying them letter by letter to `y`.
pub fn mul(x: &HallElement, y: &HallElement) -> Result<HallElement, HallError> {
    if x.kind() != y.kind() {
        return Err(crate::quiver::QuiverError::KindMismatch.into());
    }
    let kind = x.kind();
    let mut out = HallElement::zero(kind, x.grade() + y.grade());
    if x.is_zero() || y.is_zero() {
        return Ok(out);
    }
    let data = expand_in_monomials(kind, x.grade())?;
    let mut per_word: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
    for (m, c) in x.tilde_terms() {
        let k = data.position(&m).expect("term inside its grade");
        for (&w, e) in data.tilde_in_monomials(k) {
            *per_word.entry(w).or_default() += &(&c * e);
        }
    }
    for (w, c) in per_word {
        if c.is_zero() {
            continue;
        }
        out = &out + &apply_word(&data.word(w), y)?.scale(&c);
    }
    Ok(out)
}

/// `φ^p_{m,m'}`: read off `u_m u_{m'}` after removing the twist.
pub fn hall_poly(m: &Multisegment, m2: &Multisegment, p: &Multisegment) -> Result<IntPolyQ, HallError> {
    let prod = mul(&HallElement::u(m), &HallElement::u(m2))?;
    let twist = euler_form(&m.dim_vector(), &m2.dim_vector(), m.kind());
    let c = prod.coeff(p).shift(-twist);
    IntPolyQ::from_laurent(&c).ok_or_else(|| HallError::NotPolynomial(format!("φ^{p}_{{{m}, {m2}}} = {c} in v")))
}

/// `|Aut M(m)|` as a polynomial in `q`: the endomorphism ring modulo its radical
/// is `Π_{segments} M_{k}(F_q)`.
pub fn aut_order(m: &Multisegment) -> IntPolyQ {
    let mut poly = IntPolyQ::one();
    let mut drop = 0i64;
    for (_, k) in m.segments() {
        for j in 1..=k {
            poly = &poly * &(&IntPolyQ::monomial(1, j) + &IntPolyQ::monomial(-1, 0));
            drop += j as i64;
        }
    }
    &poly * &IntPolyQ::monomial(1, (end_dim(m) - drop) as u32)
}

/// `Σ_i cod_i (top_i − cod_i)`: the dimension of the product of Grassmannians
/// the one-step count of `S_α` on top of `M(p)` ranges over.
pub fn one_step_degree_bound(p: &Multisegment, alpha: &DimVector) -> i64 {
    let top = p.top();
    alpha.iter().map(|(i, a)| a * (top.get(i) - a).max(0)).sum()
}
