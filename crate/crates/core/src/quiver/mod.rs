//! Nilpotent representations of the cyclic quiver and the infinite line:
//! multisegments, Hom counts, the degeneration order and generic extensions.

mod field;
mod generic;
mod partition;
mod strata;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::{json, Value};

pub use field::{build_rep, iso_type, FiniteFieldRep, Gf};
pub use generic::{generic_ext, ladder_word};
pub use partition::{is_n_regular, m_of_partition, Partition};
pub use strata::{left_table, quotient_counts, right_table, subspace_profiles, submodule_counts, OneStepTable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuiverError {
    #[error("n must be ≥ 2")]
    BadCycle,
    #[error("quiver kinds differ")]
    KindMismatch,
    #[error("{0} is not n-regular")]
    NotRegular(String),
    #[error("inconsistent dimensions: {0}")]
    Dimensions(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("{0}")]
    Internal(String),
}

/// The cyclic quiver on `ℤ/n` or the doubly infinite line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuiverKind {
    Cyclic(i64),
    InfiniteLine,
}

impl QuiverKind {
    pub fn cyclic(n: i64) -> Result<Self, QuiverError> {
        if n < 2 {
            return Err(QuiverError::BadCycle);
        }
        Ok(Self::Cyclic(n))
    }

    pub fn n(self) -> Option<i64> {
        match self {
            Self::Cyclic(n) => Some(n),
            Self::InfiniteLine => None,
        }
    }

    pub fn reduce(self, i: i64) -> i64 {
        match self {
            Self::Cyclic(n) => i.rem_euclid(n),
            Self::InfiniteLine => i,
        }
    }

    pub fn congruent(self, a: i64, b: i64) -> bool {
        self.reduce(a) == self.reduce(b)
    }
}

/// Finitely supported vector of nonnegative integers on the vertices.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector {
    entries: BTreeMap<i64, i64>,
}

impl DimVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(i: i64) -> Self {
        Self::from_pairs([(i, 1)])
    }

    /// `(1, …, 1)` over `ℤ/n`.
    pub fn delta(n: i64) -> Self {
        Self::from_pairs((0..n).map(|i| (i, 1)))
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut d = Self::zero();
        for (i, c) in pairs {
            d.add_at(i, c);
        }
        d
    }

    pub fn add_at(&mut self, i: i64, c: i64) {
        let slot = self.entries.entry(i).or_insert(0);
        *slot += c;
        assert!(*slot >= 0, "dimension vectors are nonnegative");
        if *slot == 0 {
            self.entries.remove(&i);
        }
    }

    pub fn get(&self, i: i64) -> i64 {
        self.entries.get(&i).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.entries.iter().map(|(i, c)| (*i, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.entries.values().sum()
    }

    pub fn support(&self) -> Option<(i64, i64)> {
        Some((*self.entries.keys().next()?, *self.entries.keys().next_back()?))
    }

    pub fn is_square_free(&self) -> bool {
        self.entries.values().all(|&c| c <= 1)
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self::from_pairs(self.iter().map(|(i, c)| (i, c * k)))
    }

    /// `self − other`, if nonnegative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        let mut out = self.clone();
        for (i, c) in other.iter() {
            if out.get(i) < c {
                return None;
            }
            out.add_at(i, -c);
        }
        Some(out)
    }

    /// Residue reduction onto `kind`.
    pub fn reduce(&self, kind: QuiverKind) -> Self {
        Self::from_pairs(self.iter().map(|(i, c)| (kind.reduce(i), c)))
    }

    pub fn shift(&self, s: i64, kind: QuiverKind) -> Self {
        Self::from_pairs(self.iter().map(|(i, c)| (kind.reduce(i + s), c)))
    }

    pub fn to_json(&self) -> Value {
        Value::Object(self.iter().map(|(i, c)| (i.to_string(), json!(c))).collect())
    }

    pub fn from_json(value: &Value) -> Result<Self, QuiverError> {
        let obj = value
            .as_object()
            .ok_or_else(|| QuiverError::Parse("dimension vector must be an object".into()))?;
        let mut d = Self::zero();
        for (k, v) in obj {
            let i: i64 = k.parse().map_err(|_| QuiverError::Parse(format!("bad vertex {k:?}")))?;
            let c = v
                .as_i64()
                .filter(|c| *c >= 0)
                .ok_or_else(|| QuiverError::Parse(format!("bad entry at {k}")))?;
            d.add_at(i, c);
        }
        Ok(d)
    }
}

impl std::ops::Add for &DimVector {
    type Output = DimVector;
    fn add(self, rhs: &DimVector) -> DimVector {
        let mut out = self.clone();
        for (i, c) in rhs.iter() {
            out.add_at(i, c);
        }
        out
    }
}

impl fmt::Debug for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter()).finish()
    }
}

/// The indecomposable `S_start[len]`: top at `start`, socle at `start + len − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    pub start: i64,
    pub len: i64,
}

impl Segment {
    pub fn new(start: i64, len: i64) -> Self {
        Self { start, len }
    }

    pub fn end(self) -> i64 {
        self.start + self.len - 1
    }
}

/// Isoclass of a nilpotent representation as a multiset of segments.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multisegment {
    kind: QuiverKind,
    mult: BTreeMap<Segment, u32>,
}

impl Multisegment {
    pub fn zero(kind: QuiverKind) -> Self {
        Self { kind, mult: BTreeMap::new() }
    }

    pub fn from_segments(kind: QuiverKind, segs: impl IntoIterator<Item = (i64, i64, u32)>) -> Self {
        let mut m = Self::zero(kind);
        for (i, l, k) in segs {
            m.add(Segment::new(i, l), k);
        }
        m
    }

    pub fn segment(kind: QuiverKind, i: i64, l: i64) -> Self {
        Self::from_segments(kind, [(i, l, 1)])
    }

    /// `Σ d_i [i, 1]`.
    pub fn semisimple(kind: QuiverKind, d: &DimVector) -> Self {
        Self::from_segments(kind, d.iter().map(|(i, c)| (i, 1, c as u32)))
    }

    pub fn add(&mut self, seg: Segment, k: u32) {
        assert!(seg.len >= 1, "segment lengths are positive");
        if k > 0 {
            let seg = Segment::new(self.kind.reduce(seg.start), seg.len);
            *self.mult.entry(seg).or_insert(0) += k;
        }
    }

    pub fn kind(&self) -> QuiverKind {
        self.kind
    }

    pub fn is_zero(&self) -> bool {
        self.mult.is_empty()
    }

    pub fn mult(&self, i: i64, l: i64) -> u32 {
        self.mult.get(&Segment::new(self.kind.reduce(i), l)).copied().unwrap_or(0)
    }

    pub fn segments(&self) -> impl Iterator<Item = (Segment, u32)> + '_ {
        self.mult.iter().map(|(s, k)| (*s, *k))
    }

    /// Segments repeated according to multiplicity.
    pub fn expanded(&self) -> Vec<Segment> {
        self.segments().flat_map(|(s, k)| std::iter::repeat_n(s, k as usize)).collect()
    }

    pub fn num_segments(&self) -> u32 {
        self.mult.values().sum()
    }

    pub fn max_len(&self) -> i64 {
        self.mult.keys().map(|s| s.len).max().unwrap_or(0)
    }

    pub fn dim_vector(&self) -> DimVector {
        let mut d = DimVector::zero();
        for (s, k) in self.segments() {
            for c in 0..s.len {
                d.add_at(self.kind.reduce(s.start + c), k as i64);
            }
        }
        d
    }

    pub fn total_dim(&self) -> i64 {
        self.segments().map(|(s, k)| s.len * k as i64).sum()
    }

    pub fn is_semisimple(&self) -> bool {
        self.max_len() <= 1
    }

    pub fn socle(&self) -> DimVector {
        DimVector::from_pairs(self.segments().map(|(s, k)| (self.kind.reduce(s.end()), k as i64)))
    }

    pub fn top(&self) -> DimVector {
        DimVector::from_pairs(self.segments().map(|(s, k)| (s.start, k as i64)))
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        assert_eq!(self.kind, other.kind);
        let mut out = self.clone();
        for (s, k) in other.segments() {
            out.add(s, k);
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.segments().map(|(s, k)| json!([s.start, s.len, k])).collect())
    }

    pub fn from_json(kind: QuiverKind, value: &Value) -> Result<Self, QuiverError> {
        let bad = || QuiverError::Parse("multisegment must be a list of [i, l, mult] triples".into());
        let mut m = Self::zero(kind);
        for item in value.as_array().ok_or_else(bad)? {
            let t = item.as_array().filter(|t| t.len() == 3).ok_or_else(bad)?;
            let i = t[0].as_i64().ok_or_else(bad)?;
            let l = t[1].as_i64().filter(|l| *l >= 1).ok_or_else(bad)?;
            let k = t[2].as_u64().ok_or_else(bad)?;
            m.add(Segment::new(i, l), k as u32);
        }
        Ok(m)
    }
}

impl fmt::Debug for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .segments()
            .map(|(s, k)| if k == 1 { format!("[{},{}]", s.start, s.len) } else { format!("{k}[{},{}]", s.start, s.len) })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl fmt::Display for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn dim_vector(m: &Multisegment) -> DimVector {
    m.dim_vector()
}

/// `dim Hom(S_i[l], S_j[k])`.
pub fn hom_dim(seg1: Segment, seg2: Segment, kind: QuiverKind) -> i64 {
    let (i, l, j, k) = (seg1.start, seg1.len, seg2.start, seg2.len);
    let lo = (k - l).max(0);
    match kind {
        QuiverKind::InfiniteLine => i64::from(lo <= i - j && i - j < k),
        QuiverKind::Cyclic(n) => {
            // Count c in [lo, k−1] with c ≡ i − j (mod n).
            let r = (i - j).rem_euclid(n);
            let first = lo + (r - lo).rem_euclid(n);
            if first > k - 1 {
                0
            } else {
                (k - 1 - first) / n + 1
            }
        }
    }
}

/// `dim Hom(M(a), M(b))`.
pub fn hom_total(a: &Multisegment, b: &Multisegment) -> i64 {
    let kind = a.kind;
    a.segments()
        .flat_map(|(s, k)| b.segments().map(move |(t, j)| hom_dim(s, t, kind) * (k as i64) * (j as i64)))
        .sum()
}

pub fn end_dim(m: &Multisegment) -> i64 {
    hom_total(m, m)
}

/// `⟨d, e⟩ = Σ d_i e_i − Σ d_i e_{i+1}`.
pub fn euler_form(d: &DimVector, e: &DimVector, kind: QuiverKind) -> i64 {
    d.iter().map(|(i, c)| c * (e.get(i) - e.get(kind.reduce(i + 1)))).sum()
}

pub fn symmetric_euler(d: &DimVector, e: &DimVector, kind: QuiverKind) -> i64 {
    euler_form(d, e, kind) + euler_form(e, d, kind)
}

pub fn tau_shift(m: &Multisegment, s: i64) -> Multisegment {
    Multisegment::from_segments(m.kind, m.segments().map(|(seg, k)| (seg.start + s, seg.len, k)))
}

pub fn covering(m: &Multisegment, n: i64) -> Result<Multisegment, QuiverError> {
    let kind = QuiverKind::cyclic(n)?;
    if m.kind != QuiverKind::InfiniteLine {
        return Err(QuiverError::KindMismatch);
    }
    Ok(Multisegment::from_segments(kind, m.segments().map(|(s, k)| (s.start, s.len, k))))
}

/// Layer `s` is `Σ_{l ≥ s} m_{i,l} ε_{i+s−1}`.
pub fn radical_layers(m: &Multisegment) -> Vec<DimVector> {
    (1..=m.max_len())
        .map(|s| {
            DimVector::from_pairs(
                m.segments()
                    .filter(|(seg, _)| seg.len >= s)
                    .map(|(seg, k)| (m.kind.reduce(seg.start + s - 1), k as i64)),
            )
        })
        .collect()
}

/// `M(a) ≤_deg M(b)`: equal dimension vectors and `dim Hom(a, X) ≥ dim Hom(b, X)`
/// for every indecomposable `X` in a finite window.
///
/// Over the line a test object longer than the total dimension can be shortened
/// without changing any hom count. Over the cycle, once `k` exceeds every segment
/// length, `dim Hom(S_i[l], S_j[k])` depends only on `k mod n`, so `k ≤ dim + n`
/// covers every residue.
pub fn deg_leq(a: &Multisegment, b: &Multisegment) -> bool {
    if a.kind != b.kind || a.dim_vector() != b.dim_vector() {
        return false;
    }
    let d = a.total_dim();
    for x in test_objects(a.kind, &a.dim_vector(), d) {
        let x = Multisegment::from_segments(a.kind, [(x.start, x.len, 1)]);
        if hom_total(a, &x) < hom_total(b, &x) {
            return false;
        }
    }
    true
}

fn test_objects(kind: QuiverKind, dim: &DimVector, d: i64) -> Vec<Segment> {
    let mut out = Vec::new();
    match kind {
        QuiverKind::Cyclic(n) => {
            for j in 0..n {
                for l in 1..=d + n {
                    out.push(Segment::new(j, l));
                }
            }
        }
        QuiverKind::InfiniteLine => {
            let Some((lo, hi)) = dim.support() else { return out };
            for j in lo - d..=hi {
                for l in 1..=d.max(1) {
                    out.push(Segment::new(j, l));
                }
            }
        }
    }
    out
}

/// Prefix-sum dominance `μ ⪯ λ`, i.e. `dominates(λ, μ)`.
pub fn dominates(lam: &Partition, mu: &Partition) -> bool {
    let len = lam.len().max(mu.len());
    let (mut a, mut b) = (0, 0);
    for s in 0..len {
        a += lam.part(s + 1);
        b += mu.part(s + 1);
        if b > a {
            return false;
        }
    }
    true
}

/// No segment length occurs at every residue.
pub fn is_aperiodic(m: &Multisegment) -> bool {
    let Some(n) = m.kind.n() else { return true };
    (1..=m.max_len()).all(|l| (0..n).any(|i| m.mult(i, l) == 0))
}

/// All multisegments with dimension vector `d`, in increasing order.
pub fn multisegments(kind: QuiverKind, d: &DimVector) -> Vec<Multisegment> {
    let total = d.total();
    let (index, width): (Box<dyn Fn(i64) -> Option<usize>>, usize) = match kind {
        QuiverKind::Cyclic(n) => (Box::new(move |v| Some(v.rem_euclid(n) as usize)), n as usize),
        QuiverKind::InfiniteLine => {
            let Some((lo, hi)) = d.support() else { return vec![Multisegment::zero(kind)] };
            (
                Box::new(move |v| (lo <= v && v <= hi).then(|| (v - lo) as usize)),
                (hi - lo + 1) as usize,
            )
        }
    };
    let mut remaining = vec![0i64; width];
    for (i, c) in d.iter() {
        remaining[index(i).expect("vertex in range")] = c;
    }
    let mut candidates = Vec::new();
    let starts: Vec<i64> = match kind {
        QuiverKind::Cyclic(n) => (0..n).collect(),
        QuiverKind::InfiniteLine => d.iter().map(|(i, _)| i).collect(),
    };
    for &i in &starts {
        for l in 1..=total {
            let fits = (0..l).all(|c| index(i + c).is_some_and(|v| remaining[v] > 0));
            if fits {
                candidates.push(Segment::new(i, l));
            }
        }
    }
    let mut out = BTreeSet::new();
    let mut current = Vec::new();
    enumerate(&candidates, 0, &mut remaining, &index, &mut current, &mut |segs| {
        out.insert(Multisegment::from_segments(kind, segs.iter().map(|&(s, k): &(Segment, u32)| (s.start, s.len, k))));
    });
    out.into_iter().collect()
}

fn enumerate(
    candidates: &[Segment],
    pos: usize,
    remaining: &mut [i64],
    index: &dyn Fn(i64) -> Option<usize>,
    current: &mut Vec<(Segment, u32)>,
    emit: &mut dyn FnMut(&[(Segment, u32)]),
) {
    if remaining.iter().all(|&r| r == 0) {
        emit(current);
        return;
    }
    if pos == candidates.len() {
        return;
    }
    enumerate(candidates, pos + 1, remaining, index, current, emit);
    let seg = candidates[pos];
    let mut uses = vec![0i64; remaining.len()];
    for c in 0..seg.len {
        uses[index(seg.start + c).expect("candidate inside support")] += 1;
    }
    let kmax = uses
        .iter()
        .zip(remaining.iter())
        .filter(|(u, _)| **u > 0)
        .map(|(u, r)| r / u)
        .min()
        .unwrap_or(0);
    for k in 1..=kmax {
        for (r, u) in remaining.iter_mut().zip(&uses) {
            *r -= k * u;
        }
        current.push((seg, k as u32));
        enumerate(candidates, pos + 1, remaining, index, current, emit);
        current.pop();
        for (r, u) in remaining.iter_mut().zip(&uses) {
            *r += k * u;
        }
    }
}

#[cfg(test)]
mod tests;
