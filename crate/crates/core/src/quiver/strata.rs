//! One-step Hall numbers: submodules with semisimple quotient (subspaces of the
//! top) and semisimple submodules (subspaces of the socle), counted exactly by
//! Schubert cells of products of Grassmannians.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;

use super::field::iso_from_ranks;
use super::{multisegments, DimVector, Multisegment, QuiverKind};
use crate::ring::IntPolyQ;

type Profiles = Arc<Vec<(Vec<usize>, IntPolyQ)>>;

/// `k`-dimensional subspaces of `F_q^t`, grouped by the profile
/// `ρ(j) = dim` of the projection onto the first `j` coordinates (`0 ≤ j ≤ t`).
/// In reduced echelon form `ρ(j)` is the number of pivots before column `j`, and
/// each pivot set contributes `q^{free entries}` subspaces.
pub fn subspace_profiles(t: usize, k: usize) -> Profiles {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Profiles>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&(t, k)) {
        return hit.clone();
    }
    let mut grouped: BTreeMap<Vec<usize>, IntPolyQ> = BTreeMap::new();
    if k <= t {
        for pivots in (0..t).combinations(k) {
            let free: usize = pivots
                .iter()
                .enumerate()
                .map(|(r, &p)| (t - 1 - p) - (k - 1 - r))
                .sum();
            let profile: Vec<usize> = (0..=t).map(|j| pivots.iter().filter(|&&p| p < j).count()).collect();
            let slot = grouped.entry(profile).or_default();
            *slot = &*slot + &IntPolyQ::monomial(1, free as u32);
        }
    }
    let out: Profiles = Arc::new(grouped.into_iter().collect());
    cache.lock().unwrap().insert((t, k), out.clone());
    out
}

fn vertex_range(kind: QuiverKind, d: &DimVector) -> Vec<i64> {
    match kind {
        QuiverKind::Cyclic(n) => (0..n).collect(),
        QuiverKind::InfiniteLine => match d.support() {
            Some((lo, hi)) => (lo..=hi).collect(),
            None => vec![0],
        },
    }
}

/// Runs `visit` over every choice of one profile per vertex, with the product
/// of the chosen counts.
fn for_each_choice(
    choices: &[Profiles],
    visit: &mut dyn FnMut(&[&[usize]], &IntPolyQ),
) {
    fn go<'a>(
        choices: &'a [Profiles],
        pos: usize,
        picked: &mut Vec<&'a [usize]>,
        weight: &IntPolyQ,
        visit: &mut dyn FnMut(&[&[usize]], &IntPolyQ),
    ) {
        if pos == choices.len() {
            visit(picked, weight);
            return;
        }
        for (profile, count) in choices[pos].iter() {
            picked.push(profile);
            go(choices, pos + 1, picked, &(weight * count), visit);
            picked.pop();
        }
    }
    go(choices, 0, &mut Vec::new(), &IntPolyQ::one(), visit);
}

/// Submodules `U ⊆ M(p)` with `M(p)/U ≅ S_α`, counted by isomorphism type of `U`.
///
/// Such `U` contain the radical, so they are the preimages of graded subspaces
/// `W` of the top of codimension `α`. The rank of the length-`l` path map on `U`
/// out of vertex `i` is the number of radical coordinates that survive `l`
/// steps, plus the rank of `W_i` projected onto the top coordinates of segments
/// longer than `l`; sorting those by decreasing length makes that a prefix.
pub fn submodule_counts(p: &Multisegment, alpha: &DimVector) -> BTreeMap<Multisegment, IntPolyQ> {
    let kind = p.kind();
    let vertices = vertex_range(kind, &p.dim_vector());
    let segs = p.expanded();
    let mut tops: Vec<Vec<i64>> = Vec::new();
    let mut rad: Vec<Vec<(i64, i64)>> = Vec::new();
    let mut choices = Vec::new();
    for &i in &vertices {
        let mut t: Vec<i64> = segs.iter().filter(|s| s.start == i).map(|s| s.len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        let Some(keep) = (t.len() as i64).checked_sub(alpha.get(i)).filter(|k| *k >= 0) else {
            return BTreeMap::new();
        };
        choices.push(subspace_profiles(t.len(), keep as usize));
        tops.push(t);
        rad.push(
            segs.iter()
                .flat_map(|s| (1..s.len).filter(move |c| kind.reduce(s.start + c) == i).map(move |c| (c, s.len)))
                .collect(),
        );
    }
    if alpha.iter().any(|(i, c)| c > 0 && !vertices.contains(&i)) {
        return BTreeMap::new();
    }
    let pos = |i: i64| -> Option<usize> {
        let i = kind.reduce(i);
        vertices.iter().position(|&v| v == i)
    };
    let lmax = p.max_len();
    let mut out: BTreeMap<Multisegment, IntPolyQ> = BTreeMap::new();
    for_each_choice(&choices, &mut |picked, weight| {
        let rank = |i: i64, l: i64| -> i64 {
            let Some(v) = pos(i) else { return 0 };
            let survive = rad[v].iter().filter(|&&(c, len)| c + l < len).count();
            let longer = tops[v].iter().filter(|&&len| len > l).count();
            (survive + picked[v][longer]) as i64
        };
        let u = iso_from_ranks(kind, &vertices, lmax, rank);
        let slot = out.entry(u).or_default();
        *slot = &*slot + weight;
    });
    out
}

/// Semisimple submodules `U ≅ S_α` of `M(p)`, counted by isomorphism type of
/// the quotient.
///
/// `U` lies in the socle. Modulo `U_j` the image of the length-`l` path map into
/// vertex `j` gains the projection of `U_j` onto socle coordinates of segments of
/// length `≤ l` (those are not hit by the path map); sorting the socle by
/// increasing length makes that a prefix.
pub fn quotient_counts(p: &Multisegment, alpha: &DimVector) -> BTreeMap<Multisegment, IntPolyQ> {
    let kind = p.kind();
    let vertices = vertex_range(kind, &p.dim_vector());
    if alpha.iter().any(|(i, c)| c > 0 && !vertices.contains(&i)) {
        return BTreeMap::new();
    }
    let segs = p.expanded();
    let mut socle: Vec<Vec<i64>> = Vec::new();
    let mut offsets: Vec<Vec<i64>> = Vec::new();
    let mut choices = Vec::new();
    for &j in &vertices {
        let mut s: Vec<i64> = segs.iter().filter(|s| kind.reduce(s.end()) == j).map(|s| s.len).collect();
        s.sort_unstable();
        let a = alpha.get(j);
        if a > s.len() as i64 {
            return BTreeMap::new();
        }
        choices.push(subspace_profiles(s.len(), a as usize));
        socle.push(s);
        offsets.push(
            segs.iter()
                .flat_map(|s| (0..s.len).filter(move |c| kind.reduce(s.start + c) == j))
                .collect(),
        );
    }
    let pos = |i: i64| -> Option<usize> {
        let i = kind.reduce(i);
        vertices.iter().position(|&v| v == i)
    };
    let lmax = p.max_len();
    let mut out: BTreeMap<Multisegment, IntPolyQ> = BTreeMap::new();
    for_each_choice(&choices, &mut |picked, weight| {
        let rank = |i: i64, l: i64| -> i64 {
            if pos(i).is_none() {
                return 0;
            }
            let Some(v) = pos(i + l) else { return 0 };
            let hit = offsets[v].iter().filter(|&&c| c >= l).count() as i64;
            let short = socle[v].iter().filter(|&&len| len <= l).count();
            hit + picked[v][short] as i64 - alpha.get(vertices[v])
        };
        let quotient = iso_from_ranks(kind, &vertices, lmax, rank);
        let slot = out.entry(quotient).or_default();
        *slot = &*slot + weight;
    });
    out
}

/// For a fixed semisimple `α` and target grade: every factor `m` mapped to the
/// list of `(p, φ)` with `φ ≠ 0`.
#[derive(Debug, Default)]
pub struct OneStepTable {
    pub by_factor: HashMap<Multisegment, Vec<(Multisegment, IntPolyQ)>>,
}

type TableCache = OnceLock<Mutex<HashMap<(QuiverKind, DimVector, DimVector), Arc<OneStepTable>>>>;

fn build_table(
    cache: &TableCache,
    kind: QuiverKind,
    alpha: &DimVector,
    grade: &DimVector,
    counts: fn(&Multisegment, &DimVector) -> BTreeMap<Multisegment, IntPolyQ>,
) -> Arc<OneStepTable> {
    let cache = cache.get_or_init(Default::default);
    let key = (kind, alpha.clone(), grade.clone());
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return hit.clone();
    }
    let mut table = OneStepTable::default();
    for p in multisegments(kind, grade) {
        for (m, phi) in counts(&p, alpha) {
            table.by_factor.entry(m).or_default().push((p.clone(), phi));
        }
    }
    let table = Arc::new(table);
    cache.lock().unwrap().insert(key, table.clone());
    table
}

/// `φ^p_{S_α, m}` for all `p` of the given grade.
pub fn left_table(kind: QuiverKind, alpha: &DimVector, grade: &DimVector) -> Arc<OneStepTable> {
    static CACHE: TableCache = OnceLock::new();
    build_table(&CACHE, kind, alpha, grade, submodule_counts)
}

/// `φ^p_{m, S_α}` for all `p` of the given grade.
pub fn right_table(kind: QuiverKind, alpha: &DimVector, grade: &DimVector) -> Arc<OneStepTable> {
    static CACHE: TableCache = OnceLock::new();
    build_table(&CACHE, kind, alpha, grade, quotient_counts)
}
