//! Brute-force oracles over explicit finite fields, independent of the
//! combinatorial shortcuts used by the library.
#![allow(dead_code)]

use std::collections::BTreeMap;

use fockhall_core::quiver::{build_rep, FiniteFieldRep, Gf, Multisegment, QuiverKind};
use fockhall_core::quiver::DimVector;

pub type Mat = Vec<Vec<u32>>;

/// Reduced row echelon form; returns pivot columns.
pub fn rref(f: &Gf, m: &mut Mat, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(row, p);
        let inv = f.inv(m[row][c]);
        for x in m[row].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for r in 0..m.len() {
            if r != row && m[r][c] != 0 {
                let k = m[r][c];
                for j in 0..cols {
                    let t = f.mul(k, m[row][j]);
                    m[r][j] = f.sub(m[r][j], t);
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    pivots
}

pub fn nullspace(f: &Gf, m: &Mat, cols: usize) -> Vec<Vec<u32>> {
    let mut m = m.clone();
    let pivots = rref(f, &mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0; cols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m[r][fc]);
            }
            v
        })
        .collect()
}

/// Every `k`-dimensional subspace of `F_q^t`, as a `k × t` basis matrix.
pub fn subspaces(f: &Gf, t: usize, k: usize) -> Vec<Mat> {
    let q = f.order();
    let mut out = Vec::new();
    let mut pivots: Vec<usize> = (0..k).collect();
    if k > t {
        return out;
    }
    loop {
        let slots: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let pv = pivots.clone();
                ((pv[r] + 1)..t).filter(move |c| !pv.contains(c)).map(move |c| (r, c))
            })
            .collect();
        let total = (q as u64).pow(slots.len() as u32);
        for code in 0..total {
            let mut m = vec![vec![0; t]; k];
            for (r, &p) in pivots.iter().enumerate() {
                m[r][p] = 1;
            }
            let mut c = code;
            for &(r, col) in &slots {
                m[r][col] = (c % q as u64) as u32;
                c /= q as u64;
            }
            out.push(m);
        }
        // Next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if pivots[i] < t - k + i {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn vertices(kind: QuiverKind, d: &DimVector) -> Vec<i64> {
    match kind {
        QuiverKind::Cyclic(n) => (0..n).collect(),
        QuiverKind::InfiniteLine => match d.support() {
            Some((lo, hi)) => (lo - 1..=hi + 1).collect(),
            None => vec![0],
        },
    }
}

/// Dimension of the space of intertwiners `M(a) → M(b)` over `F_q`, with the
/// basis of solutions.
pub fn intertwiners(a: &Multisegment, b: &Multisegment, q: u32) -> (usize, Vec<Vec<u32>>, Vec<(i64, usize, usize, usize)>) {
    let ra = build_rep(a, q).unwrap();
    let rb = build_rep(b, q).unwrap();
    let kind = a.kind();
    let f = ra.field.clone();
    let dims = &ra.dims + &rb.dims;
    let verts = vertices(kind, &dims);
    // Unknown block layout: (vertex, offset, rows = dB, cols = dA).
    let mut layout = Vec::new();
    let mut offset = 0;
    for &v in &verts {
        let (r, c) = (rb.dims.get(kind.reduce(v)) as usize, ra.dims.get(kind.reduce(v)) as usize);
        layout.push((kind.reduce(v), offset, r, c));
        offset += r * c;
    }
    let unknowns = offset;
    let block = |v: i64| layout.iter().find(|b| b.0 == kind.reduce(v)).copied();
    let mut eqs: Mat = Vec::new();
    for &v in &verts {
        let (Some(src), Some(dst)) = (block(v), block(v + 1)) else { continue };
        let a_map = ra.arrow(v);
        let b_map = rb.arrow(v);
        // (f_{v+1} A_v − B_v f_v)[r][c] = 0.
        for r in 0..dst.2 {
            for c in 0..src.3 {
                let mut eq = vec![0; unknowns];
                for k in 0..dst.3 {
                    let coef = a_map[k][c];
                    if coef != 0 {
                        let idx = dst.1 + r * dst.3 + k;
                        eq[idx] = f.add(eq[idx], coef);
                    }
                }
                for k in 0..src.2 {
                    let coef = b_map[r][k];
                    if coef != 0 {
                        let idx = src.1 + k * src.3 + c;
                        eq[idx] = f.sub(eq[idx], coef);
                    }
                }
                eqs.push(eq);
            }
        }
    }
    let basis = if eqs.is_empty() {
        (0..unknowns).map(|i| (0..unknowns).map(|j| u32::from(i == j)).collect()).collect()
    } else {
        nullspace(&f, &eqs, unknowns)
    };
    (basis.len(), basis, layout)
}

pub fn hom_oracle(a: &Multisegment, b: &Multisegment, q: u32) -> usize {
    intertwiners(a, b, q).0
}

/// `|Aut M(m)|` over `F_q` by enumerating all endomorphisms.
pub fn aut_oracle(m: &Multisegment, q: u32) -> u64 {
    let f = Gf::new(q).unwrap();
    let (dim, basis, layout) = intertwiners(m, m, q);
    let mut count = 0;
    for code in 0..(q as u64).pow(dim as u32) {
        let mut coeffs = Vec::with_capacity(dim);
        let mut c = code;
        for _ in 0..dim {
            coeffs.push((c % q as u64) as u32);
            c /= q as u64;
        }
        let total = basis.first().map_or(0, |b| b.len());
        let mut x = vec![0; total];
        for (b, &k) in basis.iter().zip(&coeffs) {
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi = f.add(*xi, f.mul(k, *bi));
            }
        }
        let invertible = layout.iter().all(|&(_, off, r, c)| {
            let blk: Mat = (0..r).map(|i| x[off + i * c..off + (i + 1) * c].to_vec()).collect();
            r == c && f.rank(&blk) == r
        });
        if invertible {
            count += 1;
        }
    }
    count
}

/// Graded subspaces of `rep` with the given dimensions, one basis per vertex.
fn graded_subspaces(rep: &FiniteFieldRep, sub_dims: &DimVector) -> Vec<BTreeMap<i64, Mat>> {
    let mut out = vec![BTreeMap::new()];
    for v in rep.vertices() {
        let t = rep.dims.get(v) as usize;
        let k = sub_dims.get(v) as usize;
        let choices = subspaces(&rep.field, t, k);
        let mut next = Vec::new();
        for partial in &out {
            for s in &choices {
                let mut p: BTreeMap<i64, Mat> = partial.clone();
                p.insert(v, s.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Image of the rows of `basis` (vectors in `V_v`) under the arrow out of `v`.
fn push_rows(rep: &FiniteFieldRep, v: i64, basis: &Mat, l: i64) -> Mat {
    let path = rep.path_map(v, l);
    let f = &rep.field;
    basis
        .iter()
        .map(|row| {
            (0..path.len())
                .map(|r| (0..row.len()).fold(0, |acc, k| f.add(acc, f.mul(path[r][k], row[k]))))
                .collect()
        })
        .collect()
}

fn stacked_rank(f: &Gf, a: &Mat, b: &Mat) -> usize {
    let mut m = a.clone();
    m.extend(b.iter().cloned());
    if m.first().is_some_and(|r| r.is_empty()) {
        return 0;
    }
    f.rank(&m)
}

/// Submodules `U ⊆ M(p)` with `M(p)/U ≅ S_α`, counted over `F_q` by iso type of `U`.
pub fn sub_oracle_top(p: &Multisegment, alpha: &DimVector, q: u32) -> BTreeMap<Multisegment, u64> {
    let rep = build_rep(p, q).unwrap();
    let kind = p.kind();
    let Some(sub_dims) = rep.dims.checked_sub(alpha) else { return BTreeMap::new() };
    let mut out = BTreeMap::new();
    for u in graded_subspaces(&rep, &sub_dims) {
        let empty = Mat::new();
        let get = |v: i64| u.get(&kind.reduce(v)).unwrap_or(&empty);
        let ok = rep.vertices().into_iter().all(|v| {
            let dim_next = rep.dims.get(kind.reduce(v + 1)) as usize;
            if dim_next == 0 {
                return true;
            }
            // Every arrow lands in U: the quotient is semisimple (and U is a submodule).
            let identity: Mat = (0..rep.dims.get(v) as usize)
                .map(|r| (0..rep.dims.get(v) as usize).map(|c| u32::from(r == c)).collect())
                .collect();
            let img = push_rows(&rep, v, &identity, 1);
            stacked_rank(&rep.field, get(v + 1), &img) == get(v + 1).len()
        });
        if !ok {
            continue;
        }
        let iso = ranks_to_iso(kind, &rep, |v, l| {
            let img = push_rows(&rep, v, get(v), l);
            if img.is_empty() || img[0].is_empty() {
                0
            } else {
                rep.field.rank(&img) as i64
            }
        });
        *out.entry(iso).or_insert(0) += 1;
    }
    out
}

/// Submodules `U ≅ S_α` of `M(p)`, counted over `F_q` by iso type of `M(p)/U`.
pub fn sub_oracle_socle(p: &Multisegment, alpha: &DimVector, q: u32) -> BTreeMap<Multisegment, u64> {
    let rep = build_rep(p, q).unwrap();
    let kind = p.kind();
    let mut out = BTreeMap::new();
    if rep.dims.checked_sub(alpha).is_none() {
        return out;
    }
    for u in graded_subspaces(&rep, alpha) {
        let empty = Mat::new();
        let get = |v: i64| u.get(&kind.reduce(v)).unwrap_or(&empty);
        // Arrows kill U.
        let killed = rep.vertices().into_iter().all(|v| {
            push_rows(&rep, v, get(v), 1).iter().all(|r| r.iter().all(|&x| x == 0))
        });
        if !killed {
            continue;
        }
        let iso = ranks_to_iso(kind, &rep, |v, l| {
            let j = v + l;
            let d = rep.dims.get(kind.reduce(v)) as usize;
            let identity: Mat = (0..d).map(|r| (0..d).map(|c| u32::from(r == c)).collect()).collect();
            let img = push_rows(&rep, v, &identity, l);
            let uj = get(j);
            let with = if img.is_empty() { uj.len() } else { stacked_rank(&rep.field, uj, &img) };
            (with - uj.len()) as i64
        });
        *out.entry(iso).or_insert(0) += 1;
    }
    out
}

/// Multisegment from the ranks of path maps; the rank classification itself is
/// checked separately by the round-trip and orbit tests.
fn ranks_to_iso(kind: QuiverKind, rep: &FiniteFieldRep, rank: impl Fn(i64, i64) -> i64) -> Multisegment {
    let verts = rep.vertices();
    let total = rep.dims.total();
    let mut m = Multisegment::zero(kind);
    let r = |i: i64, l: i64| -> i64 {
        if kind == QuiverKind::InfiniteLine && !verts.contains(&i) {
            return 0;
        }
        rank(kind.reduce(i), l)
    };
    for &i in &verts {
        for l in 1..=total {
            let k = (r(i, l - 1) - r(i, l)) - (r(i - 1, l) - r(i - 1, l + 1));
            assert!(k >= 0);
            m.add(fockhall_core::quiver::Segment::new(i, l), k as u32);
        }
    }
    m
}

/// Every submodule `U ⊆ M(p)` over `F_q`, counted by `(M(p)/U, U)` iso types:
/// the Hall numbers `F^p_{m, m'}` for all `m, m'` at once.
pub fn filtration_oracle(p: &Multisegment, q: u32) -> BTreeMap<(Multisegment, Multisegment), u64> {
    let rep = build_rep(p, q).unwrap();
    let kind = p.kind();
    let verts = rep.vertices();
    let mut dims_list = vec![DimVector::zero()];
    for &v in &verts {
        let mut next = Vec::new();
        for d in &dims_list {
            for k in 0..=rep.dims.get(v) {
                let mut e = d.clone();
                e.add_at(v, k);
                next.push(e);
            }
        }
        dims_list = next;
    }
    let mut out = BTreeMap::new();
    for sub_dims in dims_list {
        for u in graded_subspaces(&rep, &sub_dims) {
            let empty = Mat::new();
            let get = |v: i64| u.get(&kind.reduce(v)).unwrap_or(&empty);
            let stable = verts.iter().all(|&v| {
                let img = push_rows(&rep, v, get(v), 1);
                if img.is_empty() || img[0].is_empty() {
                    return true;
                }
                stacked_rank(&rep.field, get(v + 1), &img) == get(v + 1).len()
            });
            if !stable {
                continue;
            }
            let sub = ranks_to_iso(kind, &rep, |v, l| {
                let img = push_rows(&rep, v, get(v), l);
                if img.is_empty() || img[0].is_empty() {
                    0
                } else {
                    rep.field.rank(&img) as i64
                }
            });
            let quot = ranks_to_iso(kind, &rep, |v, l| {
                let d = rep.dims.get(kind.reduce(v)) as usize;
                let identity: Mat = (0..d).map(|r| (0..d).map(|c| u32::from(r == c)).collect()).collect();
                let img = push_rows(&rep, v, &identity, l);
                let uj = get(v + l);
                let with = if img.is_empty() || img[0].is_empty() { uj.len() } else { stacked_rank(&rep.field, uj, &img) };
                (with - uj.len()) as i64
            });
            *out.entry((quot, sub)).or_insert(0) += 1;
        }
    }
    out
}
