use std::collections::BTreeMap;

use super::{DimVector, Multisegment, QuiverError, QuiverKind, Segment};

/// The finite field with `q = p^k` elements (`k ≤ 3`), by lookup tables.
/// Elements are `0..q`, read as base-`p` digit vectors of polynomials in `x`.
#[derive(Debug, Clone)]
pub struct Gf {
    q: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

fn smallest_prime_factor(q: u32) -> u32 {
    (2..=q).find(|d| q % d == 0).unwrap_or(q)
}

impl Gf {
    pub fn new(q: u32) -> Result<Self, QuiverError> {
        if q < 2 {
            return Err(QuiverError::Parse(format!("{q} is not a prime power")));
        }
        let p = smallest_prime_factor(q);
        let mut k = 0;
        let mut r = q;
        while r % p == 0 {
            r /= p;
            k += 1;
        }
        if r != 1 || k > 3 {
            return Err(QuiverError::Parse(format!("{q} is not a supported prime power")));
        }
        let digits = |a: u32| -> Vec<u32> { (0..k).map(|j| a / p.pow(j) % p).collect() };
        let value = |d: &[u32]| -> u32 { d.iter().enumerate().map(|(j, c)| c * p.pow(j as u32)).sum() };
        // A monic polynomial of degree k ≤ 3 without roots is irreducible.
        let modulus: Vec<u32> = (0..p.pow(k))
            .map(|low| {
                let mut f = digits(low);
                f.push(1);
                f
            })
            .find(|f| {
                k == 1
                    || (0..p).all(|x| f.iter().rev().fold(0, |acc, c| (acc * x + c) % p) != 0)
            })
            .expect("irreducible polynomials exist");
        let qs = q as usize;
        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = value(&sum);
                let mut prod = vec![0u32; 2 * k as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for deg in (k as usize..prod.len()).rev() {
                    let c = prod[deg];
                    if c != 0 {
                        for (j, m) in modulus.iter().enumerate() {
                            let idx = deg - k as usize + j;
                            prod[idx] = (prod[idx] + (p - c) * m) % p;
                        }
                    }
                }
                mul[(a * q + b) as usize] = value(&prod[..k as usize]);
            }
        }
        let inv = (0..q)
            .map(|a| if a == 0 { 0 } else { (1..q).find(|&b| mul[(a * q + b) as usize] == 1).unwrap() })
            .collect();
        Ok(Self { q, add, mul, inv })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    pub fn neg(&self, a: u32) -> u32 {
        (0..self.q).find(|&b| self.add(a, b) == 0).unwrap()
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no inverse");
        self.inv[a as usize]
    }

    /// `rows × cols` matrix product.
    pub fn matmul(&self, a: &[Vec<u32>], b: &[Vec<u32>], inner: usize, cols: usize) -> Vec<Vec<u32>> {
        a.iter()
            .map(|row| {
                (0..cols)
                    .map(|j| (0..inner).fold(0, |acc, k| self.add(acc, self.mul(row[k], b[k][j]))))
                    .collect()
            })
            .collect()
    }

    pub fn rank(&self, m: &[Vec<u32>]) -> usize {
        let mut m: Vec<Vec<u32>> = m.to_vec();
        let cols = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(pivot) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
            m.swap(rank, pivot);
            let inv = self.inv(m[rank][c]);
            for x in m[rank].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for r in 0..m.len() {
                if r != rank && m[r][c] != 0 {
                    let f = m[r][c];
                    for j in 0..cols {
                        let t = self.mul(f, m[rank][j]);
                        m[r][j] = self.sub(m[r][j], t);
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

/// A representation over `F_q`: vector-space dimensions and one matrix per arrow
/// `i → i+1`, of shape `dims(i+1) × dims(i)`.
#[derive(Debug, Clone)]
pub struct FiniteFieldRep {
    pub kind: QuiverKind,
    pub field: Gf,
    pub dims: DimVector,
    pub maps: BTreeMap<i64, Vec<Vec<u32>>>,
}

impl FiniteFieldRep {
    pub fn new(kind: QuiverKind, field: Gf, dims: DimVector, maps: BTreeMap<i64, Vec<Vec<u32>>>) -> Result<Self, QuiverError> {
        for (&i, m) in &maps {
            let (rows, cols) = (dims.get(kind.reduce(i + 1)) as usize, dims.get(i) as usize);
            if m.len() != rows || m.iter().any(|r| r.len() != cols) {
                return Err(QuiverError::Dimensions(format!("arrow out of vertex {i}")));
            }
        }
        let rep = Self { kind, field, dims, maps };
        if rep.dims.total() > 0 && rep.path_rank(rep.vertices()[0], rep.dims.total() + 1) != 0 {
            return Err(QuiverError::Dimensions("representation is not nilpotent".into()));
        }
        Ok(rep)
    }

    pub fn vertices(&self) -> Vec<i64> {
        match self.kind {
            QuiverKind::Cyclic(n) => (0..n).collect(),
            QuiverKind::InfiniteLine => match self.dims.support() {
                Some((lo, hi)) => (lo..=hi).collect(),
                None => vec![0],
            },
        }
    }

    /// Matrix of the arrow out of `i` (zero if absent).
    pub fn arrow(&self, i: i64) -> Vec<Vec<u32>> {
        let i = self.kind.reduce(i);
        let (rows, cols) = (self.dims.get(self.kind.reduce(i + 1)) as usize, self.dims.get(i) as usize);
        self.maps.get(&i).cloned().unwrap_or_else(|| vec![vec![0; cols]; rows])
    }

    /// The composite `V_i → V_{i+l}`.
    pub fn path_map(&self, i: i64, l: i64) -> Vec<Vec<u32>> {
        let d = self.dims.get(self.kind.reduce(i)) as usize;
        let mut acc: Vec<Vec<u32>> = (0..d).map(|r| (0..d).map(|c| u32::from(r == c)).collect()).collect();
        for step in 0..l {
            let v = self.kind.reduce(i + step);
            acc = self.field.matmul(&self.arrow(v), &acc, self.dims.get(v) as usize, d);
        }
        acc
    }

    pub fn path_rank(&self, i: i64, l: i64) -> usize {
        self.field.rank(&self.path_map(i, l))
    }
}

/// Block matrices realising `⊕ m_{i,l} S_i[l]` over `F_q`.
pub fn build_rep(m: &Multisegment, q: u32) -> Result<FiniteFieldRep, QuiverError> {
    let kind = m.kind();
    let field = Gf::new(q)?;
    let dims = m.dim_vector();
    // Coordinate index of (segment copy, offset) within its vertex.
    let mut next: BTreeMap<i64, usize> = BTreeMap::new();
    let mut coords: Vec<Vec<usize>> = Vec::new();
    for seg in m.expanded() {
        let idx = (0..seg.len)
            .map(|c| {
                let slot = next.entry(kind.reduce(seg.start + c)).or_insert(0);
                *slot += 1;
                *slot - 1
            })
            .collect();
        coords.push(idx);
    }
    let mut maps: BTreeMap<i64, Vec<Vec<u32>>> = BTreeMap::new();
    for (seg, idx) in m.expanded().iter().zip(&coords) {
        for c in 0..seg.len - 1 {
            let from = kind.reduce(seg.start + c);
            let to = kind.reduce(from + 1);
            let mat = maps
                .entry(from)
                .or_insert_with(|| vec![vec![0; dims.get(from) as usize]; dims.get(to) as usize]);
            mat[idx[c as usize + 1]][idx[c as usize]] = 1;
        }
    }
    FiniteFieldRep::new(kind, field, dims, maps)
}

/// Recovers `m_{i,L}` from ranks of path maps:
/// `m_{i,L} = (r_{i,L−1} − r_{i,L}) − (r_{i−1,L} − r_{i−1,L+1})`.
pub(crate) fn iso_from_ranks(
    kind: QuiverKind,
    vertices: &[i64],
    lmax: i64,
    rank: impl Fn(i64, i64) -> i64,
) -> Multisegment {
    let mut m = Multisegment::zero(kind);
    for &i in vertices {
        for l in 1..=lmax {
            let k = (rank(i, l - 1) - rank(i, l)) - (rank(i - 1, l) - rank(i - 1, l + 1));
            assert!(k >= 0, "rank data is not that of a nilpotent representation");
            m.add(Segment::new(i, l), k as u32);
        }
    }
    m
}

/// Isomorphism type from the ranks of all path maps.
pub fn iso_type(rep: &FiniteFieldRep) -> Multisegment {
    let kind = rep.kind;
    let total = rep.dims.total();
    let vertices = rep.vertices();
    let (lo, hi) = (vertices[0], *vertices.last().unwrap());
    let mut ranks: BTreeMap<(i64, i64), i64> = BTreeMap::new();
    for &i in &vertices {
        for l in 0..=total + 1 {
            ranks.insert((i, l), rep.path_rank(i, l) as i64);
        }
    }
    iso_from_ranks(kind, &vertices, total, |i, l| {
        let i = match kind {
            QuiverKind::Cyclic(n) => i.rem_euclid(n),
            QuiverKind::InfiniteLine if i < lo || i > hi => return 0,
            QuiverKind::InfiniteLine => i,
        };
        ranks.get(&(i, l)).copied().unwrap_or(0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = Gf::new(q).unwrap();
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in 0..q {
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
            }
        }
        assert!(Gf::new(6).is_err());
    }

    #[test]
    fn round_trip_segment() {
        let kind = QuiverKind::Cyclic(2);
        let m = Multisegment::segment(kind, 0, 2);
        assert_eq!(iso_type(&build_rep(&m, 2).unwrap()), m);
    }

    #[test]
    fn zero_maps_are_semisimple() {
        let kind = QuiverKind::Cyclic(3);
        let d = DimVector::from_pairs([(0, 2), (2, 1)]);
        let rep = FiniteFieldRep::new(kind, Gf::new(3).unwrap(), d.clone(), BTreeMap::new()).unwrap();
        assert_eq!(iso_type(&rep), Multisegment::semisimple(kind, &d));
    }
}
