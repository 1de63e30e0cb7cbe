use std::fmt;

use serde_json::{json, Value};

use super::{DimVector, Multisegment, QuiverError, QuiverKind};

/// A partition, stored without trailing zeros.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<i64>,
}

impl Partition {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(mut parts: Vec<i64>) -> Result<Self, QuiverError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.iter().any(|&p| p < 1) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(QuiverError::Parse(format!("{parts:?} is not a partition")));
        }
        Ok(Self { parts })
    }

    pub fn from_parts(parts: &[i64]) -> Self {
        Self::new(parts.to_vec()).expect("valid partition")
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    /// `λ_s` (1-based), zero past the end.
    pub fn part(&self, s: usize) -> i64 {
        if s == 0 {
            return i64::MAX;
        }
        self.parts.get(s - 1).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> i64 {
        self.parts.iter().sum()
    }

    /// All partitions of `k`, in reverse lexicographic order.
    pub fn all_of_size(k: i64) -> Vec<Self> {
        fn go(rest: i64, cap: i64, cur: &mut Vec<i64>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=cap.min(rest)).rev() {
                cur.push(p);
                go(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(k, k, &mut Vec::new(), &mut out);
        out
    }

    pub fn all_up_to(k: i64) -> Vec<Self> {
        (0..=k).flat_map(Self::all_of_size).collect()
    }

    /// Colours `column − row` of the boxes, row by row.
    pub fn colours(&self) -> Vec<Vec<i64>> {
        self.parts
            .iter()
            .enumerate()
            .map(|(r, &p)| (1..=p).map(|c| c - (r as i64 + 1)).collect())
            .collect()
    }

    /// Colour of the addable box in row `r` (1-based), if there is one.
    fn addable_in_row(&self, r: usize) -> Option<i64> {
        (self.part(r - 1) > self.part(r)).then(|| self.part(r) + 1 - r as i64)
    }

    pub fn addable_colours(&self) -> Vec<i64> {
        (1..=self.len() + 1).filter_map(|r| self.addable_in_row(r)).collect()
    }

    pub fn removable_colours(&self) -> Vec<i64> {
        (1..=self.len())
            .filter(|&r| self.part(r) > self.part(r + 1))
            .map(|r| self.part(r) - r as i64)
            .collect()
    }

    /// Adds the box of colour `i`, if addable.
    pub fn add_box(&self, i: i64) -> Option<Self> {
        let r = (1..=self.len() + 1).find(|&r| self.addable_in_row(r) == Some(i))?;
        let mut parts = self.parts.clone();
        if r > parts.len() {
            parts.push(1);
        } else {
            parts[r - 1] += 1;
        }
        Some(Self { parts })
    }

    /// Removes the box of colour `i`, if removable.
    pub fn remove_box(&self, i: i64) -> Option<Self> {
        let r = (1..=self.len()).find(|&r| self.part(r) > self.part(r + 1) && self.part(r) - r as i64 == i)?;
        let mut parts = self.parts.clone();
        parts[r - 1] -= 1;
        if parts[r - 1] == 0 {
            parts.pop();
        }
        Some(Self { parts })
    }

    /// Box counts by integer colour.
    pub fn colour_content(&self) -> DimVector {
        DimVector::from_pairs(self.colours().into_iter().flatten().map(|c| (c, 1)))
    }

    /// Box counts by residue mod `n`.
    pub fn residue_content(&self, n: i64) -> DimVector {
        self.colour_content().reduce(QuiverKind::Cyclic(n))
    }

    pub fn to_json(&self) -> Value {
        json!(self.parts)
    }

    pub fn from_json(value: &Value) -> Result<Self, QuiverError> {
        let parts = value
            .as_array()
            .ok_or_else(|| QuiverError::Parse("partition must be a list".into()))?
            .iter()
            .map(|p| p.as_i64().ok_or_else(|| QuiverError::Parse("parts must be integers".into())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(parts)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `Σ_s [1 − s, λ_s]`.
pub fn m_of_partition(lam: &Partition, kind: QuiverKind) -> Multisegment {
    Multisegment::from_segments(
        kind,
        lam.parts().iter().enumerate().map(|(s, &p)| (-(s as i64), p, 1)),
    )
}

/// No part is repeated `n` times.
pub fn is_n_regular(lam: &Partition, n: i64) -> bool {
    let p = lam.parts();
    let n = n as usize;
    p.len() < n || p.windows(n).all(|w| w[0] > w[n - 1])
}
