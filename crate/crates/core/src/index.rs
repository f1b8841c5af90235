//! Multi-indices and the tail sums used by the stick-breaking constructions.

use std::fmt;
use std::ops::{Deref, Index};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Exact;

/// A vector of non-negative integers, ordered lexicographically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> MultiIndex {
        MultiIndex(entries)
    }

    pub fn zeros(dim: usize) -> MultiIndex {
        MultiIndex(vec![0; dim])
    }

    pub fn unit(dim: usize, i: usize) -> MultiIndex {
        let mut v = vec![0; dim];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    /// |n|, the sum of the entries.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Tail sum N_j = n_{j+1} + ... with `j` counted from 1; `tail(0)` is |n|.
    pub fn tail(&self, j: usize) -> u32 {
        self.0.iter().skip(j).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        assert_eq!(self.dim(), other.dim(), "multi-index dimension mismatch");
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Pads with zeros (or truncates trailing zeros) to the requested dimension.
    pub fn resized(&self, dim: usize) -> Result<MultiIndex> {
        if dim >= self.dim() {
            let mut v = self.0.clone();
            v.resize(dim, 0);
            Ok(MultiIndex(v))
        } else if self.0[dim..].iter().all(|&e| e == 0) {
            Ok(MultiIndex(self.0[..dim].to_vec()))
        } else {
            Err(Error::DimensionMismatch { expected: dim, found: self.dim() })
        }
    }

    /// Appends one entry.
    pub fn with_last(&self, last: u32) -> MultiIndex {
        let mut v = self.0.clone();
        v.push(last);
        MultiIndex(v)
    }

    /// All indices of dimension `dim` with total exactly `total`, lexicographic order.
    pub fn with_total(dim: usize, total: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        if dim == 0 {
            if total == 0 {
                out.push(MultiIndex(Vec::new()));
            }
            return out;
        }
        let mut cur = vec![0u32; dim];
        fill_total(&mut cur, 0, total, &mut out);
        out
    }

    /// All indices of dimension `dim` with total at most `max_total`, lexicographic order.
    pub fn up_to_total(dim: usize, max_total: u32) -> Vec<MultiIndex> {
        let mut out: Vec<MultiIndex> = (0..=max_total).flat_map(|t| MultiIndex::with_total(dim, t)).collect();
        out.sort();
        out
    }

    /// All indices in the box `0 <= n_i <= bounds[i]`, lexicographic order.
    pub fn in_box(bounds: &[u32]) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex(Vec::with_capacity(bounds.len()))];
        for &b in bounds {
            out = out
                .into_iter()
                .flat_map(|m| (0..=b).map(move |k| m.with_last(k)))
                .collect();
        }
        out
    }
}

fn fill_total(cur: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<MultiIndex>) {
    if pos + 1 == cur.len() {
        cur[pos] = remaining;
        out.push(MultiIndex(cur.clone()));
        return;
    }
    for k in 0..=remaining {
        cur[pos] = k;
        fill_total(cur, pos + 1, remaining - k, out);
    }
}

impl Deref for MultiIndex {
    type Target = [u32];
    fn deref(&self) -> &[u32] {
        &self.0
    }
}

impl Index<usize> for MultiIndex {
    type Output = u32;
    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> MultiIndex {
        MultiIndex(v)
    }
}

impl From<&[u32]> for MultiIndex {
    fn from(v: &[u32]) -> MultiIndex {
        MultiIndex(v.to_vec())
    }
}

impl<const N: usize> From<[u32; N]> for MultiIndex {
    fn from(v: [u32; N]) -> MultiIndex {
        MultiIndex(v.to_vec())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `1,0,2` into a multi-index.
pub fn parse_index(s: &str) -> Result<MultiIndex> {
    if s.trim().is_empty() {
        return Ok(MultiIndex::new(Vec::new()));
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("expected a non-negative integer, got {t:?}")))
        })
        .collect::<Result<Vec<_>>>()
        .map(MultiIndex::new)
}

/// Parameter tail sums A_j = α_{j+1} + ... + α_d, for j = 0..d.
pub fn tail_sums(alpha: &[Exact]) -> Vec<Exact> {
    let d = alpha.len();
    let mut out = vec![Exact::zero(); d + 1];
    for j in (0..d).rev() {
        out[j] = &out[j + 1] + &alpha[j];
    }
    out
}
