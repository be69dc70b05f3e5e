//! Dimension vectors and small lattice utilities.

use std::fmt;
use std::ops::{Add, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// A vector in `Z^I`, indexed by the position of the vertex in its quiver.
///
/// Dimension vectors proper are effective (all entries non-negative); a few
/// operations (conjugation by `f^δ`, `A^{(γ)}`) accept arbitrary integer vectors,
/// which is why the entries are signed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimVector(pub Vec<i64>);

impl DimVector {
    pub fn new(entries: Vec<i64>) -> Self {
        DimVector(entries)
    }

    pub fn zero(rank: usize) -> Self {
        DimVector(vec![0; rank])
    }

    /// Standard basis vector `e_i`.
    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        DimVector(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    /// `|γ| = Σ_i γ^i`.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_effective(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        DimVector(self.0.iter().map(|x| x * k).collect())
    }

    pub fn dot(&self, other: &DimVector) -> i64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// gcd of the entries (0 for the zero vector).
    pub fn content(&self) -> i64 {
        self.0.iter().fold(0i64, |g, &x| g.gcd(&x))
    }

    /// The primitive vector on the same ray, or `None` for the zero vector.
    pub fn primitive(&self) -> Option<DimVector> {
        let g = self.content();
        if g == 0 {
            return None;
        }
        Some(DimVector(self.0.iter().map(|x| x / g).collect()))
    }

    /// If `self = k·base` for a positive integer `k`, returns `k`.
    pub fn multiple_of(&self, base: &DimVector) -> Option<i64> {
        let mut k = None;
        for (&a, &b) in self.0.iter().zip(&base.0) {
            if b == 0 {
                if a != 0 {
                    return None;
                }
                continue;
            }
            if a % b != 0 {
                return None;
            }
            let q = a / b;
            match k {
                None => k = Some(q),
                Some(prev) if prev != q => return None,
                _ => {}
            }
        }
        k.filter(|&q| q > 0)
    }
}

impl fmt::Debug for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<i64>> for DimVector {
    fn from(v: Vec<i64>) -> Self {
        DimVector(v)
    }
}

impl Add for &DimVector {
    type Output = DimVector;
    fn add(self, rhs: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DimVector {
    type Output = DimVector;
    fn sub(self, rhs: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

/// All effective vectors of the given rank with `|γ| <= max_total`, ordered by
/// total degree and then lexicographically.
pub fn effective_vectors(rank: usize, max_total: u32) -> Vec<DimVector> {
    let mut out = Vec::new();
    for t in 0..=max_total as i64 {
        compositions(rank, t, &mut Vec::with_capacity(rank), &mut out);
    }
    out
}

/// Effective vectors with `|γ| = total` exactly.
pub fn vectors_of_total(rank: usize, total: u32) -> Vec<DimVector> {
    let mut out = Vec::new();
    compositions(rank, total as i64, &mut Vec::with_capacity(rank), &mut out);
    out
}

fn compositions(rank: usize, remaining: i64, prefix: &mut Vec<i64>, out: &mut Vec<DimVector>) {
    if rank == 0 {
        if remaining == 0 {
            out.push(DimVector(Vec::new()));
        }
        return;
    }
    if prefix.len() + 1 == rank {
        prefix.push(remaining);
        out.push(DimVector(prefix.clone()));
        prefix.pop();
        return;
    }
    for x in (0..=remaining).rev() {
        prefix.push(x);
        compositions(rank, remaining - x, prefix, out);
        prefix.pop();
    }
}

/// Primitive effective vectors with `|γ| <= max_total`.
pub fn primitive_vectors(rank: usize, max_total: u32) -> Vec<DimVector> {
    effective_vectors(rank, max_total)
        .into_iter()
        .filter(|v| v.content() == 1)
        .collect()
}

/// Effective vectors `β <= γ` componentwise (including 0 and γ).
pub fn sub_vectors(gamma: &DimVector) -> Vec<DimVector> {
    let mut out = vec![Vec::new()];
    for &g in &gamma.0 {
        let mut next = Vec::with_capacity(out.len() * (g as usize + 1));
        for prefix in &out {
            for x in 0..=g {
                let mut p: Vec<i64> = prefix.clone();
                p.push(x);
                next.push(p);
            }
        }
        out = next;
    }
    out.into_iter().map(DimVector).collect()
}
