//! Finite quivers, Euler and skew forms, and mutation of the underlying quiver.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::lattice::DimVector;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub tail: String,
    pub head: String,
}

impl Arrow {
    pub fn new(name: impl Into<String>, tail: impl Into<String>, head: impl Into<String>) -> Self {
        Arrow {
            name: name.into(),
            tail: tail.into(),
            head: head.into(),
        }
    }
}

/// A finite quiver. `a[i][j]` counts arrows `i -> j`, where indices are positions
/// in `vertices`. A representation places a linear map `E_i -> E_j` on each arrow.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    ends: Vec<(usize, usize)>,
    a: Vec<Vec<u32>>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        let n = vertices.len();
        let mut a = vec![vec![0u32; n]; n];
        let mut names = BTreeSet::new();
        let mut ends = Vec::with_capacity(arrows.len());
        for arrow in &arrows {
            if !names.insert(arrow.name.as_str()) {
                return Err(Error::DuplicateArrow(arrow.name.clone()));
            }
            let t = position(&vertices, &arrow.tail)?;
            let h = position(&vertices, &arrow.head)?;
            a[t][h] += 1;
            ends.push((t, h));
        }
        Ok(Quiver {
            vertices,
            arrows,
            ends,
            a,
        })
    }

    /// Builds a quiver on vertices `"1".."n"` from an arrow-count matrix. Arrows are
    /// named `a{i}{j}` (with a `_k` suffix when there are several).
    pub fn from_matrix(a: &[Vec<u32>]) -> Result<Self> {
        let n = a.len();
        let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let mut arrows = Vec::new();
        for (i, row) in a.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for (j, &count) in row.iter().enumerate() {
                for k in 0..count {
                    let base = if n == 1 {
                        format!("l{}", k + 1)
                    } else if count == 1 {
                        format!("a{}{}", i + 1, j + 1)
                    } else {
                        format!("a{}{}_{}", i + 1, j + 1, k + 1)
                    };
                    arrows.push(Arrow::new(base, &vertices[i], &vertices[j]));
                }
            }
        }
        Quiver::new(vertices, arrows)
    }

    /// `Q_d`: one vertex with `d` loops.
    pub fn loops(d: u32) -> Self {
        Quiver::from_matrix(&[vec![d]]).expect("valid")
    }

    /// `A_n` with arrows `k+1 -> k`, so `A_2` has the single arrow `2 -> 1`.
    pub fn a_n(n: usize) -> Self {
        let mut a = vec![vec![0u32; n]; n];
        for k in 1..n {
            a[k][k - 1] = 1;
        }
        Quiver::from_matrix(&a).expect("valid")
    }

    /// The oriented 3-cycle `1 -> 2 -> 3 -> 1`.
    pub fn triangle() -> Self {
        Quiver::from_matrix(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]).expect("valid")
    }

    pub fn rank(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn matrix(&self) -> &[Vec<u32>] {
        &self.a
    }

    pub fn count(&self, i: usize, j: usize) -> u32 {
        self.a[i][j]
    }

    pub fn vertex_index(&self, label: &str) -> Result<usize> {
        position(&self.vertices, label)
    }

    pub fn arrow(&self, name: &str) -> Option<(&Arrow, usize, usize)> {
        self.arrows
            .iter()
            .zip(&self.ends)
            .find(|(a, _)| a.name == name)
            .map(|(a, &(t, h))| (a, t, h))
    }

    pub fn check_dim(&self, g: &DimVector) -> Result<()> {
        if g.rank() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: g.rank(),
            });
        }
        Ok(())
    }

    /// χ(γ1,γ2) = Σ_i γ1^i γ2^i − Σ_{i,j} a_ij γ1^i γ2^j, without length checks.
    pub fn chi(&self, g1: &DimVector, g2: &DimVector) -> i64 {
        let n = self.rank();
        let mut s = 0i64;
        for i in 0..n {
            let x = g1.0[i];
            if x == 0 {
                continue;
            }
            s += x * g2.0[i];
            for j in 0..n {
                s -= self.a[i][j] as i64 * x * g2.0[j];
            }
        }
        s
    }

    pub fn euler_form(&self, g1: &DimVector, g2: &DimVector) -> Result<i64> {
        self.check_dim(g1)?;
        self.check_dim(g2)?;
        Ok(self.chi(g1, g2))
    }

    /// ⟨γ1,γ2⟩ = χ(γ1,γ2) − χ(γ2,γ1), without length checks.
    pub fn skew(&self, g1: &DimVector, g2: &DimVector) -> i64 {
        self.chi(g1, g2) - self.chi(g2, g1)
    }

    pub fn skew_form(&self, g1: &DimVector, g2: &DimVector) -> Result<i64> {
        self.check_dim(g1)?;
        self.check_dim(g2)?;
        Ok(self.skew(g1, g2))
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| (0..n).all(|j| self.a[i][j] == self.a[j][i]))
    }

    /// ε(γ) = χ(γ,γ) mod 2, defined for symmetric quivers.
    pub fn epsilon(&self, g: &DimVector) -> Result<u8> {
        if !self.is_symmetric() {
            return Err(Error::NonSymmetricQuiver);
        }
        self.check_dim(g)?;
        Ok(self.chi(g, g).rem_euclid(2) as u8)
    }

    /// A topological order of the vertices (tails before heads), or `None` if the
    /// quiver has an oriented cycle (loops included).
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.rank();
        let mut indeg: Vec<u32> = (0..n).map(|j| (0..n).map(|i| self.a[i][j]).sum()).collect();
        let mut ready: BTreeSet<usize> = (0..n).filter(|&j| indeg[j] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(&i) = ready.iter().next() {
            ready.remove(&i);
            order.push(i);
            for j in 0..n {
                if self.a[i][j] > 0 {
                    indeg[j] -= self.a[i][j];
                    if indeg[j] == 0 {
                        ready.insert(j);
                    }
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    fn require_loop_free(&self, i0: usize) -> Result<()> {
        if self.a[i0][i0] != 0 {
            return Err(Error::LoopAtVertex(self.vertices[i0].clone()));
        }
        Ok(())
    }

    /// Right mutation at `i0`: arrows at `i0` are reversed and renamed `α*`, and each
    /// path `j1 -α-> i0 -β-> j2` contributes a composite arrow `[β∘α]: j1 -> j2`.
    pub fn mutate(&self, i0: &str) -> Result<Quiver> {
        let k = self.vertex_index(i0)?;
        self.require_loop_free(k)?;
        let mut arrows = Vec::with_capacity(self.arrows.len());
        for (arrow, &(t, h)) in self.arrows.iter().zip(&self.ends) {
            if t == k || h == k {
                arrows.push(Arrow::new(
                    star_name(&arrow.name),
                    arrow.head.clone(),
                    arrow.tail.clone(),
                ));
            } else {
                arrows.push(arrow.clone());
            }
        }
        for (alpha, &(ta, ha)) in self.arrows.iter().zip(&self.ends) {
            if ha != k {
                continue;
            }
            for (beta, &(tb, hb)) in self.arrows.iter().zip(&self.ends) {
                if tb != k {
                    continue;
                }
                arrows.push(Arrow::new(
                    composite_name(&beta.name, &alpha.name),
                    self.vertices[ta].clone(),
                    self.vertices[hb].clone(),
                ));
            }
        }
        Quiver::new(self.vertices.clone(), arrows)
    }

    /// The dimension-vector change attached to a mutation at `i0`:
    /// `γ'^{i0} = Σ_j a_{i0 j} γ^j − γ^{i0}`, other entries unchanged.
    pub fn mutated_dim_vector(&self, i0: &str, g: &DimVector) -> Result<DimVector> {
        let k = self.vertex_index(i0)?;
        self.require_loop_free(k)?;
        self.check_dim(g)?;
        let mut out = g.clone();
        let s: i64 = (0..self.rank()).map(|j| self.a[k][j] as i64 * g.0[j]).sum();
        out.0[k] = s - g.0[k];
        if out.0[k] < 0 {
            return Err(Error::NegativeDimension(self.vertices[k].clone()));
        }
        Ok(out)
    }

    /// Arrow counts of the mutated quiver, computed from the matrix rules alone.
    pub fn mutated_matrix(&self, i0: usize) -> Vec<Vec<u32>> {
        let n = self.rank();
        let mut b = vec![vec![0u32; n]; n];
        for j1 in 0..n {
            for j2 in 0..n {
                b[j1][j2] = if j1 == i0 && j2 == i0 {
                    0
                } else if j1 == i0 {
                    self.a[j2][i0]
                } else if j2 == i0 {
                    self.a[i0][j1]
                } else {
                    self.a[j1][j2] + self.a[j1][i0] * self.a[i0][j2]
                };
            }
        }
        b
    }

    /// Index lookup table for arrow names.
    pub fn arrow_index(&self) -> BTreeMap<&str, (usize, usize)> {
        self.arrows
            .iter()
            .zip(&self.ends)
            .map(|(a, &e)| (a.name.as_str(), e))
            .collect()
    }
}

pub fn star_name(name: &str) -> String {
    format!("{name}*")
}

/// Name of the composite `β∘α` (first α, then β).
pub fn composite_name(beta: &str, alpha: &str) -> String {
    format!("[{beta}∘{alpha}]")
}

fn position(vertices: &[String], label: &str) -> Result<usize> {
    vertices
        .iter()
        .position(|v| v == label)
        .ok_or_else(|| Error::UnknownVertex(label.to_string()))
}
