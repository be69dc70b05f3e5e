//! Central charges with exact rational values and the induced slope order.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{primitive_vectors, DimVector};
use crate::quiver::Quiver;

/// `Z(e_i) = z_i = re_i + i·im_i` with `im_i > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralCharge {
    z: Vec<(BigRational, BigRational)>,
}

impl CentralCharge {
    pub fn new(q: &Quiver, z: Vec<(BigRational, BigRational)>) -> Result<Self> {
        if z.len() != q.rank() {
            return Err(Error::DimensionMismatch {
                expected: q.rank(),
                found: z.len(),
            });
        }
        for (label, (_, im)) in q.vertices().iter().zip(&z) {
            if !im.is_positive() {
                return Err(Error::ChargeNotUpper(label.clone()));
            }
        }
        Ok(CentralCharge { z })
    }

    /// Convenience constructor from integer pairs.
    pub fn from_ints(q: &Quiver, z: &[(i64, i64)]) -> Result<Self> {
        CentralCharge::new(
            q,
            z.iter()
                .map(|&(a, b)| (BigRational::from_integer(a.into()), BigRational::from_integer(b.into())))
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.z.len()
    }

    pub fn values(&self) -> &[(BigRational, BigRational)] {
        &self.z
    }

    /// `Z(γ) = Σ_i γ^i z_i`.
    pub fn eval(&self, g: &DimVector) -> (BigRational, BigRational) {
        let mut re = BigRational::zero();
        let mut im = BigRational::zero();
        for ((a, b), &x) in self.z.iter().zip(&g.0) {
            if x != 0 {
                let x = BigRational::from_integer(x.into());
                re += a * &x;
                im += b * &x;
            }
        }
        (re, im)
    }

    /// Compares `Arg Z(γ1)` with `Arg Z(γ2)` through the sign of a cross product.
    pub fn compare_args(&self, g1: &DimVector, g2: &DimVector) -> Ordering {
        let (x1, y1) = self.eval(g1);
        let (x2, y2) = self.eval(g2);
        // Arg w1 < Arg w2 in the upper half-plane iff x1·y2 − y1·x2 > 0.
        (&y1 * &x2).cmp(&(&x1 * &y2))
    }

    /// True iff `Arg Z(γ1) < Arg Z(γ2)`.
    pub fn slope_less(&self, g1: &DimVector, g2: &DimVector) -> Result<bool> {
        for g in [g1, g2] {
            if g.rank() != self.rank() {
                return Err(Error::DimensionMismatch {
                    expected: self.rank(),
                    found: g.rank(),
                });
            }
            if g.is_zero() || !g.is_effective() {
                return Err(Error::ZeroVector);
            }
        }
        Ok(self.compare_args(g1, g2) == Ordering::Less)
    }

    /// No two non-proportional effective vectors with `|γ| <= n` have the same argument.
    pub fn is_generic(&self, n: u32) -> bool {
        self.collision(n).is_none()
    }

    /// A witness pair of distinct primitive vectors on the same line, if any.
    pub fn collision(&self, n: u32) -> Option<(DimVector, DimVector)> {
        let mut rays = primitive_vectors(self.rank(), n);
        rays.retain(|g| !g.is_zero());
        rays.sort_by(|a, b| self.compare_args(b, a).then_with(|| a.cmp(b)));
        rays.windows(2)
            .find(|w| self.compare_args(&w[0], &w[1]) == Ordering::Equal)
            .map(|w| (w[0].clone(), w[1].clone()))
    }

    /// Primitive effective vectors with `|γ| <= n`, sorted by strictly decreasing argument
    /// (the clockwise order). Fails when two of them are collinear.
    pub fn clockwise_rays(&self, n: u32) -> Result<Vec<DimVector>> {
        if let Some((a, b)) = self.collision(n) {
            return Err(Error::NonGeneric(format!("{a} and {b} have the same argument")));
        }
        let mut rays: Vec<DimVector> = primitive_vectors(self.rank(), n)
            .into_iter()
            .filter(|g| !g.is_zero())
            .collect();
        rays.sort_by(|a, b| self.compare_args(b, a));
        Ok(rays)
    }
}
