//! Truncated series in the motivic quantum torus of a quiver and their Harder–Narasimhan
//! factorization into ray factors.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::charge::CentralCharge;
use crate::error::{Error, Result};
use crate::lattice::{effective_vectors, DimVector};
use crate::qcoeff::QRational;
use crate::quiver::Quiver;
use crate::series::le;

/// Coordinates of a torus series: `e_γ` with `e_a e_b = q^{−χ(a,b)} e_{a+b}`, or the
/// rescaled `ê_γ = (−v)^{−χ(γ,γ)} e_γ` with `ê_a ê_b = (−v)^{−⟨a,b⟩} ê_{a+b}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    E,
    EHat,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::E => "E",
            Basis::EHat => "EHAT",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "E" => Ok(Basis::E),
            "EHAT" => Ok(Basis::EHat),
            other => Err(Error::Parse(format!("unknown basis `{other}`"))),
        }
    }
}

/// A primitive effective vector spanning a ray of the central charge.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ray {
    primitive: DimVector,
}

impl Ray {
    pub fn new(primitive: DimVector) -> Result<Self> {
        if !primitive.is_effective() || primitive.is_zero() {
            return Err(Error::Precondition(format!("{primitive} does not span a ray")));
        }
        if primitive.content() != 1 {
            return Err(Error::Precondition(format!("{primitive} is not primitive")));
        }
        Ok(Ray { primitive })
    }

    pub fn primitive(&self) -> &DimVector {
        &self.primitive
    }
}

/// `Σ_γ a_γ x_γ` with `|γ| <= truncation`, where `x_γ` is `e_γ` or `ê_γ`.
#[derive(Clone)]
pub struct TorusSeries {
    quiver: Arc<Quiver>,
    basis: Basis,
    truncation: u32,
    coeffs: BTreeMap<DimVector, QRational>,
}

impl PartialEq for TorusSeries {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
            && self.truncation == other.truncation
            && (Arc::ptr_eq(&self.quiver, &other.quiver)
                || self.quiver.matrix() == other.quiver.matrix())
            && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for TorusSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TorusSeries[{} mod {}]{{", self.basis.name(), self.truncation)?;
        for (i, (g, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}: {c}")?;
        }
        write!(f, "}}")
    }
}

impl TorusSeries {
    pub fn zero(quiver: Arc<Quiver>, basis: Basis, truncation: u32) -> Self {
        TorusSeries {
            quiver,
            basis,
            truncation,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(quiver: Arc<Quiver>, basis: Basis, truncation: u32) -> Self {
        let rank = quiver.rank();
        let mut s = TorusSeries::zero(quiver, basis, truncation);
        s.coeffs.insert(DimVector::zero(rank), QRational::one());
        s
    }

    /// Builds a series from coefficients; keys must be effective vectors of the right
    /// length, and those beyond the truncation are dropped.
    pub fn from_coeffs(
        quiver: Arc<Quiver>,
        basis: Basis,
        truncation: u32,
        coeffs: impl IntoIterator<Item = (DimVector, QRational)>,
    ) -> Result<Self> {
        let mut s = TorusSeries::zero(quiver, basis, truncation);
        for (g, c) in coeffs {
            s.quiver.check_dim(&g)?;
            if !g.is_effective() {
                return Err(Error::NegativeDimension(format!("{g}")));
            }
            s.add_at(g, &c);
        }
        Ok(s)
    }

    /// `(v·ê_γ; q)_∞ = Σ_n (−v)^{n²} ê_{nγ} / (q;q)_n`, the quantum dilogarithm of a ray.
    pub fn quantum_dilog(quiver: Arc<Quiver>, gamma: &DimVector, truncation: u32) -> Result<Self> {
        quiver.check_dim(gamma)?;
        if gamma.is_zero() || !gamma.is_effective() {
            return Err(Error::Precondition(format!("{gamma} is not a nonzero effective vector")));
        }
        let step = gamma.total() as u32;
        let terms: Vec<(DimVector, QRational)> = (0..=truncation / step)
            .map(|n| {
                let c = QRational::inv_q_factorial(n).mul_minus_v_pow((n * n) as i64);
                (gamma.scale(n as i64), c)
            })
            .collect();
        TorusSeries::from_coeffs(quiver, Basis::EHat, truncation, terms)
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn rank(&self) -> usize {
        self.quiver.rank()
    }

    /// Nonzero coefficients, ordered by dimension vector.
    pub fn coeffs(&self) -> &BTreeMap<DimVector, QRational> {
        &self.coeffs
    }

    pub fn coeff(&self, g: &DimVector) -> QRational {
        self.coeffs.get(g).cloned().unwrap_or_default()
    }

    pub fn constant(&self) -> QRational {
        self.coeff(&DimVector::zero(self.rank()))
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.constant().is_one()
    }

    fn add_at(&mut self, g: DimVector, c: &QRational) {
        if c.is_zero() || g.total() > self.truncation as i64 {
            return;
        }
        let entry = self.coeffs.entry(g);
        match entry {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// The same series with a smaller truncation.
    pub fn truncate(&self, truncation: u32) -> Self {
        let t = truncation.min(self.truncation);
        TorusSeries {
            quiver: self.quiver.clone(),
            basis: self.basis,
            truncation: t,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(g, _)| g.total() <= t as i64)
                .map(|(g, c)| (g.clone(), c.clone()))
                .collect(),
        }
    }

    /// Structure constant of `x_a · x_b = twist · x_{a+b}`.
    fn twist(&self, a: &DimVector, b: &DimVector) -> QRational {
        match self.basis {
            Basis::E => QRational::one().shift(-2 * self.quiver.chi(a, b)),
            Basis::EHat => QRational::one().mul_minus_v_pow(-self.quiver.skew(a, b)),
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch);
        }
        if !Arc::ptr_eq(&self.quiver, &other.quiver) && self.quiver.matrix() != other.quiver.matrix()
        {
            return Err(Error::QuiverMismatch);
        }
        if self.truncation != other.truncation {
            return Err(Error::TruncationMismatch(self.truncation, other.truncation));
        }
        Ok(())
    }

    /// Product in the quantum torus, truncated. Output degrees are computed in parallel.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let targets = effective_vectors(self.rank(), self.truncation);
        let coeffs: Vec<(DimVector, QRational)> = targets
            .into_par_iter()
            .filter_map(|g| {
                let mut acc = QRational::zero();
                for (a, ca) in &self.coeffs {
                    if !le(a, &g) {
                        continue;
                    }
                    let b = &g - a;
                    if let Some(cb) = other.coeffs.get(&b) {
                        let t = &(ca * cb) * &self.twist(a, &b);
                        acc = &acc + &t;
                    }
                }
                (!acc.is_zero()).then_some((g, acc))
            })
            .collect();
        Ok(TorusSeries {
            quiver: self.quiver.clone(),
            basis: self.basis,
            truncation: self.truncation,
            coeffs: coeffs.into_iter().collect(),
        })
    }

    /// Two-sided inverse of a series with constant term 1, by the recursion
    /// `I_γ = −Σ_{0<a<=γ} tw(a, γ−a) F_a I_{γ−a}`.
    pub fn inverse(&self) -> Result<Self> {
        if !self.constant().is_one() {
            return Err(Error::NonUnitConstant);
        }
        let zero = DimVector::zero(self.rank());
        let mut inv = TorusSeries::one(self.quiver.clone(), self.basis, self.truncation);
        for g in effective_vectors(self.rank(), self.truncation).into_iter().skip(1) {
            let mut acc = QRational::zero();
            for (a, ca) in &self.coeffs {
                if *a == zero || !le(a, &g) {
                    continue;
                }
                let b = &g - a;
                if let Some(cb) = inv.coeffs.get(&b) {
                    acc = &acc + &(&(ca * cb) * &self.twist(a, &b));
                }
            }
            inv.add_at(g, &-acc);
        }
        Ok(inv)
    }

    /// Conjugation `f^δ · F · f^{−δ}`: the coefficient at `γ` picks up `q^{δ·γ}`.
    pub fn f_conjugate(&self, delta: &[i64]) -> Result<Self> {
        if delta.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: delta.len(),
            });
        }
        let d = DimVector(delta.to_vec());
        Ok(self.map(|g, c| c.shift(2 * d.dot(g))))
    }

    fn map(&self, f: impl Fn(&DimVector, &QRational) -> QRational) -> Self {
        TorusSeries {
            quiver: self.quiver.clone(),
            basis: self.basis,
            truncation: self.truncation,
            coeffs: self.coeffs.iter().map(|(g, c)| (g.clone(), f(g, c))).collect(),
        }
    }

    /// Rewrites the series in the other basis.
    pub fn change_basis(&self) -> Self {
        let q = self.quiver.clone();
        let (basis, sign) = match self.basis {
            Basis::E => (Basis::EHat, 1),
            Basis::EHat => (Basis::E, -1),
        };
        let mut out = self.map(|g, c| c.mul_minus_v_pow(sign * q.chi(g, g)));
        out.basis = basis;
        out
    }

    /// The series in the requested basis.
    pub fn in_basis(&self, basis: Basis) -> Self {
        if self.basis == basis {
            self.clone()
        } else {
            self.change_basis()
        }
    }

    /// Keeps the constant term and the coefficients at positive multiples of the ray.
    pub fn ray_project(&self, ray: &Ray) -> Self {
        let mut out = TorusSeries::one(self.quiver.clone(), self.basis, self.truncation);
        for (g, c) in &self.coeffs {
            if g.multiple_of(ray.primitive()).is_some() {
                out.coeffs.insert(g.clone(), c.clone());
            }
        }
        out
    }

    /// Whether every coefficient sits on the given ray or at the origin.
    pub fn supported_on(&self, ray: &Ray) -> bool {
        self.coeffs
            .keys()
            .all(|g| g.is_zero() || g.multiple_of(ray.primitive()).is_some())
    }

    /// Factorization `F = ∏ A_l` over rays in clockwise (decreasing argument) order.
    /// Rays whose factor is 1 are omitted.
    pub fn hn_peel(&self, z: &CentralCharge) -> Result<Vec<(Ray, TorusSeries)>> {
        if z.rank() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: z.rank(),
            });
        }
        if !self.constant().is_one() {
            return Err(Error::NonUnitConstant);
        }
        let rays = z.clockwise_rays(self.truncation)?;
        let mut residual = self.clone();
        let mut factors = Vec::new();
        for r in rays {
            let ray = Ray::new(r)?;
            let factor = residual.ray_project(&ray);
            if factor.is_one() {
                continue;
            }
            residual = factor.inverse()?.mul(&residual)?;
            factors.push((ray, factor));
        }
        if !residual.is_one() {
            return Err(Error::ResidualNotOne);
        }
        Ok(factors)
    }

    /// Ordered product of a sequence of factors.
    pub fn product<'a>(
        quiver: Arc<Quiver>,
        basis: Basis,
        truncation: u32,
        factors: impl IntoIterator<Item = &'a TorusSeries>,
    ) -> Result<Self> {
        let mut acc = TorusSeries::one(quiver, basis, truncation);
        for f in factors {
            acc = acc.mul(f)?;
        }
        Ok(acc)
    }
}
