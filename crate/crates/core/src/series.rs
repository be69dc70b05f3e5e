//! Truncated power series in commuting variables `x_i`, with the λ-ring operations
//! (Adams operations, plethystic `Sym` and `Log`).

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{effective_vectors, DimVector};
use crate::qcoeff::QRational;

/// Coefficient rings usable in [`Series`].
pub trait Coeff: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, c: &BigRational) -> Self;
    /// Adams operation on coefficients (trivial for plain rationals).
    fn adams(&self, n: u32) -> Self;
}

impl Coeff for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: &BigRational) -> Self {
        self * c
    }
    fn adams(&self, _n: u32) -> Self {
        self.clone()
    }
}

impl Coeff for QRational {
    fn zero() -> Self {
        QRational::zero()
    }
    fn one() -> Self {
        QRational::one()
    }
    fn is_zero(&self) -> bool {
        QRational::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: &BigRational) -> Self {
        QRational::scale(self, c)
    }
    fn adams(&self, n: u32) -> Self {
        QRational::adams(self, n)
    }
}

/// `Σ_γ c_γ x^γ` truncated at total degree `|γ| <= truncation`. Zero coefficients are
/// not stored.
#[derive(Debug, Clone, PartialEq)]
pub struct Series<C: Coeff> {
    rank: usize,
    truncation: u32,
    coeffs: BTreeMap<DimVector, C>,
}

/// Series with motivic coefficients, the setting of plethystic computations.
pub type LambdaSeries = Series<QRational>;
/// Series with rational coefficients in commuting variables, e.g. classical limits.
pub type ClassicalSeries = Series<BigRational>;

impl<C: Coeff> Series<C> {
    pub fn zero(rank: usize, truncation: u32) -> Self {
        Series {
            rank,
            truncation,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize, truncation: u32) -> Self {
        let mut s = Series::zero(rank, truncation);
        s.coeffs.insert(DimVector::zero(rank), C::one());
        s
    }

    /// Builds a series, dropping terms beyond the truncation.
    pub fn from_coeffs(
        rank: usize,
        truncation: u32,
        coeffs: impl IntoIterator<Item = (DimVector, C)>,
    ) -> Result<Self> {
        let mut s = Series::zero(rank, truncation);
        for (g, c) in coeffs {
            if g.rank() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    found: g.rank(),
                });
            }
            if !g.is_effective() {
                return Err(Error::NegativeDimension(format!("{g}")));
            }
            s.add_at(g, &c);
        }
        Ok(s)
    }

    /// One-variable series `Σ_n c_n x^n`.
    pub fn univariate(truncation: u32, coeffs: impl IntoIterator<Item = (u32, C)>) -> Self {
        Series::from_coeffs(
            1,
            truncation,
            coeffs.into_iter().map(|(n, c)| (DimVector(vec![n as i64]), c)),
        )
        .expect("rank-1 effective keys")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn coeffs(&self) -> &BTreeMap<DimVector, C> {
        &self.coeffs
    }

    pub fn coeff(&self, g: &DimVector) -> C {
        self.coeffs.get(g).cloned().unwrap_or_else(C::zero)
    }

    /// Coefficient of `x^n` in a one-variable series.
    pub fn coeff1(&self, n: u32) -> C {
        self.coeff(&DimVector(vec![n as i64]))
    }

    pub fn constant(&self) -> C {
        self.coeff(&DimVector::zero(self.rank))
    }

    /// Adds `c·x^γ` in place (ignored beyond the truncation).
    pub fn add_at(&mut self, g: DimVector, c: &C) {
        if c.is_zero() || g.total() > self.truncation as i64 {
            return;
        }
        match self.coeffs.get_mut(&g) {
            Some(x) => {
                *x = x.add(c);
                if x.is_zero() {
                    self.coeffs.remove(&g);
                }
            }
            None => {
                self.coeffs.insert(g, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        if self.truncation != other.truncation {
            return Err(Error::TruncationMismatch(self.truncation, other.truncation));
        }
        Ok(())
    }

    /// Re-truncates at a lower order.
    pub fn truncate(&self, truncation: u32) -> Self {
        let t = truncation.min(self.truncation);
        Series {
            rank: self.rank,
            truncation: t,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(g, _)| g.total() <= t as i64)
                .map(|(g, c)| (g.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&DimVector, &C) -> C) -> Self {
        let mut s = Series::zero(self.rank, self.truncation);
        for (g, c) in &self.coeffs {
            s.add_at(g.clone(), &f(g, c));
        }
        s
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut s = self.clone();
        for (g, c) in &other.coeffs {
            s.add_at(g.clone(), c);
        }
        Ok(s)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|_, c| c.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        self.map_coeffs(|_, x| x.scale(c))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.truncation as i64;
        let mut s = Series::zero(self.rank, self.truncation);
        for (a, ca) in &self.coeffs {
            let ta = a.total();
            for (b, cb) in &other.coeffs {
                if ta + b.total() <= n {
                    s.add_at(a + b, &ca.mul(cb));
                }
            }
        }
        Ok(s)
    }

    /// Non-negative integer power by repeated squaring; negative powers go through
    /// the inverse.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let mut base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Series::one(self.rank, self.truncation);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Multiplicative inverse of a series with constant term 1.
    pub fn inverse(&self) -> Result<Self> {
        if self.constant() != C::one() {
            return Err(Error::NonUnitConstant);
        }
        let zero = DimVector::zero(self.rank);
        let mut inv = Series::one(self.rank, self.truncation);
        for g in effective_vectors(self.rank, self.truncation).into_iter().skip(1) {
            let mut acc = C::zero();
            for (b, cb) in &self.coeffs {
                if *b == zero || !le(b, &g) {
                    continue;
                }
                if let Some(x) = inv.coeffs.get(&(&g - b)) {
                    acc = acc.add(&cb.mul(x));
                }
            }
            inv.add_at(g, &acc.neg());
        }
        Ok(inv)
    }

    /// `exp(H)` for `H` with zero constant term, via `|γ| F_γ = Σ_β |β| H_β F_{γ−β}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant().is_zero() {
            return Err(Error::Precondition("exp needs a zero constant term".into()));
        }
        let mut f = Series::one(self.rank, self.truncation);
        for g in effective_vectors(self.rank, self.truncation).into_iter().skip(1) {
            let mut acc = C::zero();
            for (b, hb) in &self.coeffs {
                if !le(b, &g) {
                    continue;
                }
                if let Some(x) = f.coeffs.get(&(&g - b)) {
                    acc = acc.add(&hb.mul(x).scale(&int(b.total())));
                }
            }
            let c = acc.scale(&BigRational::new(One::one(), BigInt::from(g.total())));
            f.add_at(g, &c);
        }
        Ok(f)
    }

    /// `log(F)` for `F` with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if self.constant() != C::one() {
            return Err(Error::NonUnitConstant);
        }
        let zero = DimVector::zero(self.rank);
        let mut h: Series<C> = Series::zero(self.rank, self.truncation);
        for g in effective_vectors(self.rank, self.truncation).into_iter().skip(1) {
            let total = g.total();
            let mut acc = self.coeff(&g).scale(&int(total));
            for (b, hb) in &h.coeffs {
                if !le(b, &g) || *b == g {
                    continue;
                }
                let rest = &g - b;
                if rest == zero {
                    continue;
                }
                if let Some(x) = self.coeffs.get(&rest) {
                    acc = acc.sub(&hb.mul(x).scale(&int(b.total())));
                }
            }
            let c = acc.scale(&BigRational::new(One::one(), BigInt::from(total)));
            h.add_at(g, &c);
        }
        Ok(h)
    }

    /// Adams operation `ψ_n`: `x^γ -> x^{nγ}` and `ψ_n` on coefficients.
    pub fn adams(&self, n: u32) -> Self {
        assert!(n >= 1, "Adams operations are indexed by n >= 1");
        let mut s = Series::zero(self.rank, self.truncation);
        for (g, c) in &self.coeffs {
            s.add_at(g.scale(n as i64), &c.adams(n));
        }
        s
    }

    /// Plethystic exponential `Sym(G) = exp(Σ_{n>=1} ψ_n(G)/n)`.
    pub fn pleth_sym(&self) -> Result<Self> {
        if !self.constant().is_zero() {
            return Err(Error::Precondition("Sym needs a zero constant term".into()));
        }
        let mut acc = Series::zero(self.rank, self.truncation);
        for n in 1..=self.truncation {
            let term = self.adams(n).scale(&BigRational::new(One::one(), BigInt::from(n)));
            acc = acc.add(&term)?;
        }
        acc.exp()
    }

    /// Plethystic logarithm `Log(F) = Σ_{n>=1} μ(n)/n · ψ_n(log F)`.
    pub fn pleth_log(&self) -> Result<Self> {
        let l = self.log()?;
        let mut acc = Series::zero(self.rank, self.truncation);
        for n in 1..=self.truncation {
            let mu = mobius(n as u64);
            if mu == 0 {
                continue;
            }
            let term = l.adams(n).scale(&BigRational::new(BigInt::from(mu), BigInt::from(n)));
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }
}

impl ClassicalSeries {
    /// For a one-variable `F = ∏_{n>=1} (1 − x^n)^{b_n}` with `F(0)=1`, the exponents
    /// `b_1..b_N`.
    pub fn product_exponents(&self) -> Result<Vec<BigRational>> {
        if self.rank != 1 {
            return Err(Error::Precondition("product exponents need one variable".into()));
        }
        let l = self.log()?;
        let n = self.truncation as u64;
        // m·L_m = −Σ_{d|m} d·b_d
        let ml: Vec<BigRational> = (0..=n)
            .map(|m| l.coeff1(m as u32) * int(m as i64))
            .collect();
        let mut b = Vec::with_capacity(n as usize);
        for k in 1..=n {
            let mut s = <BigRational as Zero>::zero();
            for d in 1..=k {
                if k % d == 0 {
                    let mu = mobius(k / d);
                    if mu != 0 {
                        s += &ml[d as usize] * int(mu);
                    }
                }
            }
            b.push(-s / int(k as i64));
        }
        Ok(b)
    }
}

/// Componentwise `a <= b`.
pub fn le(a: &DimVector, b: &DimVector) -> bool {
    a.0.iter().zip(&b.0).all(|(x, y)| x <= y)
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// The Möbius function.
pub fn mobius(mut n: u64) -> i64 {
    assert!(n >= 1);
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}
