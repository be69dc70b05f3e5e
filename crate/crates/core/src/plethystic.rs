//! Admissible series: plethystic decomposition, refined invariants of ray factors,
//! sign twists, and normal ordering of quantum torus series into commuting variables.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::charge::CentralCharge;
use crate::error::{Error, Result};
use crate::lattice::{effective_vectors, DimVector};
use crate::qcoeff::{LaurentQ, QRational};
use crate::series::LambdaSeries;
use crate::torus::{Basis, Ray, TorusSeries};

/// Laurent data `f_γ` with `F = Sym(Σ_γ f_γ x^γ / (1 − q))`.
///
/// For one-variable inputs `delta` holds the exponents of
/// `F = ∏_{n,m} (q^{m/2} x^n; q)_∞^{δ(n,m)}`, keyed by `(n, m)` with `m` the exponent of `v`.
/// `omega` is the refined invariant `Ω(γ)`; with the normalization used here it coincides
/// with `f_γ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleCertificate {
    pub f: BTreeMap<DimVector, LaurentQ>,
    pub delta: BTreeMap<(i64, i64), BigInt>,
    pub omega: BTreeMap<DimVector, LaurentQ>,
}

impl AdmissibleCertificate {
    /// Whether every `f_γ` has integer coefficients.
    pub fn is_integral(&self) -> bool {
        self.f.values().all(LaurentQ::is_integral)
    }

    /// Entries `(n, m)` of the δ table violating `m ≡ (d−1)n (mod 2)`.
    pub fn parity_violations(&self, d: i64) -> Vec<(i64, i64)> {
        self.delta
            .keys()
            .filter(|(n, m)| (m - (d - 1) * n).rem_euclid(2) != 0)
            .copied()
            .collect()
    }

    /// `Σ_m δ(n, m)` for each `n` present in the table.
    pub fn delta_sums(&self) -> BTreeMap<i64, BigInt> {
        let mut out: BTreeMap<i64, BigInt> = BTreeMap::new();
        for ((n, _), d) in &self.delta {
            *out.entry(*n).or_default() += d;
        }
        out
    }
}

/// Computes `f_γ = (1 − q)·(Log F)_γ` and checks that each is a Laurent polynomial.
/// Fails with the first offending `γ`.
pub fn admissible_decompose(f: &LambdaSeries) -> Result<AdmissibleCertificate> {
    if !f.constant().is_one() {
        return Err(Error::NonUnitConstant);
    }
    let log = f.pleth_log()?;
    let mut cert = AdmissibleCertificate {
        f: BTreeMap::new(),
        delta: BTreeMap::new(),
        omega: BTreeMap::new(),
    };
    for (g, c) in log.coeffs() {
        let fg = c
            .mul_laurent(&LaurentQ::one_minus_q(1))
            .try_laurent()
            .ok_or_else(|| Error::NotLaurent {
                gamma: g.entries().to_vec(),
            })?;
        if f.rank() == 1 {
            for (m, x) in fg.terms() {
                if !x.is_integer() {
                    return Err(Error::Precondition(format!(
                        "δ({}, {m}) = {} is not an integer",
                        g.0[0],
                        -x
                    )));
                }
                cert.delta.insert((g.0[0], m), -x.to_integer());
            }
        }
        cert.omega.insert(g.clone(), fg.clone());
        cert.f.insert(g.clone(), fg);
    }
    Ok(cert)
}

/// The admissible series `Sym(Σ f_γ x^γ / (1 − q))`.
pub fn admissible_from(
    rank: usize,
    truncation: u32,
    f: &BTreeMap<DimVector, LaurentQ>,
) -> Result<LambdaSeries> {
    let g = LambdaSeries::from_coeffs(
        rank,
        truncation,
        f.iter()
            .map(|(g, p)| (g.clone(), QRational::new(p.clone(), [(1, 1)].into()))),
    )?;
    g.pleth_sym()
}

/// `a_γ ↦ (−v)^{Σ b_ij γ^i γ^j} a_γ` for a symmetric integer matrix `B`.
pub fn twist_series(f: &LambdaSeries, b: &[Vec<i64>]) -> Result<LambdaSeries> {
    let n = f.rank();
    if b.len() != n || b.iter().any(|row| row.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.len(),
        });
    }
    if (0..n).any(|i| (0..n).any(|j| b[i][j] != b[j][i])) {
        return Err(Error::NonSymmetricMatrix);
    }
    Ok(f.map_coeffs(|g, c| {
        let mut e = 0;
        for i in 0..n {
            for j in 0..n {
                e += b[i][j] * g.0[i] * g.0[j];
            }
        }
        c.mul_minus_v_pow(e)
    }))
}

/// The coefficients of a ray factor as a one-variable series in `x = ê_{γ0}`.
pub fn ray_series(factor: &TorusSeries, ray: &Ray) -> Result<LambdaSeries> {
    if !factor.supported_on(ray) {
        return Err(Error::Precondition(format!(
            "series is not supported on the ray {}",
            ray.primitive()
        )));
    }
    let hat = factor.in_basis(Basis::EHat);
    let step = ray.primitive().total() as u32;
    let truncation = factor.truncation() / step;
    let terms: Vec<(u32, QRational)> = hat
        .coeffs()
        .iter()
        .map(|(g, c)| {
            let k = if g.is_zero() { 0 } else { g.multiple_of(ray.primitive()).expect("on ray") };
            (k as u32, c.clone())
        })
        .collect();
    Ok(LambdaSeries::univariate(truncation, terms))
}

/// Refined invariants `Ω(kγ0) = (1 − q)·(Log A_l)_k` of a ray factor, indexed by `k`.
pub fn refined_dt(factor: &TorusSeries, ray: &Ray) -> Result<BTreeMap<u32, LaurentQ>> {
    let cert = admissible_decompose(&ray_series(factor, ray)?)?;
    Ok(cert
        .omega
        .into_iter()
        .map(|(g, p)| (g.0[0] as u32, p))
        .collect())
}

/// Rewrites `F = Σ a_γ ê_γ` in ordered monomials `ê_{b_1}^{n_1} ⋯ ê_{b_r}^{n_r}` of a
/// lattice basis and replaces them by commuting `x^n`. The output is truncated at
/// `⌊N / max |b_k|⌋` so that every kept coefficient is known.
pub fn quantum_to_classical(f: &TorusSeries, basis: &[DimVector]) -> Result<LambdaSeries> {
    let rank = f.rank();
    if basis.len() != rank || basis.iter().any(|b| b.rank() != rank || b.total() <= 0) {
        return Err(Error::NotALatticeBasis);
    }
    let solver = LatticeSolver::new(basis)?;
    let hat = f.in_basis(Basis::EHat);
    let q = f.quiver();
    let max = basis.iter().map(|b| b.total()).max().unwrap_or(1) as u32;
    let truncation = f.truncation() / max;
    let mut out = LambdaSeries::zero(rank, truncation);
    for (g, c) in hat.coeffs() {
        let n = solver.solve(g)?;
        if n.iter().sum::<i64>() > truncation as i64 {
            continue;
        }
        let mut e = 0;
        for k in 0..rank {
            for l in k + 1..rank {
                e += n[k] * n[l] * q.skew(&basis[k], &basis[l]);
            }
        }
        out.add_at(DimVector(n), &c.mul_minus_v_pow(e));
    }
    Ok(out)
}

/// Exact coordinates with respect to a unimodular basis.
struct LatticeSolver {
    inverse: Vec<Vec<BigRational>>,
}

impl LatticeSolver {
    fn new(basis: &[DimVector]) -> Result<Self> {
        let n = basis.len();
        // columns are basis vectors; invert by Gauss–Jordan
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> = (0..n).map(|k| rat(basis[k].0[i])).collect();
                row.extend((0..n).map(|k| if k == i { BigRational::one() } else { BigRational::zero() }));
                row
            })
            .collect();
        let mut det = BigRational::one();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !m[r][col].is_zero())
                .ok_or(Error::NotALatticeBasis)?;
            if pivot != col {
                m.swap(pivot, col);
                det = -det;
            }
            let p = m[col][col].clone();
            det *= &p;
            for x in m[col].iter_mut() {
                *x /= &p;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let factor = m[r][col].clone();
                    let pivot_row = m[col].clone();
                    for (x, y) in m[r].iter_mut().zip(pivot_row) {
                        *x -= &factor * y;
                    }
                }
            }
        }
        if det.abs() != BigRational::one() {
            return Err(Error::NotALatticeBasis);
        }
        Ok(LatticeSolver {
            inverse: m.into_iter().map(|row| row[n..].to_vec()).collect(),
        })
    }

    fn solve(&self, g: &DimVector) -> Result<Vec<i64>> {
        let mut out = Vec::with_capacity(self.inverse.len());
        for row in &self.inverse {
            let x: BigRational = row.iter().zip(&g.0).map(|(a, &b)| a * rat(b)).sum();
            if !x.is_integer() || x.is_negative() {
                return Err(Error::NotInSpan(g.entries().to_vec()));
            }
            out.push(i64::try_from(x.to_integer()).map_err(|_| Error::NotInSpan(g.0.clone()))?);
        }
        Ok(out)
    }
}

/// Harder–Narasimhan factorization followed by a one-variable admissibility
/// certificate for every ray factor.
pub fn quantum_admissible_factorize(
    f: &TorusSeries,
    z: &CentralCharge,
) -> Result<Vec<(Ray, AdmissibleCertificate)>> {
    f.hn_peel(z)?
        .into_iter()
        .map(|(ray, factor)| {
            let cert = admissible_decompose(&ray_series(&factor, &ray)?)?;
            Ok((ray, cert))
        })
        .collect()
}

/// All effective vectors of total degree `1..=N`, the index set of `f`-data.
pub fn positive_degrees(rank: usize, truncation: u32) -> Vec<DimVector> {
    effective_vectors(rank, truncation).into_iter().skip(1).collect()
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}
