//! Motivic DT-series of quivers without potential, the series `A^{(γ)}` and their
//! classical limits, Reineke's equations, the periodicity of the associated birational
//! map for Dynkin quivers, and the comparison of DT-series under mutation.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::charge::CentralCharge;
use crate::error::{Error, Result};
use crate::lattice::{effective_vectors, DimVector};
use crate::qcoeff::{LaurentQ, QRational};
use crate::quiver::Quiver;
use crate::series::{ClassicalSeries, LambdaSeries};
use crate::torus::{Basis, TorusSeries};

/// `A = Σ_γ (−v)^{χ(γ,γ)} / ∏_i (q;q)_{γ^i} · ê_γ`.
pub fn dt_series_zero_potential(q: Arc<Quiver>, truncation: u32) -> TorusSeries {
    let terms: Vec<(DimVector, QRational)> = effective_vectors(q.rank(), truncation)
        .into_iter()
        .map(|g| {
            let mut den = BTreeMap::new();
            for &n in g.entries() {
                for k in 1..=n as u32 {
                    *den.entry(k).or_insert(0) += 1;
                }
            }
            let c = QRational::new(LaurentQ::minus_v_pow(q.chi(&g, &g)), den);
            (g, c)
        })
        .collect();
    TorusSeries::from_coeffs(q, Basis::EHat, truncation, terms).expect("effective keys")
}

/// `P_d = Σ_n (−v)^{(1−d)n²} z^n / (q;q)_n`, truncated at `z^N`.
pub fn hilbert_series(d: u32, truncation: u32) -> LambdaSeries {
    LambdaSeries::univariate(
        truncation,
        (0..=truncation).map(|n| {
            let e = (1 - d as i64) * (n as i64) * (n as i64);
            (n, QRational::inv_q_factorial(n).mul_minus_v_pow(e))
        }),
    )
}

/// `A^{(γ)}` together with a record of the coefficients that failed to be Laurent.
#[derive(Debug, Clone, PartialEq)]
pub struct AGamma {
    pub series: TorusSeries,
    pub non_laurent: Vec<DimVector>,
}

impl AGamma {
    pub fn laurent_ok(&self) -> bool {
        self.non_laurent.is_empty()
    }
}

/// `A^{(γ)} = A · (f^γ A f^{−γ})^{−1}` for an integer vector `γ`.
pub fn a_gamma(a: &TorusSeries, gamma: &[i64]) -> Result<AGamma> {
    let conj = a.f_conjugate(gamma)?;
    let series = a.mul(&conj.inverse()?)?;
    let non_laurent = series
        .coeffs()
        .iter()
        .filter(|(_, c)| !c.is_laurent())
        .map(|(g, _)| g.clone())
        .collect();
    Ok(AGamma {
        series,
        non_laurent,
    })
}

/// Euler characteristic of each coefficient in the `e` basis (evaluation at `v = 1`).
pub fn classical_limit(a: &TorusSeries) -> Result<ClassicalSeries> {
    let e = a.in_basis(Basis::E);
    let mut terms = Vec::with_capacity(e.coeffs().len());
    for (g, c) in e.coeffs() {
        let p = c.try_laurent().ok_or_else(|| Error::NotLaurent {
            gamma: g.entries().to_vec(),
        })?;
        terms.push((g.clone(), p.euler_evaluate()));
    }
    ClassicalSeries::from_coeffs(a.rank(), a.truncation(), terms)
}

/// The solution of `g_i = 1 + x_i ∏_j g_j^{a_ij}` modulo total degree `N+1`.
pub fn reineke_solve(q: &Quiver, truncation: u32) -> Result<Vec<ClassicalSeries>> {
    let n = q.rank();
    let one = ClassicalSeries::one(n, truncation);
    let xs: Vec<ClassicalSeries> = (0..n)
        .map(|i| {
            ClassicalSeries::from_coeffs(n, truncation, [(DimVector::unit(n, i), rat(1))])
                .expect("unit vector")
        })
        .collect();
    let mut g = vec![one.clone(); n];
    // each round fixes one more degree
    for _ in 0..=truncation {
        let mut next = Vec::with_capacity(n);
        for i in 0..n {
            let mut prod = xs[i].clone();
            for (j, gj) in g.iter().enumerate() {
                let a = q.count(i, j);
                if a > 0 {
                    prod = prod.mul(&gj.pow(a as i64)?)?;
                }
            }
            next.push(one.add(&prod)?);
        }
        g = next;
    }
    Ok(g)
}

/// `G(x) = F(x)/F(qx)` evaluated at `v = 1`; every coefficient of the ratio must be a
/// Laurent polynomial.
pub fn ratio_classical_limit(f: &LambdaSeries) -> Result<ClassicalSeries> {
    if f.rank() != 1 {
        return Err(Error::Precondition("ratio needs a one-variable series".into()));
    }
    if !f.constant().is_one() {
        return Err(Error::NonUnitConstant);
    }
    let shifted = f.map_coeffs(|g, c| c.shift(2 * g.total()));
    let ratio = f.mul(&shifted.inverse()?)?;
    let mut terms = Vec::new();
    for (g, c) in ratio.coeffs() {
        let p = c.try_laurent().ok_or_else(|| Error::NotLaurent {
            gamma: g.entries().to_vec(),
        })?;
        terms.push((g.clone(), p.euler_evaluate()));
    }
    ClassicalSeries::from_coeffs(1, f.truncation(), terms)
}

/// Exponents `c(n)` in `G = ∏_n (1 − z^n)^{n·c(n)}` for a classical one-variable series.
pub fn product_exponents_per_n(g: &ClassicalSeries) -> Result<Vec<BigRational>> {
    let b = g.product_exponents()?;
    Ok(b.into_iter()
        .enumerate()
        .map(|(k, bk)| bk / rat(k as i64 + 1))
        .collect())
}

/// Outcome of [`dynkin_period_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodReport {
    pub period: u32,
    pub points: usize,
}

/// Smallest `p <= bound` with `T^p = id` on the `x`-coordinates, where
/// `T: x_i ↦ (x_i ∏_j g_j^{a_ij − a_ji})^{−1}` and `g` solves Reineke's equations as
/// rational functions. The identity is certified at `trials` random positive rational
/// points of height at least 100, with exact arithmetic.
pub fn dynkin_period_check(q: &Quiver, trials: usize, bound: u32, seed: u64) -> Result<PeriodReport> {
    let order = q
        .topological_order()
        .ok_or_else(|| Error::Precondition("quiver has an oriented cycle".into()))?;
    if trials == 0 {
        return Err(Error::Precondition("at least one evaluation point is needed".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = q.rank();
    let mut candidates: Vec<u32> = (1..=bound).collect();
    for _ in 0..trials {
        let start: Vec<BigRational> = (0..n).map(|_| random_point(&mut rng)).collect();
        let mut x = start.clone();
        let mut returns = Vec::new();
        for p in 1..=bound {
            x = birational_step(q, &order, &x)?;
            if x == start {
                returns.push(p);
            }
        }
        candidates.retain(|p| returns.contains(p));
    }
    candidates
        .first()
        .map(|&period| PeriodReport {
            period,
            points: trials,
        })
        .ok_or(Error::NoPeriod(bound))
}

fn random_point(rng: &mut ChaCha8Rng) -> BigRational {
    let num: i64 = rng.gen_range(100..=10_000);
    let den: i64 = rng.gen_range(100..=10_000);
    BigRational::new(num.into(), den.into())
}

/// One application of `T`. Positive inputs keep every `g_i > 1`, so no poles occur.
fn birational_step(q: &Quiver, order: &[usize], x: &[BigRational]) -> Result<Vec<BigRational>> {
    let n = q.rank();
    let mut g: Vec<Option<BigRational>> = vec![None; n];
    // heads before tails: g_i only involves g_j for arrows i -> j
    for &i in order.iter().rev() {
        let mut prod = x[i].clone();
        for (j, gj) in g.iter().enumerate() {
            let a = q.count(i, j);
            if a > 0 {
                let gj = gj.as_ref().expect("acyclic order");
                prod *= pow(gj, a as i64);
            }
        }
        g[i] = Some(BigRational::one() + prod);
    }
    let g: Vec<BigRational> = g.into_iter().map(|c| c.expect("all vertices")).collect();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut y = x[i].clone();
        for (j, gj) in g.iter().enumerate() {
            let e = q.count(i, j) as i64 - q.count(j, i) as i64;
            y *= pow(gj, e);
        }
        if y.is_zero() {
            return Err(Error::Precondition("evaluation hit a pole".into()));
        }
        out.push(y.recip());
    }
    Ok(out)
}

fn pow(x: &BigRational, e: i64) -> BigRational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    let mut acc = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Charges for a mutation comparison at `i0`: `z_{i0}` has the largest argument for
/// `Q`, the smallest for `Q'`, and both are generic up to `|γ| <= n`.
pub fn mutation_charges(q: &Quiver, i0: usize, n: u32) -> Result<(CentralCharge, CentralCharge)> {
    let rank = q.rank();
    let base = 2 * (n as i64) * (n as i64) + 3;
    let mut left = Vec::with_capacity(rank);
    let mut right = Vec::with_capacity(rank);
    let mut weight = 1i64;
    for i in 0..rank {
        if i == i0 {
            left.push((-base.pow(rank as u32), 1));
            right.push((base.pow(rank as u32), 1));
        } else {
            left.push((weight, 1));
            right.push((weight, 1));
            weight *= base;
        }
    }
    let z = CentralCharge::from_ints(q, &left)?;
    let z2 = CentralCharge::from_ints(q, &right)?;
    for c in [&z, &z2] {
        if let Some((a, b)) = c.collision(n) {
            return Err(Error::NonGeneric(format!("{a} and {b} have the same argument")));
        }
    }
    Ok((z, z2))
}

/// Result of comparing the sector series of `Q` and of its mutation.
#[derive(Debug, Clone)]
pub struct MutationComparison {
    pub mutated: Quiver,
    /// `A_{V_{0,+}}` of `Q` (ê basis).
    pub sector: TorusSeries,
    /// `A_{V'_{0,−}}` of `Q'` (ê basis).
    pub sector_mutated: TorusSeries,
    /// Dimension vectors where the two sides disagree under `γ ↔ γ'`.
    pub mismatches: Vec<DimVector>,
    /// Whether both `i0`-ray factors equal `(v ê_{i0}; q)_∞`.
    pub dilog_factors_ok: bool,
    /// Whether the `e`-basis form of the identification, with its `q`-power
    /// rescaling, also holds.
    pub e_basis_ok: bool,
}

impl MutationComparison {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty() && self.dilog_factors_ok && self.e_basis_ok
    }
}

/// Compares the DT-series of an acyclic quiver and of its mutation at a vertex that is a
/// sink or a source (so both potentials vanish). `z` must give `e_{i0}` the largest
/// argument, `z2` the smallest.
pub fn mutation_dt_compare(
    q: Arc<Quiver>,
    i0: &str,
    z: &CentralCharge,
    z2: &CentralCharge,
    truncation: u32,
) -> Result<MutationComparison> {
    let k = q.vertex_index(i0)?;
    let rank = q.rank();
    if !q.is_acyclic() {
        return Err(Error::Precondition("quiver has an oriented cycle".into()));
    }
    let outgoing = (0..rank).any(|j| q.count(k, j) > 0);
    let incoming = (0..rank).any(|j| q.count(j, k) > 0);
    if outgoing && incoming {
        return Err(Error::Precondition(format!(
            "vertex `{i0}` is neither a sink nor a source"
        )));
    }
    let unit = DimVector::unit(rank, k);
    for j in (0..rank).filter(|&j| j != k) {
        let other = DimVector::unit(rank, j);
        if !z.slope_less(&other, &unit)? || !z2.slope_less(&unit, &other)? {
            return Err(Error::Precondition(format!(
                "charges must put `{i0}` first for Q and last for the mutation"
            )));
        }
    }
    let mutated = Arc::new(q.mutate(i0)?);
    let a = dt_series_zero_potential(q.clone(), truncation);
    let a2 = dt_series_zero_potential(mutated.clone(), truncation);

    let factors = a.hn_peel(z)?;
    let factors2 = a2.hn_peel(z2)?;
    let dilog = TorusSeries::quantum_dilog(q.clone(), &unit, truncation)?;
    let dilog2 = TorusSeries::quantum_dilog(mutated.clone(), &unit, truncation)?;
    let dilog_factors_ok = factors.first().map(|(r, f)| (r.primitive(), f)) == Some((&unit, &dilog))
        && factors2.last().map(|(r, f)| (r.primitive(), f)) == Some((&unit, &dilog2));

    let sector = dilog.inverse()?.mul(&a)?;
    let sector_mutated = a2.mul(&dilog2.inverse()?)?;

    let forward = |g: &DimVector| -> DimVector {
        let mut out = g.clone();
        out.0[k] = (0..rank).map(|j| q.count(k, j) as i64 * g.0[j]).sum::<i64>() - g.0[k];
        out
    };
    let backward = |g: &DimVector| -> DimVector {
        let mut out = g.clone();
        out.0[k] = (0..rank).map(|j| mutated.count(j, k) as i64 * g.0[j]).sum::<i64>() - g.0[k];
        out
    };
    // e_γ ↔ q^{s(γ)} e'_{γ'}
    let rescale = |g: &DimVector, gp: &DimVector| -> i64 {
        (0..rank).map(|j| q.count(j, k) as i64 * g.0[j]).sum::<i64>() * gp.0[k]
    };

    let sector_e = sector.in_basis(Basis::E);
    let sector_mutated_e = sector_mutated.in_basis(Basis::E);
    let mut mismatches = Vec::new();
    let mut e_basis_ok = true;
    for g in effective_vectors(rank, truncation) {
        let c = sector.coeff(&g);
        let gp = forward(&g);
        if !gp.is_effective() {
            if !c.is_zero() {
                mismatches.push(g);
            }
            continue;
        }
        if gp.total() > truncation as i64 {
            continue;
        }
        if c != sector_mutated.coeff(&gp) {
            mismatches.push(g.clone());
        }
        let ce = sector_e.coeff(&g).shift(2 * rescale(&g, &gp));
        if ce != sector_mutated_e.coeff(&gp) {
            e_basis_ok = false;
        }
    }
    for gp in effective_vectors(rank, truncation) {
        let g = backward(&gp);
        if !g.is_effective() && !sector_mutated.coeff(&gp).is_zero() {
            mismatches.push(g);
        }
    }
    Ok(MutationComparison {
        mutated: (*mutated).clone(),
        sector,
        sector_mutated,
        mismatches,
        dilog_factors_ok,
        e_basis_ok,
    })
}

/// `∏_{n,m>=1} (1 − q^{m−2} ê^n)^{−1}` on the three-loop quiver, i.e.
/// `∏_n Σ_k q^{−k} ê^{nk} / (q;q)_k`.
pub fn macmahon(truncation: u32) -> TorusSeries {
    let q = Arc::new(Quiver::loops(3));
    let mut acc = TorusSeries::one(q.clone(), Basis::EHat, truncation);
    for n in 1..=truncation {
        let terms = (0..=truncation / n).map(|k| {
            let c = QRational::inv_q_factorial(k).shift(-2 * k as i64);
            (DimVector(vec![(n * k) as i64]), c)
        });
        let factor = TorusSeries::from_coeffs(q.clone(), Basis::EHat, truncation, terms)
            .expect("rank-one keys");
        acc = acc.mul(&factor).expect("same quiver");
    }
    acc
}
