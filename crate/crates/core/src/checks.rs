//! Named verification suites, each producing a pass/fail verdict and a readable log.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::charge::CentralCharge;
use crate::dt::{a_gamma, classical_limit, dt_series_zero_potential, dynkin_period_check, macmahon, reineke_solve};
use crate::error::{Error, Result};
use crate::lattice::DimVector;
use crate::plethystic::{admissible_decompose, admissible_from, positive_degrees, twist_series};
use crate::qcoeff::LaurentQ;
use crate::quiver::Quiver;
use crate::torus::TorusSeries;

pub const SUITES: [&str; 6] = ["pentagon", "reineke", "macmahon", "dynkin", "theorem6", "theorem9"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub passed: bool,
    pub log: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport {
            name: name.to_string(),
            passed: true,
            log: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, line: String) {
        self.passed &= ok;
        self.log.push(format!("[{}] {line}", if ok { "ok" } else { "FAIL" }));
    }
}

/// Runs a suite by name; unknown names are an error.
pub fn run_suite(name: &str, seed: u64) -> Result<SuiteReport> {
    match name {
        "pentagon" => pentagon(),
        "reineke" => reineke(),
        "macmahon" => macmahon_suite(),
        "dynkin" => dynkin(seed),
        "theorem6" => laurent_suite(),
        "theorem9" => twist_suite(seed, 50),
        other => Err(Error::Precondition(format!(
            "unknown suite `{other}` (expected one of {})",
            SUITES.join(", ")
        ))),
    }
}

fn dv(v: &[i64]) -> DimVector {
    DimVector(v.to_vec())
}

/// The two factorizations of the `A_2` series at order 8.
pub fn pentagon() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("pentagon");
    let n = 8;
    let q = Arc::new(Quiver::a_n(2));
    let a = dt_series_zero_potential(q.clone(), n);
    let cases: [(&[(i64, i64)], Vec<DimVector>); 2] = [
        (&[(-1, 1), (1, 1)], vec![dv(&[1, 0]), dv(&[0, 1])]),
        (&[(1, 1), (-1, 1)], vec![dv(&[0, 1]), dv(&[1, 1]), dv(&[1, 0])]),
    ];
    for (charges, rays) in cases {
        let z = CentralCharge::from_ints(&q, charges)?;
        let factors = a.hn_peel(&z)?;
        let got: Vec<DimVector> = factors.iter().map(|(ray, _)| ray.primitive().clone()).collect();
        r.check(got == rays, format!("Z = {charges:?}: rays {got:?}, expected {rays:?}"));
        for (ray, f) in &factors {
            let dilog = TorusSeries::quantum_dilog(q.clone(), ray.primitive(), n)?;
            r.check(
                *f == dilog,
                format!("factor on {} is (v ê_{};q)_∞", ray.primitive(), ray.primitive()),
            );
        }
        let back = TorusSeries::product(q.clone(), a.basis(), n, factors.iter().map(|(_, f)| f))?;
        r.check(back == a, "factors multiply back to A".to_string());
    }
    Ok(r)
}

/// Classical limits of `A^{(i)}` against Reineke's equations.
pub fn reineke() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("reineke");
    let n = 6;
    let quivers = [
        ("Q_0", Quiver::loops(0)),
        ("Q_1", Quiver::loops(1)),
        ("Q_2", Quiver::loops(2)),
        ("Q_3", Quiver::loops(3)),
        ("A_2", Quiver::a_n(2)),
    ];
    for (label, q) in quivers {
        let g = reineke_solve(&q, n)?;
        let q = Arc::new(q);
        let a = dt_series_zero_potential(q.clone(), n);
        for (i, gi) in g.iter().enumerate() {
            let cl = classical_limit(&a_gamma(&a, &DimVector::unit(q.rank(), i).0)?.series)?;
            r.check(cl == *gi, format!("{label}, vertex {}: A^(i),cl solves the system", i + 1));
        }
    }
    let q2 = Arc::new(Quiver::loops(2));
    let cl = classical_limit(&a_gamma(&dt_series_zero_potential(q2, 4), &[1])?.series)?;
    let catalan: Vec<BigRational> = (0..=4).map(|k| cl.coeff1(k)).collect();
    let want: Vec<BigRational> = [1, 1, 2, 5, 14].iter().map(|&x| BigRational::from_integer(x.into())).collect();
    r.check(catalan == want, format!("Q_2 gives {}", join(&catalan)));
    Ok(r)
}

fn join(v: &[BigRational]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// `A^{(1),cl}` of the three-loop series with potential is the MacMahon function.
pub fn macmahon_suite() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("macmahon");
    let a = macmahon(8);
    let ag = a_gamma(&a, &[1])?;
    r.check(ag.laurent_ok(), "A^(1) has Laurent coefficients".into());
    let cl = classical_limit(&ag.series)?;
    let got: Vec<BigRational> = (0..=7).map(|k| cl.coeff1(k)).collect();
    let want: Vec<BigRational> = plane_partitions(7).into_iter().map(BigRational::from_integer).collect();
    r.check(got == want, format!("coefficients {} (expected {})", join(&got), join(&want)));
    Ok(r)
}

/// Coefficients of `∏_{n>=1} (1 − x^n)^{−n}` up to `x^N`.
pub fn plane_partitions(n: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::from(0); n + 1];
    c[0] = BigInt::from(1);
    for k in 1..=n {
        // multiply by (1 − x^k)^{−1}, k times
        for _ in 0..k {
            for i in k..=n {
                let prev = c[i - k].clone();
                c[i] += prev;
            }
        }
    }
    c
}

/// Periods of the birational map for `A_2` and `A_3`.
pub fn dynkin(seed: u64) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("dynkin");
    let p2 = dynkin_period_check(&Quiver::a_n(2), 6, 30, seed)?;
    r.check(p2.period == 5, format!("A_2: period {} at {} points", p2.period, p2.points));
    let p3 = dynkin_period_check(&Quiver::a_n(3), 6, 30, seed)?;
    r.check(
        p3.period == 3 || p3.period == 6,
        format!("A_3: period {} at {} points", p3.period, p3.points),
    );
    Ok(r)
}

/// Integer vectors with `Σ|γ^i| <= bound`, excluding zero.
fn small_vectors(rank: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        let mut next = Vec::new();
        for v in &out {
            let used: i64 = v.iter().map(|x: &i64| x.abs()).sum();
            for x in -(bound - used)..=(bound - used) {
                let mut w = v.clone();
                w.push(x);
                next.push(w);
            }
        }
        out = next;
    }
    out.retain(|v| v.iter().any(|&x| x != 0));
    out
}

/// Laurent-ness of every `A^{(γ)}` for small `γ`.
pub fn laurent_suite() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("theorem6");
    let n = 6;
    let quivers = [
        ("Q_0", Quiver::loops(0)),
        ("Q_1", Quiver::loops(1)),
        ("Q_2", Quiver::loops(2)),
        ("Q_3", Quiver::loops(3)),
        ("A_2", Quiver::a_n(2)),
    ];
    for (label, q) in quivers {
        let q = Arc::new(q);
        let a = dt_series_zero_potential(q.clone(), n);
        let mut failures = Vec::new();
        let gammas = small_vectors(q.rank(), 3);
        for g in &gammas {
            let ag = a_gamma(&a, g)?;
            if !ag.laurent_ok() {
                failures.push((g.clone(), ag.non_laurent));
            }
        }
        r.check(
            failures.is_empty(),
            format!("{label}: {} vectors γ, non-Laurent: {failures:?}", gammas.len()),
        );
    }
    Ok(r)
}

/// A random admissible series on at most two variables, from Laurent data with small
/// integer coefficients.
pub fn random_admissible(rng: &mut ChaCha8Rng, rank: usize, truncation: u32) -> Result<crate::series::LambdaSeries> {
    let mut f = BTreeMap::new();
    for g in positive_degrees(rank, truncation) {
        if rng.gen_bool(0.5) {
            continue;
        }
        let terms: Vec<(i64, i64)> = (0..rng.gen_range(1..=2))
            .map(|_| (rng.gen_range(-3..=3), rng.gen_range(-2..=2)))
            .collect();
        let p = LaurentQ::from_int_terms(&terms);
        if !p.is_zero() {
            f.insert(g, p);
        }
    }
    admissible_from(rank, truncation, &f)
}

/// Sign twists of random admissible series stay admissible.
pub fn twist_suite(seed: u64, count: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("theorem9");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for k in 0..count {
        let rank = rng.gen_range(1..=2);
        let truncation = rng.gen_range(3..=5);
        let f = random_admissible(&mut rng, rank, truncation)?;
        let mut b = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            for j in i..rank {
                let x = rng.gen_range(-2..=2);
                b[i][j] = x;
                b[j][i] = x;
            }
        }
        let twisted = twist_series(&f, &b)?;
        if let Err(e) = admissible_decompose(&twisted) {
            failures += 1;
            r.check(false, format!("sample {k}: rank {rank}, N = {truncation}, B = {b:?}: {e}"));
        }
    }
    r.check(failures == 0, format!("{count} twisted samples, {failures} failures"));
    Ok(r)
}
