//! End-to-end acceptance run: one PASS/FAIL line per criterion, exact comparisons only.

mod common;

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use coha::checks::{plane_partitions, run_suite};
use coha::docs::ingest_series;
use coha::dt::{
    a_gamma, classical_limit, dt_series_zero_potential, dynkin_period_check, hilbert_series,
    mutation_charges, mutation_dt_compare, product_exponents_per_n, ratio_classical_limit,
};
use coha::plethystic::admissible_decompose;
use coha::qcoeff::LaurentQ;
use coha::series::{ClassicalSeries, LambdaSeries};
use coha::shuffle::{schur_polynomial, shuffle_product};
use coha::{CohaElement, DimVector, QRational, Quiver};
use common::{random_dim, random_sympoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn testdata(name: &str) -> String {
    let path = format!("{}/testdata/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

/// Criterion 1: both factorizations of the A_2 series at order 8.
fn pentagon() -> Outcome {
    let start = Instant::now();
    let report = run_suite("pentagon", 0).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(report.passed, report.log.join("; "))?;
    ensure(elapsed < Duration::from_secs(10), format!("took {elapsed:?}"))?;
    Ok(format!("2 and 3 quantum dilogarithm factors, residual 1, {elapsed:.2?}"))
}

/// `∏_{k=0}^{K} (1 − q^{k+1/2} x)` expanded in `x`, each coefficient cut at `q^prec`.
fn pochhammer_oracle(n_max: usize, prec: u32) -> Vec<LaurentQ> {
    let mut c = vec![LaurentQ::zero(); n_max + 1];
    c[0] = LaurentQ::one();
    for k in 0..=prec as i64 {
        let factor = LaurentQ::v_pow(2 * k + 1);
        for n in (1..=n_max).rev() {
            let t = &c[n - 1] * &factor;
            c[n] = (&c[n] - &t).truncate_above(2 * prec as i64);
        }
    }
    c
}

/// Criterion 2: the Q_0 series against the expansion of `(v ê; q)_∞`.
fn q0_closed_form() -> Outcome {
    let n = 10;
    let q = Arc::new(Quiver::loops(0));
    let a = dt_series_zero_potential(q, n);
    let prec = 40;
    let oracle = pochhammer_oracle(n as usize, prec);
    for k in 0..=n {
        let c = a.coeff(&DimVector(vec![k as i64]));
        ensure(
            c.serre_specialize(prec) == oracle[k as usize],
            format!("q-expansion differs at ê^{k}"),
        )?;
        let closed = QRational::inv_q_factorial(k).mul_minus_v_pow((k * k) as i64);
        ensure(c == closed, format!("coefficient at ê^{k} is {c}"))?;
    }
    Ok(format!("coefficients of ê^0..ê^{n} agree exactly and to order q^{prec}"))
}

/// Criterion 3: δ tables of P_d, d = 0..4, to order z^6.
fn delta_tables() -> Outcome {
    let mut sizes = Vec::new();
    for d in 0..=4u32 {
        let cert = admissible_decompose(&hilbert_series(d, 6)).map_err(|e| format!("d={d}: {e}"))?;
        ensure(cert.is_integral(), format!("d={d}: non-integral f"))?;
        let bad = cert.parity_violations(d as i64);
        ensure(bad.is_empty(), format!("d={d}: parity fails at {bad:?}"))?;
        for n in 1..=6 {
            let support = cert.delta.keys().filter(|(k, _)| *k == n).count();
            ensure(
                cert.f.get(&DimVector(vec![n])).map_or(0, |p| p.terms().count()) == support,
                format!("d={d}, n={n}: support mismatch"),
            )?;
        }
        sizes.push(cert.delta.len());
        let expected: Option<BTreeMap<(i64, i64), BigInt>> = match d {
            0 => Some([((1, 1), BigInt::from(1))].into()),
            1 => Some([((1, 0), BigInt::from(-1))].into()),
            _ => None,
        };
        if let Some(e) = expected {
            ensure(cert.delta == e, format!("d={d}: δ = {:?}", cert.delta))?;
        }
    }
    Ok(format!("all admissible; nonzero δ entries per d = {sizes:?}"))
}

/// Criterion 4: the algebraic equation of `P_d^cl` and `c(n) = Σ_m δ(n,m)`.
fn classical_equation() -> Outcome {
    let n = 5;
    for d in 0..=3u32 {
        let p = ratio_classical_limit(&hilbert_series(d, n)).map_err(|e| e.to_string())?;
        let sign = if d % 2 == 1 { 1 } else { -1 };
        let z = ClassicalSeries::univariate(n, [(1, rat(sign))]);
        let rhs = ClassicalSeries::one(1, n)
            .add(&z.mul(&p.pow(d as i64).unwrap()).unwrap())
            .unwrap();
        ensure(p == rhs, format!("d={d}: P^cl = {:?}", p.coeffs()))?;
        let c = product_exponents_per_n(&p).map_err(|e| e.to_string())?;
        let cert = admissible_decompose(&hilbert_series(d, n)).map_err(|e| e.to_string())?;
        let sums = cert.delta_sums();
        for k in 1..=n as i64 {
            let s = sums.get(&k).cloned().unwrap_or_default();
            ensure(
                c[k as usize - 1] == BigRational::from_integer(s.clone()),
                format!("d={d}, n={k}: c = {}, Σδ = {s}", c[k as usize - 1]),
            )?;
        }
    }
    Ok("d = 0..3 mod z^6; c(n) matches for n <= 5".into())
}

/// Criterion 5: Laurent-ness of `A^{(γ)}` and Reineke's equations.
fn laurent_and_reineke() -> Outcome {
    for suite in ["theorem6", "reineke"] {
        let r = run_suite(suite, 0).map_err(|e| e.to_string())?;
        ensure(r.passed, r.log.join("; "))?;
    }
    Ok("Q_0..Q_3 and A_2 at N = 6, |γ| <= 3; Catalan 1,1,2,5,14".into())
}

/// Criterion 6: the ingested MacMahon series.
fn macmahon() -> Outcome {
    let q = Arc::new(Quiver::loops(3));
    let a = ingest_series(&testdata("macmahon_8.json"), q, Some(8)).map_err(|e| e.to_string())?;
    // independent oracle: Sym(Σ_n q^{-1} x^n / (1 − q))
    let g = LambdaSeries::univariate(
        8,
        (1..=8).map(|n| (n, QRational::inv_q_factorial(1).shift(-2))),
    );
    let expansion = g.pleth_sym().map_err(|e| e.to_string())?;
    for n in 0..=8 {
        ensure(
            a.coeff(&DimVector(vec![n as i64])) == expansion.coeff1(n),
            format!("document differs from the product at order {n}"),
        )?;
    }
    let cl = classical_limit(&a_gamma(&a, &[1]).map_err(|e| e.to_string())?.series)
        .map_err(|e| e.to_string())?;
    let got: Vec<BigRational> = (0..=7).map(|k| cl.coeff1(k)).collect();
    let want: Vec<BigRational> = plane_partitions(7).into_iter().map(BigRational::from_integer).collect();
    ensure(got == want, format!("coefficients {got:?}"))?;
    Ok("1,1,3,6,13,24,48,86".into())
}

/// Criterion 7: associativity, Schur functions and the A_2 relation.
fn coha_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let quivers = [Quiver::loops(0), Quiver::loops(1), Quiver::loops(2), Quiver::a_n(2)];
    let mut triples = 0;
    for (k, q) in quivers.iter().enumerate() {
        for _ in 0..50 {
            let f: Vec<CohaElement> = (0..3)
                .map(|_| {
                    let g = random_dim(&mut rng, q.rank(), 3);
                    CohaElement::new(random_sympoly(&mut rng, &g, 2, 2))
                })
                .collect();
            let m = |a: &CohaElement, b: &CohaElement| shuffle_product(q, a, b).unwrap();
            let left = m(&m(&f[0], &f[1]), &f[2]);
            let right = m(&f[0], &m(&f[1], &f[2]));
            ensure(left == right, format!("quiver #{k}: associativity fails for {f:?}"))?;
            triples += 1;
        }
    }

    let q0 = Quiver::loops(0);
    let mut monomials = 0;
    for n in 1..=3usize {
        for idx in increasing_tuples(n, 4) {
            let mut prod = CohaElement::psi(2 * idx[0] + 1);
            for &i in &idx[1..] {
                prod = shuffle_product(&q0, &prod, &CohaElement::psi(2 * i + 1)).unwrap();
            }
            let lambda: Vec<u32> = (0..n).map(|k| idx[n - 1 - k] + k as u32 + 1 - n as u32).collect();
            let s = schur_polynomial(&lambda, n).unwrap();
            ensure(prod.poly == s, format!("ψ-monomial {idx:?} is not s_{lambda:?}"))?;
            monomials += 1;
        }
    }

    let a2 = Quiver::a_n(2);
    for i in 0..=3 {
        for j in 0..=3 {
            let lhs = shuffle_product(&a2, &CohaElement::eta(i), &CohaElement::xi(j)).unwrap();
            let r1 = shuffle_product(&a2, &CohaElement::xi(j + 1), &CohaElement::eta(i)).unwrap();
            let r2 = shuffle_product(&a2, &CohaElement::xi(j), &CohaElement::eta(i + 1)).unwrap();
            ensure(lhs == r1.sub(&r2).unwrap(), format!("A_2 relation fails at i={i}, j={j}"))?;
        }
    }
    Ok(format!("{triples} triples, {monomials} ψ-monomials, 16 relations"))
}

fn increasing_tuples(n: usize, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for t in increasing_tuples(n - 1, max) {
        let lo = t.last().map_or(0, |&x| x + 1);
        for x in lo..=max {
            let mut u = t.clone();
            u.push(x);
            out.push(u);
        }
    }
    out
}

/// Criterion 8: sign twists of admissible series.
fn twist_invariance() -> Outcome {
    let r = run_suite("theorem9", 9).map_err(|e| e.to_string())?;
    ensure(r.passed, r.log.join("; "))?;
    Ok(r.log.last().cloned().unwrap_or_default())
}

/// Criterion 9: periods of the Dynkin birational maps.
fn dynkin() -> Outcome {
    let a2 = dynkin_period_check(&Quiver::a_n(2), 5, 30, 17).map_err(|e| e.to_string())?;
    ensure(a2.period == 5 && a2.points >= 5, format!("A_2: {a2:?}"))?;
    let a3 = dynkin_period_check(&Quiver::a_n(3), 5, 30, 17).map_err(|e| e.to_string())?;
    ensure(a3.period == 3 || a3.period == 6, format!("A_3: {a3:?}"))?;
    let again = dynkin_period_check(&Quiver::a_n(3), 5, 30, 17).map_err(|e| e.to_string())?;
    ensure(again == a3, "not deterministic")?;
    Ok(format!("A_2 -> {}, A_3 -> {}", a2.period, a3.period))
}

/// Criterion 10: mutation at sinks and arrow counts of mutated quivers.
fn mutation() -> Outcome {
    for (label, q) in [("A_2", Quiver::a_n(2)), ("A_3", Quiver::a_n(3))] {
        let q = Arc::new(q);
        let sink = (0..q.rank())
            .find(|&i| (0..q.rank()).all(|j| q.count(i, j) == 0))
            .ok_or("no sink")?;
        let (z, z2) = mutation_charges(&q, sink, 5).map_err(|e| e.to_string())?;
        let cmp = mutation_dt_compare(q.clone(), &q.vertices()[sink], &z, &z2, 5).map_err(|e| e.to_string())?;
        ensure(cmp.agrees(), format!("{label}: {:?}", cmp.mismatches))?;
    }
    let a2 = Quiver::a_n(2).mutate("2").map_err(|e| e.to_string())?;
    ensure(a2.matrix() == [vec![0, 1], vec![0, 0]], format!("A_2: {:?}", a2.matrix()))?;
    let t = Quiver::triangle().mutate("1").map_err(|e| e.to_string())?;
    ensure(
        t.matrix() == [vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 0]],
        format!("triangle: {:?}", t.matrix()),
    )?;
    Ok("A_2 and A_3 sink mutations agree at N = 5; arrow counts match".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("pentagon identity", pentagon),
        ("Q_0 closed form", q0_closed_form),
        ("δ tables of P_d", delta_tables),
        ("classical-limit equation", classical_equation),
        ("Laurent A^(γ) and Reineke system", laurent_and_reineke),
        ("MacMahon series", macmahon),
        ("COHA algebra suite", coha_suite),
        ("twist invariance of admissibility", twist_invariance),
        ("Dynkin periodicity", dynkin),
        ("mutation comparison", mutation),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{t:.2?}]", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{t:.2?}]", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
