//! Shared oracles for the integration tests.
#![allow(dead_code)]

use coha::poly::MPoly;
use coha::{CohaElement, DimVector, Quiver, SymPoly};
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Shuffle product evaluated term by term: every shuffle contributes
/// `±f1 f2 K Δ(x_P) Δ(x_P^c)` over the common denominator `∏_{a<b} (x_b − x_a)`,
/// which is divided out at the end.
pub fn literal_shuffle(q: &Quiver, f1: &CohaElement, f2: &CohaElement) -> CohaElement {
    let n: Vec<usize> = f1.gamma.0.iter().map(|&x| x as usize).collect();
    let m: Vec<usize> = f2.gamma.0.iter().map(|&x| x as usize).collect();
    let rank = n.len();
    let big: Vec<usize> = (0..rank).map(|i| n[i] + m[i]).collect();
    let offs: Vec<usize> = big.iter().scan(0, |s, &x| { let o = *s; *s += x; Some(o) }).collect();
    let total: usize = big.iter().sum();
    let p1 = f1.poly.to_mpoly();
    let p2 = f2.poly.to_mpoly();

    let per_vertex: Vec<Vec<Vec<usize>>> = (0..rank).map(|i| subsets(big[i], n[i])).collect();
    let mut acc = MPoly::zero(total);
    let mut choice = vec![0usize; rank];
    loop {
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut left_by: Vec<Vec<usize>> = Vec::new();
        let mut right_by: Vec<Vec<usize>> = Vec::new();
        let mut inv = 0usize;
        for i in 0..rank {
            let p = &per_vertex[i][choice[i]];
            let pc: Vec<usize> = (0..big[i]).filter(|x| !p.contains(x)).collect();
            for &a in p {
                inv += pc.iter().filter(|&&b| b < a).count();
            }
            left_by.push(p.iter().map(|&x| offs[i] + x).collect());
            right_by.push(pc.iter().map(|&x| offs[i] + x).collect());
            left.extend(left_by[i].iter().copied());
            right.extend(right_by[i].iter().copied());
        }
        let mut term = &p1.remap(&left, total) * &p2.remap(&right, total);
        for i in 0..rank {
            for j in 0..rank {
                for _ in 0..q.count(i, j) {
                    for &a in &left_by[i] {
                        for &b in &right_by[j] {
                            term = &term * &MPoly::binomial(total, b, a);
                        }
                    }
                }
            }
            for set in [&left_by[i], &right_by[i]] {
                for (k, &a) in set.iter().enumerate() {
                    for &b in &set[k + 1..] {
                        term = &term * &MPoly::binomial(total, b, a);
                    }
                }
            }
        }
        if inv % 2 == 1 {
            term = -&term;
        }
        acc = &acc + &term;
        // next shuffle
        let mut k = 0;
        while k < rank {
            choice[k] += 1;
            if choice[k] < per_vertex[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if k == rank {
            break;
        }
    }
    for i in 0..rank {
        for a in 0..big[i] {
            for b in a + 1..big[i] {
                acc = acc.div_binomial(offs[i] + b, offs[i] + a).expect("exact division");
            }
        }
    }
    let gamma = &f1.gamma + &f2.gamma;
    CohaElement::new(SymPoly::from_mpoly(gamma, &acc).expect("symmetric result"))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == k {
            out.push((0..n).filter(|i| mask >> i & 1 == 1).collect());
        }
    }
    out
}

/// A random symmetric polynomial at `gamma`: a few orbits of degree at most `max_deg`
/// with small coefficients.
pub fn random_sympoly(rng: &mut ChaCha8Rng, gamma: &DimVector, max_deg: u32, terms: usize) -> SymPoly {
    let n = gamma.total() as usize;
    let mut entries = Vec::new();
    for _ in 0..terms {
        let mut e = vec![0u32; n];
        let mut budget = rng.gen_range(0..=max_deg);
        while budget > 0 && n > 0 {
            let k = rng.gen_range(0..n);
            e[k] += 1;
            budget -= 1;
        }
        let c: i64 = rng.gen_range(-3..=3);
        entries.push((e, BigInt::from(c)));
    }
    let mut p = SymPoly::zero(gamma.clone());
    for (e, c) in entries {
        let single = SymPoly::from_orbits(gamma.clone(), [(e, c)]).unwrap();
        p = p.add(&single).unwrap();
    }
    p
}

pub fn random_dim(rng: &mut ChaCha8Rng, rank: usize, max_total: i64) -> DimVector {
    loop {
        let v: Vec<i64> = (0..rank).map(|_| rng.gen_range(0..=max_total)).collect();
        let t: i64 = v.iter().sum();
        if t >= 1 && t <= max_total {
            return DimVector(v);
        }
    }
}
