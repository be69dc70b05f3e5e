//! Partition combinatorics: Kostka numbers, Schur-to-monomial expansion and Pieri strips.
//!
//! Partitions are stored with a fixed number of parts (the number of variables),
//! weakly decreasing and padded with zeros.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type Partition = Vec<u32>;

thread_local! {
    static KOSTKA: RefCell<HashMap<(Partition, Partition), BigInt>> = RefCell::new(HashMap::new());
    static EXPANSIONS: RefCell<HashMap<Partition, std::rc::Rc<Vec<(Partition, BigInt)>>>> =
        RefCell::new(HashMap::new());
}

pub fn is_partition(p: &[u32]) -> bool {
    p.windows(2).all(|w| w[0] >= w[1])
}

pub fn size(p: &[u32]) -> u32 {
    p.iter().sum()
}

/// `λ ⊵ μ` in dominance order (both of the same size and length).
pub fn dominates(lambda: &[u32], mu: &[u32]) -> bool {
    let (mut a, mut b) = (0u32, 0u32);
    for (x, y) in lambda.iter().zip(mu) {
        a += x;
        b += y;
        if a < b {
            return false;
        }
    }
    true
}

/// All `ν ⊆ λ` with `λ/ν` a horizontal strip of size `s`.
fn remove_horizontal_strips(lambda: &[u32], s: u32) -> Vec<Partition> {
    let n = lambda.len();
    let mut out = Vec::new();
    let mut cur = lambda.to_vec();
    fn rec(i: usize, left: u32, lambda: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        let n = lambda.len();
        if i == n {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let floor = if i + 1 < n { lambda[i + 1] } else { 0 };
        let max_take = (lambda[i] - floor).min(left);
        // the remaining rows can absorb at most this much
        let rest_cap: u32 = (i + 1..n)
            .map(|k| lambda[k] - if k + 1 < n { lambda[k + 1] } else { 0 })
            .sum();
        for take in 0..=max_take {
            if left - take > rest_cap {
                continue;
            }
            cur[i] = lambda[i] - take;
            rec(i + 1, left - take, lambda, cur, out);
        }
        cur[i] = lambda[i];
    }
    if n == 0 {
        if s == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, s, lambda, &mut cur, &mut out);
    out
}

/// Kostka number `K_{λμ}`: the number of semistandard tableaux of shape `λ` and
/// content `μ`. Both are given with the same number of parts; `μ` must be a partition.
pub fn kostka(lambda: &[u32], mu: &[u32]) -> BigInt {
    assert_eq!(lambda.len(), mu.len());
    if size(lambda) != size(mu) || !dominates(lambda, mu) {
        return BigInt::zero();
    }
    kostka_rec(lambda, mu)
}

fn kostka_rec(lambda: &[u32], mu: &[u32]) -> BigInt {
    let k = mu.len();
    if k == 0 {
        return if lambda.iter().all(|&x| x == 0) { BigInt::one() } else { BigInt::zero() };
    }
    if lambda[k..].iter().any(|&x| x != 0) {
        return BigInt::zero();
    }
    if k == 1 {
        return BigInt::one();
    }
    let key = (lambda[..k].to_vec(), mu.to_vec());
    if let Some(v) = KOSTKA.with(|c| c.borrow().get(&key).cloned()) {
        return v;
    }
    let mut total = BigInt::zero();
    let last = mu[k - 1];
    for nu in remove_horizontal_strips(&lambda[..k], last) {
        if nu[k - 1] != 0 {
            continue;
        }
        total += kostka_rec(&nu[..k - 1], &mu[..k - 1]);
    }
    KOSTKA.with(|c| c.borrow_mut().insert(key, total.clone()));
    total
}

/// Partitions of `total` with `n` parts (zeros allowed) dominated by `bound`.
pub fn dominated_partitions(bound: &[u32]) -> Vec<Partition> {
    let n = bound.len();
    let total = size(bound);
    let prefix: Vec<u32> = bound
        .iter()
        .scan(0, |s, &x| {
            *s += x;
            Some(*s)
        })
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(
        i: usize,
        max_part: u32,
        used: u32,
        total: u32,
        prefix: &[u32],
        cur: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        let n = prefix.len();
        if i == n {
            if used == total {
                out.push(cur.clone());
            }
            return;
        }
        let left = total - used;
        let slots = (n - i) as u32;
        let hi = max_part.min(left).min(prefix[i] - used);
        // each remaining part is at most the current one
        let lo = left.div_ceil(slots);
        if lo > hi {
            return;
        }
        for x in (lo..=hi).rev() {
            cur.push(x);
            rec(i + 1, x, used + x, total, prefix, cur, out);
            cur.pop();
        }
    }
    if n == 0 {
        return vec![Vec::new()];
    }
    rec(0, bound[0], 0, total, &prefix, &mut cur, &mut out);
    out
}

/// `s_λ(x_1..x_n) = Σ_μ K_{λμ} m_μ`, with `n = λ.len()`.
///
/// Built by branching: `s_λ(x_1..x_n) = Σ_μ s_μ(x_1..x_{n−1}) x_n^{|λ/μ|}` over
/// horizontal strips, keeping only weakly decreasing exponent vectors.
pub fn schur_to_monomial(lambda: &[u32]) -> std::rc::Rc<Vec<(Partition, BigInt)>> {
    if let Some(v) = EXPANSIONS.with(|c| c.borrow().get(lambda).cloned()) {
        return v;
    }
    let n = lambda.len();
    let terms: Vec<(Partition, BigInt)> = if n <= 1 {
        vec![(lambda.to_vec(), BigInt::one())]
    } else {
        let total = size(lambda);
        let mut acc: std::collections::BTreeMap<Partition, BigInt> = Default::default();
        for mu in interlacing(lambda) {
            let k = total - size(&mu);
            for (rep, c) in schur_to_monomial(&mu).iter() {
                if rep[n - 2] < k {
                    continue;
                }
                let mut e = rep.clone();
                e.push(k);
                *acc.entry(e).or_insert_with(BigInt::zero) += c;
            }
        }
        // leading term first, matching dominance order
        acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect()
    };
    let rc = std::rc::Rc::new(terms);
    EXPANSIONS.with(|c| c.borrow_mut().insert(lambda.to_vec(), rc.clone()));
    rc
}

/// Monomial expansion of `Σ c_λ s_λ(x_1..x_n)` (all `λ` with `n` parts), as sorted
/// exponent vectors. The branching rule is applied to the whole combination at once,
/// so equal intermediate partitions are merged before descending.
pub fn schur_combination_to_monomial(
    n: usize,
    comb: HashMap<Partition, BigInt>,
) -> Vec<(Partition, BigInt)> {
    let mut out = Vec::new();
    expand_combination(n, comb, 0, &mut Vec::new(), &mut out);
    out
}

/// Appends `(rep ++ suffix, c)` for the monomials of `comb` whose exponents are all
/// at least `lower`; `suffix` holds the exponents of the variables already split off,
/// stored in reverse.
fn expand_combination(
    n: usize,
    comb: HashMap<Partition, BigInt>,
    lower: u32,
    suffix: &mut Vec<u32>,
    out: &mut Vec<(Partition, BigInt)>,
) {
    if n == 0 {
        for (_, c) in comb {
            if !c.is_zero() {
                out.push((suffix.iter().rev().copied().collect(), c));
            }
        }
        return;
    }
    if n == 1 {
        for (mu, c) in comb {
            if mu[0] >= lower && !c.is_zero() {
                let mut e = vec![mu[0]];
                e.extend(suffix.iter().rev());
                out.push((e, c));
            }
        }
        return;
    }
    let mut groups: std::collections::BTreeMap<u32, HashMap<Partition, BigInt>> = Default::default();
    for (nu, c) in comb {
        if c.is_zero() {
            continue;
        }
        let total = size(&nu);
        for mu in interlacing(&nu) {
            let k = total - size(&mu);
            if k < lower || size(&mu) < k * (n as u32 - 1) {
                continue;
            }
            *groups.entry(k).or_default().entry(mu).or_insert_with(BigInt::zero) += &c;
        }
    }
    for (k, g) in groups {
        suffix.push(k);
        expand_combination(n - 1, g, k, suffix, out);
        suffix.pop();
    }
}

/// Partitions `μ` with `n − 1` parts and `λ_{i+1} <= μ_i <= λ_i`.
fn interlacing(lambda: &[u32]) -> Vec<Partition> {
    let n = lambda.len();
    let mut out = vec![Vec::with_capacity(n - 1)];
    for i in 0..n - 1 {
        out = out
            .into_iter()
            .flat_map(|p: Partition| {
                (lambda[i + 1]..=lambda[i]).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// All `ν ⊇ ρ` with `ν/ρ` a vertical strip of size `j` and at most `ρ.len()` rows.
pub fn add_vertical_strips(rho: &[u32], j: usize) -> Vec<Partition> {
    let n = rho.len();
    let mut out = Vec::new();
    if j > n {
        return out;
    }
    let mut cur = rho.to_vec();
    fn rec(i: usize, left: usize, rho: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        let n = rho.len();
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        if i == n || n - i < left {
            return;
        }
        // add a box to row i if the result stays a partition: row i−1 (already final)
        // must be at least rho[i]+1
        if i == 0 || cur[i - 1] > rho[i] {
            cur[i] += 1;
            rec(i + 1, left - 1, rho, cur, out);
            cur[i] -= 1;
        }
        rec(i + 1, left, rho, cur, out);
    }
    rec(0, j, rho, &mut cur, &mut out);
    out
}

/// Sorts `κ` decreasingly. Returns the sign of the sorting permutation, or `None`
/// when two entries coincide (the alternant vanishes).
pub fn sort_with_sign(kappa: &mut [u32]) -> Option<i8> {
    let mut sign = 1i8;
    // insertion sort, counting transpositions
    for i in 1..kappa.len() {
        let mut k = i;
        while k > 0 && kappa[k - 1] < kappa[k] {
            kappa.swap(k - 1, k);
            sign = -sign;
            k -= 1;
        }
        if k > 0 && kappa[k - 1] == kappa[k] {
            return None;
        }
    }
    if kappa.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(sign)
}
