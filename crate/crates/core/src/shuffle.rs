//! The COHA of a quiver realized on symmetric polynomials, with the shuffle product.
//!
//! For `f1 ∈ H_{γ1}`, `f2 ∈ H_{γ2}` the product is the sum over shuffles of
//! `f1(x') f2(x'') ∏_{i,j} ∏ (x''_j − x'_i)^{a_ij} / ∏_i ∏ (x''_i − x'_i)`.
//!
//! The sum is evaluated in closed form. Writing `Δ_N = ∏_{a<b} (x_b − x_a)` per vertex
//! block, the shuffle sum equals `Alt(f1 f2 Δ' Δ'' K) / (n! m! Δ)`, with `K` the
//! numerator kernel. Expanding `f1`, `f2` in Schur functions turns every monomial of
//! the antisymmetrized numerator into a single Schur function of the full block (or
//! zero), so no rational functions ever appear. `K` is expanded on one side through
//! Pieri's rule (`e_k · s_ρ`), the other side is kept as explicit monomials.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::DimVector;
use crate::poly::MPoly;
use crate::quiver::Quiver;
use crate::symmetric::{
    add_vertical_strips, schur_combination_to_monomial, schur_to_monomial, sort_with_sign,
};

/// A polynomial in `x_{i,α}` (`1 <= α <= γ^i`) symmetric under `∏_i Sym_{γ^i}`.
///
/// Each `Sym_γ`-orbit of monomials is stored once, under its representative whose
/// exponents are weakly decreasing inside every vertex block; the stored coefficient
/// is the coefficient of each monomial of the orbit.
#[derive(Clone, PartialEq, Eq)]
pub struct SymPoly {
    gamma: DimVector,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

type SchurExpansion = BTreeMap<Vec<u32>, BigInt>;

impl SymPoly {
    pub fn zero(gamma: DimVector) -> Self {
        assert!(gamma.is_effective(), "dimension vectors are effective");
        SymPoly {
            gamma,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(gamma: DimVector, c: BigInt) -> Self {
        let n = gamma.total() as usize;
        let mut p = SymPoly::zero(gamma);
        if !c.is_zero() {
            p.terms.insert(vec![0; n], c);
        }
        p
    }

    pub fn one(gamma: DimVector) -> Self {
        SymPoly::constant(gamma, BigInt::one())
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, each standing for
    /// its whole orbit. Two entries of the same orbit must agree.
    pub fn from_orbits(
        gamma: DimVector,
        entries: impl IntoIterator<Item = (Vec<u32>, BigInt)>,
    ) -> Result<Self> {
        let mut p = SymPoly::zero(gamma);
        let n = p.nvars();
        for (e, c) in entries {
            if e.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: e.len(),
                });
            }
            let key = p.canonical(e);
            if c.is_zero() {
                continue;
            }
            match p.terms.get(&key) {
                Some(prev) if *prev != c => {
                    return Err(Error::Precondition(format!(
                        "orbit {key:?} listed with coefficients {prev} and {c}"
                    )))
                }
                _ => {
                    p.terms.insert(key, c);
                }
            }
        }
        Ok(p)
    }

    /// Converts a full polynomial, checking `Sym_γ`-invariance.
    pub fn from_mpoly(gamma: DimVector, poly: &MPoly) -> Result<Self> {
        let mut p = SymPoly::zero(gamma);
        if poly.nvars() != p.nvars() {
            return Err(Error::DimensionMismatch {
                expected: p.nvars(),
                found: poly.nvars(),
            });
        }
        for (e, c) in poly.terms() {
            let key = p.canonical(e.clone());
            if poly.coeff(&key) != *c {
                return Err(Error::Precondition("polynomial is not symmetric".into()));
            }
            p.terms.insert(key, c.clone());
        }
        Ok(p)
    }

    /// The full polynomial, all orbit members listed.
    pub fn to_mpoly(&self) -> MPoly {
        let mut out = MPoly::zero(self.nvars());
        for (e, c) in &self.terms {
            for m in self.orbit(e) {
                out.add_term(m, c.clone());
            }
        }
        out
    }

    pub fn gamma(&self) -> &DimVector {
        &self.gamma
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn nvars(&self) -> usize {
        self.gamma.total() as usize
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn blocks(&self) -> Vec<(usize, usize)> {
        blocks(&self.gamma)
    }

    fn canonical(&self, mut e: Vec<u32>) -> Vec<u32> {
        for (start, len) in self.blocks() {
            e[start..start + len].sort_unstable_by(|a, b| b.cmp(a));
        }
        e
    }

    fn orbit(&self, rep: &[u32]) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new()];
        for (start, len) in self.blocks() {
            let perms = distinct_permutations(&rep[start..start + len]);
            let mut next = Vec::with_capacity(out.len() * perms.len());
            for prefix in &out {
                for p in &perms {
                    let mut v = prefix.clone();
                    v.extend_from_slice(p);
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }

    pub fn add(&self, other: &SymPoly) -> Result<SymPoly> {
        if self.gamma != other.gamma {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                found: other.nvars(),
            });
        }
        let mut p = self.clone();
        for (e, c) in &other.terms {
            add_into(&mut p.terms, e.clone(), c.clone());
        }
        Ok(p)
    }

    pub fn scale(&self, c: &BigInt) -> SymPoly {
        let mut p = SymPoly::zero(self.gamma.clone());
        if !c.is_zero() {
            for (e, x) in &self.terms {
                p.terms.insert(e.clone(), x * c);
            }
        }
        p
    }

    pub fn neg(&self) -> SymPoly {
        self.scale(&-BigInt::one())
    }

    /// Polynomial degree of a homogeneous element.
    pub fn degree(&self) -> Result<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let d = degs.next().ok_or(Error::ZeroPolynomial)?;
        if degs.any(|x| x != d) {
            return Err(Error::NotHomogeneous);
        }
        Ok(d)
    }

    /// Coefficients in the basis `∏_i s_{λ_i}(x_{i,·})`, keyed by the concatenated
    /// partitions.
    pub fn to_schur(&self) -> SchurBasis {
        let blocks = self.blocks();
        let mut rest = self.terms.clone();
        let mut out = BTreeMap::new();
        while let Some((lead, c)) = rest.pop_last() {
            for (e, k) in schur_product_terms(&blocks, &lead) {
                if e != lead {
                    add_into(&mut rest, e, -(&c * k));
                }
            }
            out.insert(lead, c);
        }
        SchurBasis {
            gamma: self.gamma.clone(),
            coeffs: out,
        }
    }
}

/// A symmetric polynomial written in products of Schur polynomials, one per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchurBasis {
    pub gamma: DimVector,
    pub coeffs: BTreeMap<Vec<u32>, BigInt>,
}

impl SchurBasis {
    pub fn to_sympoly(&self) -> SymPoly {
        from_schur(&self.gamma, &self.coeffs)
    }
}

fn from_schur(gamma: &DimVector, coeffs: &SchurExpansion) -> SymPoly {
    // Expand one vertex block at a time: group by (blocks already expanded, blocks
    // still in Schur form), expand the current block's combination, recombine.
    let mut current: HashMap<(Vec<u32>, Vec<u32>), BigInt> = coeffs
        .iter()
        .map(|(l, c)| ((Vec::new(), l.clone()), c.clone()))
        .collect();
    for (_, len) in blocks(gamma) {
        let mut grouped: HashMap<(Vec<u32>, Vec<u32>), HashMap<Vec<u32>, BigInt>> = HashMap::new();
        for ((done, rest), c) in current {
            let (head, tail) = rest.split_at(len);
            grouped
                .entry((done, tail.to_vec()))
                .or_default()
                .insert(head.to_vec(), c);
        }
        current = HashMap::new();
        for ((done, tail), comb) in grouped {
            for (rep, c) in schur_combination_to_monomial(len, comb) {
                let mut d = done.clone();
                d.extend(rep);
                *current.entry((d, tail.clone())).or_insert_with(BigInt::zero) += c;
            }
        }
    }
    let mut p = SymPoly::zero(gamma.clone());
    for ((e, _), c) in current {
        add_into(&mut p.terms, e, c);
    }
    p
}

/// Monomial expansion of `∏_b s_{λ_b}` as `(orbit representative, coefficient)`.
fn schur_product_terms(blocks: &[(usize, usize)], lambda: &[u32]) -> Vec<(Vec<u32>, BigInt)> {
    let mut out: Vec<(Vec<u32>, BigInt)> = vec![(Vec::new(), BigInt::one())];
    for &(start, len) in blocks {
        let exp = schur_to_monomial(&lambda[start..start + len]);
        let mut next = Vec::with_capacity(out.len() * exp.len());
        for (prefix, c) in &out {
            for (mu, k) in exp.iter() {
                let mut v = prefix.clone();
                v.extend_from_slice(mu);
                next.push((v, c * k));
            }
        }
        out = next;
    }
    out
}

fn blocks(gamma: &DimVector) -> Vec<(usize, usize)> {
    let mut start = 0;
    gamma
        .0
        .iter()
        .map(|&g| {
            let b = (start, g as usize);
            start += g as usize;
            b
        })
        .collect()
}

fn add_into<K: Ord>(map: &mut BTreeMap<K, BigInt>, k: K, c: BigInt) {
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
    }
}

fn distinct_permutations(items: &[u32]) -> Vec<Vec<u32>> {
    let mut sorted = items.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    loop {
        out.push(sorted.clone());
        // next lexicographic permutation
        let n = sorted.len();
        if n < 2 {
            break;
        }
        let mut i = n - 1;
        while i > 0 && sorted[i - 1] >= sorted[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while sorted[j] <= sorted[i - 1] {
            j -= 1;
        }
        sorted.swap(i - 1, j);
        sorted[i..].reverse();
    }
    out
}

impl fmt::Debug for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymPoly{:?}{{", self.gamma)?;
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e:?}: {c}")?;
        }
        write!(f, "}}")
    }
}

/// An element of `H_γ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohaElement {
    pub gamma: DimVector,
    pub poly: SymPoly,
}

impl CohaElement {
    pub fn new(poly: SymPoly) -> Self {
        CohaElement {
            gamma: poly.gamma().clone(),
            poly,
        }
    }

    pub fn one(gamma: DimVector) -> Self {
        CohaElement::new(SymPoly::one(gamma))
    }

    /// The additive generator `x^i` of `H_{e_v} = Z[x]` at vertex `v`.
    pub fn generator(q: &Quiver, v: usize, i: u32) -> Self {
        let gamma = DimVector::unit(q.rank(), v);
        CohaElement::new(SymPoly::from_orbits(gamma, [(vec![i], BigInt::one())]).expect("one variable"))
    }

    /// `ψ_k` (odd `k = 2i+1`) in the COHA of `Q_0`, represented by `x^i`.
    pub fn psi(k: u32) -> Self {
        assert!(k % 2 == 1, "ψ_k has odd index");
        CohaElement::generator(&Quiver::loops(0), 0, (k - 1) / 2)
    }

    /// `φ_k` (even `k = 2i`) in the COHA of `Q_1`, represented by `x^i`.
    pub fn phi(k: u32) -> Self {
        assert!(k % 2 == 0, "φ_k has even index");
        CohaElement::generator(&Quiver::loops(1), 0, k / 2)
    }

    /// `ξ_i` at vertex 1 of `A_2`.
    pub fn xi(i: u32) -> Self {
        CohaElement::generator(&Quiver::a_n(2), 0, i)
    }

    /// `η_i` at vertex 2 of `A_2`.
    pub fn eta(i: u32) -> Self {
        CohaElement::generator(&Quiver::a_n(2), 1, i)
    }

    pub fn add(&self, other: &CohaElement) -> Result<CohaElement> {
        Ok(CohaElement::new(self.poly.add(&other.poly)?))
    }

    pub fn sub(&self, other: &CohaElement) -> Result<CohaElement> {
        Ok(CohaElement::new(self.poly.add(&other.poly.neg())?))
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

/// The shuffle product `f1 · f2`.
pub fn shuffle_product(q: &Quiver, f1: &CohaElement, f2: &CohaElement) -> Result<CohaElement> {
    q.check_dim(&f1.gamma)?;
    q.check_dim(&f2.gamma)?;
    let gamma = &f1.gamma + &f2.gamma;
    if f1.is_zero() || f2.is_zero() {
        return Ok(CohaElement::new(SymPoly::zero(gamma)));
    }
    let schur = shuffle_schur(q, &f1.poly, &f2.poly);
    Ok(CohaElement::new(from_schur(&gamma, &schur)))
}

/// One Pieri step: multiply by `∏_y (t − y)` or `∏_y (y − t)` over a tracked block,
/// where `t` is an explicit variable; expanded as `Σ_k ± e_k(y) t^{size−k}`.
struct Step {
    explicit_var: usize,
    block: usize,
    size: usize,
    t_minus_y: bool,
    /// Set on the last step touching `explicit_var`: the previous explicit variable of
    /// the same block, if any. From then on the partial product is symmetric in the
    /// finished variables of that block and only sorted exponent vectors are kept.
    closes: Option<Option<usize>>,
}

type State = (Vec<u32>, Vec<u32>);

/// Shuffle product in the Schur basis.
///
/// The kernel `K` is expanded with the smaller factor carried as Schur indices
/// (multiplied by `e_k` through Pieri's rule) and the larger side as explicit
/// exponents, reduced to sorted orbit representatives since `K` is symmetric there.
/// The explicit side is then alternated against the larger factor's Schur terms,
/// and a last alternation merges the two sides in every vertex block.
fn shuffle_schur(q: &Quiver, f1: &SymPoly, f2: &SymPoly) -> SchurExpansion {
    let rank = q.rank();
    let n: Vec<usize> = f1.gamma.0.iter().map(|&x| x as usize).collect();
    let m: Vec<usize> = f2.gamma.0.iter().map(|&x| x as usize).collect();
    let track_left = f1.gamma.total() < f2.gamma.total();
    let (tracked, explicit) = if track_left { (&n, &m) } else { (&m, &n) };
    let (tracked_poly, explicit_poly) = if track_left { (f1, f2) } else { (f2, f1) };
    let tracked_blocks = offsets(tracked);
    let explicit_blocks = offsets(explicit);
    let explicit_total: usize = explicit.iter().sum();

    let mut steps = Vec::new();
    for e_vertex in 0..rank {
        for beta in 0..explicit[e_vertex] {
            let var = explicit_blocks[e_vertex] + beta;
            let first = steps.len();
            for t_vertex in 0..rank {
                if tracked[t_vertex] == 0 {
                    continue;
                }
                // left tracked: factor (x''_{e_vertex} − x'_{t_vertex})^{a_{t e}}
                // right tracked: factor (x''_{t_vertex} − x'_{e_vertex})^{a_{e t}}
                let power = if track_left {
                    q.count(t_vertex, e_vertex)
                } else {
                    q.count(e_vertex, t_vertex)
                };
                for _ in 0..power {
                    steps.push(Step {
                        explicit_var: var,
                        block: t_vertex,
                        size: tracked[t_vertex],
                        t_minus_y: track_left,
                        closes: None,
                    });
                }
            }
            if steps.len() > first {
                steps.last_mut().expect("nonempty").closes = Some((beta > 0).then(|| var - 1));
            }
        }
    }

    let mut states: HashMap<State, BigInt> = tracked_poly
        .to_schur()
        .coeffs
        .into_iter()
        .map(|(rho, c)| ((rho, vec![0; explicit_total]), c))
        .collect();
    for step in &steps {
        states = apply_step(&states, step, &tracked_blocks);
        if let Some(Some(prev)) = step.closes {
            let v = step.explicit_var;
            states.retain(|(_, b), _| b[prev] >= b[v]);
        }
    }

    // Group by the tracked index; explicit alternants are interned and cached by B.
    let alternant = ExplicitAlternant::new(explicit, &explicit_poly.to_schur().coeffs);
    let mut sigmas: Vec<Vec<u32>> = Vec::new();
    let mut sigma_ids: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut cache: HashMap<Vec<u32>, Vec<(usize, BigInt)>> = HashMap::new();
    let mut by_rho: HashMap<Vec<u32>, Vec<(Vec<u32>, BigInt)>> = HashMap::new();
    for ((rho, b), c) in states {
        by_rho.entry(rho).or_default().push((b, c));
    }
    let global_sign_odd = (0..rank).map(|i| n[i] * m[i]).sum::<usize>() % 2 == 1;
    let mut out = BTreeMap::new();
    let mut dense: Vec<BigInt> = Vec::new();
    for (rho, entries) in by_rho {
        for (b, c) in entries {
            let h = cache.entry(b).or_insert_with_key(|b| {
                alternant
                    .eval(b)
                    .into_iter()
                    .map(|(sigma, d)| {
                        let next = sigmas.len();
                        let id = *sigma_ids.entry(sigma.clone()).or_insert(next);
                        if id == next {
                            sigmas.push(sigma);
                        }
                        (id, d)
                    })
                    .collect()
            });
            if dense.len() < sigmas.len() {
                dense.resize(sigmas.len(), BigInt::zero());
            }
            for (id, d) in h.iter() {
                dense[*id] += &c * d;
            }
        }
        for (id, c) in dense.iter_mut().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = std::mem::take(c);
            let sigma = &sigmas[id];
            let (left, right) = if track_left { (&rho, sigma) } else { (sigma, &rho) };
            if let Some((nu, sign)) = merge_blocks(&n, &m, left, right) {
                add_into(&mut out, nu, if (sign < 0) ^ global_sign_odd { -c } else { c });
            }
        }
    }
    out
}

/// `B ↦ Σ_π Σ_μ c_μ · alt(x^{μ+δ+πB})` for a fixed Schur expansion `Σ c_μ s_μ`, with
/// `π` running over the distinct rearrangements of `B` inside each block. The
/// result is written as `Σ ± a_{σ+δ}`.
struct ExplicitAlternant {
    sizes: Vec<usize>,
    /// `μ + δ` per block, with the coefficient
    shifted: Vec<(Vec<u32>, BigInt)>,
}

impl ExplicitAlternant {
    fn new(sizes: &[usize], terms: &SchurExpansion) -> Self {
        let delta = staircase(sizes);
        let shifted = terms
            .iter()
            .map(|(mu, c)| (mu.iter().zip(&delta).map(|(a, d)| a + d).collect(), c.clone()))
            .collect();
        ExplicitAlternant {
            sizes: sizes.to_vec(),
            shifted,
        }
    }

    fn eval(&self, b: &[u32]) -> Vec<(Vec<u32>, BigInt)> {
        let mut arrangements: Vec<Vec<u32>> = vec![Vec::new()];
        let mut start = 0;
        for &s in &self.sizes {
            let perms = distinct_permutations(&b[start..start + s]);
            arrangements = arrangements
                .iter()
                .flat_map(|prefix| {
                    perms.iter().map(move |p| {
                        let mut v = prefix.clone();
                        v.extend_from_slice(p);
                        v
                    })
                })
                .collect();
            start += s;
        }
        let mut acc: HashMap<Vec<u32>, BigInt> = HashMap::new();
        let mut kappa = vec![0u32; b.len()];
        for arr in &arrangements {
            'terms: for (e, c) in &self.shifted {
                for k in 0..kappa.len() {
                    kappa[k] = e[k] + arr[k];
                }
                let mut sign = 1i8;
                let mut start = 0;
                for &s in &self.sizes {
                    match sort_with_sign(&mut kappa[start..start + s]) {
                        Some(x) => sign *= x,
                        None => continue 'terms,
                    }
                    start += s;
                }
                let entry = acc.entry(kappa.clone()).or_insert_with(BigInt::zero);
                if sign < 0 {
                    *entry -= c;
                } else {
                    *entry += c;
                }
            }
        }
        let delta = staircase(&self.sizes);
        acc.into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k.iter().zip(&delta).map(|(a, d)| a - d).collect(), c))
            .collect()
    }
}

/// `δ` per block: `(s−1, …, 1, 0)` for a block of size `s`.
fn staircase(sizes: &[usize]) -> Vec<u32> {
    sizes
        .iter()
        .flat_map(|&s| (0..s).map(move |k| (s - 1 - k) as u32))
        .collect()
}

fn offsets(sizes: &[usize]) -> Vec<usize> {
    let mut acc = 0;
    sizes
        .iter()
        .map(|&s| {
            let o = acc;
            acc += s;
            o
        })
        .collect()
}

fn apply_step(
    states: &HashMap<State, BigInt>,
    step: &Step,
    tracked_blocks: &[usize],
) -> HashMap<State, BigInt> {
    let mut next: HashMap<State, BigInt> = HashMap::with_capacity(states.len() * 2);
    let start = tracked_blocks[step.block];
    let len = step.size;
    for ((rho, b), c) in states {
        let block = &rho[start..start + len];
        for k in 0..=len {
            let odd = if step.t_minus_y { k % 2 == 1 } else { (len - k) % 2 == 1 };
            let coeff = if odd { -c.clone() } else { c.clone() };
            let mut b2 = b.clone();
            b2[step.explicit_var] += (len - k) as u32;
            for strip in add_vertical_strips(block, k) {
                let mut rho2 = rho.clone();
                rho2[start..start + len].copy_from_slice(&strip);
                *next.entry((rho2, b2.clone())).or_insert_with(BigInt::zero) += &coeff;
            }
        }
    }
    next.retain(|_, c| !c.is_zero());
    next
}

/// Turns `x'^{λ+δ} x''^{μ+δ}` (per vertex block) into `± s_ν` of the merged blocks,
/// or `None` when the alternant vanishes.
fn merge_blocks(n: &[usize], m: &[usize], lambda: &[u32], mu: &[u32]) -> Option<(Vec<u32>, i8)> {
    let mut nu = Vec::with_capacity(lambda.len() + mu.len());
    let mut sign = 1i8;
    let (mut lo, mut ro) = (0usize, 0usize);
    for (&ni, &mi) in n.iter().zip(m) {
        let total = ni + mi;
        let mut kappa = Vec::with_capacity(total);
        kappa.extend((0..ni).map(|a| lambda[lo + a] + (ni - 1 - a) as u32));
        kappa.extend((0..mi).map(|b| mu[ro + b] + (mi - 1 - b) as u32));
        sign *= sort_with_sign(&mut kappa)?;
        nu.extend(kappa.iter().enumerate().map(|(k, x)| x - (total - 1 - k) as u32));
        lo += ni;
        ro += mi;
    }
    Some((nu, sign))
}

/// The sign `(−1)^{ψ(γ1,γ2)}` of the twisted product, `ψ(γ1,γ2) = Σ_{i>j} γ1^i γ2^j β(e_i,e_j)`.
pub fn twist_sign(q: &Quiver, g1: &DimVector, g2: &DimVector) -> Result<i8> {
    if !q.is_symmetric() {
        return Err(Error::NonSymmetricQuiver);
    }
    let n = q.rank();
    let eps: Vec<i64> = (0..n)
        .map(|i| {
            let e = DimVector::unit(n, i);
            q.chi(&e, &e).rem_euclid(2)
        })
        .collect();
    let mut psi = 0i64;
    for i in 0..n {
        for j in 0..i {
            let beta = (q.chi(&DimVector::unit(n, i), &DimVector::unit(n, j)) + eps[i] * eps[j]).rem_euclid(2);
            psi += g1.0[i] * g2.0[j] * beta;
        }
    }
    Ok(if psi.rem_euclid(2) == 0 { 1 } else { -1 })
}

/// The sign-twisted product `f1 ⋆ f2 = (−1)^{ψ(γ1,γ2)} f1 · f2` of a symmetric quiver.
pub fn star_product(q: &Quiver, f1: &CohaElement, f2: &CohaElement) -> Result<CohaElement> {
    let sign = twist_sign(q, &f1.gamma, &f2.gamma)?;
    let p = shuffle_product(q, f1, f2)?;
    Ok(if sign < 0 { CohaElement::new(p.poly.neg()) } else { p })
}

/// Bidegree data of a homogeneous element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bidegree {
    pub gamma: DimVector,
    /// cohomological degree `2·deg`
    pub raw: i64,
    /// `raw + χ(γ,γ)`
    pub shifted: i64,
}

pub fn bidegree(q: &Quiver, f: &CohaElement) -> Result<Bidegree> {
    q.check_dim(&f.gamma)?;
    let raw = 2 * f.poly.degree()? as i64;
    Ok(Bidegree {
        gamma: f.gamma.clone(),
        raw,
        shifted: raw + q.chi(&f.gamma, &f.gamma),
    })
}

/// Schur polynomial `s_λ(x_1..x_n)` from the bialternant `a_{λ+δ}/a_δ`, computed by
/// exact division by every `x_a − x_b`.
pub fn schur_polynomial(lambda: &[u32], n: usize) -> Result<SymPoly> {
    if lambda.len() > n {
        return Err(Error::Precondition(format!("partition {lambda:?} has more than {n} parts")));
    }
    let mut parts = lambda.to_vec();
    parts.resize(n, 0);
    if !crate::symmetric::is_partition(&parts) {
        return Err(Error::Precondition(format!("{lambda:?} is not a partition")));
    }
    let exps: Vec<u32> = (0..n).map(|k| parts[k] + (n - 1 - k) as u32).collect();
    let mut alt = MPoly::zero(n);
    for (perm, sign) in signed_permutations(n) {
        let e: Vec<u32> = (0..n).map(|k| exps[perm[k]]).collect();
        alt.add_term(e, BigInt::from(sign));
    }
    // a_δ = ∏_{a<b} (x_a − x_b) = (−1)^{n(n−1)/2} ∏_{a<b} (x_b − x_a)
    for a in 0..n {
        for b in a + 1..n {
            alt = alt.div_binomial(b, a)?;
        }
    }
    if (n * n.saturating_sub(1) / 2) % 2 == 1 {
        alt = -&alt;
    }
    SymPoly::from_mpoly(DimVector(vec![n as i64]), &alt)
}

/// All permutations of `0..n` with their signs.
pub fn signed_permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    fn rec(k: usize, perm: &mut Vec<usize>, sign: i64, out: &mut Vec<(Vec<usize>, i64)>) {
        if k == perm.len() {
            out.push((perm.clone(), sign));
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            rec(k + 1, perm, if i == k { sign } else { -sign }, out);
            perm.swap(k, i);
        }
    }
    rec(0, &mut perm, 1, &mut out);
    out
}

/// Dimension of the degree-`k` part of `H_γ`: the number of orbit representatives,
/// i.e. tuples of partitions with at most `γ^i` parts and total size `k`.
pub fn graded_dimension(gamma: &DimVector, k: u32) -> u64 {
    // partitions of k into at most n parts, convolved across vertices
    let mut acc = vec![0u64; k as usize + 1];
    acc[0] = 1;
    for &g in &gamma.0 {
        let p = partitions_at_most(g as usize, k as usize);
        let mut next = vec![0u64; k as usize + 1];
        for (i, &a) in acc.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in p.iter().enumerate() {
                if i + j <= k as usize {
                    next[i + j] += a * b;
                }
            }
        }
        acc = next;
    }
    acc[k as usize]
}

/// `p[j]` = number of partitions of `j` into at most `n` parts.
fn partitions_at_most(n: usize, max: usize) -> Vec<u64> {
    // parts of size at most n (conjugation)
    let mut p = vec![0u64; max + 1];
    p[0] = 1;
    for part in 1..=n {
        for j in part..=max {
            p[j] += p[j - part];
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn poly1(n: usize, entries: &[(&[u32], i64)]) -> CohaElement {
        CohaElement::new(
            SymPoly::from_orbits(
                DimVector(vec![n as i64]),
                entries.iter().map(|(e, c)| (e.to_vec(), b(*c))),
            )
            .unwrap(),
        )
    }

    #[test]
    fn exterior_algebra_of_q0() {
        let q0 = Quiver::loops(0);
        let one = poly1(1, &[(&[0], 1)]);
        let x = poly1(1, &[(&[1], 1)]);
        assert!(shuffle_product(&q0, &one, &one).unwrap().is_zero());
        assert_eq!(shuffle_product(&q0, &one, &x).unwrap(), poly1(2, &[(&[0, 0], 1)]));
        assert_eq!(shuffle_product(&q0, &x, &one).unwrap(), poly1(2, &[(&[0, 0], -1)]));
    }

    #[test]
    fn polynomial_algebra_of_q1() {
        let q1 = Quiver::loops(1);
        let one = poly1(1, &[(&[0], 1)]);
        assert_eq!(shuffle_product(&q1, &one, &one).unwrap(), poly1(2, &[(&[0, 0], 2)]));
    }

    #[test]
    fn a2_relation() {
        let a2 = Quiver::a_n(2);
        for i in 0..3 {
            for j in 0..3 {
                let lhs = shuffle_product(&a2, &CohaElement::eta(i), &CohaElement::xi(j)).unwrap();
                let r1 = shuffle_product(&a2, &CohaElement::xi(j + 1), &CohaElement::eta(i)).unwrap();
                let r2 = shuffle_product(&a2, &CohaElement::xi(j), &CohaElement::eta(i + 1)).unwrap();
                assert_eq!(lhs, r1.sub(&r2).unwrap(), "i={i} j={j}");
            }
        }
    }

    #[test]
    fn schur_round_trip() {
        let p = SymPoly::from_orbits(
            DimVector(vec![2, 1]),
            [(vec![2, 0, 1], b(3)), (vec![1, 1, 0], b(-1)), (vec![0, 0, 4], b(2))],
        )
        .unwrap();
        assert_eq!(p.to_schur().to_sympoly(), p);
    }

    #[test]
    fn schur_polynomial_examples() {
        assert_eq!(schur_polynomial(&[], 3).unwrap(), SymPoly::one(DimVector(vec![3])));
        assert_eq!(schur_polynomial(&[1], 2).unwrap(), poly1(2, &[(&[1, 0], 1)]).poly);
        assert_eq!(schur_polynomial(&[2, 1], 2).unwrap(), poly1(2, &[(&[2, 1], 1)]).poly);
        assert_eq!(
            schur_polynomial(&[2, 1], 3).unwrap(),
            poly1(3, &[(&[2, 1, 0], 1), (&[1, 1, 1], 2)]).poly
        );
    }

    #[test]
    fn bidegrees() {
        let q0 = Quiver::loops(0);
        let bd = bidegree(&q0, &CohaElement::psi(3)).unwrap();
        assert_eq!((bd.raw, bd.shifted), (2, 3));
        let q2 = Quiver::loops(2);
        let bd = bidegree(&q2, &CohaElement::one(DimVector(vec![3]))).unwrap();
        assert_eq!(bd.shifted, -9);
        assert_eq!(
            bidegree(&q0, &CohaElement::new(SymPoly::zero(DimVector(vec![1])))),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn star_signs() {
        assert!(star_product(&Quiver::a_n(2), &CohaElement::xi(0), &CohaElement::eta(0)).is_err());
        let q1 = Quiver::loops(1);
        let f = CohaElement::phi(2);
        assert_eq!(
            star_product(&q1, &f, &f).unwrap(),
            shuffle_product(&q1, &f, &f).unwrap()
        );
    }

    #[test]
    fn graded_dimensions() {
        assert_eq!(graded_dimension(&DimVector(vec![2]), 4), 3);
        assert_eq!(graded_dimension(&DimVector(vec![1, 1]), 2), 3);
        assert_eq!(graded_dimension(&DimVector(vec![0]), 0), 1);
    }
}
