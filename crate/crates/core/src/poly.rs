//! Sparse multivariate polynomials with integer coefficients and exact division by
//! linear binomials `x_b − x_a`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = MPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        MPoly::constant(nvars, BigInt::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        MPoly::monomial(nvars, {
            let mut e = vec![0; nvars];
            e[i] = 1;
            e
        })
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>) -> Self {
        let mut p = MPoly::zero(nvars);
        p.add_term(exps, BigInt::one());
        p
    }

    /// `x_b − x_a`.
    pub fn binomial(nvars: usize, b: usize, a: usize) -> Self {
        &MPoly::var(nvars, b) - &MPoly::var(nvars, a)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: BigInt) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut p = MPoly::zero(self.nvars);
        for (e, x) in &self.terms {
            p.add_term(e.clone(), x * c);
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = MPoly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Renames variable `i` to `map[i]` in a polynomial over `target_nvars` variables.
    pub fn remap(&self, map: &[usize], target_nvars: usize) -> Self {
        let mut p = MPoly::zero(target_nvars);
        for (e, c) in &self.terms {
            let mut f = vec![0; target_nvars];
            for (i, &x) in e.iter().enumerate() {
                f[map[i]] += x;
            }
            p.add_term(f, c.clone());
        }
        p
    }

    /// Exact quotient by `x_b − x_a`, by synthetic division in `x_b`.
    pub fn div_binomial(&self, b: usize, a: usize) -> Result<Self> {
        assert_ne!(a, b);
        // group by the exponent of x_b: p = Σ_k p_k x_b^k
        let mut layers: BTreeMap<u32, MPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let k = rest[b];
            rest[b] = 0;
            layers
                .entry(k)
                .or_insert_with(|| MPoly::zero(self.nvars))
                .add_term(rest, c.clone());
        }
        let Some(&top) = layers.keys().next_back() else {
            return Ok(MPoly::zero(self.nvars));
        };
        let xa = MPoly::var(self.nvars, a);
        // r_{k−1} = p_k + x_a r_k, remainder p_0 + x_a r_0
        let mut quotient = MPoly::zero(self.nvars);
        let mut carry = MPoly::zero(self.nvars);
        for k in (0..=top).rev() {
            let pk = layers.remove(&k).unwrap_or_else(|| MPoly::zero(self.nvars));
            let r = &pk + &(&xa * &carry);
            if k == 0 {
                if !r.is_zero() {
                    return Err(Error::ExactDivision(format!("x{b} - x{a} does not divide")));
                }
                break;
            }
            for (e, c) in &r.terms {
                let mut f = e.clone();
                f[b] += k - 1;
                quotient.add_term(f, c.clone());
            }
            carry = r;
        }
        Ok(quotient)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-BigInt::one())
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self + &(-rhs)
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut p = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1 * c2);
            }
        }
        p
    }
}
