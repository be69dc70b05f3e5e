//! Exact coefficients: Laurent polynomials in `v = q^{1/2}` and their localization
//! at the factors `1 − q^k`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A Laurent polynomial `Σ c_n v^n`, stored densely from the lowest exponent.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentQ {
    low: i64,
    coeffs: Vec<BigRational>,
}

impl LaurentQ {
    pub fn zero() -> Self {
        LaurentQ::default()
    }

    pub fn one() -> Self {
        LaurentQ::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        LaurentQ::monomial(c, 0)
    }

    /// `c · v^n`.
    pub fn monomial(c: BigRational, n: i64) -> Self {
        LaurentQ { low: n, coeffs: vec![c] }.trimmed()
    }

    /// `v^n`.
    pub fn v_pow(n: i64) -> Self {
        LaurentQ::monomial(BigRational::one(), n)
    }

    /// `(−v)^n`.
    pub fn minus_v_pow(n: i64) -> Self {
        let c = if n.rem_euclid(2) == 0 { 1 } else { -1 };
        LaurentQ::monomial(BigRational::from_integer(c.into()), n)
    }

    /// `q^n = v^{2n}`.
    pub fn q_pow(n: i64) -> Self {
        LaurentQ::v_pow(2 * n)
    }

    /// `1 − q^k`.
    pub fn one_minus_q(k: u32) -> Self {
        LaurentQ::one() - LaurentQ::q_pow(k as i64)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, BigRational)>) -> Self {
        let mut map: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_insert_with(BigRational::zero) += c;
        }
        let Some((&low, _)) = map.iter().next() else {
            return LaurentQ::zero();
        };
        let high = *map.keys().next_back().unwrap();
        let mut coeffs = vec![BigRational::zero(); (high - low + 1) as usize];
        for (e, c) in map {
            coeffs[(e - low) as usize] = c;
        }
        LaurentQ { low, coeffs }.trimmed()
    }

    pub fn from_int_terms(terms: &[(i64, i64)]) -> Self {
        LaurentQ::from_terms(terms.iter().map(|&(e, c)| (e, BigRational::from_integer(c.into()))))
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent of `v` (0 for the zero polynomial).
    pub fn low(&self) -> i64 {
        self.low
    }

    /// Highest exponent of `v` (`low − 1` for the zero polynomial).
    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, n: i64) -> BigRational {
        if n < self.low || n > self.high() {
            return BigRational::zero();
        }
        self.coeffs[(n - self.low) as usize].clone()
    }

    /// Nonzero terms `(exponent of v, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        let low = self.low;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (low + i as i64, c))
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return LaurentQ::zero();
        }
        LaurentQ {
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplication by `v^n`.
    pub fn shift(&self, n: i64) -> Self {
        if self.is_zero() {
            return LaurentQ::zero();
        }
        LaurentQ {
            low: self.low + n,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Substitution `v -> v^n` for `n >= 1`.
    pub fn adams(&self, n: u32) -> Self {
        assert!(n >= 1, "Adams operations are indexed by n >= 1");
        if n == 1 || self.is_zero() {
            return self.clone();
        }
        let n = n as i64;
        LaurentQ::from_terms(self.terms().map(|(e, c)| (e * n, c.clone())))
    }

    /// Substitution `v -> −v`.
    pub fn negate_v(&self) -> Self {
        LaurentQ::from_terms(self.terms().map(|(e, c)| {
            if e.rem_euclid(2) == 0 {
                (e, c.clone())
            } else {
                (e, -c.clone())
            }
        }))
    }

    /// Value at `v = 1`, the sum of the coefficients.
    pub fn euler_evaluate(&self) -> BigRational {
        self.coeffs.iter().fold(BigRational::zero(), |s, c| s + c)
    }

    /// Exact quotient by `1 − v^m` (`m >= 1`), if it exists.
    pub fn div_one_minus_v(&self, m: usize) -> Option<LaurentQ> {
        if self.is_zero() {
            return Some(LaurentQ::zero());
        }
        let n = self.coeffs.len();
        if n <= m {
            return None;
        }
        // p = (1 − v^m)·r  ⇔  r_i = p_i + r_{i−m}
        let mut r: Vec<BigRational> = Vec::with_capacity(n);
        for i in 0..n {
            let mut x = self.coeffs[i].clone();
            if i >= m {
                x += &r[i - m];
            }
            r.push(x);
        }
        if r[n - m..].iter().any(|c| !c.is_zero()) {
            return None;
        }
        r.truncate(n - m);
        Some(LaurentQ { low: self.low, coeffs: r }.trimmed())
    }

    /// Exact quotient by `1 − q^k`.
    pub fn div_one_minus_q(&self, k: u32) -> Option<LaurentQ> {
        self.div_one_minus_v(2 * k as usize)
    }

    /// Multiplication by `1 − q^k`.
    pub fn mul_one_minus_q(&self, k: u32) -> LaurentQ {
        self - &self.shift(2 * k as i64)
    }

    /// True iff all coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Drops every term with exponent of `v` above `max_exp`.
    pub fn truncate_above(&self, max_exp: i64) -> LaurentQ {
        if self.is_zero() || max_exp < self.low {
            return LaurentQ::zero();
        }
        let keep = ((max_exp - self.low + 1) as usize).min(self.coeffs.len());
        LaurentQ {
            low: self.low,
            coeffs: self.coeffs[..keep].to_vec(),
        }
        .trimmed()
    }
}

impl fmt::Debug for LaurentQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (abs.is_one(), e) {
                (_, 0) => write!(f, "{abs}")?,
                (true, 1) => write!(f, "v")?,
                (true, _) => write!(f, "v^{e}")?,
                (false, 1) => write!(f, "{abs}*v")?,
                (false, _) => write!(f, "{abs}*v^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add for &LaurentQ {
    type Output = LaurentQ;
    fn add(self, rhs: &LaurentQ) -> LaurentQ {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high().max(rhs.high());
        let mut coeffs = vec![BigRational::zero(); (high - low + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.low - low) as usize + i] += c;
        }
        LaurentQ { low, coeffs }.trimmed()
    }
}

impl Neg for &LaurentQ {
    type Output = LaurentQ;
    fn neg(self) -> LaurentQ {
        LaurentQ {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &LaurentQ {
    type Output = LaurentQ;
    fn sub(self, rhs: &LaurentQ) -> LaurentQ {
        self + &(-rhs)
    }
}

impl Mul for &LaurentQ {
    type Output = LaurentQ;
    fn mul(self, rhs: &LaurentQ) -> LaurentQ {
        if self.is_zero() || rhs.is_zero() {
            return LaurentQ::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        LaurentQ {
            low: self.low + rhs.low,
            coeffs,
        }
        .trimmed()
    }
}

macro_rules! forward_owned {
    ($t:ty, $tr:ident, $m:ident) => {
        impl $tr for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(LaurentQ, Add, add);
forward_owned!(LaurentQ, Sub, sub);
forward_owned!(LaurentQ, Mul, mul);

impl Neg for LaurentQ {
    type Output = LaurentQ;
    fn neg(self) -> LaurentQ {
        -&self
    }
}

/// `num / ∏_k (1 − q^k)^{den[k]}`.
///
/// Construction divides `num` by each denominator factor as long as the division is
/// exact. Since the representation is not unique in general, equality is decided by
/// cross-multiplication.
#[derive(Clone, Default)]
pub struct QRational {
    num: LaurentQ,
    den: BTreeMap<u32, u32>,
}

impl QRational {
    pub fn new(num: LaurentQ, den: BTreeMap<u32, u32>) -> Self {
        let mut r = QRational { num, den };
        r.den.retain(|&k, m| {
            assert!(k >= 1, "denominator factors are 1 - q^k with k >= 1");
            *m > 0
        });
        r.reduce();
        r
    }

    pub fn zero() -> Self {
        QRational::default()
    }

    pub fn one() -> Self {
        QRational::from_laurent(LaurentQ::one())
    }

    pub fn from_laurent(num: LaurentQ) -> Self {
        QRational {
            num,
            den: BTreeMap::new(),
        }
    }

    pub fn from_rational(c: BigRational) -> Self {
        QRational::from_laurent(LaurentQ::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        QRational::from_rational(BigRational::from_integer(c.into()))
    }

    /// `1 / ∏_{k=1}^{n} (1 − q^k)`, i.e. `1/(q;q)_n`.
    pub fn inv_q_factorial(n: u32) -> Self {
        QRational {
            num: LaurentQ::one(),
            den: (1..=n).map(|k| (k, 1)).collect(),
        }
    }

    pub fn num(&self) -> &LaurentQ {
        &self.num
    }

    pub fn den(&self) -> &BTreeMap<u32, u32> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        loop {
            let mut progress = false;
            let keys: Vec<u32> = self.den.keys().copied().collect();
            for k in keys {
                while let Some(m) = self.den.get(&k).copied() {
                    match self.num.div_one_minus_q(k) {
                        Some(quot) => {
                            self.num = quot;
                            progress = true;
                            if m == 1 {
                                self.den.remove(&k);
                            } else {
                                self.den.insert(k, m - 1);
                            }
                        }
                        None => break,
                    }
                }
            }
            if !progress || self.den.is_empty() {
                break;
            }
        }
    }

    /// Multiplies the denominator by `1 − q^k`.
    pub fn inv_den(&self, k: u32) -> Self {
        let mut den = self.den.clone();
        *den.entry(k).or_insert(0) += 1;
        QRational::new(self.num.clone(), den)
    }

    /// Numerator over the given denominator multiset, which must contain `self.den`.
    fn num_over(&self, den: &BTreeMap<u32, u32>) -> LaurentQ {
        let mut num = self.num.clone();
        for (&k, &m) in den {
            let have = self.den.get(&k).copied().unwrap_or(0);
            for _ in have..m {
                num = num.mul_one_minus_q(k);
            }
        }
        num
    }

    fn max_den(a: &BTreeMap<u32, u32>, b: &BTreeMap<u32, u32>) -> BTreeMap<u32, u32> {
        let mut out = a.clone();
        for (&k, &m) in b {
            let e = out.entry(k).or_insert(0);
            *e = (*e).max(m);
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return QRational::zero();
        }
        QRational {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_laurent(&self, p: &LaurentQ) -> Self {
        QRational::new(&self.num * p, self.den.clone())
    }

    /// Multiplication by `v^n`.
    pub fn shift(&self, n: i64) -> Self {
        QRational {
            num: self.num.shift(n),
            den: self.den.clone(),
        }
    }

    /// Multiplication by `(−v)^n`.
    pub fn mul_minus_v_pow(&self, n: i64) -> Self {
        let s = self.shift(n);
        if n.rem_euclid(2) == 1 {
            -&s
        } else {
            s
        }
    }

    /// Inverse of a unit `c·v^n / ∏(1−q^k)^{m_k}`; `None` if the numerator is not a monomial.
    pub fn inv(&self) -> Option<Self> {
        if !self.num.is_monomial() {
            return None;
        }
        let e = self.num.low();
        let c = self.num.coeff(e);
        let mut num = LaurentQ::monomial(c.recip(), -e);
        for (&k, &m) in &self.den {
            for _ in 0..m {
                num = num.mul_one_minus_q(k);
            }
        }
        Some(QRational::from_laurent(num))
    }

    /// Adams operation: `v -> v^n` and `(1 − q^k) -> (1 − q^{nk})`.
    pub fn adams(&self, n: u32) -> Self {
        if n == 1 {
            return self.clone();
        }
        let den = self.den.iter().map(|(&k, &m)| (k * n, m)).collect();
        QRational::new(self.num.adams(n), den)
    }

    /// Substitution `v -> −v`.
    pub fn negate_v(&self) -> Self {
        QRational {
            num: self.num.negate_v(),
            den: self.den.clone(),
        }
    }

    /// The numerator, when no denominator survives reduction.
    pub fn try_laurent(&self) -> Option<LaurentQ> {
        self.den.is_empty().then(|| self.num.clone())
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_empty()
    }

    /// Expansion in `v` keeping exponents `<= 2·precision` (i.e. up to `q^precision`).
    pub fn serre_specialize(&self, precision: u32) -> LaurentQ {
        let max_exp = 2 * precision as i64;
        let mut acc = self.num.truncate_above(max_exp);
        if acc.is_zero() {
            return acc;
        }
        for (&k, &m) in &self.den {
            let step = 2 * k as i64;
            // 1/(1 − q^k) = Σ_j q^{jk}, truncated relative to the current lowest term
            let reach = (max_exp - acc.low()).max(0) / step;
            let geo = LaurentQ::from_terms(
                (0..=reach).map(|j| (j * step, BigRational::one())),
            );
            for _ in 0..m {
                acc = (&acc * &geo).truncate_above(max_exp);
            }
        }
        acc
    }

}

impl PartialEq for QRational {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        let den = QRational::max_den(&self.den, &other.den);
        self.num_over(&den) == other.num_over(&den)
    }
}

impl Eq for QRational {}

impl fmt::Debug for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/(", self.num)?;
        for (i, (k, m)) in self.den.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            let base = if *k == 1 { "(1-q)".to_string() } else { format!("(1-q^{k})") };
            if *m == 1 {
                write!(f, "{base}")?;
            } else {
                write!(f, "{base}^{m}")?;
            }
        }
        write!(f, ")")
    }
}

impl Add for &QRational {
    type Output = QRational;
    fn add(self, rhs: &QRational) -> QRational {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return QRational::new(&self.num + &rhs.num, self.den.clone());
        }
        let den = QRational::max_den(&self.den, &rhs.den);
        let num = &self.num_over(&den) + &rhs.num_over(&den);
        QRational::new(num, den)
    }
}

impl Neg for &QRational {
    type Output = QRational;
    fn neg(self) -> QRational {
        QRational {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &QRational {
    type Output = QRational;
    fn sub(self, rhs: &QRational) -> QRational {
        self + &(-rhs)
    }
}

impl Mul for &QRational {
    type Output = QRational;
    fn mul(self, rhs: &QRational) -> QRational {
        if self.is_zero() || rhs.is_zero() {
            return QRational::zero();
        }
        if rhs.den.is_empty() && rhs.num.is_monomial() {
            let e = rhs.num.low();
            return self.shift(e).scale(&rhs.num.coeff(e));
        }
        if self.den.is_empty() && self.num.is_monomial() {
            let e = self.num.low();
            return rhs.shift(e).scale(&self.num.coeff(e));
        }
        let mut den = self.den.clone();
        for (&k, &m) in &rhs.den {
            *den.entry(k).or_insert(0) += m;
        }
        QRational::new(&self.num * &rhs.num, den)
    }
}

forward_owned!(QRational, Add, add);
forward_owned!(QRational, Sub, sub);
forward_owned!(QRational, Mul, mul);

impl Neg for QRational {
    type Output = QRational;
    fn neg(self) -> QRational {
        -&self
    }
}

impl From<LaurentQ> for QRational {
    fn from(p: LaurentQ) -> Self {
        QRational::from_laurent(p)
    }
}
