//! Exact arithmetic in the multiquadratic field `K_m = ℚ(√p1, ..., √pm)`.
//!
//! Elements are finite sums `Σ_ε a_ε Π_i (√p_i)^{ε_i}` with rational
//! coefficients, indexed by sign-exponent vectors `ε ∈ {0,1}^m` stored as
//! bitmasks.  The Galois generators `f_i` negate `√p_i` and fix the other
//! radicals; the twist character `Φ_g` of a group element `g = Σ n_i x_i`
//! scales the `ε` term by `(-1)^{Σ_i n_i ε_i}`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::grp::GroupElement;

pub type Rational = BigRational;

/// Convenience constructor for small rationals.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Deterministic Miller-Rabin primality test for machine-width integers.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    // deterministic witness set for u64
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// An ordered list of distinct primes `p1 < p2 < ... < pm` fixing the field level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeBasis {
    primes: Vec<u64>,
}

impl PrimeBasis {
    pub fn new(primes: Vec<u64>) -> Result<Arc<Self>> {
        for w in primes.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::Config("primes must be strictly increasing".into()));
            }
        }
        for &p in &primes {
            if !is_prime(p) {
                return Err(Error::Config(format!("{p} is not prime")));
            }
        }
        if primes.len() > 20 {
            return Err(Error::Config("level is limited to 20".into()));
        }
        Ok(Arc::new(Self { primes }))
    }

    /// The first `m` primes.
    pub fn first_primes(m: u32) -> Arc<Self> {
        let mut primes = Vec::with_capacity(m as usize);
        let mut n = 2u64;
        while primes.len() < m as usize {
            if is_prime(n) {
                primes.push(n);
            }
            n += 1;
        }
        Arc::new(Self { primes })
    }

    /// The level `m`.
    pub fn level(&self) -> u32 {
        self.primes.len() as u32
    }

    /// The prime `p_i` (1-based).
    pub fn prime(&self, i: u32) -> u64 {
        self.primes[(i - 1) as usize]
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }
}

/// An element of `K_m`, stored as a map from radical bitmask to coefficient.
#[derive(Debug, Clone)]
pub struct FieldElement {
    basis: Arc<PrimeBasis>,
    terms: BTreeMap<u32, Rational>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis && self.terms == other.terms
    }
}

impl Eq for FieldElement {}

impl FieldElement {
    pub fn zero(basis: &Arc<PrimeBasis>) -> Self {
        Self {
            basis: Arc::clone(basis),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(basis: &Arc<PrimeBasis>) -> Self {
        Self::from_rational(basis, Rational::one())
    }

    pub fn from_rational(basis: &Arc<PrimeBasis>, value: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(0, value);
        }
        Self {
            basis: Arc::clone(basis),
            terms,
        }
    }

    /// The radical `√p_i` (1-based index).
    pub fn radical(basis: &Arc<PrimeBasis>, i: u32) -> Result<Self> {
        if i < 1 || i > basis.level() {
            return Err(Error::IndexOutOfRange {
                index: i,
                level: basis.level(),
            });
        }
        let mut terms = BTreeMap::new();
        terms.insert(1u32 << (i - 1), Rational::one());
        Ok(Self {
            basis: Arc::clone(basis),
            terms,
        })
    }

    /// Builds an element from `(bitmask, coefficient)` pairs, dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (u32, Rational)>>(
        basis: &Arc<PrimeBasis>,
        pairs: I,
    ) -> Self {
        let mask_limit = 1u64 << basis.level();
        let mut terms: BTreeMap<u32, Rational> = BTreeMap::new();
        for (mask, c) in pairs {
            assert!((mask as u64) < mask_limit, "radical mask exceeds level");
            let e = terms.entry(mask).or_insert_with(Rational::zero);
            *e += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Self {
            basis: Arc::clone(basis),
            terms,
        }
    }

    pub fn basis(&self) -> &Arc<PrimeBasis> {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map(|c| c.is_one()).unwrap_or(false)
    }

    /// True when only the `ε = 0` term is present (the element lies in ℚ).
    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|&mask| mask == 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> + '_ {
        self.terms.iter().map(|(&mask, c)| (mask, c))
    }

    pub fn coefficient(&self, mask: u32) -> Rational {
        self.terms.get(&mask).cloned().unwrap_or_else(Rational::zero)
    }

    fn check_basis(&self, other: &Self) -> Result<()> {
        if self.basis == other.basis {
            Ok(())
        } else {
            Err(Error::BasisMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_basis(other)?;
        let mut terms = self.terms.clone();
        for (&mask, c) in &other.terms {
            let e = terms.entry(mask).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                terms.remove(&mask);
            }
        }
        Ok(Self {
            basis: Arc::clone(&self.basis),
            terms,
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            basis: Arc::clone(&self.basis),
            terms: self.terms.iter().map(|(&m, c)| (m, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.basis);
        }
        Self {
            basis: Arc::clone(&self.basis),
            terms: self.terms.iter().map(|(&m, a)| (m, a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_basis(other)?;
        let mut terms: BTreeMap<u32, Rational> = BTreeMap::new();
        for (&ma, a) in &self.terms {
            for (&mb, b) in &other.terms {
                // (√p_i)^2 = p_i contributes for every shared radical
                let shared = ma & mb;
                let mut coeff = a * b;
                let mut bits = shared;
                while bits != 0 {
                    let i = bits.trailing_zeros();
                    coeff *= BigInt::from(self.basis.primes()[i as usize]);
                    bits &= bits - 1;
                }
                let mask = ma ^ mb;
                let e = terms.entry(mask).or_insert_with(Rational::zero);
                *e += coeff;
                if e.is_zero() {
                    terms.remove(&mask);
                }
            }
        }
        Ok(Self {
            basis: Arc::clone(&self.basis),
            terms,
        })
    }

    /// Exact inverse by recursive conjugation on the topmost radical:
    /// write `a = c + d√p_k` with `c, d` at level `k-1`, then
    /// `a^{-1} = (c - d√p_k) · (c² - p_k d²)^{-1}`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let terms = inv_level(&self.terms, self.basis.primes(), self.basis.level())?;
        let result = Self {
            basis: Arc::clone(&self.basis),
            terms,
        };
        // multiply-back guard: also covers the standing assumption that
        // √p_k is not in K_{k-1}
        if !self.mul(&result)?.is_one() {
            return Err(Error::Normalization(
                "inverse multiply-back check failed".into(),
            ));
        }
        Ok(result)
    }

    /// The Galois generator `f_i`: negates terms containing `√p_i`.
    pub fn apply_auto(&self, i: u32) -> Result<Self> {
        if i < 1 || i > self.basis.level() {
            return Err(Error::IndexOutOfRange {
                index: i,
                level: self.basis.level(),
            });
        }
        let bit = 1u32 << (i - 1);
        Ok(Self {
            basis: Arc::clone(&self.basis),
            terms: self
                .terms
                .iter()
                .map(|(&m, c)| (m, if m & bit != 0 { -c.clone() } else { c.clone() }))
                .collect(),
        })
    }

    /// The twist character `Φ_g`: scales the `ε` term by `(-1)^{Σ_i n_i ε_i}`.
    ///
    /// Generators past the basis level act trivially: every stored term has
    /// `ε_i = 0` there, so no sign can arise.
    pub fn apply_phi(&self, g: &GroupElement) -> Result<Self> {
        self.apply_phi_impl(g, true)
    }

    #[doc(hidden)]
    pub fn apply_phi_untwisted(&self, g: &GroupElement) -> Result<Self> {
        self.apply_phi_impl(g, false)
    }

    fn apply_phi_impl(&self, g: &GroupElement, twisted: bool) -> Result<Self> {
        let level = self.basis.level();
        let terms = self
            .terms
            .iter()
            .map(|(&mask, c)| {
                let mut parity = 0i64;
                if twisted {
                    for (i, n) in g.iter() {
                        if i <= level && mask & (1u32 << (i - 1)) != 0 {
                            parity += n;
                        }
                    }
                }
                let coeff = if parity.rem_euclid(2) == 1 {
                    -c.clone()
                } else {
                    c.clone()
                };
                (mask, coeff)
            })
            .collect();
        Ok(Self {
            basis: Arc::clone(&self.basis),
            terms,
        })
    }

    /// True iff `f_i(a) = a` for every generator, i.e. `a ∈ ℚ`.
    pub fn fixed_by_all(&self) -> bool {
        (1..=self.basis.level()).all(|i| self.apply_auto(i).expect("index in range") == *self)
    }
}

/// Recursive conjugation on raw term maps; `level` is the number of radicals
/// still in play.
fn inv_level(
    terms: &BTreeMap<u32, Rational>,
    primes: &[u64],
    level: u32,
) -> Result<BTreeMap<u32, Rational>> {
    if terms.is_empty() {
        return Err(Error::DivisionByZero);
    }
    if level == 0 {
        let c = terms.get(&0).expect("level-0 element is rational");
        let mut out = BTreeMap::new();
        out.insert(0u32, c.recip());
        return Ok(out);
    }
    let bit = 1u32 << (level - 1);
    let mut c: BTreeMap<u32, Rational> = BTreeMap::new();
    let mut d: BTreeMap<u32, Rational> = BTreeMap::new();
    for (&m, a) in terms {
        if m & bit == 0 {
            c.insert(m, a.clone());
        } else {
            d.insert(m & !bit, a.clone());
        }
    }
    let p = BigInt::from(primes[(level - 1) as usize]);
    // n = c² - p_k d², at level k-1
    let c2 = raw_mul(&c, &c, primes);
    let d2 = raw_mul(&d, &d, primes);
    let mut n = c2;
    for (m, a) in d2 {
        let e = n.entry(m).or_insert_with(Rational::zero);
        *e -= a * &p;
        if e.is_zero() {
            n.remove(&m);
        }
    }
    if n.is_empty() {
        return Err(Error::Normalization(
            "conjugation norm vanished on a nonzero element".into(),
        ));
    }
    let n_inv = inv_level(&n, primes, level - 1)?;
    // (c - d√p_k) · n^{-1}
    let mut conj = c;
    for (m, a) in d {
        conj.insert(m | bit, -a);
    }
    Ok(raw_mul(&conj, &n_inv, primes))
}

fn raw_mul(
    a: &BTreeMap<u32, Rational>,
    b: &BTreeMap<u32, Rational>,
    primes: &[u64],
) -> BTreeMap<u32, Rational> {
    let mut out: BTreeMap<u32, Rational> = BTreeMap::new();
    for (&ma, ca) in a {
        for (&mb, cb) in b {
            let mut coeff = ca * cb;
            let mut bits = ma & mb;
            while bits != 0 {
                let i = bits.trailing_zeros();
                coeff *= BigInt::from(primes[i as usize]);
                bits &= bits - 1;
            }
            let mask = ma ^ mb;
            let e = out.entry(mask).or_insert_with(Rational::zero);
            *e += coeff;
            if e.is_zero() {
                out.remove(&mask);
            }
        }
    }
    out
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mask, c) in &self.terms {
            let negative = c.is_negative();
            let abs = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let radicals: Vec<String> = (0..self.basis.level())
                .filter(|i| mask & (1u32 << i) != 0)
                .map(|i| format!("r{}", i + 1))
                .collect();
            if radicals.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", radicals.join(" "))?;
            } else {
                write!(f, "{abs} {}", radicals.join(" "))?;
            }
        }
        Ok(())
    }
}
