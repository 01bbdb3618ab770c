//! Laurent polynomials in the central variables `t_1, ..., t_m` (and
//! optionally `s`), and their fraction field.

use std::collections::BTreeMap;

use num::{BigInt, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numfield::Rational;

/// A Laurent polynomial over ℚ: a finite map from integer exponent vectors
/// to nonzero rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, Rational>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    /// The variable with the given 0-based index.
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars);
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Self::monomial(exps, Rational::one())
    }

    pub fn monomial(exps: Vec<i32>, c: Rational) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self { nvars, terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<i32>, Rational)>>(
        nvars: usize,
        pairs: I,
    ) -> Self {
        let mut terms: BTreeMap<Vec<i32>, Rational> = BTreeMap::new();
        for (exps, c) in pairs {
            assert_eq!(exps.len(), nvars);
            let e = terms.entry(exps).or_insert_with(Rational::zero);
            *e += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Self { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(vec![0; self.nvars].as_slice())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &Rational)> + '_ {
        self.terms.iter()
    }

    /// The single `(exponents, coefficient)` pair when the poly is a monomial.
    pub fn as_monomial(&self) -> Option<(&Vec<i32>, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// The constant value when the poly is a rational constant.
    pub fn as_constant(&self) -> Option<&Rational> {
        let (exps, c) = self.as_monomial()?;
        if exps.iter().all(|&e| e == 0) {
            Some(c)
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut terms = self.terms.clone();
        for (exps, c) in &other.terms {
            let e = terms.entry(exps.clone()).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                terms.remove(exps);
            }
        }
        Self {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut terms: BTreeMap<Vec<i32>, Rational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<i32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let e = terms.entry(exps.clone()).or_insert_with(Rational::zero);
                *e += ca * cb;
                if e.is_zero() {
                    terms.remove(&exps);
                }
            }
        }
        Self {
            nvars: self.nvars,
            terms,
        }
    }

    fn mul_monomial(&self, exps: &[i32], c: &Rational) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, a)| {
                    (
                        e.iter().zip(exps).map(|(x, y)| x + y).collect(),
                        a * c,
                    )
                })
                .collect(),
        }
    }

    /// Exact division; panics when the divisor does not divide exactly.
    /// Only called where divisibility is a theorem (Bareiss intermediates,
    /// gcd cofactors).
    pub fn exact_div(&self, divisor: &Self) -> Self {
        self.try_exact_div(divisor)
            .expect("division was supposed to be exact")
    }

    /// Quotient when `divisor` divides exactly (up to monomial units), else
    /// `None`.  Works on the polynomial parts: monomial factors are units of
    /// the Laurent ring, so both operands are first shifted to minimum
    /// exponent 0 and the shift difference is restored on the quotient.
    pub fn try_exact_div(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        let one = Rational::one();
        let self_min = self.min_exponents().expect("nonzero");
        let div_min = divisor.min_exponents().expect("nonzero");
        let num = self.mul_monomial(&self_min.iter().map(|e| -e).collect::<Vec<_>>(), &one);
        let den = divisor.mul_monomial(&div_min.iter().map(|e| -e).collect::<Vec<_>>(), &one);
        let mut remainder = num;
        let mut quotient = Self::zero(self.nvars);
        let (lt_exp, lt_coeff) = den
            .terms
            .iter()
            .next_back()
            .map(|(e, c)| (e.clone(), c.clone()))
            .expect("nonzero divisor");
        // with both operands polynomial, an exact quotient is polynomial, so
        // a leading-term ratio with a negative exponent proves inexactness;
        // otherwise the lex-decreasing leading terms guarantee termination
        while !remainder.is_zero() {
            let (r_exp, r_coeff) = remainder
                .terms
                .iter()
                .next_back()
                .map(|(e, c)| (e.clone(), c.clone()))
                .expect("nonzero remainder");
            let t_exp: Vec<i32> = r_exp.iter().zip(&lt_exp).map(|(a, b)| a - b).collect();
            if t_exp.iter().any(|&e| e < 0) {
                return None;
            }
            let t_coeff = r_coeff / &lt_coeff;
            quotient = quotient.add(&Self::monomial(t_exp.clone(), t_coeff.clone()));
            remainder = remainder.sub(&den.mul_monomial(&t_exp, &t_coeff));
        }
        let shift: Vec<i32> = self_min.iter().zip(&div_min).map(|(a, b)| a - b).collect();
        Some(quotient.mul_monomial(&shift, &one))
    }

    /// Positive rational content: gcd of numerators over lcm of denominators.
    fn content(&self) -> Rational {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num::integer::gcd(num_gcd, c.numer().abs());
            den_lcm = num::integer::lcm(den_lcm, c.denom().clone());
        }
        if num_gcd.is_zero() {
            Rational::one()
        } else {
            Rational::new(num_gcd, den_lcm)
        }
    }

    /// Sign of the coefficient on the lex-greatest exponent vector.
    fn leading_sign(&self) -> i32 {
        match self.terms.values().next_back() {
            Some(c) if c.is_negative() => -1,
            Some(_) => 1,
            None => 1,
        }
    }

    /// Degree in one variable (0 for the zero polynomial).
    fn degree_in(&self, v: usize) -> i32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    /// Coefficients by exponent of variable `v`; each keeps `v`-exponent 0.
    fn coeffs_in(&self, v: usize) -> BTreeMap<i32, LaurentPoly> {
        let mut out: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
        for (exps, c) in &self.terms {
            let mut rest = exps.clone();
            let k = rest[v];
            rest[v] = 0;
            let entry = out
                .entry(k)
                .or_insert_with(|| LaurentPoly::zero(self.nvars));
            *entry = entry.add(&LaurentPoly::monomial(rest, c.clone()));
        }
        out
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// Content with respect to variable `v`: the gcd of the `v`-coefficients.
    fn content_in(&self, v: usize) -> LaurentPoly {
        let mut g = LaurentPoly::zero(self.nvars);
        for c in self.coeffs_in(v).values() {
            g = Self::gcd(&g, c);
            if g.is_constant() && !g.is_zero() {
                break;
            }
        }
        g
    }

    /// Pseudo-remainder of `a` by `b` in variable `v` (`b` nonzero in `v`).
    fn pseudo_rem(a: &Self, b: &Self, v: usize) -> Self {
        let db = b.degree_in(v);
        let b_coeffs = b.coeffs_in(v);
        let lc_b = &b_coeffs[&db];
        let mut r = a.clone();
        while !r.is_zero() && r.degree_in(v) >= db {
            let dr = r.degree_in(v);
            let lc_r = r.coeffs_in(v).remove(&dr).expect("leading coefficient");
            let mut shift = vec![0i32; r.nvars];
            shift[v] = dr - db;
            let one = Rational::one();
            r = r
                .mul(lc_b)
                .sub(&b.mul(&lc_r).mul_monomial(&shift, &one));
            // the sequence is only used up to units, so keep numbers small
            if !r.is_zero() {
                r = r.scale(&(Rational::one() / r.content()));
            }
        }
        r
    }

    /// Degree in `v` of `gcd(self, other)`, estimated by evaluating every
    /// other variable at a fixed point modulo a 61-bit prime and running a
    /// univariate Euclidean gcd over that field.  `None` means the evaluation
    /// degenerated (a denominator or leading coefficient vanished mod p).
    ///
    /// The estimate can only overshoot: the true gcd's image divides both
    /// images, so a constant image gcd proves the true gcd is constant in
    /// `v`, while an unlucky point at worst reports a positive degree for a
    /// trivial gcd.  Callers use it as a cheap filter in front of [`gcd`].
    fn modular_gcd_degree(&self, other: &Self, v: usize, salt: u64) -> Option<usize> {
        const P: u64 = (1 << 61) - 1;
        fn mul_mod(a: u64, b: u64) -> u64 {
            ((a as u128 * b as u128) % P as u128) as u64
        }
        fn pow_mod(mut b: u64, mut e: u64) -> u64 {
            let mut acc = 1u64;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul_mod(acc, b);
                }
                b = mul_mod(b, b);
                e >>= 1;
            }
            acc
        }
        fn inv_mod(a: u64) -> Option<u64> {
            if a % P == 0 {
                None
            } else {
                Some(pow_mod(a % P, P - 2))
            }
        }
        fn rational_mod(c: &Rational) -> Option<u64> {
            let p = num::BigInt::from(P);
            let n = ((c.numer() % &p) + &p) % &p;
            let d = ((c.denom() % &p) + &p) % &p;
            let n: u64 = n.try_into().ok()?;
            let d: u64 = d.try_into().ok()?;
            Some(mul_mod(n, inv_mod(d)?))
        }
        // deterministic per-variable evaluation points (splitmix64); the
        // salt lets callers retry with fresh points after a degenerate or
        // suspect answer
        let point = |v: usize| -> u64 {
            let mut z = (v as u64)
                .wrapping_add(salt.wrapping_mul(0xd1b54a32d192ed03))
                .wrapping_add(0x9e3779b97f4a7c15);
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            (z ^ (z >> 31)) % (P - 3) + 2
        };
        let eval = |poly: &Self| -> Option<Vec<u64>> {
            let min = poly.min_exponents().expect("nonzero");
            let deg = poly.degree_in(v) - min[v];
            let mut coeffs = vec![0u64; deg as usize + 1];
            for (exps, c) in &poly.terms {
                let mut val = rational_mod(c)?;
                for (w, &e) in exps.iter().enumerate() {
                    if w != v && e != min[w] {
                        val = mul_mod(val, pow_mod(point(w), (e - min[w]) as u64));
                    }
                }
                let k = (exps[v] - min[v]) as usize;
                coeffs[k] = (coeffs[k] + val) % P;
            }
            while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
                coeffs.pop();
            }
            // a vanished leading coefficient means the point was degenerate
            if coeffs.len() as i32 - 1 != deg {
                return None;
            }
            Some(coeffs)
        };
        let mut a = eval(self)?;
        let mut b = eval(other)?;
        while b.len() > 1 || b[0] != 0 {
            // a mod b over GF(p)
            let lead_inv = inv_mod(*b.last().unwrap())?;
            while a.len() >= b.len() && (a.len() > 1 || a[0] != 0) {
                let shift = a.len() - b.len();
                let q = mul_mod(*a.last().unwrap(), lead_inv);
                for i in 0..b.len() {
                    let sub = mul_mod(q, b[i]);
                    a[shift + i] = (a[shift + i] + P - sub) % P;
                }
                while a.len() > 1 && *a.last().unwrap() == 0 {
                    a.pop();
                }
                if a.len() == 1 && a[0] == 0 {
                    break;
                }
            }
            std::mem::swap(&mut a, &mut b);
        }
        Some(a.len() - 1)
    }

    /// Content-1, positive-leading-sign scalar multiple.
    fn canonical_assoc(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content()
            * Rational::new(BigInt::from(self.leading_sign()), BigInt::one());
        self.scale(&(Rational::one() / c))
    }

    /// Substitutes the rational `r` for variable `v` (exponents of `v` must
    /// be nonnegative).
    fn eval_var(&self, v: usize, r: &Rational) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms.iter().map(|(exps, c)| {
                let e = exps[v];
                assert!(e >= 0, "evaluation needs a polynomial exponent");
                let mut scaled = c.clone();
                for _ in 0..e {
                    scaled *= r;
                }
                let mut rest = exps.clone();
                rest[v] = 0;
                (rest, scaled)
            }),
        )
    }

    /// Greatest common divisor, defined up to units of the Laurent ring
    /// (monomials and rationals) and pinned down as a polynomial with
    /// content 1, positive leading sign, and minimum exponent 0 per variable.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        assert_eq!(a.nvars, b.nvars);
        let one = Rational::one();
        let strip = |p: &Self| -> Self {
            let min = p.min_exponents().expect("nonzero");
            p.mul_monomial(&min.iter().map(|e| -e).collect::<Vec<_>>(), &one)
        };
        if a.is_zero() {
            return if b.is_zero() {
                b.clone()
            } else {
                strip(b).canonical_assoc()
            };
        }
        if b.is_zero() {
            return strip(a).canonical_assoc();
        }
        let a = strip(a);
        let b = strip(b);
        if a.is_constant() || b.is_constant() {
            return Self::one(a.nvars);
        }
        // with no variable used by both, any common divisor would live in
        // two disjoint polynomial rings at once
        let shared: Vec<usize> = (0..a.nvars)
            .filter(|&v| a.degree_in(v) > 0 && b.degree_in(v) > 0)
            .collect();
        if shared.is_empty() {
            return Self::one(a.nvars);
        }
        // coprimality certificate: a modular image gcd of degree 0 in `v` is
        // a proof that the gcd is free of `v` (the image of the gcd keeps
        // full degree because the divisors' leading coefficients survived
        // the evaluation, and it divides the image gcd); free of every
        // shared variable means constant
        if shared
            .iter()
            .all(|&v| (0..2).any(|salt| a.modular_gcd_degree(&b, v, salt) == Some(0)))
        {
            return Self::one(a.nvars);
        }
        let active = (0..a.nvars)
            .filter(|&v| a.degree_in(v) > 0 || b.degree_in(v) > 0)
            .count();
        if active == 1 {
            return Self::prs_gcd(&a, &b);
        }
        Self::brown_gcd(&a, &b).unwrap_or_else(|| Self::prs_gcd(&a, &b))
    }

    /// Gcd in the polynomial sense: like [`gcd`] but keeps the common
    /// monomial factor, which the Laurent convention strips as a unit.
    /// Brown's interpolation needs this, since images at different points
    /// must be normalized coherently as polynomials.
    fn poly_gcd(a: &Self, b: &Self) -> Self {
        let g = Self::gcd(a, b);
        let (Some(ma), Some(mb)) = (a.min_exponents(), b.min_exponents()) else {
            return g;
        };
        let shared: Vec<i32> = ma.iter().zip(&mb).map(|(p, q)| *p.min(q)).collect();
        g.mul_monomial(&shared, &Rational::one())
    }

    /// Primitive-PRS gcd.  Safe for univariate inputs, where the leading
    /// coefficients are constants; with several variables the pseudo-division
    /// steps can blow up, so multivariate callers prefer [`brown_gcd`].
    fn prs_gcd(a: &Self, b: &Self) -> Self {
        let v = (0..a.nvars)
            .find(|&v| a.degree_in(v) > 0 && b.degree_in(v) > 0)
            .expect("a shared variable");
        let cont_a = a.content_in(v);
        let cont_b = b.content_in(v);
        let cont_gcd = Self::gcd(&cont_a, &cont_b);
        let mut p = a.exact_div(&cont_a);
        let mut q = b.exact_div(&cont_b);
        if p.degree_in(v) < q.degree_in(v) {
            std::mem::swap(&mut p, &mut q);
        }
        loop {
            let r = Self::pseudo_rem(&p, &q, v);
            if r.is_zero() {
                break;
            }
            if r.degree_in(v) == 0 {
                // coprime primitive parts
                return cont_gcd.canonical_assoc();
            }
            p = q;
            q = r.exact_div(&r.content_in(v));
        }
        cont_gcd.mul(&q).canonical_assoc()
    }

    /// Brown's evaluation–interpolation gcd: recurse with the last active
    /// variable `z` evaluated at integer points, normalize each image gcd by
    /// the gcd `γ` of the leading coefficients, interpolate in `z`, and
    /// verify by trial division.  `None` only when the point budget runs out
    /// (pathologically many unlucky evaluations).
    fn brown_gcd(a: &Self, b: &Self) -> Option<Self> {
        let x = (0..a.nvars)
            .find(|&v| a.degree_in(v) > 0 && b.degree_in(v) > 0)
            .expect("a shared variable");
        let z = (0..a.nvars)
            .rev()
            .find(|&v| v != x && (a.degree_in(v) > 0 || b.degree_in(v) > 0))
            .expect("a second active variable");
        let cont_a = a.content_in(x);
        let cont_b = b.content_in(x);
        let cg = Self::gcd(&cont_a, &cont_b);
        let pp_a = a.exact_div(&cont_a);
        let pp_b = b.exact_div(&cont_b);
        let lc_a = pp_a.coeffs_in(x).remove(&pp_a.degree_in(x)).expect("lc");
        let lc_b = pp_b.coeffs_in(x).remove(&pp_b.degree_in(x)).expect("lc");
        // γ must be a polynomial multiple of lc_x(gcd), hence the
        // monomial-preserving gcd
        let gamma = Self::poly_gcd(&lc_a, &lc_b);
        let needed =
            (pp_a.degree_in(z).min(pp_b.degree_in(z)) + gamma.degree_in(z) + 1) as usize;
        let mut images: Vec<(Rational, Self)> = Vec::new();
        let mut min_dx = i32::MAX;
        let mut next_point = 0i64;
        // generous budget: every skipped point is a root of an lc or of a
        // resultant, and those are finite in number
        for _ in 0..4 * needed + 64 {
            let r = Rational::from(BigInt::from(next_point));
            next_point += 1;
            if lc_a.eval_var(z, &r).is_zero() || lc_b.eval_var(z, &r).is_zero() {
                continue;
            }
            // polynomial-sense image gcd: at a point where the true gcd's
            // trailing coefficient vanishes, a stripped image would look
            // smaller than the honest ones and poison `min_dx`
            let g_r = Self::poly_gcd(&pp_a.eval_var(z, &r), &pp_b.eval_var(z, &r));
            let dx = g_r.degree_in(x);
            if dx == 0 {
                // coprime primitive parts
                return Some(cg.canonical_assoc());
            }
            if dx > min_dx {
                continue; // unlucky point, gcd image too large
            }
            if dx < min_dx {
                images.clear();
                min_dx = dx;
            }
            let lc_g = g_r.coeffs_in(x).remove(&dx).expect("lc");
            let Some(q) = gamma.eval_var(z, &r).try_exact_div(&lc_g) else {
                continue; // wrong unit, the image is not γ-normalizable
            };
            images.push((r, g_r.mul(&q)));
            if images.len() < needed {
                continue;
            }
            // Newton interpolation of the images in z
            let mut w = images[0].1.clone();
            let mut newton = Self::one(a.nvars);
            let mut prev = vec![&images[0].0];
            for (r_i, img) in &images[1..] {
                let step = Self::var(a.nvars, z)
                    .sub(&Self::constant(a.nvars, (*prev.last().unwrap()).clone()));
                newton = newton.mul(&step);
                let newton_at = prev
                    .iter()
                    .fold(Rational::one(), |acc, r_j| acc * (r_i.clone() - *r_j));
                let delta = img.sub(&w.eval_var(z, r_i)).scale(&(Rational::one() / newton_at));
                w = w.add(&delta.mul(&newton));
                prev.push(r_i);
            }
            let cont_w = w.content_in(x);
            let h = w.exact_div(&cont_w);
            if pp_a.try_exact_div(&h).is_some() && pp_b.try_exact_div(&h).is_some() {
                return Some(cg.mul(&h).canonical_assoc());
            }
            // a verification failure means the whole batch was unlucky in a
            // consistent way; drop it and keep sampling
            images.clear();
            min_dx = i32::MAX;
        }
        None
    }

    /// Per-variable minimum exponent over the support.
    fn min_exponents(&self) -> Option<Vec<i32>> {
        let mut mins: Option<Vec<i32>> = None;
        for exps in self.terms.keys() {
            match &mut mins {
                None => mins = Some(exps.clone()),
                Some(m) => {
                    for (mv, &e) in m.iter_mut().zip(exps) {
                        *mv = (*mv).min(e);
                    }
                }
            }
        }
        mins
    }
}

/// A quotient of Laurent polynomials, the coefficient field of the crossed
/// model.  Equality is by cross-multiplication; normalization pulls out the
/// common monomial factor and the content of the denominator, leaving the
/// denominator with positive leading coefficient.
#[derive(Debug, Clone)]
pub struct CentralFraction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl CentralFraction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut f = Self { num, den };
        f.normalize();
        Ok(f)
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        let nvars = p.nvars();
        Self {
            num: p,
            den: LaurentPoly::one(nvars),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(LaurentPoly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(LaurentPoly::one(nvars))
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_poly(LaurentPoly::constant(nvars, c))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// The rational value when both num and den are constants.
    pub fn as_constant(&self) -> Option<Rational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = LaurentPoly::one(self.den.nvars());
            return;
        }
        // pull out the common monomial factor
        let num_min = self.num.min_exponents().expect("nonzero num");
        let den_min = self.den.min_exponents().expect("nonzero den");
        let shift: Vec<i32> = num_min
            .iter()
            .zip(&den_min)
            .map(|(a, b)| -(*a.min(b)))
            .collect();
        if shift.iter().any(|&e| e != 0) {
            let one = Rational::one();
            self.num = self.num.mul_monomial(&shift, &one);
            self.den = self.den.mul_monomial(&shift, &one);
        }
        // cancel the polynomial gcd so coefficients cannot snowball across
        // repeated products; a modular probe skips the computation in the
        // common coprime case, and divisibility shortcuts cover most of the
        // rest (a missed cancellation is only a size regression, never wrong)
        if !self.den.is_constant() {
            let shared_factor = (0..self.num.nvars()).any(|v| {
                self.num.degree_in(v) > 0
                    && self.den.degree_in(v) > 0
                    && self
                        .num
                        .modular_gcd_degree(&self.den, v, 0)
                        .map_or(true, |d| d > 0)
            });
            if shared_factor {
                if let Some(q) = self.num.try_exact_div(&self.den) {
                    self.num = q;
                    self.den = LaurentPoly::one(self.den.nvars());
                } else if let Some(q) = self.den.try_exact_div(&self.num) {
                    self.den = q;
                    self.num = LaurentPoly::one(self.num.nvars());
                } else {
                    let g = LaurentPoly::gcd(&self.num, &self.den);
                    if !g.is_constant() {
                        self.num = self.num.exact_div(&g);
                        self.den = self.den.exact_div(&g);
                    }
                }
            }
        }
        // pull out the denominator content, signed to keep it positive
        let c = self.den.content()
            * Rational::new(BigInt::from(self.den.leading_sign()), BigInt::one());
        let cinv = Rational::one() / c;
        self.num = self.num.scale(&cinv);
        self.den = self.den.scale(&cinv);
    }

    pub fn add(&self, other: &Self) -> Self {
        // shared denominators are the norm in matrix work; don't square them
        if self.den == other.den {
            return Self::new(self.num.add(&other.num), self.den.clone())
                .expect("denominator unchanged");
        }
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::new(num, den).expect("denominator product is nonzero")
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("denominator product is nonzero")
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.num.scale(c), self.den.clone()).expect("denominator unchanged")
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }
}

impl PartialEq for CentralFraction {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for CentralFraction {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::rat;

    fn t(nvars: usize, i: usize) -> LaurentPoly {
        LaurentPoly::var(nvars, i)
    }

    #[test]
    fn poly_arithmetic() {
        let t1 = t(2, 0);
        let t2 = t(2, 1);
        let p = t1.add(&t2).mul(&t1.sub(&t2));
        let expected = t1.mul(&t1).sub(&t2.mul(&t2));
        assert_eq!(p, expected);
        assert!(p.sub(&expected).is_zero());
        // Laurent exponents
        let inv_t1 = LaurentPoly::monomial(vec![-1, 0], rat(1, 1));
        assert!(t1.mul(&inv_t1).is_one());
    }

    #[test]
    fn exact_division() {
        let t1 = t(2, 0);
        let t2 = t(2, 1);
        let a = t1.add(&t2);
        let b = t1.sub(&LaurentPoly::one(2));
        let prod = a.mul(&b);
        assert_eq!(prod.exact_div(&a), b);
        assert_eq!(prod.exact_div(&b), a);
        // monomial divisor with negative exponents
        let m = LaurentPoly::monomial(vec![-2, 1], rat(3, 4));
        assert_eq!(a.mul(&m).exact_div(&m), a);
    }

    #[test]
    fn fraction_normalization_and_equality() {
        let t1 = t(1, 0);
        // (2 t1) / (4 t1^2) = 1 / (2 t1), equal by cross-multiplication
        let f = CentralFraction::new(
            t1.scale(&rat(2, 1)),
            t1.mul(&t1).scale(&rat(4, 1)),
        )
        .unwrap();
        let g = CentralFraction::new(LaurentPoly::one(1), t1.scale(&rat(2, 1))).unwrap();
        assert_eq!(f, g);
        // denominator content is positive after normalization
        let h = CentralFraction::new(LaurentPoly::one(1), t1.scale(&rat(-3, 1))).unwrap();
        assert!(h.den().terms().all(|(_, c)| !c.is_negative() || h.den().num_terms() > 1));
        assert_eq!(h.mul(&CentralFraction::from_poly(t1.scale(&rat(-3, 1)))),
                   CentralFraction::one(1));
    }

    #[test]
    fn inexact_division_is_detected() {
        let t1 = t(2, 0);
        let t2 = t(2, 1);
        let a = t1.add(&t2);
        let b = t1.sub(&t2);
        assert!(a.try_exact_div(&b).is_none());
        assert!(a.mul(&a).try_exact_div(&a.mul(&b)).is_none());
        assert!(a.mul(&b).add(&LaurentPoly::one(2)).try_exact_div(&a).is_none());
        // divisibility only up to a monomial unit still counts
        let m = LaurentPoly::monomial(vec![-3, 2], rat(1, 1));
        assert!(a.mul(&b).try_exact_div(&a.mul(&m)).is_some());
    }

    #[test]
    fn gcd_univariate_and_multivariate() {
        let t1 = t(2, 0);
        let t2 = t(2, 1);
        let one = LaurentPoly::one(2);
        // univariate: gcd(t1² - 1, t1² - 2t1 + 1) = t1 - 1
        let p = t1.mul(&t1).sub(&one);
        let q = t1.sub(&one).mul(&t1.sub(&one));
        assert_eq!(LaurentPoly::gcd(&p, &q), t1.sub(&one));
        // multivariate: common factor (t1 + t2)
        let f = t1.add(&t2);
        let a = f.mul(&t1.sub(&one));
        let b = f.mul(&t2.add(&one)).mul(&f);
        let g = LaurentPoly::gcd(&a, &b);
        assert!(a.try_exact_div(&g).is_some());
        assert!(b.try_exact_div(&g).is_some());
        assert_eq!(g, f);
        // coprime inputs
        assert!(LaurentPoly::gcd(&t1.add(&one), &t2.add(&one)).is_one());
        // zero and constant edge cases
        assert_eq!(LaurentPoly::gcd(&LaurentPoly::zero(2), &a), f.mul(&t1.sub(&one)));
        assert!(LaurentPoly::gcd(&one, &a).is_one());
    }

    #[test]
    fn gcd_defined_up_to_units() {
        let t1 = t(2, 0);
        let t2 = t(2, 1);
        let f = t1.mul(&t2).add(&LaurentPoly::one(2));
        // monomial factors and scalar multiples never change the answer
        let m = LaurentPoly::monomial(vec![2, -1], rat(-3, 2));
        let a = f.mul(&t1.add(&t2));
        let b = f.mul(&t1.sub(&t2)).mul(&m);
        assert_eq!(LaurentPoly::gcd(&a, &b), f);
    }

    #[test]
    fn gcd_with_nonconstant_leading_coefficients() {
        // gcd whose leading x-coefficient is a z-monomial: the internal
        // γ-normalization must keep that monomial even though it is a unit
        // of the Laurent ring (regression for a systematic interpolation
        // failure)
        let t1 = t(2, 0);
        let t2 = t(2, 1);
        let one = LaurentPoly::one(2);
        let c3 = LaurentPoly::constant(2, rat(3, 1));
        let c5 = LaurentPoly::constant(2, rat(5, 1));
        // g = 1 - 3 t1² t2²
        let g = one.sub(&c3.mul(&t1).mul(&t1).mul(&t2).mul(&t2));
        // a = (1 + 5 t1² t2)(1 + 3 t1² t2²) g, b = g²
        let a = one
            .add(&c5.mul(&t1).mul(&t1).mul(&t2))
            .mul(&one.add(&c3.mul(&t1).mul(&t1).mul(&t2).mul(&t2)))
            .mul(&g);
        let b = g.mul(&g);
        let got = LaurentPoly::gcd(&a, &b);
        // associates: each divides the other
        assert!(got.try_exact_div(&g).is_some());
        assert!(g.try_exact_div(&got).is_some());
        // gcd with a vanishing trailing coefficient at some evaluation
        // point: image gcds must stay polynomial-normalized (regression for
        // a poisoned degree bound)
        let h2 = t1.mul(&t2.sub(&one)).add(&t1.mul(&t1));
        let p = h2.mul(&t1.add(&t2));
        let q = h2.mul(&t1.mul(&t2).add(&c3));
        let got = LaurentPoly::gcd(&p, &q);
        assert!(p.try_exact_div(&got).is_some());
        assert!(q.try_exact_div(&got).is_some());
        // h2 = t1 (t1 + t2 - 1), and t1 is a unit
        assert_eq!(got, t1.add(&t2).sub(&one));
    }

    #[test]
    fn fraction_reduction_cancels_common_factors() {
        let t1 = t(2, 0);
        let t2 = t(2, 1);
        let one = LaurentPoly::one(2);
        let f = t1.add(&t2);
        let g = t1.sub(&one);
        let h = t2.add(&one);
        let frac = CentralFraction::new(f.mul(&g), f.mul(&h)).unwrap();
        assert_eq!(frac, CentralFraction::new(g.clone(), h.clone()).unwrap());
        assert!(frac.num().num_terms() <= g.num_terms());
        assert!(frac.den().num_terms() <= h.num_terms());
        // exact multiples collapse to a polynomial
        let whole = CentralFraction::new(f.mul(&g), f.clone()).unwrap();
        assert!(whole.den().is_one());
    }

    #[test]
    fn fraction_field_ops() {
        let t1 = t(1, 0);
        let f = CentralFraction::new(LaurentPoly::one(1), t1.clone()).unwrap();
        let g = CentralFraction::from_poly(t1.clone());
        assert!(f.mul(&g).is_one());
        assert_eq!(f.inv().unwrap(), g);
        assert!(CentralFraction::zero(1).inv().is_err());
        let sum = f.add(&f);
        assert_eq!(
            sum,
            CentralFraction::new(LaurentPoly::constant(1, rat(2, 1)), t1).unwrap()
        );
        assert!(sum.sub(&sum).is_zero());
    }
}
