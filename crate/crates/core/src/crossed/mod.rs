//! Exact arithmetic in the level-`m` crossed-product model of `L_m`
//! (and of `R_n`, with one extra central variable `s` standing for `α_n`).
//!
//! Elements are normal forms `Σ a_{ε,μ} (√p)^ε x^μ` with coefficients in the
//! rational-function field `ℚ(t_1, ..., t_m[, s])`, where `t_i = x_i²`.
//! The defining relations are
//! `(√p_i)² = p_i`, `x_i² = t_i`, `√p_i x_j = x_j √p_i (i ≠ j)` and
//! `√p_i x_i = -x_i √p_i`.

pub mod laurent;
pub mod linalg;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{BigInt, One};

use crate::error::{Error, Result};
use crate::grp::GroupElement;
use crate::numfield::{FieldElement, PrimeBasis, Rational};
use crate::series::SeriesElement;

pub use laurent::{CentralFraction, LaurentPoly};

/// A basis monomial `(√p)^ε x^μ`, with both sign vectors stored as bitmasks.
///
/// The derived order (μ major, ε minor) sorts monomials by the basis index
/// `ε + 2^m μ`, i.e. by the concatenated vector `(ε, μ)` read as a
/// little-endian binary integer.  All matrices use this order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mono {
    pub mu: u32,
    pub eps: u32,
}

impl Mono {
    pub fn new(eps: u32, mu: u32) -> Self {
        Self { mu, eps }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn basis_index(&self, level: u32) -> usize {
        (self.eps as usize) | ((self.mu as usize) << level)
    }

    pub fn from_basis_index(index: usize, level: u32) -> Self {
        let mask = (1usize << level) - 1;
        Self {
            eps: (index & mask) as u32,
            mu: (index >> level) as u32,
        }
    }
}

/// Product of two basis monomials: a sign, the resulting monomial, and a
/// central correction `Π p_i^{ε_i ε'_i} Π t_i^{μ_i μ'_i}`.
pub fn monomial_mul(
    basis: &PrimeBasis,
    with_s: bool,
    a: Mono,
    b: Mono,
) -> (i32, Mono, LaurentPoly) {
    let level = basis.level();
    let nvars = level as usize + usize::from(with_s);
    // moving (√p)^{ε'} of b left through x^μ of a flips one sign per shared index
    let sign = if (a.mu & b.eps).count_ones() % 2 == 0 {
        1
    } else {
        -1
    };
    let result = Mono::new(a.eps ^ b.eps, a.mu ^ b.mu);
    let mut coeff = BigInt::one();
    let mut bits = a.eps & b.eps;
    while bits != 0 {
        let i = bits.trailing_zeros();
        coeff *= BigInt::from(basis.prime(i + 1));
        bits &= bits - 1;
    }
    let mut exps = vec![0i32; nvars];
    let mut bits = a.mu & b.mu;
    while bits != 0 {
        let i = bits.trailing_zeros();
        exps[i as usize] = 1;
        bits &= bits - 1;
    }
    let correction = LaurentPoly::monomial(exps, Rational::from(coeff));
    (sign, result, correction)
}

/// A normal-form element of the crossed-product model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedElement {
    basis: Arc<PrimeBasis>,
    with_s: bool,
    terms: BTreeMap<Mono, CentralFraction>,
}

impl CrossedElement {
    pub fn zero(basis: &Arc<PrimeBasis>, with_s: bool) -> Self {
        Self {
            basis: Arc::clone(basis),
            with_s,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(basis: &Arc<PrimeBasis>, with_s: bool) -> Self {
        let nvars = basis.level() as usize + usize::from(with_s);
        Self::monomial(basis, with_s, Mono::identity(), CentralFraction::one(nvars))
    }

    pub fn monomial(
        basis: &Arc<PrimeBasis>,
        with_s: bool,
        mono: Mono,
        coefficient: CentralFraction,
    ) -> Self {
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(mono, coefficient);
        }
        Self {
            basis: Arc::clone(basis),
            with_s,
            terms,
        }
    }

    pub fn scalar(basis: &Arc<PrimeBasis>, with_s: bool, c: CentralFraction) -> Self {
        Self::monomial(basis, with_s, Mono::identity(), c)
    }

    pub fn from_rational(basis: &Arc<PrimeBasis>, with_s: bool, c: Rational) -> Self {
        let nvars = basis.level() as usize + usize::from(with_s);
        Self::scalar(basis, with_s, CentralFraction::constant(nvars, c))
    }

    /// The radical `√p_i`.
    pub fn radical(basis: &Arc<PrimeBasis>, with_s: bool, i: u32) -> Result<Self> {
        Self::check_index(basis, i)?;
        let nvars = basis.level() as usize + usize::from(with_s);
        Ok(Self::monomial(
            basis,
            with_s,
            Mono::new(1 << (i - 1), 0),
            CentralFraction::one(nvars),
        ))
    }

    /// The generator `x_i`.
    pub fn generator(basis: &Arc<PrimeBasis>, with_s: bool, i: u32) -> Result<Self> {
        Self::check_index(basis, i)?;
        let nvars = basis.level() as usize + usize::from(with_s);
        Ok(Self::monomial(
            basis,
            with_s,
            Mono::new(0, 1 << (i - 1)),
            CentralFraction::one(nvars),
        ))
    }

    /// The central variable `t_i = x_i²`.
    pub fn central_t(basis: &Arc<PrimeBasis>, with_s: bool, i: u32) -> Result<Self> {
        Self::check_index(basis, i)?;
        let nvars = basis.level() as usize + usize::from(with_s);
        Ok(Self::scalar(
            basis,
            with_s,
            CentralFraction::from_poly(LaurentPoly::var(nvars, (i - 1) as usize)),
        ))
    }

    /// The central variable `s`, standing for `α_n` in R-mode.
    pub fn central_s(basis: &Arc<PrimeBasis>) -> Self {
        let nvars = basis.level() as usize + 1;
        Self::scalar(
            basis,
            true,
            CentralFraction::from_poly(LaurentPoly::var(nvars, nvars - 1)),
        )
    }

    /// The model's `α` in R-mode: `x_1^{-1} + ... + x_m^{-1} + s`,
    /// with `x_i^{-1} = x_i / t_i`.
    pub fn alpha(basis: &Arc<PrimeBasis>) -> Result<Self> {
        let mut out = Self::central_s(basis);
        for i in 1..=basis.level() {
            out = out.add(&Self::generator(basis, true, i)?.inv()?)?;
        }
        Ok(out)
    }

    fn check_index(basis: &PrimeBasis, i: u32) -> Result<()> {
        if i < 1 || i > basis.level() {
            Err(Error::IndexOutOfRange {
                index: i,
                level: basis.level(),
            })
        } else {
            Ok(())
        }
    }

    pub fn basis(&self) -> &Arc<PrimeBasis> {
        &self.basis
    }

    pub fn level(&self) -> u32 {
        self.basis.level()
    }

    pub fn with_s(&self) -> bool {
        self.with_s
    }

    pub fn nvars(&self) -> usize {
        self.basis.level() as usize + usize::from(self.with_s)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Mono::identity())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    /// Terms in basis-index order.
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &CentralFraction)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: Mono) -> CentralFraction {
        self.terms
            .get(&mono)
            .cloned()
            .unwrap_or_else(|| CentralFraction::zero(self.nvars()))
    }

    fn check_compat(&self, other: &Self) -> Result<()> {
        if self.basis == other.basis && self.with_s == other.with_s {
            Ok(())
        } else {
            Err(Error::LevelMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compat(other)?;
        let mut terms = self.terms.clone();
        for (mono, c) in &other.terms {
            match terms.get_mut(mono) {
                Some(e) => {
                    *e = e.add(c);
                    if e.is_zero() {
                        terms.remove(mono);
                    }
                }
                None => {
                    terms.insert(*mono, c.clone());
                }
            }
        }
        Ok(Self {
            basis: Arc::clone(&self.basis),
            with_s: self.with_s,
            terms,
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            basis: Arc::clone(&self.basis),
            with_s: self.with_s,
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &CentralFraction) -> Self {
        if c.is_zero() {
            return Self::zero(&self.basis, self.with_s);
        }
        Self {
            basis: Arc::clone(&self.basis),
            with_s: self.with_s,
            terms: self.terms.iter().map(|(m, a)| (*m, a.mul(c))).collect(),
        }
    }

    /// Exact distributed product in normal form.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compat(other)?;
        let mut terms: BTreeMap<Mono, CentralFraction> = BTreeMap::new();
        for (&ma, ca) in &self.terms {
            for (&mb, cb) in &other.terms {
                let (sign, mono, correction) = monomial_mul(&self.basis, self.with_s, ma, mb);
                let mut coeff = ca.mul(cb).mul(&CentralFraction::from_poly(correction));
                if sign < 0 {
                    coeff = coeff.neg();
                }
                match terms.get_mut(&mono) {
                    Some(e) => {
                        *e = e.add(&coeff);
                        if e.is_zero() {
                            terms.remove(&mono);
                        }
                    }
                    None => {
                        if !coeff.is_zero() {
                            terms.insert(mono, coeff);
                        }
                    }
                }
            }
        }
        Ok(Self {
            basis: Arc::clone(&self.basis),
            with_s: self.with_s,
            terms,
        })
    }

    /// The left-multiplication matrix of this element in the `B_m` basis:
    /// column `j` holds the coordinates of `self · b_j`.
    pub fn left_mul_matrix(&self) -> Vec<Vec<CentralFraction>> {
        let level = self.basis.level();
        let dim = 1usize << (2 * level);
        let nvars = self.nvars();
        let mut mat = vec![vec![CentralFraction::zero(nvars); dim]; dim];
        for j in 0..dim {
            let bj = Mono::from_basis_index(j, level);
            for (&ma, ca) in &self.terms {
                let (sign, mono, correction) = monomial_mul(&self.basis, self.with_s, ma, bj);
                let mut coeff = ca.mul(&CentralFraction::from_poly(correction));
                if sign < 0 {
                    coeff = coeff.neg();
                }
                let i = mono.basis_index(level);
                mat[i][j] = mat[i][j].add(&coeff);
            }
        }
        mat
    }

    /// Coordinates of this element in the monomial basis, as a `4^m` vector.
    fn coordinates(&self) -> Vec<CentralFraction> {
        let level = self.basis.level();
        let dim = 1usize << (2 * level);
        let nvars = self.nvars();
        let mut v = vec![CentralFraction::zero(nvars); dim];
        for (&mono, c) in &self.terms {
            v[mono.basis_index(level)] = c.clone();
        }
        v
    }

    /// Product of the distinct coefficient denominators: a central
    /// polynomial `δ` such that `δ · self` has polynomial coefficients.
    fn denominator_clearing(&self) -> LaurentPoly {
        let mut delta = LaurentPoly::one(self.nvars());
        let mut seen: Vec<&LaurentPoly> = Vec::new();
        for c in self.terms.values() {
            let d = c.den();
            if !d.is_constant() && !seen.contains(&d) {
                seen.push(d);
                delta = delta.mul(d);
            }
        }
        delta
    }

    /// Coefficients `[c_0, ..., c_{d-1}]` of the monic minimal polynomial
    /// `x^d + c_{d-1} x^{d-1} + ... + c_0` over the central fraction field.
    /// The degree is at most `2^m`, so only a handful of powers are needed.
    ///
    /// Denominators are cleared up front: the min poly of `δ·a` is computed
    /// over polynomial coefficients (powers and elimination stay cheap), then
    /// substituting `x ↦ δx` and dividing by `δ^d` rescales it back to the
    /// min poly of `a` via `c_k = ĉ_k / δ^{d-k}`.
    fn min_poly(&self) -> Vec<CentralFraction> {
        let dim = 1usize << (2 * self.basis.level());
        let nvars = self.nvars();
        let delta = self.denominator_clearing();
        let cleared = if delta.is_constant() {
            self.clone()
        } else {
            self.scale(&CentralFraction::from_poly(delta.clone()))
        };
        let mut power_coords: Vec<Vec<CentralFraction>> = Vec::new();
        let mut pow = Self::one(&self.basis, self.with_s);
        loop {
            power_coords.push(pow.coordinates());
            let k = power_coords.len() - 1;
            let rows: Vec<Vec<CentralFraction>> = (0..dim)
                .map(|i| power_coords.iter().map(|p| p[i].clone()).collect())
                .collect();
            let ns = linalg::nullspace(&rows, k + 1, nvars);
            if let Some(v) = ns.first() {
                // the first k powers are independent, so the single free
                // column is the last one and the relation is already monic
                debug_assert!(v[k].is_one());
                if delta.is_constant() {
                    return v[..k].to_vec();
                }
                let mut delta_pow = LaurentPoly::one(nvars);
                let mut out = vec![CentralFraction::zero(nvars); k];
                for j in (0..k).rev() {
                    delta_pow = delta_pow.mul(&delta);
                    out[j] = CentralFraction::new(
                        v[j].num().clone(),
                        v[j].den().mul(&delta_pow),
                    )
                    .expect("denominator is nonzero");
                }
                return out;
            }
            assert!(k < dim, "no minimal polynomial within the dimension bound");
            pow = pow.mul(&cleared).expect("powers share basis and mode");
        }
    }

    /// Exact inverse.  Rearranging the minimal polynomial
    /// `a^d + c_{d-1} a^{d-1} + ... + c_0 = 0` gives
    /// `a^{-1} = -c_0^{-1} (a^{d-1} + c_{d-1} a^{d-2} + ... + c_1)`;
    /// the model is a division ring, so `c_0 = 0` only for zero itself.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c = self.min_poly();
        let d = c.len();
        let neg_c0_inv = c[0].inv()?.neg();
        let mut result = Self::one(&self.basis, self.with_s);
        for k in (1..d).rev() {
            result = result.mul(self)?.add(&Self::scalar(
                &self.basis,
                self.with_s,
                c[k].clone(),
            ))?;
        }
        result = result.scale(&neg_c0_inv);
        // multiply-back check; the inverse is a polynomial in the element,
        // so the two sides agree
        assert!(
            self.mul(&result)?.is_one(),
            "inverse multiply-back check failed"
        );
        Ok(result)
    }

    /// The multiplicative commutator `a b a^{-1} b^{-1}`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        let ainv = self.inv()?;
        let binv = other.inv()?;
        self.mul(other)?.mul(&ainv)?.mul(&binv)
    }

    /// Determinant of the left-multiplication matrix; multiplicative, and
    /// equals `c^{4^m}` on central `c`.
    ///
    /// The characteristic polynomial of left multiplication is the minimal
    /// polynomial raised to `4^m / d`, so the determinant is
    /// `((-1)^d c_0)^{4^m / d}` — far cheaper than eliminating the full
    /// matrix.  A direct Bareiss determinant remains available through
    /// [`left_mul_matrix`] and [`linalg::determinant`].
    pub fn regular_norm(&self) -> CentralFraction {
        let dim = 1usize << (2 * self.basis.level());
        let c = self.min_poly();
        let d = c.len();
        if d == 0 || dim % d != 0 {
            // can only happen outside a division-ring model; fall back
            return linalg::determinant(&self.left_mul_matrix(), self.nvars());
        }
        let mut root_product = c[0].clone();
        if d % 2 != 0 {
            root_product = root_product.neg();
        }
        let mut norm = CentralFraction::one(self.nvars());
        for _ in 0..dim / d {
            norm = norm.mul(&root_product);
        }
        norm
    }

    /// True iff the element commutes with every `√p_i` and every `x_i`.
    pub fn is_central(&self) -> Result<bool> {
        for i in 1..=self.basis.level() {
            let r = Self::radical(&self.basis, self.with_s, i)?;
            if self.mul(&r)? != r.mul(self)? {
                return Ok(false);
            }
            let x = Self::generator(&self.basis, self.with_s, i)?;
            if self.mul(&x)? != x.mul(self)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True iff a central element is a root of unity, i.e. `±1` — the only
    /// torsion units of a rational function field over ℚ.
    pub fn is_torsion_central(&self) -> Result<bool> {
        if !self.is_central()? {
            return Err(Error::Config(
                "is_torsion_central requires a central element".into(),
            ));
        }
        let one = Self::one(&self.basis, self.with_s);
        Ok(*self == one || *self == one.neg())
    }

    /// Indices `i` with `a √p_i ≠ √p_i a`; equals the set of indices where
    /// some term has `μ_i = 1`, and is always finite.
    pub fn noncommuting_witnesses(&self) -> Result<Vec<u32>> {
        let mut out = Vec::new();
        for i in 1..=self.basis.level() {
            let r = Self::radical(&self.basis, self.with_s, i)?;
            if self.mul(&r)? != r.mul(self)? {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// Embeds the element into the series model under `t_i ↦ x_i²` (and
    /// requires coefficients whose denominators are monomials, which are the
    /// exactly invertible central series elements).
    pub fn to_series(&self) -> Result<SeriesElement> {
        let level = self.basis.level();
        let mut out = SeriesElement::zero(&self.basis);
        for (&mono, frac) in &self.terms {
            let (den_exps, den_coeff) = frac.den().as_monomial().ok_or_else(|| {
                Error::NotInvertible(
                    "embedding requires monomial denominators".into(),
                )
            })?;
            if self.with_s {
                let s_index = self.nvars() - 1;
                let uses_s = den_exps[s_index] != 0
                    || frac.num().terms().any(|(e, _)| e[s_index] != 0);
                if uses_s {
                    return Err(Error::NotInvertible(
                        "the central variable s has no finite series image".into(),
                    ));
                }
            }
            for (num_exps, q) in frac.num().terms() {
                let g = GroupElement::from_exponents((0..level).map(|i| {
                    let t_exp = num_exps[i as usize] - den_exps[i as usize];
                    let mu_bit = i64::from((mono.mu >> i) & 1);
                    (i + 1, 2 * i64::from(t_exp) + mu_bit)
                }));
                let coeff = FieldElement::from_terms(
                    &self.basis,
                    [(mono.eps, q / den_coeff)],
                );
                out = out.add(&SeriesElement::monomial(coeff, g))?;
            }
        }
        Ok(out)
    }
}

/// Dimension of the level-`m` model over its center: `4^m`.
pub fn dim_over_center(level: u32) -> u64 {
    1u64 << (2 * level)
}

/// Brute-force center computation: solves the commutation conditions
/// `[a, √p_i] = 0` and `[a, x_i] = 0` for unknown coordinates over the
/// central fraction field and returns a basis of the solution space.
pub fn center_basis(basis: &Arc<PrimeBasis>, with_s: bool) -> Vec<CrossedElement> {
    let level = basis.level();
    let dim = 1usize << (2 * level);
    let nvars = level as usize + usize::from(with_s);
    let mut rows: Vec<Vec<CentralFraction>> = Vec::new();
    let mut generators = Vec::new();
    for i in 0..level {
        generators.push(Mono::new(1 << i, 0)); // √p_{i+1}
        generators.push(Mono::new(0, 1 << i)); // x_{i+1}
    }
    for g in generators {
        for j in 0..dim {
            let bj = Mono::from_basis_index(j, level);
            let (s1, m1, c1) = monomial_mul(basis, with_s, g, bj);
            let (s2, m2, c2) = monomial_mul(basis, with_s, bj, g);
            debug_assert_eq!(m1, m2, "generator conjugation preserves the monomial");
            let mut lambda = c1.scale(&Rational::from(BigInt::from(s1)));
            lambda = lambda.sub(&c2.scale(&Rational::from(BigInt::from(s2))));
            if lambda.is_zero() {
                continue;
            }
            let mut row = vec![CentralFraction::zero(nvars); dim];
            row[j] = CentralFraction::from_poly(lambda);
            rows.push(row);
        }
    }
    linalg::nullspace(&rows, dim, nvars)
        .into_iter()
        .map(|v| {
            let mut e = CrossedElement::zero(basis, with_s);
            for (j, c) in v.into_iter().enumerate() {
                if !c.is_zero() {
                    e = e
                        .add(&CrossedElement::monomial(
                            basis,
                            with_s,
                            Mono::from_basis_index(j, level),
                            c,
                        ))
                        .expect("compatible terms");
                }
            }
            e
        })
        .collect()
}

fn poly_string(p: &LaurentPoly, level: u32, with_s: bool) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (exps, c) in p.terms() {
        let mut atoms = Vec::new();
        for i in 0..level as usize {
            if exps[i] != 0 {
                atoms.push(format!("x{}^{}", i + 1, 2 * exps[i]));
            }
        }
        if with_s {
            let se = exps[level as usize];
            if se == 1 {
                atoms.push("s".into());
            } else if se != 0 {
                atoms.push(format!("s^{se}"));
            }
        }
        let body = atoms.join(" ");
        let piece = if atoms.is_empty() {
            format!("{c}")
        } else if c.is_one() {
            body
        } else if (-c).is_one() {
            format!("-{body}")
        } else {
            format!("{c} {body}")
        };
        parts.push(piece);
    }
    join_signed(parts)
}

fn join_signed(parts: Vec<String>) -> String {
    let mut out = String::new();
    for (i, p) in parts.into_iter().enumerate() {
        if i == 0 {
            out.push_str(&p);
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&p);
        }
    }
    out
}

impl fmt::Display for CrossedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let level = self.basis.level();
        let mut parts = Vec::new();
        for (mono, frac) in &self.terms {
            let mut atoms = Vec::new();
            for i in 0..level {
                if mono.eps & (1 << i) != 0 {
                    atoms.push(format!("r{}", i + 1));
                }
            }
            for i in 0..level {
                if mono.mu & (1 << i) != 0 {
                    atoms.push(format!("x{}", i + 1));
                }
            }
            let base = atoms.join(" ");
            let piece = if let Some(c) = frac.as_constant() {
                if atoms.is_empty() {
                    format!("{c}")
                } else if c.is_one() {
                    base
                } else if (-&c).is_one() {
                    format!("-{base}")
                } else {
                    format!("{c} {base}")
                }
            } else {
                let num = format!("({})", poly_string(frac.num(), level, self.with_s));
                let coeff = if frac.den().is_one() {
                    num
                } else {
                    format!(
                        "{num} ({})^-1",
                        poly_string(frac.den(), level, self.with_s)
                    )
                };
                if atoms.is_empty() {
                    coeff
                } else {
                    format!("{coeff} {base}")
                }
            };
            parts.push(piece);
        }
        write!(f, "{}", join_signed(parts))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::rat;
    use rand::SeedableRng;

    fn basis(m: u32) -> Arc<PrimeBasis> {
        PrimeBasis::first_primes(m)
    }

    fn rad(b: &Arc<PrimeBasis>, i: u32) -> CrossedElement {
        CrossedElement::radical(b, false, i).unwrap()
    }

    fn x(b: &Arc<PrimeBasis>, i: u32) -> CrossedElement {
        CrossedElement::generator(b, false, i).unwrap()
    }

    fn t(b: &Arc<PrimeBasis>, i: u32) -> CrossedElement {
        CrossedElement::central_t(b, false, i).unwrap()
    }

    fn q(b: &Arc<PrimeBasis>, n: i64, d: i64) -> CrossedElement {
        CrossedElement::from_rational(b, false, rat(n, d))
    }

    #[test]
    fn monomial_relations() {
        let b = basis(2);
        // (√p1)(√p1): sign +1, correction p1
        let (sign, mono, corr) = monomial_mul(&b, false, Mono::new(1, 0), Mono::new(1, 0));
        assert_eq!(sign, 1);
        assert_eq!(mono, Mono::identity());
        assert_eq!(corr, LaurentPoly::constant(2, rat(2, 1)));
        // (x1)(√p1): sign -1, lands on √p1 x1
        let (sign, mono, corr) = monomial_mul(&b, false, Mono::new(0, 1), Mono::new(1, 0));
        assert_eq!(sign, -1);
        assert_eq!(mono, Mono::new(1, 1));
        assert!(corr.is_one());
        // (x1)(x1): correction t1
        let (sign, mono, corr) = monomial_mul(&b, false, Mono::new(0, 1), Mono::new(0, 1));
        assert_eq!(sign, 1);
        assert_eq!(mono, Mono::identity());
        assert_eq!(corr, LaurentPoly::var(2, 0));
    }

    #[test]
    fn commutation_table() {
        let b = basis(3);
        for i in 1..=3u32 {
            for j in 1..=3u32 {
                let lhs = rad(&b, i).mul(&x(&b, j)).unwrap();
                let rhs = x(&b, j).mul(&rad(&b, i)).unwrap();
                if i == j {
                    assert_eq!(lhs, rhs.neg(), "anticommutation at i = {i}");
                } else {
                    assert_eq!(lhs, rhs, "commutation at i = {i}, j = {j}");
                }
            }
            assert_eq!(x(&b, i).mul(&x(&b, i)).unwrap(), t(&b, i));
            let p = b.prime(i) as i64;
            assert_eq!(rad(&b, i).mul(&rad(&b, i)).unwrap(), q(&b, p, 1));
        }
    }

    #[test]
    fn mul_examples() {
        let b = basis(1);
        // (√p1 x1)² = -p1 t1
        let a = rad(&b, 1).mul(&x(&b, 1)).unwrap();
        let sq = a.mul(&a).unwrap();
        let expected = t(&b, 1).scale(&CentralFraction::constant(1, rat(-2, 1)));
        assert_eq!(sq, expected);
        assert!(sq.is_central().unwrap());
        // unit
        let one = CrossedElement::one(&b, false);
        assert_eq!(a.mul(&one).unwrap(), a);
    }

    #[test]
    fn mul_agrees_with_series_oracle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for m in 1..=3u32 {
            let b = basis(m);
            for _ in 0..30 {
                let a = crate::verify::random_crossed(&mut rng, &b, false, 3, 2, 1);
                let c = crate::verify::random_crossed(&mut rng, &b, false, 3, 2, 1);
                let lhs = a.mul(&c).unwrap().to_series().unwrap();
                let rhs = a.to_series().unwrap().mul(&c.to_series().unwrap()).unwrap();
                assert_eq!(lhs, rhs, "embedding mismatch at level {m}");
            }
        }
    }

    #[test]
    fn inv_examples() {
        let b = basis(1);
        // √p1⁻¹ = √p1 / p1
        let r = rad(&b, 1);
        assert_eq!(r.inv().unwrap(), r.scale(&CentralFraction::constant(1, rat(1, 2))));
        // x1⁻¹ = x1 / t1
        let xinv = x(&b, 1).inv().unwrap();
        let t1_inv = CentralFraction::from_poly(LaurentPoly::var(1, 0))
            .inv()
            .unwrap();
        assert_eq!(xinv, x(&b, 1).scale(&t1_inv));
        // (1 + √p1 x1)⁻¹ multiplies back to 1 (checked internally too)
        let a = CrossedElement::one(&b, false)
            .add(&rad(&b, 1).mul(&x(&b, 1)).unwrap())
            .unwrap();
        let ainv = a.inv().unwrap();
        assert!(a.mul(&ainv).unwrap().is_one());
        assert!(CrossedElement::zero(&b, false).inv().is_err());
    }

    #[test]
    fn inv_random_multiply_back() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let b = basis(2);
        for _ in 0..20 {
            let a = loop {
                let a = crate::verify::random_crossed(&mut rng, &b, false, 3, 2, 1);
                if !a.is_zero() {
                    break a;
                }
            };
            let ainv = a.inv().unwrap();
            assert!(a.mul(&ainv).unwrap().is_one());
        }
    }

    #[test]
    fn center_is_the_coefficient_field() {
        for m in 1..=2u32 {
            let b = basis(m);
            for with_s in [false, true] {
                let centers = center_basis(&b, with_s);
                assert_eq!(centers.len(), 1, "m = {m}, with_s = {with_s}");
                assert!(centers[0].is_central().unwrap());
                assert_eq!(
                    centers[0],
                    CrossedElement::one(&b, with_s),
                    "m = {m}, with_s = {with_s}"
                );
            }
        }
        // every basis element commutes with random elements
        let b = basis(2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let center = &center_basis(&b, false)[0];
        for _ in 0..50 {
            let a = crate::verify::random_crossed(&mut rng, &b, false, 3, 2, 1);
            assert_eq!(center.mul(&a).unwrap(), a.mul(center).unwrap());
        }
    }

    #[test]
    fn dimension_over_center() {
        assert_eq!(dim_over_center(0), 1);
        assert_eq!(dim_over_center(1), 4);
        assert_eq!(dim_over_center(2), 16);
        // rank oracle: the coordinate matrix of B_m has full rank
        for m in 1..=2u32 {
            let dim = 1usize << (2 * m);
            let nvars = m as usize;
            let mut rows = vec![vec![CentralFraction::zero(nvars); dim]; dim];
            let b = basis(m);
            for j in 0..dim {
                let e = CrossedElement::monomial(
                    &b,
                    false,
                    Mono::from_basis_index(j, m),
                    CentralFraction::one(nvars),
                );
                for (mono, c) in e.terms() {
                    rows[mono.basis_index(m)][j] = c.clone();
                }
            }
            assert_eq!(linalg::rank(&rows, dim) as u64, dim_over_center(m));
        }
    }

    #[test]
    fn regular_norm_examples() {
        let b = basis(1);
        // central c has norm c^{4^m}
        let c = t(&b, 1).add(&q(&b, 3, 1)).unwrap();
        let frac = c.coefficient(Mono::identity());
        let mut expected = CentralFraction::one(1);
        for _ in 0..4 {
            expected = expected.mul(&frac);
        }
        assert_eq!(c.regular_norm(), expected);
        assert!(CrossedElement::one(&b, false).regular_norm().is_one());
        // commutator(√p1, x1) = -1, norm 1, torsion
        let comm = rad(&b, 1).commutator(&x(&b, 1)).unwrap();
        assert_eq!(comm, q(&b, -1, 1));
        assert!(comm.regular_norm().is_one());
        assert!(comm.is_torsion_central().unwrap());
    }

    #[test]
    fn centrality_and_witnesses() {
        let b = basis(3);
        assert!(t(&b, 1).add(&q(&b, 3, 1)).unwrap().is_central().unwrap());
        assert!(!x(&b, 1).is_central().unwrap());
        assert!(!rad(&b, 1).mul(&x(&b, 1)).unwrap().is_central().unwrap());
        // witnesses equal the indices with μ_i = 1
        let a = rad(&b, 1)
            .mul(&x(&b, 1))
            .unwrap()
            .mul(&x(&b, 2))
            .unwrap();
        assert_eq!(a.noncommuting_witnesses().unwrap(), vec![1, 2]);
        let c = t(&b, 1).mul(&rad(&b, 3)).unwrap();
        assert_eq!(c.noncommuting_witnesses().unwrap(), Vec::<u32>::new());
        // torsion: only ±1
        assert!(q(&b, 1, 1).is_torsion_central().unwrap());
        assert!(q(&b, -1, 1).is_torsion_central().unwrap());
        assert!(!t(&b, 1).is_torsion_central().unwrap());
        assert!(x(&b, 1).is_torsion_central().is_err());
    }

    #[test]
    fn witnesses_match_mu_structure_randomly() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let b = basis(3);
        for _ in 0..50 {
            let a = crate::verify::random_crossed(&mut rng, &b, false, 4, 2, 1);
            let witnesses = a.noncommuting_witnesses().unwrap();
            let expected: Vec<u32> = (1..=3u32)
                .filter(|i| a.terms().any(|(mono, _)| mono.mu & (1 << (i - 1)) != 0))
                .collect();
            assert_eq!(witnesses, expected);
        }
    }

    #[test]
    fn r_mode_alpha_decomposition() {
        let b = basis(2);
        let alpha = CrossedElement::alpha(&b).unwrap();
        let s = CrossedElement::central_s(&b);
        assert!(s.is_central().unwrap());
        let mut rest = alpha;
        for i in 1..=2 {
            rest = rest
                .sub(&CrossedElement::generator(&b, true, i).unwrap().inv().unwrap())
                .unwrap();
        }
        assert_eq!(rest, s);
        // L-mode and R-mode elements do not mix
        assert!(s.add(&CrossedElement::one(&b, false)).is_err());
    }
}
