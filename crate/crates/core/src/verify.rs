//! Seeded, machine-checkable verification of the construction's defining
//! identities: the fixed field of the Galois generators, the twist
//! character, the twisted ring axioms, the radical centralizer identity,
//! independence of the generators over the center, the R-mode structure,
//! and norm-torsion of commutators.
//!
//! Each check owns one seeded generator, so a report is reproducible from
//! its configuration alone.  Failures always carry a serialized witness.
//!
//! The suite doubles as its own sensitivity test: running it with
//! [`Mutation::DropTwistSign`] must make the twist-character and
//! radical-centralizer checks fail, which guards against a vacuous suite.
//! (The ring axioms deliberately keep the mutation hook too, but they hold
//! in the untwisted group ring as well, so they are not a kill witness.)

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::crossed::{center_basis, dim_over_center, CentralFraction, CrossedElement, LaurentPoly, Mono};
use crate::crossed::linalg;
use crate::error::{Error, Result};
use crate::grp::GroupElement;
use crate::numfield::{rat, FieldElement, PrimeBasis};
use crate::series::SeriesElement;

/// Deliberate implementation defects used to prove the suite can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Mutation {
    #[default]
    None,
    /// Evaluate the twist character as the identity everywhere.
    DropTwistSign,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Config {
    pub seed: u64,
    pub level: u32,
    pub primes: Option<Vec<u64>>,
    /// Scales the built-in per-check sample sizes (default 1.0).
    pub trial_scale: f64,
    pub mutation: Mutation,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            seed: 0,
            level: 2,
            primes: None,
            trial_scale: 1.0,
            mutation: Mutation::None,
        }
    }
}

impl Config {
    fn basis(&self, level: u32) -> Result<Arc<PrimeBasis>> {
        match &self.primes {
            Some(p) => {
                let take: Vec<u64> = p.iter().take(level as usize).copied().collect();
                if take.len() < level as usize {
                    return Err(Error::Config(format!(
                        "need at least {level} primes, got {}",
                        take.len()
                    )));
                }
                PrimeBasis::new(take)
            }
            None => Ok(PrimeBasis::first_primes(level)),
        }
    }

    fn trials(&self, base: usize) -> usize {
        ((base as f64 * self.trial_scale).round() as usize).max(1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One verification record; `witness` is present exactly when the check failed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    pub statement: String,
    pub samples: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckReport {
    fn pass(id: &str, statement: &str, samples: usize) -> Self {
        Self {
            id: id.into(),
            statement: statement.into(),
            samples,
            status: Status::Pass,
            witness: None,
        }
    }

    fn fail(id: &str, statement: &str, samples: usize, witness: String) -> Self {
        Self {
            id: id.into(),
            statement: statement.into(),
            samples,
            status: Status::Fail,
            witness: Some(witness),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

fn check_rng(seed: u64, id: &str) -> ChaCha8Rng {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in id.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x100000001b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

pub fn random_field_element(
    rng: &mut ChaCha8Rng,
    basis: &Arc<PrimeBasis>,
    max_terms: usize,
) -> FieldElement {
    let m = basis.level();
    let nterms = rng.gen_range(0..=max_terms);
    FieldElement::from_terms(
        basis,
        (0..nterms).map(|_| {
            (
                rng.gen_range(0u32..(1 << m)),
                rat(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=4)),
            )
        }),
    )
}

pub fn random_group_element(rng: &mut ChaCha8Rng, max_index: u32, max_exp: i64) -> GroupElement {
    let n = rng.gen_range(0..=3usize);
    GroupElement::from_exponents((0..n).map(|_| {
        (
            rng.gen_range(1..=max_index),
            rng.gen_range(-max_exp..=max_exp),
        )
    }))
}

pub fn random_series(
    rng: &mut ChaCha8Rng,
    basis: &Arc<PrimeBasis>,
    max_terms: usize,
) -> SeriesElement {
    let m = basis.level();
    let n = rng.gen_range(0..=max_terms);
    let mut out = SeriesElement::zero(basis);
    for _ in 0..n {
        let g = random_group_element(rng, m.max(1), 2);
        let c = random_field_element(rng, basis, 2);
        out = out
            .add(&SeriesElement::monomial(c, g))
            .expect("same basis");
    }
    out
}

/// Random crossed element with polynomial coefficients (unit denominators),
/// sparse enough to keep exact solves fast.
pub fn random_crossed(
    rng: &mut ChaCha8Rng,
    basis: &Arc<PrimeBasis>,
    with_s: bool,
    max_terms: usize,
    max_poly_terms: usize,
    max_exp: i32,
) -> CrossedElement {
    let m = basis.level();
    let nvars = m as usize + usize::from(with_s);
    let n = rng.gen_range(0..=max_terms);
    let mut out = CrossedElement::zero(basis, with_s);
    for _ in 0..n {
        let mono = Mono::new(rng.gen_range(0..(1u32 << m)), rng.gen_range(0..(1u32 << m)));
        let poly_terms = rng.gen_range(1..=max_poly_terms);
        let poly = LaurentPoly::from_terms(
            nvars,
            (0..poly_terms).map(|_| {
                (
                    (0..nvars)
                        .map(|_| rng.gen_range(-max_exp..=max_exp))
                        .collect::<Vec<i32>>(),
                    rat(rng.gen_range(-5i64..=5), 1),
                )
            }),
        );
        out = out
            .add(&CrossedElement::monomial(
                basis,
                with_s,
                mono,
                CentralFraction::from_poly(poly),
            ))
            .expect("compatible terms");
    }
    out
}

fn random_nonzero_crossed(
    rng: &mut ChaCha8Rng,
    basis: &Arc<PrimeBasis>,
    with_s: bool,
    max_terms: usize,
    max_poly_terms: usize,
    max_exp: i32,
) -> CrossedElement {
    loop {
        let a = random_crossed(rng, basis, with_s, max_terms, max_poly_terms, max_exp);
        if !a.is_zero() {
            return a;
        }
    }
}

/// Elements of ℚ are exactly the fixed points of all Galois generators.
pub fn check_fixed_field(cfg: &Config) -> Result<CheckReport> {
    const ID: &str = "fixed-field";
    const STMT: &str = "f_i(a) = a for all i iff a is rational";
    let level = cfg.level.max(1);
    let basis = cfg.basis(level)?;
    let mut rng = check_rng(cfg.seed, ID);
    let trials = cfg.trials(500);
    for k in 0..trials {
        // alternate unconstrained samples with forced-radical ones so both
        // directions of the equivalence get exercised
        let a = if k % 3 == 2 {
            let forced = FieldElement::from_terms(
                &basis,
                [(rng.gen_range(1u32..(1 << level)), rat(rng.gen_range(1..=5), 1))],
            );
            random_field_element(&mut rng, &basis, 3)
                .add(&forced)
                .expect("same basis")
        } else {
            random_field_element(&mut rng, &basis, 3)
        };
        if a.fixed_by_all() != a.is_rational() {
            return Ok(CheckReport::fail(ID, STMT, trials, format!("a = {a}")));
        }
    }
    Ok(CheckReport::pass(ID, STMT, trials))
}

/// `Φ_{x_i} = f_i`, the sign law `Φ_g(√p_i) = (-1)^{n_i} √p_i`, and the
/// trivial action of the squares subgroup.
pub fn check_twist_character(cfg: &Config) -> Result<CheckReport> {
    const ID: &str = "twist-character";
    const STMT: &str = "phi(x_i) = f_i; phi_g(rad i) = (-1)^{n_i} rad i; phi trivial on H";
    let level = cfg.level.max(1);
    let basis = cfg.basis(level)?;
    let mut rng = check_rng(cfg.seed, ID);
    let trials = cfg.trials(100);
    let phi = |a: &FieldElement, g: &GroupElement| -> Result<FieldElement> {
        match cfg.mutation {
            Mutation::None => a.apply_phi(g),
            Mutation::DropTwistSign => a.apply_phi_untwisted(g),
        }
    };
    for _ in 0..trials {
        let a = random_field_element(&mut rng, &basis, 3);
        let i = rng.gen_range(1..=level);
        let via_phi = phi(&a, &GroupElement::generator(i))?;
        let via_auto = a.apply_auto(i)?;
        if via_phi != via_auto {
            return Ok(CheckReport::fail(
                ID,
                STMT,
                trials,
                format!("phi(x{i}) disagrees with f{i} on a = {a}"),
            ));
        }
        let g = random_group_element(&mut rng, level, 3);
        let r = FieldElement::radical(&basis, i)?;
        let expected = if g.exponent(i).rem_euclid(2) == 1 {
            r.neg()
        } else {
            r.clone()
        };
        if phi(&r, &g)? != expected {
            return Ok(CheckReport::fail(
                ID,
                STMT,
                trials,
                format!("sign law fails at g = {g}, i = {i}"),
            ));
        }
        let h = g.compose(&g);
        if phi(&a, &h)? != a {
            return Ok(CheckReport::fail(
                ID,
                STMT,
                trials,
                format!("square {h} does not act trivially on a = {a}"),
            ));
        }
    }
    Ok(CheckReport::pass(ID, STMT, trials))
}

/// Associativity, distributivity and unit laws of the twisted product.
pub fn check_ring_axioms(cfg: &Config) -> Result<CheckReport> {
    const ID: &str = "ring-axioms";
    const STMT: &str = "twisted product is associative, distributive, unital";
    let level = cfg.level.max(1);
    let basis = cfg.basis(level)?;
    let mut rng = check_rng(cfg.seed, ID);
    let trials = cfg.trials(500);
    let mul = |a: &SeriesElement, b: &SeriesElement| -> Result<SeriesElement> {
        match cfg.mutation {
            Mutation::None => a.mul(b),
            Mutation::DropTwistSign => a.mul_untwisted(b),
        }
    };
    let one = SeriesElement::one(&basis);
    for _ in 0..trials {
        let a = random_series(&mut rng, &basis, 5);
        let b = random_series(&mut rng, &basis, 5);
        let c = random_series(&mut rng, &basis, 5);
        let assoc = mul(&mul(&a, &b)?, &c)? == mul(&a, &mul(&b, &c)?)?;
        let distrib = mul(&a, &b.add(&c)?)? == mul(&a, &b)?.add(&mul(&a, &c)?)?;
        let unital = mul(&a, &one)? == a && mul(&one, &a)? == a;
        if !(assoc && distrib && unital) {
            return Ok(CheckReport::fail(
                ID,
                STMT,
                trials,
                format!(
                    "assoc={assoc} distrib={distrib} unital={unital} at a = {a}; b = {b}; c = {c}"
                ),
            ));
        }
    }
    Ok(CheckReport::pass(ID, STMT, trials))
}

/// For `α = β x_i + γ` with `β, γ` free of `x_i`:
/// `√p_i α - α √p_i = 2 β √p_i x_i`, nonzero whenever `β ≠ 0`.
pub fn check_radical_centralizer(cfg: &Config) -> Result<CheckReport> {
    const ID: &str = "radical-centralizer";
    const STMT: &str = "rad_i * alpha - alpha * rad_i = 2 beta rad_i x_i for alpha = beta x_i + gamma";
    let level = cfg.level.max(1);
    let basis = cfg.basis(level)?;
    let mut rng = check_rng(cfg.seed, ID);
    let trials = cfg.trials(200);
    // the identity lives or dies by the twist sign, so the commutator uses
    // the mutable product: dropping the sign makes `√p_i` central and the
    // left side collapse to zero
    let mul = |a: &SeriesElement, b: &SeriesElement| -> Result<SeriesElement> {
        match cfg.mutation {
            Mutation::None => a.mul(b),
            Mutation::DropTwistSign => a.mul_untwisted(b),
        }
    };
    let mut checked = 0usize;
    let mut attempts = 0usize;
    while checked < trials {
        attempts += 1;
        if attempts > trials * 20 {
            return Err(Error::Config("sampler starved".into()));
        }
        let i = rng.gen_range(1..=level);
        let strip = |s: SeriesElement| -> SeriesElement {
            let kept = s
                .terms()
                .filter(|(g, _)| g.exponent(i) == 0)
                .map(|(g, c)| (g.clone(), c.clone()))
                .collect::<Vec<_>>();
            SeriesElement::from_terms(s.basis(), kept).expect("same basis")
        };
        let beta = strip(random_series(&mut rng, &basis, 3));
        let gamma = strip(random_series(&mut rng, &basis, 3));
        if beta.is_zero() {
            // the identity is vacuous without an x_i part
            continue;
        }
        let xi = SeriesElement::generator(&basis, i);
        let alpha = beta.mul(&xi)?.add(&gamma)?;
        let ri = SeriesElement::scalar(FieldElement::radical(&basis, i)?);
        let lhs = mul(&ri, &alpha)?.sub(&mul(&alpha, &ri)?)?;
        let two = SeriesElement::scalar(FieldElement::from_rational(&basis, rat(2, 1)));
        let rhs = two.mul(&beta)?.mul(&ri)?.mul(&xi)?;
        if lhs != rhs || lhs.is_zero() {
            return Ok(CheckReport::fail(
                ID,
                STMT,
                trials,
                format!("beta = {beta}; gamma = {gamma}; i = {i}"),
            ));
        }
        checked += 1;
    }
    Ok(CheckReport::pass(ID, STMT, trials))
}

/// The generators `x_1, ..., x_m` are linearly independent over the computed
/// center, and `√p_n` commutes with `x_i` exactly when `i ≠ n`.
pub fn check_generator_independence(cfg: &Config) -> Result<CheckReport> {
    const ID: &str = "generator-independence";
    const STMT: &str = "x_1..x_m independent over the center; rad_n commutes with x_i iff i != n";
    let level = cfg.level.max(1);
    let basis = cfg.basis(level)?;
    // Σ c_i x_i = 0 with central c_i: the coordinate matrix of {x_i} must
    // have full rank over the coefficient field
    let dim = 1usize << (2 * level);
    let mut rows = vec![vec![CentralFraction::zero(level as usize); level as usize]; dim];
    for i in 0..level {
        let x = CrossedElement::generator(&basis, false, i + 1)?;
        for (mono, c) in x.terms() {
            rows[mono.basis_index(level)][i as usize] = c.clone();
        }
    }
    let kernel = linalg::nullspace(&rows, level as usize, level as usize);
    if !kernel.is_empty() {
        return Ok(CheckReport::fail(
            ID,
            STMT,
            level as usize,
            format!("nontrivial relation among the x_i: kernel dimension {}", kernel.len()),
        ));
    }
    // the contradiction device: √p_n commutes with every x_i (i < n) but not x_n
    for n in 1..=level {
        let rn = CrossedElement::radical(&basis, false, n)?;
        for i in 1..=level {
            let xi = CrossedElement::generator(&basis, false, i)?;
            let commutes = rn.mul(&xi)? == xi.mul(&rn)?;
            if commutes != (i != n) {
                return Ok(CheckReport::fail(
                    ID,
                    STMT,
                    level as usize,
                    format!("rad{n} vs x{i}: commutes = {commutes}"),
                ));
            }
        }
    }
    Ok(CheckReport::pass(ID, STMT, level as usize))
}

/// R-mode structure: dimension `4^n` over the center, `s` central, and the
/// defining decomposition `α - (x_1^{-1} + ... + x_n^{-1}) = s`.
pub fn check_r_structure(cfg: &Config) -> Result<CheckReport> {
    const ID: &str = "r-mode-structure";
    const STMT: &str = "dim = 4^n with s central and alpha - prefix = s in R-mode";
    let n = cfg.level.max(1);
    let basis = cfg.basis(n)?;
    let expected_dim = dim_over_center(n);
    let centers = center_basis(&basis, true);
    if centers.len() != 1 {
        return Ok(CheckReport::fail(
            ID,
            STMT,
            n as usize,
            format!("center basis has {} elements", centers.len()),
        ));
    }
    // rank of the B_n coordinate set over the center
    let dim = 1usize << (2 * n);
    let nvars = n as usize + 1;
    let mut rows = vec![vec![CentralFraction::zero(nvars); dim]; dim];
    for j in 0..dim {
        rows[j][j] = CentralFraction::one(nvars);
    }
    let rank = linalg::rank(&rows, dim);
    if rank as u64 != expected_dim {
        return Ok(CheckReport::fail(
            ID,
            STMT,
            n as usize,
            format!("rank {rank} != 4^{n}"),
        ));
    }
    let s = CrossedElement::central_s(&basis);
    if !s.is_central()? {
        return Ok(CheckReport::fail(ID, STMT, n as usize, "s is not central".into()));
    }
    let mut alpha = CrossedElement::alpha(&basis)?;
    for i in 1..=n {
        alpha = alpha.sub(&CrossedElement::generator(&basis, true, i)?.inv()?)?;
    }
    if alpha != s {
        return Ok(CheckReport::fail(
            ID,
            STMT,
            n as usize,
            format!("alpha - prefix = {alpha}"),
        ));
    }
    Ok(CheckReport::pass(ID, STMT, n as usize))
}

/// Commutators of invertible elements have regular norm 1, and every central
/// commutator encountered is torsion (±1); `t_1` is the negative control.
pub fn check_norm_torsion(cfg: &Config) -> Result<CheckReport> {
    const ID: &str = "commutator-norm-torsion";
    const STMT: &str = "regular_norm(commutator) = 1; central commutators are ±1; t_1 is not torsion";
    let level = cfg.level.max(1);
    let basis = cfg.basis(level)?;
    let mut rng = check_rng(cfg.seed, ID);
    let trials = cfg.trials(200);
    let nvars = level as usize;
    let one = CentralFraction::one(nvars);
    for _ in 0..trials {
        let a = random_nonzero_crossed(&mut rng, &basis, false, 2, 2, 1);
        let b = random_nonzero_crossed(&mut rng, &basis, false, 2, 2, 1);
        let c = a.commutator(&b)?;
        if c.regular_norm() != one {
            return Ok(CheckReport::fail(
                ID,
                STMT,
                trials,
                format!("norm != 1 for a = {a}; b = {b}"),
            ));
        }
        if c.is_central()? && !c.is_torsion_central()? {
            return Ok(CheckReport::fail(
                ID,
                STMT,
                trials,
                format!("central non-torsion commutator {c} from a = {a}; b = {b}"),
            ));
        }
    }
    let t1 = CrossedElement::central_t(&basis, false, 1)?;
    if t1.is_torsion_central()? {
        return Ok(CheckReport::fail(
            ID,
            STMT,
            trials,
            "negative control: t1 reported as torsion".into(),
        ));
    }
    Ok(CheckReport::pass(ID, STMT, trials))
}

pub const CHECK_IDS: &[&str] = &[
    "commutator-norm-torsion",
    "fixed-field",
    "generator-independence",
    "r-mode-structure",
    "radical-centralizer",
    "ring-axioms",
    "twist-character",
];

/// Runs every check (or one selected by id) and returns reports sorted by id.
pub fn run_all(cfg: &Config, only: Option<&str>) -> Result<Vec<CheckReport>> {
    if cfg.level < 1 {
        return Err(Error::Config("checks involving radicals need level >= 1".into()));
    }
    let mut reports = Vec::new();
    for &id in CHECK_IDS {
        if let Some(sel) = only {
            if sel != id {
                continue;
            }
        }
        let report = match id {
            "commutator-norm-torsion" => check_norm_torsion(cfg)?,
            "fixed-field" => check_fixed_field(cfg)?,
            "generator-independence" => check_generator_independence(cfg)?,
            "r-mode-structure" => check_r_structure(cfg)?,
            "radical-centralizer" => check_radical_centralizer(cfg)?,
            "ring-axioms" => check_ring_axioms(cfg)?,
            "twist-character" => check_twist_character(cfg)?,
            _ => unreachable!(),
        };
        reports.push(report);
    }
    if reports.is_empty() {
        return Err(Error::Config(format!(
            "unknown check id; known ids: {}",
            CHECK_IDS.join(", ")
        )));
    }
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_passes() {
        let cfg = Config {
            trial_scale: 0.2,
            ..Config::default()
        };
        let reports = run_all(&cfg, None).unwrap();
        assert_eq!(reports.len(), CHECK_IDS.len());
        for r in &reports {
            assert!(r.passed(), "{} failed: {:?}", r.id, r.witness);
        }
    }

    #[test]
    fn deterministic_under_seed_and_serializable() {
        let cfg = Config {
            trial_scale: 0.1,
            seed: 7,
            ..Config::default()
        };
        let a = run_all(&cfg, None).unwrap();
        let b = run_all(&cfg, None).unwrap();
        let ja = serde_json::to_string(&a).unwrap();
        let jb = serde_json::to_string(&b).unwrap();
        assert_eq!(ja, jb);
        let back: Vec<CheckReport> = serde_json::from_str(&ja).unwrap();
        assert_eq!(back.len(), a.len());
    }

    #[test]
    fn mutation_kills_at_least_two_checks() {
        let cfg = Config {
            trial_scale: 0.1,
            mutation: Mutation::DropTwistSign,
            ..Config::default()
        };
        let reports = run_all(&cfg, None).unwrap();
        let failed = reports.iter().filter(|r| !r.passed()).count();
        assert!(failed >= 2, "only {failed} checks failed under mutation");
        for r in reports.iter().filter(|r| !r.passed()) {
            assert!(r.witness.is_some(), "failure without witness in {}", r.id);
        }
    }

    #[test]
    fn only_filter_and_invalid_level() {
        let cfg = Config::default();
        let reports = run_all(&cfg, Some("fixed-field")).unwrap();
        assert_eq!(reports.len(), 1);
        assert!(run_all(&cfg, Some("nope")).is_err());
        let bad = Config {
            level: 0,
            ..Config::default()
        };
        assert!(run_all(&bad, None).is_err());
    }
}
