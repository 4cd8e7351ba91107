//! Generators for the sum and weighted-sum identities and the driver that
//! checks them.
//!
//! An identity is an [`IdentityInstance`]: some combination of exact
//! polynomial equalities and a [`Relation`] (a `ℚ(ω)`-linear combination of
//! `L_∗`, `ζ_N` and auxiliary values that must vanish numerically).

mod catalog;
mod kernels;
mod sums;

pub use catalog::{corollary_catalog, derive_weighted_level2, level2_closed_forms};
pub use kernels::{
    algebra_laws, algebra_suite, double_shuffle_suite, map_inverses, random_generator_word, regularization_checks,
};
pub use sums::{
    binomial_checks, lemma41_check, lemma42_check, lemma_grid, specializations, theorem_grid, thm43_element,
    thm43_poly, thm44_brute_force, thm44_element, thm44_poly, LemmaPoint,
};

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{rat, Alphabet, IndexVector, NCPoly, Rational};
use crate::cyclotomic::Cyclo;
use crate::error::{AlgebraError, EvalError};
use crate::eval::{shuffle_to_star, AuxTag, ComplexApprox, EvalConfig, Evaluator};
use crate::level;
use crate::mlv;

/// A value the evaluator knows how to compute.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Quantity {
    /// `L_∗(k; a)`, twists in `0..N`.
    L(IndexVector),
    /// `ζ_N(k; a)`, twists in `1..=N`.
    Zeta(IndexVector),
    /// `ζ₃^{a,b}(1, k−1)`.
    Aux(AuxTag, u32),
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::L(iv) => write!(f, "L*{iv}"),
            Quantity::Zeta(iv) => write!(f, "zeta_N{iv}"),
            Quantity::Aux(tag, k) => write!(f, "zeta3^{tag}(1,{})", k - 1),
        }
    }
}

fn index(ks: &[u32], twists: Vec<u32>) -> IndexVector {
    IndexVector::new(ks.to_vec(), twists).expect("exponents are positive")
}

/// `L_∗(ks; ts)` with twists read mod `level`.
pub fn l_value(level: u32, ks: &[u32], ts: &[i64]) -> Quantity {
    Quantity::L(index(
        ks,
        ts.iter().map(|&a| a.rem_euclid(level as i64) as u32).collect(),
    ))
}

/// `ζ_N(ks; ts)` with twists reduced into `1..=N`.
pub fn zeta_value(level: u32, ks: &[u32], ts: &[i64]) -> Quantity {
    Quantity::Zeta(index(ks, ts.iter().map(|&a| level::reduce_r(a, level)).collect()))
}

/// A `ℚ(ω)`-linear combination of [`Quantity`] values at one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    level: u32,
    terms: BTreeMap<Quantity, Cyclo>,
}

/// Value of a relation with the bound it must stay under.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Residual {
    pub value: ComplexApprox,
    pub budget: f64,
}

impl Relation {
    pub fn new(level: u32) -> Self {
        Relation {
            level,
            terms: BTreeMap::new(),
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn terms(&self) -> &BTreeMap<Quantity, Cyclo> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&mut self, q: Quantity, c: &Cyclo) {
        let slot = self.terms.entry(q.clone()).or_insert_with(|| Cyclo::zero(self.level));
        *slot = slot.add(c);
        if slot.is_zero() {
            self.terms.remove(&q);
        }
    }

    pub fn add_rat(&mut self, q: Quantity, c: Rational) {
        self.add(q, &Cyclo::from_rational(self.level, c));
    }

    pub fn add_int(&mut self, q: Quantity, c: i64) {
        self.add_rat(q, rat(c));
    }

    pub fn add_relation(&mut self, other: &Relation, scale: &Cyclo) {
        for (q, c) in &other.terms {
            self.add(q.clone(), &c.mul(scale));
        }
    }

    pub fn sub_relation(&mut self, other: &Relation) {
        self.add_relation(other, &Cyclo::from_int(self.level, -1));
    }

    /// `L_∗` applied to a polynomial over the MLV alphabet.
    pub fn from_mlv_poly(p: &NCPoly) -> Result<Self, AlgebraError> {
        let mut r = Relation::new(p.alphabet().level());
        for (iv, c) in p.generator_terms()? {
            r.add_rat(Quantity::L(iv), c);
        }
        Ok(r)
    }

    /// `L_⧢` applied to a polynomial over the MLV alphabet.
    pub fn from_mlv_poly_shuffle(p: &NCPoly) -> Result<Self, EvalError> {
        let level = p.alphabet().level();
        let mut r = Relation::new(level);
        for (iv, c) in p.generator_terms()? {
            r.add_rat(Quantity::L(shuffle_to_star(&iv, level)?), c);
        }
        Ok(r)
    }

    /// `ζ_N` applied to a polynomial over the level-N alphabet.
    pub fn from_level_poly(p: &NCPoly) -> Result<Self, AlgebraError> {
        let mut r = Relation::new(p.alphabet().level());
        for (iv, c) in p.generator_terms()? {
            r.add_rat(Quantity::Zeta(iv), c);
        }
        Ok(r)
    }

    /// The same relation as a polynomial over the MLV alphabet, when it
    /// only involves `L_∗` values with rational coefficients.
    pub fn to_mlv_poly(&self) -> Option<NCPoly> {
        let alphabet = Alphabet::mlv(self.level).ok()?;
        let mut p = NCPoly::zero(alphabet);
        for (q, c) in &self.terms {
            match q {
                Quantity::L(iv) => p.add_term(crate::algebra::word_from_indices(iv, alphabet), c.as_rational()?),
                _ => return None,
            }
        }
        Some(p)
    }

    /// Everything rewritten in terms of `L_∗` values: `ζ_N` through the
    /// root-of-unity filter, auxiliary series through their numerators.
    pub fn expand(&self) -> Result<Relation, EvalError> {
        let mut out = Relation::new(self.level);
        for (q, c) in &self.terms {
            let pieces = match q {
                Quantity::L(_) => vec![(Cyclo::one(self.level), q.clone())],
                Quantity::Zeta(iv) => level::expand_index(iv, self.level)?
                    .terms
                    .into_iter()
                    .map(|(d, iv)| (d, Quantity::L(iv)))
                    .collect(),
                Quantity::Aux(tag, k) => {
                    if self.level != 3 {
                        return Err(EvalError::Invalid("auxiliary series live at level 3".into()));
                    }
                    tag.expansion(*k)?
                        .into_iter()
                        .map(|(d, iv)| (d, Quantity::L(iv)))
                        .collect()
                }
            };
            for (d, q) in pieces {
                out.add(q, &d.mul(c));
            }
        }
        Ok(out)
    }

    /// `Σ c·value` and the budget `Σ |c|·err` plus a rounding allowance.
    pub fn evaluate(&self, ev: &Evaluator) -> Result<Residual, EvalError> {
        if ev.level() != self.level {
            return Err(EvalError::Invalid(format!(
                "relation at level {} given a level-{} evaluator",
                self.level,
                ev.level()
            )));
        }
        let parts: Vec<(ComplexApprox, f64)> = self
            .terms
            .par_iter()
            .map(|(q, c)| {
                let v = match q {
                    Quantity::L(iv) => ev.l_star(iv)?,
                    Quantity::Zeta(iv) => ev.zeta_n(iv)?,
                    Quantity::Aux(tag, k) => ev.aux(*tag, *k)?,
                };
                let cz = c.to_complex();
                Ok((v.scale(cz), c.l1() * v.abs_upper()))
            })
            .collect::<Result<_, EvalError>>()?;
        let scale: f64 = parts.iter().map(|(_, s)| s).sum();
        let value: ComplexApprox = parts.into_iter().map(|(v, _)| v).sum();
        let budget = value.err + 64.0 * f64::EPSILON * scale.max(1.0);
        Ok(Residual { value, budget })
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(q, c)| format!("({c})·{q}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityFamily {
    AlgebraLaw,
    MapInverse,
    Regularization,
    StuffleClosedForm,
    ShuffleClosedForm,
    Binomial,
    SumTheorem,
    WeightedTheorem,
    Specialization,
    Corollary,
    DerivedLevel2,
    DoubleShuffle,
}

impl fmt::Display for IdentityFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(family_name(*self))
    }
}

fn family_name(f: IdentityFamily) -> &'static str {
    match f {
        IdentityFamily::AlgebraLaw => "algebra-law",
        IdentityFamily::MapInverse => "map-inverse",
        IdentityFamily::Regularization => "regularization",
        IdentityFamily::StuffleClosedForm => "stuffle-closed-form",
        IdentityFamily::ShuffleClosedForm => "shuffle-closed-form",
        IdentityFamily::Binomial => "binomial",
        IdentityFamily::SumTheorem => "sum-theorem",
        IdentityFamily::WeightedTheorem => "weighted-theorem",
        IdentityFamily::Specialization => "specialization",
        IdentityFamily::Corollary => "corollary",
        IdentityFamily::DerivedLevel2 => "derived-level2",
        IdentityFamily::DoubleShuffle => "double-shuffle",
    }
}

/// Parameters of an instance, for reports.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Params {
    pub level: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub twists: Vec<i64>,
}

impl Params {
    pub fn level(level: u32) -> Self {
        Params {
            level,
            ..Params::default()
        }
    }

    pub fn with_k(mut self, k: u32) -> Self {
        self.k = Some(k);
        self
    }

    pub fn with_n(mut self, n: u32) -> Self {
        self.n = Some(n);
        self
    }

    pub fn with_twists(mut self, twists: &[i64]) -> Self {
        self.twists = twists.to_vec();
        self
    }
}

/// Whether an instance is claimed to hold, or is a displayed statement
/// known not to hold as printed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
    Holds,
    Erratum,
}

#[derive(Clone, Debug)]
pub struct IdentityInstance {
    pub id: String,
    pub family: IdentityFamily,
    pub params: Params,
    pub expectation: Expectation,
    /// Claimed-equal exact polynomials.
    pub sides: Option<(NCPoly, NCPoly)>,
    /// Claimed-equal integers.
    pub integers: Option<(BigInt, BigInt)>,
    /// A polynomial that must lie in `A⁰`.
    pub in_a0: Option<NCPoly>,
    /// A combination that must vanish numerically.
    pub relation: Option<Relation>,
    /// Residual ceiling for this instance; the evaluator's `tol` when unset.
    pub tol: Option<f64>,
}

impl IdentityInstance {
    pub fn new(id: impl Into<String>, family: IdentityFamily, params: Params) -> Self {
        IdentityInstance {
            id: id.into(),
            family,
            params,
            expectation: Expectation::Holds,
            sides: None,
            integers: None,
            in_a0: None,
            relation: None,
            tol: None,
        }
    }

    pub fn with_sides(mut self, lhs: NCPoly, rhs: NCPoly) -> Self {
        self.sides = Some((lhs, rhs));
        self
    }

    pub fn with_integers(mut self, lhs: BigInt, rhs: BigInt) -> Self {
        self.integers = Some((lhs, rhs));
        self
    }

    pub fn with_a0(mut self, p: NCPoly) -> Self {
        self.in_a0 = Some(p);
        self
    }

    pub fn with_relation(mut self, r: Relation) -> Self {
        self.relation = Some(r);
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = Some(tol);
        self
    }

    pub fn erratum(mut self) -> Self {
        self.expectation = Expectation::Erratum;
        self
    }

    /// Exact part of the check; `None` when there is nothing symbolic.
    pub fn symbolic(&self) -> Option<bool> {
        let mut checks = Vec::new();
        if let Some((l, r)) = &self.sides {
            checks.push(l == r);
        }
        if let Some((l, r)) = &self.integers {
            checks.push(l == r);
        }
        if let Some(p) = &self.in_a0 {
            checks.push(mlv::in_a0(p));
        }
        (!checks.is_empty()).then(|| checks.iter().all(|&b| b))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Equal,
    NotEqual,
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub family: IdentityFamily,
    pub params: Params,
    pub symbolic: Verdict,
    pub residual_re: Option<f64>,
    pub residual_im: Option<f64>,
    pub residual: Option<f64>,
    pub budget: Option<f64>,
    pub expected: Expectation,
    /// The identity holds: symbolic part equal and residual under budget.
    pub holds: bool,
    /// `holds` agrees with the expectation.
    pub pass: bool,
    pub millis: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{status} {}", self.id)?;
        match self.symbolic {
            Verdict::Equal => write!(f, "  symbolic=equal")?,
            Verdict::NotEqual => write!(f, "  symbolic=NOT-EQUAL")?,
            Verdict::NotApplicable => {}
        }
        if let (Some(r), Some(b)) = (self.residual, self.budget) {
            write!(f, "  residual={r:.3e} budget={b:.3e}")?;
        }
        if self.expected == Expectation::Erratum {
            write!(f, "  (as printed; expected not to hold, holds={})", self.holds)?;
        }
        if let Some(e) = &self.error {
            write!(f, "  error: {e}")?;
        }
        Ok(())
    }
}

/// Checks one instance; `ev` must be at the instance's level when it
/// carries a relation.
pub fn verify_instance(inst: &IdentityInstance, ev: &Evaluator) -> VerificationReport {
    let start = Instant::now();
    let symbolic = inst.symbolic();
    let mut error = None;
    let mut numeric: Option<Residual> = None;
    if let Some(rel) = &inst.relation {
        match rel.evaluate(ev) {
            Ok(r) => numeric = Some(r),
            Err(e) => error = Some(e.to_string()),
        }
    }
    let ceiling = inst.tol.unwrap_or(ev.config().tol);
    let numeric_ok = match (&inst.relation, &numeric) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(_), Some(r)) => r.value.abs() < r.budget && r.budget <= ceiling,
    };
    let holds = error.is_none() && symbolic.unwrap_or(true) && numeric_ok;
    let pass = match inst.expectation {
        Expectation::Holds => holds,
        // a displayed misprint must clearly fail: residual far above budget
        Expectation::Erratum => {
            error.is_none() && !holds && numeric.is_some_and(|r| r.value.abs() > 1e3 * r.budget.max(ceiling))
        }
    };
    VerificationReport {
        id: inst.id.clone(),
        family: inst.family,
        params: inst.params.clone(),
        symbolic: match symbolic {
            None => Verdict::NotApplicable,
            Some(true) => Verdict::Equal,
            Some(false) => Verdict::NotEqual,
        },
        residual_re: numeric.map(|r| r.value.re),
        residual_im: numeric.map(|r| r.value.im),
        residual: numeric.map(|r| r.value.abs()),
        budget: numeric.map(|r| r.budget),
        expected: inst.expectation,
        holds,
        pass,
        millis: start.elapsed().as_secs_f64() * 1e3,
        error,
    }
}

/// Checks a batch in parallel; reports come back in input order. One
/// evaluator per level is built from `cfg`.
pub fn verify_all(instances: &[IdentityInstance], cfg: EvalConfig) -> Result<Vec<VerificationReport>, EvalError> {
    let mut evaluators: HashMap<u32, Evaluator> = HashMap::new();
    for inst in instances {
        let level = inst.relation.as_ref().map_or(inst.params.level.max(1), Relation::level);
        if let std::collections::hash_map::Entry::Vacant(e) = evaluators.entry(level) {
            e.insert(Evaluator::new(EvalConfig { level, ..cfg })?);
        }
    }
    Ok(instances
        .par_iter()
        .map(|inst| {
            let level = inst.relation.as_ref().map_or(inst.params.level.max(1), Relation::level);
            verify_instance(inst, &evaluators[&level])
        })
        .collect())
}

/// Pass/fail tally.
pub fn summarize(reports: &[VerificationReport]) -> (usize, usize) {
    let passed = reports.iter().filter(|r| r.pass).count();
    (passed, reports.len() - passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_cancels_and_expands() {
        let mut r = Relation::new(2);
        r.add_int(l_value(2, &[3], &[1]), 2);
        r.add_int(l_value(2, &[3], &[-1]), -2);
        assert!(r.is_zero());
        r.add_int(zeta_value(2, &[2], &[0]), 1);
        let e = r.expand().unwrap();
        // ζ₂(2; 2) = L(2; 0) + L(2; 1)
        assert_eq!(e.terms().len(), 2);
        assert!(e.terms().values().all(|c| *c == Cyclo::one(2)));
    }

    #[test]
    fn euler_relation_vanishes() {
        let mut r = Relation::new(1);
        r.add_int(l_value(1, &[2, 1], &[0, 0]), 1);
        r.add_int(l_value(1, &[3], &[0]), -1);
        let ev = Evaluator::new(EvalConfig::new(1)).unwrap();
        let res = r.evaluate(&ev).unwrap();
        assert!(res.value.abs() < res.budget);
        assert!(res.budget < 1e-12);
    }
}
