//! Floating-point evaluation of `L_∗`, `L_⧢`, `ζ_N` and the level-3
//! auxiliary series, each with an absolute error bound.
//!
//! `L_∗` is computed from its iterated-integral form by Hölder convolution
//! (errors near machine precision). The truncated nested series with
//! integral tail bounds is kept as an independent second route and can be
//! switched on per evaluation through [`EvalConfig::cross_check`].

mod approx;
mod aux;
mod holder;
mod series;

pub use approx::{ComplexApprox, KahanSum};
pub use aux::AuxTag;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::algebra::{Alphabet, IndexVector, NCPoly, Rational};
use crate::cyclotomic::Cyclo;
use crate::error::EvalError;
use crate::level;

/// `ω^j = exp(2πij/N)` for `j = 0..N`, computed once.
#[derive(Clone, Debug)]
pub struct RootTable {
    level: u32,
    powers: Vec<Complex64>,
}

impl RootTable {
    pub fn new(level: u32) -> Self {
        assert!(level >= 1);
        let step = 2.0 * std::f64::consts::PI / level as f64;
        let powers = (0..level)
            .map(|j| Complex64::from_polar(1.0, step * j as f64))
            .collect();
        RootTable { level, powers }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn power(&self, e: i64) -> Complex64 {
        self.powers[e.rem_euclid(self.level as i64) as usize]
    }
}

pub const DEFAULT_TOL: f64 = 1e-8;
pub const MIN_TRUNC: u64 = 100;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalConfig {
    pub level: u32,
    /// Series truncation `M`; `None` picks `10⁶` for depth ≤ 2 and `10⁵`
    /// beyond.
    pub trunc: Option<u64>,
    pub tol: f64,
    /// Also run the direct series and fail on disagreement.
    pub cross_check: bool,
}

impl EvalConfig {
    pub fn new(level: u32) -> Self {
        EvalConfig {
            level,
            trunc: None,
            tol: DEFAULT_TOL,
            cross_check: false,
        }
    }

    pub fn with_trunc(mut self, trunc: u64) -> Self {
        self.trunc = Some(trunc);
        self
    }

    pub fn with_cross_check(mut self, on: bool) -> Self {
        self.cross_check = on;
        self
    }

    pub fn trunc_for(&self, depth: usize) -> u64 {
        self.trunc.unwrap_or(if depth <= 2 { 1_000_000 } else { 100_000 })
    }

    pub fn validate(&self) -> Result<(), EvalError> {
        if self.level == 0 {
            return Err(EvalError::Invalid("level must be positive".into()));
        }
        if self.trunc.is_some_and(|m| m < MIN_TRUNC) {
            return Err(EvalError::Invalid(format!("truncation must be at least {MIN_TRUNC}")));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(EvalError::Invalid("tolerance must be positive".into()));
        }
        Ok(())
    }
}

fn rational_to_f64(c: &Rational) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

#[derive(Clone, Debug)]
pub struct Evaluator {
    cfg: EvalConfig,
    table: RootTable,
}

impl Evaluator {
    pub fn new(cfg: EvalConfig) -> Result<Self, EvalError> {
        cfg.validate()?;
        Ok(Evaluator {
            table: RootTable::new(cfg.level),
            cfg,
        })
    }

    pub fn config(&self) -> &EvalConfig {
        &self.cfg
    }

    pub fn level(&self) -> u32 {
        self.cfg.level
    }

    fn reduced(&self, iv: &IndexVector) -> Vec<u32> {
        iv.twists().iter().map(|&a| a % self.cfg.level).collect()
    }

    /// Convergence of `L_∗`: `k₁ ≥ 2`, or `k₁ = 1` with `a₁ ≢ 0 (mod N)`.
    pub fn check_convergent(&self, iv: &IndexVector) -> Result<(), EvalError> {
        match (iv.ks().first(), iv.twists().first()) {
            (Some(1), Some(a)) if a % self.cfg.level == 0 => Err(EvalError::Divergent(iv.to_string())),
            _ => Ok(()),
        }
    }

    pub fn l_star(&self, iv: &IndexVector) -> Result<ComplexApprox, EvalError> {
        self.check_convergent(iv)?;
        if iv.depth() == 0 {
            return Ok(ComplexApprox::exact(Complex64::new(1.0, 0.0)));
        }
        let twists = self.reduced(iv);
        let value = holder::l_star(iv.ks(), &twists, &self.table);
        if self.cfg.cross_check {
            let direct = series::l_star_series(iv.ks(), &twists, &self.table, self.cfg.trunc_for(iv.depth()));
            agree(&format!("L*{iv}"), &value, &direct)?;
        }
        Ok(value)
    }

    /// `L_∗` by direct truncated summation.
    pub fn l_star_series(&self, iv: &IndexVector) -> Result<ComplexApprox, EvalError> {
        self.check_convergent(iv)?;
        if iv.depth() == 0 {
            return Ok(ComplexApprox::exact(Complex64::new(1.0, 0.0)));
        }
        Ok(series::l_star_series(
            iv.ks(),
            &self.reduced(iv),
            &self.table,
            self.cfg.trunc_for(iv.depth()),
        ))
    }

    /// `L_⧢(k; a) = L_∗(k; a₁, a₂ − a₁, …, a_n − a_{n−1})`.
    pub fn l_shuffle(&self, iv: &IndexVector) -> Result<ComplexApprox, EvalError> {
        self.l_star(&shuffle_to_star(iv, self.cfg.level)?)
    }

    fn require_mlv(&self, p: &NCPoly) -> Result<(), EvalError> {
        match p.alphabet() {
            Alphabet::Mlv(n) if n == self.cfg.level => Ok(()),
            other => Err(EvalError::Invalid(format!(
                "expected the level-{} MLV alphabet, got {other}",
                self.cfg.level
            ))),
        }
    }

    fn eval_terms(
        &self,
        p: &NCPoly,
        f: impl Fn(&IndexVector) -> Result<ComplexApprox, EvalError> + Sync,
    ) -> Result<ComplexApprox, EvalError> {
        let terms = p
            .generator_terms()
            .map_err(|e| EvalError::Inadmissible(e.to_string()))?;
        let parts: Vec<ComplexApprox> = terms
            .par_iter()
            .map(|(iv, c)| Ok(f(iv)?.scale(Complex64::new(rational_to_f64(c), 0.0))))
            .collect::<Result<_, EvalError>>()?;
        Ok(parts.into_iter().sum())
    }

    /// `L_∗` extended linearly to polynomials over the MLV alphabet.
    pub fn eval_poly(&self, p: &NCPoly) -> Result<ComplexApprox, EvalError> {
        self.require_mlv(p)?;
        self.eval_terms(p, |iv| self.l_star(iv))
    }

    /// `L_⧢` extended linearly.
    pub fn eval_poly_shuffle(&self, p: &NCPoly) -> Result<ComplexApprox, EvalError> {
        self.require_mlv(p)?;
        self.eval_terms(p, |iv| self.l_shuffle(iv))
    }

    fn check_zeta_index(iv: &IndexVector) -> Result<(), EvalError> {
        match iv.ks().first() {
            Some(1) => Err(EvalError::Divergent(iv.to_string())),
            _ => Ok(()),
        }
    }

    /// `ζ_N(k; a)` through the root-of-unity filter expansion into `L_∗`.
    pub fn zeta_n(&self, iv: &IndexVector) -> Result<ComplexApprox, EvalError> {
        Evaluator::check_zeta_index(iv)?;
        if iv.depth() == 0 {
            return Ok(ComplexApprox::exact(Complex64::new(1.0, 0.0)));
        }
        let expansion = level::expand_index(iv, self.cfg.level)?;
        let value = self.combination(&expansion.terms)?;
        if self.cfg.cross_check {
            agree(&format!("ζ_{}{iv}", self.cfg.level), &value, &self.zeta_n_series(iv)?)?;
        }
        Ok(value)
    }

    /// `ζ_N` by direct summation over congruence classes.
    pub fn zeta_n_series(&self, iv: &IndexVector) -> Result<ComplexApprox, EvalError> {
        Evaluator::check_zeta_index(iv)?;
        if iv.depth() == 0 {
            return Ok(ComplexApprox::exact(Complex64::new(1.0, 0.0)));
        }
        Ok(series::zeta_n_series(
            iv.ks(),
            iv.twists(),
            self.cfg.level,
            self.cfg.trunc_for(iv.depth()),
        ))
    }

    /// `ζ_N` extended linearly to polynomials over the level-N alphabet.
    pub fn eval_zeta_poly(&self, p: &NCPoly) -> Result<ComplexApprox, EvalError> {
        match p.alphabet() {
            Alphabet::Level(n) if n == self.cfg.level => {}
            other => {
                return Err(EvalError::Invalid(format!(
                    "expected the level-{} alphabet x0..x{}, got {other}",
                    self.cfg.level, self.cfg.level
                )))
            }
        }
        self.eval_terms(p, |iv| self.zeta_n(iv))
    }

    /// `Σ cⱼ L_∗(ivⱼ)` with exact cyclotomic coefficients.
    pub fn combination(&self, terms: &[(Cyclo, IndexVector)]) -> Result<ComplexApprox, EvalError> {
        let parts: Vec<ComplexApprox> = terms
            .par_iter()
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, iv)| {
                let v = self.l_star(iv)?;
                Ok(v.scale(c.to_complex())
                    .with_extra_err(v.abs_upper() * c.l1() * 4.0 * f64::EPSILON))
            })
            .collect::<Result<_, EvalError>>()?;
        Ok(parts.into_iter().sum())
    }

    fn require_level3(&self) -> Result<(), EvalError> {
        if self.cfg.level != 3 {
            return Err(EvalError::Invalid(format!(
                "auxiliary series live at level 3, not {}",
                self.cfg.level
            )));
        }
        Ok(())
    }

    /// `ζ₃^{a,b}(1, k−1)` through its exact expansion into six `L_∗` values.
    pub fn aux(&self, tag: AuxTag, k: u32) -> Result<ComplexApprox, EvalError> {
        self.require_level3()?;
        let value = self.combination(&tag.expansion(k)?)?;
        if self.cfg.cross_check {
            agree(&format!("ζ₃^{tag}({k})"), &value, &self.aux_direct(tag, k)?)?;
        }
        Ok(value)
    }

    /// `ζ₃^{a,b}(1, k−1)` summed directly from its displayed numerator.
    pub fn aux_direct(&self, tag: AuxTag, k: u32) -> Result<ComplexApprox, EvalError> {
        self.require_level3()?;
        if k < 3 {
            return Err(EvalError::Invalid(format!("auxiliary series need k ≥ 3, got {k}")));
        }
        let t = &self.table;
        Ok(series::double_series_periodic(
            |m| tag.outer(t, m as i64),
            |m| tag.inner(t, m as i64),
            k,
            3,
            self.cfg.trunc_for(2),
        ))
    }
}

/// Twist rewrite from `L_⧢` to `L_∗` arguments.
pub fn shuffle_to_star(iv: &IndexVector, level: u32) -> Result<IndexVector, EvalError> {
    let n = level as i64;
    let ts = iv.twists();
    let twists = (0..ts.len())
        .map(|i| {
            let prev = if i == 0 { 0 } else { ts[i - 1] as i64 };
            (ts[i] as i64 - prev).rem_euclid(n) as u32
        })
        .collect();
    Ok(IndexVector::new(iv.ks().to_vec(), twists)?)
}

/// Inverse of [`shuffle_to_star`]: prefix sums of twists.
pub fn star_to_shuffle(iv: &IndexVector, level: u32) -> Result<IndexVector, EvalError> {
    let mut acc = 0u32;
    let twists = iv
        .twists()
        .iter()
        .map(|&a| {
            acc = (acc + a) % level;
            acc
        })
        .collect();
    Ok(IndexVector::new(iv.ks().to_vec(), twists)?)
}

fn agree(what: &str, a: &ComplexApprox, b: &ComplexApprox) -> Result<(), EvalError> {
    let delta = (a.value() - b.value()).norm();
    let bound = a.err + b.err;
    if delta <= bound {
        Ok(())
    } else {
        Err(EvalError::RouteDisagreement {
            what: what.to_string(),
            delta,
            bound,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn iv(ks: &[u32], ts: &[u32]) -> IndexVector {
        IndexVector::new(ks.to_vec(), ts.to_vec()).unwrap()
    }

    #[test]
    fn divergent_index_is_rejected() {
        let e = Evaluator::new(EvalConfig::new(2)).unwrap();
        assert!(matches!(e.l_star(&iv(&[1, 2], &[0, 1])), Err(EvalError::Divergent(_))));
        assert!(e.l_star(&iv(&[1, 2], &[1, 1])).is_ok());
    }

    #[test]
    fn conversion_example() {
        let e = Evaluator::new(EvalConfig::new(2)).unwrap();
        let a = e.l_shuffle(&iv(&[2, 1], &[1, 1])).unwrap();
        let b = e.l_star(&iv(&[2, 1], &[1, 0])).unwrap();
        assert_eq!(a, b);
        let x = iv(&[3, 1, 2], &[1, 0, 1]);
        assert_eq!(star_to_shuffle(&shuffle_to_star(&x, 2).unwrap(), 2).unwrap(), x);
    }

    #[test]
    fn odd_zeta_two() {
        let e = Evaluator::new(EvalConfig::new(2).with_cross_check(true).with_trunc(100_000)).unwrap();
        let v = e.zeta_n(&iv(&[2], &[1])).unwrap();
        assert!((v.re - PI * PI / 4.0).abs() < 1e-13);
        assert!(v.im.abs() <= v.err);
    }

    #[test]
    fn routes_agree_at_level_three() {
        let e = Evaluator::new(EvalConfig::new(3).with_trunc(20_000).with_cross_check(true)).unwrap();
        for (ks, ts) in [
            (&[1u32, 2][..], &[1u32, 2][..]),
            (&[2, 1], &[2, 1]),
            (&[1, 1, 2], &[2, 1, 0]),
        ] {
            e.l_star(&iv(ks, ts)).unwrap();
        }
        e.zeta_n(&iv(&[2, 1], &[1, 2])).unwrap();
        for tag in AuxTag::ALL {
            e.aux(tag, 4).unwrap();
        }
    }
}
