//! Exact arithmetic in `ℚ(ω)`, `ω = exp(2πi/N)`.
//!
//! Elements are stored as coefficient vectors in the power basis
//! `1, ω, …, ω^{φ(N)−1}`, reduced modulo the N-th cyclotomic polynomial,
//! so equality is structural.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{rat, Rational};

/// Integer coefficients of `Φ_N`, lowest degree first.
pub fn cyclotomic_poly(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = exact_div(&num, &cyclotomic_poly(d));
        }
    }
    num
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; rem.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd];
        q[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclo {
    level: u32,
    coeffs: Vec<Rational>,
}

impl Cyclo {
    pub fn zero(level: u32) -> Self {
        let deg = cyclotomic_poly(level).len() - 1;
        Cyclo {
            level,
            coeffs: vec![Rational::zero(); deg],
        }
    }

    pub fn from_rational(level: u32, c: Rational) -> Self {
        let mut z = Cyclo::zero(level);
        z.coeffs[0] = c;
        z
    }

    pub fn from_int(level: u32, c: i64) -> Self {
        Cyclo::from_rational(level, rat(c))
    }

    pub fn one(level: u32) -> Self {
        Cyclo::from_int(level, 1)
    }

    /// `ω^e` for any integer exponent.
    pub fn root_power(level: u32, e: i64) -> Self {
        let e = e.rem_euclid(level as i64) as usize;
        let mut raw = vec![Rational::zero(); level as usize];
        raw[e] = Rational::one();
        Cyclo::reduce(level, raw)
    }

    /// `c₀ + c₁ω + c₂ω² + …` from integer coefficients of any length.
    pub fn from_ints(level: u32, cs: &[i64]) -> Self {
        let mut out = Cyclo::zero(level);
        for (e, &c) in cs.iter().enumerate() {
            out = out.add(&Cyclo::root_power(level, e as i64).scale(&rat(c)));
        }
        out
    }

    fn reduce(level: u32, mut raw: Vec<Rational>) -> Self {
        let phi = cyclotomic_poly(level);
        let deg = phi.len() - 1;
        for i in (deg..raw.len()).rev() {
            let c = std::mem::take(&mut raw[i]);
            if c.is_zero() {
                continue;
            }
            // x^i = x^{i-deg}·(x^deg) and x^deg ≡ -Σ_{j<deg} φ_j x^j
            for (j, &pj) in phi[..deg].iter().enumerate() {
                raw[i - deg + j] -= &c * rat(pj);
            }
        }
        raw.truncate(deg);
        raw.resize(deg, Rational::zero());
        Cyclo { level, coeffs: raw }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value when the element lies in ℚ.
    pub fn as_rational(&self) -> Option<Rational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    pub fn add(&self, other: &Cyclo) -> Cyclo {
        assert_eq!(self.level, other.level, "level mismatch");
        Cyclo {
            level: self.level,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Cyclo) -> Cyclo {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Cyclo {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Cyclo {
        Cyclo {
            level: self.level,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Cyclo) -> Cyclo {
        assert_eq!(self.level, other.level, "level mismatch");
        let mut raw = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                raw[i + j] += a * b;
            }
        }
        Cyclo::reduce(self.level, raw)
    }

    pub fn to_complex(&self) -> Complex64 {
        let theta = 2.0 * std::f64::consts::PI / self.level as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(e, c)| {
                let a = theta * e as f64;
                Complex64::new(a.cos(), a.sin()) * c.to_f64().unwrap_or(f64::NAN)
            })
            .sum()
    }

    /// Upper bound on `|value|`: the ℓ¹ norm of the coefficients.
    pub fn l1(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY))
            .sum()
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match e {
                0 => String::new(),
                1 => "ω".to_string(),
                _ => format!("ω^{e}"),
            };
            let cs = if c.is_integer() {
                c.numer().to_string()
            } else {
                format!("{}/{}", c.numer(), c.denom())
            };
            parts.push(if mono.is_empty() {
                cs
            } else if c.is_one() {
                mono
            } else if *c == -Rational::one() {
                format!("-{mono}")
            } else {
                format!("{cs}{mono}")
            });
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join(" + ").replace("+ -", "- "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(2), vec![1, 1]);
        assert_eq!(cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
    }

    #[test]
    fn root_filter_vanishes() {
        for n in 2..8 {
            let mut s = Cyclo::zero(n);
            for e in 0..n {
                s = s.add(&Cyclo::root_power(n, e as i64));
            }
            assert!(s.is_zero(), "N = {n}");
        }
    }

    #[test]
    fn powers_multiply() {
        let w = Cyclo::root_power(3, 1);
        assert_eq!(w.mul(&w).mul(&w), Cyclo::one(3));
        assert_eq!(Cyclo::root_power(3, -1), w.mul(&w));
        let z = Cyclo::from_ints(3, &[4, 2]).to_complex();
        let om = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        assert!((z - (om * 2.0 + 4.0)).norm() < 1e-14);
    }

    #[test]
    fn display() {
        assert_eq!(Cyclo::from_ints(3, &[4, 2]).to_string(), "4 + 2ω");
        assert_eq!(Cyclo::root_power(3, 2).to_string(), "-1 - ω");
    }
}
