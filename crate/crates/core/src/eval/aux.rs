//! The six level-3 double series `ζ₃^{a,b}(1, k−1)` with numerator
//! `±(1−ω) ω^{m₁+s} (ω^{m₁+t} − 1) (1 + ω^{m₂+h} + ω^{2(m₂+h)})`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::IndexVector;
use crate::cyclotomic::Cyclo;
use crate::error::EvalError;

use super::RootTable;

/// `ζ₃^{a,b}`: bar type for `(0,1), (1,2), (2,0)`, tilde type for
/// `(1,0), (0,2), (2,1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum AuxTag {
    Bar01,
    Bar12,
    Bar20,
    Tilde10,
    Tilde02,
    Tilde21,
}

struct Shape {
    s: i64,
    t: i64,
    sign: i64,
    h: i64,
}

impl AuxTag {
    pub const ALL: [AuxTag; 6] = [
        AuxTag::Bar01,
        AuxTag::Bar12,
        AuxTag::Bar20,
        AuxTag::Tilde10,
        AuxTag::Tilde02,
        AuxTag::Tilde21,
    ];

    pub fn pair(self) -> (u32, u32) {
        match self {
            AuxTag::Bar01 => (0, 1),
            AuxTag::Bar12 => (1, 2),
            AuxTag::Bar20 => (2, 0),
            AuxTag::Tilde10 => (1, 0),
            AuxTag::Tilde02 => (0, 2),
            AuxTag::Tilde21 => (2, 1),
        }
    }

    pub fn is_bar(self) -> bool {
        matches!(self, AuxTag::Bar01 | AuxTag::Bar12 | AuxTag::Bar20)
    }

    fn shape(self) -> Shape {
        let (s, t, sign) = match self {
            AuxTag::Bar01 => (2, -2, 1),
            AuxTag::Bar12 => (1, 0, 1),
            AuxTag::Bar20 => (0, 2, 1),
            AuxTag::Tilde10 => (2, -2, -1),
            AuxTag::Tilde02 => (0, 2, -1),
            AuxTag::Tilde21 => (1, 0, -1),
        };
        Shape {
            s,
            t,
            sign,
            h: if self.is_bar() { -1 } else { 1 },
        }
    }

    /// Outer numerator `f(m₁)` evaluated literally.
    pub fn outer(self, table: &RootTable, m: i64) -> Complex64 {
        let Shape { s, t, sign, .. } = self.shape();
        let one = Complex64::new(1.0, 0.0);
        (one - table.power(1)) * table.power(m + s) * (table.power(m + t) - one) * sign as f64
    }

    /// Inner numerator `g(m₂)` evaluated literally.
    pub fn inner(self, table: &RootTable, m: i64) -> Complex64 {
        let h = self.shape().h;
        Complex64::new(1.0, 0.0) + table.power(m + h) + table.power(2 * (m + h))
    }

    /// `f(m) = Σ_e α_e ω^{em}`, exact coefficients `α₀, α₁, α₂`.
    pub fn outer_coefficients(self) -> [Cyclo; 3] {
        let Shape { s, t, sign, .. } = self.shape();
        let lead = Cyclo::from_ints(3, &[sign, -sign]);
        [
            Cyclo::zero(3),
            lead.mul(&Cyclo::root_power(3, s)).neg(),
            lead.mul(&Cyclo::root_power(3, s + t)),
        ]
    }

    /// `g(m) = Σ_e β_e ω^{em}`.
    pub fn inner_coefficients(self) -> [Cyclo; 3] {
        let h = self.shape().h;
        [Cyclo::one(3), Cyclo::root_power(3, h), Cyclo::root_power(3, 2 * h)]
    }

    /// `ζ₃^{a,b}(1, k−1) = Σ α_e β_{e'} L_∗(1, k−1; e, e')` over `e ≠ 0`.
    pub fn expansion(self, k: u32) -> Result<Vec<(Cyclo, IndexVector)>, EvalError> {
        if k < 3 {
            return Err(EvalError::Invalid(format!("auxiliary series need k ≥ 3, got {k}")));
        }
        let alpha = self.outer_coefficients();
        let beta = self.inner_coefficients();
        debug_assert!(alpha[0].is_zero());
        let mut out = Vec::with_capacity(6);
        for (e, a) in alpha.iter().enumerate().skip(1) {
            for (e2, b) in beta.iter().enumerate() {
                let iv = IndexVector::new(vec![1, k - 1], vec![e as u32, e2 as u32])?;
                out.push((a.mul(b), iv));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for AuxTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.pair();
        let kind = if self.is_bar() { "bar" } else { "tilde" };
        write!(f, "{a}{b}{kind}")
    }
}

impl FromStr for AuxTag {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self, EvalError> {
        let digits: String = s.chars().filter(char::is_ascii_digit).collect();
        AuxTag::ALL
            .into_iter()
            .find(|t| {
                let (a, b) = t.pair();
                format!("{a}{b}") == digits
            })
            .ok_or_else(|| EvalError::Invalid(format!("unknown auxiliary tag {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn outer_numerator_has_zero_mean() {
        for tag in AuxTag::ALL {
            // over one period, straight from the exact expansion
            let [a0, a1, a2] = tag.outer_coefficients();
            let mut total = Cyclo::zero(3);
            for m in 0..3 {
                total = total
                    .add(&a0)
                    .add(&a1.mul(&Cyclo::root_power(3, m)))
                    .add(&a2.mul(&Cyclo::root_power(3, 2 * m)));
            }
            assert!(total.is_zero(), "{tag}");
        }
    }

    #[test]
    fn expansion_matches_literal_numerators() {
        let table = RootTable::new(3);
        for tag in AuxTag::ALL {
            let alpha = tag.outer_coefficients();
            let beta = tag.inner_coefficients();
            for m in 0..6i64 {
                let f: Complex64 = (0..3).map(|e| alpha[e].to_complex() * table.power(e as i64 * m)).sum();
                let g: Complex64 = (0..3).map(|e| beta[e].to_complex() * table.power(e as i64 * m)).sum();
                assert!((f - tag.outer(&table, m)).norm() < 1e-14);
                assert!((g - tag.inner(&table, m)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn tags_parse() {
        assert_eq!("01".parse::<AuxTag>().unwrap(), AuxTag::Bar01);
        assert_eq!("(2,1)".parse::<AuxTag>().unwrap(), AuxTag::Tilde21);
        assert!("11".parse::<AuxTag>().is_err());
    }
}
