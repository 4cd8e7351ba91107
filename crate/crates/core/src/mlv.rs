//! The algebra `A = ℚ⟨x, y_a | a ∈ Z/N⟩` of multiple L-values.

use std::collections::HashMap;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::products::Diagonal;
use crate::algebra::{
    quasi_shuffle_poly, rat, shuffle_poly, word_from_indices, Alphabet, Class, IndexVector, Letter, NCPoly, Rational,
    Word,
};
use crate::error::AlgebraError;

fn require_mlv(p: &NCPoly) -> Result<u32, AlgebraError> {
    match p.alphabet() {
        Alphabet::Mlv(n) => Ok(n),
        other => Err(AlgebraError::WrongFamily {
            expected: "MLV",
            got: other,
        }),
    }
}

/// Harmonic shuffle `p ∗ q` on `A¹`.
pub fn stuffle(p: &NCPoly, q: &NCPoly) -> Result<NCPoly, AlgebraError> {
    let level = require_mlv(p)?;
    require_mlv(q)?;
    quasi_shuffle_poly(p, q, Diagonal::TwistSum { level })
}

/// Shuffle `p ⧢ q` on `A`.
pub fn shuffle(p: &NCPoly, q: &NCPoly) -> Result<NCPoly, AlgebraError> {
    require_mlv(p)?;
    shuffle_poly(p, q)
}

fn twist_map(p: &NCPoly, f: impl Fn(&[u32], u32) -> Vec<u32>) -> Result<NCPoly, AlgebraError> {
    let level = require_mlv(p)?;
    let alphabet = p.alphabet();
    let mut out = NCPoly::zero(alphabet);
    for (iv, c) in p.generator_terms()? {
        let twists = f(iv.twists(), level);
        let image = IndexVector::new(iv.ks().to_vec(), twists)?;
        out.add_term(word_from_indices(&image, alphabet), c);
    }
    Ok(out)
}

/// `I`: twists become prefix sums `a₁, a₁+a₂, …`.
pub fn map_i(p: &NCPoly) -> Result<NCPoly, AlgebraError> {
    twist_map(p, |ts, n| {
        let mut acc = 0u32;
        ts.iter()
            .map(|&a| {
                acc = (acc + a) % n;
                acc
            })
            .collect()
    })
}

/// `I⁻¹`: twists become consecutive differences `a₁, a₂−a₁, …`.
pub fn map_i_inv(p: &NCPoly) -> Result<NCPoly, AlgebraError> {
    twist_map(p, |ts, n| {
        let mut prev = 0u32;
        ts.iter()
            .map(|&a| {
                let d = (a + n - prev) % n;
                prev = a;
                d
            })
            .collect()
    })
}

/// Which product a regularization is taken with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Product {
    Stuffle,
    Shuffle,
}

impl Product {
    pub fn apply(self, p: &NCPoly, q: &NCPoly) -> Result<NCPoly, AlgebraError> {
        match self {
            Product::Stuffle => stuffle(p, q),
            Product::Shuffle => shuffle(p, q),
        }
    }
}

/// `p = Σ cᵢ · y₀^{·i}` with every `cᵢ ∈ A⁰`, powers taken in `product`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularizedPoly {
    pub product: Product,
    pub coeffs: Vec<NCPoly>,
}

impl RegularizedPoly {
    /// The regularized value `reg(p) = c₀`.
    pub fn constant(&self) -> &NCPoly {
        &self.coeffs[0]
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Expands `Σ cᵢ · y₀^{·i}` back into `A¹`.
    pub fn reconstruct(&self) -> Result<NCPoly, AlgebraError> {
        let alphabet = self.coeffs[0].alphabet();
        let y0 = NCPoly::from_word(alphabet, Word::new(vec![Letter::Y(0)]));
        let mut power = NCPoly::one(alphabet);
        let mut out = NCPoly::zero(alphabet);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = self.product.apply(&power, &y0)?;
            }
            if !c.is_zero() {
                out.add_scaled(&self.product.apply(c, &power)?, &Rational::one())?;
            }
        }
        Ok(out)
    }
}

fn leading_y0(w: &Word) -> usize {
    w.letters().iter().take_while(|l| **l == Letter::Y(0)).count()
}

struct Regularizer {
    product: Product,
    alphabet: Alphabet,
    memo: HashMap<Word, Vec<NCPoly>>,
}

impl Regularizer {
    fn add_into(&self, acc: &mut Vec<NCPoly>, part: &[NCPoly], c: &Rational, shift: usize) {
        for (i, p) in part.iter().enumerate() {
            while acc.len() <= i + shift {
                acc.push(NCPoly::zero(self.alphabet));
            }
            acc[i + shift].add_scaled(p, c).expect("same alphabet");
        }
    }

    fn poly(&mut self, p: &NCPoly) -> Result<Vec<NCPoly>, AlgebraError> {
        let mut acc = vec![NCPoly::zero(self.alphabet)];
        for (w, c) in p.terms() {
            let part = self.word(w)?;
            self.add_into(&mut acc, &part, c, 0);
        }
        Ok(acc)
    }

    // Peels the leading y₀ block: y₀ · (y₀^{j-1}u) = j·y₀^j u + R, where
    // every word of R starts with fewer than j copies of y₀.
    fn word(&mut self, w: &Word) -> Result<Vec<NCPoly>, AlgebraError> {
        if let Some(hit) = self.memo.get(w) {
            return Ok(hit.clone());
        }
        let j = leading_y0(w);
        let result = if j == 0 {
            vec![NCPoly::from_word(self.alphabet, w.clone())]
        } else {
            let alphabet = self.alphabet;
            let shorter = Word::new(w.letters()[1..].to_vec());
            let y0 = NCPoly::from_word(alphabet, Word::new(vec![Letter::Y(0)]));
            let mut rest = self.product.apply(&y0, &NCPoly::from_word(alphabet, shorter.clone()))?;
            let jr = rat(j as i64);
            debug_assert_eq!(rest.coeff(w), jr);
            rest.add_term(w.clone(), -jr.clone());
            let inv = Rational::one() / jr;

            let mut acc = vec![NCPoly::zero(alphabet)];
            let lifted = self.word(&shorter)?;
            self.add_into(&mut acc, &lifted, &inv, 1);
            let lower = self.poly(&rest)?;
            self.add_into(&mut acc, &lower, &-inv, 0);
            while acc.len() > 1 && acc.last().is_some_and(|p| p.is_zero()) {
                acc.pop();
            }
            acc
        };
        self.memo.insert(w.clone(), result.clone());
        Ok(result)
    }
}

/// Decomposes `p ∈ A¹` as a polynomial in `y₀` over `A⁰`.
pub fn regularize(p: &NCPoly, product: Product) -> Result<RegularizedPoly, AlgebraError> {
    require_mlv(p)?;
    p.require_one()?;
    let mut r = Regularizer {
        product,
        alphabet: p.alphabet(),
        memo: HashMap::new(),
    };
    let coeffs = r.poly(p)?;
    Ok(RegularizedPoly { product, coeffs })
}

pub fn reg_star(p: &NCPoly) -> Result<RegularizedPoly, AlgebraError> {
    regularize(p, Product::Stuffle)
}

pub fn reg_shuffle(p: &NCPoly) -> Result<RegularizedPoly, AlgebraError> {
    regularize(p, Product::Shuffle)
}

/// `I(w₁) ⧢ I(w₂) − I(w₁ ∗ w₂)`, annihilated by `L_⧢`.
pub fn fds_element(w1: &NCPoly, w2: &NCPoly) -> Result<NCPoly, AlgebraError> {
    w1.require_zero()?;
    w2.require_zero()?;
    let sh = shuffle(&map_i(w1)?, &map_i(w2)?)?;
    let st = map_i(&stuffle(w1, w2)?)?;
    sh.sub(&st)
}

/// `I⁻¹(w₁) ∗ I⁻¹(w₂) − I⁻¹(w₁ ⧢ w₂)`, the same relation on the
/// `L_∗` side.
pub fn fds_element_star(w1: &NCPoly, w2: &NCPoly) -> Result<NCPoly, AlgebraError> {
    w1.require_zero()?;
    w2.require_zero()?;
    let st = stuffle(&map_i_inv(w1)?, &map_i_inv(w2)?)?;
    let sh = map_i_inv(&shuffle(w1, w2)?)?;
    st.sub(&sh)
}

/// `reg_⧢(I(w₀ ∗ w₁) − I(w₀) ⧢ I(w₁))`, annihilated by `L_⧢`.
pub fn rds_element(w0: &NCPoly, w1: &NCPoly) -> Result<NCPoly, AlgebraError> {
    w0.require_zero()?;
    w1.require_one()?;
    let diff = map_i(&stuffle(w0, w1)?)?.sub(&shuffle(&map_i(w0)?, &map_i(w1)?)?)?;
    Ok(reg_shuffle(&diff)?.coeffs.swap_remove(0))
}

/// `reg_∗(I⁻¹(w₀ ⧢ w₁) − I⁻¹(w₀) ∗ I⁻¹(w₁))`, annihilated by `L_∗`.
pub fn rds_element_star(w0: &NCPoly, w1: &NCPoly) -> Result<NCPoly, AlgebraError> {
    w0.require_zero()?;
    w1.require_one()?;
    let diff = map_i_inv(&shuffle(w0, w1)?)?.sub(&stuffle(&map_i_inv(w0)?, &map_i_inv(w1)?)?)?;
    Ok(reg_star(&diff)?.coeffs.swap_remove(0))
}

/// Whether a word of `A¹` gives a convergent `L_∗` series.
pub fn is_convergent(word: &Word) -> bool {
    match word.letters().first() {
        None => true,
        Some(Letter::Y(0)) => false,
        Some(_) => word.letters().last().is_some_and(|l| !l.is_x_type()),
    }
}

pub fn in_a0(p: &NCPoly) -> bool {
    p.class() == Class::Zero
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, ParseOptions};

    fn p(s: &str, n: u32) -> NCPoly {
        parse_poly(
            s,
            ParseOptions {
                level: Some(n),
                family: None,
            },
        )
        .unwrap()
    }

    #[test]
    fn stuffle_with_twist_sum_diagonal() {
        let r = stuffle(&p("z(2,1)", 3), &p("z(3,2)", 3)).unwrap();
        assert_eq!(r, p("z(2,1)z(3,2) + z(3,2)z(2,1) + z(5,0)", 3));
        assert_eq!(r.to_string(), "z(2,1)z(3,2) + z(3,2)z(2,1) + z(5,0)");
    }

    #[test]
    fn stuffle_unit() {
        let w = p("z(2,1)z(1,1)", 2);
        assert_eq!(stuffle(&NCPoly::one(w.alphabet()), &w).unwrap(), w);
    }

    #[test]
    fn stuffle_rejects_words_outside_a1() {
        assert!(stuffle(&p("y1 x", 2), &p("y1", 2)).is_err());
    }

    #[test]
    fn depth_one_shuffle() {
        assert_eq!(shuffle(&p("x", 2), &p("y1", 2)).unwrap(), p("x y1 + y1 x", 2));
        let r = shuffle(&p("z(2,1)", 3), &p("z(1,2)", 3)).unwrap();
        assert_eq!(r, p("z(2,1)z(1,2) + z(2,2)z(1,1) + z(1,2)z(2,1)", 3));
    }

    #[test]
    fn map_i_prefix_sums() {
        assert_eq!(map_i(&p("z(2,1)z(3,1)", 3)).unwrap(), p("z(2,1)z(3,2)", 3));
        assert_eq!(map_i_inv(&p("z(2,1)z(3,2)", 3)).unwrap(), p("z(2,1)z(3,1)", 3));
        assert_eq!(map_i(&p("z(4,2)", 3)).unwrap(), p("z(4,2)", 3));
    }

    #[test]
    fn reg_of_y0() {
        let r = reg_star(&p("y0", 1)).unwrap();
        assert!(r.constant().is_zero());
        assert_eq!(r.coeffs[1], NCPoly::one(Alphabet::Mlv(1)));
    }

    #[test]
    fn reg_shuffle_of_y0_z2() {
        let r = reg_shuffle(&p("z(1,0)z(2,0)", 1)).unwrap();
        assert_eq!(r.constant(), &p("-2*z(2,0)z(1,0)", 1));
        assert_eq!(r.reconstruct().unwrap(), p("z(1,0)z(2,0)", 1));
    }

    #[test]
    fn euler_relation_from_regularization() {
        let e = rds_element(&p("z(2,0)", 1), &p("z(1,0)", 1)).unwrap();
        assert_eq!(e, p("z(3,0) - z(2,0)z(1,0)", 1));
    }

    #[test]
    fn fds_with_unit_vanishes() {
        let w = p("z(2,1)z(1,1)", 2);
        assert!(fds_element(&w, &NCPoly::one(w.alphabet())).unwrap().is_zero());
    }
}
