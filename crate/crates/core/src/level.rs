//! The algebra `U = ℚ⟨x_0, x_1, …, x_N⟩` of level-N multiple zeta values.
//!
//! Twists of `y_{k,a} = x_0^{k-1} x_a` live in `{1, …, N}`; the residue
//! class `0 mod N` is represented by `N`.

use crate::algebra::products::Diagonal;
use crate::algebra::{quasi_shuffle_poly, shuffle_poly, word_from_indices, Alphabet, IndexVector, NCPoly};
use crate::cyclotomic::Cyclo;
use crate::error::AlgebraError;

/// The representative of `a mod N` in `{1, …, N}`.
pub fn reduce_r(a: i64, n: u32) -> u32 {
    assert!(n >= 1, "level must be positive");
    let r = a.rem_euclid(n as i64) as u32;
    if r == 0 {
        n
    } else {
        r
    }
}

fn require_level(p: &NCPoly) -> Result<u32, AlgebraError> {
    match p.alphabet() {
        Alphabet::Level(n) => Ok(n),
        other => Err(AlgebraError::WrongFamily {
            expected: "level-N",
            got: other,
        }),
    }
}

/// Stuffle on `U¹` with diagonal `δ_{a,b}·N·y_{k+l,a}`.
pub fn stuffle_n(p: &NCPoly, q: &NCPoly) -> Result<NCPoly, AlgebraError> {
    let level = require_level(p)?;
    require_level(q)?;
    quasi_shuffle_poly(p, q, Diagonal::SameTwist { level })
}

pub fn shuffle_n(p: &NCPoly, q: &NCPoly) -> Result<NCPoly, AlgebraError> {
    require_level(p)?;
    shuffle_poly(p, q)
}

fn twist_map(p: &NCPoly, f: impl Fn(&[u32], u32) -> Vec<u32>) -> Result<NCPoly, AlgebraError> {
    let level = require_level(p)?;
    let alphabet = p.alphabet();
    let mut out = NCPoly::zero(alphabet);
    for (iv, c) in p.generator_terms()? {
        let image = IndexVector::new(iv.ks().to_vec(), f(iv.twists(), level))?;
        out.add_term(word_from_indices(&image, alphabet), c);
    }
    Ok(out)
}

/// `J`: `a_i ↦ r(a_i − a_{i+1})`, last twist `r(a_n)`.
pub fn map_j(p: &NCPoly) -> Result<NCPoly, AlgebraError> {
    twist_map(p, |ts, n| {
        (0..ts.len())
            .map(|i| {
                let next = ts.get(i + 1).copied().unwrap_or(0) as i64;
                reduce_r(ts[i] as i64 - next, n)
            })
            .collect()
    })
}

/// `J⁻¹`: `a_i ↦ r(a_i + ⋯ + a_n)`.
pub fn map_j_inv(p: &NCPoly) -> Result<NCPoly, AlgebraError> {
    twist_map(p, |ts, n| {
        let mut suffix = 0i64;
        let mut out: Vec<u32> = ts
            .iter()
            .rev()
            .map(|&a| {
                suffix += a as i64;
                reduce_r(suffix, n)
            })
            .collect();
        out.reverse();
        out
    })
}

/// `J⁻¹(w₁) ∗ J⁻¹(w₂) − J⁻¹(w₁ ⧢ w₂)`, annihilated by `ζ_N`.
pub fn fds_n_element(w1: &NCPoly, w2: &NCPoly) -> Result<NCPoly, AlgebraError> {
    w1.require_zero()?;
    w2.require_zero()?;
    let st = stuffle_n(&map_j_inv(w1)?, &map_j_inv(w2)?)?;
    let sh = map_j_inv(&shuffle_n(w1, w2)?)?;
    st.sub(&sh)
}

/// `ζ_N(k; a)` written as `Σ c_j · L_∗(k; j)` with `c_j ∈ ℤ[ω]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MlvExpansion {
    pub level: u32,
    pub terms: Vec<(Cyclo, IndexVector)>,
}

/// Root-of-unity filter expansion of a single level-N generator index:
/// `ζ_N(k; a) = Σ_{j ∈ (Z/N)^n} ω^{−Σ jᵢaᵢ} L_∗(k; j)`.
///
/// Twists of `iv` are level-N twists (any integer, read mod N).
pub fn expand_index(iv: &IndexVector, level: u32) -> Result<MlvExpansion, AlgebraError> {
    if iv.ks().first().is_some_and(|&k| k < 2) {
        return Err(AlgebraError::NotInSubspace {
            word: iv.to_string(),
            space: "U⁰",
        });
    }
    let depth = iv.depth();
    let n = level as usize;
    let count = n.pow(depth as u32);
    let mut terms = Vec::with_capacity(count);
    let mut js = vec![0u32; depth];
    for _ in 0..count {
        let phase: i64 = js.iter().zip(iv.twists()).map(|(&j, &a)| j as i64 * a as i64).sum();
        let target = IndexVector::new(iv.ks().to_vec(), js.clone())?;
        terms.push((Cyclo::root_power(level, -phase), target));
        for slot in js.iter_mut().rev() {
            *slot += 1;
            if (*slot as usize) < n {
                break;
            }
            *slot = 0;
        }
    }
    Ok(MlvExpansion { level, terms })
}

/// [`expand_index`] for a single generator word of `U⁰`.
pub fn expand_to_mlv(word: &NCPoly) -> Result<MlvExpansion, AlgebraError> {
    let level = require_level(word)?;
    let terms = word.generator_terms()?;
    match terms.as_slice() {
        [(iv, c)] if c == &crate::algebra::rat(1) => expand_index(iv, level),
        _ => Err(AlgebraError::Parameter(
            "expand_to_mlv takes a single generator word".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, ParseOptions};

    fn u(s: &str, n: u32) -> NCPoly {
        parse_poly(
            s,
            ParseOptions {
                level: Some(n),
                family: Some(crate::algebra::Family::Level),
            },
        )
        .unwrap()
    }

    #[test]
    fn reducer() {
        assert_eq!(reduce_r(0, 3), 3);
        assert_eq!(reduce_r(5, 3), 2);
        assert_eq!(reduce_r(-1, 2), 1);
        assert_eq!(reduce_r(7, 1), 1);
    }

    #[test]
    fn stuffle_diagonal_carries_n() {
        assert_eq!(
            stuffle_n(&u("Y(2,1)", 2), &u("Y(3,1)", 2)).unwrap(),
            u("Y(2,1)Y(3,1) + Y(3,1)Y(2,1) + 2*Y(5,1)", 2)
        );
        assert_eq!(
            stuffle_n(&u("Y(2,1)", 3), &u("Y(3,2)", 3)).unwrap(),
            u("Y(2,1)Y(3,2) + Y(3,2)Y(2,1)", 3)
        );
    }

    #[test]
    fn raw_shuffle() {
        assert_eq!(shuffle_n(&u("x0", 1), &u("x1", 1)).unwrap(), u("x0 x1 + x1 x0", 1));
        assert_eq!(
            shuffle_n(&u("Y(2,1)", 2), &u("Y(1,2)", 2)).unwrap(),
            u("Y(2,1)Y(1,2) + Y(2,2)Y(1,1) + Y(1,2)Y(2,1)", 2)
        );
    }

    #[test]
    fn j_examples() {
        assert_eq!(map_j(&u("Y(2,1)Y(1,2)", 3)).unwrap(), u("Y(2,2)Y(1,2)", 3));
        assert_eq!(map_j(&u("Y(4,2)", 3)).unwrap(), u("Y(4,2)", 3));
        assert_eq!(map_j_inv(&u("Y(2,1)Y(1,2)", 2)).unwrap(), u("Y(2,1)Y(1,2)", 2));
        assert_eq!(map_j_inv(&u("Y(2,1)Y(1,1)", 2)).unwrap(), u("Y(2,2)Y(1,1)", 2));
    }

    #[test]
    fn expansion_sizes_and_coefficients() {
        let e = expand_to_mlv(&u("Y(3,1)Y(2,2)", 3)).unwrap();
        assert_eq!(e.terms.len(), 9);
        // the (ζ̄, ·) term carries ω^{-a₁}
        let (c, _) = e.terms.iter().find(|(_, iv)| iv.twists() == [1, 0]).unwrap();
        assert_eq!(*c, Cyclo::root_power(3, -1));
        let (c, _) = e.terms.iter().find(|(_, iv)| iv.twists() == [2, 1]).unwrap();
        assert_eq!(*c, Cyclo::root_power(3, -4));
        let e = expand_to_mlv(&u("Y(3,1)", 1)).unwrap();
        assert_eq!(e.terms.len(), 1);
        assert!(expand_to_mlv(&u("Y(1,1)", 2)).is_err());
    }
}
