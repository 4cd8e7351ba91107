//! Exact noncommutative polynomial arithmetic over ℚ shared by the MLV and
//! level-N algebras.

pub mod grammar;
pub mod poly;
pub mod products;
pub mod word;

pub use grammar::{parse_poly, print_poly, print_word, Family, ParseOptions};
pub use poly::NCPoly;
pub use word::{classify, indices_from_word, word_from_indices, Alphabet, Class, IndexVector, Letter, Word};

/// Exact rational coefficients.
pub type Rational = num_rational::BigRational;

use num_bigint::BigInt;
use products::{quasi_shuffle, shuffle_words, Diagonal};

use crate::error::AlgebraError;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Bilinear letterwise shuffle of two polynomials over the same alphabet.
pub fn shuffle_poly(p: &NCPoly, q: &NCPoly) -> Result<NCPoly, AlgebraError> {
    if p.alphabet() != q.alphabet() {
        return Err(AlgebraError::AlphabetMismatch {
            left: p.alphabet(),
            right: q.alphabet(),
        });
    }
    let mut out = NCPoly::zero(p.alphabet());
    for (u, cu) in p.terms() {
        for (v, cv) in q.terms() {
            let c = cu * cv;
            for (w, n) in shuffle_words(u.letters(), v.letters()).iter() {
                out.add_term(Word::new(w.clone()), &c * Rational::from_integer(n.clone()));
            }
        }
    }
    Ok(out)
}

/// Bilinear quasi-shuffle of two `A¹`/`U¹` polynomials with the given
/// diagonal rule.
pub fn quasi_shuffle_poly(p: &NCPoly, q: &NCPoly, diag: Diagonal) -> Result<NCPoly, AlgebraError> {
    if p.alphabet() != q.alphabet() {
        return Err(AlgebraError::AlphabetMismatch {
            left: p.alphabet(),
            right: q.alphabet(),
        });
    }
    let alphabet = p.alphabet();
    let lhs = p.generator_terms()?;
    let rhs = q.generator_terms()?;
    let mut out = NCPoly::zero(alphabet);
    for (u, cu) in &lhs {
        let ug: Vec<_> = u.pairs().collect();
        for (v, cv) in &rhs {
            let vg: Vec<_> = v.pairs().collect();
            let c = cu * cv;
            for (w, n) in quasi_shuffle(&ug, &vg, diag).iter() {
                let iv = IndexVector::from_pairs(w).expect("positive exponents");
                out.add_term(word_from_indices(&iv, alphabet), &c * Rational::from_integer(n.clone()));
            }
        }
    }
    Ok(out)
}
