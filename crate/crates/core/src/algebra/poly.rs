use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::word::{classify, indices_from_word, word_from_indices, Alphabet, Class, IndexVector, Word};
use super::Rational;
use crate::error::AlgebraError;

/// A finite ℚ-linear combination of words over one alphabet.
///
/// Zero coefficients are never stored, so structural equality is
/// coefficient-wise equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NCPoly {
    alphabet: Alphabet,
    terms: BTreeMap<Word, Rational>,
}

impl NCPoly {
    pub fn zero(alphabet: Alphabet) -> Self {
        NCPoly {
            alphabet,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alphabet: Alphabet) -> Self {
        NCPoly::from_word(alphabet, Word::empty())
    }

    /// Single word with coefficient 1. The word's letters must belong to
    /// the alphabet; this is checked in debug builds only, use
    /// [`NCPoly::try_from_word`] on untrusted input.
    pub fn from_word(alphabet: Alphabet, word: Word) -> Self {
        debug_assert!(word.check(alphabet).is_ok(), "letter outside {alphabet}");
        let mut terms = BTreeMap::new();
        terms.insert(word, Rational::one());
        NCPoly { alphabet, terms }
    }

    pub fn try_from_word(alphabet: Alphabet, word: Word) -> Result<Self, AlgebraError> {
        word.check(alphabet)?;
        Ok(NCPoly::from_word(alphabet, word))
    }

    pub fn from_indices(alphabet: Alphabet, iv: &IndexVector) -> Self {
        NCPoly::from_word(alphabet, word_from_indices(iv, alphabet))
    }

    /// `Σ c·z_{k,a}` from `(coefficient, pairs)` tuples.
    pub fn from_generators<I>(alphabet: Alphabet, items: I) -> Self
    where
        I: IntoIterator<Item = (Rational, Vec<(u32, u32)>)>,
    {
        let mut p = NCPoly::zero(alphabet);
        for (c, pairs) in items {
            let iv = IndexVector::from_pairs(&pairs).expect("positive exponents");
            p.add_term(word_from_indices(&iv, alphabet), c);
        }
        p
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &Word) -> Rational {
        self.terms.get(word).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, word: Word, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_int_term(&mut self, word: Word, coeff: i64) {
        self.add_term(word, Rational::from_integer(BigInt::from(coeff)));
    }

    fn same_alphabet(&self, other: &NCPoly) -> Result<(), AlgebraError> {
        if self.alphabet != other.alphabet {
            return Err(AlgebraError::AlphabetMismatch {
                left: self.alphabet,
                right: other.alphabet,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &NCPoly) -> Result<NCPoly, AlgebraError> {
        self.same_alphabet(other)?;
        let mut out = self.clone();
        out.add_scaled_unchecked(other, &Rational::one());
        Ok(out)
    }

    pub fn sub(&self, other: &NCPoly) -> Result<NCPoly, AlgebraError> {
        self.same_alphabet(other)?;
        let mut out = self.clone();
        out.add_scaled_unchecked(other, &-Rational::one());
        Ok(out)
    }

    /// `self += c·other`.
    pub fn add_scaled(&mut self, other: &NCPoly, c: &Rational) -> Result<(), AlgebraError> {
        self.same_alphabet(other)?;
        self.add_scaled_unchecked(other, c);
        Ok(())
    }

    fn add_scaled_unchecked(&mut self, other: &NCPoly, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (w, v) in &other.terms {
            self.add_term(w.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero(self.alphabet);
        }
        NCPoly {
            alphabet: self.alphabet,
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    pub fn neg(&self) -> NCPoly {
        self.scale(&-Rational::one())
    }

    /// Applies a word-to-polynomial map linearly.
    pub fn map_linear<F>(&self, mut f: F) -> Result<NCPoly, AlgebraError>
    where
        F: FnMut(&Word) -> Result<NCPoly, AlgebraError>,
    {
        let mut out: Option<NCPoly> = None;
        for (w, c) in &self.terms {
            let img = f(w)?;
            match out.as_mut() {
                None => out = Some(img.scale(c)),
                Some(acc) => acc.add_scaled(&img, c)?,
            }
        }
        Ok(out.unwrap_or_else(|| NCPoly::zero(self.alphabet)))
    }

    /// The smallest subspace (`A⁰ ⊂ A¹ ⊂ A`) containing every word.
    pub fn class(&self) -> Class {
        self.terms
            .keys()
            .map(|w| classify(w, self.alphabet))
            .min()
            .unwrap_or(Class::Zero)
    }

    /// Fails with the first word not in `A¹`/`U¹`.
    pub fn require_one(&self) -> Result<(), AlgebraError> {
        self.require(Class::One)
    }

    pub fn require_zero(&self) -> Result<(), AlgebraError> {
        self.require(Class::Zero)
    }

    fn require(&self, class: Class) -> Result<(), AlgebraError> {
        for w in self.terms.keys() {
            if classify(w, self.alphabet) < class {
                let space = match (self.alphabet.is_mlv(), class) {
                    (true, Class::Zero) => "A⁰",
                    (true, _) => "A¹",
                    (false, Class::Zero) => "U⁰",
                    (false, _) => "U¹",
                };
                return Err(AlgebraError::NotInSubspace {
                    word: super::word::word_raw(w),
                    space,
                });
            }
        }
        Ok(())
    }

    /// Generator presentation of every term; requires `A¹`/`U¹`.
    pub fn generator_terms(&self) -> Result<Vec<(IndexVector, Rational)>, AlgebraError> {
        self.terms
            .iter()
            .map(|(w, c)| Ok((indices_from_word(w, self.alphabet)?, c.clone())))
            .collect()
    }

    /// Reinterprets the polynomial over a different alphabet of the same
    /// family; every letter must still fit.
    pub fn with_alphabet(&self, alphabet: Alphabet) -> Result<NCPoly, AlgebraError> {
        for w in self.terms.keys() {
            w.check(alphabet)?;
        }
        Ok(NCPoly {
            alphabet,
            terms: self.terms.clone(),
        })
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::grammar::print_poly(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Letter;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn additive_identity_and_inverse() {
        let a = Alphabet::Mlv(2);
        let w = Word::new(vec![Letter::X, Letter::Y(1)]);
        let mut p = NCPoly::zero(a);
        p.add_term(w.clone(), r(2, 3));
        p.add_term(w.clone(), r(1, 3));
        assert_eq!(p.coeff(&w), Rational::one());
        assert_eq!(p.add(&NCPoly::zero(a)).unwrap(), p);
        assert!(p.add(&p.neg()).unwrap().is_zero());
    }

    #[test]
    fn mismatched_alphabets_are_rejected() {
        let p = NCPoly::one(Alphabet::Mlv(2));
        let q = NCPoly::one(Alphabet::Mlv(3));
        assert!(matches!(p.add(&q), Err(AlgebraError::AlphabetMismatch { .. })));
        let u = NCPoly::one(Alphabet::Level(2));
        assert!(p.add(&u).is_err());
    }

    #[test]
    fn try_from_word_checks_letters() {
        assert!(NCPoly::try_from_word(Alphabet::Mlv(2), Word::new(vec![Letter::Y(5)])).is_err());
    }
}
