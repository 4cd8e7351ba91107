use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;

/// The two alphabet families, each carrying its level `N`.
///
/// `Mlv(N)` is `{x, y_a | a ∈ Z/N}`; `Level(N)` is `{x_0, x_1, …, x_N}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Alphabet {
    Mlv(u32),
    Level(u32),
}

impl Alphabet {
    pub fn mlv(level: u32) -> Result<Self, AlgebraError> {
        if level == 0 {
            return Err(AlgebraError::Parameter("level must be ≥ 1".into()));
        }
        Ok(Alphabet::Mlv(level))
    }

    pub fn level_n(level: u32) -> Result<Self, AlgebraError> {
        if level == 0 {
            return Err(AlgebraError::Parameter("level must be ≥ 1".into()));
        }
        Ok(Alphabet::Level(level))
    }

    pub fn level(&self) -> u32 {
        match *self {
            Alphabet::Mlv(n) | Alphabet::Level(n) => n,
        }
    }

    pub fn is_mlv(&self) -> bool {
        matches!(self, Alphabet::Mlv(_))
    }

    pub fn contains(&self, letter: Letter) -> bool {
        match (*self, letter) {
            (Alphabet::Mlv(_), Letter::X) => true,
            (Alphabet::Mlv(n), Letter::Y(a)) => a < n,
            (Alphabet::Level(n), Letter::Level(a)) => a <= n,
            _ => false,
        }
    }

    /// The letter playing the role of `x` (the `dt/t` form).
    pub fn x_letter(&self) -> Letter {
        match self {
            Alphabet::Mlv(_) => Letter::X,
            Alphabet::Level(_) => Letter::Level(0),
        }
    }

    /// Generator letter closing a `z_{k,a}` / `y_{k,a}` run.
    pub fn gen_letter(&self, twist: u32) -> Letter {
        match self {
            Alphabet::Mlv(_) => Letter::Y(twist),
            Alphabet::Level(_) => Letter::Level(twist),
        }
    }

    /// Reduces a twist into the family's canonical range: `Z/N` for the
    /// MLV alphabet, `{1, …, N}` for the level alphabet.
    pub fn reduce_twist(&self, twist: i64) -> u32 {
        let n = self.level() as i64;
        match self {
            Alphabet::Mlv(_) => twist.rem_euclid(n) as u32,
            Alphabet::Level(_) => crate::level::reduce_r(twist, self.level()),
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alphabet::Mlv(n) => write!(f, "A(N={n})"),
            Alphabet::Level(n) => write!(f, "U(N={n})"),
        }
    }
}

/// A single letter. `X` and `Y(a)` belong to the MLV alphabet, `Level(a)`
/// is `x_a` of the level-N alphabet (`Level(0)` is `x_0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Letter {
    X,
    Y(u32),
    Level(u32),
}

impl Letter {
    /// Sort rank: generator letters before the `x`-type letter so that
    /// generator sequences compare lexicographically by `(k, a)`.
    fn rank(self) -> (u8, u32) {
        match self {
            Letter::Y(a) => (0, a),
            Letter::X => (0, u32::MAX),
            Letter::Level(0) => (1, u32::MAX),
            Letter::Level(a) => (1, a),
        }
    }

    pub fn is_x_type(self) -> bool {
        matches!(self, Letter::X | Letter::Level(0))
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::X => write!(f, "x"),
            Letter::Y(a) => write!(f, "y{a}"),
            Letter::Level(a) => write!(f, "x{a}"),
        }
    }
}

/// A finite sequence of letters; the empty word is the unit.
///
/// Words are ordered canonically: by length, then by depth (descending),
/// then lexicographically with generator letters before `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn checked(alphabet: Alphabet, letters: Vec<Letter>) -> Result<Self, AlgebraError> {
        let w = Word(letters);
        w.check(alphabet)?;
        Ok(w)
    }

    pub fn check(&self, alphabet: Alphabet) -> Result<(), AlgebraError> {
        match self.0.iter().find(|l| !alphabet.contains(**l)) {
            Some(l) => Err(AlgebraError::LetterOutOfRange {
                letter: l.to_string(),
                alphabet,
            }),
            None => Ok(()),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of generator (non-`x`) letters.
    pub fn depth(&self) -> usize {
        self.0.iter().filter(|l| !l.is_x_type()).count()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn prepend(&self, letter: Letter) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(letter);
        v.extend_from_slice(&self.0);
        Word(v)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| other.depth().cmp(&self.depth()))
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Membership of a word in the nested subspaces `A⁰ ⊂ A¹ ⊂ A`
/// (resp. `U⁰ ⊂ U¹ ⊂ U`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Class {
    /// In the full algebra only (ends with the `x`-type letter).
    Full,
    /// In `A¹`/`U¹` but not in `A⁰`/`U⁰`.
    One,
    /// In `A⁰`/`U⁰`.
    Zero,
}

impl Class {
    pub fn in_one(self) -> bool {
        self >= Class::One
    }

    pub fn in_zero(self) -> bool {
        self == Class::Zero
    }
}

pub fn classify(word: &Word, alphabet: Alphabet) -> Class {
    let letters = word.letters();
    let (first, last) = match (letters.first(), letters.last()) {
        (Some(f), Some(l)) => (*f, *l),
        _ => return Class::Zero,
    };
    if last.is_x_type() {
        return Class::Full;
    }
    let admissible_start = match alphabet {
        Alphabet::Mlv(_) => !matches!(first, Letter::Y(0)),
        Alphabet::Level(_) => first == Letter::Level(0),
    };
    if admissible_start {
        Class::Zero
    } else {
        Class::One
    }
}

/// The `(k₁,…,k_n; a₁,…,a_n)` presentation of a generator word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexVector {
    ks: Vec<u32>,
    twists: Vec<u32>,
}

impl IndexVector {
    pub fn new(ks: Vec<u32>, twists: Vec<u32>) -> Result<Self, AlgebraError> {
        if ks.len() != twists.len() {
            return Err(AlgebraError::InvalidIndex(format!(
                "{} exponents but {} twists",
                ks.len(),
                twists.len()
            )));
        }
        if ks.contains(&0) {
            return Err(AlgebraError::InvalidIndex("exponents must be positive".into()));
        }
        Ok(IndexVector { ks, twists })
    }

    pub fn empty() -> Self {
        IndexVector {
            ks: Vec::new(),
            twists: Vec::new(),
        }
    }

    pub fn ks(&self) -> &[u32] {
        &self.ks
    }

    pub fn twists(&self) -> &[u32] {
        &self.twists
    }

    pub fn depth(&self) -> usize {
        self.ks.len()
    }

    pub fn weight(&self) -> u32 {
        self.ks.iter().sum()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.ks.iter().copied().zip(self.twists.iter().copied())
    }

    pub fn from_pairs(pairs: &[(u32, u32)]) -> Result<Self, AlgebraError> {
        let (ks, twists) = pairs.iter().copied().unzip();
        IndexVector::new(ks, twists)
    }
}

impl fmt::Display for IndexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ks: Vec<String> = self.ks.iter().map(|k| k.to_string()).collect();
        let ts: Vec<String> = self.twists.iter().map(|a| a.to_string()).collect();
        write!(f, "({};{})", ks.join(","), ts.join(","))
    }
}

/// `z_{k₁,a₁}⋯z_{k_n,a_n}` (resp. `y_{k,a}`) as a word. Twists are reduced
/// into the alphabet's range.
pub fn word_from_indices(iv: &IndexVector, alphabet: Alphabet) -> Word {
    let x = alphabet.x_letter();
    let mut letters = Vec::with_capacity(iv.weight() as usize);
    for (k, a) in iv.pairs() {
        letters.extend(std::iter::repeat_n(x, k as usize - 1));
        letters.push(alphabet.gen_letter(alphabet.reduce_twist(a as i64)));
    }
    Word(letters)
}

/// Inverse of [`word_from_indices`] on `A¹`/`U¹`.
pub fn indices_from_word(word: &Word, alphabet: Alphabet) -> Result<IndexVector, AlgebraError> {
    let mut ks = Vec::new();
    let mut twists = Vec::new();
    let mut run = 0u32;
    for &l in word.letters() {
        if !alphabet.contains(l) {
            return Err(AlgebraError::LetterOutOfRange {
                letter: l.to_string(),
                alphabet,
            });
        }
        match l {
            Letter::X | Letter::Level(0) => run += 1,
            Letter::Y(a) | Letter::Level(a) => {
                ks.push(run + 1);
                twists.push(a);
                run = 0;
            }
        }
    }
    if run > 0 {
        return Err(AlgebraError::NotInSubspace {
            word: word_raw(word),
            space: if alphabet.is_mlv() { "A¹" } else { "U¹" },
        });
    }
    Ok(IndexVector { ks, twists })
}

/// Space-separated raw letters, `1` for the empty word.
pub fn word_raw(word: &Word) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    let parts: Vec<String> = word.letters().iter().map(|l| l.to_string()).collect();
    parts.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_word_for_z21() {
        let a = Alphabet::Mlv(2);
        let iv = IndexVector::new(vec![2], vec![1]).unwrap();
        assert_eq!(word_from_indices(&iv, a).letters(), &[Letter::X, Letter::Y(1)]);
        assert!(word_from_indices(&IndexVector::empty(), a).is_empty());
    }

    #[test]
    fn word_ending_in_x_is_rejected() {
        let a = Alphabet::Mlv(1);
        let w = Word::new(vec![Letter::Y(0), Letter::X]);
        assert!(indices_from_word(&w, a).is_err());
        let u = Alphabet::Level(2);
        let w = Word::new(vec![Letter::Level(1), Letter::Level(0)]);
        assert!(indices_from_word(&w, u).is_err());
    }

    #[test]
    fn classification_examples() {
        let a = Alphabet::Mlv(2);
        assert_eq!(classify(&Word::new(vec![Letter::X, Letter::Y(0)]), a), Class::Zero);
        assert_eq!(classify(&Word::new(vec![Letter::Y(0)]), a), Class::One);
        assert_eq!(classify(&Word::new(vec![Letter::Y(1), Letter::Y(0)]), a), Class::Zero);
        assert_eq!(classify(&Word::new(vec![Letter::Y(1), Letter::X]), a), Class::Full);
        assert_eq!(classify(&Word::empty(), a), Class::Zero);

        let u = Alphabet::Level(3);
        assert_eq!(
            classify(&Word::new(vec![Letter::Level(0), Letter::Level(2)]), u),
            Class::Zero
        );
        assert_eq!(classify(&Word::new(vec![Letter::Level(2)]), u), Class::One);
        assert_eq!(
            classify(&Word::new(vec![Letter::Level(2), Letter::Level(0)]), u),
            Class::Full
        );
    }

    #[test]
    fn canonical_order_puts_deeper_words_first() {
        let a = Alphabet::Mlv(3);
        let w = |ks: Vec<u32>, ts: Vec<u32>| word_from_indices(&IndexVector::new(ks, ts).unwrap(), a);
        let mut v = vec![
            w(vec![5], vec![0]),
            w(vec![3, 2], vec![2, 1]),
            w(vec![2, 3], vec![1, 2]),
        ];
        v.sort();
        assert_eq!(
            v,
            vec![
                w(vec![2, 3], vec![1, 2]),
                w(vec![3, 2], vec![2, 1]),
                w(vec![5], vec![0])
            ]
        );
    }

    #[test]
    fn alphabet_membership() {
        assert!(Alphabet::Mlv(2).contains(Letter::Y(1)));
        assert!(!Alphabet::Mlv(2).contains(Letter::Y(2)));
        assert!(!Alphabet::Mlv(2).contains(Letter::Level(1)));
        assert!(Alphabet::Level(2).contains(Letter::Level(2)));
        assert!(Alphabet::mlv(0).is_err());
    }
}
