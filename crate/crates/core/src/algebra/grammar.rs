//! Text form of words and polynomials.
//!
//! ```text
//! poly   := ["-"] term (("+" | "-") term)*  |  "0"
//! term   := rational "*" word | rational | word
//! word   := "1" | letter+
//! letter := "x" | "y" int | "z(" int "," int ")"      (MLV alphabet)
//!         | "x" int | "Y(" int "," int ")"            (level-N alphabet)
//! ```
//!
//! Output uses generator notation (`z(k,a)`, `Y(k,a)`) whenever every word
//! of the polynomial lies in `A¹`/`U¹`, and raw letters separated by single
//! spaces otherwise. `parse(print(p)) == p` for every polynomial.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::NCPoly;
use super::word::{indices_from_word, word_raw, Alphabet, Class, Letter, Word};
use super::Rational;
use crate::error::ParseError;

/// Which alphabet family an expression is read in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Mlv,
    Level,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    /// Level `N`; inferred from the largest twist when absent.
    pub level: Option<u32>,
    /// Alphabet family for expressions without letters (`"1"`, `"0"`).
    pub family: Option<Family>,
}

#[derive(Clone, Copy, Debug)]
enum RawLetter {
    X,
    Y(i64),
    Z(i64, i64),
    XIndex(i64),
    Gen(i64, i64),
}

impl RawLetter {
    fn family(self) -> Family {
        match self {
            RawLetter::X | RawLetter::Y(_) | RawLetter::Z(..) => Family::Mlv,
            RawLetter::XIndex(_) | RawLetter::Gen(..) => Family::Level,
        }
    }
}

/// A coefficient and its letters, each tagged with its input offset.
type RawTerm = (Rational, Vec<(usize, RawLetter)>);

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::new(self.pos, msg))
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{}`", b as char))
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.pos;
        match self.digits() {
            Some(d) => match d.parse::<i64>() {
                Ok(v) => Ok(if neg { -v } else { v }),
                Err(_) => Err(ParseError::new(start, "integer out of range")),
            },
            None => self.err("expected integer"),
        }
    }

    fn pair(&mut self) -> Result<(i64, i64), ParseError> {
        self.expect(b'(')?;
        let k = self.int()?;
        self.expect(b',')?;
        let a = self.int()?;
        self.expect(b')')?;
        Ok((k, a))
    }

    fn rational(&mut self) -> Result<Option<Rational>, ParseError> {
        let start = self.pos;
        let num = match self.digits() {
            Some(d) => d,
            None => return Ok(None),
        };
        let num: BigInt = num.parse().map_err(|_| ParseError::new(start, "bad integer"))?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let dpos = self.pos;
            let den: BigInt = match self.digits() {
                Some(d) => d.parse().map_err(|_| ParseError::new(dpos, "bad integer"))?,
                None => return self.err("expected denominator"),
            };
            if den.is_zero() {
                return Err(ParseError::new(dpos, "zero denominator"));
            }
            return Ok(Some(Rational::new(num, den)));
        }
        Ok(Some(Rational::from_integer(num)))
    }

    fn letter(&mut self) -> Result<Option<(usize, RawLetter)>, ParseError> {
        let start = self.pos;
        let l = match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                match self.digits() {
                    Some(d) => RawLetter::XIndex(d.parse().map_err(|_| ParseError::new(start, "index out of range"))?),
                    None => RawLetter::X,
                }
            }
            Some(b'y') => {
                self.pos += 1;
                match self.digits() {
                    Some(d) => RawLetter::Y(d.parse().map_err(|_| ParseError::new(start, "index out of range"))?),
                    None => return self.err("expected twist index after `y`"),
                }
            }
            Some(b'z') => {
                self.pos += 1;
                let (k, a) = self.pair()?;
                RawLetter::Z(k, a)
            }
            Some(b'Y') => {
                self.pos += 1;
                let (k, a) = self.pair()?;
                RawLetter::Gen(k, a)
            }
            _ => return Ok(None),
        };
        Ok(Some((start, l)))
    }

    fn word(&mut self) -> Result<Vec<(usize, RawLetter)>, ParseError> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            match self.letter()? {
                Some(l) => out.push(l),
                None => break,
            }
        }
        if out.is_empty() {
            return self.err("expected a word");
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Rational, Vec<(usize, RawLetter)>), ParseError> {
        self.skip_ws();
        if let Some(c) = self.rational()? {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
                if self.peek() == Some(b'1') {
                    let save = self.pos;
                    self.pos += 1;
                    if matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
                        self.pos = save;
                        return self.err("expected a word");
                    }
                    return Ok((c, Vec::new()));
                }
                return Ok((c, self.word()?));
            }
            return Ok((c, Vec::new()));
        }
        Ok((Rational::one(), self.word()?))
    }

    fn poly(&mut self) -> Result<Vec<RawTerm>, ParseError> {
        let mut terms = Vec::new();
        self.skip_ws();
        if self.peek().is_none() {
            return self.err("empty expression");
        }
        let mut sign = Rational::one();
        if self.peek() == Some(b'-') {
            self.pos += 1;
            sign = -sign;
        }
        loop {
            let (c, w) = self.term()?;
            terms.push((c * &sign, w));
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => sign = Rational::one(),
                Some(b'-') => sign = -Rational::one(),
                Some(_) => return self.err("expected `+`, `-` or end of input"),
            }
            self.pos += 1;
        }
        Ok(terms)
    }
}

/// Parses a polynomial expression.
pub fn parse_poly(input: &str, opts: ParseOptions) -> Result<NCPoly, ParseError> {
    let mut p = Parser::new(input);
    let raw = p.poly()?;

    let mut family = opts.family;
    for (_, w) in &raw {
        for &(pos, l) in w {
            match family {
                None => family = Some(l.family()),
                Some(f) if f != l.family() => {
                    return Err(ParseError::new(pos, "letters from both alphabet families"));
                }
                _ => {}
            }
        }
    }
    let family = family.unwrap_or(Family::Mlv);

    for (_, w) in &raw {
        for &(pos, l) in w {
            match l {
                RawLetter::Z(k, _) | RawLetter::Gen(k, _) if k < 1 => {
                    return Err(ParseError::new(pos, "exponent must be ≥ 1"));
                }
                RawLetter::XIndex(_) | RawLetter::Gen(..) if family == Family::Mlv => {
                    return Err(ParseError::new(pos, "level-N letter in an MLV expression"));
                }
                RawLetter::X | RawLetter::Y(_) | RawLetter::Z(..) if family == Family::Level => {
                    return Err(ParseError::new(pos, "MLV letter in a level-N expression"));
                }
                _ => {}
            }
        }
    }

    let level = match opts.level {
        Some(0) => return Err(ParseError::new(0, "level must be ≥ 1")),
        Some(n) => n,
        None => infer_level(&raw, family),
    };
    let alphabet = match family {
        Family::Mlv => Alphabet::Mlv(level),
        Family::Level => Alphabet::Level(level),
    };

    let mut poly = NCPoly::zero(alphabet);
    for (c, w) in raw {
        let mut letters = Vec::new();
        for (pos, l) in w {
            match l {
                RawLetter::X => letters.push(Letter::X),
                RawLetter::Y(a) => letters.push(Letter::Y(alphabet.reduce_twist(a))),
                RawLetter::Z(k, a) => {
                    letters.extend(std::iter::repeat_n(Letter::X, k as usize - 1));
                    letters.push(Letter::Y(alphabet.reduce_twist(a)));
                }
                RawLetter::XIndex(a) => {
                    if a > level as i64 {
                        return Err(ParseError::new(pos, format!("x{a} exceeds level {level}")));
                    }
                    letters.push(Letter::Level(a as u32));
                }
                RawLetter::Gen(k, a) => {
                    letters.extend(std::iter::repeat_n(Letter::Level(0), k as usize - 1));
                    letters.push(Letter::Level(alphabet.reduce_twist(a)));
                }
            }
        }
        poly.add_term(Word::new(letters), c);
    }
    Ok(poly)
}

fn infer_level(raw: &[(Rational, Vec<(usize, RawLetter)>)], family: Family) -> u32 {
    let mut n: i64 = 1;
    for (_, w) in raw {
        for &(_, l) in w {
            let need = match (family, l) {
                (Family::Mlv, RawLetter::Y(a)) | (Family::Mlv, RawLetter::Z(_, a)) => a + 1,
                (Family::Level, RawLetter::XIndex(a)) | (Family::Level, RawLetter::Gen(_, a)) => a,
                _ => 1,
            };
            n = n.max(need);
        }
    }
    n.clamp(1, u32::MAX as i64) as u32
}

/// Renders one word; generator notation when `generators` is set.
pub fn print_word(word: &Word, alphabet: Alphabet, generators: bool) -> String {
    if word.is_empty() {
        return "1".into();
    }
    if generators {
        if let Ok(iv) = indices_from_word(word, alphabet) {
            let tag = if alphabet.is_mlv() { "z" } else { "Y" };
            return iv.pairs().map(|(k, a)| format!("{tag}({k},{a})")).collect();
        }
    }
    word_raw(word)
}

fn print_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn print_poly(p: &NCPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let generators = p.class() >= Class::One;
    let mut out = String::new();
    for (i, (w, c)) in p.terms().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if w.is_empty() {
            out.push_str(&print_rational(&abs));
            continue;
        }
        if !abs.is_one() {
            out.push_str(&print_rational(&abs));
            out.push('*');
        }
        out.push_str(&print_word(w, p.alphabet(), generators));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str, level: Option<u32>) -> NCPoly {
        parse_poly(s, ParseOptions { level, family: None }).unwrap()
    }

    #[test]
    fn generator_and_raw_notation_agree() {
        let a = parse("z(2,1)z(3,2)", Some(3));
        let b = parse("x y1 x x y2", Some(3));
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "z(2,1)z(3,2)");
    }

    #[test]
    fn raw_output_when_outside_a1() {
        let p = parse("x y1 + y1 x", None);
        assert_eq!(p.alphabet(), Alphabet::Mlv(2));
        assert_eq!(p.to_string(), "y1 x + x y1");
    }

    #[test]
    fn coefficients_and_constants() {
        let p = parse("-3/2*z(2,0) + 2 - z(3,0)", Some(1));
        assert_eq!(p.to_string(), "2 - 3/2*z(2,0) - z(3,0)");
        assert_eq!(parse(&p.to_string(), Some(1)), p);
        assert!(parse("0", None).is_zero());
        assert_eq!(parse("1", None), NCPoly::one(Alphabet::Mlv(1)));
    }

    #[test]
    fn level_letters() {
        let p = parse("Y(2,1)Y(1,2)", Some(2));
        assert_eq!(p.alphabet(), Alphabet::Level(2));
        assert_eq!(p.to_string(), "Y(2,1)Y(1,2)");
        assert_eq!(parse("x0 x1", None), parse("Y(2,1)", Some(1)));
        // twist 0 is the residue N
        assert_eq!(parse("Y(2,0)", Some(3)), parse("Y(2,3)", Some(3)));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let e = parse_poly("z(2,", ParseOptions::default()).unwrap_err();
        assert_eq!(e.pos, 4);
        let e = parse_poly("z(2,1) x1", ParseOptions::default()).unwrap_err();
        assert_eq!(e.pos, 7);
        assert!(parse_poly("", ParseOptions::default()).is_err());
        assert!(parse_poly("2*", ParseOptions::default()).is_err());
        assert!(parse_poly(
            "x3",
            ParseOptions {
                level: Some(2),
                family: None
            }
        )
        .is_err());
        assert!(parse_poly("z(0,1)", ParseOptions::default()).is_err());
    }
}
