//! Reduced words over a finite alphabet: the elements of the free group F_n.
//!
//! A [`Word`] always holds its freely reduced letter sequence; the empty
//! sequence is the identity. Letters are stored expanded, one entry per
//! occurrence, so `a^3` is three letters.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Largest exponent magnitude accepted by the parser.
const MAX_EXPONENT: i64 = 1 << 20;

/// Printable names for the generators of F_n.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, name) in names.iter().enumerate() {
            let mut chars = name.chars();
            match chars.next() {
                None => return Err(Error::InvalidAlphabet("empty generator name".into())),
                Some(c) if !c.is_ascii_alphabetic() => {
                    return Err(Error::InvalidAlphabet(format!(
                        "name {name:?} must start with an ASCII letter"
                    )))
                }
                _ => {}
            }
            if !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::InvalidAlphabet(format!(
                    "name {name:?} may only contain ASCII letters, digits and '_'"
                )));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidAlphabet(format!("duplicate name {name:?}")));
            }
        }
        Ok(Alphabet { names })
    }

    /// `a, b, c, ...`; ranks above 26 need explicit names.
    pub fn standard(rank: usize) -> Result<Self> {
        if rank > 26 {
            return Err(Error::InvalidAlphabet(format!(
                "rank {rank} exceeds the 26 default names; supply explicit names"
            )));
        }
        Ok(Alphabet {
            names: (0..rank).map(default_name).collect(),
        })
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, generator: usize) -> &str {
        &self.names[generator]
    }

    fn longest_prefix(&self, text: &str) -> Option<(usize, usize)> {
        self.names
            .iter()
            .enumerate()
            .filter(|(_, name)| text.starts_with(name.as_str()))
            .max_by_key(|(_, name)| name.len())
            .map(|(g, name)| (g, name.len()))
    }

    /// Single-letter uppercase synonym for the inverse of a single-letter name.
    fn inverse_synonym(&self, c: char) -> Option<usize> {
        if !c.is_ascii_uppercase() {
            return None;
        }
        let lower = c.to_ascii_lowercase().to_string();
        self.names.iter().position(|n| *n == lower)
    }
}

/// Fallback naming used when no alphabet is at hand.
pub fn default_name(generator: usize) -> String {
    if generator < 26 {
        char::from(b'a' + generator as u8).to_string()
    } else {
        format!("x{generator}")
    }
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub positive: bool,
}

impl Letter {
    pub fn new(generator: usize, positive: bool) -> Self {
        Letter {
            generator,
            positive,
        }
    }

    pub fn pos(generator: usize) -> Self {
        Letter::new(generator, true)
    }

    pub fn neg(generator: usize) -> Self {
        Letter::new(generator, false)
    }

    pub fn inverse(self) -> Self {
        Letter::new(self.generator, !self.positive)
    }

    pub fn sign(self) -> i64 {
        if self.positive {
            1
        } else {
            -1
        }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.positive != other.positive
    }
}

/// A freely reduced word in F_rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    rank: usize,
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity(rank: usize) -> Self {
        Word {
            rank,
            letters: Vec::new(),
        }
    }

    pub fn generator(rank: usize, generator: usize) -> Self {
        assert!(
            generator < rank,
            "generator {generator} out of range for rank {rank}"
        );
        Word {
            rank,
            letters: vec![Letter::pos(generator)],
        }
    }

    /// Free reduction of an arbitrary letter sequence.
    ///
    /// One left-to-right pass; the output buffer doubles as the stack, so each
    /// incoming letter either cancels the current top or is pushed.
    pub fn reduce(rank: usize, raw: impl IntoIterator<Item = Letter>) -> Self {
        let mut letters: Vec<Letter> = Vec::new();
        for letter in raw {
            debug_assert!(letter.generator < rank);
            match letters.last() {
                Some(&top) if top.cancels(letter) => {
                    letters.pop();
                }
                _ => letters.push(letter),
            }
        }
        Word { rank, letters }
    }

    /// Wraps an already reduced sequence, rejecting anything else.
    pub fn from_reduced(rank: usize, letters: Vec<Letter>) -> Result<Self> {
        if let Some(l) = letters.iter().find(|l| l.generator >= rank) {
            return Err(Error::InvalidArgument(format!(
                "generator index {} out of range for rank {rank}",
                l.generator
            )));
        }
        if letters.windows(2).any(|w| w[0].cancels(w[1])) {
            return Err(Error::InvalidArgument(
                "letter sequence is not reduced".into(),
            ));
        }
        Ok(Word { rank, letters })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        Ok(self.mul_unchecked(other))
    }

    /// Product without the rank check; both operands must share a rank.
    pub(crate) fn mul_unchecked(&self, other: &Word) -> Word {
        // Only the seam can cancel since both halves are reduced.
        let overlap = self
            .letters
            .iter()
            .rev()
            .zip(other.letters.iter())
            .take_while(|(x, y)| x.cancels(**y))
            .count();
        let mut letters = Vec::with_capacity(self.len() + other.len() - 2 * overlap);
        letters.extend_from_slice(&self.letters[..self.len() - overlap]);
        letters.extend_from_slice(&other.letters[overlap..]);
        Word {
            rank: self.rank,
            letters,
        }
    }

    pub fn inverse(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// `by · self · by⁻¹`
    pub fn conjugate_by(&self, by: &Word) -> Result<Word> {
        by.concat(self)?.concat(&by.inverse())
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity(self.rank);
        for _ in 0..k.unsigned_abs() {
            out = out.mul_unchecked(&base);
        }
        out
    }

    /// Splits `self` as `conjugator · core · conjugator⁻¹` with `core`
    /// cyclically reduced.
    pub fn cyclically_reduce(&self) -> (Word, Word) {
        let n = self.letters.len();
        let mut peel = 0;
        while 2 * peel + 1 < n && self.letters[peel].cancels(self.letters[n - 1 - peel]) {
            peel += 1;
        }
        let core = Word {
            rank: self.rank,
            letters: self.letters[peel..n - peel].to_vec(),
        };
        let conjugator = Word {
            rank: self.rank,
            letters: self.letters[..peel].to_vec(),
        };
        (core, conjugator)
    }

    /// Seeded random reduced word of exactly `length` letters.
    pub fn random(length: usize, rank: usize, seed: u64) -> Result<Word> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Word::random_with(length, rank, &mut rng)
    }

    pub fn random_with<R: Rng + ?Sized>(length: usize, rank: usize, rng: &mut R) -> Result<Word> {
        if length > 0 && rank == 0 {
            return Err(Error::ZeroRank);
        }
        let mut letters: Vec<Letter> = Vec::with_capacity(length);
        for _ in 0..length {
            let letter = match letters.last() {
                None => letter_from_index(rng.gen_range(0..2 * rank)),
                Some(prev) => {
                    // 2n - 1 choices: skip the slot holding prev⁻¹.
                    let forbidden = letter_index(prev.inverse());
                    let mut i = rng.gen_range(0..2 * rank - 1);
                    if i >= forbidden {
                        i += 1;
                    }
                    letter_from_index(i)
                }
            };
            letters.push(letter);
        }
        Ok(Word { rank, letters })
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay {
            word: self,
            alphabet: Some(alphabet),
        }
    }

    pub fn to_string_with(&self, alphabet: &Alphabet) -> String {
        self.display(alphabet).to_string()
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        json!({
            "alphabet": alphabet.names(),
            "letters": self
                .letters
                .iter()
                .map(|l| json!([l.generator, l.sign()]))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &Value) -> Result<(Alphabet, Word)> {
        let names = value
            .get("alphabet")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("missing \"alphabet\" array".into()))?
            .iter()
            .map(|v| {
                v.as_str()
                    .map(str::to_owned)
                    .ok_or_else(|| Error::Json("alphabet names must be strings".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let alphabet = Alphabet::new(names)?;
        let letters = value
            .get("letters")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("missing \"letters\" array".into()))?
            .iter()
            .map(|pair| {
                let bad = || Error::Json(format!("letter must be [generator, ±1], got {pair}"));
                let pair = pair.as_array().filter(|p| p.len() == 2).ok_or_else(bad)?;
                let generator = pair[0].as_u64().ok_or_else(bad)? as usize;
                let positive = match pair[1].as_i64() {
                    Some(1) => true,
                    Some(-1) => false,
                    _ => return Err(bad()),
                };
                Ok(Letter::new(generator, positive))
            })
            .collect::<Result<Vec<_>>>()?;
        let word = Word::from_reduced(alphabet.rank(), letters)?;
        Ok((alphabet, word))
    }
}

fn letter_index(l: Letter) -> usize {
    2 * l.generator + usize::from(!l.positive)
}

fn letter_from_index(i: usize) -> Letter {
    Letter::new(i / 2, i.is_multiple_of(2))
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    alphabet: Option<&'a Alphabet>,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = &self.word.letters;
        if letters.is_empty() {
            return f.write_str("1");
        }
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let l = letters[i];
            let run = letters[i..].iter().take_while(|&&m| m == l).count();
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            match self.alphabet {
                Some(a) => f.write_str(a.name(l.generator))?,
                None => f.write_str(&default_name(l.generator))?,
            }
            match (l.positive, run) {
                (true, 1) => {}
                (true, k) => write!(f, "^{k}")?,
                (false, k) => write!(f, "^-{k}")?,
            }
            i += run;
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        WordDisplay {
            word: self,
            alphabet: None,
        }
        .fmt(f)
    }
}

/// Parses text such as `a b^-1 a`, `ab^-1a`, `a A` or `x1^2 x2`.
///
/// Names are matched longest-first. An uppercase single letter is the inverse
/// of the matching single-letter name unless it is itself a name. `1` denotes
/// the identity.
pub fn parse_word(text: &str, alphabet: &Alphabet) -> Result<Word> {
    let mut raw = Vec::new();
    let mut i = 0;
    while i < text.len() {
        let rest = &text[i..];
        let c = rest.chars().next().unwrap();
        if c.is_whitespace() || c == '*' || c == '.' {
            i += c.len_utf8();
            continue;
        }
        let (letter, consumed) = if let Some((g, len)) = alphabet.longest_prefix(rest) {
            (Some(Letter::pos(g)), len)
        } else if c == '1' {
            (None, 1)
        } else if let Some(g) = alphabet.inverse_synonym(c) {
            (Some(Letter::neg(g)), 1)
        } else if alphabet.rank() == 0 && c.is_alphabetic() {
            return Err(Error::ZeroRank);
        } else {
            let token: String = rest
                .chars()
                .take_while(|ch| ch.is_alphanumeric() || *ch == '_')
                .collect();
            let token = if token.is_empty() {
                c.to_string()
            } else {
                token
            };
            return Err(Error::UnknownName { token, position: i });
        };
        i += consumed;
        let mut exponent = 1i64;
        if text[i..].starts_with('^') {
            let start = i;
            i += 1;
            let negative = text[i..].starts_with('-');
            if negative {
                i += 1;
            }
            let digits: &str = {
                let end = text[i..]
                    .find(|ch: char| !ch.is_ascii_digit())
                    .map_or(text.len(), |k| i + k);
                &text[i..end]
            };
            let malformed = || Error::MalformedExponent {
                text: text[start..(i + digits.len()).min(text.len())].to_string(),
                position: start,
            };
            if digits.is_empty() {
                return Err(malformed());
            }
            let magnitude: i64 = digits.parse().map_err(|_| malformed())?;
            if magnitude > MAX_EXPONENT {
                return Err(malformed());
            }
            i += digits.len();
            exponent = if negative { -magnitude } else { magnitude };
        }
        if let Some(l) = letter {
            let l = if exponent < 0 { l.inverse() } else { l };
            raw.extend(std::iter::repeat_n(l, exponent.unsigned_abs() as usize));
        }
    }
    Ok(Word::reduce(alphabet.rank(), raw))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::standard(2).unwrap()
    }

    fn w(text: &str) -> Word {
        parse_word(text, &ab()).unwrap()
    }

    #[test]
    fn parse_examples() {
        let word = w("a b^-1 a");
        assert_eq!(
            word.letters(),
            &[Letter::pos(0), Letter::neg(1), Letter::pos(0)]
        );
        assert!(w("a A").is_identity());
        assert_eq!(w("b^3").letters(), &[Letter::pos(1); 3]);
        assert_eq!(w("ab^-1a"), word);
        assert_eq!(w("B^2"), w("b^-2"));
        assert_eq!(w("a^0 b"), w("b"));
        assert!(w("").is_identity());
        assert!(w("1").is_identity());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_word("a c", &ab()),
            Err(Error::UnknownName { ref token, position: 2 }) if token == "c"
        ));
        assert!(matches!(
            parse_word("a^", &ab()),
            Err(Error::MalformedExponent { .. })
        ));
        assert!(matches!(
            parse_word("a^-x", &ab()),
            Err(Error::MalformedExponent { .. })
        ));
        assert!(matches!(
            parse_word("a^99999999999999999999", &ab()),
            Err(Error::MalformedExponent { .. })
        ));
        let empty = Alphabet::standard(0).unwrap();
        assert!(matches!(parse_word("a", &empty), Err(Error::ZeroRank)));
        assert!(parse_word("  ", &empty).unwrap().is_identity());
    }

    #[test]
    fn multi_character_names() {
        let alpha = Alphabet::new(["x1", "x12", "y"]).unwrap();
        let word = parse_word("x12x1^-1 y", &alpha).unwrap();
        assert_eq!(
            word.letters(),
            &[Letter::pos(1), Letter::neg(0), Letter::pos(2)]
        );
        assert_eq!(word.to_string_with(&alpha), "x12 x1^-1 y");
    }

    #[test]
    fn alphabet_validation() {
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new([""]).is_err());
        assert!(Alphabet::new(["1x"]).is_err());
        assert!(Alphabet::new(["a^"]).is_err());
        assert!(Alphabet::standard(27).is_err());
        assert_eq!(Alphabet::standard(3).unwrap().names(), &["a", "b", "c"]);
    }

    #[test]
    fn reduce_examples() {
        let r = |ls: &[Letter]| Word::reduce(2, ls.iter().copied());
        let (a, b) = (Letter::pos(0), Letter::pos(1));
        assert_eq!(r(&[a, a.inverse(), b]).letters(), &[b]);
        assert!(r(&[a, b, b.inverse(), a.inverse()]).is_identity());
        assert_eq!(r(&[a, b, a.inverse()]).letters(), &[a, b, a.inverse()]);
    }

    #[test]
    fn concat_and_invert() {
        assert_eq!(w("a b").concat(&w("b^-1 a")).unwrap(), w("a^2"));
        let x = w("a b^-1 a^2 b");
        assert_eq!(x.concat(&Word::identity(2)).unwrap(), x);
        assert!(x.concat(&x.inverse()).unwrap().is_identity());
        assert_eq!(w("a b^-1").inverse(), w("b a^-1"));
        assert!(Word::identity(2).inverse().is_identity());
        assert!(matches!(
            x.concat(&Word::identity(3)),
            Err(Error::RankMismatch {
                expected: 2,
                found: 3
            })
        ));
    }

    #[test]
    fn cyclic_reduction() {
        let (core, conj) = w("a b a^-1").cyclically_reduce();
        assert_eq!((core, conj), (w("b"), w("a")));
        let (core, conj) = w("b a").cyclically_reduce();
        assert_eq!((core, conj), (w("b a"), Word::identity(2)));
        let (core, conj) = w("a b b a^-1").cyclically_reduce();
        assert_eq!((core, conj), (w("b^2"), w("a")));
        let (core, conj) = w("a^3").cyclically_reduce();
        assert_eq!((core, conj), (w("a^3"), Word::identity(2)));
    }

    #[test]
    fn printing_groups_runs() {
        assert_eq!(w("b b a b^-1 b^-1").to_string(), "b^2 a b^-2");
        assert_eq!(w("a A").to_string(), "1");
        assert_eq!(w("a B").to_string(), "a b^-1");
    }

    #[test]
    fn random_words() {
        assert!(Word::random(0, 2, 7).unwrap().is_identity());
        assert_eq!(
            Word::random(20, 3, 42).unwrap(),
            Word::random(20, 3, 42).unwrap()
        );
        assert_eq!(Word::random(20, 3, 42).unwrap().len(), 20);
        assert!(matches!(Word::random(1, 0, 1), Err(Error::ZeroRank)));
        let one = Word::random(5, 1, 3).unwrap();
        let a = Word::generator(1, 0);
        assert!(one == a.pow(5) || one == a.pow(-5));
    }

    #[test]
    fn json_round_trip_and_rejection() {
        let alpha = ab();
        let word = w("a b^-1 a");
        let (alpha2, back) = Word::from_json(&word.to_json(&alpha)).unwrap();
        assert_eq!((alpha2, back), (alpha, word));
        let bad = json!({"alphabet": ["a"], "letters": [[0, 1], [0, -1]]});
        assert!(Word::from_json(&bad).is_err());
        let bad = json!({"alphabet": ["a"], "letters": [[0, 2]]});
        assert!(Word::from_json(&bad).is_err());
    }
}
