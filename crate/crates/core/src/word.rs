use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite word over the alphabet `{0, .., alphabet_size - 1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<u8>,
    alphabet_size: usize,
}

fn check_alphabet(alphabet_size: usize) -> Result<()> {
    if alphabet_size == 0 || alphabet_size > 256 {
        return Err(Error::InvalidAlphabet(alphabet_size));
    }
    Ok(())
}

impl Word {
    pub fn new(letters: Vec<u8>, alphabet_size: usize) -> Result<Self> {
        check_alphabet(alphabet_size)?;
        if let Some(&bad) = letters.iter().find(|&&a| a as usize >= alphabet_size) {
            return Err(Error::LetterOutOfRange {
                letter: bad as usize,
                alphabet_size,
            });
        }
        Ok(Word {
            letters,
            alphabet_size,
        })
    }

    pub fn empty(alphabet_size: usize) -> Result<Self> {
        Self::new(Vec::new(), alphabet_size)
    }

    /// Parses a string of decimal digits, one letter per character.
    pub fn from_digits(s: &str, alphabet_size: usize) -> Result<Self> {
        let letters = parse_digits(s)?;
        Self::new(letters, alphabet_size)
    }

    /// Parses digits and takes the alphabet to be `max letter + 1`
    /// (or `min_alphabet`, whichever is larger).
    pub fn from_digits_infer(s: &str, min_alphabet: usize) -> Result<Self> {
        let letters = parse_digits(s)?;
        let inferred = letters.iter().map(|&a| a as usize + 1).max().unwrap_or(1);
        Self::new(letters, inferred.max(min_alphabet))
    }

    pub(crate) fn from_raw(letters: Vec<u8>, alphabet_size: usize) -> Self {
        debug_assert!(letters.iter().all(|&a| (a as usize) < alphabet_size));
        Word {
            letters,
            alphabet_size,
        }
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.letters
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word::from_raw(letters, self.alphabet_size.max(other.alphabet_size))
    }

    pub fn slice(&self, start: usize, len: usize) -> Word {
        Word::from_raw(
            self.letters[start..start + len].to_vec(),
            self.alphabet_size,
        )
    }

    /// Digit-string form. Letters above 9 are not representable and panic.
    pub fn to_digits(&self) -> String {
        digits(&self.letters)
    }
}

pub(crate) fn parse_digits(s: &str) -> Result<Vec<u8>> {
    s.chars()
        .map(|ch| {
            ch.to_digit(10)
                .map(|d| d as u8)
                .ok_or(Error::InvalidDigit(ch))
        })
        .collect()
}

/// Renders raw letters as a digit string.
pub fn digits(letters: &[u8]) -> String {
    letters
        .iter()
        .map(|&a| {
            assert!(a < 10, "letter {a} has no digit form");
            char::from(b'0' + a)
        })
        .collect()
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_digits())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:?}/{})", self.to_digits(), self.alphabet_size)
    }
}

impl AsRef<[u8]> for Word {
    fn as_ref(&self) -> &[u8] {
        &self.letters
    }
}

// Words travel as digit strings in every JSON artifact.
impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_digits())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Word::from_digits_infer(&s, 1).map_err(serde::de::Error::custom)
    }
}

/// Reads a word file: one digit word per line, blank lines ignored.
pub fn parse_word_lines(text: &str, alphabet_size: Option<usize>) -> Result<Vec<Word>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| match alphabet_size {
            Some(s) => Word::from_digits(l, s),
            None => Word::from_digits_infer(l, 1),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits_round_trip() {
        let w = Word::from_digits("01243", 5).unwrap();
        assert_eq!(w.letters(), &[0, 1, 2, 4, 3]);
        assert_eq!(w.to_string(), "01243");
    }

    #[test]
    fn rejects_out_of_range_and_junk() {
        assert!(matches!(
            Word::from_digits("02", 2),
            Err(Error::LetterOutOfRange { letter: 2, .. })
        ));
        assert!(matches!(
            Word::from_digits("0a", 5),
            Err(Error::InvalidDigit('a'))
        ));
        assert!(Word::new(vec![], 0).is_err());
    }

    #[test]
    fn empty_word_is_valid() {
        let w = Word::from_digits("", 3).unwrap();
        assert!(w.is_empty());
    }

    #[test]
    fn word_lines() {
        let ws = parse_word_lines("012\n\n 11 \n", None).unwrap();
        assert_eq!(ws.len(), 2);
        assert_eq!(ws[0].alphabet_size(), 3);
        assert_eq!(ws[1].to_string(), "11");
    }
}
