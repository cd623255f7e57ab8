//! Uniform morphisms and the fixed points they generate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{digits, parse_digits, Word};

/// Morphism as it appears on disk, before validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMorphism {
    pub domain_size: usize,
    pub codomain_size: usize,
    pub q: usize,
    pub images: Vec<String>,
}

/// A morphism sending every letter to a word of the same length `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformMorphism {
    domain_size: usize,
    codomain_size: usize,
    q: usize,
    images: Vec<Vec<u8>>,
}

/// Checks the raw data and builds the morphism.
pub fn validate_morphism(raw: &RawMorphism) -> Result<UniformMorphism> {
    let images = raw
        .images
        .iter()
        .map(|s| parse_digits(s))
        .collect::<Result<Vec<_>>>()?;
    UniformMorphism::new(raw.domain_size, raw.codomain_size, raw.q, images)
}

impl UniformMorphism {
    pub fn new(
        domain_size: usize,
        codomain_size: usize,
        q: usize,
        images: Vec<Vec<u8>>,
    ) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::EmptyImages);
        }
        for size in [domain_size, codomain_size] {
            if size == 0 || size > 256 {
                return Err(Error::InvalidAlphabet(size));
            }
        }
        if q == 0 {
            return Err(Error::ZeroLength);
        }
        if images.len() != domain_size {
            return Err(Error::ImageCount {
                expected: domain_size,
                found: images.len(),
            });
        }
        for (letter, img) in images.iter().enumerate() {
            if img.len() != q {
                return Err(Error::NonUniform {
                    letter,
                    expected: q,
                    found: img.len(),
                });
            }
            if let Some(&bad) = img.iter().find(|&&a| a as usize >= codomain_size) {
                return Err(Error::LetterOutOfRange {
                    letter: bad as usize,
                    alphabet_size: codomain_size,
                });
            }
        }
        Ok(UniformMorphism {
            domain_size,
            codomain_size,
            q,
            images,
        })
    }

    /// Builds a morphism from digit strings, inferring `q` from the first image.
    pub fn from_digit_images(
        domain_size: usize,
        codomain_size: usize,
        images: &[&str],
    ) -> Result<Self> {
        let q = images.first().map_or(0, |s| s.len());
        validate_morphism(&RawMorphism {
            domain_size,
            codomain_size,
            q,
            images: images.iter().map(|s| s.to_string()).collect(),
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawMorphism = serde_json::from_str(text)?;
        validate_morphism(&raw)
    }

    pub fn to_raw(&self) -> RawMorphism {
        RawMorphism {
            domain_size: self.domain_size,
            codomain_size: self.codomain_size,
            q: self.q,
            images: self.images.iter().map(|i| digits(i)).collect(),
        }
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn codomain_size(&self) -> usize {
        self.codomain_size
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn image(&self, letter: u8) -> &[u8] {
        &self.images[letter as usize]
    }

    pub fn images(&self) -> &[Vec<u8>] {
        &self.images
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        if w.alphabet_size() > self.domain_size {
            return Err(Error::DomainMismatch {
                word: w.alphabet_size(),
                domain: self.domain_size,
            });
        }
        Ok(Word::from_raw(
            self.apply_letters(w.letters()),
            self.codomain_size,
        ))
    }

    /// Applies the morphism to raw letters, which must lie in the domain.
    pub fn apply_letters(&self, letters: &[u8]) -> Vec<u8> {
        let mut out = Vec::with_capacity(letters.len() * self.q);
        for &a in letters {
            out.extend_from_slice(&self.images[a as usize]);
        }
        out
    }

    /// The letter whose image is exactly `block`, if any.
    pub fn preimage_of_block(&self, block: &[u8]) -> Option<u8> {
        self.images
            .iter()
            .position(|img| img.as_slice() == block)
            .map(|a| a as u8)
    }
}

/// Concatenation of images; output length is `q * |w|`.
pub fn apply_morphism(f: &UniformMorphism, w: &Word) -> Result<Word> {
    f.apply(w)
}

/// A morphism together with a prolongable seed letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointSpec {
    morphism: UniformMorphism,
    seed: u8,
}

impl FixedPointSpec {
    pub fn new(morphism: UniformMorphism, seed: u8) -> Result<Self> {
        if morphism.domain_size != morphism.codomain_size {
            return Err(Error::NotEndomorphism {
                domain: morphism.domain_size,
                codomain: morphism.codomain_size,
            });
        }
        if seed as usize >= morphism.domain_size {
            return Err(Error::LetterOutOfRange {
                letter: seed as usize,
                alphabet_size: morphism.domain_size,
            });
        }
        if morphism.image(seed)[0] != seed {
            return Err(Error::NotProlongable { seed });
        }
        if morphism.q < 2 {
            return Err(Error::NotGrowing);
        }
        Ok(FixedPointSpec { morphism, seed })
    }

    pub fn morphism(&self) -> &UniformMorphism {
        &self.morphism
    }

    pub fn seed(&self) -> u8 {
        self.seed
    }

    pub fn alphabet_size(&self) -> usize {
        self.morphism.domain_size
    }

    /// First `n` letters of the fixed point, as raw letters.
    pub fn prefix_letters(&self, n: usize) -> Vec<u8> {
        let q = self.morphism.q;
        let mut w = vec![self.seed];
        while w.len() < n {
            let needed = n.div_ceil(q).min(w.len());
            w = self.morphism.apply_letters(&w[..needed]);
        }
        w.truncate(n);
        w
    }
}

/// Exactly the first `n` letters of the fixed point of `spec`.
pub fn fixed_point_prefix(spec: &FixedPointSpec, n: usize) -> Word {
    Word::from_raw(spec.prefix_letters(n), spec.alphabet_size())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn thue_morse() -> FixedPointSpec {
        let t = UniformMorphism::from_digit_images(2, 2, &["01", "10"]).unwrap();
        FixedPointSpec::new(t, 0).unwrap()
    }

    #[test]
    fn non_uniform_images_rejected() {
        let raw = RawMorphism {
            domain_size: 2,
            codomain_size: 2,
            q: 2,
            images: vec!["01".into(), "0".into()],
        };
        assert!(matches!(
            validate_morphism(&raw),
            Err(Error::NonUniform { letter: 1, .. })
        ));
    }

    #[test]
    fn out_of_range_image_letter_rejected() {
        let raw = RawMorphism {
            domain_size: 1,
            codomain_size: 2,
            q: 2,
            images: vec!["02".into()],
        };
        assert!(matches!(
            validate_morphism(&raw),
            Err(Error::LetterOutOfRange { letter: 2, .. })
        ));
    }

    #[test]
    fn empty_images_rejected() {
        let raw = RawMorphism {
            domain_size: 0,
            codomain_size: 2,
            q: 2,
            images: vec![],
        };
        assert!(matches!(validate_morphism(&raw), Err(Error::EmptyImages)));
    }

    #[test]
    fn apply_on_empty_word() {
        let t = thue_morse();
        let e = Word::empty(2).unwrap();
        assert!(t.morphism().apply(&e).unwrap().is_empty());
    }

    #[test]
    fn apply_rejects_foreign_letters() {
        let t = thue_morse();
        let w = Word::from_digits("012", 3).unwrap();
        assert!(matches!(
            t.morphism().apply(&w),
            Err(Error::DomainMismatch { .. })
        ));
    }

    #[test]
    fn thue_morse_prefix() {
        assert_eq!(
            fixed_point_prefix(&thue_morse(), 16).to_string(),
            "0110100110010110"
        );
        assert!(fixed_point_prefix(&thue_morse(), 0).is_empty());
    }

    #[test]
    fn spec_requires_prolongable_seed() {
        let t = UniformMorphism::from_digit_images(2, 2, &["10", "01"]).unwrap();
        assert!(matches!(
            FixedPointSpec::new(t, 0),
            Err(Error::NotProlongable { seed: 0 })
        ));
        let g = UniformMorphism::from_digit_images(2, 3, &["01", "10"]).unwrap();
        assert!(matches!(
            FixedPointSpec::new(g, 0),
            Err(Error::NotEndomorphism { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let t = thue_morse().morphism().clone();
        let text = serde_json::to_string(&t.to_raw()).unwrap();
        assert_eq!(UniformMorphism::from_json(&text).unwrap(), t);
    }
}
