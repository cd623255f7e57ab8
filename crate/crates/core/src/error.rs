use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("letter {letter} out of range for alphabet of size {alphabet_size}")]
    LetterOutOfRange { letter: usize, alphabet_size: usize },
    #[error("invalid alphabet size {0} (must be in 1..=256)")]
    InvalidAlphabet(usize),
    #[error("invalid character {0:?} in digit word")]
    InvalidDigit(char),
    #[error("morphism has no images")]
    EmptyImages,
    #[error("expected {expected} images, found {found}")]
    ImageCount { expected: usize, found: usize },
    #[error("image of letter {letter} has length {found}, expected {expected}")]
    NonUniform { letter: usize, expected: usize, found: usize },
    #[error("morphism length q must be positive")]
    ZeroLength,
    #[error("fixed point needs domain_size == codomain_size (got {domain} and {codomain})")]
    NotEndomorphism { domain: usize, codomain: usize },
    #[error("image of seed {seed} does not begin with {seed}")]
    NotProlongable { seed: u8 },
    #[error("fixed point of a 1-uniform morphism is not infinite")]
    NotGrowing,
    #[error("word over alphabet {word} does not fit morphism domain {domain}")]
    DomainMismatch { word: usize, domain: usize },
    #[error("swap_halves needs a non-empty word of even length, got length {0}")]
    OddOrEmpty(usize),
    #[error("window material of {requested} letters exceeds the cap of {cap}")]
    ResourceCap { requested: u128, cap: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
