//! Tools for half-flip avoidance in morphic words.
//!
//! A word contains a half-flip of period `p` when it has factors `uv` and
//! `vu` with `|u| = |v| = p`. This crate generates the fixed point of a
//! 95-uniform morphism over five letters and its 7-uniform images over
//! three and two letters, checks half-flip avoidance on them exactly (over
//! the infinite words, not just prefixes), verifies the structural
//! properties the avoidance argument depends on, and runs exhaustive
//! backtracking searches for the unavoidable cases.

pub mod builtin;
pub mod detect;
pub mod error;
pub mod factors;
pub mod hash;
pub mod morphism;
pub mod proof;
pub mod search;
pub mod word;

pub use error::{Error, Result};
pub use factors::{
    factor_set_exact, image_factor_set, offset_profile, two_letter_factors, Budget, FactorSet,
    OffsetProfile,
};
pub use morphism::{
    apply_morphism, fixed_point_prefix, validate_morphism, FixedPointSpec, RawMorphism,
    UniformMorphism,
};
pub use word::Word;
pub use detect::{
    find_half_flip_brute, find_half_flip_fast, infinite_halfflip_check, swap_halves,
    HalfFlipWitness, InfiniteHalfFlip, Reading,
};
pub use search::{backtrack_longest, extension_safe, SearchConfig, SearchLimits, SearchResult};
pub use proof::{verify_theorem, CheckOutcome, CheckReport, Variant};
