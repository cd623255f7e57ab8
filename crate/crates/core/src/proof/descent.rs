//! Pulling a half-flip of an aligned image back to the base word.
//!
//! Write `u = u' f(U) u''` and `v = v' f(V) v''` with `|u''| = |v''| = x`,
//! where `x` is the common residue of the occurrences of `u` and `v`. When
//! `x >= alpha` the partial block `u''` names the letter `mu` whose image
//! it starts, giving `U mu V nu` and `V nu U mu`; otherwise `u'` is long
//! enough to name the letter whose image it ends, giving `mu U nu V` and
//! `nu V mu U`. Either way the base word has a half-flip of period `p / q`.

use thiserror::Error;

use super::table::{DistinctnessTable, Side};
use crate::detect::HalfFlipWitness;
use crate::factors::FactorSet;
use crate::morphism::UniformMorphism;
use crate::word::{digits, Word};

/// Answers "is this word a factor of the base word?".
pub trait FactorOracle {
    fn is_factor(&self, w: &[u8]) -> bool;
}

impl<F: Fn(&[u8]) -> bool> FactorOracle for F {
    fn is_factor(&self, w: &[u8]) -> bool {
        self(w)
    }
}

/// Factors of a finite word.
#[derive(Debug, Clone, Copy)]
pub struct WordOracle<'a>(pub &'a [u8]);

impl FactorOracle for WordOracle<'_> {
    fn is_factor(&self, w: &[u8]) -> bool {
        w.is_empty() || self.0.windows(w.len()).any(|x| x == w)
    }
}

/// Factors of an infinite word, backed by exact factor sets of several lengths.
#[derive(Debug, Clone, Default)]
pub struct PrefixOracle {
    sets: Vec<FactorSet>,
}

impl PrefixOracle {
    pub fn new(sets: Vec<FactorSet>) -> Self {
        PrefixOracle { sets }
    }
}

impl FactorOracle for PrefixOracle {
    fn is_factor(&self, w: &[u8]) -> bool {
        self.sets
            .iter()
            .find(|s| s.length() == w.len())
            .is_some_and(|s| s.contains(w))
    }
}

/// Start residues modulo `q` of the occurrences of `u` and of `v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlignmentInfo {
    pub x_u: usize,
    pub x_v: usize,
    pub q: usize,
}

impl AlignmentInfo {
    /// Residues read off the witness positions: `u` starts at `pos_uv`
    /// and `v` at `pos_vu`.
    pub fn from_witness(w: &HalfFlipWitness, q: usize) -> Self {
        AlignmentInfo {
            x_u: w.pos_uv % q,
            x_v: w.pos_vu % q,
            q,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DescentError {
    #[error("period {period} is not a multiple of q = {q}")]
    PeriodNotMultiple { period: usize, q: usize },
    #[error("u and v start at different residues ({x_u} and {x_v})")]
    Misaligned { x_u: usize, x_v: usize },
    #[error("alignment does not match the witness positions")]
    AlignmentMismatch,
    #[error("alpha + beta = {sum} exceeds q + 1 = {limit}")]
    CriterionViolated { sum: usize, limit: usize },
    #[error("distinctness table belongs to a different morphism or has violations")]
    BadTable,
    #[error("block {0} is not the image of any letter")]
    NotAnImage(String),
    #[error("no letter image is consistent with the partial block {0}")]
    NoExtension(String),
    #[error("partial block {part} extends to several letters {candidates:?}")]
    Ambiguous { part: String, candidates: Vec<u8> },
    #[error("base word rejects the descended factor {0}")]
    OracleRejected(String),
}

fn decode(f: &UniformMorphism, blocks: &[u8]) -> Result<Vec<u8>, DescentError> {
    blocks
        .chunks(f.q())
        .map(|b| {
            f.preimage_of_block(b)
                .ok_or_else(|| DescentError::NotAnImage(digits(b)))
        })
        .collect()
}

/// The unique letter whose image starts (or ends) with `part`. Candidates
/// sharing `part` are told apart by which of them can follow (or precede)
/// `context` in the base word.
fn resolve(
    table: &DistinctnessTable,
    oracle: &dyn FactorOracle,
    side: Side,
    part: &[u8],
    context: &[u8],
) -> Result<u8, DescentError> {
    let candidates = table.letters_matching(side, part);
    let survivors: Vec<u8> = if candidates.len() <= 1 {
        candidates
    } else {
        candidates
            .into_iter()
            .filter(|&c| {
                let mut w = context.to_vec();
                match side {
                    Side::Prefix => w.push(c),
                    Side::Suffix => w.insert(0, c),
                }
                oracle.is_factor(&w)
            })
            .collect()
    };
    match survivors.as_slice() {
        [] => Err(DescentError::NoExtension(digits(part))),
        [c] => Ok(*c),
        _ => Err(DescentError::Ambiguous {
            part: digits(part),
            candidates: survivors,
        }),
    }
}

/// Maps a half-flip of period `p` in `f(W)` to one of period `p / q` in
/// `W`. Positions of the returned witness index the base word, assuming
/// the image witness indexes `f(W)`.
pub fn descend_witness(
    f: &UniformMorphism,
    table: &DistinctnessTable,
    oracle: &dyn FactorOracle,
    image_witness: &HalfFlipWitness,
    alignment: AlignmentInfo,
) -> Result<HalfFlipWitness, DescentError> {
    let q = f.q();
    let p = image_witness.period;
    if alignment.q != q || p == 0 || !p.is_multiple_of(q) {
        return Err(DescentError::PeriodNotMultiple { period: p, q });
    }
    if alignment.x_u != alignment.x_v {
        return Err(DescentError::Misaligned {
            x_u: alignment.x_u,
            x_v: alignment.x_v,
        });
    }
    let x = alignment.x_u;
    if image_witness.pos_uv % q != x || image_witness.pos_vu % q != x {
        return Err(DescentError::AlignmentMismatch);
    }
    if table.morphism != *f || !table.is_valid() {
        return Err(DescentError::BadTable);
    }
    if table.alpha + table.beta > q + 1 {
        return Err(DescentError::CriterionViolated {
            sum: table.alpha + table.beta,
            limit: q + 1,
        });
    }

    let (u, v) = (image_witness.u(), image_witness.v());
    let base_period = p / q;
    let (uv, vu, shift) = if x == 0 {
        let (big_u, big_v) = (decode(f, u)?, decode(f, v)?);
        ([&big_u[..], &big_v[..]].concat(), [&big_v[..], &big_u[..]].concat(), 0)
    } else {
        let head = q - x;
        let (u_head, u_mid, u_tail) = (&u[..head], &u[head..p - x], &u[p - x..]);
        let (v_head, v_mid, v_tail) = (&v[..head], &v[head..p - x], &v[p - x..]);
        let (big_u, big_v) = (decode(f, u_mid)?, decode(f, v_mid)?);
        if x >= table.alpha {
            let mu = resolve(table, oracle, Side::Prefix, u_tail, &big_u)?;
            let nu = resolve(table, oracle, Side::Prefix, v_tail, &big_v)?;
            let (um, vn) = ([&big_u[..], &[mu]].concat(), [&big_v[..], &[nu]].concat());
            ([&um[..], &vn[..]].concat(), [&vn[..], &um[..]].concat(), 1)
        } else {
            let mu = resolve(table, oracle, Side::Suffix, u_head, &big_u)?;
            let nu = resolve(table, oracle, Side::Suffix, v_head, &big_v)?;
            let (mu_u, nu_v) = ([&[mu], &big_u[..]].concat(), [&[nu], &big_v[..]].concat());
            ([&mu_u[..], &nu_v[..]].concat(), [&nu_v[..], &mu_u[..]].concat(), 0)
        }
    };
    debug_assert_eq!(uv.len(), 2 * base_period);
    for w in [&uv, &vu] {
        if !oracle.is_factor(w) {
            return Err(DescentError::OracleRejected(digits(w)));
        }
    }
    Ok(HalfFlipWitness {
        period: base_period,
        pos_uv: image_witness.pos_uv / q + shift,
        pos_vu: image_witness.pos_vu / q + shift,
        uv: Word::new(uv, f.domain_size()).expect("decoded letters lie in the domain"),
    })
}
