//! Half-flip detection in finite words and in infinite morphic words.
//!
//! A word contains a half-flip of period `p` when it has factors `uv` and
//! `vu` with `|u| = |v| = p`. Under the liberal reading `u = v` is allowed,
//! so every square `uu` is a half-flip; the distinct-halves reading
//! requires `u != v`. The two occurrences may overlap or coincide.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factors::{Budget, Material};
use crate::hash::{HashKey, PrefixHashes};
use crate::morphism::{FixedPointSpec, UniformMorphism};
use crate::word::Word;

/// Whether `u = v` (a square) counts as a half-flip.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reading {
    #[default]
    Liberal,
    DistinctHalves,
}

impl Reading {
    pub fn from_distinct_halves(distinct: bool) -> Self {
        if distinct {
            Reading::DistinctHalves
        } else {
            Reading::Liberal
        }
    }

    pub fn distinct_halves(self) -> bool {
        self == Reading::DistinctHalves
    }

    #[inline]
    fn admits(self, u: &[u8], v: &[u8]) -> bool {
        self == Reading::Liberal || u != v
    }
}

/// An occurrence of `uv` at `pos_uv` and of `vu` at `pos_vu` in some host word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfFlipWitness {
    pub period: usize,
    pub pos_uv: usize,
    pub pos_vu: usize,
    pub uv: Word,
}

impl HalfFlipWitness {
    pub fn u(&self) -> &[u8] {
        &self.uv.letters()[..self.period]
    }

    pub fn v(&self) -> &[u8] {
        &self.uv.letters()[self.period..]
    }

    /// Checks the witness against its host word.
    pub fn holds_in(&self, host: &[u8]) -> bool {
        let p = self.period;
        let uv = self.uv.letters();
        p > 0
            && uv.len() == 2 * p
            && self.pos_uv + 2 * p <= host.len()
            && self.pos_vu + 2 * p <= host.len()
            && &host[self.pos_uv..self.pos_uv + 2 * p] == uv
            && host[self.pos_vu..self.pos_vu + p] == uv[p..]
            && host[self.pos_vu + p..self.pos_vu + 2 * p] == uv[..p]
    }
}

/// Second half followed by first half.
pub fn swap_halves(x: &Word) -> Result<Word> {
    let n = x.len();
    if n == 0 || n % 2 == 1 {
        return Err(Error::OddOrEmpty(n));
    }
    let (u, v) = x.letters().split_at(n / 2);
    let mut out = v.to_vec();
    out.extend_from_slice(u);
    Ok(Word::new(out, x.alphabet_size()).expect("same letters"))
}

fn period_range(n: usize, k: usize, max_period: usize) -> std::ops::RangeInclusive<usize> {
    k.max(1)..=max_period.min(n / 2)
}

/// Reference detector: for each period from `k` up to `max_period`, index
/// all factors of length `2p` by content and look up each swap. Returns
/// the witness with the least period, then least `pos_uv`, then least `pos_vu`.
pub fn find_half_flip_brute(w: &Word, k: usize, max_period: usize) -> Option<HalfFlipWitness> {
    find_half_flip_brute_in(w, k, max_period, Reading::Liberal)
}

pub fn find_half_flip_brute_in(
    w: &Word,
    k: usize,
    max_period: usize,
    reading: Reading,
) -> Option<HalfFlipWitness> {
    let s = w.letters();
    for p in period_range(s.len(), k, max_period) {
        let mut occurrences: BTreeMap<&[u8], Vec<usize>> = BTreeMap::new();
        for (i, x) in s.windows(2 * p).enumerate() {
            occurrences.entry(x).or_default().push(i);
        }
        for (i, x) in s.windows(2 * p).enumerate() {
            let (u, v) = x.split_at(p);
            if !reading.admits(u, v) {
                continue;
            }
            let swapped = [v, u].concat();
            if let Some(js) = occurrences.get(swapped.as_slice()) {
                return Some(HalfFlipWitness {
                    period: p,
                    pos_uv: i,
                    pos_vu: js[0],
                    uv: w.slice(i, 2 * p),
                });
            }
        }
    }
    None
}

/// Same answers as [`find_half_flip_brute`], using rolling hashes with
/// every hash hit confirmed letter by letter. `O(|w| * max_period)` hash work.
pub fn find_half_flip_fast(w: &Word, k: usize, max_period: usize) -> Option<HalfFlipWitness> {
    find_half_flip_fast_in(w, k, max_period, Reading::Liberal)
}

pub fn find_half_flip_fast_in(
    w: &Word,
    k: usize,
    max_period: usize,
    reading: Reading,
) -> Option<HalfFlipWitness> {
    let s = w.letters();
    let hashes = PrefixHashes::new(s);
    let mut index: HashMap<HashKey, Vec<usize>> = HashMap::new();
    for p in period_range(s.len(), k, max_period) {
        index.clear();
        let starts = s.len() - 2 * p + 1;
        for i in 0..starts {
            index.entry(hashes.get(i, 2 * p)).or_default().push(i);
        }
        for i in 0..starts {
            let (u, v) = (&s[i..i + p], &s[i + p..i + 2 * p]);
            if reading == Reading::DistinctHalves
                && hashes.get(i, p) == hashes.get(i + p, p)
                && u == v
            {
                continue;
            }
            let Some(candidates) = index.get(&hashes.swapped(i, p)) else {
                continue;
            };
            let hit = candidates
                .iter()
                .copied()
                .find(|&j| &s[j..j + p] == v && &s[j + p..j + 2 * p] == u);
            if let Some(j) = hit {
                return Some(HalfFlipWitness {
                    period: p,
                    pos_uv: i,
                    pos_vu: j,
                    uv: w.slice(i, 2 * p),
                });
            }
        }
    }
    None
}

/// A half-flip factor `uv` of an infinite word (both `uv` and `vu` are factors).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfiniteHalfFlip {
    pub period: usize,
    pub uv: Word,
}

/// Decides, exactly, whether the infinite word `f(spec^ω)` (or the fixed
/// point itself when `f` is absent) has a half-flip with period in
/// `[k, max_period]`. Reports the least such period and the
/// lexicographically least `uv` for it. An empty range yields `None`.
pub fn infinite_halfflip_check(
    spec: &FixedPointSpec,
    f: Option<&UniformMorphism>,
    k: usize,
    max_period: usize,
) -> Result<Option<InfiniteHalfFlip>> {
    infinite_halfflip_check_with(spec, f, k, max_period, Reading::Liberal, Budget::default())
}

pub fn infinite_halfflip_check_with(
    spec: &FixedPointSpec,
    f: Option<&UniformMorphism>,
    k: usize,
    max_period: usize,
    reading: Reading,
    budget: Budget,
) -> Result<Option<InfiniteHalfFlip>> {
    let k = k.max(1);
    if max_period < k {
        return Ok(None);
    }
    let material = match f {
        None => Material::fixed_point(spec, 2 * max_period, budget)?,
        Some(f) => Material::image(spec, f, 2 * max_period, 0, budget)?,
    };
    Ok(scan_material(&material, k, max_period, reading))
}

/// Every factor `uv` of length `2p` in the material is the pair of classes
/// (class of `u`, class of `v`) at length `p`; `vu` is a factor iff the
/// reversed pair occurs.
fn scan_material(
    material: &Material,
    k: usize,
    max_period: usize,
    reading: Reading,
) -> Option<InfiniteHalfFlip> {
    let text = material.text();
    let mut classes = material.classes();
    let mut followers: Vec<Vec<u32>> = Vec::new();
    let mut first_pos: HashMap<(u32, u32), usize> = HashMap::new();
    for p in 1..=max_period {
        classes.advance_to(p);
        if p < k {
            continue;
        }
        followers.clear();
        followers.resize(classes.count(), Vec::new());
        first_pos.clear();
        let raw = classes.raw_classes();
        for pos in 0..text.len() {
            if !material.fits(pos, 2 * p) {
                continue;
            }
            let (a, b) = (raw[pos], raw[pos + p]);
            let succ = &mut followers[a as usize];
            if !succ.contains(&b) {
                succ.push(b);
                first_pos.insert((a, b), pos);
            }
        }
        let mut best: Option<&[u8]> = None;
        for (a, succ) in followers.iter().enumerate() {
            let a = a as u32;
            for &b in succ {
                if a == b && reading.distinct_halves() {
                    continue;
                }
                if followers[b as usize].contains(&a) {
                    let pos = first_pos[&(a, b)];
                    let x = &text[pos..pos + 2 * p];
                    if best.is_none_or(|y| x < y) {
                        best = Some(x);
                    }
                }
            }
        }
        if let Some(x) = best {
            return Some(InfiniteHalfFlip {
                period: p,
                uv: Word::from_raw(x.to_vec(), material.alphabet_size()),
            });
        }
    }
    None
}
