//! Exhaustive depth-first search for long words without k-half-flips.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::detect::Reading;
use crate::hash::{HashKey, PrefixHashes};
use crate::word::Word;

pub const DEFAULT_MAX_NODES: u64 = 1_000_000_000;
pub const DEFAULT_MAX_LENGTH: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchLimits {
    pub max_nodes: u64,
    pub max_length: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_nodes: DEFAULT_MAX_NODES,
            max_length: DEFAULT_MAX_LENGTH,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Symmetry {
    /// Only words starting with letter 0.
    #[default]
    FirstLetter,
    /// Letters first appear in increasing order.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub alphabet_size: usize,
    pub min_period: usize,
    pub reading: Reading,
    pub symmetry: Symmetry,
    pub limits: SearchLimits,
}

impl SearchConfig {
    pub fn new(alphabet_size: usize, min_period: usize) -> Self {
        SearchConfig {
            alphabet_size,
            min_period,
            reading: Reading::Liberal,
            symmetry: Symmetry::FirstLetter,
            limits: SearchLimits::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CapHit {
    Nodes,
    Length,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    #[serde(rename = "s")]
    pub alphabet_size: usize,
    #[serde(rename = "k")]
    pub min_period: usize,
    pub distinct_halves: bool,
    pub max_length: usize,
    pub extremal_word: Word,
    pub nodes_explored: u64,
    pub exhaustive: bool,
    pub caps: SearchLimits,
    pub cap_hit: Option<CapHit>,
}

/// Occurrences of one factor hash: the earliest position and a count.
/// Distinct contents sharing a hash go to `overflow`.
#[derive(Debug, Clone, Copy)]
struct Slot {
    pos: u32,
    count: u32,
}

/// A word kept free of half-flips with period at least `k`, with every
/// factor of length `2p` (`p >= k`) indexed for constant-time swap lookups.
#[derive(Debug, Clone)]
pub struct FlipFreeWord {
    letters: Vec<u8>,
    hashes: PrefixHashes,
    min_period: usize,
    reading: Reading,
    /// `index[p - min_period]` holds the factors of length `2p`.
    index: Vec<HashMap<HashKey, Slot>>,
    overflow: HashMap<(usize, HashKey), Vec<u32>>,
}

impl FlipFreeWord {
    pub fn new(min_period: usize, reading: Reading) -> Self {
        FlipFreeWord {
            letters: Vec::new(),
            hashes: PrefixHashes::new(&[]),
            min_period: min_period.max(1),
            reading,
            index: Vec::new(),
            overflow: HashMap::new(),
        }
    }

    /// Builds from an existing word, which must itself be free of the
    /// forbidden half-flips; returns `None` otherwise.
    pub fn from_letters(letters: &[u8], min_period: usize, reading: Reading) -> Option<Self> {
        let mut w = Self::new(min_period, reading);
        for &a in letters {
            if !w.try_push(a) {
                return None;
            }
        }
        Some(w)
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    #[inline]
    fn same(&self, a: usize, b: usize, len: usize) -> bool {
        self.letters[a..a + len] == self.letters[b..b + len]
    }

    /// Does the factor of length `2p` at `start` equal the swap of the one at `pos`?
    #[inline]
    fn is_swap_at(&self, pos: usize, start: usize, p: usize) -> bool {
        self.same(pos, start + p, p) && self.same(pos + p, start, p)
    }

    /// Whether appending `a` keeps the word free of forbidden half-flips.
    /// Only the suffixes of the extended word are new factors, so it
    /// suffices to look up the swap of each even-length suffix.
    pub fn extension_safe(&mut self, a: u8) -> bool {
        self.letters.push(a);
        self.hashes.push(a);
        let ok = self.new_suffixes_clean();
        self.hashes.pop();
        self.letters.pop();
        ok
    }

    fn new_suffixes_clean(&self) -> bool {
        let n = self.letters.len();
        for p in self.min_period..=n / 2 {
            let start = n - 2 * p;
            let hu = self.hashes.get(start, p);
            let hv = self.hashes.get(start + p, p);
            if hu == hv && self.same(start, start + p, p) {
                if self.reading == Reading::Liberal {
                    return false;
                }
                // a square is not a flip under the distinct-halves reading
                continue;
            }
            let key = self.hashes.concat(hv, hu, p);
            if let Some(map) = self.index.get(p - self.min_period) {
                if let Some(slot) = map.get(&key) {
                    if self.is_swap_at(slot.pos as usize, start, p) {
                        return false;
                    }
                    if let Some(extra) = self.overflow.get(&(p, key)) {
                        if extra.iter().any(|&j| self.is_swap_at(j as usize, start, p)) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Appends `a` if that keeps the word clean.
    pub fn try_push(&mut self, a: u8) -> bool {
        self.letters.push(a);
        self.hashes.push(a);
        if !self.new_suffixes_clean() {
            self.hashes.pop();
            self.letters.pop();
            return false;
        }
        let n = self.letters.len();
        for p in self.min_period..=n / 2 {
            let slot_idx = p - self.min_period;
            if self.index.len() <= slot_idx {
                self.index.push(HashMap::new());
            }
            let start = n - 2 * p;
            let key = self.hashes.get(start, 2 * p);
            match self.index[slot_idx].get_mut(&key) {
                None => {
                    self.index[slot_idx].insert(
                        key,
                        Slot {
                            pos: start as u32,
                            count: 1,
                        },
                    );
                }
                Some(slot) => {
                    let first = slot.pos as usize;
                    if self.letters[first..first + 2 * p] == self.letters[start..start + 2 * p] {
                        slot.count += 1;
                    } else {
                        self.overflow
                            .entry((p, key))
                            .or_default()
                            .push(start as u32);
                    }
                }
            }
        }
        true
    }

    pub fn pop(&mut self) -> Option<u8> {
        let n = self.letters.len();
        if n == 0 {
            return None;
        }
        for p in self.min_period..=n / 2 {
            let slot_idx = p - self.min_period;
            let start = n - 2 * p;
            let key = self.hashes.get(start, 2 * p);
            let map = &mut self.index[slot_idx];
            let slot = map.get_mut(&key).expect("indexed suffix");
            let first = slot.pos as usize;
            if self.letters[first..first + 2 * p] == self.letters[start..start + 2 * p] {
                slot.count -= 1;
                if slot.count == 0 {
                    map.remove(&key);
                }
            } else {
                let extra = self.overflow.get_mut(&(p, key)).expect("overflow entry");
                let at = extra.iter().rposition(|&j| j as usize == start).expect("position");
                extra.remove(at);
                if extra.is_empty() {
                    self.overflow.remove(&(p, key));
                }
            }
        }
        self.hashes.pop();
        self.letters.pop()
    }
}

/// Whether `w·a` has no half-flip with period at least `k`, given that `w` has none.
pub fn extension_safe(w: &Word, a: u8, k: usize) -> bool {
    extension_safe_in(w, a, k, Reading::Liberal)
}

pub fn extension_safe_in(w: &Word, a: u8, k: usize, reading: Reading) -> bool {
    let mut word = FlipFreeWord::from_letters(w.letters(), k, reading)
        .expect("extension_safe needs a word that is itself clean");
    word.extension_safe(a)
}

/// Depth-first search over words on `{0..s-1}` in lexicographic order.
/// The reported word is the lexicographically least among the longest.
pub fn backtrack_longest(config: &SearchConfig) -> SearchResult {
    let s = config.alphabet_size;
    let limits = config.limits;
    assert!((1..=256).contains(&s), "alphabet size out of range");
    let mut word = FlipFreeWord::new(config.min_period, config.reading);
    let mut best: Vec<u8> = Vec::new();
    let mut nodes: u64 = 0;
    let mut cap_hit = None;

    // next[d]: next letter to try after the first d+1 letters
    let mut next: Vec<u8> = Vec::new();
    // highest letter used in the first d+1 letters
    let mut highest: Vec<u8> = Vec::new();

    if limits.max_length > 0 && limits.max_nodes > 0 {
        word.try_push(0);
        nodes = 1;
        best = word.letters().to_vec();
        next.push(0);
        highest.push(0);
    } else {
        cap_hit = Some(if limits.max_nodes == 0 {
            CapHit::Nodes
        } else {
            CapHit::Length
        });
    }

    while let Some(&from) = next.last() {
        if word.len() >= limits.max_length {
            cap_hit = Some(CapHit::Length);
            break;
        }
        let top = *highest.last().unwrap();
        let bound = match config.symmetry {
            Symmetry::FirstLetter => s,
            Symmetry::Full => s.min(top as usize + 2),
        };
        let mut pushed = None;
        for a in from as usize..bound {
            if nodes >= limits.max_nodes {
                cap_hit = Some(CapHit::Nodes);
                break;
            }
            if word.try_push(a as u8) {
                pushed = Some(a as u8);
                break;
            }
        }
        if cap_hit.is_some() {
            break;
        }
        match pushed {
            Some(a) => {
                nodes += 1;
                *next.last_mut().unwrap() = a + 1;
                next.push(0);
                highest.push(top.max(a));
                if word.len() > best.len() {
                    best = word.letters().to_vec();
                }
            }
            None => {
                next.pop();
                highest.pop();
                word.pop();
            }
        }
    }

    SearchResult {
        alphabet_size: s,
        min_period: config.min_period,
        distinct_halves: config.reading.distinct_halves(),
        max_length: best.len(),
        extremal_word: Word::new(best, s).expect("letters below s"),
        nodes_explored: nodes,
        exhaustive: cap_hit.is_none(),
        caps: limits,
        cap_hit,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::from_digits_infer(s, 2).unwrap()
    }

    #[test]
    fn extension_examples() {
        assert!(!extension_safe(&w("01"), 0, 1));
        assert!(!extension_safe(&w("01"), 1, 1));
        assert!(extension_safe(&w("01"), 2, 1));
        // 0100: period 1 flip 01/10, square 00
        assert!(extension_safe(&w("010"), 0, 2));
    }

    #[test]
    fn push_pop_restores_index() {
        let mut word = FlipFreeWord::new(1, Reading::Liberal);
        for a in [0, 1, 3, 0, 2] {
            assert!(word.try_push(a));
        }
        let before = word.clone();
        assert!(word.try_push(4));
        word.pop();
        assert_eq!(word.letters(), before.letters());
        for (a, b) in word.index.iter().zip(&before.index) {
            assert_eq!(a.len(), b.len());
        }
    }

    #[test]
    fn tiny_alphabets() {
        let r = backtrack_longest(&SearchConfig::new(1, 1));
        assert_eq!((r.max_length, r.exhaustive), (1, true));
        let r = backtrack_longest(&SearchConfig::new(2, 1));
        assert_eq!((r.max_length, r.exhaustive), (2, true));
        assert_eq!(r.extremal_word.to_string(), "01");
    }

    #[test]
    fn node_cap_reported() {
        let mut cfg = SearchConfig::new(3, 1);
        cfg.limits.max_nodes = 5;
        let r = backtrack_longest(&cfg);
        assert!(!r.exhaustive);
        assert_eq!(r.cap_hit, Some(CapHit::Nodes));
        assert_eq!(r.nodes_explored, 5);
    }
}
