//! Double polynomial rolling hash modulo the Mersenne prime 2^61 - 1.
//!
//! Hashes only pre-filter: every caller confirms a hit by comparing letters.

const MOD: u64 = (1 << 61) - 1;
const BASE1: u64 = 0x1f3d_5b79_a2c4_e681 % MOD;
const BASE2: u64 = 0x0a5a_5a5a_3c3c_c3c3 % MOD;

#[inline]
fn mul(a: u64, b: u64) -> u64 {
    let p = a as u128 * b as u128;
    let lo = (p as u64) & MOD;
    let hi = (p >> 61) as u64;
    let s = lo + hi;
    if s >= MOD {
        s - MOD
    } else {
        s
    }
}

#[inline]
fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= MOD {
        s - MOD
    } else {
        s
    }
}

#[inline]
fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + MOD - b
    }
}

/// Pair of hashes; two different bases over the same modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HashKey(u64, u64);

/// Prefix hashes of a growable word, supporting O(1) factor hashes.
#[derive(Debug, Clone, Default)]
pub struct PrefixHashes {
    h1: Vec<u64>,
    h2: Vec<u64>,
    p1: Vec<u64>,
    p2: Vec<u64>,
}

impl PrefixHashes {
    pub fn new(letters: &[u8]) -> Self {
        let mut ph = PrefixHashes {
            h1: Vec::with_capacity(letters.len() + 1),
            h2: Vec::with_capacity(letters.len() + 1),
            p1: Vec::with_capacity(letters.len() + 1),
            p2: Vec::with_capacity(letters.len() + 1),
        };
        ph.h1.push(0);
        ph.h2.push(0);
        ph.p1.push(1);
        ph.p2.push(1);
        for &a in letters {
            ph.push(a);
        }
        ph
    }

    /// Number of letters hashed so far.
    pub fn len(&self) -> usize {
        self.h1.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn push(&mut self, letter: u8) {
        let x = letter as u64 + 1;
        let n = self.h1.len() - 1;
        self.h1.push(add(mul(self.h1[n], BASE1), x));
        self.h2.push(add(mul(self.h2[n], BASE2), x));
        if self.p1.len() <= n + 1 {
            self.p1.push(mul(self.p1[n], BASE1));
            self.p2.push(mul(self.p2[n], BASE2));
        }
    }

    pub fn pop(&mut self) {
        assert!(self.h1.len() > 1, "pop on empty hash");
        self.h1.pop();
        self.h2.pop();
    }

    /// Hash of the factor `[start, start + len)`.
    #[inline]
    pub fn get(&self, start: usize, len: usize) -> HashKey {
        let end = start + len;
        HashKey(
            sub(self.h1[end], mul(self.h1[start], self.p1[len])),
            sub(self.h2[end], mul(self.h2[start], self.p2[len])),
        )
    }

    /// Hash of the concatenation `x y` where `|y| = len_right`.
    #[inline]
    pub fn concat(&self, left: HashKey, right: HashKey, len_right: usize) -> HashKey {
        HashKey(
            add(mul(left.0, self.p1[len_right]), right.0),
            add(mul(left.1, self.p2[len_right]), right.1),
        )
    }

    /// Hash of `w[start+p .. start+2p] w[start .. start+p]`, the half-swap of a length-2p factor.
    #[inline]
    pub fn swapped(&self, start: usize, p: usize) -> HashKey {
        let u = self.get(start, p);
        let v = self.get(start + p, p);
        self.concat(v, u, p)
    }
}

/// Hash of a standalone word, consistent with [`PrefixHashes::get`].
pub fn hash_of(letters: &[u8]) -> HashKey {
    let ph = PrefixHashes::new(letters);
    ph.get(0, letters.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_hash_matches_standalone() {
        let w = [0u8, 2, 4, 1, 3, 0, 1, 2, 4, 0, 2, 3];
        let ph = PrefixHashes::new(&w);
        for s in 0..w.len() {
            for l in 0..=w.len() - s {
                assert_eq!(ph.get(s, l), hash_of(&w[s..s + l]));
            }
        }
    }

    #[test]
    fn swapped_hash() {
        let w = [0u8, 1, 1, 2, 2, 0, 1];
        let ph = PrefixHashes::new(&w);
        assert_eq!(ph.swapped(1, 2), hash_of(&[2, 2, 1, 1]));
    }

    #[test]
    fn push_pop_consistent() {
        let mut ph = PrefixHashes::new(&[1, 2, 3]);
        ph.push(4);
        ph.pop();
        ph.push(0);
        assert_eq!(ph.get(0, 4), hash_of(&[1, 2, 3, 0]));
    }
}
