use halfflip_core::detect::{find_half_flip_brute, find_half_flip_fast, Reading};
use halfflip_core::search::{backtrack_longest, SearchConfig, SearchLimits, Symmetry};
use halfflip_core::Word;

/// Level-by-level enumeration of clean words starting with 0, each
/// candidate rechecked from scratch. Returns the longest length and the
/// lexicographically least word of that length.
fn reenumerate(s: usize, k: usize, fast: bool) -> (usize, Vec<u8>) {
    let clean = |w: &[u8]| {
        let w = Word::new(w.to_vec(), s).unwrap();
        if fast {
            find_half_flip_fast(&w, k, w.len()).is_none()
        } else {
            find_half_flip_brute(&w, k, w.len()).is_none()
        }
    };
    let mut level = vec![vec![0u8]];
    loop {
        let mut next = Vec::new();
        for w in &level {
            for a in 0..s as u8 {
                let mut x = w.clone();
                x.push(a);
                if clean(&x) {
                    next.push(x);
                }
            }
        }
        if next.is_empty() {
            let best = level.iter().min().unwrap().clone();
            return (best.len(), best);
        }
        level = next;
    }
}

#[test]
fn small_instances_match_reenumeration() {
    for (s, k, expected) in [(1, 1, 1), (2, 1, 2), (3, 1, 5), (4, 1, 9), (2, 2, 8)] {
        let r = backtrack_longest(&SearchConfig::new(s, k));
        assert!(r.exhaustive);
        assert_eq!(r.max_length, expected, "({s},{k})");
        let (len, word) = reenumerate(s, k, false);
        assert_eq!(r.max_length, len);
        assert_eq!(r.extremal_word.letters(), word.as_slice());
    }
}

#[test]
fn binary_period_three_matches_reenumeration() {
    let r = backtrack_longest(&SearchConfig::new(2, 3));
    assert!(r.exhaustive);
    assert_eq!(r.max_length, 64);
    let (len, word) = reenumerate(2, 3, true);
    assert_eq!(len, 64);
    assert_eq!(r.extremal_word.letters(), word.as_slice());
    assert!(find_half_flip_brute(&r.extremal_word, 3, 32).is_none());
}

#[test]
fn full_canonicalization_agrees() {
    for (s, k) in [(3, 1), (4, 1), (2, 2), (2, 3)] {
        let plain = backtrack_longest(&SearchConfig::new(s, k));
        let mut cfg = SearchConfig::new(s, k);
        cfg.symmetry = Symmetry::Full;
        let canon = backtrack_longest(&cfg);
        assert_eq!(plain.max_length, canon.max_length);
        assert_eq!(plain.extremal_word, canon.extremal_word);
        assert!(canon.nodes_explored <= plain.nodes_explored);
    }
}

#[test]
fn maxima_are_monotone() {
    let len = |s, k| backtrack_longest(&SearchConfig::new(s, k)).max_length;
    let by_s: Vec<usize> = (1..=4).map(|s| len(s, 1)).collect();
    assert!(by_s.windows(2).all(|w| w[0] <= w[1]), "{by_s:?}");
    let by_k: Vec<usize> = (1..=3).map(|k| len(2, k)).collect();
    assert!(by_k.windows(2).all(|w| w[0] <= w[1]), "{by_k:?}");
}

#[test]
fn distinct_halves_never_shorter() {
    for (s, k) in [(1, 1), (2, 1), (4, 1), (2, 3)] {
        let lib = backtrack_longest(&SearchConfig::new(s, k));
        let mut cfg = SearchConfig::new(s, k);
        cfg.reading = Reading::DistinctHalves;
        cfg.limits = SearchLimits {
            max_nodes: 1_000_000,
            max_length: 200,
        };
        let strict = backtrack_longest(&cfg);
        assert!(strict.max_length >= lib.max_length);
        // constant words have no u != v flips, so the strict language never ends
        assert!(!strict.exhaustive);
        assert!(strict.distinct_halves);
    }
}

#[test]
fn deterministic_node_counts() {
    let a = backtrack_longest(&SearchConfig::new(4, 1));
    let b = backtrack_longest(&SearchConfig::new(4, 1));
    assert_eq!(a, b);
    assert_eq!(a.nodes_explored, 148);
    assert_eq!(a.extremal_word.to_string(), "012032013");
}
