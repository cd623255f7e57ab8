use halfflip_core::builtin::{f2, f3, m, m_spec};
use halfflip_core::detect::{
    find_half_flip_brute_in, find_half_flip_fast_in, infinite_halfflip_check, Reading,
};
use halfflip_core::factors::{factor_set_exact, offset_profile, offset_profile_with, Budget};
use halfflip_core::search::extension_safe_in;
use halfflip_core::{
    apply_morphism, find_half_flip_brute, find_half_flip_fast, fixed_point_prefix, swap_halves,
    FactorSet, Word,
};
use proptest::prelude::*;

fn word(alphabet: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..alphabet as u8, 0..=max_len)
        .prop_map(move |v| Word::new(v, alphabet).unwrap())
}

fn any_word(max_len: usize) -> impl Strategy<Value = Word> {
    (2usize..=5).prop_flat_map(move |s| word(s, max_len))
}

fn reading() -> impl Strategy<Value = Reading> {
    prop_oneof![Just(Reading::Liberal), Just(Reading::DistinctHalves)]
}

proptest! {
    #[test]
    fn morphism_is_a_homomorphism(x in word(5, 12), y in word(5, 12)) {
        for f in [m(), f3(), f2()] {
            let whole = apply_morphism(&f, &x.concat(&y)).unwrap();
            let parts = apply_morphism(&f, &x).unwrap().concat(&apply_morphism(&f, &y).unwrap());
            prop_assert_eq!(whole.letters(), parts.letters());
            prop_assert_eq!(whole.len(), f.q() * (x.len() + y.len()));
        }
    }

    #[test]
    fn fixed_point_identity(n in 0usize..120) {
        let spec = m_spec();
        let short = fixed_point_prefix(&spec, n);
        let long = fixed_point_prefix(&spec, 95 * n);
        prop_assert_eq!(apply_morphism(&m(), &short).unwrap(), long.clone());
        prop_assert_eq!(&long.letters()[..n], short.letters());
    }

    #[test]
    fn swap_is_an_involution(x in any_word(20)) {
        prop_assume!(!x.is_empty() && x.len() % 2 == 0);
        let once = swap_halves(&x).unwrap();
        prop_assert_eq!(swap_halves(&once).unwrap(), x);
    }

    #[test]
    fn fast_detector_matches_brute(w in any_word(60), k in 1usize..6, extra in 0usize..30, r in reading()) {
        let max_p = k + extra;
        prop_assert_eq!(
            find_half_flip_fast_in(&w, k, max_p, r),
            find_half_flip_brute_in(&w, k, max_p, r)
        );
    }

    #[test]
    fn witnesses_hold_and_respect_bounds(w in any_word(40), k in 1usize..4, r in reading()) {
        if let Some(hit) = find_half_flip_brute_in(&w, k, 40, r) {
            prop_assert!(hit.holds_in(w.letters()));
            prop_assert!(hit.period >= k);
            if r == Reading::DistinctHalves {
                prop_assert_ne!(hit.u(), hit.v());
            }
        }
    }

    #[test]
    fn raising_k_only_removes_half_flips(w in any_word(40), k in 1usize..6) {
        if find_half_flip_brute(&w, k, 40).is_none() {
            prop_assert!(find_half_flip_brute(&w, k + 1, 40).is_none());
        }
    }

    #[test]
    fn squares_are_found(u in any_word(8), pad in any_word(10), k in 1usize..4) {
        prop_assume!(u.len() >= k);
        let host = pad.concat(&u).concat(&u);
        let hit = find_half_flip_fast(&host, k, u.len()).expect("square uu is a half-flip");
        prop_assert!(hit.period <= u.len());
    }

    #[test]
    fn incremental_extension_matches_scratch(w in any_word(30), k in 1usize..4, r in reading()) {
        // grow the longest clean prefix, then test every letter against a full rescan
        let s = w.alphabet_size();
        let mut clean = Vec::new();
        for &a in w.letters() {
            clean.push(a);
            let cand = Word::new(clean.clone(), s).unwrap();
            if find_half_flip_brute_in(&cand, k, cand.len(), r).is_some() {
                clean.pop();
                break;
            }
        }
        let base = Word::new(clean.clone(), s).unwrap();
        for a in 0..s as u8 {
            let mut ext = clean.clone();
            ext.push(a);
            let ext = Word::new(ext, s).unwrap();
            prop_assert_eq!(
                extension_safe_in(&base, a, k, r),
                find_half_flip_brute_in(&ext, k, ext.len(), r).is_none()
            );
        }
    }
}

#[test]
fn prefix_factors_lie_in_exact_sets() {
    let spec = m_spec();
    let prefix = fixed_point_prefix(&spec, 100_000);
    for len in [1, 3, 17, 95, 96, 300] {
        let exact = factor_set_exact(&spec, len).unwrap();
        for n in [10, 1000, 100_000] {
            let sampled = FactorSet::sampled(&prefix.slice(0, n), len);
            assert!(sampled.is_subset(&exact), "len {len}, n {n}");
        }
    }
}

#[test]
fn exact_sets_are_factor_closed() {
    let spec = m_spec();
    let mut shorter = factor_set_exact(&spec, 1).unwrap();
    for len in 2..=120 {
        let set = factor_set_exact(&spec, len).unwrap();
        for x in set.iter() {
            assert!(shorter.contains(&x[1..]) && shorter.contains(&x[..len - 1]));
        }
        shorter = set;
    }
}

#[test]
fn offset_profiles_stable_under_longer_windows() {
    let spec = m_spec();
    for (f, len) in [(Some(f3()), 2), (Some(f3()), 8), (Some(f2()), 6), (None, 48), (None, 130)] {
        let base = offset_profile(&spec, f.as_ref(), len).unwrap();
        let wider = offset_profile_with(&spec, f.as_ref(), len, 1, Budget::default()).unwrap();
        assert_eq!(base, wider, "length {len}");
    }
}

#[test]
fn infinite_check_consistent_with_prefixes() {
    let spec = m_spec();
    let prefix = fixed_point_prefix(&spec, 3000);
    for (f, k) in [(Some(f3()), 2), (Some(f2()), 4)] {
        let f = f.unwrap();
        assert_eq!(infinite_halfflip_check(&spec, Some(&f), k, 60).unwrap(), None);
        let img = apply_morphism(&f, &prefix).unwrap();
        assert_eq!(find_half_flip_fast(&img, k, 60), None);
    }
    // the exact check and a long prefix agree on the least f3 period with k = 1
    let exact = infinite_halfflip_check(&spec, Some(&f3()), 1, 5).unwrap().unwrap();
    let img = apply_morphism(&f3(), &prefix).unwrap();
    assert_eq!(find_half_flip_fast(&img, 1, 5).unwrap().period, exact.period);
}
