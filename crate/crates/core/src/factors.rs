//! Exact factor sets of fixed points and of their morphic images.
//!
//! A factor of length `L` of the fixed point of a `q`-uniform morphism `h`
//! always sits inside `h^j(ab)` for some two-letter factor `ab` once
//! `q^j >= L`. Those words form the *window material*; every factor of the
//! material is a factor of the infinite word and vice versa, so a factor
//! set read off the material is the factor set of the infinite word.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::morphism::{FixedPointSpec, UniformMorphism};
use crate::word::{digits, Word};

pub const DEFAULT_MAX_MATERIAL: u64 = 100_000_000;

/// Ceiling on the number of letters of window material built for one query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_material: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_material: DEFAULT_MAX_MATERIAL,
        }
    }
}

/// The set of length-`length` factors of some word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSet {
    length: usize,
    alphabet_size: usize,
    factors: BTreeSet<Vec<u8>>,
    exact: bool,
}

impl FactorSet {
    /// Factors of a finite prefix; not known to be complete.
    pub fn sampled(word: &Word, length: usize) -> Self {
        let factors = if length <= word.len() {
            word.letters().windows(length.max(1)).map(|x| x[..length].to_vec()).collect()
        } else {
            BTreeSet::new()
        };
        FactorSet {
            length,
            alphabet_size: word.alphabet_size(),
            factors,
            exact: false,
        }
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Members in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = &[u8]> {
        self.factors.iter().map(Vec::as_slice)
    }

    pub fn words(&self) -> Vec<Word> {
        self.iter()
            .map(|x| Word::from_raw(x.to_vec(), self.alphabet_size))
            .collect()
    }

    pub fn contains(&self, letters: &[u8]) -> bool {
        self.factors.contains(letters)
    }

    pub fn is_subset(&self, other: &FactorSet) -> bool {
        self.length == other.length && self.factors.is_subset(&other.factors)
    }

    /// Same length and the same members, ignoring exactness.
    pub fn same_factors(&self, other: &FactorSet) -> bool {
        self.length == other.length && self.factors == other.factors
    }

    /// Canonical text export: one digit string per line, lexicographic order.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for x in &self.factors {
            out.push_str(&digits(x));
            out.push('\n');
        }
        out
    }
}

/// Residues modulo `modulus` at which each factor occurs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OffsetProfile {
    modulus: usize,
    entries: BTreeMap<Word, BTreeSet<usize>>,
}

impl OffsetProfile {
    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn entries(&self) -> &BTreeMap<Word, BTreeSet<usize>> {
        &self.entries
    }

    pub fn residues(&self, letters: &[u8]) -> Option<&BTreeSet<usize>> {
        self.entries
            .iter()
            .find(|(w, _)| w.letters() == letters)
            .map(|(_, r)| r)
    }

    /// Factors whose occurrences are spread over more than one residue.
    pub fn ambiguous(&self) -> impl Iterator<Item = (&Word, &BTreeSet<usize>)> {
        self.entries.iter().filter(|(_, r)| r.len() > 1)
    }
}

/// Length-2 factors of the fixed point, by closure from the seed's image.
pub fn two_letter_factors(spec: &FixedPointSpec) -> FactorSet {
    let pairs = two_letter_pairs(spec);
    let factors = pairs.into_iter().map(|(a, b)| vec![a, b]).collect();
    FactorSet {
        length: 2,
        alphabet_size: spec.alphabet_size(),
        factors,
        exact: true,
    }
}

pub(crate) fn two_letter_pairs(spec: &FixedPointSpec) -> BTreeSet<(u8, u8)> {
    let h = spec.morphism();
    let mut pairs: BTreeSet<(u8, u8)> = h
        .image(spec.seed())
        .windows(2)
        .map(|p| (p[0], p[1]))
        .collect();
    loop {
        let mut next = pairs.clone();
        for &(a, b) in &pairs {
            let img = h.apply_letters(&[a, b]);
            next.extend(img.windows(2).map(|p| (p[0], p[1])));
        }
        if next.len() == pairs.len() {
            return pairs;
        }
        pairs = next;
    }
}

/// Concatenated windows, every factor of which (inside one window) is a
/// factor of the infinite word, and which jointly contain every factor up
/// to the length they were built for.
#[derive(Debug, Clone)]
pub struct Material {
    text: Vec<u8>,
    /// Position one past the end of the window containing each position.
    window_end: Vec<u32>,
    /// Offset inside the window, modulo `modulus`.
    residue: Vec<u32>,
    modulus: usize,
    alphabet_size: usize,
    windows: usize,
}

fn least_power_at_least(q: usize, target: usize) -> u32 {
    let mut j = 0;
    let mut pow: u128 = 1;
    while pow < target as u128 {
        pow *= q as u128;
        j += 1;
    }
    j
}

impl Material {
    /// Windows `h^j(ab)` covering all factors of length `len` of the fixed point.
    pub fn fixed_point(spec: &FixedPointSpec, len: usize, budget: Budget) -> Result<Self> {
        let q = spec.morphism().q();
        let j = least_power_at_least(q, len.max(1));
        let pairs = two_letter_pairs(spec);
        let requested = pairs.len() as u128 * 2 * (q as u128).pow(j);
        check_budget(requested, budget)?;
        let windows = pairs.iter().map(|&(a, b)| iterate(spec.morphism(), &[a, b], j));
        Ok(Self::from_windows(windows, q, spec.alphabet_size()))
    }

    /// Windows `f(h^j(ab))` covering all factors of length `len` of `f`
    /// applied to the fixed point, with base windows long enough to hold
    /// every base factor of length `ceil(len / f.q) + 1 + extra`.
    pub fn image(
        spec: &FixedPointSpec,
        f: &UniformMorphism,
        len: usize,
        extra: usize,
        budget: Budget,
    ) -> Result<Self> {
        if f.domain_size() != spec.alphabet_size() {
            return Err(Error::DomainMismatch {
                word: spec.alphabet_size(),
                domain: f.domain_size(),
            });
        }
        let h = spec.morphism();
        let t = len.div_ceil(f.q()) + 1 + extra;
        let j = least_power_at_least(h.q(), t);
        let pairs = two_letter_pairs(spec);
        let requested = pairs.len() as u128 * 2 * (h.q() as u128).pow(j) * f.q() as u128;
        check_budget(requested, budget)?;
        let windows = pairs
            .iter()
            .map(|&(a, b)| f.apply_letters(&iterate(h, &[a, b], j)));
        Ok(Self::from_windows(windows, f.q(), f.codomain_size()))
    }

    fn from_windows(
        windows: impl Iterator<Item = Vec<u8>>,
        modulus: usize,
        alphabet_size: usize,
    ) -> Self {
        let mut m = Material {
            text: Vec::new(),
            window_end: Vec::new(),
            residue: Vec::new(),
            modulus,
            alphabet_size,
            windows: 0,
        };
        for w in windows {
            let start = m.text.len();
            let end = (start + w.len()) as u32;
            m.text.extend_from_slice(&w);
            m.window_end.extend(std::iter::repeat_n(end, w.len()));
            m.residue
                .extend((0..w.len()).map(|i| (i % modulus) as u32));
            m.windows += 1;
        }
        m
    }

    pub fn total_letters(&self) -> usize {
        self.text.len()
    }

    pub fn window_count(&self) -> usize {
        self.windows
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn text(&self) -> &[u8] {
        &self.text
    }

    /// Whether a factor of length `len` starts at `pos` inside one window.
    #[inline]
    pub fn fits(&self, pos: usize, len: usize) -> bool {
        pos + len <= self.window_end[pos] as usize
    }

    pub fn residue(&self, pos: usize) -> usize {
        self.residue[pos] as usize
    }

    /// Class refinement starting at length 1.
    pub fn classes(&self) -> FactorClasses<'_> {
        FactorClasses::new(self)
    }

    /// Exact set of length-`len` factors.
    pub fn factor_set(&self, len: usize) -> FactorSet {
        let mut factors = BTreeSet::new();
        if len == 0 {
            factors.insert(Vec::new());
        } else {
            let mut classes = self.classes();
            classes.advance_to(len);
            for pos in classes.representatives() {
                factors.insert(self.text[pos..pos + len].to_vec());
            }
        }
        FactorSet {
            length: len,
            alphabet_size: self.alphabet_size,
            factors,
            exact: true,
        }
    }

    pub fn offset_profile(&self, len: usize) -> OffsetProfile {
        let mut classes = self.classes();
        classes.advance_to(len.max(1));
        let mut by_class: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); classes.count()];
        for pos in 0..self.text.len() {
            if let Some(c) = classes.class_of(pos) {
                by_class[c as usize].insert(self.residue(pos));
            }
        }
        let reps = classes.representatives();
        let entries = reps
            .into_iter()
            .zip(by_class)
            .map(|(pos, residues)| {
                (
                    Word::from_raw(self.text[pos..pos + len].to_vec(), self.alphabet_size),
                    residues,
                )
            })
            .collect();
        OffsetProfile {
            modulus: self.modulus,
            entries,
        }
    }
}

fn check_budget(requested: u128, budget: Budget) -> Result<()> {
    if requested > budget.max_material as u128 {
        return Err(Error::ResourceCap {
            requested,
            cap: budget.max_material,
        });
    }
    Ok(())
}

fn iterate(h: &UniformMorphism, seed: &[u8], times: u32) -> Vec<u8> {
    let mut w = seed.to_vec();
    for _ in 0..times {
        w = h.apply_letters(&w);
    }
    w
}

const NONE: u32 = u32::MAX;

/// Equivalence classes of material positions under "same factor of length `L`".
///
/// Classes at length `L + 1` are pairs (class at `L`, next letter), so two
/// positions share a class exactly when their factors are equal. Positions
/// whose factor would leave the window get no class.
#[derive(Debug, Clone)]
pub struct FactorClasses<'a> {
    material: &'a Material,
    length: usize,
    class: Vec<u32>,
    count: usize,
    /// First position of each class.
    first: Vec<u32>,
}

impl<'a> FactorClasses<'a> {
    fn new(material: &'a Material) -> Self {
        let sigma = material.alphabet_size;
        let mut ids = vec![NONE; sigma];
        let mut first = Vec::new();
        let class = material
            .text
            .iter()
            .enumerate()
            .map(|(pos, &a)| {
                let slot = &mut ids[a as usize];
                if *slot == NONE {
                    *slot = first.len() as u32;
                    first.push(pos as u32);
                }
                *slot
            })
            .collect();
        FactorClasses {
            material,
            length: 1,
            count: first.len(),
            class,
            first,
        }
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// Number of distinct factors at the current length.
    pub fn count(&self) -> usize {
        self.count
    }

    #[inline]
    pub fn class_of(&self, pos: usize) -> Option<u32> {
        match self.class[pos] {
            NONE => None,
            c => Some(c),
        }
    }

    pub fn raw_classes(&self) -> &[u32] {
        &self.class
    }

    /// One position per class, indexed by class id.
    pub fn representatives(&self) -> Vec<usize> {
        self.first.iter().map(|&p| p as usize).collect()
    }

    pub fn advance(&mut self) {
        let sigma = self.material.alphabet_size;
        let text = &self.material.text;
        let len = self.length;
        let mut table = vec![NONE; self.count * sigma];
        let mut first = Vec::with_capacity(self.count + self.count / 2);
        for pos in 0..self.class.len() {
            let c = self.class[pos];
            if c == NONE {
                continue;
            }
            if !self.material.fits(pos, len + 1) {
                self.class[pos] = NONE;
                continue;
            }
            let slot = &mut table[c as usize * sigma + text[pos + len] as usize];
            if *slot == NONE {
                *slot = first.len() as u32;
                first.push(pos as u32);
            }
            self.class[pos] = *slot;
        }
        self.count = first.len();
        self.first = first;
        self.length += 1;
    }

    pub fn advance_to(&mut self, len: usize) {
        assert!(len >= self.length, "cannot shrink factor length");
        while self.length < len {
            self.advance();
        }
    }
}

/// Exact length-`len` factors of the fixed point of `spec`.
pub fn factor_set_exact(spec: &FixedPointSpec, len: usize) -> Result<FactorSet> {
    factor_set_exact_with(spec, len, Budget::default())
}

pub fn factor_set_exact_with(spec: &FixedPointSpec, len: usize, budget: Budget) -> Result<FactorSet> {
    if len == 0 {
        return Err(Error::InvalidArgument("factor length must be positive".into()));
    }
    Ok(Material::fixed_point(spec, len, budget)?.factor_set(len))
}

/// Exact length-`len` factors of `f` applied to the fixed point of `spec`.
pub fn image_factor_set(spec: &FixedPointSpec, f: &UniformMorphism, len: usize) -> Result<FactorSet> {
    image_factor_set_with(spec, f, len, Budget::default())
}

pub fn image_factor_set_with(
    spec: &FixedPointSpec,
    f: &UniformMorphism,
    len: usize,
    budget: Budget,
) -> Result<FactorSet> {
    if len == 0 {
        return Err(Error::InvalidArgument("factor length must be positive".into()));
    }
    Ok(Material::image(spec, f, len, 0, budget)?.factor_set(len))
}

/// Occurrence residues modulo `f.q` (or the base morphism's `q` when `f`
/// is absent) of every length-`len` factor of the image word, where
/// residue 0 is an image boundary.
pub fn offset_profile(
    spec: &FixedPointSpec,
    f: Option<&UniformMorphism>,
    len: usize,
) -> Result<OffsetProfile> {
    offset_profile_with(spec, f, len, 0, Budget::default())
}

/// As [`offset_profile`], with `extra` additional base letters per window.
pub fn offset_profile_with(
    spec: &FixedPointSpec,
    f: Option<&UniformMorphism>,
    len: usize,
    extra: usize,
    budget: Budget,
) -> Result<OffsetProfile> {
    if len == 0 {
        return Err(Error::InvalidArgument("factor length must be positive".into()));
    }
    let f = f.unwrap_or(spec.morphism());
    Ok(Material::image(spec, f, len, extra, budget)?.offset_profile(len))
}

/// Literal per-window construction: union over `w` in `base` of the
/// length-`len` factors of `f(w)`. Slow; kept for cross-checking.
pub fn image_factors_of(base: &FactorSet, f: &UniformMorphism, len: usize) -> FactorSet {
    let mut factors = BTreeSet::new();
    for w in base.iter() {
        let img = f.apply_letters(w);
        if img.len() >= len {
            for i in 0..=img.len() - len {
                factors.insert(img[i..i + len].to_vec());
            }
        }
    }
    FactorSet {
        length: len,
        alphabet_size: f.codomain_size(),
        factors,
        exact: base.is_exact(),
    }
}

impl std::fmt::Display for FactorSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} factors of length {} ({})",
            self.len(),
            self.length,
            if self.exact { "exact" } else { "sampled" }
        )
    }
}

/// Canonical text for an offset profile: `factor residue,residue,...` per line.
pub fn profile_lines(profile: &OffsetProfile) -> String {
    let mut out = String::new();
    for (w, r) in profile.entries() {
        let rs: Vec<String> = r.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("{} {}\n", digits(w.letters()), rs.join(",")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{f2, f3, m_spec, C};
    use crate::morphism::fixed_point_prefix;

    fn pairs_of(set: &FactorSet) -> Vec<(u8, u8)> {
        set.iter().map(|w| (w[0], w[1])).collect()
    }

    #[test]
    fn two_letter_successor_shape() {
        let set = two_letter_factors(&m_spec());
        assert!(set.is_exact());
        for (a, b) in pairs_of(&set) {
            let d = (b + 5 - a) % 5;
            assert!(d == 1 || d == 2, "{a}{b}");
        }
        assert!(set.contains(&[0, 2]));
    }

    #[test]
    fn two_letter_matches_prefix_scan() {
        let spec = m_spec();
        let prefix = fixed_point_prefix(&spec, 100_000);
        let sampled = FactorSet::sampled(&prefix, 2);
        assert!(sampled.same_factors(&two_letter_factors(&spec)));
        // all ten pairs a(a+1), a(a+2)
        assert_eq!(sampled.len(), 10);
    }

    #[test]
    fn length_two_window_rule() {
        let spec = m_spec();
        let exact = factor_set_exact(&spec, 2).unwrap();
        assert!(exact.same_factors(&two_letter_factors(&spec)));
    }

    #[test]
    fn class_refinement_agrees_with_naive_sets() {
        let spec = m_spec();
        let prefix = fixed_point_prefix(&spec, 20_000);
        let material = Material::fixed_point(&spec, 120, Budget::default()).unwrap();
        let mut classes = material.classes();
        for len in 1..=120 {
            classes.advance_to(len);
            let mut naive = BTreeSet::new();
            for pos in 0..material.total_letters() {
                if material.fits(pos, len) {
                    naive.insert(&material.text()[pos..pos + len]);
                }
            }
            assert_eq!(classes.count(), naive.len(), "length {len}");
        }
        let sampled = FactorSet::sampled(&prefix, 120);
        assert!(sampled.is_subset(&material.factor_set(120)));
    }

    #[test]
    fn f3_image_contains_image_of_zero() {
        let set = image_factor_set(&m_spec(), &f3(), 7).unwrap();
        assert!(set.contains(&[0, 0, 0, 1, 0, 2, 2]));
    }

    #[test]
    fn f2_letters_are_binary() {
        let set = image_factor_set(&m_spec(), &f2(), 1).unwrap();
        assert!(set.iter().all(|w| w[0] < 2));
    }

    #[test]
    fn f3_length_eight_matches_literal_route_and_sample() {
        let spec = m_spec();
        let fast = image_factor_set(&spec, &f3(), 8).unwrap();
        let base = factor_set_exact(&spec, 8usize.div_ceil(7) + 1).unwrap();
        assert!(fast.same_factors(&image_factors_of(&base, &f3(), 8)));
        let img = f3().apply(&fixed_point_prefix(&spec, 100_000)).unwrap();
        assert!(fast.same_factors(&FactorSet::sampled(&img, 8)));
    }

    #[test]
    fn offset_profiles() {
        let spec = m_spec();
        let p = offset_profile(&spec, Some(&f3()), 5).unwrap();
        assert_eq!(p.modulus(), 7);
        assert_eq!(p.ambiguous().count(), 0);

        let p = offset_profile(&spec, Some(&f3()), 2).unwrap();
        assert_eq!(p.residues(&[2, 0]).unwrap(), &BTreeSet::from([6]));

        let c: Vec<u8> = C.bytes().map(|b| b - b'0').collect();
        let p = offset_profile(&spec, None, 48).unwrap();
        assert_eq!(p.modulus(), 95);
        assert_eq!(p.residues(&c).unwrap(), &BTreeSet::from([0]));
    }

    fn naive_ambiguous(img: &[u8], len: usize, q: usize) -> BTreeMap<Vec<u8>, BTreeSet<usize>> {
        let mut seen: BTreeMap<Vec<u8>, BTreeSet<usize>> = BTreeMap::new();
        for (i, x) in img.windows(len).enumerate() {
            seen.entry(x.to_vec()).or_default().insert(i % q);
        }
        seen.retain(|_, r| r.len() > 1);
        seen
    }

    // f2 images only synchronize from length 9 on; at length 6 five factors
    // occur at two residues each (e.g. 001001 inside f2(2) and across f2(1)f2(2)).
    #[test]
    fn f2_offset_classes_by_length() {
        let spec = m_spec();
        let img = f2().apply_letters(&spec.prefix_letters(50_000));
        for (len, expected) in [(6, 5), (7, 3), (8, 1), (9, 0), (10, 0)] {
            let p = offset_profile(&spec, Some(&f2()), len).unwrap();
            let naive = naive_ambiguous(&img, len, 7);
            assert_eq!(p.ambiguous().count(), expected, "length {len}");
            let exact: BTreeMap<Vec<u8>, BTreeSet<usize>> = p
                .ambiguous()
                .map(|(w, r)| (w.letters().to_vec(), r.clone()))
                .collect();
            assert_eq!(exact, naive, "length {len}");
        }
        let p = offset_profile(&spec, Some(&f2()), 6).unwrap();
        assert_eq!(p.residues(&[0, 0, 1, 0, 0, 1]).unwrap(), &BTreeSet::from([0, 4]));
    }

    #[test]
    fn budget_is_enforced() {
        let tiny = Budget { max_material: 1000 };
        assert!(matches!(
            factor_set_exact_with(&m_spec(), 1000, tiny),
            Err(Error::ResourceCap { .. })
        ));
    }

    #[test]
    fn export_is_sorted() {
        let set = two_letter_factors(&m_spec());
        let text = set.to_lines();
        let lines: Vec<&str> = text.lines().collect();
        let mut sorted = lines.clone();
        sorted.sort();
        assert_eq!(lines, sorted);
        assert_eq!(lines.len(), set.len());
    }
}
