use std::collections::BTreeSet;

use serde_json::json;

use super::table::{DistinctnessTable, Side};
use super::CheckOutcome;
use crate::error::{Error, Result};
use crate::factors::{image_factor_set, offset_profile, two_letter_pairs};
use crate::morphism::{FixedPointSpec, UniformMorphism};
use crate::word::digits;

/// `x` and `y` differ by one modulo `modulus`.
pub fn consecutive(x: u8, y: u8, modulus: usize) -> bool {
    let d = (y as usize + modulus - x as usize % modulus) % modulus;
    d == 1 || d == modulus - 1
}

/// The marker occurs in the image word, and only at residues in `allowed`.
pub fn check_synchronization(
    spec: &FixedPointSpec,
    f: Option<&UniformMorphism>,
    marker: &[u8],
    allowed: &BTreeSet<usize>,
) -> Result<CheckOutcome> {
    if marker.is_empty() {
        return Err(Error::InvalidArgument("synchronization marker is empty".into()));
    }
    let profile = offset_profile(spec, f, marker.len())?;
    let name = "synchronization";
    Ok(match profile.residues(marker) {
        None => CheckOutcome::new(
            name,
            false,
            json!({ "reason": "marker_absent", "marker": digits(marker) }),
        ),
        Some(found) => {
            let ok = found.is_subset(allowed);
            CheckOutcome::new(
                name,
                ok,
                json!({
                    "reason": if ok { "ok" } else { "residue_mismatch" },
                    "marker": digits(marker),
                    "modulus": profile.modulus(),
                    "residues": found,
                    "allowed": allowed,
                }),
            )
        }
    })
}

/// Every length-`len` factor of `f` applied to the fixed point contains `marker`.
pub fn check_marker_coverage(
    spec: &FixedPointSpec,
    f: &UniformMorphism,
    marker: &[u8],
    len: usize,
) -> Result<CheckOutcome> {
    if len < marker.len() {
        return Err(Error::InvalidArgument(format!(
            "coverage length {len} is shorter than the marker"
        )));
    }
    let set = image_factor_set(spec, f, len)?;
    let missing: Vec<String> = set
        .iter()
        .filter(|x| !marker.is_empty() && !x.windows(marker.len()).any(|y| y == marker))
        .map(digits)
        .collect();
    Ok(CheckOutcome::new(
        "marker_coverage",
        missing.is_empty(),
        json!({
            "marker": digits(marker),
            "length": len,
            "factors": set.len(),
            "without_marker": missing.len(),
            "examples": missing.iter().take(10).collect::<Vec<_>>(),
        }),
    ))
}

/// Every length-`len` factor of the image word occurs at a single residue.
pub fn check_offset_uniqueness(
    spec: &FixedPointSpec,
    f: Option<&UniformMorphism>,
    len: usize,
) -> Result<CheckOutcome> {
    let profile = offset_profile(spec, f, len)?;
    let ambiguous: Vec<_> = profile
        .ambiguous()
        .map(|(w, r)| json!({ "factor": w.to_digits(), "residues": r }))
        .collect();
    Ok(CheckOutcome::new(
        "offset_uniqueness",
        ambiguous.is_empty(),
        json!({
            "length": len,
            "modulus": profile.modulus(),
            "factors": profile.entries().len(),
            "ambiguous": ambiguous,
        }),
    ))
}

/// Every two-letter factor `ab` has `(b - a) mod modulus` in `allowed`.
pub fn check_successor_property(
    spec: &FixedPointSpec,
    allowed: &BTreeSet<usize>,
    modulus: usize,
) -> CheckOutcome {
    let pairs = two_letter_pairs(spec);
    let diff = |a: u8, b: u8| (b as usize + modulus - a as usize % modulus) % modulus;
    let offending: Vec<String> = pairs
        .iter()
        .filter(|&&(a, b)| !allowed.contains(&diff(a, b)))
        .map(|&(a, b)| digits(&[a, b]))
        .collect();
    CheckOutcome::new(
        "successor_property",
        offending.is_empty(),
        json!({
            "modulus": modulus,
            "allowed_differences": allowed,
            "factors": pairs.iter().map(|&(a, b)| digits(&[a, b])).collect::<Vec<_>>(),
            "offending": offending,
        }),
    )
}

/// No exception pair can extend a common non-empty context: for a prefix
/// exception {a,b} no letter is followed by both a and b, and for a suffix
/// exception no letter is preceded by both.
pub fn check_exception_pairs_nonconsecutive(
    table: &DistinctnessTable,
    spec: &FixedPointSpec,
) -> CheckOutcome {
    let pairs = two_letter_pairs(spec);
    let sigma = spec.alphabet_size();
    let mut evidence = Vec::new();
    let mut ok = true;
    for (side, pair) in table.exception_pairs() {
        let (a, b) = (pair.0, pair.1);
        let shared: Vec<u8> = (0..sigma as u8)
            .filter(|&x| match side {
                Side::Prefix => pairs.contains(&(x, a)) && pairs.contains(&(x, b)),
                Side::Suffix => pairs.contains(&(a, x)) && pairs.contains(&(b, x)),
            })
            .collect();
        ok &= shared.is_empty();
        evidence.push(json!({
            "side": side,
            "pair": [a, b],
            "difference_mod_alphabet": (b as usize + sigma - a as usize) % sigma,
            "consecutive": consecutive(a, b, sigma),
            "shared_context_letters": shared,
        }));
    }
    CheckOutcome::new("exception_pairs_nonconsecutive", ok, json!({ "pairs": evidence }))
}

pub fn check_alpha_beta_condition(alpha: usize, beta: usize, q: usize) -> CheckOutcome {
    let ok = alpha + beta <= q + 1;
    CheckOutcome::new(
        "alpha_beta",
        ok,
        json!({
            "alpha": alpha,
            "beta": beta,
            "q": q,
            "sum": alpha + beta,
            "limit": q + 1,
            "tight": alpha + beta == q + 1,
        }),
    )
}
