use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::checks::{
    check_alpha_beta_condition, check_exception_pairs_nonconsecutive, check_marker_coverage,
    check_offset_uniqueness, check_successor_property, check_synchronization,
};
use super::table::{DistinctnessTable, LetterPair};
use super::{CheckOutcome, CheckReport};
use crate::builtin::{self, C, C_LEN, M_Q};
use crate::detect::{infinite_halfflip_check_with, Reading};
use crate::error::{Error, Result};
use crate::factors::Budget;
use crate::morphism::{validate_morphism, FixedPointSpec, UniformMorphism};
use crate::word::parse_digits;

/// Which avoidance statement to verify.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    /// 1-half-flips over five letters.
    #[serde(rename = "1.1")]
    FiveLetters,
    /// 2-half-flips over three letters.
    #[serde(rename = "1.2")]
    ThreeLetters,
    /// 4-half-flips over two letters.
    #[serde(rename = "1.3")]
    TwoLetters,
}

impl Variant {
    pub fn label(self) -> &'static str {
        match self {
            Variant::FiveLetters => "1.1",
            Variant::ThreeLetters => "1.2",
            Variant::TwoLetters => "1.3",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1.1" | "1" => Ok(Variant::FiveLetters),
            "1.2" | "2" => Ok(Variant::ThreeLetters),
            "1.3" | "3" => Ok(Variant::TwoLetters),
            _ => Err(Error::InvalidArgument(format!("unknown theorem variant {s:?}"))),
        }
    }
}

/// `Stated` uses the distinctness and synchronization constants exactly
/// as published; `Corrected` replaces the two that do not hold for the
/// printed images (see `ImagePlan::new`).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Premises {
    #[default]
    Stated,
    Corrected,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SyncPremise {
    /// Every factor of `coverage_length` contains `marker`, which occurs only at `residues`.
    Marker {
        marker: Vec<u8>,
        coverage_length: usize,
        residues: BTreeSet<usize>,
    },
    /// Every factor of `length` occurs at a single residue.
    UniqueOffsets { length: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImagePlan {
    pub name: &'static str,
    pub morphism: UniformMorphism,
    pub min_period: usize,
    pub alpha: usize,
    pub beta: usize,
    pub prefix_exceptions: Vec<LetterPair>,
    pub suffix_exceptions: Vec<LetterPair>,
    pub sync: SyncPremise,
}

impl ImagePlan {
    /// The plan for the image morphism of `variant` (none for 1.1).
    ///
    /// Corrected premises: f3(1) and f3(4) share a suffix of length 5, so
    /// {1,4} is listed as a suffix exception; f2 factors only synchronize
    /// from length 9 on.
    pub fn new(variant: Variant, premises: Premises) -> Option<Self> {
        let corrected = premises == Premises::Corrected;
        match variant {
            Variant::FiveLetters => None,
            Variant::ThreeLetters => Some(ImagePlan {
                name: "f3",
                morphism: builtin::f3(),
                min_period: 2,
                alpha: 4,
                beta: 4,
                prefix_exceptions: vec![],
                suffix_exceptions: if corrected {
                    vec![LetterPair::new(1, 4)]
                } else {
                    vec![]
                },
                sync: SyncPremise::Marker {
                    marker: vec![2, 0],
                    coverage_length: 8,
                    residues: BTreeSet::from([6]),
                },
            }),
            Variant::TwoLetters => Some(ImagePlan {
                name: "f2",
                morphism: builtin::f2(),
                min_period: 4,
                alpha: 4,
                beta: 4,
                prefix_exceptions: vec![],
                suffix_exceptions: vec![],
                sync: SyncPremise::UniqueOffsets {
                    length: if corrected { 9 } else { 6 },
                },
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremPlan {
    pub variant: Variant,
    pub period_bound: usize,
    pub image: Option<ImagePlan>,
}

impl TheoremPlan {
    pub fn new(variant: Variant, period_bound: usize, premises: Premises) -> Self {
        TheoremPlan {
            variant,
            period_bound,
            image: ImagePlan::new(variant, premises),
        }
    }
}

/// Runs every check for `variant` with the published constants.
pub fn verify_theorem(variant: Variant, period_bound: usize) -> Result<CheckReport> {
    verify_theorem_with(
        &TheoremPlan::new(variant, period_bound, Premises::Stated),
        Budget::default(),
    )
}

/// Only a resource-cap error aborts the run; every other failure becomes
/// a failed check carrying the error text.
pub fn verify_theorem_with(plan: &TheoremPlan, budget: Budget) -> Result<CheckReport> {
    let mut checks = Vec::new();
    let spec = match base_checks(plan, budget, &mut checks)? {
        Some(spec) => spec,
        None => {
            return Ok(finish(plan, checks));
        }
    };
    if let Some(image) = &plan.image {
        image_checks(plan, image, &spec, budget, &mut checks)?;
    }
    Ok(finish(plan, checks))
}

fn finish(plan: &TheoremPlan, checks: Vec<CheckOutcome>) -> CheckReport {
    let overall = checks.iter().all(|c| c.passed);
    CheckReport {
        variant: plan.variant.label().to_string(),
        period_bound: plan.period_bound,
        checks,
        overall,
    }
}

fn absorb(name: String, r: Result<CheckOutcome>) -> Result<CheckOutcome> {
    match r {
        Ok(out) => Ok(out.renamed(name)),
        Err(e @ Error::ResourceCap { .. }) => Err(e),
        Err(e) => Ok(CheckOutcome::new(name, false, json!({ "error": e.to_string() }))),
    }
}

fn validate_builtin(name: &str, f: &UniformMorphism) -> CheckOutcome {
    let result = builtin::self_check().and_then(|_| validate_morphism(&f.to_raw()));
    match result {
        Ok(g) => CheckOutcome::new(
            format!("{name}.validate"),
            true,
            json!({
                "q": g.q(),
                "domain_size": g.domain_size(),
                "codomain_size": g.codomain_size(),
            }),
        ),
        Err(e) => CheckOutcome::new(
            format!("{name}.validate"),
            false,
            json!({ "error": e.to_string() }),
        ),
    }
}

fn avoidance(
    name: String,
    spec: &FixedPointSpec,
    f: Option<&UniformMorphism>,
    k: usize,
    period_bound: usize,
    budget: Budget,
) -> Result<CheckOutcome> {
    let found = infinite_halfflip_check_with(spec, f, k, period_bound, Reading::Liberal, budget)?;
    Ok(CheckOutcome::new(
        name,
        found.is_none(),
        json!({
            "min_period": k,
            "max_period": period_bound,
            "vacuous": period_bound < k,
            "half_flip": found,
        }),
    ))
}

fn base_checks(
    plan: &TheoremPlan,
    budget: Budget,
    checks: &mut Vec<CheckOutcome>,
) -> Result<Option<FixedPointSpec>> {
    let m = builtin::m();
    let mut validate = validate_builtin("m", &m);
    let spec = FixedPointSpec::new(m.clone(), 0);
    if let Some(obj) = validate.details.as_object_mut() {
        obj.insert("c_length".into(), json!(C.len()));
        obj.insert("prolongable_seed".into(), json!(spec.is_ok()));
    }
    validate.passed &= C.len() == C_LEN && m.q() == M_Q && spec.is_ok();
    checks.push(validate);
    let Ok(spec) = spec else {
        return Ok(None);
    };

    let c = parse_digits(C)?;
    checks.push(absorb(
        "m.synchronization".into(),
        check_synchronization(&spec, None, &c, &BTreeSet::from([0])),
    )?);
    checks.push(
        check_successor_property(&spec, &BTreeSet::from([1, 2]), 5).renamed("m.successor_property"),
    );
    let table = DistinctnessTable::compute(
        &m,
        68,
        20,
        [LetterPair::new(0, 3)],
        [LetterPair::new(1, 4)],
    )?;
    checks.push(table.outcome("m.distinctness_table"));
    checks.push(
        check_exception_pairs_nonconsecutive(&table, &spec)
            .renamed("m.exception_pairs_nonconsecutive"),
    );
    checks.push(check_alpha_beta_condition(68, 20, m.q()).renamed("m.alpha_beta"));
    checks.push(avoidance(
        "m.avoidance".into(),
        &spec,
        None,
        1,
        plan.period_bound,
        budget,
    )?);
    Ok(Some(spec))
}

fn image_checks(
    plan: &TheoremPlan,
    image: &ImagePlan,
    spec: &FixedPointSpec,
    budget: Budget,
    checks: &mut Vec<CheckOutcome>,
) -> Result<()> {
    let name = image.name;
    let f = &image.morphism;
    checks.push(validate_builtin(name, f));
    let table = DistinctnessTable::compute(
        f,
        image.alpha,
        image.beta,
        image.prefix_exceptions.iter().copied(),
        image.suffix_exceptions.iter().copied(),
    )?;
    checks.push(table.outcome(&format!("{name}.distinctness_table")));
    checks.push(
        check_exception_pairs_nonconsecutive(&table, spec)
            .renamed(format!("{name}.exception_pairs_nonconsecutive")),
    );
    checks.push(
        check_alpha_beta_condition(image.alpha, image.beta, f.q())
            .renamed(format!("{name}.alpha_beta")),
    );
    match &image.sync {
        SyncPremise::Marker {
            marker,
            coverage_length,
            residues,
        } => {
            checks.push(absorb(
                format!("{name}.marker_coverage"),
                check_marker_coverage(spec, f, marker, *coverage_length),
            )?);
            checks.push(absorb(
                format!("{name}.synchronization"),
                check_synchronization(spec, Some(f), marker, residues),
            )?);
        }
        SyncPremise::UniqueOffsets { length } => {
            checks.push(absorb(
                format!("{name}.offset_uniqueness"),
                check_offset_uniqueness(spec, Some(f), *length),
            )?);
        }
    }
    checks.push(avoidance(
        format!("{name}.avoidance"),
        spec,
        Some(f),
        image.min_period,
        plan.period_bound,
        budget,
    )?);
    Ok(())
}
