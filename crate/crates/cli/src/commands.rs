use std::fmt;
use std::fs;
use std::path::Path;

use serde_json::json;

use halfflip_core::builtin;
use halfflip_core::detect::{find_half_flip_fast_in, Reading};
use halfflip_core::factors::{
    profile_lines, Budget, Material,
};
use halfflip_core::proof::{verify_theorem_with, TheoremPlan, Variant};
use halfflip_core::search::{backtrack_longest, SearchConfig, SearchLimits, Symmetry};
use halfflip_core::word::parse_word_lines;
use halfflip_core::{Error, FixedPointSpec, UniformMorphism};

use crate::{Cli, Command, Format};

/// Process exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    Failure = 1,
    Usage = 2,
    ResourceCap = 3,
}

impl From<Status> for std::process::ExitCode {
    fn from(s: Status) -> Self {
        std::process::ExitCode::from(s as u8)
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Cap(String),
    Io(String),
}

impl CliError {
    pub fn status(&self) -> Status {
        match self {
            CliError::Usage(_) => Status::Usage,
            CliError::Cap(_) => Status::ResourceCap,
            CliError::Io(_) => Status::Failure,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Cap(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceCap { .. } => CliError::Cap(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// A builtin name or a path to a JSON morphism file.
fn load_morphism(name: &str) -> Result<UniformMorphism, CliError> {
    if let Some(f) = builtin::by_name(name) {
        return Ok(f);
    }
    let path = Path::new(name);
    if !path.exists() {
        return Err(CliError::Usage(format!(
            "unknown morphism {name:?} (expected m, f3, f2 or a JSON file)"
        )));
    }
    Ok(UniformMorphism::from_json(&read(path)?)?)
}

fn load_spec(base: &str, seed: u8) -> Result<FixedPointSpec, CliError> {
    Ok(FixedPointSpec::new(load_morphism(base)?, seed)?)
}

fn emit(cli: &Cli, body: String) -> Result<(), CliError> {
    match &cli.common.output {
        Some(path) => fs::write(path, body)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable report");
    s.push('\n');
    s
}

pub fn run(cli: &Cli) -> Result<Status, CliError> {
    let budget = Budget {
        max_material: cli.common.max_material,
    };
    let text = cli.common.format == Format::Text;
    match &cli.command {
        Command::Generate {
            length,
            base,
            seed,
            image,
        } => {
            let spec = load_spec(base, *seed)?;
            let mut letters = spec.prefix_letters(match image {
                None => *length,
                Some(_) => 0,
            });
            if let Some(name) = image {
                let f = load_morphism(name)?;
                if f.domain_size() != spec.alphabet_size() {
                    return Err(CliError::Usage("image morphism domain does not match".into()));
                }
                let base_letters = spec.prefix_letters(length.div_ceil(f.q()));
                letters = f.apply_letters(&base_letters);
                letters.truncate(*length);
            }
            let word = halfflip_core::word::digits(&letters);
            let body = if text {
                format!("{word}\n")
            } else {
                pretty(&json!({
                    "base": base,
                    "seed": seed,
                    "image": image,
                    "length": letters.len(),
                    "word": word,
                }))
            };
            emit(cli, body)?;
            Ok(Status::Success)
        }
        Command::Detect {
            file,
            min_period,
            max_period,
            distinct_halves,
            require_absent,
        } => {
            if *min_period == 0 || max_period < min_period {
                return Err(CliError::Usage(
                    "need 1 <= --min-period <= --max-period".into(),
                ));
            }
            let words = parse_word_lines(&read(file)?, None)?;
            let reading = Reading::from_distinct_halves(*distinct_halves);
            let results: Vec<_> = words
                .iter()
                .map(|w| find_half_flip_fast_in(w, *min_period, *max_period, reading))
                .collect();
            let any = results.iter().any(Option::is_some);
            let body = if text {
                results
                    .iter()
                    .enumerate()
                    .map(|(i, r)| match r {
                        None => format!("word {}: absent\n", i + 1),
                        Some(w) => format!(
                            "word {}: period {} uv={} at {} and vu at {}\n",
                            i + 1,
                            w.period,
                            w.uv,
                            w.pos_uv,
                            w.pos_vu
                        ),
                    })
                    .collect()
            } else {
                pretty(&json!({
                    "min_period": min_period,
                    "max_period": max_period,
                    "distinct_halves": distinct_halves,
                    "results": results
                        .iter()
                        .zip(&words)
                        .map(|(r, w)| json!({ "length": w.len(), "witness": r }))
                        .collect::<Vec<_>>(),
                }))
            };
            emit(cli, body)?;
            Ok(if any && *require_absent {
                Status::Failure
            } else {
                Status::Success
            })
        }
        Command::Factors {
            length,
            base,
            seed,
            image,
            offsets,
        } => {
            if *length == 0 {
                return Err(CliError::Usage("--length must be positive".into()));
            }
            let spec = load_spec(base, *seed)?;
            let f = image.as_deref().map(load_morphism).transpose()?;
            let body = if *offsets {
                let g = f.as_ref().unwrap_or(spec.morphism());
                let profile = Material::image(&spec, g, *length, 0, budget)?.offset_profile(*length);
                if text {
                    profile_lines(&profile)
                } else {
                    let entries: serde_json::Map<String, serde_json::Value> = profile
                        .entries()
                        .iter()
                        .map(|(w, r)| (w.to_digits(), json!(r)))
                        .collect();
                    pretty(&json!({
                        "length": length,
                        "modulus": profile.modulus(),
                        "entries": entries,
                    }))
                }
            } else {
                let set = match &f {
                    None => Material::fixed_point(&spec, *length, budget)?.factor_set(*length),
                    Some(g) => Material::image(&spec, g, *length, 0, budget)?.factor_set(*length),
                };
                if text {
                    set.to_lines()
                } else {
                    pretty(&json!({
                        "length": length,
                        "exact": set.is_exact(),
                        "count": set.len(),
                        "factors": set.to_lines().lines().collect::<Vec<_>>(),
                    }))
                }
            };
            emit(cli, body)?;
            Ok(Status::Success)
        }
        Command::Verify {
            theorem,
            max_period,
            premises,
        } => {
            let variant: Variant = theorem.parse()?;
            let plan = TheoremPlan::new(variant, *max_period, (*premises).into());
            let report = verify_theorem_with(&plan, budget)?;
            emit(
                cli,
                if text {
                    report.summary()
                } else {
                    pretty(&report)
                },
            )?;
            Ok(if report.overall {
                Status::Success
            } else {
                Status::Failure
            })
        }
        Command::Backtrack {
            alphabet,
            min_period,
            distinct_halves,
            max_nodes,
            max_length,
            full_symmetry,
        } => {
            if *alphabet == 0 || *alphabet > 8 {
                return Err(CliError::Usage("--alphabet must be in 1..=8".into()));
            }
            if *min_period == 0 {
                return Err(CliError::Usage("--min-period must be positive".into()));
            }
            let env_nodes = match std::env::var("HALFFLIP_MAX_NODES") {
                Ok(v) => Some(v.trim().parse::<u64>().map_err(|_| {
                    CliError::Usage(format!("HALFFLIP_MAX_NODES={v:?} is not a number"))
                })?),
                Err(_) => None,
            };
            let limits = SearchLimits {
                max_nodes: env_nodes
                    .or(*max_nodes)
                    .unwrap_or(halfflip_core::search::DEFAULT_MAX_NODES),
                max_length: *max_length,
            };
            let config = SearchConfig {
                alphabet_size: *alphabet,
                min_period: *min_period,
                reading: Reading::from_distinct_halves(*distinct_halves),
                symmetry: if *full_symmetry {
                    Symmetry::Full
                } else {
                    Symmetry::FirstLetter
                },
                limits,
            };
            let result = backtrack_longest(&config);
            let body = if text {
                format!(
                    "alphabet {} min period {}: longest {} ({}), {} nodes\n{}\n",
                    result.alphabet_size,
                    result.min_period,
                    result.max_length,
                    if result.exhaustive {
                        "exhaustive"
                    } else {
                        "cap reached"
                    },
                    result.nodes_explored,
                    result.extremal_word
                )
            } else {
                pretty(&result)
            };
            emit(cli, body)?;
            Ok(if result.exhaustive {
                Status::Success
            } else {
                Status::ResourceCap
            })
        }
    }
}
