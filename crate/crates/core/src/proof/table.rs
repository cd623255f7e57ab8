use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::CheckOutcome;
use crate::error::{Error, Result};
use crate::morphism::UniformMorphism;

/// Unordered pair of distinct letters, stored as (smaller, larger).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LetterPair(pub u8, pub u8);

impl LetterPair {
    pub fn new(a: u8, b: u8) -> Self {
        LetterPair(a.min(b), a.max(b))
    }
}

impl fmt::Display for LetterPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Prefix,
    Suffix,
}

/// A pair whose common prefix (suffix) length contradicts the claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableViolation {
    pub side: Side,
    pub pair: LetterPair,
    pub value: usize,
    pub bound: usize,
    pub listed_as_exception: bool,
}

impl fmt::Display for TableViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.side {
            Side::Prefix => "lcp",
            Side::Suffix => "lcs",
        };
        if self.listed_as_exception {
            write!(f, "exception {} has {what} {} < {}", self.pair, self.value, self.bound)
        } else {
            write!(f, "pair {} has {what} {} >= {}", self.pair, self.value, self.bound)
        }
    }
}

/// Pairwise common prefix/suffix lengths of the images of a morphism,
/// together with a claimed distinctness length on each side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinctnessTable {
    pub morphism: UniformMorphism,
    pub lcp: Vec<Vec<usize>>,
    pub lcs: Vec<Vec<usize>>,
    pub alpha: usize,
    pub beta: usize,
    pub prefix_exceptions: BTreeSet<LetterPair>,
    pub suffix_exceptions: BTreeSet<LetterPair>,
}

fn common_prefix(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

fn common_suffix(a: &[u8], b: &[u8]) -> usize {
    a.iter().rev().zip(b.iter().rev()).take_while(|(x, y)| x == y).count()
}

impl DistinctnessTable {
    /// Computes the matrices without judging the claim.
    pub fn compute(
        f: &UniformMorphism,
        alpha: usize,
        beta: usize,
        prefix_exceptions: impl IntoIterator<Item = LetterPair>,
        suffix_exceptions: impl IntoIterator<Item = LetterPair>,
    ) -> Result<Self> {
        if alpha > f.q() || beta > f.q() {
            return Err(Error::InvalidArgument(format!(
                "alpha={alpha}, beta={beta} must not exceed q={}",
                f.q()
            )));
        }
        let n = f.domain_size();
        let matrix = |g: fn(&[u8], &[u8]) -> usize| -> Vec<Vec<usize>> {
            (0..n)
                .map(|a| (0..n).map(|b| g(f.image(a as u8), f.image(b as u8))).collect())
                .collect()
        };
        let pairs = |it: &mut dyn Iterator<Item = LetterPair>| -> Result<BTreeSet<LetterPair>> {
            it.map(|p| {
                if p.0 == p.1 || p.1 as usize >= n {
                    Err(Error::InvalidArgument(format!("bad exception pair {p}")))
                } else {
                    Ok(LetterPair::new(p.0, p.1))
                }
            })
            .collect()
        };
        Ok(DistinctnessTable {
            morphism: f.clone(),
            lcp: matrix(common_prefix),
            lcs: matrix(common_suffix),
            alpha,
            beta,
            prefix_exceptions: pairs(&mut prefix_exceptions.into_iter())?,
            suffix_exceptions: pairs(&mut suffix_exceptions.into_iter())?,
        })
    }

    pub fn violations(&self) -> Vec<TableViolation> {
        let n = self.morphism.domain_size();
        let mut out = Vec::new();
        for (side, m, bound, exc) in [
            (Side::Prefix, &self.lcp, self.alpha, &self.prefix_exceptions),
            (Side::Suffix, &self.lcs, self.beta, &self.suffix_exceptions),
        ] {
            for a in 0..n {
                for b in a + 1..n {
                    let pair = LetterPair::new(a as u8, b as u8);
                    let listed = exc.contains(&pair);
                    let value = m[a][b];
                    if listed != (value >= bound) {
                        out.push(TableViolation {
                            side,
                            pair,
                            value,
                            bound,
                            listed_as_exception: listed,
                        });
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }

    pub fn exception_pairs(&self) -> impl Iterator<Item = (Side, LetterPair)> + '_ {
        self.prefix_exceptions
            .iter()
            .map(|&p| (Side::Prefix, p))
            .chain(self.suffix_exceptions.iter().map(|&p| (Side::Suffix, p)))
    }

    /// Letters whose image begins with `part` (`Side::Prefix`) or ends with it.
    pub fn letters_matching(&self, side: Side, part: &[u8]) -> Vec<u8> {
        (0..self.morphism.domain_size() as u8)
            .filter(|&a| {
                let img = self.morphism.image(a);
                match side {
                    Side::Prefix => img.starts_with(part),
                    Side::Suffix => img.ends_with(part),
                }
            })
            .collect()
    }

    /// Largest common prefix/suffix over pairs that are not exceptions.
    pub fn max_off_exception(&self, side: Side) -> usize {
        let (m, exc) = match side {
            Side::Prefix => (&self.lcp, &self.prefix_exceptions),
            Side::Suffix => (&self.lcs, &self.suffix_exceptions),
        };
        let n = self.morphism.domain_size();
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| !exc.contains(&LetterPair::new(a as u8, b as u8)))
            .map(|(a, b)| m[a][b])
            .max()
            .unwrap_or(0)
    }

    pub fn outcome(&self, name: &str) -> CheckOutcome {
        let violations = self.violations();
        CheckOutcome::new(
            name,
            violations.is_empty(),
            json!({
                "alpha": self.alpha,
                "beta": self.beta,
                "prefix_exceptions": self.prefix_exceptions,
                "suffix_exceptions": self.suffix_exceptions,
                "max_lcp_off_exceptions": self.max_off_exception(Side::Prefix),
                "max_lcs_off_exceptions": self.max_off_exception(Side::Suffix),
                "lcp": self.lcp,
                "lcs": self.lcs,
                "violations": violations,
            }),
        )
    }
}

/// Builds the table and fails on the first pair contradicting the claim.
pub fn build_distinctness_table(
    f: &UniformMorphism,
    alpha: usize,
    beta: usize,
    prefix_exceptions: impl IntoIterator<Item = LetterPair>,
    suffix_exceptions: impl IntoIterator<Item = LetterPair>,
) -> Result<DistinctnessTable> {
    let table = DistinctnessTable::compute(f, alpha, beta, prefix_exceptions, suffix_exceptions)?;
    if let Some(v) = table.violations().first() {
        return Err(Error::InvalidArgument(format!("distinctness claim violated: {v}")));
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{f2, f3, m};

    fn pair(a: u8, b: u8) -> LetterPair {
        LetterPair::new(a, b)
    }

    #[test]
    fn m_table_holds() {
        let t = build_distinctness_table(&m(), 68, 20, [pair(0, 3)], [pair(1, 4)]).unwrap();
        assert_eq!(t.lcp[0][1], 48);
        assert_eq!(t.lcp[0][3], 91);
        assert_eq!(t.lcs[1][4], 43);
        assert_eq!(t.max_off_exception(Side::Prefix), 67);
        assert_eq!(t.max_off_exception(Side::Suffix), 19);
    }

    #[test]
    fn pinned_matrices() {
        let t = DistinctnessTable::compute(&m(), 68, 20, [], []).unwrap();
        assert_eq!(
            t.lcp,
            vec![
                vec![95, 48, 48, 91, 48],
                vec![48, 95, 51, 48, 51],
                vec![48, 51, 95, 48, 67],
                vec![91, 48, 48, 95, 48],
                vec![48, 51, 67, 48, 95],
            ]
        );
        assert_eq!(
            t.lcs,
            vec![
                vec![95, 0, 19, 3, 0],
                vec![0, 95, 0, 0, 43],
                vec![19, 0, 95, 3, 0],
                vec![3, 0, 3, 95, 0],
                vec![0, 43, 0, 0, 95],
            ]
        );
        let t = DistinctnessTable::compute(&f3(), 4, 4, [], []).unwrap();
        assert_eq!(t.lcs[1][4], 5);
        assert_eq!(t.max_off_exception(Side::Prefix), 3);
    }

    #[test]
    fn f2_table_holds() {
        build_distinctness_table(&f2(), 4, 4, [], []).unwrap();
    }

    // f3(1) = 0102122 and f3(4) = 0002122 agree on their last five letters.
    #[test]
    fn f3_suffixes_collide_on_one_and_four() {
        let t = DistinctnessTable::compute(&f3(), 4, 4, [], []).unwrap();
        let v = t.violations();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].side, Side::Suffix);
        assert_eq!(v[0].pair, pair(1, 4));
        assert_eq!(v[0].value, 5);
        assert!(build_distinctness_table(&f3(), 4, 4, [], [pair(1, 4)]).is_ok());
    }

    #[test]
    fn missing_or_spurious_exceptions_reported() {
        let t = DistinctnessTable::compute(&m(), 68, 20, [], [pair(1, 4)]).unwrap();
        assert_eq!(t.violations()[0].pair, pair(0, 3));
        let t = DistinctnessTable::compute(&m(), 68, 20, [pair(0, 3), pair(1, 2)], [pair(1, 4)])
            .unwrap();
        let v = t.violations();
        assert_eq!(v.len(), 1);
        assert!(v[0].listed_as_exception);
        assert!(DistinctnessTable::compute(&m(), 96, 20, [], []).is_err());
    }
}
