//! Line-oriented law reports.
//!
//! ```text
//! suite=T1a seed=7 requested=200 qualifying=200 draws=231 unqualified=31 errors=0 warnings=0 violations=0
//! warning<TAB>trial 12: ...
//! T1a<TAB>17<TAB>L.aut=alphabet: a b;states: ...<TAB>detail=L^2 not closed
//! ```
//!
//! A violation line carries every automaton as its `.aut` text with lines
//! joined by `;`, word sets as comma-separated dotted words and parameters
//! as `name.param=value`, so it replays without the generator.

use std::fmt;

use super::suites::{check, Bounds, Instance, Outcome, Suite};
use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub suite: Suite,
    /// Draw index; the instance came from `derive_seed(seed, trial)`.
    pub trial: u64,
    pub instance: Instance,
    pub detail: String,
}

impl Violation {
    /// Re-runs the hypothesis and conclusion checks on the stored instance.
    /// True when the instance still violates the law.
    pub fn replay(&self, bounds: Bounds) -> Result<bool> {
        Ok(matches!(
            check(self.suite, &self.instance, bounds.budget)?,
            Outcome::Violation(_)
        ))
    }

    pub fn parse(line: &str) -> Result<Violation> {
        let bad = |msg: &str| Error::parse(0, format!("violation line: {msg}"));
        let mut fields = line.split('\t');
        let suite: Suite = fields.next().ok_or_else(|| bad("empty"))?.parse()?;
        let trial = fields
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| bad("missing trial index"))?;
        let mut instance = Instance::default();
        let mut detail = String::new();
        for field in fields {
            let (key, value) = field.split_once('=').ok_or_else(|| bad("field without `=`"))?;
            if key == "detail" {
                detail = value.to_string();
                continue;
            }
            let (name, kind) = key.rsplit_once('.').ok_or_else(|| bad("field name without kind"))?;
            match kind {
                "aut" => instance
                    .automata
                    .push((name.to_string(), Dfa::from_aut(&value.replace(';', "\n"))?)),
                "words" => {
                    let words = value
                        .split(',')
                        .filter(|w| !w.is_empty())
                        .map(Word::parse)
                        .collect::<Result<Vec<_>>>()?;
                    instance.words.push((name.to_string(), words));
                }
                "param" => instance.params.push((name.to_string(), value.to_string())),
                other => return Err(bad(&format!("unknown field kind `{other}`"))),
            }
        }
        Ok(Violation {
            suite,
            trial,
            instance,
            detail,
        })
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}", self.suite, self.trial)?;
        for (name, d) in &self.instance.automata {
            write!(f, "\t{name}.aut={}", d.to_aut().trim_end().replace('\n', ";"))?;
        }
        for (name, ws) in &self.instance.words {
            let ws: Vec<String> = ws.iter().map(Word::to_string).collect();
            write!(f, "\t{name}.words={}", ws.join(","))?;
        }
        for (name, v) in &self.instance.params {
            write!(f, "\t{name}.param={v}")?;
        }
        write!(f, "\tdetail={}", self.detail)
    }
}

/// Outcome of one suite run.
#[derive(Debug, Clone, PartialEq)]
pub struct LawReport {
    pub suite: Suite,
    pub seed: u64,
    pub requested: usize,
    /// Draws meeting the hypotheses, violations included.
    pub qualifying: usize,
    pub draws: usize,
    pub unqualified: usize,
    /// Draws abandoned on a budget or other error.
    pub errors: usize,
    pub warnings: Vec<String>,
    pub violations: Vec<Violation>,
}

impl LawReport {
    pub(crate) fn new(suite: Suite, seed: u64, requested: usize) -> Self {
        LawReport {
            suite,
            seed,
            requested,
            qualifying: 0,
            draws: 0,
            unqualified: 0,
            errors: 0,
            warnings: Vec::new(),
            violations: Vec::new(),
        }
    }

    /// Zero violations. Warnings do not count against a suite.
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Violation lines in a report text; other lines are skipped.
    pub fn parse_violations(text: &str) -> Result<Vec<Violation>> {
        text.lines()
            .filter(|l| !l.is_empty() && !l.starts_with("suite=") && !l.starts_with("warning\t"))
            .map(Violation::parse)
            .collect()
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite={} seed={} requested={} qualifying={} draws={} unqualified={} errors={} warnings={} violations={}",
            self.suite,
            self.seed,
            self.requested,
            self.qualifying,
            self.draws,
            self.unqualified,
            self.errors,
            self.warnings.len(),
            self.violations.len()
        )?;
        for w in &self.warnings {
            writeln!(f, "warning\t{w}")?;
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;

    #[test]
    fn violation_lines_round_trip_and_replay() {
        // {a}⁺{b}⁺ twice
        let ab = Alphabet::from_letters("ab");
        let l = Dfa::from_table(ab, 0, [2], vec![vec![1, 3], vec![1, 2], vec![3, 2], vec![3, 3]]).unwrap();
        let v = Violation {
            suite: Suite::T7,
            trial: 3,
            instance: Instance {
                automata: vec![("L".into(), l.clone()), ("M".into(), l)],
                words: vec![("W".into(), vec![Word::epsilon(), Word::from_letters("ab")])],
                params: vec![("kind".into(), "positive".into())],
            },
            detail: "made up".into(),
        };
        let line = v.to_string();
        assert!(!line.contains('\n'));
        let back = Violation::parse(&line).unwrap();
        assert_eq!(back, v);
        // not open, so the instance does not qualify for T7
        assert!(!back.replay(Bounds::default()).unwrap());
    }

    #[test]
    fn report_text_parses() {
        let mut r = LawReport::new(Suite::T1a, 7, 10);
        r.warnings.push("trial 1: something".into());
        let text = r.to_string();
        assert!(text.starts_with("suite=T1a seed=7 requested=10"));
        assert!(LawReport::parse_violations(&text).unwrap().is_empty());
    }
}
