//! Verification harness: a registry of suites, each binding one statement to
//! a generated corpus and a brute-force check, and a deterministic runner.

pub mod corpus;
mod export;
mod suites;

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use corpus::{budget_from_env, Corpus, DEFAULT_BUDGET};
pub use export::{export, Exportable, Format};

/// A registered suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteInfo {
    pub name: &'static str,
    /// Identifier of the statement the suite checks; one of [`ANCHORS`].
    pub anchor: &'static str,
    pub statement: &'static str,
    /// Expected to find counterexamples: the check runs with a hypothesis dropped.
    pub negative_control: bool,
    pub default_bound: usize,
    pub max_bound: usize,
    /// What the bound limits.
    pub bound_meaning: &'static str,
}

/// Every statement the harness covers.
pub const ANCHORS: &[&str] = &[
    "dwyer-pushout-description",
    "generating-cells-are-dwyer",
    "csd2-poset-valued",
    "hom-change",
    "orbit-cell-pushouts",
    "orbit-towers",
    "adjunction-laws",
    "fixed-point-corepresentation",
    "hom-preserves-pullbacks",
    "poset-acyclic-restriction",
    "homology-invariance",
];

pub fn suites() -> &'static [SuiteInfo] {
    suites::REGISTRY
}

pub fn suite(name: &str) -> Result<&'static SuiteInfo> {
    suites().iter().find(|s| s.name == name).ok_or_else(|| Error::UnknownSuite(name.to_string()))
}

/// Outcome of one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Verdict {
    Holds,
    Fails(String),
}

impl Verdict {
    pub(crate) fn from_bool(holds: bool, why: &str) -> Self {
        if holds {
            Verdict::Holds
        } else {
            Verdict::Fails(why.to_string())
        }
    }
}

type Check = Box<dyn Fn() -> Result<Verdict> + Send + Sync>;
type Describe = Box<dyn Fn() -> serde_json::Value + Send + Sync>;

/// One instance: an id that sorts in generation order, the check, and a
/// replayable JSON description built only when needed.
pub(crate) struct Job {
    pub id: String,
    pub check: Check,
    pub describe: Describe,
}

impl Job {
    pub(crate) fn new(
        n: usize,
        label: impl Into<String>,
        check: impl Fn() -> Result<Verdict> + Send + Sync + 'static,
        describe: impl Fn() -> serde_json::Value + Send + Sync + 'static,
    ) -> Self {
        Job { id: format!("{n:06}:{}", label.into()), check: Box::new(check), describe: Box::new(describe) }
    }
}

/// A counterexample or an error, with the instance that produced it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub id: String,
    /// `"counterexample"` or `"error"`.
    pub kind: String,
    pub detail: String,
    pub instance: serde_json::Value,
}

/// Failures kept in full; the rest are counted only.
pub const MAX_RECORDED_FAILURES: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub anchor: String,
    pub statement: String,
    pub negative_control: bool,
    pub corpus: String,
    pub seed: u64,
    pub bound: usize,
    pub instances: usize,
    pub passes: usize,
    pub counterexamples: usize,
    pub errors: usize,
    /// The first failures by instance id.
    pub failures: Vec<Failure>,
    /// The failing instance with the shortest description.
    pub minimal_counterexample: Option<Failure>,
    /// All instances hold, or for a negative control, some instance fails
    /// and none errors.
    pub passed: bool,
    /// Left out of the JSON so that reports are byte-stable.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// One line: name, verdict and counts.
    pub fn summary(&self) -> String {
        format!(
            "{} [{}] {}: {} instances, {} hold, {} counterexamples, {} errors ({:.2?})",
            self.suite,
            self.anchor,
            if self.passed { "PASS" } else { "FAIL" },
            self.instances,
            self.passes,
            self.counterexamples,
            self.errors,
            self.wall_time
        )
    }
}

/// Runs `name` over the corpus described by `corpus`.
pub fn run_suite(name: &str, corpus: &Corpus) -> Result<VerificationReport> {
    let info = suite(name)?;
    if corpus.bound > info.max_bound {
        return Err(Error::SizeLimitExceeded { required: corpus.bound as u128, budget: info.max_bound as u128 });
    }
    let start = Instant::now();
    let (description, jobs) = suites::jobs(info, corpus)?;
    let mut results: Vec<(usize, Result<Verdict>)> =
        jobs.par_iter().enumerate().map(|(k, j)| (k, (j.check)())).collect();
    results.sort_by(|a, b| jobs[a.0].id.cmp(&jobs[b.0].id));

    let mut report = VerificationReport {
        suite: info.name.to_string(),
        anchor: info.anchor.to_string(),
        statement: info.statement.to_string(),
        negative_control: info.negative_control,
        corpus: description,
        seed: corpus.seed,
        bound: corpus.bound,
        instances: jobs.len(),
        passes: 0,
        counterexamples: 0,
        errors: 0,
        failures: Vec::new(),
        minimal_counterexample: None,
        passed: false,
        wall_time: Duration::ZERO,
    };
    let mut minimal: Option<(usize, Failure)> = None;
    for (k, r) in results {
        let (kind, detail) = match r {
            Ok(Verdict::Holds) => {
                report.passes += 1;
                continue;
            }
            Ok(Verdict::Fails(why)) => {
                report.counterexamples += 1;
                ("counterexample", why)
            }
            Err(e) => {
                report.errors += 1;
                ("error", e.to_string())
            }
        };
        let instance = (jobs[k].describe)();
        let size = instance.to_string().len();
        let failure = Failure { id: jobs[k].id.clone(), kind: kind.into(), detail, instance };
        if minimal.as_ref().is_none_or(|(s, _)| size < *s) {
            minimal = Some((size, failure.clone()));
        }
        if report.failures.len() < MAX_RECORDED_FAILURES {
            report.failures.push(failure);
        }
    }
    report.minimal_counterexample = minimal.map(|(_, f)| f);
    report.passed = if info.negative_control {
        report.counterexamples > 0 && report.errors == 0
    } else {
        report.counterexamples == 0 && report.errors == 0
    };
    report.wall_time = start.elapsed();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn registry_has_no_orphans_and_no_gaps() {
        let names: HashSet<&str> = suites().iter().map(|s| s.name).collect();
        assert_eq!(names.len(), suites().len(), "suite names are unique");
        for s in suites() {
            assert!(ANCHORS.contains(&s.anchor), "{} has an unknown anchor", s.name);
            assert!(s.default_bound <= s.max_bound);
        }
        for a in ANCHORS {
            assert!(suites().iter().any(|s| s.anchor == *a && !s.negative_control), "{a} has no positive suite");
        }
    }

    #[test]
    fn unknown_suites_are_rejected() {
        assert!(matches!(run_suite("no-such-suite", &Corpus::new(0, 1)), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn bounds_are_capped() {
        let s = suite("csd2-posets").unwrap();
        assert!(matches!(run_suite(s.name, &Corpus::new(0, s.max_bound + 1)), Err(Error::SizeLimitExceeded { .. })));
    }

    #[test]
    fn reports_are_deterministic() {
        let c = Corpus::new(3, 2);
        let a = run_suite("hom-change-no-orbit", &c).unwrap();
        let b = run_suite("hom-change-no-orbit", &c).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert!(a.passed, "{}", a.summary());
        assert!(a.minimal_counterexample.is_some());
    }
}
