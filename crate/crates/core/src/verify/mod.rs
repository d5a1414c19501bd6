//! Named invariant checks. The manifest lists every check that `verify all`
//! must run; a registry that disagrees with it is itself a failure.

mod checks;

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

pub const MANIFEST: &str = include_str!("manifest.txt");

pub type CheckFn = fn() -> Result<String, String>;

pub fn registry() -> Vec<(&'static str, CheckFn)> {
    checks::REGISTRY.to_vec()
}

pub fn manifest_names() -> Vec<&'static str> {
    MANIFEST.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect()
}

pub fn suites() -> Vec<&'static str> {
    let mut s: Vec<&str> = manifest_names().iter().filter_map(|n| n.split('.').next()).collect();
    s.dedup();
    s.insert(0, "all");
    s
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct VerifyReport {
    pub suite: String,
    pub manifest_matches: bool,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

pub fn run_check(name: &str) -> Option<CheckResult> {
    let (_, f) = checks::REGISTRY.iter().find(|(n, _)| *n == name)?;
    let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("check panicked".into()));
    Some(match outcome {
        Ok(detail) => CheckResult { name: name.into(), passed: true, detail },
        Err(detail) => CheckResult { name: name.into(), passed: false, detail },
    })
}

/// Runs `suite` (`all` or a module prefix); `None` for an unknown suite.
pub fn run_suite(suite: &str) -> Option<VerifyReport> {
    let manifest = manifest_names();
    let registered: BTreeSet<&str> = checks::REGISTRY.iter().map(|(n, _)| *n).collect();
    let listed: BTreeSet<&str> = manifest.iter().copied().collect();
    let manifest_matches = registered == listed && listed.len() == manifest.len();
    let selected: Vec<&str> =
        manifest.iter().copied().filter(|n| suite == "all" || n.split('.').next() == Some(suite)).collect();
    if selected.is_empty() {
        return None;
    }
    let mut checks: Vec<CheckResult> = selected
        .par_iter()
        .map(|n| {
            run_check(n).unwrap_or_else(|| CheckResult {
                name: n.to_string(),
                passed: false,
                detail: "listed in the manifest but not registered".into(),
            })
        })
        .collect();
    if !manifest_matches {
        let extra: Vec<&str> = registered.difference(&listed).copied().collect();
        let missing: Vec<&str> = listed.difference(&registered).copied().collect();
        checks.push(CheckResult {
            name: "manifest".into(),
            passed: false,
            detail: format!("registered but not listed: {extra:?}; listed but not registered: {missing:?}"),
        });
    }
    let passed = manifest_matches && checks.iter().all(|c| c.passed);
    Some(VerifyReport { suite: suite.into(), manifest_matches, checks, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_matches_registry() {
        let listed: BTreeSet<&str> = manifest_names().into_iter().collect();
        let registered: BTreeSet<&str> = registry().into_iter().map(|(n, _)| n).collect();
        assert_eq!(listed, registered);
        assert_eq!(listed.len(), manifest_names().len());
        assert!(run_suite("nonsense").is_none());
    }

    #[test]
    fn cheap_suites_pass() {
        for suite in ["cartan", "hecke", "langlands", "cli"] {
            let r = run_suite(suite).unwrap();
            for c in &r.checks {
                assert!(c.passed, "{}: {}", c.name, c.detail);
            }
        }
    }
}
