//! Golden files: derived constants pinned per check id and re-checked for drift.

use crate::instance::Instance;
use crate::report::Report;
use crate::suites::run_plan;
use serde_json::Value;
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;

pub type GoldenFile = BTreeMap<String, BTreeMap<String, Value>>;

#[derive(Debug, Error)]
pub enum GoldenError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed golden file {path}: {source}")]
    Parse { path: String, source: serde_json::Error },
    #[error("check {0} failed while regenerating: {1}")]
    Failed(String, String),
}

/// The checks whose constants are pinned: oscillator signs per `(q, ψ)` and the degrees and
/// signs that other checks rely on.
pub fn golden_plan() -> Vec<(&'static str, Instance)> {
    let psi = |q, a| Instance::Twisted { q, d: 2, psi_power: a };
    let mut plan = vec![
        ("oscillator", psi(3, 1)),
        ("oscillator", psi(3, 2)),
        ("oscillator", psi(5, 1)),
        ("oscillator", psi(5, 2)),
        ("s-structure", Instance::named("quaternion")),
        ("s-structure", psi(3, 1)),
        ("s-structure", psi(5, 1)),
        ("anti-involution", psi(3, 1)),
        ("endx", Instance::named("quaternion")),
        ("endx", psi(3, 1)),
        ("splitcase", Instance::named("m2")),
    ];
    plan.extend(crate::instance::EXAMPLES.iter().map(|e| ("eta", Instance::example(e))));
    plan
}

pub fn regenerate(seed: u64) -> Result<GoldenFile, GoldenError> {
    let reports = run_plan(&golden_plan(), seed, false);
    let mut g = GoldenFile::new();
    for r in reports {
        if !r.passed() {
            return Err(GoldenError::Failed(r.check, r.witness.unwrap_or_default()));
        }
        g.insert(r.check, r.derived);
    }
    Ok(g)
}

pub fn render(g: &GoldenFile) -> String {
    let mut s = serde_json::to_string_pretty(g).expect("serializable");
    s.push('\n');
    s
}

pub fn load(path: &Path) -> Result<GoldenFile, GoldenError> {
    let p = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| GoldenError::Io { path: p.clone(), source })?;
    if text.trim().is_empty() {
        return Ok(GoldenFile::new());
    }
    serde_json::from_str(&text).map_err(|source| GoldenError::Parse { path: p, source })
}

/// One problem per drifting, missing or stale key.
pub fn compare(pinned: &GoldenFile, fresh: &[Report]) -> Vec<String> {
    let mut problems = Vec::new();
    for r in fresh {
        let Some(keys) = pinned.get(&r.check) else {
            problems.push(format!("missing: {}", r.check));
            continue;
        };
        if !r.passed() {
            problems.push(format!("failed: {} ({})", r.check, r.witness.as_deref().unwrap_or("")));
        }
        for (k, v) in &r.derived {
            match keys.get(k) {
                None => problems.push(format!("missing: {} {k}", r.check)),
                Some(p) if p != v => problems.push(format!("drift: {} {k}: pinned {p}, computed {v}", r.check)),
                Some(_) => {}
            }
        }
        for k in keys.keys().filter(|k| !r.derived.contains_key(*k)) {
            problems.push(format!("stale: {} {k}", r.check));
        }
    }
    let fresh_ids: Vec<&str> = fresh.iter().map(|r| r.check.as_str()).collect();
    for id in pinned.keys().filter(|id| !fresh_ids.contains(&id.as_str())) {
        problems.push(format!("stale: {id}"));
    }
    problems
}

pub fn check(pinned: &GoldenFile, seed: u64) -> Vec<String> {
    compare(pinned, &run_plan(&golden_plan(), seed, false))
}
