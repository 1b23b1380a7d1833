//! Corpus runs: every group analysed in parallel, aggregated deterministically.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use mckay_core::corpus::full_corpus;
use mckay_core::{Analysis, DiagonalGroup};
use rayon::prelude::*;
use serde::Serialize;

use crate::json::{verify_report, VerifyReport};

#[derive(Debug, Clone)]
pub struct CorpusSpec {
    pub max_order: u32,
    /// Extra groups on top of the generated cyclic ones.
    pub groups: Vec<String>,
    pub jobs: Option<usize>,
    /// Per-group reports are written here when set.
    pub out: Option<PathBuf>,
}

#[derive(Debug, Serialize, PartialEq, Eq)]
pub struct GroupLine {
    pub group: String,
    pub pass: bool,
    pub error: Option<String>,
}

#[derive(Debug, Serialize, PartialEq, Eq)]
pub struct CorpusSummary {
    pub max_order: u32,
    pub groups: usize,
    pub passed: usize,
    pub failed: Vec<String>,
    pub characters: usize,
    pub vertex_cases: BTreeMap<String, usize>,
    pub shapes: BTreeMap<String, usize>,
    pub marking_classes: BTreeMap<String, usize>,
    pub per_group: Vec<GroupLine>,
}

impl CorpusSummary {
    pub fn pass(&self) -> bool {
        self.failed.is_empty()
    }
}

fn group_names(spec: &CorpusSpec) -> Vec<String> {
    let mut names = full_corpus(spec.max_order);
    for g in &spec.groups {
        if !names.contains(g) {
            names.push(g.clone());
        }
    }
    names
}

fn analyse(name: &str) -> std::result::Result<(Analysis, VerifyReport), String> {
    let g: DiagonalGroup = name.parse().map_err(|e: mckay_core::Error| e.to_string())?;
    let a = Analysis::run(&g).map_err(|e| e.to_string())?;
    let r = verify_report(&a);
    Ok((a, r))
}

pub fn run_corpus(spec: &CorpusSpec) -> Result<CorpusSummary> {
    let names = group_names(spec);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.jobs.unwrap_or(0))
        .build()
        .context("thread pool")?;
    // par_iter over a Vec keeps input order in collect
    let results: Vec<_> = pool.install(|| names.par_iter().map(|n| analyse(n)).collect());

    if let Some(dir) = &spec.out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let mut summary = CorpusSummary {
        max_order: spec.max_order,
        groups: names.len(),
        passed: 0,
        failed: Vec::new(),
        characters: 0,
        vertex_cases: BTreeMap::new(),
        shapes: BTreeMap::new(),
        marking_classes: BTreeMap::new(),
        per_group: Vec::new(),
    };
    for (name, res) in names.iter().zip(results) {
        let line = match res {
            Err(e) => GroupLine {
                group: name.clone(),
                pass: false,
                error: Some(e),
            },
            Ok((a, report)) => {
                for r in a.fan.exceptional() {
                    *summary.vertex_cases.entry(a.marked.vertices[r].0.to_string()).or_default() += 1;
                }
                for (_, s) in a.divisor_shapes() {
                    let tag = s.map_or_else(|| "none".to_string(), |s| s.to_string());
                    *summary.shapes.entry(tag).or_default() += 1;
                }
                for c in &a.classes {
                    *summary.marking_classes.entry(c.name().to_string()).or_default() += 1;
                }
                summary.characters += a.theorem.len();
                if let Some(dir) = &spec.out {
                    let file = dir.join(format!("{}.json", name.replace([':', ','], "_").replace('+', "-")));
                    fs::write(&file, serde_json::to_string_pretty(&report)? + "\n")
                        .with_context(|| format!("writing {}", file.display()))?;
                }
                GroupLine {
                    group: name.clone(),
                    pass: report.summary.pass,
                    error: None,
                }
            }
        };
        if line.pass {
            summary.passed += 1;
        } else {
            summary.failed.push(name.clone());
        }
        summary.per_group.push(line);
    }
    if let Some(dir) = &spec.out {
        fs::write(dir.join("summary.json"), serde_json::to_string_pretty(&summary)? + "\n")?;
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(max_order: u32, jobs: usize) -> CorpusSpec {
        CorpusSpec {
            max_order,
            groups: Vec::new(),
            jobs: Some(jobs),
            out: None,
        }
    }

    #[test]
    fn small_corpus_passes() {
        let s = run_corpus(&spec(6, 2)).unwrap();
        assert!(s.pass(), "{:?}", s.failed);
        assert_eq!(s.groups, s.per_group.len());
    }

    #[test]
    fn result_is_independent_of_jobs() {
        assert_eq!(run_corpus(&spec(9, 1)).unwrap(), run_corpus(&spec(9, 4)).unwrap());
    }

    #[test]
    fn bad_extra_group_is_a_failure() {
        let mut s = spec(1, 1);
        s.groups.push("5:1,1,2".into());
        let out = run_corpus(&s).unwrap();
        assert_eq!(out.failed, vec!["5:1,1,2".to_string()]);
    }
}
