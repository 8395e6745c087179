//! The JSON report written by every command.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use wpyramid_core::walgebra::{CheckReport, Status as CoreStatus};

pub const SCHEMA: &str = "wpyramid-report/1";

/// Failure witnesses kept per job; the count of failures is always exact.
pub const MAX_WITNESSES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// A size guard stopped the job before it ran.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub check_id: String,
    pub instance: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Number of individual checks behind a job-level record.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checked: Option<usize>,
}

impl Record {
    pub fn job(check_id: &str, instance: &str, rep: &CheckReport) -> Record {
        Record {
            check_id: check_id.to_string(),
            instance: instance.to_string(),
            status: if rep.passed() { Status::Pass } else { Status::Fail },
            witness: (!rep.passed()).then(|| format!("{} of {} checks failed", rep.failures(), rep.checked)),
            checked: Some(rep.checked),
        }
    }

    pub fn skipped(check_id: &str, instance: &str, reason: String) -> Record {
        Record {
            check_id: check_id.to_string(),
            instance: instance.to_string(),
            status: Status::Skipped,
            witness: Some(reason),
            checked: None,
        }
    }

    pub fn single(check_id: &str, instance: &str, ok: bool, witness: Option<String>) -> Record {
        Record {
            check_id: check_id.to_string(),
            instance: instance.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            witness,
            checked: Some(1),
        }
    }

    /// The job record followed by its failure records.
    pub fn expand(check_id: &str, instance: &str, rep: &CheckReport) -> Vec<Record> {
        let mut out = vec![Record::job(check_id, instance, rep)];
        for r in rep.records.iter().filter(|r| r.status == CoreStatus::Fail).take(MAX_WITNESSES) {
            out.push(Record {
                check_id: r.check_id.clone(),
                instance: format!("{instance}: {}", r.instance),
                status: Status::Fail,
                witness: r.witness.clone(),
                checked: None,
            });
        }
        out
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub jobs: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    /// Individual checks across all jobs.
    pub checks: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub seed: u64,
    pub config: serde_json::Value,
    pub records: Vec<Record>,
    /// Command-specific results, such as per-pyramid data.
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub data: BTreeMap<String, serde_json::Value>,
    pub summary: Summary,
}

/// Overall verdict, also the process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    GuardSkip,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::GuardSkip => 3,
        }
    }
}

impl Report {
    pub fn new(command: &str, seed: u64, config: &impl Serialize, records: Vec<Record>) -> Report {
        let mut summary = Summary::default();
        for r in &records {
            // failure detail lines carry no `checked` count and are not jobs
            let Some(n) = r.checked else {
                if r.status == Status::Skipped {
                    summary.jobs += 1;
                    summary.skipped += 1;
                }
                continue;
            };
            summary.jobs += 1;
            summary.checks += n;
            match r.status {
                Status::Pass => summary.passed += 1,
                Status::Fail => summary.failed += 1,
                Status::Skipped => summary.skipped += 1,
            }
        }
        Report {
            schema: SCHEMA.to_string(),
            command: command.to_string(),
            seed,
            config: serde_json::to_value(config).expect("configuration serializes"),
            records,
            data: BTreeMap::new(),
            summary,
        }
    }

    pub fn outcome(&self) -> Outcome {
        if self.summary.failed > 0 {
            Outcome::Fail
        } else if self.summary.skipped > 0 {
            Outcome::GuardSkip
        } else {
            Outcome::Pass
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn outcome_trichotomy() {
        let pass = Record::single("a", "x", true, None);
        let fail = Record::single("a", "y", false, Some("w".into()));
        let skip = Record::skipped("a", "z", "guard".into());
        let cfg = serde_json::json!({});
        assert_eq!(Report::new("t", 0, &cfg, vec![pass.clone()]).outcome(), Outcome::Pass);
        assert_eq!(Report::new("t", 0, &cfg, vec![pass.clone(), skip.clone()]).outcome(), Outcome::GuardSkip);
        let r = Report::new("t", 0, &cfg, vec![pass, skip, fail]);
        assert_eq!(r.outcome(), Outcome::Fail);
        assert_eq!((r.summary.jobs, r.summary.passed, r.summary.failed, r.summary.skipped), (3, 1, 1, 1));
    }

    #[test]
    fn round_trip() {
        let r = Report::new("t", 9, &serde_json::json!({"k": 1}), vec![Record::single("a", "x", true, None)]);
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }
}
