//! Verification reports: JSON document plus a one-row-per-check CSV.

use std::fs;
use std::path::Path;

use serde::Serialize;

use super::{BatchOptions, CheckId, TheoremCheck, Verdict};
use crate::error::Result;
use crate::polya::PolyaRecord;

pub const SCHEMA: &str = "nf-verify-report/1";

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub label: String,
    pub polya: Option<PolyaRecord>,
    pub results: Vec<TheoremCheck>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub entries: usize,
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: String,
    pub table: String,
    pub seed: u64,
    pub audit_bound: Option<u64>,
    pub checks: Vec<CheckId>,
    pub summary: Summary,
    pub entries: Vec<EntryReport>,
}

impl Report {
    pub fn new(opts: &BatchOptions, checks: &[CheckId], entries: Vec<EntryReport>) -> Self {
        let mut summary = Summary {
            entries: entries.len(),
            ..Summary::default()
        };
        for c in entries.iter().flat_map(|e| &e.results) {
            match c.verdict {
                Verdict::Pass => summary.pass += 1,
                Verdict::Fail => summary.fail += 1,
                Verdict::NotApplicable => summary.not_applicable += 1,
            }
        }
        Report {
            schema: SCHEMA.to_string(),
            table: opts.table_name.clone(),
            seed: opts.seed,
            audit_bound: opts.audit_bound,
            checks: checks.to_vec(),
            summary,
            entries,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn results(&self) -> impl Iterator<Item = &TheoremCheck> {
        self.entries.iter().flat_map(|e| &e.results)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap() + "\n"
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("entry,check,verdict,mode,gate\n");
        for c in self.results() {
            let mode = c
                .mode
                .map(|m| serde_json::to_value(m).unwrap().as_str().unwrap().to_string())
                .unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                csv_field(&c.entry),
                c.check,
                c.verdict.as_str(),
                mode,
                csv_field(&c.gate)
            ));
        }
        out
    }

    /// Writes `report.json` and `summary.csv` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("report.json"), self.to_json())?;
        fs::write(dir.join("summary.csv"), self.to_csv())?;
        Ok(())
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
