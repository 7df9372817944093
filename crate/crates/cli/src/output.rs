//! Report, summary and CSV artifacts, written atomically.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use adiabat::{CheckRecord, Report, Status};
use anyhow::Context;
use serde::Serialize;

#[derive(Debug, Clone)]
pub struct Table {
    pub file: String,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(file: &str, header: &[&'static str]) -> Self {
        Table {
            file: file.to_string(),
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn to_bytes(&self) -> anyhow::Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.into_inner().map_err(|e| anyhow::anyhow!("{e}"))
    }
}

/// Everything a subcommand produces.
#[derive(Debug, Default)]
pub struct Artifacts {
    pub report: Report,
    pub values: BTreeMap<String, f64>,
    pub tables: Vec<Table>,
}

impl Artifacts {
    pub fn check(&mut self, name: &str, ok: bool, checked: usize, witness: Option<String>) {
        self.report
            .push(CheckRecord::new(name, Status::from_bool(ok), checked, witness));
    }

    pub fn info(&mut self, name: &str, checked: usize, witness: Option<String>) {
        self.report.push(CheckRecord::new(name, Status::Info, checked, witness));
    }

    pub fn value(&mut self, key: impl Into<String>, v: f64) {
        self.values.insert(key.into(), v);
    }

    pub fn passed(&self) -> bool {
        !self.report.any_fail()
    }
}

#[derive(Serialize)]
struct CheckSummary<'a> {
    name: &'a str,
    status: &'static str,
    checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a str>,
}

#[derive(Serialize)]
struct Summary<'a> {
    subcommand: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    scenario: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<String>,
    status: &'static str,
    values: &'a BTreeMap<String, f64>,
    checks: Vec<CheckSummary<'a>>,
}

pub fn summary_toml(
    subcommand: &str,
    scenario: Option<&str>,
    seed: Option<u64>,
    a: &Artifacts,
) -> anyhow::Result<String> {
    let s = Summary {
        subcommand,
        scenario,
        seed: seed.map(|s| s.to_string()),
        status: if a.passed() { "pass" } else { "fail" },
        values: &a.values,
        checks: a
            .report
            .records
            .iter()
            .map(|r| CheckSummary {
                name: &r.name,
                status: r.status.as_str(),
                checked: r.checked,
                witness: r.witness.as_deref(),
            })
            .collect(),
    };
    Ok(toml::to_string(&s)?)
}

pub fn write_atomic(dir: &Path, name: &str, bytes: &[u8]) -> anyhow::Result<()> {
    let tmp = dir.join(format!(".{name}.tmp"));
    let dst = dir.join(name);
    fs::write(&tmp, bytes).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, &dst).with_context(|| format!("renaming to {}", dst.display()))?;
    Ok(())
}

pub fn write_all(dir: &Path, summary: &str, a: &Artifacts) -> anyhow::Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    write_atomic(dir, "report.txt", a.report.to_string().as_bytes())?;
    write_atomic(dir, "summary.toml", summary.as_bytes())?;
    for t in &a.tables {
        write_atomic(dir, &t.file, &t.to_bytes()?)?;
    }
    Ok(())
}

pub fn num(v: f64) -> String {
    v.to_string()
}
