#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Run {
    pub code: i32,
    pub out: PathBuf,
    pub stdout: String,
    pub stderr: String,
}

impl Run {
    pub fn summary(&self) -> toml::Table {
        let text = std::fs::read_to_string(self.out.join("summary.toml")).expect("summary.toml");
        text.parse().expect("summary parses")
    }

    pub fn value(&self, key: &str) -> f64 {
        let s = self.summary();
        s["values"][key]
            .as_float()
            .unwrap_or_else(|| panic!("missing value {key}"))
    }

    pub fn status(&self, check: &str) -> Option<String> {
        let s = self.summary();
        s.get("checks")?
            .as_array()?
            .iter()
            .find_map(|c| (c["name"].as_str() == Some(check)).then(|| c["status"].as_str().unwrap().to_string()))
    }

    pub fn checked(&self, check: &str) -> i64 {
        let s = self.summary();
        s["checks"]
            .as_array()
            .and_then(|a| a.iter().find(|c| c["name"].as_str() == Some(check)))
            .and_then(|c| c["checked"].as_integer())
            .unwrap_or(0)
    }

    pub fn witness(&self, check: &str) -> Option<String> {
        let s = self.summary();
        s.get("checks")?.as_array()?.iter().find_map(|c| {
            (c["name"].as_str() == Some(check)).then(|| c.get("witness")?.as_str().map(str::to_string))?
        })
    }

    /// Rows of a CSV artifact, header excluded.
    pub fn csv(&self, file: &str) -> Vec<Vec<String>> {
        let mut r = csv::Reader::from_path(self.out.join(file)).expect("csv opens");
        r.records()
            .map(|rec| rec.unwrap().iter().map(str::to_string).collect())
            .collect()
    }
}

pub fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name)
}

pub fn run(args: &[&str], out: &Path) -> Run {
    let o = Command::new(env!("CARGO_BIN_EXE_adiabat"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs");
    Run {
        code: o.status.code().unwrap_or(-1),
        out: out.to_path_buf(),
        stdout: String::from_utf8_lossy(&o.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&o.stderr).into_owned(),
    }
}

/// Runs a subcommand on an inline config written to `dir/name.toml`.
pub fn run_inline(cmd: &str, config: &str, dir: &Path, name: &str) -> Run {
    let path = dir.join(format!("{name}.toml"));
    std::fs::write(&path, config).unwrap();
    run(&[cmd, "--config", path.to_str().unwrap()], &dir.join(name))
}

pub fn run_scenario(cmd: &str, file: &str, out: &Path) -> Run {
    run(&[cmd, "--config", scenario(file).to_str().unwrap()], out)
}
