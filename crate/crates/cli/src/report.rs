use std::fs;
use std::path::Path;
use std::process::ExitCode;

use serde::Serialize;
use serde_json::{Map, Value};
use twistgroup_core::report::{CheckResult, Status};
use twistgroup_core::Error;

#[derive(Serialize, Debug, Default)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

/// The JSON document printed by every subcommand.
#[derive(Serialize, Debug)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Map::is_empty")]
    pub results: Map<String, Value>,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: &str, seed: u64) -> Report {
        Report { command: command.into(), seed, results: Map::new(), checks: Vec::new(), summary: Summary::default() }
    }

    pub fn result(&mut self, key: &str, value: impl Serialize) {
        self.results.insert(key.into(), serde_json::to_value(value).expect("serialisable result"));
    }

    pub fn check(&mut self, c: CheckResult) {
        self.checks.push(c);
    }

    pub fn checks(&mut self, cs: impl IntoIterator<Item = CheckResult>) {
        self.checks.extend(cs);
    }

    fn tally(&mut self) {
        let count = |s: Status| self.checks.iter().filter(|c| c.status == s).count();
        self.summary = Summary {
            total: self.checks.len(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            skipped: count(Status::Skipped),
        };
    }

    pub fn emit(mut self, path: Option<&Path>) -> ExitCode {
        self.tally();
        let text = serde_json::to_string_pretty(&self).expect("serialisable report") + "\n";
        print!("{text}");
        if let Some(path) = path {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        if self.summary.failed > 0 {
            ExitCode::from(1)
        } else {
            ExitCode::SUCCESS
        }
    }
}

pub enum Outcome {
    Report(Report),
    Usage(String),
    Failed(String),
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Outcome {
        match e {
            Error::Parse(_) | Error::DimMismatch(_) | Error::RingMismatch(..) | Error::WrongCharacteristic { .. } => {
                Outcome::Usage(e.to_string())
            }
            e => Outcome::Failed(e.to_string()),
        }
    }
}
