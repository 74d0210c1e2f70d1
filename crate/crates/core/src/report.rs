//! Pass/fail records shared by the relation suites, the acceptance checks and
//! the CLI.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The check has no admissible parameters for this input, e.g. ε ∉ {0,1} over GF(2).
    Skipped,
}

/// One line of a report: `{check, params, status, witness?}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub params: Value,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckResult {
    pub fn pass(check: impl Into<String>, params: Value) -> CheckResult {
        CheckResult { check: check.into(), params, status: Status::Pass, witness: None }
    }

    pub fn fail(check: impl Into<String>, params: Value, witness: impl Into<String>) -> CheckResult {
        CheckResult { check: check.into(), params, status: Status::Fail, witness: Some(witness.into()) }
    }

    pub fn skipped(check: impl Into<String>, params: Value, reason: impl Into<String>) -> CheckResult {
        CheckResult { check: check.into(), params, status: Status::Skipped, witness: Some(reason.into()) }
    }

    /// Pass when `witness` is `None`.
    pub fn from_witness(check: impl Into<String>, params: Value, witness: Option<String>) -> CheckResult {
        match witness {
            None => CheckResult::pass(check, params),
            Some(w) => CheckResult::fail(check, params, w),
        }
    }

    pub fn is_failure(&self) -> bool {
        self.status == Status::Fail
    }
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// Independent RNG for sample `index` of the check `label` under `seed`.
pub fn sample_rng(seed: u64, label: &str, index: u64) -> ChaCha8Rng {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed.to_le_bytes());
    bytes[8..16].copy_from_slice(&fnv1a(label).to_le_bytes());
    bytes[16..24].copy_from_slice(&index.to_le_bytes());
    ChaCha8Rng::from_seed(bytes)
}

/// Evaluates `sample` for indices `0..samples` in parallel and reports the
/// lowest failing index. `sample` returns `Ok(None)` on success and a witness
/// description otherwise.
pub fn run_samples<F>(check: &str, params: Value, seed: u64, samples: usize, sample: F) -> CheckResult
where
    F: Fn(&mut ChaCha8Rng) -> Result<Option<String>> + Sync,
{
    let first_failure = (0..samples as u64)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = sample_rng(seed, check, i);
            match sample(&mut rng) {
                Ok(None) => None,
                Ok(Some(w)) => Some((i, w)),
                Err(e) => Some((i, format!("error: {e}"))),
            }
        })
        .min_by_key(|(i, _)| *i);
    CheckResult::from_witness(check, params, first_failure.map(|(i, w)| format!("sample {i}: {w}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn sample_streams_are_reproducible_and_distinct() {
        let a: u64 = sample_rng(7, "x", 3).gen();
        let b: u64 = sample_rng(7, "x", 3).gen();
        let c: u64 = sample_rng(7, "y", 3).gen();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn lowest_failure_is_reported() {
        let r = run_samples("t", Value::Null, 1, 50, |rng| {
            let _: u8 = rng.gen();
            Ok(None)
        });
        assert_eq!(r.status, Status::Pass);
        let r = run_samples("t", Value::Null, 1, 50, |_| Ok(Some("bad".to_string())));
        assert_eq!(r.witness.as_deref(), Some("sample 0: bad"));
    }

    #[test]
    fn witness_is_omitted_on_pass() {
        let s = serde_json::to_string(&CheckResult::pass("c", Value::Null)).unwrap();
        assert_eq!(s, r#"{"check":"c","params":null,"status":"pass"}"#);
    }
}
