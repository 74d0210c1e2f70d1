//! Runs `verify-all` and sorts its checks into the ten acceptance criteria.
//! Prints one `criterion N PASS|FAIL` line each, past the test harness's
//! output capture, before asserting.

use std::collections::BTreeSet;
use std::io::{self, Write};
use std::process::Command;
use std::thread;

use serde_json::Value;

const SEED: &str = "7";

fn verify_all(extra: &[&str]) -> (Option<i32>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_twistgroup"))
        .args(["verify-all", "--seed", SEED])
        .args(extra)
        .output()
        .expect("binary runs");
    (out.status.code(), out.stdout)
}

struct Check<'a> {
    name: &'a str,
    params: &'a Value,
    pass: bool,
}

impl Check<'_> {
    fn param(&self, key: &str) -> String {
        match &self.params[key] {
            Value::String(s) => s.clone(),
            Value::Null => String::new(),
            v => v.to_string(),
        }
    }
}

fn criterion(n: usize) -> fn(&Check) -> bool {
    match n {
        1 => |c| {
            let relation = c.name.starts_with("suzuki.") || c.name.starts_with("ree.");
            relation
                && !c.name.ends_with(".generators_member")
                && !c.name.ends_with(".closure")
                && !c.name.ends_with(".torus_only_if")
        },
        2 => |c| {
            c.name.ends_with(".generators_member") || c.name.ends_with(".closure") || c.name.ends_with(".torus_only_if")
        },
        3 => |c| c.name.starts_with("c2.mu_") || c.name.starts_with("g2.mu_"),
        4 => |c| c.name.starts_with("lab.") && !criterion(5)(c) && !criterion(6)(c),
        5 => |c| c.param("group") == "sz8" && c.name.starts_with("lab.derived_"),
        6 => |c| c.name == "lab.bruhat_census",
        7 => |c| c.name.starts_with("g2.") && !c.name.starts_with("g2.mu_"),
        8 => |c| c.name.starts_with("isogeny."),
        9 => |c| c.name.starts_with("mixed."),
        _ => |_| false,
    }
}

/// What each criterion must cover beyond "every matching check passes".
fn coverage(n: usize, checks: &[&Check]) -> Result<(), String> {
    let keys = |f: &dyn Fn(&Check) -> String| checks.iter().map(|c| f(c)).collect::<BTreeSet<_>>();
    let need = |have: BTreeSet<String>, want: &[&str]| {
        let missing: Vec<_> = want.iter().filter(|w| !have.contains(**w)).collect();
        if missing.is_empty() {
            Ok(())
        } else {
            Err(format!("missing {missing:?}"))
        }
    };
    match n {
        1 => {
            if checks.iter().any(|c| c.param("samples") != "500") {
                return Err("relation suite below 500 samples".into());
            }
            need(
                keys(&|c| format!("{}@{}", c.name.split('.').next().unwrap(), c.param("ring"))),
                &["suzuki@gf8", "suzuki@gf32", "ree@gf27", "ree@gf243"],
            )?;
            let sz = checks.iter().filter(|c| c.name.starts_with("suzuki.") && c.param("ring") == "gf8").count();
            let ree = checks.iter().filter(|c| c.name.starts_with("ree.") && c.param("ring") == "gf27").count();
            if sz < 7 || ree < 13 {
                return Err(format!("{sz} C2 and {ree} G2 identities"));
            }
            Ok(())
        }
        2 => {
            let closure_samples: BTreeSet<String> =
                checks.iter().filter(|c| c.name.ends_with(".closure")).map(|c| c.param("samples")).collect();
            if closure_samples != BTreeSet::from(["1000".to_string()]) {
                return Err(format!("closure samples {closure_samples:?}"));
            }
            need(
                keys(&|c| c.name.to_string()),
                &["suzuki.generators_member", "ree.generators_member", "suzuki.closure", "ree.closure"],
            )
        }
        3 => need(
            keys(&|c| format!("{}@{}", c.name, c.param("ring"))),
            &["c2.mu_law@gf8", "c2.mu_squared_is_frobenius@gf32", "g2.mu_law@gf27", "g2.mu_squared_is_frobenius@gf243"],
        ),
        4 => need(
            keys(&|c| format!("{}:{}={}", c.name, c.param("group"), c.param("expected"))),
            &[
                "lab.order:sz2=20",
                "lab.order:sz8=29120",
                "lab.order:ree3=1512",
                "lab.derived_order:ree3=504",
                "lab.derived_simple:ree3=",
            ],
        ),
        5 => need(
            keys(&|c| format!("{}={}", c.name, c.param("expected"))),
            &["lab.derived_order=29120", "lab.derived_simple="],
        ),
        6 => need(keys(&|c| format!("{}:{}", c.param("group"), c.param("borel"))), &["sz2:4", "sz8:448", "ree3:54"]),
        7 => need(
            keys(&|c| format!("{}@{}", c.name, c.param("ring"))),
            &[
                "g2.basis_listed@",
                "g2.brackets@Z",
                "g2.forms_preserved@gf3",
                "g2.forms_preserved@gf27",
                "g2.rank_mod_3@gf3",
            ],
        ),
        8 => {
            let configs = keys(&|c| format!("n{}.{}", c.param("n"), c.param("ring")));
            let want: Vec<String> =
                ["gf2", "gf4", "f2t"].iter().flat_map(|r| (2..=3).map(move |n| format!("n{n}.{r}"))).collect();
            need(configs, &want.iter().map(String::as_str).collect::<Vec<_>>())?;
            let kinds = keys(&|c| c.name.split('.').nth(1).unwrap_or_default().to_string());
            need(
                kinds,
                &[
                    "rho_law",
                    "theta_induced_action",
                    "quotient_dimension",
                    "u_invariance",
                    "clifford_norm",
                    "scliff",
                    "rho_theta_is_frobenius",
                    "theta_rho_is_frobenius",
                ],
            )
        }
        9 => need(
            keys(&|c| c.name.to_string()),
            &["mixed.b2_elementary_gens_member", "mixed.b2_non_member_rejected", "mixed.g2_elementary_gens_member"],
        ),
        _ => Ok(()),
    }
}

#[test]
fn acceptance() {
    let runs: Vec<_> = [&[][..], &[][..], &["--threads", "1"][..]]
        .into_iter()
        .map(|extra| thread::spawn(move || verify_all(extra)))
        .collect();
    let runs: Vec<_> = runs.into_iter().map(|h| h.join().unwrap()).collect();
    let (code, stdout) = &runs[0];

    let report: Value = serde_json::from_slice(stdout).expect("verify-all prints JSON");
    let checks: Vec<Check> = report["checks"]
        .as_array()
        .expect("checks array")
        .iter()
        .map(|c| Check { name: c["check"].as_str().unwrap(), params: &c["params"], pass: c["status"] == "pass" })
        .collect();

    let mut verdicts = Vec::new();
    for n in 1..=9 {
        let mine: Vec<&Check> = checks.iter().filter(|c| criterion(n)(c)).collect();
        let failing: Vec<&str> = mine.iter().filter(|c| !c.pass).map(|c| c.name).collect();
        let verdict = if mine.is_empty() {
            Err("no checks".to_string())
        } else if !failing.is_empty() {
            Err(format!("failing {failing:?}"))
        } else {
            coverage(n, &mine)
        };
        verdicts.push((n, mine.len(), verdict));
    }
    let identical = runs.iter().all(|(c, out)| c == code && out == stdout);
    verdicts.push((10, runs.len(), if identical { Ok(()) } else { Err("outputs differ".into()) }));

    let mut out = io::stdout().lock();
    for (n, count, verdict) in &verdicts {
        let _ = match verdict {
            Ok(()) => writeln!(out, "criterion {n} PASS ({count} checks)"),
            Err(why) => writeln!(out, "criterion {n} FAIL: {why}"),
        };
    }
    drop(out);
    let unclassified: Vec<&str> = checks.iter().filter(|c| !(1..=9).any(|n| criterion(n)(c))).map(|c| c.name).collect();
    assert!(unclassified.is_empty(), "unclassified checks {unclassified:?}");
    assert_eq!(*code, Some(0), "verify-all exit code");
    assert!(verdicts.iter().all(|(_, _, v)| v.is_ok()));
}
