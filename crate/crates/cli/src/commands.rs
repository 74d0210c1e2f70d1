use std::fs;

use serde_json::json;
use twistgroup_core::bc_isogeny::{self, IsogenySamples};
use twistgroup_core::group_lab::{self, GroupTable, LabGroup};
use twistgroup_core::linalg::MatJson;
use twistgroup_core::mixed::{self, RingPair};
use twistgroup_core::ree_g2::{self, Ree};
use twistgroup_core::report::CheckResult;
use twistgroup_core::suzuki_c2::{self, Suzuki};
use twistgroup_core::twisted::{membership_suite, torus_only_if_check, TwistedGroup};
use twistgroup_core::{Mat, Ring};

use crate::report::{Outcome, Report};
use crate::{IsogenyArgs, LabArgs, MixedArgs, MixedKind, ReeArgs, SuzukiArgs, TableArgs};

type Run<T> = std::result::Result<T, Outcome>;

fn finish(f: impl FnOnce() -> Run<Report>) -> Outcome {
    match f() {
        Ok(r) => Outcome::Report(r),
        Err(o) => o,
    }
}

fn ring(tag: &str) -> Run<Ring> {
    Ok(tag.parse::<Ring>()?)
}

/// A matrix given inline as JSON or as the path of a JSON file.
fn parse_element(arg: &str) -> Run<Mat> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| Outcome::Usage(format!("cannot read {arg}: {e}")))?
    };
    let j: MatJson = serde_json::from_str(&text).map_err(|e| Outcome::Usage(format!("invalid matrix JSON: {e}")))?;
    Ok(Mat::from_json(&j)?)
}

fn table(group: LabGroup, args: &TableArgs) -> Run<GroupTable> {
    let limit = args.limit.unwrap_or(group.default_limit());
    Ok(group_lab::cached_table(group, limit, args.cache.as_deref())?)
}

fn params(group: LabGroup) -> serde_json::Value {
    json!({"group": group.name()})
}

fn order_check(group: LabGroup, t: &GroupTable) -> CheckResult {
    let expected = group.expected_order();
    CheckResult::from_witness(
        "lab.order",
        json!({"group": group.name(), "expected": expected}),
        (t.order() as u64 != expected).then(|| format!("BFS found {}", t.order())),
    )
}

fn members_check(group: LabGroup, t: &GroupTable) -> Run<CheckResult> {
    let g = group.twisted()?;
    Ok(CheckResult::from_witness("lab.all_members", params(group), group_lab::all_members(t, g.as_ref())))
}

fn derived(group: LabGroup, t: &GroupTable) -> Run<(GroupTable, CheckResult)> {
    let d = group_lab::commutator_subgroup(t)?;
    let expected = group.expected_derived_order();
    let mut witness = None;
    if d.order() as u64 != expected {
        witness = Some(format!("[G,G] has order {}", d.order()));
    } else if !t.order().is_multiple_of(d.order()) {
        witness = Some("order of [G,G] does not divide |G|".into());
    }
    let c =
        CheckResult::from_witness("lab.derived_order", json!({"group": group.name(), "expected": expected}), witness);
    Ok((d, c))
}

/// Normal closures of random nontrivial elements of [G,G] inside [G,G].
fn simple_check(group: LabGroup, d: &GroupTable, count: usize, seed: u64) -> Run<CheckResult> {
    let closures = group_lab::random_normal_closures(d, count, seed)?;
    let bad = closures.iter().find(|&&(_, order)| order != d.order());
    Ok(CheckResult::from_witness(
        "lab.derived_simple",
        json!({"group": group.name(), "samples": count, "seed": seed}),
        bad.map(|(i, order)| format!("element {i} has normal closure of order {order}")),
    ))
}

fn census_check(group: LabGroup, t: &GroupTable) -> Run<(CheckResult, group_lab::BruhatCensus)> {
    let census = group_lab::bruhat_census(t, group.twisted()?.as_ref());
    let small = group.expected_borel_order() as usize;
    let witness = if let Some(f) = census.failures.first() {
        Some(f.clone())
    } else if census.identity_cell != small || census.w0_cell != t.order() - small {
        Some(format!("cells {} + {}", census.identity_cell, census.w0_cell))
    } else {
        None
    };
    let c = CheckResult::from_witness("lab.bruhat_census", json!({"group": group.name(), "borel": small}), witness);
    Ok((c, census))
}

fn frobenius_check(group: LabGroup, t: &GroupTable) -> CheckResult {
    let same = group_lab::frobenius_map_table(t).same_elements(t);
    CheckResult::from_witness("lab.frobenius_stable", params(group), (!same).then(|| "image differs".to_string()))
}

/// Every lab check for one group, in a fixed order.
fn lab_suite(report: &mut Report, group: LabGroup, simple: usize, seed: u64) -> Run<()> {
    let t = table(group, &TableArgs { limit: None, cache: None })?;
    report.check(order_check(group, &t));
    report.check(members_check(group, &t)?);
    let (d, c) = derived(group, &t)?;
    report.check(c);
    report.check(simple_check(group, &d, simple, seed)?);
    report.check(census_check(group, &t)?.0);
    report.check(frobenius_check(group, &t));
    Ok(())
}

fn suzuki_group(q: &str) -> Run<LabGroup> {
    Ok(LabGroup::parse(&format!("sz{q}"))?)
}

pub fn suzuki(a: &SuzukiArgs, seed: u64) -> Outcome {
    finish(|| {
        let mut report = Report::new("suzuki", seed);
        let q: u32 = a.q.parse().expect("validated by clap");
        let sz = Suzuki::over_order(q)?;
        let any = a.order || a.bruhat_all || a.relations.is_some();
        if a.relations.is_some() || !any {
            let n = a.relations.unwrap_or(100);
            report.checks(suzuki_c2::suzuki_relation_suite(sz.ring(), n, seed)?);
            report.checks(membership_suite(&sz, "suzuki", n, n, seed));
        }
        if a.order || a.bruhat_all {
            let group = suzuki_group(&a.q)?;
            let t = table(group, &a.table)?;
            report.result("order", t.order());
            report.check(order_check(group, &t));
            if a.bruhat_all {
                let (c, census) = census_check(group, &t)?;
                report.result("bruhat", census);
                report.check(c);
            }
        }
        Ok(report)
    })
}

pub fn ree(a: &ReeArgs, seed: u64) -> Outcome {
    finish(|| {
        let mut report = Report::new("ree", seed);
        let q: u32 = a.q.parse().expect("validated by clap");
        let ree = Ree::over_order(q)?;
        let any = a.order || a.derived_order || a.bruhat_all || a.relations.is_some();
        if a.relations.is_some() || !any {
            let n = a.relations.unwrap_or(100);
            report.checks(ree_g2::ree_relation_suite(ree.ring(), n, seed)?);
            report.checks(membership_suite(&ree, "ree", n, n, seed));
        }
        if a.order || a.derived_order || a.bruhat_all {
            if q != 3 {
                return Err(Outcome::Usage(format!("enumeration of ²G₂({q}) is out of reach; use --relations")));
            }
            let group = LabGroup::Ree3;
            let t = table(group, &a.table)?;
            report.result("order", t.order());
            report.check(order_check(group, &t));
            if a.derived_order {
                let (d, c) = derived(group, &t)?;
                report.result("derived_order", d.order());
                report.check(c);
            }
            if a.bruhat_all {
                let (c, census) = census_check(group, &t)?;
                report.result("bruhat", census);
                report.check(c);
            }
        }
        Ok(report)
    })
}

pub fn isogeny(a: &IsogenyArgs, seed: u64) -> Outcome {
    finish(|| {
        let mut report = Report::new("isogeny", seed);
        let n = a.n as usize;
        let r = ring(&a.ring)?;
        if a.theta || a.rho {
            let arg = a.element.as_deref().ok_or_else(|| Outcome::Usage("--theta and --rho need --element".into()))?;
            let g = parse_element(arg)?;
            if g.ring() != r {
                return Err(Outcome::Usage(format!("element is over {}, not {r}", g.ring())));
            }
            if a.theta {
                report.result("theta", bc_isogeny::theta(&g)?.to_json());
            }
            if a.rho {
                report.result("rho", bc_isogeny::rho(&g)?.to_json());
            }
        }
        if let Some(k) = a.check_frobenius {
            report.checks(bc_isogeny::frobenius_factorization_check(n, r, k, seed)?);
        }
        if let Some(k) = a.check_norm {
            report.checks(bc_isogeny::norm_check(n, r, k, seed)?);
        }
        if !(a.theta || a.rho || a.check_frobenius.is_some() || a.check_norm.is_some()) {
            report.checks(bc_isogeny::isogeny_suite(n, r, IsogenySamples::default(), seed)?);
        }
        Ok(report)
    })
}

pub fn mixed(a: &MixedArgs, seed: u64) -> Outcome {
    finish(|| {
        let mut report = Report::new("mixed", seed);
        let pair = RingPair::parse(&a.pair)?;
        let g = parse_element(&a.check_element)?;
        let verdict = match a.kind {
            MixedKind::Bc if g.rows() % 2 == 1 => mixed::mixed_member_bc(&g, &pair)?,
            MixedKind::Bc => mixed::mixed_member_c(&g, &pair)?,
            MixedKind::G2 => mixed::mixed_member_g2(&g, &pair)?,
        };
        if let Some(h) = &verdict.preimage {
            report.result("preimage", h.to_json());
        }
        report.check(CheckResult::from_witness(
            "mixed.member",
            json!({"pair": pair.to_string(), "type": format!("{:?}", a.kind).to_lowercase()}),
            verdict.witness,
        ));
        Ok(report)
    })
}

pub fn lab(a: &LabArgs, seed: u64) -> Outcome {
    finish(|| {
        let mut report = Report::new("lab", seed);
        let group = LabGroup::parse(&a.group)?;
        let t = table(group, &a.table)?;
        report.result("group", group.name());
        let any = a.derived || a.simple_check.is_some() || a.bruhat_census;
        if a.order || !any {
            report.result("order", t.order());
            report.check(order_check(group, &t));
        }
        if a.derived || a.simple_check.is_some() {
            let (d, c) = derived(group, &t)?;
            report.result("derived_order", d.order());
            report.check(c);
            if let Some(k) = a.simple_check {
                report.check(simple_check(group, &d, k, seed)?);
            }
        }
        if a.bruhat_census {
            let (c, census) = census_check(group, &t)?;
            report.result("bruhat", census);
            report.check(c);
        }
        Ok(report)
    })
}

pub fn verify_all(seed: u64) -> Outcome {
    finish(|| {
        let mut report = Report::new("verify-all", seed);
        for q in [8, 32] {
            report.checks(suzuki_c2::suzuki_relation_suite(Ring::gf_order(q)?, 500, seed)?);
        }
        for q in [27, 243] {
            report.checks(ree_g2::ree_relation_suite(Ring::gf_order(q)?, 500, seed)?);
        }
        for q in [8, 32] {
            report.checks(membership_suite(&Suzuki::over_order(q)?, "suzuki", 100, 1000, seed));
        }
        for q in [27, 243] {
            report.checks(membership_suite(&Ree::over_order(q)?, "ree", 100, 1000, seed));
        }
        for q in [8, 32] {
            report.checks(suzuki_c2::c2_mu_suite(Ring::gf_order(q)?, 50, 100, seed)?);
        }
        for q in [27, 243] {
            report.checks(ree_g2::g2_mu_suite(Ring::gf_order(q)?, 50, 100, seed)?);
        }
        for group in [LabGroup::Sz2, LabGroup::Sz8, LabGroup::Ree3] {
            lab_suite(&mut report, group, 20, seed)?;
        }
        let g2_rings = [Ring::gf_order(3)?, Ring::gf_order(27)?];
        report.checks(ree_g2::g2_foundations_suite(&g2_rings, 50, seed)?);
        for tag in ["gf2", "gf4", "f2t"] {
            for n in [2, 3] {
                report.checks(bc_isogeny::isogeny_suite(n, ring(tag)?, IsogenySamples::default(), seed)?);
            }
        }
        report.checks(mixed::mixed_suite(100, seed)?);
        for q in [8, 32] {
            let sz = Suzuki::over_order(q)?;
            report.check(torus_only_if_check(&sz, "suzuki", |a, b| sz.torus_candidate(a, b))?);
        }
        for q in [3, 27] {
            let ree = Ree::over_order(q)?;
            report.check(torus_only_if_check(&ree, "ree", |a, b| ree.torus_candidate(a, b))?);
        }
        Ok(report)
    })
}
