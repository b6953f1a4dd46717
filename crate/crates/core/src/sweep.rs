//! Catalog sweep: runs every decider over the catalog, replays the
//! structural and permutability checks, and collects a deterministic report.
//!
//! Work items are spread over `jobs` workers in an order shuffled by `seed`,
//! then put back in catalog order, so the report does not depend on either.
//! Everything that legitimately varies between runs lives under a `timing`
//! key; [`strip_timing`] removes those before comparing reports.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::catalog::{factorization_cases, standard_catalog, CatalogEntry};
use crate::criteria::{
    criteria_report, is_supersoluble_chief, minimal_normal_complement_check,
    supersoluble_witnesses, CriterionReport, ReportOptions, SubgroupInfo, Thm1Mode,
};
use crate::error::{Error, Result};
use crate::group::{Group, Limits};
use crate::par::{self, Execution};
use crate::structure::{frattini, is_elementary_abelian, maschke_decompose, prime_divisors};
use crate::subgroups::{all_subgroups, minimal_normal_subgroups, normal_subgroups, product_set};
use crate::tcc::{
    corollary1_verify, corollary2_verify, lemma1_replay, tcc_permutable, CaseKind,
    CorollaryVerdict, FactorizationCase,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub max_order: usize,
    /// Structural proof-step checks run on groups up to this order.
    pub structure_max_order: usize,
    pub seed: u64,
    pub thm1_mode: Thm1Mode,
    pub limits: Limits,
    /// Worker count. Execution metadata, reported under `timing`.
    #[serde(skip)]
    pub jobs: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_order: 100,
            structure_max_order: 60,
            seed: 0,
            thm1_mode: Thm1Mode::AnySubgroup,
            limits: Limits::default(),
            jobs: 1,
        }
    }
}

/// Proof-step checks on one group.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureChecks {
    pub normal_subgroups: usize,
    pub frattini_order: usize,
    /// Normal subgroups `P` with `Φ(P) ≤ Φ(G)`.
    pub frattini_contained: usize,
    /// Elementary abelian normal subgroups written as a direct product of
    /// minimal normal subgroups of `G`.
    pub maschke_decomposed: usize,
    /// Elementary abelian normal subgroups with no such decomposition,
    /// neither Sylow nor meeting `Φ(G)` trivially.
    pub maschke_outside_hypothesis: usize,
    /// `(H1, N)` pairs with `|G:H1|` prime, `N` minimal normal, `N ⊄ H1`.
    pub complement_checks: usize,
    pub complement_true: usize,
    /// The multiset of chief factor orders is the same under both
    /// tie-breaking rules.
    pub chief_factors_stable: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupChecks {
    pub group_id: String,
    /// Constructive witnesses through Hall subgroups, for supersoluble groups.
    pub hall_witnesses: Option<BTreeMap<usize, SubgroupInfo>>,
    pub structure: Option<StructureChecks>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorizationRecord {
    #[serde(flatten)]
    pub verdict: CorollaryVerdict,
    /// For tcc cases: whether `(K, H)` is tcc-permutable too.
    pub tcc_reversed: Option<bool>,
    /// For tcc-permutable cases: number of conjugates `K^h` checked.
    pub lemma1_conjugates: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub groups_checked: usize,
    pub agreements: usize,
    pub supersoluble: usize,
    pub witnesses_emitted: usize,
    pub hall_witness_checks: usize,
    pub structure_groups: usize,
    pub frattini_checks: usize,
    pub maschke_decompositions: usize,
    pub maschke_outside_hypothesis: usize,
    pub complement_checks: usize,
    pub corollary_cases: usize,
    pub corollary_hypotheses_satisfied: usize,
    pub lemma1_conjugates_checked: usize,
    pub tcc_asymmetric_cases: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SweepTiming {
    pub total_ms: f64,
    pub jobs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub tool_version: String,
    pub config: SweepConfig,
    pub groups: Vec<CriterionReport>,
    pub checks: Vec<GroupChecks>,
    pub factorizations: Vec<FactorizationRecord>,
    pub summary: SweepSummary,
    /// Violations: deciders disagreeing, a witness failing its
    /// properties, a corollary or the conjugation lemma falsified.
    pub violations: Vec<String>,
    /// Budget or input errors that stopped a check from finishing.
    pub errors: Vec<String>,
    pub timing: SweepTiming,
}

impl SweepReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
            && self.errors.is_empty()
            && self.summary.agreements == self.summary.groups_checked
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serialises")
    }
}

/// Removes every `timing` key, at any depth.
pub fn strip_timing(value: &mut serde_json::Value) {
    match value {
        serde_json::Value::Object(map) => {
            map.remove("timing");
            map.values_mut().for_each(strip_timing);
        }
        serde_json::Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

/// Groups the sweep covers: the catalog up to `max_order`, under `limits`.
pub fn sweep_groups(config: &SweepConfig) -> Vec<CatalogEntry> {
    standard_catalog()
        .into_iter()
        .filter(|e| e.group.order() <= config.max_order)
        .map(|e| relimit(e, config.limits))
        .collect()
}

fn relimit(mut e: CatalogEntry, limits: Limits) -> CatalogEntry {
    if e.group.limits() != limits {
        e.group = e.group.relimit(limits);
    }
    e
}

fn relimit_case(c: FactorizationCase, limits: Limits) -> Result<FactorizationCase> {
    if c.group.limits() == limits {
        return Ok(c);
    }
    let g = c.group.relimit(limits);
    Ok(FactorizationCase {
        h: c.h.transfer(&g)?,
        k: c.k.transfer(&g)?,
        group: g,
        ..c
    })
}

/// Proof-step invariants on one group. Consistency failures come back as
/// errors; counts cover everything that was checked.
pub fn structure_checks(g: &Arc<Group>) -> Result<StructureChecks> {
    let phi_g = frattini(g)?;
    let normals = normal_subgroups(g)?;
    let minimal = minimal_normal_subgroups(g)?;
    let mut out = StructureChecks {
        normal_subgroups: normals.len(),
        frattini_order: phi_g.order(),
        ..Default::default()
    };

    for p in &normals {
        let phi_p = frattini(&p.to_group())?.transfer(g)?;
        if !phi_p.is_subgroup_of(&phi_g) {
            return Err(Error::Consistency(format!(
                "Frattini subgroup of a normal subgroup of order {} is not inside Φ(G)",
                p.order()
            )));
        }
        out.frattini_contained += 1;

        let primes = prime_divisors(p.order());
        if primes.len() == 1 && is_elementary_abelian(p, primes[0]) {
            match maschke_decompose(g, p) {
                Ok(d) => {
                    let product: usize = d.components.iter().map(|c| c.order()).product();
                    if product != p.order() {
                        return Err(Error::Consistency(
                            "component orders do not multiply to |P|".into(),
                        ));
                    }
                    out.maschke_decomposed += 1;
                }
                Err(Error::Precondition(_)) => out.maschke_outside_hypothesis += 1,
                Err(e) => return Err(e),
            }
        }
    }

    let supersoluble = is_supersoluble_chief(g)?;
    for h1 in all_subgroups(g)?.iter() {
        let idx = g.order() / h1.order();
        if !crate::structure::is_prime(idx) {
            continue;
        }
        for n in minimal.iter().filter(|n| !n.is_subgroup_of(h1)) {
            let fast = minimal_normal_complement_check(g, h1, n)?;
            let direct = product_set(n, h1)?.len() == g.order()
                && n.intersection(h1)?.is_trivial()
                && n.order() == idx;
            if fast != direct {
                return Err(Error::Consistency(
                    "complement check disagrees with direct computation".into(),
                ));
            }
            if supersoluble && !fast {
                return Err(Error::Consistency(format!(
                    "minimal normal subgroup of order {} is not a complement to an index-{idx} subgroup",
                    n.order()
                )));
            }
            out.complement_checks += 1;
            out.complement_true += fast as usize;
        }
    }

    let sorted = |mut v: Vec<usize>| {
        v.sort_unstable();
        v
    };
    let first = crate::structure::chief_series_with(g, crate::structure::TieBreak::CanonicalFirst)?;
    let last = crate::structure::chief_series_with(g, crate::structure::TieBreak::CanonicalLast)?;
    out.chief_factors_stable = sorted(first.factor_orders) == sorted(last.factor_orders);
    if !out.chief_factors_stable {
        return Err(Error::Consistency(
            "chief factor orders depend on tie-breaking".into(),
        ));
    }
    Ok(out)
}

struct GroupOutcome {
    report: CriterionReport,
    checks: GroupChecks,
    violations: Vec<String>,
    errors: Vec<String>,
}

fn record(err: Error, context: &str, violations: &mut Vec<String>, errors: &mut Vec<String>) {
    let msg = format!("{context}: {err}");
    if err.is_consistency() {
        violations.push(msg);
    } else {
        errors.push(msg);
    }
}

fn run_group(entry: &CatalogEntry, config: &SweepConfig) -> GroupOutcome {
    let g = &entry.group;
    let opts = ReportOptions {
        witnesses: true,
        thm1_mode: config.thm1_mode,
    };
    let report = criteria_report(g, &entry.name, opts);
    let mut violations = Vec::new();
    let mut errors = Vec::new();
    if let Err(e) = report.check_agreement() {
        violations.push(e.to_string());
    }
    for (criterion, msg) in &report.errors {
        let line = format!("{}: {criterion}: {msg}", entry.name);
        if msg.starts_with("internal consistency failure") {
            violations.push(line);
        } else {
            errors.push(line);
        }
    }

    let hall_witnesses = if report.verdict_chief == Some(true) && g.order() > 1 {
        match supersoluble_witnesses(g) {
            Ok(w) => Some(w.iter().map(|(&p, h)| (p, SubgroupInfo::of(h))).collect()),
            Err(e) => {
                record(
                    e,
                    &format!("{}: witnesses", entry.name),
                    &mut violations,
                    &mut errors,
                );
                None
            }
        }
    } else {
        None
    };

    let structure = if g.order() <= config.structure_max_order {
        match structure_checks(g) {
            Ok(s) => Some(s),
            Err(e) => {
                record(
                    e,
                    &format!("{}: structure", entry.name),
                    &mut violations,
                    &mut errors,
                );
                None
            }
        }
    } else {
        None
    };

    GroupOutcome {
        report,
        checks: GroupChecks {
            group_id: entry.name.clone(),
            hall_witnesses,
            structure,
        },
        violations,
        errors,
    }
}

fn run_case(case: &FactorizationCase) -> Result<FactorizationRecord> {
    let verdict = match case.kind {
        CaseKind::TotallyPermutable => corollary1_verify(case)?,
        CaseKind::Tcc => corollary2_verify(case)?,
    };
    let (tcc_reversed, lemma1_conjugates) = match case.kind {
        CaseKind::TotallyPermutable => (None, None),
        CaseKind::Tcc => {
            let reversed = tcc_permutable(&case.k, &case.h)?.permutable;
            let lemma = if verdict.permutable {
                Some(lemma1_replay(&case.h, &case.k)?)
            } else {
                None
            };
            (Some(reversed), lemma)
        }
    };
    Ok(FactorizationRecord {
        verdict,
        tcc_reversed,
        lemma1_conjugates,
    })
}

fn shuffled(len: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..len).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    order
}

/// Runs the whole sweep. Never fails: problems are collected in the report.
pub fn run_sweep(config: &SweepConfig) -> SweepReport {
    let start = Instant::now();
    let jobs = config.jobs.max(1);
    let entries = sweep_groups(config);
    let mut violations = Vec::new();
    let mut errors = Vec::new();

    let cases: Vec<FactorizationCase> = match factorization_cases() {
        Ok(cases) => cases
            .into_iter()
            .filter(|c| c.group.order() <= config.max_order)
            .map(|c| relimit_case(c, config.limits))
            .collect::<Result<Vec<_>>>()
            .unwrap_or_else(|e| {
                record(e, "factorization cases", &mut violations, &mut errors);
                vec![]
            }),
        Err(e) => {
            record(e, "factorization cases", &mut violations, &mut errors);
            vec![]
        }
    };

    let (group_outcomes, case_outcomes) = par::with_jobs(jobs, |exec: Execution| {
        let order = shuffled(entries.len(), config.seed);
        let mut groups: Vec<(usize, GroupOutcome)> =
            par::map(&order, exec, |&i| (i, run_group(&entries[i], config)));
        groups.sort_by_key(|(i, _)| *i);

        let order = shuffled(cases.len(), config.seed.wrapping_add(1));
        let mut cases_out: Vec<(usize, Result<FactorizationRecord>)> =
            par::map(&order, exec, |&i| (i, run_case(&cases[i])));
        cases_out.sort_by_key(|(i, _)| *i);
        (groups, cases_out)
    });

    let mut summary = SweepSummary::default();
    let mut groups = Vec::new();
    let mut checks = Vec::new();
    for (_, out) in group_outcomes {
        summary.groups_checked += 1;
        summary.agreements += out.report.agrees() as usize;
        summary.supersoluble += (out.report.verdict_chief == Some(true)) as usize;
        summary.witnesses_emitted += out.report.witnesses.as_ref().map_or(0, |w| w.len());
        summary.hall_witness_checks += out.checks.hall_witnesses.as_ref().map_or(0, |w| w.len());
        if let Some(s) = &out.checks.structure {
            summary.structure_groups += 1;
            summary.frattini_checks += s.frattini_contained;
            summary.maschke_decompositions += s.maschke_decomposed;
            summary.maschke_outside_hypothesis += s.maschke_outside_hypothesis;
            summary.complement_checks += s.complement_checks;
        }
        violations.extend(out.violations);
        errors.extend(out.errors);
        groups.push(out.report);
        checks.push(out.checks);
    }

    let mut factorizations = Vec::new();
    for (i, out) in case_outcomes {
        match out {
            Ok(rec) => {
                summary.corollary_cases += 1;
                summary.corollary_hypotheses_satisfied += rec.verdict.hypotheses_hold as usize;
                summary.lemma1_conjugates_checked += rec.lemma1_conjugates.unwrap_or(0);
                if rec
                    .tcc_reversed
                    .is_some_and(|r| r != rec.verdict.permutable)
                {
                    summary.tcc_asymmetric_cases += 1;
                }
                factorizations.push(rec);
            }
            Err(e) => record(e, &cases[i].name, &mut violations, &mut errors),
        }
    }

    SweepReport {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        config: config.clone(),
        groups,
        checks,
        factorizations,
        summary,
        violations,
        errors,
        timing: SweepTiming {
            total_ms: start.elapsed().as_secs_f64() * 1e3,
            jobs,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_only_sweep() {
        let config = SweepConfig {
            max_order: 1,
            ..Default::default()
        };
        let r = run_sweep(&config);
        assert_eq!(r.summary.groups_checked, 1);
        assert_eq!(r.groups[0].verdicts(), [Some(true); 3]);
        assert!(r.factorizations.is_empty());
        assert!(r.is_clean());
    }

    #[test]
    fn strip_timing_removes_nested_keys() {
        let mut v = serde_json::json!({
            "timing": 1,
            "a": [{"timing": {"x": 1}, "b": 2}],
        });
        strip_timing(&mut v);
        assert_eq!(v, serde_json::json!({"a": [{"b": 2}]}));
    }

    #[test]
    fn shuffle_is_seeded_permutation() {
        let a = shuffled(20, 7);
        assert_eq!(a, shuffled(20, 7));
        let mut sorted = a.clone();
        sorted.sort();
        assert_eq!(sorted, (0..20).collect::<Vec<_>>());
    }

    #[test]
    fn structure_checks_on_small_groups() {
        let s = structure_checks(&crate::catalog::symmetric(3).unwrap()).unwrap();
        assert_eq!(s.normal_subgroups, 3);
        assert_eq!(s.frattini_contained, 3);
        assert!(s.chief_factors_stable);
        let d4 = crate::catalog::dihedral(4).unwrap();
        let s = structure_checks(&d4).unwrap();
        assert!(s.maschke_outside_hypothesis >= 2);
    }
}
