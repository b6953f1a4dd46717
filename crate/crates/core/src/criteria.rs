//! Three independent supersolubility deciders and the witness machinery for
//! the per-prime index criterion.
//!
//! * chief: every chief factor has prime order.
//! * maximal-index: every maximal subgroup has prime index.
//! * per-prime index: for every prime `p` dividing `|G|` there is a
//!   supersoluble subgroup of index `p`.
//!
//! The three must agree on every group. A disagreement is reported as
//! [`Error::Consistency`], never as a verdict.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::structure::{chief_series, hall_complement, is_prime, primes_of};
use crate::subgroups::{
    all_subgroups, index, maximal_subgroups, minimal_normal_subgroups, product_set,
};

/// Supersoluble iff every chief factor has prime order. Prime-order groups
/// are cyclic, so factor orders are all that is needed.
pub fn is_supersoluble_chief(g: &Arc<Group>) -> Result<bool> {
    Ok(chief_series(g)?.factor_orders.iter().all(|&n| is_prime(n)))
}

/// Chief-series verdict for a subgroup, judged as a group in its own right.
pub fn subgroup_is_supersoluble(h: &Subgroup) -> Result<bool> {
    if h.is_whole() {
        return is_supersoluble_chief(h.parent());
    }
    is_supersoluble_chief(&h.to_group())
}

/// Supersoluble iff every maximal subgroup has prime index.
pub fn is_supersoluble_huppert(g: &Arc<Group>) -> Result<bool> {
    Ok(maximal_subgroups(g)?
        .iter()
        .all(|m| is_prime(g.order() / m.order())))
}

/// Which subgroups the per-prime index search may use. Prime-index
/// subgroups are always maximal, so both modes give the same verdicts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Thm1Mode {
    #[default]
    AnySubgroup,
    MaximalOnly,
}

/// For each prime `p` dividing `|G|`, the first supersoluble subgroup of
/// index `p` found scanning the lattice from the top down.
pub fn index_p_witnesses(
    g: &Arc<Group>,
    mode: Thm1Mode,
) -> Result<BTreeMap<usize, Option<Subgroup>>> {
    let pool: Vec<Subgroup> = match mode {
        Thm1Mode::AnySubgroup => all_subgroups(g)?.subgroups,
        Thm1Mode::MaximalOnly => maximal_subgroups(g)?,
    };
    let mut out = BTreeMap::new();
    for p in primes_of(g) {
        let mut found = None;
        for h in pool.iter().rev().filter(|h| h.order() * p == g.order()) {
            if subgroup_is_supersoluble(h)? {
                found = Some(h.clone());
                break;
            }
        }
        out.insert(p, found);
    }
    Ok(out)
}

pub fn is_supersoluble_thm1(g: &Arc<Group>) -> Result<bool> {
    is_supersoluble_thm1_with(g, Thm1Mode::AnySubgroup)
}

pub fn is_supersoluble_thm1_with(g: &Arc<Group>, mode: Thm1Mode) -> Result<bool> {
    Ok(index_p_witnesses(g, mode)?.values().all(Option::is_some))
}

/// Witnesses built the constructive way: for each prime `p`, the
/// canonical-first maximal subgroup containing a Hall `p′`-subgroup.
///
/// Requires a nontrivial supersoluble group. Every returned subgroup is
/// checked to have index `p` and to be supersoluble.
pub fn supersoluble_witnesses(g: &Arc<Group>) -> Result<BTreeMap<usize, Subgroup>> {
    if g.order() == 1 {
        return Err(Error::Precondition("group is trivial".into()));
    }
    if !is_supersoluble_chief(g)? {
        return Err(Error::Precondition("group is not supersoluble".into()));
    }
    let maximals = maximal_subgroups(g)?;
    let mut out = BTreeMap::new();
    for p in primes_of(g) {
        let hall = hall_complement(g, p)?.ok_or_else(|| {
            Error::Consistency(format!("supersoluble group without a Hall {p}'-subgroup"))
        })?;
        let m = maximals
            .iter()
            .find(|m| hall.is_subgroup_of(m))
            .ok_or_else(|| {
                Error::Consistency(format!(
                    "no maximal subgroup contains the Hall {p}'-subgroup"
                ))
            })?;
        let idx = index(g, m)?;
        if idx != p {
            return Err(Error::Consistency(format!(
                "witness for prime {p} has index {idx}"
            )));
        }
        if !subgroup_is_supersoluble(m)? {
            return Err(Error::Consistency(format!(
                "witness for prime {p} is not supersoluble"
            )));
        }
        out.insert(p, m.clone());
    }
    Ok(out)
}

/// For `H1` of prime index `p` and a minimal normal `N` not inside `H1`:
/// true iff `G = N·H1`, `N ∩ H1 = 1` and `|N| = p`.
pub fn minimal_normal_complement_check(
    g: &Arc<Group>,
    h1: &Subgroup,
    n: &Subgroup,
) -> Result<bool> {
    let p = index(g, h1)?;
    index(g, n)?;
    if !is_prime(p) {
        return Err(Error::Precondition(format!("index {p} is not prime")));
    }
    if !minimal_normal_subgroups(g)?.contains(n) {
        return Err(Error::Precondition(
            "N is not a minimal normal subgroup".into(),
        ));
    }
    if n.is_subgroup_of(h1) {
        return Err(Error::Precondition("N is contained in H1".into()));
    }
    let covers = product_set(n, h1)?.len() == g.order();
    let meets_trivially = n.intersection(h1)?.is_trivial();
    Ok(covers && meets_trivially && n.order() == p)
}

/// A subgroup described by generators, for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupInfo {
    pub generators: Vec<String>,
    pub order: usize,
    pub index: usize,
}

impl SubgroupInfo {
    pub fn of(h: &Subgroup) -> Self {
        SubgroupInfo {
            generators: h.generators().iter().map(|g| g.to_string()).collect(),
            order: h.order(),
            index: h.parent().order() / h.order(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CriterionTiming {
    pub chief_ms: f64,
    pub huppert_ms: f64,
    pub thm1_ms: f64,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ReportOptions {
    pub witnesses: bool,
    pub thm1_mode: Thm1Mode,
}

/// Per-group verdicts of the three deciders.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub group_id: String,
    pub order: usize,
    pub verdict_chief: Option<bool>,
    pub verdict_huppert: Option<bool>,
    pub verdict_thm1: Option<bool>,
    /// Prime → index-`p` supersoluble subgroup; `None` when not requested.
    pub witnesses: Option<BTreeMap<usize, SubgroupInfo>>,
    /// Criterion name → error message, for criteria that could not finish.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub errors: BTreeMap<String, String>,
    pub timing: CriterionTiming,
}

impl CriterionReport {
    pub fn verdicts(&self) -> [Option<bool>; 3] {
        [self.verdict_chief, self.verdict_huppert, self.verdict_thm1]
    }

    /// True when all three verdicts are present and equal.
    pub fn agrees(&self) -> bool {
        match self.verdicts() {
            [Some(a), Some(b), Some(c)] => a == b && b == c,
            _ => false,
        }
    }

    /// Present verdicts that differ from one another.
    pub fn disagrees(&self) -> bool {
        let present: Vec<bool> = self.verdicts().into_iter().flatten().collect();
        present.windows(2).any(|w| w[0] != w[1])
    }

    pub fn has_consistency_error(&self) -> bool {
        self.errors
            .values()
            .any(|e| e.starts_with("internal consistency failure"))
    }

    /// Hard error when the deciders disagree.
    pub fn check_agreement(&self) -> Result<()> {
        if self.disagrees() {
            return Err(Error::Consistency(format!(
                "deciders disagree on {}: chief={:?} maximal-index={:?} per-prime={:?}",
                self.group_id, self.verdict_chief, self.verdict_huppert, self.verdict_thm1
            )));
        }
        Ok(())
    }
}

fn timed<T>(f: impl FnOnce() -> Result<T>) -> (Result<T>, f64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_secs_f64() * 1e3)
}

/// Runs all three deciders. A failing criterion is recorded in `errors`
/// without stopping the others.
pub fn criteria_report(g: &Arc<Group>, group_id: &str, opts: ReportOptions) -> CriterionReport {
    let mut errors = BTreeMap::new();
    let mut keep = |name: &str, r: Result<bool>| match r {
        Ok(v) => Some(v),
        Err(e) => {
            errors.insert(name.to_string(), e.to_string());
            None
        }
    };

    let (chief, chief_ms) = timed(|| is_supersoluble_chief(g));
    let (huppert, huppert_ms) = timed(|| is_supersoluble_huppert(g));
    let (search, thm1_ms) = timed(|| index_p_witnesses(g, opts.thm1_mode));

    let verdict_chief = keep("chief", chief);
    let verdict_huppert = keep("huppert", huppert);
    let (verdict_thm1, found) = match search {
        Ok(found) => (Some(found.values().all(Option::is_some)), Some(found)),
        Err(e) => (keep("thm1", Err(e)), None),
    };

    let witnesses = opts.witnesses.then(|| {
        found
            .filter(|_| verdict_thm1 == Some(true))
            .map(|found| {
                found
                    .into_iter()
                    .filter_map(|(p, h)| h.map(|h| (p, SubgroupInfo::of(&h))))
                    .collect()
            })
            .unwrap_or_default()
    });

    CriterionReport {
        group_id: group_id.to_string(),
        order: g.order(),
        verdict_chief,
        verdict_huppert,
        verdict_thm1,
        witnesses,
        errors,
        timing: CriterionTiming {
            chief_ms,
            huppert_ms,
            thm1_ms,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::whole;
    use crate::perm::Perm;

    fn p(degree: usize, cycles: &[&[usize]]) -> Perm {
        Perm::from_cycles(degree, cycles).unwrap()
    }

    fn group(degree: usize, gens: &[&[&[usize]]]) -> Arc<Group> {
        Group::from_generators(degree, gens.iter().map(|c| p(degree, c)).collect()).unwrap()
    }

    fn s3() -> Arc<Group> {
        group(3, &[&[&[1, 2]], &[&[1, 2, 3]]])
    }

    fn a4() -> Arc<Group> {
        group(4, &[&[&[1, 2, 3]], &[&[2, 3, 4]]])
    }

    fn s4() -> Arc<Group> {
        group(4, &[&[&[1, 2]], &[&[1, 2, 3, 4]]])
    }

    #[test]
    fn chief_decider_examples() {
        assert!(is_supersoluble_chief(&group(6, &[&[&[1, 2, 3, 4, 5, 6]]])).unwrap());
        assert!(!is_supersoluble_chief(&a4()).unwrap());
        assert!(is_supersoluble_chief(&s3()).unwrap());
        assert!(is_supersoluble_chief(&group(1, &[])).unwrap());
    }

    #[test]
    fn huppert_decider_examples() {
        assert!(!is_supersoluble_huppert(&a4()).unwrap());
        assert!(!is_supersoluble_huppert(&s4()).unwrap());
        assert!(is_supersoluble_huppert(&s3()).unwrap());
        assert!(is_supersoluble_huppert(&group(1, &[])).unwrap());
    }

    #[test]
    fn per_prime_decider_examples() {
        let a4 = a4();
        let found = index_p_witnesses(&a4, Thm1Mode::AnySubgroup).unwrap();
        assert!(found[&2].is_none());
        assert!(all_subgroups(&a4).unwrap().iter().all(|h| h.order() != 6));
        assert!(!is_supersoluble_thm1(&a4).unwrap());

        assert!(is_supersoluble_thm1(&s3()).unwrap());
        assert!(!is_supersoluble_thm1(&s4()).unwrap());
        assert!(is_supersoluble_thm1(&group(1, &[])).unwrap());
    }

    #[test]
    fn maximal_only_mode_matches() {
        for g in [s3(), a4(), s4()] {
            assert_eq!(
                is_supersoluble_thm1_with(&g, Thm1Mode::MaximalOnly).unwrap(),
                is_supersoluble_thm1(&g).unwrap()
            );
        }
    }

    #[test]
    fn witnesses_for_s3_and_c6() {
        for g in [s3(), group(6, &[&[&[1, 2, 3, 4, 5, 6]]])] {
            let w = supersoluble_witnesses(&g).unwrap();
            assert_eq!(w.keys().copied().collect::<Vec<_>>(), vec![2, 3]);
            assert_eq!(w[&2].order(), 3);
            assert_eq!(w[&3].order(), 2);
        }
        let d4 = group(4, &[&[&[1, 2, 3, 4]], &[&[1, 3]]]);
        let w = supersoluble_witnesses(&d4).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[&2].order(), 4);
    }

    #[test]
    fn witnesses_reject_bad_groups() {
        assert!(matches!(
            supersoluble_witnesses(&a4()),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            supersoluble_witnesses(&group(1, &[])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn complement_check_examples() {
        let g = s3();
        let c3 = Subgroup::generated(&g, &[p(3, &[&[1, 2, 3]])]).unwrap();
        let t = Subgroup::generated(&g, &[p(3, &[&[1, 2]])]).unwrap();
        assert!(matches!(
            minimal_normal_complement_check(&g, &c3, &c3),
            Err(Error::Precondition(_))
        ));
        assert!(minimal_normal_complement_check(&g, &t, &c3).unwrap());

        let v = group(4, &[&[&[1, 2]], &[&[3, 4]]]);
        let first = Subgroup::generated(&v, &[p(4, &[&[1, 2]])]).unwrap();
        let second = Subgroup::generated(&v, &[p(4, &[&[3, 4]])]).unwrap();
        assert!(minimal_normal_complement_check(&v, &first, &second).unwrap());
        assert!(matches!(
            minimal_normal_complement_check(&v, &whole(&v), &second),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn report_examples() {
        let opts = ReportOptions {
            witnesses: true,
            ..Default::default()
        };
        let r = criteria_report(&group(1, &[]), "C1", opts);
        assert_eq!(r.verdicts(), [Some(true); 3]);
        assert!(r.witnesses.as_ref().unwrap().is_empty());

        let r = criteria_report(&a4(), "A4", opts);
        assert_eq!(r.verdicts(), [Some(false); 3]);
        assert!(r.agrees());
        assert!(r.witnesses.as_ref().unwrap().is_empty());

        let r = criteria_report(&s3(), "S3", opts);
        let w = r.witnesses.unwrap();
        assert_eq!(w[&2].order, 3);
        assert_eq!(w[&3].order, 2);
        assert_eq!(w[&3].index, 3);
    }

    #[test]
    fn report_embeds_budget_errors() {
        let limits = crate::Limits {
            max_subgroups: 3,
            ..Default::default()
        };
        let g = Group::with_limits(3, vec![p(3, &[&[1, 2]]), p(3, &[&[1, 2, 3]])], limits).unwrap();
        let r = criteria_report(&g, "S3", ReportOptions::default());
        assert_eq!(r.verdicts(), [None; 3]);
        assert_eq!(r.errors.len(), 3);
        assert!(!r.agrees());
        assert!(r.check_agreement().is_ok());
    }

    #[test]
    fn disagreement_is_a_hard_error() {
        let mut r = criteria_report(&s3(), "S3", ReportOptions::default());
        r.verdict_huppert = Some(false);
        assert!(matches!(r.check_agreement(), Err(Error::Consistency(_))));
    }
}
