//! Permutability conditions on pairs of subgroups and the factorised-group
//! results built on them.
//!
//! `H` and `K` are *tcc-permutable* when for every `X ≤ H` and `Y ≤ K`
//! some `u ∈ ⟨X, Y⟩` makes `X·Y^u` a subgroup. They are *totally permutable*
//! when every `X ≤ H` permutes with every `Y ≤ K` outright. For `G = HK`
//! with `H`, `K` supersoluble, either condition forces `G` to be
//! supersoluble; the verifiers here check that on concrete cases.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::criteria::{is_supersoluble_chief, subgroup_is_supersoluble, SubgroupInfo};
use crate::error::{Error, Result};
use crate::group::{conjugate_subgroup, conjugate_subgroup_by_index, join, Group, Subgroup};
use crate::par::{self, Execution};
use crate::perm::Perm;
use crate::subgroups::{permutes_unchecked, product_set, subgroups_of};

fn check_budget(g: &Group, needed: u128) -> Result<()> {
    let budget = g.limits().check_budget;
    if needed > budget as u128 {
        return Err(Error::Budget { needed, budget });
    }
    Ok(())
}

/// Every subgroup of `h` permutes with every subgroup of `k`.
pub fn totally_permutable(h: &Subgroup, k: &Subgroup) -> Result<bool> {
    h.check_parent(k)?;
    let xs = subgroups_of(h)?;
    let ys = subgroups_of(k)?;
    check_budget(h.parent(), xs.len() as u128 * ys.len() as u128)?;
    Ok(xs
        .iter()
        .all(|x| ys.iter().all(|y| permutes_unchecked(x, y))))
}

/// First `u` in canonical element order of `⟨X, Y⟩` with `X·Y^u = Y^u·X`.
fn first_witness(x: &Subgroup, y: &Subgroup) -> Option<u32> {
    let span = join(x, y).expect("same parent");
    let found = span
        .members()
        .iter()
        .find(|&u| permutes_unchecked(x, &conjugate_subgroup_by_index(y, u)));
    found
}

/// `X·Y^u` is a subgroup, with `u` the first such element of `⟨X, Y⟩`.
#[derive(Debug, Clone)]
pub struct TccWitness {
    pub x: Subgroup,
    pub y: Subgroup,
    pub u: Perm,
}

#[derive(Debug, Clone)]
pub struct TccOutcome {
    pub permutable: bool,
    /// One entry per `(X, Y)` pair, `X` outer, both in canonical order.
    /// Empty when a pair fails.
    pub witnesses: Vec<TccWitness>,
    /// The canonical-first pair with no witness.
    pub failing_pair: Option<(Subgroup, Subgroup)>,
    pub pairs: usize,
}

pub fn tcc_permutable(h: &Subgroup, k: &Subgroup) -> Result<TccOutcome> {
    tcc_permutable_with(h, k, Execution::default())
}

/// Exhaustive witness search over all pairs of subgroups.
///
/// Sequential execution stops at the first failing pair. Parallel execution
/// checks every pair and then reports the canonical-first failure, so both
/// modes return identical outcomes.
pub fn tcc_permutable_with(h: &Subgroup, k: &Subgroup, exec: Execution) -> Result<TccOutcome> {
    h.check_parent(k)?;
    let xs = subgroups_of(h)?;
    let ys = subgroups_of(k)?;
    let span = join(h, k)?.order();
    check_budget(
        h.parent(),
        xs.len() as u128 * ys.len() as u128 * span as u128,
    )?;

    let pairs: Vec<(usize, usize)> = (0..xs.len())
        .flat_map(|i| (0..ys.len()).map(move |j| (i, j)))
        .collect();
    let g = h.parent();

    let found: Vec<Option<u32>> = if exec.is_parallel() {
        par::map(&pairs, exec, |&(i, j)| first_witness(&xs[i], &ys[j]))
    } else {
        let mut out = Vec::with_capacity(pairs.len());
        for &(i, j) in &pairs {
            let w = first_witness(&xs[i], &ys[j]);
            out.push(w);
            if w.is_none() {
                break;
            }
        }
        out
    };

    if let Some(pos) = found.iter().position(Option::is_none) {
        let (i, j) = pairs[pos];
        return Ok(TccOutcome {
            permutable: false,
            witnesses: vec![],
            failing_pair: Some((xs[i].clone(), ys[j].clone())),
            pairs: pairs.len(),
        });
    }
    let witnesses = pairs
        .iter()
        .zip(found)
        .map(|(&(i, j), u)| TccWitness {
            x: xs[i].clone(),
            y: ys[j].clone(),
            u: g.element(u.expect("checked above")).clone(),
        })
        .collect();
    Ok(TccOutcome {
        permutable: true,
        witnesses,
        failing_pair: None,
        pairs: pairs.len(),
    })
}

/// Conjugating the second factor by an element of the first keeps a
/// tcc-permutable pair tcc-permutable. Returns `Ok(true)`, or a consistency
/// error if that ever fails.
pub fn lemma1_check(h: &Subgroup, k: &Subgroup, elem: &Perm) -> Result<bool> {
    if !h.contains_perm(elem) {
        return Err(Error::Precondition(format!("{elem} is not in H")));
    }
    if !tcc_permutable(h, k)?.permutable {
        return Err(Error::Precondition("H and K are not tcc-permutable".into()));
    }
    conjugated_pair_holds(h, k, elem)
}

fn conjugated_pair_holds(h: &Subgroup, k: &Subgroup, elem: &Perm) -> Result<bool> {
    let kh = conjugate_subgroup(k, elem)?;
    if tcc_permutable(h, &kh)?.permutable {
        Ok(true)
    } else {
        Err(Error::Consistency(format!(
            "H and K^h are not tcc-permutable for h = {elem}"
        )))
    }
}

/// Replays [`lemma1_check`] for every `h ∈ H`, checking the precondition
/// once. Returns the number of conjugates checked.
pub fn lemma1_replay(h: &Subgroup, k: &Subgroup) -> Result<usize> {
    if !tcc_permutable(h, k)?.permutable {
        return Err(Error::Precondition("H and K are not tcc-permutable".into()));
    }
    for elem in h.elements() {
        conjugated_pair_holds(h, k, elem)?;
    }
    Ok(h.order())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseKind {
    TotallyPermutable,
    Tcc,
}

/// A factorisation `G = HK` to test one of the corollaries on.
#[derive(Debug, Clone)]
pub struct FactorizationCase {
    pub name: String,
    pub group: Arc<Group>,
    pub h: Subgroup,
    pub k: Subgroup,
    pub kind: CaseKind,
    /// Fixture metadata only; never read by the verifiers.
    pub expected_supersoluble: Option<bool>,
}

impl FactorizationCase {
    /// Rejects the case unless `HK` is all of `G`.
    pub fn new(
        name: impl Into<String>,
        h: Subgroup,
        k: Subgroup,
        kind: CaseKind,
        expected_supersoluble: Option<bool>,
    ) -> Result<Self> {
        let name = name.into();
        let covered = product_set(&h, &k)?.len();
        let group = h.parent().clone();
        if covered != group.order() {
            return Err(Error::Precondition(format!(
                "{name}: HK has {covered} elements, G has {}",
                group.order()
            )));
        }
        Ok(FactorizationCase {
            name,
            group,
            h,
            k,
            kind,
            expected_supersoluble,
        })
    }

    pub fn with_kind(&self, kind: CaseKind) -> Self {
        FactorizationCase {
            kind,
            ..self.clone()
        }
    }
}

/// Outcome of checking one corollary on one case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryVerdict {
    pub case: String,
    pub kind: CaseKind,
    pub order: usize,
    pub h: SubgroupInfo,
    pub k: SubgroupInfo,
    pub h_supersoluble: bool,
    pub k_supersoluble: bool,
    /// Totally permutable or tcc-permutable, according to `kind`.
    pub permutable: bool,
    pub hypotheses_hold: bool,
    pub g_supersoluble: bool,
    /// `Some(true)` when the hypotheses hold and so does the conclusion;
    /// `None` when the hypotheses fail and nothing is claimed.
    pub conclusion: Option<bool>,
}

fn verify(case: &FactorizationCase, kind: CaseKind) -> Result<CorollaryVerdict> {
    if case.kind != kind {
        return Err(Error::Precondition(format!(
            "{}: case kind is {:?}, expected {:?}",
            case.name, case.kind, kind
        )));
    }
    let h_supersoluble = subgroup_is_supersoluble(&case.h)?;
    let k_supersoluble = subgroup_is_supersoluble(&case.k)?;
    let permutable = match kind {
        CaseKind::TotallyPermutable => totally_permutable(&case.h, &case.k)?,
        CaseKind::Tcc => tcc_permutable(&case.h, &case.k)?.permutable,
    };
    let g_supersoluble = is_supersoluble_chief(&case.group)?;
    let hypotheses_hold = h_supersoluble && k_supersoluble && permutable;
    if hypotheses_hold && !g_supersoluble {
        return Err(Error::Consistency(format!(
            "{}: hypotheses hold but G is not supersoluble",
            case.name
        )));
    }
    Ok(CorollaryVerdict {
        case: case.name.clone(),
        kind,
        order: case.group.order(),
        h: SubgroupInfo::of(&case.h),
        k: SubgroupInfo::of(&case.k),
        h_supersoluble,
        k_supersoluble,
        permutable,
        hypotheses_hold,
        g_supersoluble,
        conclusion: hypotheses_hold.then_some(g_supersoluble),
    })
}

/// Supersoluble totally permutable factors give a supersoluble product.
pub fn corollary1_verify(case: &FactorizationCase) -> Result<CorollaryVerdict> {
    verify(case, CaseKind::TotallyPermutable)
}

/// Supersoluble tcc-permutable factors give a supersoluble product.
pub fn corollary2_verify(case: &FactorizationCase) -> Result<CorollaryVerdict> {
    verify(case, CaseKind::Tcc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::trivial;

    fn p(degree: usize, cycles: &[&[usize]]) -> Perm {
        Perm::from_cycles(degree, cycles).unwrap()
    }

    fn s3() -> Arc<Group> {
        Group::from_generators(3, vec![p(3, &[&[1, 2]]), p(3, &[&[1, 2, 3]])]).unwrap()
    }

    fn sub(g: &Arc<Group>, gens: &[&[&[usize]]]) -> Subgroup {
        let gens: Vec<Perm> = gens.iter().map(|c| p(g.degree(), c)).collect();
        Subgroup::generated(g, &gens).unwrap()
    }

    #[test]
    fn totally_permutable_examples() {
        let g = s3();
        let c3 = sub(&g, &[&[&[1, 2, 3]]]);
        let a = sub(&g, &[&[&[1, 2]]]);
        let b = sub(&g, &[&[&[1, 3]]]);
        assert!(totally_permutable(&a, &trivial(&g)).unwrap());
        assert!(totally_permutable(&c3, &a).unwrap());
        assert!(!totally_permutable(&a, &b).unwrap());
    }

    #[test]
    fn tcc_examples_in_s3() {
        let g = s3();
        let c3 = sub(&g, &[&[&[1, 2, 3]]]);
        let a = sub(&g, &[&[&[1, 2]]]);
        let b = sub(&g, &[&[&[1, 3]]]);

        let out = tcc_permutable(&c3, &a).unwrap();
        assert!(out.permutable);
        assert!(out.witnesses.iter().all(|w| w.u.is_identity()));

        let out = tcc_permutable(&a, &b).unwrap();
        assert!(out.permutable);
        assert_eq!(out.pairs, 4);
        let top = out.witnesses.iter().find(|w| w.x == a && w.y == b).unwrap();
        assert!(!top.u.is_identity());
        let moved = conjugate_subgroup(&b, &top.u).unwrap();
        assert!(crate::subgroups::permutes(&a, &moved).unwrap());
    }

    #[test]
    fn tcc_fails_for_s4_sylow_and_c3() {
        let g = Group::from_generators(4, vec![p(4, &[&[1, 2]]), p(4, &[&[1, 2, 3, 4]])]).unwrap();
        let d4 = crate::structure::sylow(&g, 2).unwrap();
        let c3 = sub(&g, &[&[&[1, 2, 3]]]);
        for exec in [Execution::Sequential, Execution::Parallel] {
            let out = tcc_permutable_with(&d4, &c3, exec).unwrap();
            assert!(!out.permutable);
            assert!(out.failing_pair.is_some());
        }
        let seq = tcc_permutable_with(&d4, &c3, Execution::Sequential).unwrap();
        let par = tcc_permutable_with(&d4, &c3, Execution::Parallel).unwrap();
        assert_eq!(seq.failing_pair, par.failing_pair);
    }

    #[test]
    fn budget_is_enforced() {
        let limits = crate::Limits {
            check_budget: 10,
            ..Default::default()
        };
        let g = Group::with_limits(3, vec![p(3, &[&[1, 2]]), p(3, &[&[1, 2, 3]])], limits).unwrap();
        let a = sub(&g, &[&[&[1, 2]]]);
        let b = sub(&g, &[&[&[1, 3]]]);
        assert!(matches!(
            tcc_permutable(&a, &b),
            Err(Error::Budget {
                needed: 24,
                budget: 10
            })
        ));
    }

    #[test]
    fn conjugation_check_examples() {
        let g = s3();
        let a = sub(&g, &[&[&[1, 2]]]);
        let b = sub(&g, &[&[&[1, 3]]]);
        assert!(lemma1_check(&a, &b, &Perm::identity(3)).unwrap());
        assert!(lemma1_check(&a, &b, &p(3, &[&[1, 2]])).unwrap());
        assert!(matches!(
            lemma1_check(&a, &b, &p(3, &[&[1, 3]])),
            Err(Error::Precondition(_))
        ));
        assert_eq!(lemma1_replay(&a, &b).unwrap(), 2);
    }

    #[test]
    fn corollary_examples() {
        let g = s3();
        let c3 = sub(&g, &[&[&[1, 2, 3]]]);
        let c2 = sub(&g, &[&[&[1, 2]]]);
        let case =
            FactorizationCase::new("S3", c3, c2, CaseKind::TotallyPermutable, Some(true)).unwrap();
        let v = corollary1_verify(&case).unwrap();
        assert!(v.hypotheses_hold);
        assert_eq!(v.conclusion, Some(true));
        assert!(matches!(
            corollary2_verify(&case),
            Err(Error::Precondition(_))
        ));
        let v = corollary2_verify(&case.with_kind(CaseKind::Tcc)).unwrap();
        assert_eq!(v.conclusion, Some(true));
    }

    #[test]
    fn case_requires_full_product() {
        let g = s3();
        let a = sub(&g, &[&[&[1, 2]]]);
        let b = sub(&g, &[&[&[1, 3]]]);
        assert!(matches!(
            FactorizationCase::new("bad", a, b, CaseKind::Tcc, None),
            Err(Error::Precondition(_))
        ));
    }
}
