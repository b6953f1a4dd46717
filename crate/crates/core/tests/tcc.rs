use std::sync::Arc;

use supersolv::catalog::{factorization_cases, standard_catalog};
use supersolv::criteria::subgroup_is_supersoluble;
use supersolv::par::Execution;
use supersolv::subgroups::{all_subgroups, permutes, product_set, subgroups_of};
use supersolv::tcc::{
    corollary1_verify, corollary2_verify, lemma1_check, lemma1_replay, tcc_permutable,
    tcc_permutable_with, totally_permutable, CaseKind, FactorizationCase,
};
use supersolv::{conjugate_subgroup, join, Error, Group, Subgroup};

/// Proper nontrivial factorisations `G = HK` of the catalog groups up to `n`.
fn factorisations(n: usize) -> Vec<(String, Arc<Group>, Subgroup, Subgroup)> {
    let mut out = Vec::new();
    for e in standard_catalog()
        .into_iter()
        .filter(|e| e.group.order() <= n)
    {
        let lat = all_subgroups(&e.group).unwrap();
        let proper: Vec<&Subgroup> = lat
            .iter()
            .filter(|h| !h.is_trivial() && !h.is_whole())
            .collect();
        for h in &proper {
            for k in &proper {
                if product_set(h, k).unwrap().len() == e.group.order() {
                    out.push((e.name.clone(), e.group.clone(), (*h).clone(), (*k).clone()));
                }
            }
        }
    }
    out
}

/// Direct reading of the definition, without the library's search order.
fn tcc_oracle(h: &Subgroup, k: &Subgroup) -> bool {
    for x in subgroups_of(h).unwrap() {
        for y in subgroups_of(k).unwrap() {
            let span = join(&x, &y).unwrap();
            let ok = span
                .elements()
                .any(|u| permutes(&x, &conjugate_subgroup(&y, u).unwrap()).unwrap());
            if !ok {
                return false;
            }
        }
    }
    true
}

#[test]
fn tcc_matches_definition() {
    let cases = factorisations(24);
    assert!(cases.len() > 50);
    for (name, _, h, k) in &cases {
        assert_eq!(
            tcc_permutable(h, k).unwrap().permutable,
            tcc_oracle(h, k),
            "{name}: |H|={} |K|={}",
            h.order(),
            k.order()
        );
    }
}

#[test]
fn totally_permutable_implies_tcc() {
    let mut totally = 0;
    for (name, _, h, k) in factorisations(24) {
        if totally_permutable(&h, &k).unwrap() {
            totally += 1;
            assert!(tcc_permutable(&h, &k).unwrap().permutable, "{name}");
        }
    }
    assert!(totally > 0);
}

#[test]
fn tcc_symmetry_is_measured() {
    let cases = factorisations(24);
    let asymmetric = cases
        .iter()
        .filter(|(_, _, h, k)| {
            tcc_permutable(h, k).unwrap().permutable != tcc_permutable(k, h).unwrap().permutable
        })
        .count();
    println!(
        "tcc symmetry: {} ordered factorisations, {asymmetric} asymmetric",
        cases.len()
    );
}

#[test]
fn conjugates_stay_tcc() {
    let mut replays = 0;
    for (name, _, h, k) in factorisations(24) {
        if tcc_permutable(&h, &k).unwrap().permutable {
            assert_eq!(lemma1_replay(&h, &k).unwrap(), h.order(), "{name}");
            replays += 1;
        }
    }
    assert!(replays > 20);
}

#[test]
fn conjugation_lemma_preconditions() {
    let cases = factorization_cases().unwrap();
    let find = |name: &str| cases.iter().find(|c| c.name == name).unwrap();

    let s3 = find("S3; C3, C2");
    let inside = s3.h.generators()[0].clone();
    assert!(lemma1_check(&s3.h, &s3.k, &inside).unwrap());
    let outside = s3
        .group
        .elements()
        .iter()
        .find(|p| !s3.h.contains_perm(p))
        .unwrap();
    assert!(matches!(
        lemma1_check(&s3.h, &s3.k, outside),
        Err(Error::Precondition(_))
    ));

    let s4 = find("S4; D4, C3");
    let inside = s4.h.generators()[0].clone();
    assert!(matches!(
        lemma1_check(&s4.h, &s4.k, &inside),
        Err(Error::Precondition(_))
    ));
    assert!(matches!(
        lemma1_replay(&s4.h, &s4.k),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn parallel_search_reports_same_failure() {
    for (name, _, h, k) in factorisations(24) {
        let a = tcc_permutable_with(&h, &k, Execution::Sequential).unwrap();
        let b = tcc_permutable_with(&h, &k, Execution::Parallel).unwrap();
        assert_eq!(a.permutable, b.permutable, "{name}");
        assert_eq!(
            a.failing_pair.map(|(x, y)| (x.order(), y.order())),
            b.failing_pair.map(|(x, y)| (x.order(), y.order())),
            "{name}"
        );
    }
}

#[test]
fn s4_d4_c3_is_not_tcc() {
    let case = factorization_cases()
        .unwrap()
        .into_iter()
        .find(|c| c.name == "S4; D4, C3" && c.kind == CaseKind::Tcc)
        .unwrap();
    assert!(!tcc_permutable(&case.h, &case.k).unwrap().permutable);
    let v = corollary2_verify(&case).unwrap();
    assert!(!v.hypotheses_hold);
    assert!(!v.g_supersoluble);
    assert_eq!(v.conclusion, None);
}

#[test]
fn corollaries_hold_on_all_factorisations() {
    let mut hypotheses = [0, 0];
    for (name, _, h, k) in factorisations(24) {
        let case =
            FactorizationCase::new(name.clone(), h, k, CaseKind::TotallyPermutable, None).unwrap();
        let v1 = corollary1_verify(&case).unwrap();
        let v2 = corollary2_verify(&case.with_kind(CaseKind::Tcc)).unwrap();
        for (i, v) in [v1, v2].into_iter().enumerate() {
            if v.hypotheses_hold {
                hypotheses[i] += 1;
                assert_eq!(v.conclusion, Some(true), "{name}");
                assert!(v.g_supersoluble && v.h_supersoluble && v.k_supersoluble);
            }
        }
    }
    assert!(
        hypotheses[0] > 10 && hypotheses[1] >= hypotheses[0],
        "{hypotheses:?}"
    );
}

#[test]
fn fixed_cases_match_fixture_expectations() {
    for case in factorization_cases().unwrap() {
        let v = match case.kind {
            CaseKind::TotallyPermutable => corollary1_verify(&case),
            CaseKind::Tcc => corollary2_verify(&case),
        }
        .unwrap();
        if let Some(expected) = case.expected_supersoluble {
            assert_eq!(v.g_supersoluble, expected, "{}", case.name);
        }
        assert_eq!(v.h_supersoluble, subgroup_is_supersoluble(&case.h).unwrap());
    }
}

#[test]
fn kind_mismatch_is_rejected() {
    let case = factorization_cases().unwrap().remove(0);
    assert_eq!(case.kind, CaseKind::TotallyPermutable);
    assert!(corollary2_verify(&case).is_err());
    assert!(corollary1_verify(&case.with_kind(CaseKind::Tcc)).is_err());
}
