//! Standard small groups and curated factorisations `G = HK`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::perm::Perm;
use crate::structure::is_prime;
use crate::tcc::{CaseKind, FactorizationCase};

fn cycle(degree: usize, points: impl IntoIterator<Item = usize>) -> Perm {
    let c: Vec<usize> = points.into_iter().collect();
    Perm::from_cycles(degree, &[c]).expect("valid cycle")
}

fn cap(msg: String) -> Error {
    Error::Precondition(msg)
}

/// `C_n` acting regularly on `n` points.
pub fn cyclic(n: usize) -> Result<Arc<Group>> {
    if n == 0 {
        return Err(cap("cyclic(0) is undefined".into()));
    }
    let gens = if n == 1 {
        vec![]
    } else {
        vec![cycle(n, 1..=n)]
    };
    Group::from_generators(n, gens)
}

/// The symmetry group of the `n`-gon, order `2n`, on `n` points.
pub fn dihedral(n: usize) -> Result<Arc<Group>> {
    if n < 3 {
        return Err(cap(format!("dihedral({n}) needs n >= 3")));
    }
    let reflection: Vec<usize> = (1..=n).map(|i| n + 1 - i).collect();
    Group::from_generators(n, vec![cycle(n, 1..=n), Perm::from_images(&reflection)?])
}

pub fn symmetric(n: usize) -> Result<Arc<Group>> {
    if n == 0 || n > 6 {
        return Err(cap(format!("symmetric({n}) needs 1 <= n <= 6")));
    }
    let gens = match n {
        1 => vec![],
        2 => vec![cycle(2, [1, 2])],
        _ => vec![cycle(n, [1, 2]), cycle(n, 1..=n)],
    };
    Group::from_generators(n, gens)
}

/// Generated by the 3-cycles `(1 2 k)`.
pub fn alternating(n: usize) -> Result<Arc<Group>> {
    if n == 0 || n > 6 {
        return Err(cap(format!("alternating({n}) needs 1 <= n <= 6")));
    }
    Group::from_generators(n, (3..=n).map(|k| cycle(n, [1, 2, k])).collect())
}

/// The quaternion group in its right regular representation on 8 points.
pub fn quaternion8() -> Result<Arc<Group>> {
    // element e = 4 * sign + unit, units 0..4 = 1, i, j, k
    fn mul(a: usize, b: usize) -> usize {
        let (sa, ua) = (a / 4, a % 4);
        let (sb, ub) = (b / 4, b % 4);
        let (neg, unit) = match (ua, ub) {
            (0, u) | (u, 0) => (0, u),
            (u, v) if u == v => (1, 0),
            (1, 2) => (0, 3),
            (2, 3) => (0, 1),
            (3, 1) => (0, 2),
            (2, 1) => (1, 3),
            (3, 2) => (1, 1),
            (1, 3) => (1, 2),
            _ => unreachable!(),
        };
        4 * ((sa + sb + neg) % 2) + unit
    }
    let regular = |g: usize| Perm::from_images(&(0..8).map(|x| mul(x, g) + 1).collect::<Vec<_>>());
    Group::from_generators(8, vec![regular(1)?, regular(2)?])
}

/// `k` copies of `C_p` on disjoint blocks of `p` points.
pub fn elementary_abelian(p: usize, k: usize) -> Result<Arc<Group>> {
    if !is_prime(p) || k == 0 {
        return Err(cap(format!(
            "elementary_abelian({p}, {k}) needs a prime and k >= 1"
        )));
    }
    if p.checked_pow(k as u32).is_none_or(|o| o > 256) {
        return Err(cap(format!(
            "elementary_abelian({p}, {k}) exceeds order 256"
        )));
    }
    let degree = p * k;
    let gens = (0..k)
        .map(|b| cycle(degree, b * p + 1..=b * p + p))
        .collect();
    Group::from_generators(degree, gens)
}

/// `A × B` on disjoint point sets, `B` shifted past `A`'s points.
pub fn direct_product(a: &Group, b: &Group) -> Result<Arc<Group>> {
    let degree = a.degree() + b.degree();
    let mut gens: Vec<Perm> = a
        .generators()
        .iter()
        .map(|g| g.shifted(0, degree))
        .collect();
    gens.extend(b.generators().iter().map(|g| g.shifted(a.degree(), degree)));
    Group::with_limits(degree, gens, a.limits())
}

/// The nonabelian group of order 21: `x ↦ x + 1` and `x ↦ 2x` on `Z/7`,
/// with point `i` standing for residue `i - 1`.
pub fn metacyclic_21() -> Result<Arc<Group>> {
    let times_two: Vec<usize> = (0..7).map(|x| (2 * x) % 7 + 1).collect();
    Group::from_generators(7, vec![cycle(7, 1..=7), Perm::from_images(&times_two)?])
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub group: Arc<Group>,
    /// Known supersolubility, for tests only.
    pub expected: Option<bool>,
}

fn entry(name: impl Into<String>, group: Result<Arc<Group>>, expected: bool) -> CatalogEntry {
    CatalogEntry {
        name: name.into(),
        group: group.expect("catalog groups are within the default caps"),
        expected: Some(expected),
    }
}

/// The fixed test universe, in a stable order.
pub fn standard_catalog() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for n in 1..=30 {
        out.push(entry(format!("C{n}"), cyclic(n), true));
    }
    for n in 3..=15 {
        out.push(entry(format!("D{n}"), dihedral(n), true));
    }
    out.push(entry("S3", symmetric(3), true));
    out.push(entry("S4", symmetric(4), false));
    out.push(entry("S5", symmetric(5), false));
    out.push(entry("A4", alternating(4), false));
    out.push(entry("A5", alternating(5), false));
    out.push(entry("Q8", quaternion8(), true));
    out.push(entry("C2^2", elementary_abelian(2, 2), true));
    out.push(entry("C2^3", elementary_abelian(2, 3), true));
    out.push(entry("C2^4", elementary_abelian(2, 4), true));
    out.push(entry("C3^2", elementary_abelian(3, 2), true));
    out.push(entry("M21", metacyclic_21(), true));

    let base = |name: &str| -> (Arc<Group>, bool) {
        let e = out_lookup(&out, name);
        (e.group.clone(), e.expected.unwrap_or(false))
    };
    let products: [(&str, &str); 15] = [
        ("S3", "C2"),
        ("S3", "C3"),
        ("S3", "S3"),
        ("A4", "C2"),
        ("Q8", "C2"),
        ("D4", "C2"),
        ("D5", "C3"),
        ("A4", "C3"),
        ("C4", "C4"),
        ("S4", "C2"),
        ("D4", "C3"),
        ("Q8", "C3"),
        ("M21", "C2"),
        ("A4", "S3"),
        ("D4", "S3"),
    ];
    let built: Vec<CatalogEntry> = products
        .iter()
        .map(|(a, b)| {
            let (ga, ea) = base(a);
            let (gb, eb) = base(b);
            entry(format!("{a}x{b}"), direct_product(&ga, &gb), ea && eb)
        })
        .collect();
    out.extend(built);
    out
}

fn out_lookup<'a>(entries: &'a [CatalogEntry], name: &str) -> &'a CatalogEntry {
    entries
        .iter()
        .find(|e| e.name == name)
        .expect("known base group")
}

pub fn catalog_entry(name: &str) -> Result<CatalogEntry> {
    standard_catalog()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownGroup(name.to_string()))
}

fn sub(g: &Arc<Group>, gens: &[&[&[usize]]]) -> Result<Subgroup> {
    let perms = gens
        .iter()
        .map(|cycles| Perm::from_cycles(g.degree(), cycles))
        .collect::<Result<Vec<_>>>()?;
    Subgroup::generated(g, &perms)
}

/// Curated factorisations. Each triple `(G; H, K)` appears once per
/// [`CaseKind`], totally permutable first.
pub fn factorization_cases() -> Result<Vec<FactorizationCase>> {
    let mut triples: Vec<(String, Subgroup, Subgroup, bool)> = Vec::new();
    let mut add = |name: &str, h: Subgroup, k: Subgroup, expected: bool| {
        triples.push((name.to_string(), h, k, expected));
    };

    let s3 = symmetric(3)?;
    add(
        "S3; C3, C2",
        sub(&s3, &[&[&[1, 2, 3]]])?,
        sub(&s3, &[&[&[1, 2]]])?,
        true,
    );

    let c6 = cyclic(6)?;
    add(
        "C6; C2, C3",
        sub(&c6, &[&[&[1, 4], &[2, 5], &[3, 6]]])?,
        sub(&c6, &[&[&[1, 3, 5], &[2, 4, 6]]])?,
        true,
    );

    let s4 = symmetric(4)?;
    add(
        "S4; D4, C3",
        sub(&s4, &[&[&[1, 2, 3, 4]], &[&[1, 3]]])?,
        sub(&s4, &[&[&[1, 2, 3]]])?,
        false,
    );
    add(
        "S4; S3, C4",
        sub(&s4, &[&[&[1, 2]], &[&[1, 2, 3]]])?,
        sub(&s4, &[&[&[1, 2, 3, 4]]])?,
        false,
    );
    add(
        "S4; A4, C2",
        sub(&s4, &[&[&[1, 2, 3]], &[&[2, 3, 4]]])?,
        sub(&s4, &[&[&[1, 2]]])?,
        false,
    );

    let d4 = dihedral(4)?;
    add(
        "D4; C4, C2",
        sub(&d4, &[&[&[1, 2, 3, 4]]])?,
        sub(&d4, &[&[&[1, 4], &[2, 3]]])?,
        true,
    );

    let a4 = alternating(4)?;
    add(
        "A4; V4, C3",
        sub(&a4, &[&[&[1, 2], &[3, 4]], &[&[1, 3], &[2, 4]]])?,
        sub(&a4, &[&[&[1, 2, 3]]])?,
        false,
    );

    let v4 = elementary_abelian(2, 2)?;
    add(
        "C2^2; C2, C2",
        sub(&v4, &[&[&[1, 2]]])?,
        sub(&v4, &[&[&[3, 4]]])?,
        true,
    );

    let a5 = alternating(5)?;
    add(
        "A5; A4, C5",
        sub(&a5, &[&[&[1, 2, 3]], &[&[2, 3, 4]]])?,
        sub(&a5, &[&[&[1, 2, 3, 4, 5]]])?,
        false,
    );

    let m21 = metacyclic_21()?;
    add(
        "M21; C7, C3",
        sub(&m21, &[&[&[1, 2, 3, 4, 5, 6, 7]]])?,
        sub(&m21, &[&[&[2, 3, 5], &[4, 7, 6]]])?,
        true,
    );

    let q8 = quaternion8()?;
    let (i, j) = (q8.generators()[0].clone(), q8.generators()[1].clone());
    add(
        "Q8; <i>, <j>",
        Subgroup::generated(&q8, &[i])?,
        Subgroup::generated(&q8, &[j])?,
        true,
    );

    let s3s3 = direct_product(&s3, &s3)?;
    add(
        "S3xS3; S3x1, 1xS3",
        sub(&s3s3, &[&[&[1, 2]], &[&[1, 2, 3]]])?,
        sub(&s3s3, &[&[&[4, 5]], &[&[4, 5, 6]]])?,
        true,
    );
    add(
        "S3xS3; S3xC3, 1xC2",
        sub(&s3s3, &[&[&[1, 2]], &[&[1, 2, 3]], &[&[4, 5, 6]]])?,
        sub(&s3s3, &[&[&[4, 5]]])?,
        true,
    );

    let mut out = Vec::new();
    for kind in [CaseKind::TotallyPermutable, CaseKind::Tcc] {
        for (name, h, k, expected) in &triples {
            out.push(FactorizationCase::new(
                name.clone(),
                h.clone(),
                k.clone(),
                kind,
                Some(*expected),
            )?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn constructor_orders() {
        assert_eq!(dihedral(4).unwrap().order(), 8);
        assert_eq!(symmetric(4).unwrap().order(), 24);
        assert_eq!(metacyclic_21().unwrap().order(), 21);
        assert!(!metacyclic_21().unwrap().is_abelian());
        assert_eq!(alternating(5).unwrap().order(), 60);
        assert_eq!(alternating(2).unwrap().order(), 1);
        assert_eq!(symmetric(1).unwrap().order(), 1);
        assert_eq!(cyclic(1).unwrap().order(), 1);
        assert_eq!(elementary_abelian(3, 2).unwrap().order(), 9);
        let q8 = quaternion8().unwrap();
        assert_eq!(q8.order(), 8);
        assert!(!q8.is_abelian());
        let involutions = (0..8u32).filter(|&x| q8.element_order(x) == 2).count();
        assert_eq!(involutions, 1);
    }

    #[test]
    fn constructor_caps() {
        assert!(symmetric(7).is_err());
        assert!(alternating(7).is_err());
        assert!(elementary_abelian(2, 9).is_err());
        assert!(elementary_abelian(4, 2).is_err());
        assert!(dihedral(2).is_err());
        assert!(cyclic(0).is_err());
    }

    #[test]
    fn direct_product_order() {
        let g = direct_product(&symmetric(3).unwrap(), &cyclic(4).unwrap()).unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(g.degree(), 7);
    }

    #[test]
    fn catalog_shape() {
        let cat = standard_catalog();
        assert!(cat.len() >= 40);
        let names: HashSet<&str> = cat.iter().map(|e| e.name.as_str()).collect();
        assert_eq!(names.len(), cat.len());
        let a4 = cat.iter().find(|e| e.name == "A4").unwrap();
        assert_eq!(a4.expected, Some(false));
        let m21 = cat.iter().find(|e| e.name == "M21").unwrap();
        assert_eq!(m21.expected, Some(true));
        assert!(cat.iter().filter(|e| e.name.contains('x')).count() >= 10);
        assert!(cat.iter().all(|e| e.group.degree() <= 32));
    }

    #[test]
    fn lookup_by_name() {
        assert_eq!(catalog_entry("Q8").unwrap().group.order(), 8);
        assert!(matches!(catalog_entry("nope"), Err(Error::UnknownGroup(_))));
    }

    #[test]
    fn factorizations_cover_their_groups() {
        let cases = factorization_cases().unwrap();
        for required in [
            "S3; C3, C2",
            "C6; C2, C3",
            "S4; D4, C3",
            "D4; C4, C2",
            "A4; V4, C3",
        ] {
            assert!(cases.iter().any(|c| c.name == required), "{required}");
        }
        for c in &cases {
            let meet = c.h.intersection(&c.k).unwrap().order();
            assert_eq!(
                c.h.order() * c.k.order() / meet,
                c.group.order(),
                "{}",
                c.name
            );
        }
    }
}
