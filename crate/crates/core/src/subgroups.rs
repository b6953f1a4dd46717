//! Exhaustive subgroup-lattice computations.
//!
//! Every subgroup is a join of cyclic subgroups, so the lattice is found by
//! listing the cyclic subgroups and closing the list under joining with them
//! until nothing new appears.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Group, Lattice, Subgroup};
use crate::set::ElementSet;

/// All subgroups of a group, sorted by `(order, member index list)`.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    pub parent: Arc<Group>,
    pub subgroups: Vec<Subgroup>,
}

impl SubgroupLattice {
    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Subgroup> {
        self.subgroups.iter()
    }
}

fn enumerate(g: &Group, ambient: &ElementSet) -> Result<Vec<Arc<ElementSet>>> {
    let cap = g.limits().max_subgroups;

    let mut cyclic: Vec<(u32, ElementSet)> = Vec::new();
    let mut seen: HashSet<ElementSet> = HashSet::new();
    for a in ambient.iter() {
        let mut set = ElementSet::empty(g.order());
        let mut x = 0;
        loop {
            set.insert(x);
            x = g.mul(x, a);
            if x == 0 {
                break;
            }
        }
        if seen.insert(set.clone()) {
            cyclic.push((a, set));
        }
    }

    let mut found: Vec<(ElementSet, Vec<u32>)> = cyclic
        .iter()
        .map(|(a, set)| (set.clone(), if *a == 0 { vec![] } else { vec![*a] }))
        .collect();
    if found.len() > cap {
        return Err(Error::LatticeCap { cap });
    }

    let mut next = 0;
    while next < found.len() {
        let (members, gens) = found[next].clone();
        next += 1;
        for (c, cset) in &cyclic {
            if cset.is_subset(&members) {
                continue;
            }
            let mut joined_gens = gens.clone();
            joined_gens.push(*c);
            let joined = g.closure(&joined_gens);
            if seen.insert(joined.clone()) {
                found.push((joined, joined_gens));
                if found.len() > cap {
                    return Err(Error::LatticeCap { cap });
                }
            }
        }
    }

    let mut out: Vec<Arc<ElementSet>> = found.into_iter().map(|(s, _)| Arc::new(s)).collect();
    out.sort_by(|a, b| a.canonical_cmp(b));
    Ok(out)
}

fn lattice_sets(g: &Arc<Group>) -> Result<Lattice> {
    g.cached_lattice(|| enumerate(g, &ElementSet::full(g.order())).map(Arc::new))
}

/// The complete subgroup lattice of `g`. Computed once per group and cached.
pub fn all_subgroups(g: &Arc<Group>) -> Result<SubgroupLattice> {
    let sets = lattice_sets(g)?;
    Ok(SubgroupLattice {
        parent: g.clone(),
        subgroups: sets
            .iter()
            .map(|s| Subgroup::from_shared(g.clone(), s.clone()))
            .collect(),
    })
}

/// All subgroups of `h`, as subgroups of `h`'s parent, in canonical order.
pub fn subgroups_of(h: &Subgroup) -> Result<Vec<Subgroup>> {
    if h.is_whole() {
        return Ok(all_subgroups(h.parent())?.subgroups);
    }
    Ok(enumerate(h.parent(), h.members())?
        .into_iter()
        .map(|s| Subgroup::from_shared(h.parent().clone(), s))
        .collect())
}

fn check_parent(g: &Arc<Group>, h: &Subgroup) -> Result<()> {
    if Arc::ptr_eq(g, h.parent()) {
        Ok(())
    } else {
        Err(Error::ParentMismatch)
    }
}

/// `|G : H|`.
pub fn index(g: &Arc<Group>, h: &Subgroup) -> Result<usize> {
    check_parent(g, h)?;
    Ok(g.order() / h.order())
}

/// Proper subgroups not strictly contained in another proper subgroup.
pub fn maximal_subgroups(g: &Arc<Group>) -> Result<Vec<Subgroup>> {
    let lattice = all_subgroups(g)?;
    let proper: Vec<&Subgroup> = lattice.iter().filter(|h| !h.is_whole()).collect();
    Ok(proper
        .iter()
        .enumerate()
        .filter(|(i, h)| {
            !proper[i + 1..]
                .iter()
                .any(|k| k.order() > h.order() && h.members().is_subset(k.members()))
        })
        .map(|(_, h)| (*h).clone())
        .collect())
}

/// Normality is tested by conjugating with the generators of `g` only.
pub fn is_normal(g: &Arc<Group>, h: &Subgroup) -> Result<bool> {
    check_parent(g, h)?;
    Ok(normal_unchecked(g, h))
}

fn normal_unchecked(g: &Group, h: &Subgroup) -> bool {
    g.generator_indices()
        .iter()
        .all(|&s| h.members().iter().all(|x| h.contains(g.conj(x, s))))
}

pub fn normal_subgroups(g: &Arc<Group>) -> Result<Vec<Subgroup>> {
    Ok(all_subgroups(g)?
        .subgroups
        .into_iter()
        .filter(|h| normal_unchecked(g, h))
        .collect())
}

/// Nontrivial normal subgroups containing no smaller nontrivial normal
/// subgroup.
pub fn minimal_normal_subgroups(g: &Arc<Group>) -> Result<Vec<Subgroup>> {
    let normals: Vec<Subgroup> = normal_subgroups(g)?
        .into_iter()
        .filter(|n| !n.is_trivial())
        .collect();
    Ok(normals
        .iter()
        .filter(|n| {
            !normals
                .iter()
                .any(|m| m.order() < n.order() && m.members().is_subset(n.members()))
        })
        .cloned()
        .collect())
}

/// The set `XY = {x·y : x ∈ X, y ∈ Y}` as indices into the parent.
pub fn product_set(x: &Subgroup, y: &Subgroup) -> Result<ElementSet> {
    x.check_parent(y)?;
    let g = x.parent();
    let mut out = ElementSet::empty(g.order());
    for a in x.members().iter() {
        for b in y.members().iter() {
            out.insert(g.mul(a, b));
        }
    }
    Ok(out)
}

/// `XY = YX` as sets.
pub fn permutes(x: &Subgroup, y: &Subgroup) -> Result<bool> {
    x.check_parent(y)?;
    Ok(permutes_unchecked(x, y))
}

pub(crate) fn permutes_unchecked(x: &Subgroup, y: &Subgroup) -> bool {
    if x.order() == 1 || y.order() == 1 || y.is_subgroup_of(x) || x.is_subgroup_of(y) {
        return true;
    }
    let g = x.parent();
    // |XY| = |X||Y|/|X∩Y| is always true, so XY = YX iff YX ⊆ XY.
    let xy = product_set(x, y).expect("same parent");
    y.members()
        .iter()
        .all(|b| x.members().iter().all(|a| xy.contains(g.mul(b, a))))
}
