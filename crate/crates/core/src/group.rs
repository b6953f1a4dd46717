//! Permutation groups with a fully enumerated element table, and subgroups
//! as subsets of that table.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::set::ElementSet;

/// Largest order for which a full multiplication table is kept.
const TABLE_MAX_ORDER: usize = 1024;

/// Enumeration caps and budgets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_degree: usize,
    pub max_order: usize,
    pub max_subgroups: usize,
    /// Elementary-check budget for tcc-permutability searches.
    pub check_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_degree: 32,
            max_order: 20_000,
            max_subgroups: 5_000,
            check_budget: 10_000_000,
        }
    }
}

pub(crate) type Lattice = Arc<Vec<Arc<ElementSet>>>;

/// A permutation group given by generators, with every element listed in
/// lexicographic order of image sequences. Index 0 is always the identity.
pub struct Group {
    degree: usize,
    generators: Vec<Perm>,
    generator_indices: Vec<u32>,
    elements: Vec<Perm>,
    lookup: HashMap<Perm, u32>,
    table: Option<Vec<u32>>,
    inverses: Vec<u32>,
    limits: Limits,
    lattice: OnceLock<Result<Lattice>>,
}

impl Group {
    pub fn from_generators(degree: usize, generators: Vec<Perm>) -> Result<Arc<Group>> {
        Group::with_limits(degree, generators, Limits::default())
    }

    /// Breadth-first closure of `generators`.
    pub fn with_limits(degree: usize, generators: Vec<Perm>, limits: Limits) -> Result<Arc<Group>> {
        if degree > limits.max_degree {
            return Err(Error::DegreeCap {
                degree,
                cap: limits.max_degree,
            });
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let id = Perm::identity(degree);
        let mut seen: std::collections::HashSet<Perm> = [id.clone()].into_iter().collect();
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = x.compose_unchecked(g);
                if !seen.contains(&y) {
                    if seen.len() >= limits.max_order {
                        return Err(Error::OrderCap {
                            cap: limits.max_order,
                        });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Perm> = seen.into_iter().collect();
        elements.sort();
        Ok(Arc::new(Group::assemble(
            degree, generators, elements, limits,
        )))
    }

    /// Builds the group from an already closed, sorted element list.
    fn assemble(
        degree: usize,
        generators: Vec<Perm>,
        elements: Vec<Perm>,
        limits: Limits,
    ) -> Group {
        let order = elements.len();
        let lookup: HashMap<Perm, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let table = (order <= TABLE_MAX_ORDER).then(|| {
            let mut t = Vec::with_capacity(order * order);
            for a in &elements {
                for b in &elements {
                    t.push(lookup[&a.compose_unchecked(b)]);
                }
            }
            t
        });
        let inverses = elements.iter().map(|p| lookup[&p.inverse()]).collect();
        let generator_indices = generators.iter().map(|g| lookup[g]).collect();
        Group {
            degree,
            generators,
            generator_indices,
            elements,
            lookup,
            table,
            inverses,
            limits,
            lattice: OnceLock::new(),
        }
    }

    /// A copy of this group governed by different caps. The cached lattice
    /// is not carried over.
    pub fn relimit(&self, limits: Limits) -> Arc<Group> {
        Arc::new(Group::assemble(
            self.degree,
            self.generators.clone(),
            self.elements.clone(),
            limits,
        ))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub(crate) fn generator_indices(&self) -> &[u32] {
        &self.generator_indices
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> &Perm {
        &self.elements[i as usize]
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn index_of(&self, p: &Perm) -> Option<u32> {
        self.lookup.get(p).copied()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.lookup.contains_key(p)
    }

    pub fn is_abelian(&self) -> bool {
        self.generator_indices.iter().enumerate().all(|(k, &a)| {
            self.generator_indices[k + 1..]
                .iter()
                .all(|&b| self.mul(a, b) == self.mul(b, a))
        })
    }

    /// Index of `elements[a] · elements[b]`.
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.order() + b as usize],
            None => {
                self.lookup
                    [&self.elements[a as usize].compose_unchecked(&self.elements[b as usize])]
            }
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    /// Index of `elements[x]^elements[s] = s⁻¹ x s`.
    #[inline]
    pub fn conj(&self, x: u32, s: u32) -> u32 {
        self.mul(self.mul(self.inv(s), x), s)
    }

    pub fn element_order(&self, a: u32) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Closure of a set of element indices under multiplication.
    pub(crate) fn closure(&self, gens: &[u32]) -> ElementSet {
        let mut set = ElementSet::empty(self.order());
        set.insert(0);
        let mut stack = vec![0u32];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    stack.push(y);
                }
            }
        }
        set
    }

    pub(crate) fn cached_lattice(
        &self,
        build: impl FnOnce() -> Result<Lattice>,
    ) -> Result<Lattice> {
        self.lattice.get_or_init(build).clone()
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// The whole group as a subgroup of itself.
pub fn whole(group: &Arc<Group>) -> Subgroup {
    Subgroup::from_set(group.clone(), ElementSet::full(group.order()))
}

/// The trivial subgroup.
pub fn trivial(group: &Arc<Group>) -> Subgroup {
    Subgroup::from_set(group.clone(), ElementSet::from_indices(group.order(), [0]))
}

/// A subgroup of `parent`, identified by its member-index set.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<Group>,
    members: Arc<ElementSet>,
}

impl Subgroup {
    /// Wraps a member set assumed to be closed. Callers inside the crate
    /// only pass sets produced by closure or lattice enumeration.
    pub(crate) fn from_set(parent: Arc<Group>, members: ElementSet) -> Self {
        Subgroup {
            parent,
            members: Arc::new(members),
        }
    }

    pub(crate) fn from_shared(parent: Arc<Group>, members: Arc<ElementSet>) -> Self {
        Subgroup { parent, members }
    }

    /// The subgroup of `parent` generated by `gens`.
    pub fn generated(parent: &Arc<Group>, gens: &[Perm]) -> Result<Subgroup> {
        let idx = gens
            .iter()
            .map(|g| {
                parent
                    .index_of(g)
                    .ok_or_else(|| Error::NotInParent(g.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Subgroup::from_set(parent.clone(), parent.closure(&idx)))
    }

    /// Checks closure before accepting an arbitrary index set.
    pub fn from_indices(parent: &Arc<Group>, indices: &[u32]) -> Result<Subgroup> {
        if let Some(&bad) = indices.iter().find(|&&i| i as usize >= parent.order()) {
            return Err(Error::NotInParent(format!("index {bad}")));
        }
        let set = ElementSet::from_indices(parent.order(), indices.iter().copied());
        if !set.contains(0) {
            return Err(Error::Precondition(
                "subset does not contain the identity".into(),
            ));
        }
        for a in set.iter() {
            for b in set.iter() {
                if !set.contains(parent.mul(a, b)) {
                    return Err(Error::Precondition(
                        "subset is not closed under composition".into(),
                    ));
                }
            }
        }
        Ok(Subgroup::from_set(parent.clone(), set))
    }

    pub fn parent(&self) -> &Arc<Group> {
        &self.parent
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    /// Sorted indices into the parent's element table.
    pub fn member_indices(&self) -> Vec<u32> {
        self.members.to_vec()
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, i: u32) -> bool {
        self.members.contains(i)
    }

    pub fn contains_perm(&self, p: &Perm) -> bool {
        self.parent.index_of(p).is_some_and(|i| self.contains(i))
    }

    pub fn elements(&self) -> impl Iterator<Item = &Perm> + '_ {
        self.members.iter().map(|i| self.parent.element(i))
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.parent.order()
    }

    pub fn same_parent(&self, other: &Subgroup) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent)
    }

    pub(crate) fn check_parent(&self, other: &Subgroup) -> Result<()> {
        if self.same_parent(other) {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.same_parent(other) && self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_parent(other)?;
        Ok(Subgroup::from_set(
            self.parent.clone(),
            self.members.intersection(&other.members),
        ))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generator_indices();
        let g = &self.parent;
        gens.iter()
            .enumerate()
            .all(|(k, &a)| gens[k + 1..].iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    /// A small generating set chosen greedily in canonical element order:
    /// an element is kept when it is not already in the span of the earlier
    /// choices.
    pub(crate) fn generator_indices(&self) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut span = ElementSet::from_indices(self.parent.order(), [0]);
        for x in self.members.iter() {
            if span.len() == self.order() {
                break;
            }
            if !span.contains(x) {
                gens.push(x);
                span = self.parent.closure(&gens);
            }
        }
        gens
    }

    pub fn generators(&self) -> Vec<Perm> {
        self.generator_indices()
            .into_iter()
            .map(|i| self.parent.element(i).clone())
            .collect()
    }

    /// The subgroup as a group in its own right. Its element table keeps the
    /// canonical order because the parent table is already sorted.
    pub fn to_group(&self) -> Arc<Group> {
        let elements: Vec<Perm> = self.elements().cloned().collect();
        Arc::new(Group::assemble(
            self.parent.degree(),
            self.generators(),
            elements,
            self.parent.limits(),
        ))
    }

    /// The same set of permutations viewed inside `target`.
    pub fn transfer(&self, target: &Arc<Group>) -> Result<Subgroup> {
        let mut set = ElementSet::empty(target.order());
        for p in self.elements() {
            let i = target
                .index_of(p)
                .ok_or_else(|| Error::NotInParent(p.to_string()))?;
            set.insert(i);
        }
        Ok(Subgroup::from_set(target.clone(), set))
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.same_parent(other) && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators().iter().map(|g| g.to_string()).collect();
        write!(f, "Subgroup(order {}, <{}>)", self.order(), gens.join(", "))
    }
}

/// `K^h = {h⁻¹ k h : k ∈ K}` for `h` in the parent group.
pub fn conjugate_subgroup(k: &Subgroup, h: &Perm) -> Result<Subgroup> {
    let g = k.parent();
    let hi = g
        .index_of(h)
        .ok_or_else(|| Error::NotInParent(h.to_string()))?;
    Ok(conjugate_subgroup_by_index(k, hi))
}

pub(crate) fn conjugate_subgroup_by_index(k: &Subgroup, h: u32) -> Subgroup {
    let g = k.parent();
    let set = ElementSet::from_indices(g.order(), k.members().iter().map(|x| g.conj(x, h)));
    Subgroup::from_set(g.clone(), set)
}

/// Smallest subgroup containing both `a` and `b`.
pub fn join(a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
    a.check_parent(b)?;
    if b.is_subgroup_of(a) {
        return Ok(a.clone());
    }
    if a.is_subgroup_of(b) {
        return Ok(b.clone());
    }
    let mut gens = a.generator_indices();
    gens.extend(b.generator_indices());
    Ok(Subgroup::from_set(
        a.parent().clone(),
        a.parent().closure(&gens),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(degree: usize, cycles: &[&[usize]]) -> Perm {
        Perm::from_cycles(degree, cycles).unwrap()
    }

    fn s3() -> Arc<Group> {
        Group::from_generators(3, vec![p(3, &[&[1, 2]]), p(3, &[&[1, 2, 3]])]).unwrap()
    }

    #[test]
    fn generation_examples() {
        let c5 = Group::from_generators(5, vec![p(5, &[&[1, 2, 3, 4, 5]])]).unwrap();
        assert_eq!(c5.order(), 5);
        assert_eq!(s3().order(), 6);
        let t = Group::from_generators(4, vec![]).unwrap();
        assert_eq!(t.order(), 1);
        assert!(t.element(0).is_identity());
    }

    #[test]
    fn element_table_is_sorted_and_starts_with_identity() {
        let g = s3();
        assert!(g.element(0).is_identity());
        assert!(g.elements().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn caps_are_enforced() {
        let limits = Limits {
            max_order: 10,
            ..Limits::default()
        };
        let s4 = vec![p(4, &[&[1, 2]]), p(4, &[&[1, 2, 3, 4]])];
        assert_eq!(
            Group::with_limits(4, s4, limits).unwrap_err(),
            Error::OrderCap { cap: 10 }
        );
        assert!(matches!(
            Group::from_generators(33, vec![]).unwrap_err(),
            Error::DegreeCap {
                degree: 33,
                cap: 32
            }
        ));
        assert!(matches!(
            Group::from_generators(4, vec![Perm::identity(3)]).unwrap_err(),
            Error::DegreeMismatch { .. }
        ));
    }

    #[test]
    fn table_free_multiplication_agrees() {
        // order 5040 > TABLE_MAX_ORDER exercises the lookup path
        let g = Group::from_generators(7, vec![p(7, &[&[1, 2]]), p(7, &[&[1, 2, 3, 4, 5, 6, 7]])])
            .unwrap();
        assert_eq!(g.order(), 5040);
        for (a, b) in [(3u32, 4000u32), (17, 17), (5039, 1)] {
            let direct = g.element(a).compose(g.element(b)).unwrap();
            assert_eq!(g.element(g.mul(a, b)), &direct);
        }
        assert_eq!(g.mul(g.inv(1234), 1234), 0);
    }

    #[test]
    fn join_examples() {
        let g = s3();
        let a = Subgroup::generated(&g, &[p(3, &[&[1, 2]])]).unwrap();
        let b = Subgroup::generated(&g, &[p(3, &[&[1, 3]])]).unwrap();
        assert_eq!(join(&a, &a).unwrap(), a);
        assert_eq!(join(&a, &b).unwrap().order(), 6);
        assert_eq!(join(&trivial(&g), &b).unwrap(), b);
    }

    #[test]
    fn join_rejects_foreign_parent() {
        let a = whole(&s3());
        let b = whole(&s3());
        assert_eq!(join(&a, &b).unwrap_err(), Error::ParentMismatch);
    }

    #[test]
    fn conjugate_subgroup_examples() {
        let g = s3();
        let k = Subgroup::generated(&g, &[p(3, &[&[1, 2]])]).unwrap();
        assert_eq!(conjugate_subgroup(&k, &Perm::identity(3)).unwrap(), k);
        let expected = Subgroup::generated(&g, &[p(3, &[&[2, 3]])]).unwrap();
        assert_eq!(conjugate_subgroup(&k, &p(3, &[&[1, 3]])).unwrap(), expected);
        let w = whole(&g);
        assert_eq!(conjugate_subgroup(&w, &p(3, &[&[1, 2, 3]])).unwrap(), w);
        assert!(matches!(
            conjugate_subgroup(&k, &p(4, &[&[1, 4]])).unwrap_err(),
            Error::NotInParent(_)
        ));
    }

    #[test]
    fn from_indices_validates_closure() {
        let g = s3();
        assert!(Subgroup::from_indices(&g, &[0, 1, 2]).is_err());
        let c3 = Subgroup::generated(&g, &[p(3, &[&[1, 2, 3]])]).unwrap();
        assert_eq!(
            Subgroup::from_indices(&g, &c3.member_indices()).unwrap(),
            c3
        );
    }

    #[test]
    fn to_group_and_transfer_round_trip() {
        let g = s3();
        let c3 = Subgroup::generated(&g, &[p(3, &[&[1, 2, 3]])]).unwrap();
        let h = c3.to_group();
        assert_eq!(h.order(), 3);
        assert_eq!(whole(&h).transfer(&g).unwrap(), c3);
    }
}
