//! Frattini, Sylow and Hall subgroups, chief series and the decomposition
//! of an elementary abelian normal subgroup into minimal normal subgroups.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{join, trivial, whole, Group, Subgroup};
use crate::subgroups::{
    all_subgroups, is_normal, maximal_subgroups, minimal_normal_subgroups, normal_subgroups,
};

pub fn is_prime(n: usize) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Prime divisors of `n`, ascending.
pub fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: usize, p: usize) -> usize {
    let mut part = 1;
    while n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}

/// π(G): the primes dividing `|G|`, ascending.
pub fn primes_of(g: &Group) -> Vec<usize> {
    prime_divisors(g.order())
}

fn require_prime(p: usize) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{p} is not prime")))
    }
}

/// Intersection of all maximal subgroups; the trivial group is its own
/// Frattini subgroup.
pub fn frattini(g: &Arc<Group>) -> Result<Subgroup> {
    let maximals = maximal_subgroups(g)?;
    let mut acc = whole(g);
    for m in &maximals {
        acc = acc.intersection(m)?;
    }
    Ok(acc)
}

/// First subgroup in canonical lattice order whose order is the full
/// `p`-part of `|G|`.
pub fn sylow(g: &Arc<Group>, p: usize) -> Result<Subgroup> {
    require_prime(p)?;
    let target = p_part(g.order(), p);
    if target == 1 {
        return Ok(trivial(g));
    }
    all_subgroups(g)?
        .subgroups
        .into_iter()
        .find(|h| h.order() == target)
        .ok_or_else(|| Error::Consistency(format!("no Sylow {p}-subgroup of order {target}")))
}

/// First subgroup of order `|G| / p^a` in canonical order, if any.
pub fn hall_complement(g: &Arc<Group>, p: usize) -> Result<Option<Subgroup>> {
    require_prime(p)?;
    let target = g.order() / p_part(g.order(), p);
    Ok(all_subgroups(g)?
        .subgroups
        .into_iter()
        .find(|h| h.order() == target))
}

/// Which cover to take when several normal subgroups cover the current term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    CanonicalFirst,
    CanonicalLast,
}

#[derive(Debug, Clone)]
pub struct ChiefSeries {
    /// Ascending from the trivial subgroup to the whole group.
    pub chain: Vec<Subgroup>,
    /// `|chain[i+1] : chain[i]|`.
    pub factor_orders: Vec<usize>,
}

pub fn chief_series(g: &Arc<Group>) -> Result<ChiefSeries> {
    chief_series_with(g, TieBreak::CanonicalFirst)
}

/// Greedy chain of normal subgroups. Each step moves to a normal subgroup
/// that properly contains the current term with no normal subgroup strictly
/// in between.
pub fn chief_series_with(g: &Arc<Group>, tie: TieBreak) -> Result<ChiefSeries> {
    let normals = normal_subgroups(g)?;
    let mut current = trivial(g);
    let mut chain = vec![current.clone()];
    let mut factor_orders = Vec::new();
    while !current.is_whole() {
        let above: Vec<&Subgroup> = normals
            .iter()
            .filter(|n| n.order() > current.order() && current.is_subgroup_of(n))
            .collect();
        let covers = above.iter().filter(|n| {
            !above
                .iter()
                .any(|m| m.order() < n.order() && m.is_subgroup_of(n))
        });
        let next = match tie {
            TieBreak::CanonicalFirst => covers.into_iter().next(),
            TieBreak::CanonicalLast => covers.into_iter().next_back(),
        }
        .ok_or_else(|| {
            Error::Consistency("normal subgroup chain stalled below the whole group".into())
        })?;
        factor_orders.push(next.order() / current.order());
        current = (*next).clone();
        chain.push(current.clone());
    }
    Ok(ChiefSeries {
        chain,
        factor_orders,
    })
}

/// Abelian, and every non-identity element has order `p`.
pub fn is_elementary_abelian(h: &Subgroup, p: usize) -> bool {
    let g = h.parent();
    h.is_abelian() && h.members().iter().skip(1).all(|x| g.element_order(x) == p)
}

#[derive(Debug, Clone)]
pub struct MaschkeDecomposition {
    pub components: Vec<Subgroup>,
}

impl MaschkeDecomposition {
    pub fn m(&self) -> usize {
        self.components.len()
    }
}

/// Writes an elementary abelian normal subgroup `P` as an internal direct
/// product of minimal normal subgroups of `G`.
///
/// Components are chosen greedily: the canonical-first minimal normal
/// subgroup inside `P` meeting the product so far trivially. When the
/// minimal normal subgroups inside `P` do not generate it, no decomposition
/// exists. That is a consistency error if `P` is a Sylow subgroup or meets
/// `Φ(G)` trivially, and a precondition error otherwise.
pub fn maschke_decompose(g: &Arc<Group>, p: &Subgroup) -> Result<MaschkeDecomposition> {
    if !is_normal(g, p)? {
        return Err(Error::Precondition("subgroup is not normal".into()));
    }
    if p.is_trivial() {
        return Ok(MaschkeDecomposition { components: vec![] });
    }
    let primes = prime_divisors(p.order());
    if primes.len() != 1 || !is_elementary_abelian(p, primes[0]) {
        return Err(Error::Precondition(
            "subgroup is not elementary abelian".into(),
        ));
    }

    let candidates: Vec<Subgroup> = minimal_normal_subgroups(g)?
        .into_iter()
        .filter(|n| n.is_subgroup_of(p))
        .collect();
    let mut product = trivial(g);
    let mut components: Vec<Subgroup> = Vec::new();
    while product.order() < p.order() {
        let next = candidates.iter().find(|n| {
            n.intersection(&product)
                .map(|i| i.is_trivial())
                .unwrap_or(false)
        });
        let Some(next) = next else {
            let sylow = p_part(g.order(), primes[0]) == p.order();
            let msg = format!(
                "minimal normal subgroups inside P generate order {} of {}",
                product.order(),
                p.order()
            );
            if sylow || p.intersection(&frattini(g)?)?.is_trivial() {
                return Err(Error::Consistency(msg));
            }
            return Err(Error::Precondition(format!(
                "{msg}; P is not Sylow and meets the Frattini subgroup nontrivially"
            )));
        };
        let joined = join(&product, next)?;
        if joined.order() != product.order() * next.order() {
            return Err(Error::Consistency("partial product is not direct".into()));
        }
        product = joined;
        components.push(next.clone());
    }
    if product != *p {
        return Err(Error::Consistency(
            "components do not generate the subgroup".into(),
        ));
    }
    Ok(MaschkeDecomposition { components })
}
