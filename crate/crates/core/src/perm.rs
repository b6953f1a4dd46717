//! Permutations of the points `1..=degree`.
//!
//! Products read left to right: `p.compose(&q)` applies `p` first and then
//! `q`. Conjugation follows the same convention, `p^s = s⁻¹ · p · s`, so the
//! conjugate sends `s(i)` to `s(p(i))`.

use std::fmt;

use crate::error::{Error, Result};

/// Hard ceiling imposed by the compact image storage. Group construction
/// applies the (much smaller) configurable cap from [`crate::Limits`].
pub const MAX_STORAGE_DEGREE: usize = u8::MAX as usize;

/// A bijection on `{1, …, degree}`.
///
/// Images are stored zero-based. The derived ordering is lexicographic on the
/// image sequence, which is the canonical element order used everywhere.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= MAX_STORAGE_DEGREE, "degree {degree} too large");
        Perm {
            images: (0..degree as u8).collect(),
        }
    }

    /// Builds a permutation from one-based images: `images[i - 1]` is the
    /// image of point `i`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let degree = images.len();
        if degree > MAX_STORAGE_DEGREE {
            return Err(Error::InvalidPerm(format!("degree {degree} too large")));
        }
        let mut seen = vec![false; degree];
        let mut out = Vec::with_capacity(degree);
        for (i, &img) in images.iter().enumerate() {
            if img == 0 || img > degree {
                return Err(Error::InvalidPerm(format!(
                    "image {img} of point {} outside 1..={degree}",
                    i + 1
                )));
            }
            if std::mem::replace(&mut seen[img - 1], true) {
                return Err(Error::InvalidPerm(format!("point {img} appears twice")));
            }
            out.push((img - 1) as u8);
        }
        Ok(Perm { images: out })
    }

    /// Builds a permutation from disjoint cycles of one-based points.
    pub fn from_cycles<C: AsRef<[usize]>>(degree: usize, cycles: &[C]) -> Result<Self> {
        if degree > MAX_STORAGE_DEGREE {
            return Err(Error::InvalidPerm(format!("degree {degree} too large")));
        }
        let mut images: Vec<usize> = (1..=degree).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            let cycle = cycle.as_ref();
            for (k, &pt) in cycle.iter().enumerate() {
                if pt == 0 || pt > degree {
                    return Err(Error::InvalidPerm(format!(
                        "point {pt} outside 1..={degree}"
                    )));
                }
                if std::mem::replace(&mut moved[pt - 1], true) {
                    return Err(Error::InvalidPerm(format!(
                        "cycles are not disjoint at point {pt}"
                    )));
                }
                images[pt - 1] = cycle[(k + 1) % cycle.len()];
            }
        }
        Perm::from_images(&images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the one-based `point`.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point - 1] as usize + 1
    }

    /// One-based image sequence.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &img)| i == img as usize)
    }

    /// `self · other`: apply `self`, then `other`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        self.check_degree(other)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Perm) -> Perm {
        Perm {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut out = vec![0u8; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            out[img as usize] = i as u8;
        }
        Perm { images: out }
    }

    /// `s⁻¹ · self · s`.
    pub fn conjugate(&self, s: &Perm) -> Result<Perm> {
        self.check_degree(s)?;
        Ok(self.conjugate_unchecked(s))
    }

    pub(crate) fn conjugate_unchecked(&self, s: &Perm) -> Perm {
        let mut out = vec![0u8; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            out[s.images[i] as usize] = s.images[img as usize];
        }
        Perm { images: out }
    }

    /// Smallest `k ≥ 1` with `self^k = id`.
    pub fn order(&self) -> usize {
        let mut seen = vec![false; self.images.len()];
        let mut lcm = 1usize;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut pt = start;
            while !seen[pt] {
                seen[pt] = true;
                pt = self.images[pt] as usize;
                len += 1;
            }
            lcm = lcm / gcd(lcm, len) * len;
        }
        lcm
    }

    /// Disjoint cycles of length ≥ 2, each starting at its smallest point,
    /// ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut pt = start;
            while !seen[pt] {
                seen[pt] = true;
                cycle.push(pt + 1);
                pt = self.images[pt] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Same permutation acting on `offset + 1 ..= offset + degree` inside a
    /// larger point set of size `total`.
    pub fn shifted(&self, offset: usize, total: usize) -> Perm {
        assert!(offset + self.degree() <= total);
        let mut images: Vec<u8> = (0..total as u8).collect();
        for (i, &img) in self.images.iter().enumerate() {
            images[offset + i] = (offset + img as usize) as u8;
        }
        Perm { images }
    }

    fn check_degree(&self, other: &Perm) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(())
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (k, pt) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{pt}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}; {}]", self.degree(), self)
    }
}
