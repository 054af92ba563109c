use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `{0, .., degree - 1}` stored as its image array.
///
/// Products are read left to right: `a.then(&b)` applies `a` first, so points
/// carry a right action `x·(ab) = (x·a)·b`. The derived `Ord` is the
/// lexicographic order on image arrays, which fixes every representative
/// choice made elsewhere in the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u32).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::NotAPermutation(images));
            }
            seen[i] = true;
        }
        Ok(Perm(images.into_iter().map(|i| i as u32).collect()))
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1, 2]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (pos, &a) in cycle.iter().enumerate() {
                let b = cycle[(pos + 1) % cycle.len()];
                if a >= degree || b >= degree || touched[a] {
                    return Err(Error::NotAPermutation(cycle.to_vec()));
                }
                touched[a] = true;
                images[a] = b;
            }
        }
        Perm::from_images(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i as usize).collect()
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn pow(&self, k: u32) -> Perm {
        let mut acc = Perm::identity(self.degree());
        for _ in 0..k {
            acc = acc.then(self);
        }
        acc
    }

    /// Multiplicative order, computed as the lcm of cycle lengths.
    pub fn order(&self) -> u32 {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut order = 1u64;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.image(p);
                len += 1;
            }
            order = num_integer::lcm(order, len);
        }
        order as u32
    }

    /// Concatenates `self` on the first block of points and `other`, shifted, on the second.
    pub fn disjoint_sum(&self, other: &Perm) -> Perm {
        let shift = self.0.len() as u32;
        let mut images = self.0.clone();
        images.extend(other.0.iter().map(|&i| i + shift));
        Perm(images)
    }

    /// Splits a permutation that preserves `{0..left}` and its complement.
    pub fn split_at(&self, left: usize) -> Option<(Perm, Perm)> {
        let (a, b) = self.0.split_at(left);
        if a.iter().any(|&i| i as usize >= left) || b.iter().any(|&i| (i as usize) < left) {
            return None;
        }
        Some((
            Perm(a.to_vec()),
            Perm(b.iter().map(|&i| i - left as u32).collect()),
        ))
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = self.image(p);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_images(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn composition_reads_left_to_right() {
        let a = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.then(&b).image(0), 2);
        assert_eq!(a.then(&a.inverse()), Perm::identity(3));
    }

    #[test]
    fn order_is_lcm_of_cycle_lengths() {
        let p = Perm::from_cycles(5, &[&[0, 1], &[2, 3, 4]]).unwrap();
        assert_eq!(p.order(), 6);
        assert_eq!(Perm::identity(4).order(), 1);
    }

    #[test]
    fn identity_is_lexicographically_minimal() {
        let id = Perm::identity(3);
        let t = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        assert!(id < t);
    }

    #[test]
    fn split_inverts_disjoint_sum() {
        let a = Perm::from_cycles(2, &[&[0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[&[0, 2]]).unwrap();
        let s = a.disjoint_sum(&b);
        assert_eq!(s.split_at(2), Some((a, b)));
    }
}
