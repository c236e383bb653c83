//! Permutations on `{1, ..., degree}` stored as zero-based image arrays.

use std::fmt;

/// A permutation in one-line form: `images[i]` is the image of point `i + 1`
/// (zero-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u8).collect() }
    }

    /// Returns `None` unless `images` is a bijection of `0..len`.
    pub fn from_images(images: Vec<u8>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let slot = seen.get_mut(i as usize)?;
            if *slot {
                return None;
            }
            *slot = true;
        }
        Some(Permutation { images })
    }

    /// Cycle `(p1 p2 ... pk)` with one-based points.
    pub(crate) fn cycle(degree: usize, points: &[usize]) -> Self {
        let mut images: Vec<u8> = (0..degree as u8).collect();
        for (i, &p) in points.iter().enumerate() {
            let next = points[(i + 1) % points.len()];
            images[p - 1] = (next - 1) as u8;
        }
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    /// Image of the one-based `point`.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point - 1] as usize + 1
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: other.images.iter().map(|&i| self.images[i as usize]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    /// Nontrivial cycles with one-based points, each starting at its least
    /// point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.images[p] as usize;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// All permutations of the given degree in lexicographic one-line order.
    pub fn all(degree: usize) -> Vec<Permutation> {
        let mut current: Vec<u8> = (0..degree as u8).collect();
        let mut out = vec![Permutation { images: current.clone() }];
        // Standard next-permutation step.
        while let Some(i) = (1..current.len()).rev().find(|&i| current[i - 1] < current[i]) {
            let pivot = i - 1;
            let j = (pivot + 1..current.len()).rev().find(|&j| current[j] > current[pivot]).unwrap();
            current.swap(pivot, j);
            current[pivot + 1..].reverse();
            out.push(Permutation { images: current.clone() });
        }
        out
    }
}

impl fmt::Display for Permutation {
    /// Canonical cycle notation; the identity prints as `e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("e");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}
