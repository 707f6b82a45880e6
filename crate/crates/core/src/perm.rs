//! Permutations of {0..n-1} in image-array form.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A permutation of the points 0..degree-1, stored as its image array.
///
/// The derived `Ord` is lexicographic on the image array, which is the
/// tie-break order used everywhere a canonical element is needed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree).collect(),
        }
    }

    /// Build from an image array, checking that it is a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &p in &images {
            if p >= n {
                return Err(Error::InvalidPerm(format!("image {p} out of range 0..{n}")));
            }
            if seen[p] {
                return Err(Error::InvalidPerm(format!("image {p} repeated")));
            }
            seen[p] = true;
        }
        Ok(Perm { images })
    }

    /// Build from disjoint-cycle notation; points absent from every cycle are fixed.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Perm> {
        let mut images: Vec<usize> = (0..degree).collect();
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                let q = cycle[(k + 1) % cycle.len()];
                if p >= degree || q >= degree {
                    return Err(Error::InvalidPerm(format!(
                        "cycle point out of range 0..{degree}"
                    )));
                }
                images[p] = q;
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Group product `self * other`, read as composition: apply `other` first.
    ///
    /// (self * other)(x) = self(other(x)). This matches the convention used
    /// for automorphism products throughout the crate.
    pub fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (i, &p) in self.images.iter().enumerate() {
            images[p] = i;
        }
        Perm { images }
    }

    /// Order of the permutation: lcm of its cycle lengths.
    pub fn order(&self) -> usize {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut ord = 1usize;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p];
                len += 1;
            }
            ord = lcm(ord, len);
        }
        ord
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}
