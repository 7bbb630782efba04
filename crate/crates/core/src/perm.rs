//! Partial permutations of `{0, .., n-1}` (shown 1-based to users).
//!
//! Maps act on the right and compose left to right: `p.compose(&q)` sends
//! `i` to `q(p(i))`. All formulas elsewhere in the crate depend on this.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{input, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialPerm {
    image: Vec<Option<u32>>,
}

impl PartialPerm {
    /// Builds a partial permutation from 0-based images, checking injectivity.
    pub fn new(image: Vec<Option<u32>>) -> Result<Self> {
        let n = image.len();
        if n == 0 {
            return input("partial permutation must have positive degree");
        }
        let mut seen = vec![false; n];
        for (i, img) in image.iter().enumerate() {
            if let Some(j) = *img {
                let j = j as usize;
                if j >= n {
                    return input(format!("point {} maps to {} outside 1..{}", i + 1, j + 1, n));
                }
                if seen[j] {
                    return input(format!("point {} is the image of two points", j + 1));
                }
                seen[j] = true;
            }
        }
        Ok(PartialPerm { image })
    }

    /// Builds from 1-based `(point, image)` pairs; unlisted points are undefined.
    pub fn from_pairs(degree: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut image = vec![None; degree];
        for &(x, y) in pairs {
            if x == 0 || x > degree || y == 0 || y > degree {
                return input(format!("pair {x}->{y} outside 1..{degree}"));
            }
            if image[x - 1].is_some() {
                return input(format!("point {x} given twice"));
            }
            image[x - 1] = Some((y - 1) as u32);
        }
        Self::new(image)
    }

    pub fn identity(degree: usize) -> Self {
        PartialPerm {
            image: (0..degree as u32).map(Some).collect(),
        }
    }

    pub fn empty(degree: usize) -> Self {
        PartialPerm {
            image: vec![None; degree],
        }
    }

    /// Partial identity on the given 0-based points.
    pub fn partial_identity(degree: usize, points: &[usize]) -> Self {
        let mut image = vec![None; degree];
        for &p in points {
            image[p] = Some(p as u32);
        }
        PartialPerm { image }
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    pub fn get(&self, i: usize) -> Option<usize> {
        self.image[i].map(|j| j as usize)
    }

    pub fn images(&self) -> &[Option<u32>] {
        &self.image
    }

    pub fn rank(&self) -> usize {
        self.image.iter().filter(|x| x.is_some()).count()
    }

    pub fn compose(&self, other: &PartialPerm) -> Result<PartialPerm> {
        if self.degree() != other.degree() {
            return input(format!("degree mismatch: {} vs {}", self.degree(), other.degree()));
        }
        Ok(PartialPerm {
            image: self
                .image
                .iter()
                .map(|x| x.and_then(|j| other.image[j as usize]))
                .collect(),
        })
    }

    pub fn invert(&self) -> PartialPerm {
        let mut image = vec![None; self.degree()];
        for (i, x) in self.image.iter().enumerate() {
            if let Some(j) = *x {
                image[j as usize] = Some(i as u32);
            }
        }
        PartialPerm { image }
    }

    pub fn is_idempotent(&self) -> bool {
        self.image
            .iter()
            .enumerate()
            .all(|(i, x)| x.is_none_or(|j| j as usize == i))
    }

    /// Canonical element order: rank descending, then image arrays
    /// lexicographically with "undefined" below every point.
    pub fn canonical_cmp(&self, other: &PartialPerm) -> Ordering {
        other
            .rank()
            .cmp(&self.rank())
            .then_with(|| self.image.cmp(&other.image))
    }
}

impl fmt::Display for PartialPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.image.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            match x {
                Some(j) => write!(f, "{}", j + 1)?,
                None => write!(f, "-")?,
            }
        }
        write!(f, "]")
    }
}

impl fmt::Debug for PartialPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
