//! Permutations of {1, ..., n}.
//!
//! Points are 1-based in every public input and output; internally a
//! permutation is a 0-based image table. Composition is (a ∘ b)(x) = a(b(x)),
//! i.e. `a.compose(&b)` applies `b` first. Conjugation is h^g = g⁻¹ h g.

use std::fmt;

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= u16::MAX as usize + 1, "degree too large");
        Permutation {
            images: (0..degree as u32).map(|x| x as u16).collect(),
        }
    }

    /// Builds from a 0-based image table, validating that it is a bijection.
    pub fn from_images(images: Vec<u16>) -> Result<Self, Error> {
        let n = images.len();
        if n > u16::MAX as usize + 1 {
            return Err(Error::InvalidPermutation {
                reason: format!("degree {n} exceeds the supported maximum"),
            });
        }
        let mut seen = vec![false; n];
        for &im in &images {
            let im = im as usize;
            if im >= n {
                return Err(Error::InvalidPermutation {
                    reason: format!("image {} out of range 1..={n}", im + 1),
                });
            }
            if seen[im] {
                return Err(Error::InvalidPermutation {
                    reason: format!("image {} repeated", im + 1),
                });
            }
            seen[im] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds from a 1-based image list, the form used in files and JSON.
    pub fn from_one_based(images: &[usize]) -> Result<Self, Error> {
        let mut zero = Vec::with_capacity(images.len());
        for &im in images {
            if im == 0 || im > images.len() {
                return Err(Error::InvalidPermutation {
                    reason: format!("image {im} out of range 1..={}", images.len()),
                });
            }
            zero.push((im - 1) as u16);
        }
        Permutation::from_images(zero)
    }

    /// Builds from disjoint cycles over 1-based points. Points absent from
    /// every cycle are fixed.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, Error> {
        let mut images: Vec<u16> = (0..degree as u32).map(|x| x as u16).collect();
        for cycle in cycles {
            for w in 0..cycle.len() {
                let from = cycle[w];
                let to = cycle[(w + 1) % cycle.len()];
                if from == 0 || from > degree || to == 0 || to > degree {
                    return Err(Error::InvalidPermutation {
                        reason: format!("cycle point out of range 1..={degree}"),
                    });
                }
                images[from - 1] = (to - 1) as u16;
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i == im as usize)
    }

    /// (self ∘ other)(x) = self(other(x)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in compose");
        Permutation {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u16; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im as usize] = i as u16;
        }
        Permutation { images }
    }

    /// g⁻¹ ∘ self ∘ g, computed in one pass given g and g⁻¹.
    pub fn conjugate_by(&self, g: &Permutation, g_inv: &Permutation) -> Permutation {
        assert_eq!(self.degree(), g.degree(), "degree mismatch in conjugate");
        Permutation {
            images: g
                .images
                .iter()
                .map(|&x| g_inv.images[self.images[x as usize] as usize])
                .collect(),
        }
    }

    /// Lengths of all cycles, fixed points included.
    fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.apply(x);
            }
            lens.push(len);
        }
        lens
    }

    /// Multiplicative order, the lcm of the cycle lengths.
    pub fn order(&self) -> Result<u128, Error> {
        let mut ord: u128 = 1;
        for len in self.cycle_lengths() {
            let len = len as u128;
            let g = gcd_u128(ord, len);
            ord = ord
                .checked_mul(len / g)
                .ok_or(Error::ElementOrderOverflow)?;
        }
        Ok(ord)
    }

    pub fn power(&self, mut k: u128) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            k >>= 1;
        }
        acc
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &im)| *i != im as usize)
            .map(|(i, _)| i)
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        let n = self.degree();
        (0..n).all(|x| self.apply(other.apply(x)) == other.apply(self.apply(x)))
    }

    /// Nontrivial cycles over 1-based points, each starting at its smallest
    /// point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x + 1);
                x = self.apply(x);
            }
            out.push(cyc);
        }
        out
    }

    pub fn images_one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    /// Appends the image table as little-endian u16 words; the canonical
    /// element encoding used by subgroup keys.
    pub(crate) fn encode_into(&self, buf: &mut Vec<u8>) {
        for &im in &self.images {
            buf.extend_from_slice(&im.to_le_bytes());
        }
    }
}

fn gcd_u128(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd_u128(b, a % b)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cyc in cycles {
            write!(f, "(")?;
            for (i, p) in cyc.iter().enumerate() {
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
