//! Permutations on `{0, …, degree−1}` acting on the right.
//!
//! The product `a * b` applies `a` first and then `b`, so conjugation reads
//! `b⁻¹ a b` and the action of a product on points is `x^(ab) = (x^a)^b`.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Construction(format!(
                    "image list {images:?} is not a bijection on {n} points"
                )));
            }
        }
        Ok(Permutation {
            images: images.into_iter().map(|i| i as u32).collect(),
        })
    }

    /// Builds a permutation from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p >= degree {
                    return Err(Error::Construction(format!(
                        "point {} outside degree {degree}",
                        p + 1
                    )));
                }
                if std::mem::replace(&mut used[p], true) {
                    return Err(Error::Construction(format!(
                        "point {} repeated in cycle notation",
                        p + 1
                    )));
                }
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Permutation::from_images(images)
    }

    /// Parses 1-based cycle notation such as `(1 2)(3 4 5)` or `()`.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self> {
        let bad = |msg: String| Error::Construction(msg);
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(bad("empty permutation".into()));
        }
        while !rest.is_empty() {
            let inner_start = rest
                .strip_prefix('(')
                .ok_or_else(|| bad(format!("expected '(' in {text:?}")))?;
            let close = inner_start
                .find(')')
                .ok_or_else(|| bad(format!("unbalanced parenthesis in {text:?}")))?;
            let body = &inner_start[..close];
            let mut cycle = Vec::new();
            for tok in body.split(|c: char| c == ',' || c.is_whitespace()) {
                if tok.is_empty() {
                    continue;
                }
                let p: usize = tok
                    .parse()
                    .map_err(|_| bad(format!("bad point {tok:?} in {text:?}")))?;
                if p == 0 {
                    return Err(bad("points are 1-based".into()));
                }
                cycle.push(p - 1);
            }
            if cycle.len() > 1 {
                cycles.push(cycle);
            }
            rest = inner_start[close + 1..].trim_start();
        }
        Permutation::from_cycles(degree, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    /// Concatenates `self` on the first points with `other` on the rest.
    pub fn direct_sum(&self, other: &Permutation) -> Self {
        let shift = self.degree() as u32;
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|&i| i + shift));
        Permutation { images }
    }

    /// Disjoint cycles of length at least two, 0-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

/// 1-based cycle notation, `()` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let p = Permutation::parse_cycles(4, "(1 2)(3 4)").unwrap();
        assert_eq!(p.to_string(), "(1 2)(3 4)");
        assert_eq!(
            Permutation::parse_cycles(3, "()").unwrap().to_string(),
            "()"
        );
        assert!(Permutation::parse_cycles(3, "(1 4)").is_err());
        assert!(Permutation::parse_cycles(3, "(1 2 1)").is_err());
        assert!(Permutation::parse_cycles(3, "(1 2").is_err());
    }

    #[test]
    fn right_action_product() {
        let a = Permutation::parse_cycles(3, "(1 2)").unwrap();
        let b = Permutation::parse_cycles(3, "(2 3)").unwrap();
        // 1 -a-> 2 -b-> 3
        assert_eq!((&a * &b).apply(0), 2);
        assert_eq!((&a * &b).to_string(), "(1 3 2)");
        assert!((&a * &a.inverse()).is_identity());
        assert_eq!(a.then(&b).pow(3), Permutation::identity(3));
    }
}
