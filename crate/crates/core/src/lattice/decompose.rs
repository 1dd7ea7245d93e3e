//! Direct decompositions through complement pairs.
//!
//! A pair `(a, b)` with `a ∧ b = 0`, `a ∨ b = 1` splits `L` when
//! `x ↦ (x ∧ a, x ∧ b)` is an isomorphism onto `[0, a] × [0, b]`. Such `a`
//! are the central elements; the minimal non-bottom ones give the finest
//! decomposition.

use serde::Serialize;

use super::Lattice;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeDecomposition {
    /// Nodes `a_i` with `L ≅ ∏ [bottom, a_i]`, ascending.
    pub factors: Vec<usize>,
}

impl LatticeDecomposition {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// The factor lattices `[bottom, a_i]`.
    pub fn factor_lattices(&self, l: &Lattice) -> Result<Vec<Lattice>> {
        self.factors
            .iter()
            .map(|&a| l.interval(l.bottom(), a).map(|(sub, _)| sub))
            .collect()
    }

    /// Complementary pairs `(a_i, ⋁_{j≠i} a_j)`.
    pub fn pairs(&self, l: &Lattice) -> Vec<(usize, usize)> {
        self.factors
            .iter()
            .map(|&a| {
                let rest = self
                    .factors
                    .iter()
                    .filter(|&&b| b != a)
                    .fold(l.bottom(), |acc, &b| l.join(acc, b));
                (a, rest)
            })
            .collect()
    }
}

impl Lattice {
    /// Whether the complement pair `(a, b)` splits the lattice.
    pub fn splits(&self, a: usize, b: usize) -> bool {
        if self.meet(a, b) != self.bottom() || self.join(a, b) != self.top() {
            return false;
        }
        // injective with inverse (u, v) ↦ u ∨ v, then count for surjectivity
        if (0..self.size()).any(|x| self.join(self.meet(x, a), self.meet(x, b)) != x) {
            return false;
        }
        let da = self.down_set(a).count();
        let db = self.down_set(b).count();
        da * db == self.size()
    }

    /// Finest direct decomposition, or `None` when the lattice is
    /// directly indecomposable.
    pub fn direct_decompose(&self) -> Option<LatticeDecomposition> {
        let n = self.size();
        let (bot, top) = (self.bottom(), self.top());
        let mut central = vec![false; n];
        for a in 0..n {
            if a == bot || a == top || central[a] {
                continue;
            }
            if let Some(b) = (0..n).find(|&b| b != a && self.splits(a, b)) {
                central[a] = true;
                central[b] = true;
            }
        }
        let factors: Vec<usize> = (0..n)
            .filter(|&a| central[a])
            .filter(|&a| {
                !self
                    .down_set(a)
                    .iter()
                    .any(|c| c != a && c != bot && central[c])
            })
            .collect();
        if factors.len() < 2 {
            return None;
        }
        debug_assert_eq!(
            factors
                .iter()
                .map(|&a| self.down_set(a).count())
                .product::<usize>(),
            n
        );
        Some(LatticeDecomposition { factors })
    }

    pub fn is_directly_decomposable(&self) -> bool {
        self.direct_decompose().is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_square_splits() {
        let l = Lattice::divisors(6);
        let d = l.direct_decompose().unwrap();
        assert_eq!(d.factors, vec![1, 2]);
        let f = d.factor_lattices(&l).unwrap();
        assert!(f.iter().all(|x| x.size() == 2));
    }

    #[test]
    fn m4_and_chains_are_indecomposable() {
        assert!(Lattice::diamond(4).direct_decompose().is_none());
        assert!(Lattice::chain(4).direct_decompose().is_none());
        assert!(Lattice::chain(1).direct_decompose().is_none());
    }

    #[test]
    fn three_factor_product() {
        let l = Lattice::chain(2)
            .product(&Lattice::diamond(3))
            .product(&Lattice::chain(3));
        let d = l.direct_decompose().unwrap();
        let mut sizes: Vec<usize> = d
            .factor_lattices(&l)
            .unwrap()
            .iter()
            .map(|f| f.size())
            .collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 3, 5]);
        for (a, b) in d.pairs(&l) {
            assert!(l.splits(a, b));
        }
    }
}
