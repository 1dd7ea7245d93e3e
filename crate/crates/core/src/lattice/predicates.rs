use serde::Serialize;

use super::Lattice;

/// Three nodes on which a lattice identity fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Triple {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

/// Failure of one of the two modular-element conditions for `m`:
///
/// 1. `x ∨ (m ∧ z) = (x ∨ m) ∧ z` for `x ≤ z`, reported with `a = x, b = z`;
/// 2. `m ∨ (y ∧ z) = (m ∨ y) ∧ z` for `m ≤ z`, reported with `a = y, b = z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ModularElementViolation {
    pub element: usize,
    pub condition: u8,
    pub a: usize,
    pub b: usize,
}

/// Above this size `is_modular` first runs the quadratic semimodularity test.
const EXHAUSTIVE_MODULAR_BOUND: usize = 128;

impl Lattice {
    /// A triple with `x ∨ (y ∧ z) ≠ (x ∨ y) ∧ (x ∨ z)`.
    pub fn distributivity_violation(&self) -> Option<Triple> {
        let n = self.size();
        for x in 0..n {
            for y in 0..n {
                let xy = self.join(x, y);
                for z in y + 1..n {
                    let lhs = self.join(x, self.meet(y, z));
                    let rhs = self.meet(xy, self.join(x, z));
                    if lhs != rhs {
                        return Some(Triple { x, y, z });
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_violation().is_none()
    }

    /// A triple with `x ≤ z` and `x ∨ (y ∧ z) ≠ (x ∨ y) ∧ z`.
    pub fn modularity_violation(&self) -> Option<Triple> {
        if self.size() > EXHAUSTIVE_MODULAR_BOUND && self.is_semimodular_both_ways() {
            // Finite length: upper and lower semimodular ⇔ modular.
            return None;
        }
        self.modularity_violation_exhaustive()
    }

    /// The identity checked on every constrained triple, no shortcuts.
    pub fn modularity_violation_exhaustive(&self) -> Option<Triple> {
        let n = self.size();
        for x in 0..n {
            for z in self.up_set(x).iter() {
                if z == x {
                    continue;
                }
                for y in 0..n {
                    if self.join(x, self.meet(y, z)) != self.meet(self.join(x, y), z) {
                        return Some(Triple { x, y, z });
                    }
                }
            }
        }
        None
    }

    pub fn is_modular(&self) -> bool {
        self.modularity_violation().is_none()
    }

    /// Upper semimodular (`a ∧ b ⋖ a ⇒ b ⋖ a ∨ b`) and its dual.
    pub fn is_semimodular_both_ways(&self) -> bool {
        let n = self.size();
        for a in 0..n {
            for b in 0..n {
                let (m, j) = (self.meet(a, b), self.join(a, b));
                if self.covers(m, a) != self.covers(b, j) {
                    return false;
                }
            }
        }
        true
    }

    pub fn modular_element_violation(&self, m: usize) -> Option<ModularElementViolation> {
        self.modular_element_violation_in(self.bottom(), self.top(), m)
    }

    /// Modular-element conditions for `m` inside the interval `[lo, hi]`,
    /// which is a sublattice, so meets and joins are read from `self`.
    pub fn modular_element_violation_in(
        &self,
        lo: usize,
        hi: usize,
        m: usize,
    ) -> Option<ModularElementViolation> {
        debug_assert!(self.leq(lo, m) && self.leq(m, hi));
        let nodes: Vec<usize> = self
            .up_set(lo)
            .intersection(self.down_set(hi))
            .iter()
            .collect();
        for &x in &nodes {
            let xm = self.join(x, m);
            for z in self.up_set(x).intersection(self.down_set(hi)).iter() {
                if self.join(x, self.meet(m, z)) != self.meet(xm, z) {
                    return Some(ModularElementViolation {
                        element: m,
                        condition: 1,
                        a: x,
                        b: z,
                    });
                }
            }
        }
        for z in self.up_set(m).intersection(self.down_set(hi)).iter() {
            for &y in &nodes {
                if self.join(m, self.meet(y, z)) != self.meet(self.join(m, y), z) {
                    return Some(ModularElementViolation {
                        element: m,
                        condition: 2,
                        a: y,
                        b: z,
                    });
                }
            }
        }
        None
    }

    pub fn is_modular_element(&self, m: usize) -> bool {
        self.modular_element_violation(m).is_none()
    }

    /// Modular-element flag for every node. A modular lattice is answered
    /// without per-element checks, since both conditions are instances of
    /// the modular law.
    pub fn modular_elements(&self) -> Vec<bool> {
        if self.is_modular() {
            return vec![true; self.size()];
        }
        (0..self.size())
            .map(|m| self.is_modular_element(m))
            .collect()
    }

    /// Pentagon sublattice `[a ∧ b, a, c, b, a ∨ b]` with `a < c`,
    /// `a ∨ b = c ∨ b` and `a ∧ b = c ∧ b`.
    pub fn find_pentagon(&self) -> Option<[usize; 5]> {
        let n = self.size();
        for a in 0..n {
            for c in self.up_set(a).iter() {
                if c == a {
                    continue;
                }
                for b in 0..n {
                    if self.comparable(a, b) || self.comparable(c, b) {
                        continue;
                    }
                    let (lo, hi) = (self.meet(a, b), self.join(a, b));
                    if self.meet(c, b) == lo && self.join(c, b) == hi {
                        return Some([lo, a, c, b, hi]);
                    }
                }
            }
        }
        None
    }

    /// Diamond sublattice `[o, x, y, z, i]`: three pairwise incomparable
    /// nodes with common pairwise meet `o` and join `i`.
    pub fn find_diamond(&self) -> Option<[usize; 5]> {
        let n = self.size();
        for x in 0..n {
            for y in x + 1..n {
                if self.comparable(x, y) {
                    continue;
                }
                let (o, i) = (self.meet(x, y), self.join(x, y));
                for z in y + 1..n {
                    if self.comparable(x, z) || self.comparable(y, z) {
                        continue;
                    }
                    if self.meet(x, z) == o
                        && self.meet(y, z) == o
                        && self.join(x, z) == i
                        && self.join(y, z) == i
                    {
                        return Some([o, x, y, z, i]);
                    }
                }
            }
        }
        None
    }
}
