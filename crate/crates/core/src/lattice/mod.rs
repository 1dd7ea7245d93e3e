//! Finite lattices given by their order relation, with precomputed meet and
//! join tables.
//!
//! A [`Lattice`] knows nothing about groups: subgroup lattices, intervals,
//! products and hand-built test lattices all share this representation.

mod decompose;
mod exchange;
mod iso;
mod predicates;
mod width;

pub use decompose::LatticeDecomposition;
pub use predicates::{ModularElementViolation, Triple};
pub use width::Antichain;

use std::fmt;

use crate::bitset::BitSet;
use crate::error::{domain, Error, Result};

#[derive(Clone)]
pub struct Lattice {
    n: usize,
    up: Vec<BitSet>,
    down: Vec<BitSet>,
    meet: Vec<u32>,
    join: Vec<u32>,
    bottom: usize,
    top: usize,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    cover_bits: Vec<BitSet>,
    rank: Vec<usize>,
}

impl Lattice {
    /// Builds a lattice from up-sets: `up[x]` holds every `y` with `x ≤ y`.
    ///
    /// Fails unless the relation is a partial order in which every pair has
    /// a meet and a join.
    pub fn from_up_sets(up: Vec<BitSet>) -> Result<Lattice> {
        let n = up.len();
        if n == 0 {
            return Err(Error::NotALattice("empty poset".into()));
        }
        for (x, ux) in up.iter().enumerate() {
            if ux.capacity() != n {
                return Err(Error::NotALattice(format!("row {x} has wrong width")));
            }
            if !ux.contains(x) {
                return Err(Error::NotALattice(format!("relation not reflexive at {x}")));
            }
            for y in ux.iter() {
                if y != x && up[y].contains(x) {
                    return Err(Error::NotALattice(format!(
                        "relation not antisymmetric on {x}, {y}"
                    )));
                }
                if !up[y].is_subset(ux) {
                    return Err(Error::NotALattice(format!(
                        "relation not transitive through {x} ≤ {y}"
                    )));
                }
            }
        }
        let mut down = vec![BitSet::new(n); n];
        for (x, ux) in up.iter().enumerate() {
            for y in ux.iter() {
                down[y].insert(x);
            }
        }

        // Sorting by down-set size gives a linear extension; in that order
        // the meet is the last common lower bound and the join the first
        // common upper bound.
        let mut at: Vec<usize> = (0..n).collect();
        at.sort_by_key(|&x| (down[x].count(), x));
        let mut pos = vec![0usize; n];
        for (p, &x) in at.iter().enumerate() {
            pos[x] = p;
        }
        let remap = |s: &BitSet| BitSet::from_indices(n, s.iter().map(|y| pos[y]));
        let pdown: Vec<BitSet> = at.iter().map(|&x| remap(&down[x])).collect();
        let pup: Vec<BitSet> = at.iter().map(|&x| remap(&up[x])).collect();

        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let (pa, pb) = (pos[a], pos[b]);
                let m = pdown[pa].last_common(&pdown[pb]);
                let j = pup[pa].first_common(&pup[pb]);
                let (Some(m), Some(j)) = (m, j) else {
                    return Err(Error::NotALattice(format!(
                        "{a} and {b} lack a common lower or upper bound"
                    )));
                };
                if !pdown[pa].intersection_subset_of(&pdown[pb], &pdown[m]) {
                    return Err(Error::NotALattice(format!("{a} and {b} have no meet")));
                }
                if !pup[pa].intersection_subset_of(&pup[pb], &pup[j]) {
                    return Err(Error::NotALattice(format!("{a} and {b} have no join")));
                }
                let (m, j) = (at[m] as u32, at[j] as u32);
                meet[a * n + b] = m;
                meet[b * n + a] = m;
                join[a * n + b] = j;
                join[b * n + a] = j;
            }
        }
        let bottom = at[0];
        let top = at[n - 1];
        if up[bottom].count() != n || down[top].count() != n {
            return Err(Error::NotALattice("missing bottom or top".into()));
        }

        let mut upper_covers = vec![Vec::new(); n];
        let mut lower_covers = vec![Vec::new(); n];
        let mut cover_bits = vec![BitSet::new(n); n];
        for x in 0..n {
            for y in up[x].iter() {
                if y != x && up[x].intersection_count(&down[y]) == 2 {
                    upper_covers[x].push(y);
                    lower_covers[y].push(x);
                    cover_bits[x].insert(y);
                }
            }
        }
        let mut rank = vec![0usize; n];
        for &y in &at {
            rank[y] = lower_covers[y]
                .iter()
                .map(|&x| rank[x] + 1)
                .max()
                .unwrap_or(0);
        }
        Ok(Lattice {
            n,
            up,
            down,
            meet,
            join,
            bottom,
            top,
            upper_covers,
            lower_covers,
            cover_bits,
            rank,
        })
    }

    /// Builds a lattice from any `leq` predicate on `0..n`.
    pub fn from_leq(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Lattice> {
        let up = (0..n)
            .map(|x| BitSet::from_indices(n, (0..n).filter(|&y| leq(x, y))))
            .collect();
        Lattice::from_up_sets(up)
    }

    /// Reflexive-transitive closure of the given cover pairs `(lower, upper)`.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Lattice> {
        if let Some(&(a, b)) = covers.iter().find(|&&(a, b)| a >= n || b >= n) {
            return domain(format!("cover ({a}, {b}) outside 0..{n}"));
        }
        let mut succ = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(a, b) in covers {
            succ[a].push(b);
            indeg[b] += 1;
        }
        let mut order = Vec::with_capacity(n);
        let mut stack: Vec<usize> = (0..n).filter(|&x| indeg[x] == 0).collect();
        while let Some(x) = stack.pop() {
            order.push(x);
            for &y in &succ[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    stack.push(y);
                }
            }
        }
        if order.len() != n {
            return Err(Error::NotALattice("cover relation has a cycle".into()));
        }
        let mut up = vec![BitSet::new(n); n];
        for &x in order.iter().rev() {
            up[x].insert(x);
            for &y in &succ[x] {
                let uy = up[y].clone();
                up[x].union_with(&uy);
            }
        }
        Lattice::from_up_sets(up)
    }

    pub fn chain(len: usize) -> Lattice {
        Lattice::from_leq(len.max(1), |a, b| a <= b).expect("a chain is a lattice")
    }

    /// `M_k`: bottom, `k` pairwise incomparable atoms, top.
    pub fn diamond(k: usize) -> Lattice {
        let top = k + 1;
        Lattice::from_leq(k + 2, |a, b| a == b || a == 0 || b == top).expect("M_k is a lattice")
    }

    /// `N_5`: `0 < a < c < 1` and `0 < b < 1`, nodes `[0, a, b, c, 1]`.
    pub fn pentagon() -> Lattice {
        Lattice::from_covers(5, &[(0, 1), (1, 3), (3, 4), (0, 2), (2, 4)])
            .expect("N_5 is a lattice")
    }

    /// Divisors of `n` ordered by divisibility, ascending.
    pub fn divisors(n: usize) -> Lattice {
        let ds: Vec<usize> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
        Lattice::from_leq(ds.len(), |a, b| ds[b].is_multiple_of(ds[a])).expect("divisor lattice")
    }

    /// Direct product; node `(i, j)` has index `i * other.size() + j`.
    pub fn product(&self, other: &Lattice) -> Lattice {
        let m = other.n;
        Lattice::from_leq(self.n * m, |a, b| {
            self.leq(a / m, b / m) && other.leq(a % m, b % m)
        })
        .expect("product of lattices is a lattice")
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b] as usize
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b] as usize
    }

    /// `b` covers `a`.
    #[inline]
    pub fn covers(&self, a: usize, b: usize) -> bool {
        self.cover_bits[a].contains(b)
    }

    pub fn up_set(&self, a: usize) -> &BitSet {
        &self.up[a]
    }

    pub fn down_set(&self, a: usize) -> &BitSet {
        &self.down[a]
    }

    pub fn upper_covers(&self, a: usize) -> &[usize] {
        &self.upper_covers[a]
    }

    pub fn lower_covers(&self, a: usize) -> &[usize] {
        &self.lower_covers[a]
    }

    /// Length of the longest chain from the bottom to `a`.
    pub fn rank(&self, a: usize) -> usize {
        self.rank[a]
    }

    pub fn height(&self) -> usize {
        self.rank[self.top]
    }

    pub fn atoms(&self) -> &[usize] {
        &self.upper_covers[self.bottom]
    }

    pub fn coatoms(&self) -> &[usize] {
        &self.lower_covers[self.top]
    }

    /// All cover pairs `(lower, upper)` in ascending order.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|a| self.upper_covers[a].iter().map(move |&b| (a, b)))
            .collect()
    }

    /// The sublattice `{z : lo ≤ z ≤ hi}` and the original index of each node.
    pub fn interval(&self, lo: usize, hi: usize) -> Result<(Lattice, Vec<usize>)> {
        if lo >= self.n || hi >= self.n {
            return domain("interval endpoint outside the lattice");
        }
        if !self.leq(lo, hi) {
            return domain(format!("interval endpoints {lo} ≰ {hi}"));
        }
        let nodes: Vec<usize> = self.up[lo].intersection(&self.down[hi]).iter().collect();
        let sub = Lattice::from_leq(nodes.len(), |a, b| self.leq(nodes[a], nodes[b]))?;
        Ok((sub, nodes))
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Lattice")
            .field("size", &self.n)
            .field("covers", &self.cover_pairs())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn meet_join_of_divisor_lattice() {
        let l = Lattice::divisors(12); // 1 2 3 4 6 12
        assert_eq!(l.size(), 6);
        assert_eq!(l.meet(3, 4), 1); // gcd(4,6) = 2
        assert_eq!(l.join(2, 3), 5); // lcm(3,4) = 12
        assert_eq!(l.bottom(), 0);
        assert_eq!(l.top(), 5);
        assert_eq!(l.height(), 3);
    }

    #[test]
    fn rejects_non_lattices() {
        // two incomparable maximal elements
        assert!(Lattice::from_covers(3, &[(0, 1), (0, 2)]).is_err());
        // cycle
        assert!(Lattice::from_covers(2, &[(0, 1), (1, 0)]).is_err());
        // bowtie: a, b < c, d with no join for a, b
        assert!(Lattice::from_covers(
            6,
            &[
                (0, 1),
                (0, 2),
                (1, 3),
                (1, 4),
                (2, 3),
                (2, 4),
                (3, 5),
                (4, 5)
            ]
        )
        .is_err());
    }

    #[test]
    fn non_linear_index_order_is_handled() {
        // top at index 0, bottom at index 2
        let l = Lattice::from_covers(3, &[(2, 1), (1, 0)]).unwrap();
        assert_eq!(l.bottom(), 2);
        assert_eq!(l.top(), 0);
        assert_eq!(l.meet(0, 1), 1);
        assert_eq!(l.join(2, 1), 1);
    }

    #[test]
    fn intervals() {
        let l = Lattice::divisors(12);
        let (sub, nodes) = l.interval(1, 5).unwrap(); // [2, 12]
        assert_eq!(nodes, vec![1, 3, 4, 5]);
        assert_eq!(sub.size(), 4);
        assert!(l.interval(2, 3).is_err()); // 3 ∤ 4
        let (one, _) = l.interval(4, 4).unwrap();
        assert_eq!(one.size(), 1);
    }

    #[test]
    fn product_sizes_and_order() {
        let p = Lattice::chain(2).product(&Lattice::chain(3));
        assert_eq!(p.size(), 6);
        assert_eq!(p.height(), 3);
        assert_eq!(p.atoms().len(), 2);
    }
}
