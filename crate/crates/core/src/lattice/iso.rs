//! Backtracking search for order isomorphisms between lattices.

use super::Lattice;
use crate::error::{Error, Result};

impl Lattice {
    /// Per-node invariants that any isomorphism must preserve.
    fn node_signature(&self, x: usize) -> (usize, usize, usize, usize, usize) {
        (
            self.rank(x),
            self.lower_covers(x).len(),
            self.upper_covers(x).len(),
            self.down_set(x).count(),
            self.up_set(x).count(),
        )
    }

    /// Up to `limit` isomorphisms `self → other` as image arrays, in
    /// lexicographic order. An empty result means the lattices are not
    /// isomorphic (or `limit` is zero).
    ///
    /// Nodes are assigned in index order; candidates are restricted to nodes
    /// with the same rank and Hasse degrees.
    pub fn find_isomorphisms(
        &self,
        other: &Lattice,
        limit: usize,
        max_size: usize,
    ) -> Result<Vec<Vec<usize>>> {
        for l in [self, other] {
            if l.size() > max_size {
                return Err(Error::Resource {
                    what: "lattice size for isomorphism search",
                    bound: max_size,
                    actual: l.size(),
                });
            }
        }
        let n = self.size();
        if n != other.size() || limit == 0 {
            return Ok(Vec::new());
        }
        let sig_a: Vec<_> = (0..n).map(|x| self.node_signature(x)).collect();
        let sig_b: Vec<_> = (0..n).map(|x| other.node_signature(x)).collect();
        let mut sorted_a = sig_a.clone();
        let mut sorted_b = sig_b.clone();
        sorted_a.sort();
        sorted_b.sort();
        if sorted_a != sorted_b {
            return Ok(Vec::new());
        }
        let candidates: Vec<Vec<usize>> = sig_a
            .iter()
            .map(|s| (0..n).filter(|&t| sig_b[t] == *s).collect())
            .collect();

        let mut out = Vec::new();
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        let mut cursor = vec![0usize; n];
        let mut depth = 0usize;
        loop {
            if depth == n {
                out.push(image.clone());
                if out.len() == limit {
                    return Ok(out);
                }
                depth -= 1;
                used[image[depth]] = false;
                image[depth] = usize::MAX;
                continue;
            }
            let mut placed = false;
            while cursor[depth] < candidates[depth].len() {
                let t = candidates[depth][cursor[depth]];
                cursor[depth] += 1;
                if used[t] {
                    continue;
                }
                let consistent = (0..depth).all(|j| {
                    self.leq(j, depth) == other.leq(image[j], t)
                        && self.leq(depth, j) == other.leq(t, image[j])
                });
                if consistent {
                    image[depth] = t;
                    used[t] = true;
                    placed = true;
                    break;
                }
            }
            if placed {
                depth += 1;
                if depth < n {
                    cursor[depth] = 0;
                }
            } else {
                if depth == 0 {
                    return Ok(out);
                }
                depth -= 1;
                used[image[depth]] = false;
                image[depth] = usize::MAX;
            }
        }
    }

    pub fn is_isomorphic(&self, other: &Lattice, max_size: usize) -> Result<bool> {
        Ok(!self.find_isomorphisms(other, 1, max_size)?.is_empty())
    }
}
