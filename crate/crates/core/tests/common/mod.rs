//! Brute-force oracles shared by the integration tests. They use only
//! permutations and plain collections, never the library's tables.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use proflat_core::construct::*;
use proflat_core::{FiniteGroup, Lattice, Limits, Permutation, Subgroup};

pub fn lim() -> Limits {
    Limits::default()
}

pub fn perm(degree: usize, cycles: &str) -> Permutation {
    Permutation::parse_cycles(degree, cycles).unwrap()
}

/// Multiply-until-stable closure of a set of permutations.
pub fn closure_oracle(degree: usize, seed: &[Permutation]) -> BTreeSet<Permutation> {
    let mut set = BTreeSet::from([Permutation::identity(degree)]);
    let mut frontier: Vec<Permutation> = set.iter().cloned().collect();
    while let Some(x) = frontier.pop() {
        for s in seed {
            let y = x.then(s);
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    set
}

pub fn members_of(h: &Subgroup) -> BTreeSet<Permutation> {
    h.elements().map(|x| h.group().element(x).clone()).collect()
}

/// A group rebuilt from its generators with its own Cayley table.
pub struct Cayley {
    pub elements: Vec<Permutation>,
    pub index: HashMap<Permutation, usize>,
    pub table: Vec<Vec<usize>>,
}

impl Cayley {
    pub fn new(g: &FiniteGroup) -> Self {
        let elements: Vec<Permutation> = closure_oracle(g.degree(), g.generators())
            .into_iter()
            .collect();
        let index: HashMap<Permutation, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let table = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&a.then(b)]).collect())
            .collect();
        Cayley {
            elements,
            index,
            table,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn mask_of(&self, set: &BTreeSet<Permutation>) -> u32 {
        set.iter().fold(0, |m, p| m | 1 << self.index[p])
    }

    fn closed(&self, mask: u32) -> bool {
        let mut a = mask;
        while a != 0 {
            let i = a.trailing_zeros() as usize;
            a &= a - 1;
            let mut b = mask;
            while b != 0 {
                let j = b.trailing_zeros() as usize;
                b &= b - 1;
                if mask >> self.table[i][j] & 1 == 0 {
                    return false;
                }
            }
        }
        true
    }

    /// Every subset containing the identity, of size dividing `|G|`, that
    /// is closed under products. Finite, so closure under products is
    /// enough. Only for `|G| ≤ 32`.
    pub fn all_subgroups(&self) -> BTreeSet<u32> {
        let n = self.order();
        assert!(n <= 32);
        let id = self.elements.iter().position(|p| p.is_identity()).unwrap();
        let others: Vec<usize> = (0..n).filter(|&i| i != id).collect();
        let mut found = BTreeSet::new();
        for size in (1..=n).filter(|d| n.is_multiple_of(*d)) {
            let k = size - 1;
            if k == 0 {
                found.insert(1u32 << id);
                continue;
            }
            // Gosper's hack over the non-identity positions
            let m = others.len();
            let mut c: u64 = (1u64 << k) - 1;
            while c < 1u64 << m {
                let mut mask = 1u32 << id;
                let mut bits = c;
                while bits != 0 {
                    let t = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    mask |= 1 << others[t];
                }
                if self.closed(mask) {
                    found.insert(mask);
                }
                let u = c & c.wrapping_neg();
                let v = c + u;
                c = v | (((v ^ c) / u) >> 2);
            }
        }
        found
    }
}

/// Largest antichain by exhaustive search.
pub fn brute_width(l: &Lattice) -> usize {
    fn grow(l: &Lattice, next: usize, chosen: &mut Vec<usize>, best: &mut usize) {
        *best = (*best).max(chosen.len());
        if chosen.len() + (l.size() - next) <= *best {
            return;
        }
        for x in next..l.size() {
            if chosen.iter().all(|&c| !l.comparable(c, x)) {
                chosen.push(x);
                grow(l, x + 1, chosen, best);
                chosen.pop();
            }
        }
    }
    let mut best = 0;
    grow(l, 0, &mut Vec::new(), &mut best);
    best
}

/// Modular element by the two defining identities, straight from `leq`.
pub fn modular_element_oracle(l: &Lattice, m: usize) -> bool {
    let n = l.size();
    let first = (0..n).all(|x| {
        (0..n)
            .filter(|&z| l.leq(x, z))
            .all(|z| l.join(x, l.meet(m, z)) == l.meet(l.join(x, m), z))
    });
    let second = (0..n)
        .filter(|&z| l.leq(m, z))
        .all(|z| (0..n).all(|y| l.join(m, l.meet(y, z)) == l.meet(l.join(m, y), z)));
    first && second
}

/// Groups of order at most 32 with a spread of lattice shapes.
pub fn small_corpus() -> Vec<Arc<FiniteGroup>> {
    let l = lim();
    let mut out: Vec<Arc<FiniteGroup>> = (1..=24).map(|n| cyclic(n, &l).unwrap()).collect();
    out.push(elementary_abelian(2, 2, &l).unwrap());
    out.push(elementary_abelian(2, 3, &l).unwrap());
    out.push(elementary_abelian(2, 4, &l).unwrap());
    out.push(elementary_abelian(3, 2, &l).unwrap());
    for order in (6..=24).step_by(2) {
        out.push(dihedral(order, &l).unwrap());
    }
    out.push(quaternion8(&l).unwrap());
    out.push(modular_p_group(2, 4, &l).unwrap());
    out.push(symmetric(3, &l).unwrap());
    out.push(symmetric(4, &l).unwrap());
    out.push(alternating(4, &l).unwrap());
    out.push(semidirect_cyclic(4, &[3], 2, &l).unwrap());
    out.push(nonabelian_pq(7, 3, &l).unwrap());
    out.push(direct_product(&cyclic(2, &l).unwrap(), &cyclic(6, &l).unwrap(), &l).unwrap());
    out.push(direct_product(&symmetric(3, &l).unwrap(), &cyclic(2, &l).unwrap(), &l).unwrap());
    out.push(direct_product(&quaternion8(&l).unwrap(), &cyclic(2, &l).unwrap(), &l).unwrap());
    out
}
