//! Enumeration of all subgroups of a finite group as a lattice.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Limits};
use crate::lattice::Lattice;
use crate::subgroup::Subgroup;

/// Joins are re-derived by closure only up to this many subgroups; meets
/// are always checked against intersections.
pub const JOIN_CHECK_BOUND: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NodeInfo {
    pub node: usize,
    pub order: usize,
    pub normal: bool,
    pub cyclic: bool,
    pub abelian: bool,
}

/// `L(G)` with nodes indexed by subgroups in canonical order: by order,
/// then by member bitset.
pub struct SubgroupLatticeView {
    group: Arc<FiniteGroup>,
    subgroups: Vec<Subgroup>,
    lattice: Lattice,
    info: Vec<NodeInfo>,
    index: HashMap<BitSet, usize>,
}

/// Cyclic subgroups are listed in canonical order `c_0, c_1, …`. Every
/// subgroup `K` has a greedy generating sequence `i_1 < … < i_k` (take each
/// `c_i ≤ K` not already in the span), and its prefix spans are again
/// subgroups with the prefix as their own sequence. Extending a found
/// subgroup `P` by `c_j` with `j` beyond its last index is kept only when
/// the join contains no `c_i`, `i < j`, outside `P`; this reaches every
/// subgroup exactly once, and a join is abandoned as soon as an element of
/// a lower cyclic subgroup appears.
pub fn enumerate_subgroups(g: &Arc<FiniteGroup>, limits: &Limits) -> Result<SubgroupLatticeView> {
    limits.check_order(g.order())?;
    let n = g.order();
    let id = g.identity();

    let mut cyclic: HashMap<BitSet, usize> = HashMap::new();
    let mut cyc_members: Vec<BitSet> = Vec::new();
    let mut cyc_gen: Vec<usize> = Vec::new();
    for x in 0..n {
        if x == id {
            continue;
        }
        let members = power_set(g, x);
        if !cyclic.contains_key(&members) {
            cyclic.insert(members.clone(), cyc_members.len());
            cyc_members.push(members);
            cyc_gen.push(x);
        }
    }
    let mut order: Vec<usize> = (0..cyc_members.len()).collect();
    order.sort_by(|&a, &b| {
        cyc_members[a]
            .count()
            .cmp(&cyc_members[b].count())
            .then_with(|| cyc_members[a].cmp(&cyc_members[b]))
    });
    let cyc_gen: Vec<usize> = order.iter().map(|&k| cyc_gen[k]).collect();
    let mut rank_of = vec![0; order.len()];
    for (rank, &k) in order.iter().enumerate() {
        rank_of[k] = rank;
    }
    let mut cyc_of = vec![usize::MAX; n];
    for (e, slot) in cyc_of.iter_mut().enumerate() {
        if e != id {
            *slot = rank_of[cyclic[&power_set(g, e)]];
        }
    }

    // (members, generators, next cyclic index to try)
    let mut found: Vec<(BitSet, Vec<usize>, usize)> =
        vec![(BitSet::from_indices(n, [id]), Vec::new(), 0)];
    let mut i = 0;
    while i < found.len() {
        let next = found[i].2;
        for (j, &x) in cyc_gen.iter().enumerate().skip(next) {
            let (members, gens, _) = &found[i];
            if members.contains(x) {
                continue;
            }
            if let Some(joined) = canonical_join(g, members, gens, x, j, &cyc_of) {
                let mut gens = gens.clone();
                gens.push(x);
                found.push((joined, gens, j + 1));
            }
        }
        i += 1;
    }
    let subgroups = found
        .into_iter()
        .map(|(members, gens, _)| Subgroup::from_parts(g, members, gens))
        .collect();
    SubgroupLatticeView::from_subgroups(g, subgroups)
}

fn power_set(g: &FiniteGroup, x: usize) -> BitSet {
    let mut members = BitSet::new(g.order());
    let mut y = x;
    while members.insert(y) {
        y = g.mul(y, x);
    }
    members
}

/// `⟨P, x⟩` as a union of right cosets of `P`, or `None` once it contains
/// an element whose cyclic subgroup comes before `j`.
fn canonical_join(
    g: &FiniteGroup,
    p: &BitSet,
    gens: &[usize],
    x: usize,
    j: usize,
    cyc_of: &[usize],
) -> Option<BitSet> {
    let base: Vec<usize> = p.iter().collect();
    let mut members = p.clone();
    let mut reps = vec![g.identity()];
    let mut k = 0;
    while k < reps.len() {
        let r = reps[k];
        k += 1;
        for &s in gens.iter().chain([&x]) {
            let y = g.mul(r, s);
            if members.contains(y) {
                continue;
            }
            for &h in &base {
                let e = g.mul(h, y);
                if cyc_of[e] < j {
                    return None;
                }
                members.insert(e);
            }
            reps.push(y);
        }
    }
    Some(members)
}

impl SubgroupLatticeView {
    fn from_subgroups(g: &Arc<FiniteGroup>, mut subgroups: Vec<Subgroup>) -> Result<Self> {
        subgroups.sort_by(|a, b| {
            a.order()
                .cmp(&b.order())
                .then_with(|| a.members().cmp(b.members()))
        });
        let n = subgroups.len();
        let up: Vec<BitSet> = subgroups
            .iter()
            .map(|h| {
                BitSet::from_indices(
                    n,
                    (0..n).filter(|&k| h.members().is_subset(subgroups[k].members())),
                )
            })
            .collect();
        let lattice = Lattice::from_up_sets(up)?;
        if lattice.bottom() != 0 || lattice.top() != n - 1 {
            return Err(Error::NotALattice("subgroup order is not canonical".into()));
        }
        for a in 0..n {
            for b in a + 1..n {
                let m = subgroups[lattice.meet(a, b)].members();
                if *m != subgroups[a].members().intersection(subgroups[b].members()) {
                    return Err(Error::NotALattice(format!(
                        "meet of nodes {a}, {b} is not their intersection"
                    )));
                }
            }
        }
        if n <= JOIN_CHECK_BOUND {
            for a in 0..n {
                for b in a + 1..n {
                    let closure = subgroups[a].join(&subgroups[b])?;
                    if subgroups[lattice.join(a, b)].members() != closure.members() {
                        return Err(Error::NotALattice(format!(
                            "join of nodes {a}, {b} is not their closure"
                        )));
                    }
                }
            }
        }
        let info = subgroups
            .iter()
            .enumerate()
            .map(|(node, h)| NodeInfo {
                node,
                order: h.order(),
                normal: h.is_normal(),
                cyclic: h.is_cyclic(),
                abelian: h.is_abelian(),
            })
            .collect();
        let index = subgroups
            .iter()
            .enumerate()
            .map(|(k, h)| (h.members().clone(), k))
            .collect();
        Ok(SubgroupLatticeView {
            group: g.clone(),
            subgroups,
            lattice,
            info,
            index,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, node: usize) -> &Subgroup {
        &self.subgroups[node]
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn annotations(&self) -> &[NodeInfo] {
        &self.info
    }

    pub fn info(&self, node: usize) -> &NodeInfo {
        &self.info[node]
    }

    /// Node of a subgroup of the same group.
    pub fn node_of(&self, h: &Subgroup) -> Option<usize> {
        if !Arc::ptr_eq(h.group(), &self.group) {
            return None;
        }
        self.index.get(h.members()).copied()
    }

    pub fn normal_nodes(&self) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.info[k].normal).collect()
    }

    /// The interval `[lo, hi]` of `L(G)`.
    pub fn interval(&self, lo: usize, hi: usize) -> Result<Lattice> {
        self.lattice.interval(lo, hi).map(|(l, _)| l)
    }

    /// Every subgroup of a finite group is open. Kept so that finite groups
    /// and towers answer the same question.
    pub fn open_subgroup_test_finite(&self, node: usize) -> bool {
        node < self.len()
    }

    /// Lattice exchange text followed by one JSON annotation per line.
    pub fn to_exchange_with_annotations(&self) -> String {
        let mut out = self.lattice.to_exchange();
        for info in &self.info {
            out.push_str("# ");
            out.push_str(&serde_json_line(info));
            out.push('\n');
        }
        out
    }
}

fn serde_json_line(info: &NodeInfo) -> String {
    format!(
        "{{\"node\":{},\"order\":{},\"normal\":{},\"cyclic\":{},\"abelian\":{}}}",
        info.node, info.order, info.normal, info.cyclic, info.abelian
    )
}
