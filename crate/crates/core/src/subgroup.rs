//! Subgroups of a [`FiniteGroup`] stored as element bitsets.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::bitset::BitSet;
use crate::error::{domain, Error, Result};
use crate::group::{FiniteGroup, Limits};
use crate::perm::Permutation;

#[derive(Clone)]
pub struct Subgroup {
    group: Arc<FiniteGroup>,
    members: BitSet,
    gens: Vec<usize>,
}

impl Subgroup {
    pub fn trivial(group: &Arc<FiniteGroup>) -> Self {
        Subgroup {
            group: group.clone(),
            members: BitSet::from_indices(group.order(), [group.identity()]),
            gens: Vec::new(),
        }
    }

    pub fn whole(group: &Arc<FiniteGroup>) -> Self {
        Subgroup {
            group: group.clone(),
            members: BitSet::full(group.order()),
            gens: group.generator_indices().to_vec(),
        }
    }

    /// Smallest subgroup containing the given element indices.
    pub fn closure(group: &Arc<FiniteGroup>, seed: &[usize]) -> Result<Self> {
        if let Some(&x) = seed.iter().find(|&&x| x >= group.order()) {
            return domain(format!(
                "element index {x} is not in {} (order {})",
                group.name(),
                group.order()
            ));
        }
        Ok(Subgroup::trivial(group).extend(seed))
    }

    /// Smallest subgroup containing the given permutations.
    pub fn closure_of(group: &Arc<FiniteGroup>, seed: &[Permutation]) -> Result<Self> {
        let idx = seed
            .iter()
            .map(|p| {
                group.index_of(p).ok_or_else(|| {
                    Error::Domain(format!("{p} is not an element of {}", group.name()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Subgroup::closure(group, &idx)
    }

    /// Wraps a member set, verifying that it is a subgroup.
    pub fn from_members(group: &Arc<FiniteGroup>, members: BitSet) -> Result<Self> {
        if members.capacity() != group.order() || !members.contains(group.identity()) {
            return domain("member set does not contain the identity");
        }
        let sub = Subgroup::from_closed_set(group, &members);
        if sub.members != members {
            return domain("member set is not closed under products");
        }
        Ok(sub)
    }

    /// The caller guarantees that `members` is the subgroup generated by
    /// `gens`.
    pub(crate) fn from_parts(group: &Arc<FiniteGroup>, members: BitSet, gens: Vec<usize>) -> Self {
        Subgroup {
            group: group.clone(),
            members,
            gens,
        }
    }

    /// Generators are chosen greedily in element order; the caller
    /// guarantees that `members` is a subgroup.
    pub(crate) fn from_closed_set(group: &Arc<FiniteGroup>, members: &BitSet) -> Self {
        let mut sub = Subgroup::trivial(group);
        for x in members.iter() {
            if !sub.contains(x) {
                sub = sub.extend(&[x]);
            }
        }
        sub
    }

    /// The subgroup generated by `self` and `extra`.
    ///
    /// The result is built as a union of right cosets of `self`, so the
    /// cost is linear in the size of the result.
    pub fn extend(&self, extra: &[usize]) -> Subgroup {
        let g = &self.group;
        let mut gens = self.gens.clone();
        for &x in extra {
            if !self.members.contains(x) && !gens.contains(&x) {
                gens.push(x);
            }
        }
        if gens.len() == self.gens.len() {
            return self.clone();
        }
        let base: Vec<usize> = self.members.iter().collect();
        let mut members = self.members.clone();
        let mut reps = vec![g.identity()];
        let mut i = 0;
        while i < reps.len() {
            let r = reps[i];
            i += 1;
            for &s in &gens {
                let x = g.mul(r, s);
                if !members.contains(x) {
                    for &h in &base {
                        members.insert(g.mul(h, x));
                    }
                    reps.push(x);
                }
            }
        }
        Subgroup {
            group: g.clone(),
            members,
            gens,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn members(&self) -> &BitSet {
        &self.members
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn order(&self) -> usize {
        self.members.count()
    }

    pub fn index(&self) -> usize {
        self.group.order() / self.order()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn same_parent(&self, other: &Subgroup) -> bool {
        Arc::ptr_eq(&self.group, &other.group)
    }

    fn check_parent(&self, other: &Subgroup) -> Result<()> {
        if self.same_parent(other) {
            Ok(())
        } else {
            domain(format!(
                "subgroups of different groups ({} and {})",
                self.group.name(),
                other.group.name()
            ))
        }
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.same_parent(other) && self.members.is_subset(&other.members)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.group.order()
    }

    pub fn intersection(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_parent(other)?;
        let members = self.members.intersection(&other.members);
        Ok(Subgroup::from_closed_set(&self.group, &members))
    }

    pub fn join(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_parent(other)?;
        Ok(self.extend(&other.gens))
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.group;
        self.gens
            .iter()
            .all(|&a| self.gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order();
        self.members
            .iter()
            .any(|x| self.group.element_order(x) == n)
    }

    /// `g⁻¹ H g`.
    pub fn conjugate(&self, g: usize) -> Subgroup {
        let grp = &self.group;
        let members =
            BitSet::from_indices(grp.order(), self.members.iter().map(|h| grp.conj(h, g)));
        Subgroup {
            group: grp.clone(),
            members,
            gens: self.gens.iter().map(|&h| grp.conj(h, g)).collect(),
        }
    }

    pub fn is_normal(&self) -> bool {
        let g = &self.group;
        g.generator_indices()
            .iter()
            .all(|&x| self.gens.iter().all(|&h| self.contains(g.conj(h, x))))
    }

    /// `N_G(H)`.
    pub fn normalizer(&self) -> Subgroup {
        let g = &self.group;
        let members = BitSet::from_indices(
            g.order(),
            (0..g.order()).filter(|&x| self.gens.iter().all(|&h| self.contains(g.conj(h, x)))),
        );
        Subgroup::from_closed_set(g, &members)
    }

    /// Largest normal subgroup of the parent contained in `self`.
    pub fn normal_core(&self) -> Subgroup {
        let g = &self.group;
        let members = BitSet::from_indices(
            g.order(),
            self.members
                .iter()
                .filter(|&h| (0..g.order()).all(|x| self.contains(g.conj(h, x)))),
        );
        Subgroup::from_closed_set(g, &members)
    }

    /// Smallest normal subgroup of the parent containing `self`.
    pub fn normal_closure(&self) -> Subgroup {
        let g = &self.group;
        let mut n = self.clone();
        loop {
            let missing = n.gens.iter().find_map(|&h| {
                g.generator_indices()
                    .iter()
                    .map(|&x| g.conj(h, x))
                    .find(|&c| !n.contains(c))
            });
            match missing {
                Some(c) => n = n.extend(&[c]),
                None => return n,
            }
        }
    }

    /// The set `HK` as a bitset over the parent's elements.
    pub fn product_set(&self, other: &Subgroup) -> Result<BitSet> {
        self.check_parent(other)?;
        let g = &self.group;
        let mut out = BitSet::new(g.order());
        let ks: Vec<usize> = other.members.iter().collect();
        for h in self.members.iter() {
            for &k in &ks {
                out.insert(g.mul(h, k));
            }
        }
        Ok(out)
    }

    /// `HK = KH`.
    pub fn permutes(&self, other: &Subgroup) -> Result<bool> {
        Ok(self.product_set(other)? == other.product_set(self)?)
    }

    /// The subgroup as a group in its own right, on the same points.
    pub fn to_group(&self, name: impl Into<String>) -> Arc<FiniteGroup> {
        let gens = self
            .gens
            .iter()
            .map(|&x| self.group.element(x).clone())
            .collect();
        let limits = Limits {
            max_order: self.group.order(),
            ..Limits::default()
        };
        FiniteGroup::generate(name, self.group.degree(), gens, &limits)
            .expect("a subgroup is no larger than its parent")
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.same_parent(other) && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .gens
            .iter()
            .map(|&x| self.group.element(x).to_string())
            .collect();
        write!(
            f,
            "Subgroup(order {} of {}, gens [{}])",
            self.order(),
            self.group.name(),
            gens.join(", ")
        )
    }
}
