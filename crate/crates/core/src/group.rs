//! Materialized finite permutation groups.
//!
//! Every group stores its full element list in canonical (lexicographic on
//! images) order together with a multiplication table, so that subgroups can
//! be handled as bitsets over element indices.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Name of the environment variable overriding [`Limits::max_order`].
pub const MAX_ORDER_ENV: &str = "PROFLAT_MAX_ORDER";

/// Size bounds applied to materialized groups and lattice searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_order: usize,
    /// Largest lattice accepted by the isomorphism search.
    pub max_iso_size: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 2000,
            max_iso_size: 64,
        }
    }
}

impl Limits {
    /// Defaults, with `max_order` taken from `PROFLAT_MAX_ORDER` when set.
    pub fn from_env() -> Result<Self> {
        let mut limits = Limits::default();
        if let Ok(v) = std::env::var(MAX_ORDER_ENV) {
            limits.max_order = v.trim().parse().map_err(|_| {
                Error::Domain(format!("{MAX_ORDER_ENV}={v:?} is not a positive integer"))
            })?;
        }
        Ok(limits)
    }

    pub(crate) fn check_order(&self, order: usize) -> Result<()> {
        if order > self.max_order {
            return Err(Error::Resource {
                what: "group order",
                bound: self.max_order,
                actual: order,
            });
        }
        Ok(())
    }
}

pub struct FiniteGroup {
    name: String,
    degree: usize,
    generators: Vec<Permutation>,
    generator_indices: Vec<usize>,
    elements: Vec<Permutation>,
    lookup: HashMap<Permutation, u32>,
    table: Vec<u32>,
    inverses: Vec<u32>,
    orders: Vec<u32>,
    /// Elements in breadth-first discovery order with `(parent, generator)`:
    /// `elements[child] = elements[parent] * generators[generator]`.
    tree: Vec<(u32, u32, u32)>,
}

impl FiniteGroup {
    /// Generates the group spanned by `generators` on `degree` points.
    pub fn generate(
        name: impl Into<String>,
        degree: usize,
        generators: Vec<Permutation>,
        limits: &Limits,
    ) -> Result<Arc<FiniteGroup>> {
        if degree == 0 {
            return Err(Error::Construction("degree must be positive".into()));
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::Construction(format!(
                "generator {g} has degree {}, expected {degree}",
                g.degree()
            )));
        }

        // Breadth-first closure under right multiplication by generators.
        let mut found: HashMap<Permutation, u32> = HashMap::new();
        let mut raw: Vec<Permutation> = vec![Permutation::identity(degree)];
        let mut raw_tree: Vec<(u32, u32)> = vec![(0, u32::MAX)];
        found.insert(raw[0].clone(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (gi, g) in generators.iter().enumerate() {
                let y = raw[x].then(g);
                if !found.contains_key(&y) {
                    let id = raw.len();
                    limits.check_order(id + 1)?;
                    found.insert(y.clone(), id as u32);
                    raw.push(y);
                    raw_tree.push((x as u32, gi as u32));
                    queue.push_back(id);
                }
            }
        }

        let n = raw.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| raw[a].cmp(&raw[b]));
        let mut rank = vec![0u32; n];
        for (pos, &r) in order.iter().enumerate() {
            rank[r] = pos as u32;
        }
        let elements: Vec<Permutation> = order.iter().map(|&r| raw[r].clone()).collect();
        let lookup: HashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        // Discovery order is preserved so parents precede children.
        let tree: Vec<(u32, u32, u32)> = (0..n)
            .map(|r| (rank[r], rank[raw_tree[r].0 as usize], raw_tree[r].1))
            .collect();

        let k = generators.len();
        let mut right_gen = vec![0u32; n * k];
        for (i, e) in elements.iter().enumerate() {
            for (gi, g) in generators.iter().enumerate() {
                right_gen[i * k + gi] = lookup[&e.then(g)];
            }
        }
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            let row = &mut table[i * n..(i + 1) * n];
            for &(child, parent, gi) in &tree {
                row[child as usize] = if gi == u32::MAX {
                    i as u32
                } else {
                    right_gen[row[parent as usize] as usize * k + gi as usize]
                };
            }
        }
        let inverses: Vec<u32> = elements.iter().map(|e| lookup[&e.inverse()]).collect();
        let mut orders = vec![1u32; n];
        for (i, o) in orders.iter_mut().enumerate() {
            let mut x = i;
            while x != 0 {
                x = table[x * n + i] as usize;
                *o += 1;
            }
        }
        let generator_indices = generators.iter().map(|g| lookup[g] as usize).collect();
        Ok(Arc::new(FiniteGroup {
            name: name.into(),
            degree,
            generators,
            generator_indices,
            elements,
            lookup,
            table,
            inverses,
            orders,
            tree,
        }))
    }

    /// Same group under a different name.
    pub fn renamed(&self, name: impl Into<String>) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup {
            name: name.into(),
            degree: self.degree,
            generators: self.generators.clone(),
            generator_indices: self.generator_indices.clone(),
            elements: self.elements.clone(),
            lookup: self.lookup.clone(),
            table: self.table.clone(),
            inverses: self.inverses.clone(),
            orders: self.orders.clone(),
            tree: self.tree.clone(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    /// The identity is lexicographically smallest, hence always index 0.
    #[inline]
    pub fn identity(&self) -> usize {
        0
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.lookup.get(p).map(|&i| i as usize)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.elements.len() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    #[inline]
    pub fn element_order(&self, a: usize) -> usize {
        self.orders[a] as usize
    }

    pub fn pow(&self, a: usize, e: usize) -> usize {
        let e = e % self.element_order(a);
        (0..e).fold(0, |acc, _| self.mul(acc, a))
    }

    /// `g⁻¹ a g`.
    #[inline]
    pub fn conj(&self, a: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), a), g)
    }

    /// `a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generator_indices;
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn exponent(&self) -> usize {
        self.orders
            .iter()
            .fold(1, |acc, &o| crate::arith::lcm(acc, o as usize))
    }

    /// Breadth-first spanning tree over the Cayley graph, parents first.
    pub(crate) fn spanning_tree(&self) -> &[(u32, u32, u32)] {
        &self.tree
    }

    /// One catalogue record, e.g. `name S3; degree 3; gens (1 2); (1 2 3)`.
    pub fn to_record(&self) -> String {
        let gens: Vec<String> = if self.generators.is_empty() {
            vec!["()".into()]
        } else {
            self.generators.iter().map(|g| g.to_string()).collect()
        };
        format!(
            "name {}; degree {}; gens {}",
            self.name,
            self.degree,
            gens.join("; ")
        )
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}
