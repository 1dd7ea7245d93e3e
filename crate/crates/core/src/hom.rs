//! Homomorphisms between materialized groups, given on generators.

use std::fmt;
use std::sync::Arc;

use crate::bitset::BitSet;
use crate::error::{domain, Error, Result};
use crate::group::FiniteGroup;
use crate::perm::Permutation;
use crate::subgroup::Subgroup;

/// Sources up to this order are validated on every pair of elements.
pub const FULL_CHECK_BOUND: usize = 500;

#[derive(Clone)]
pub struct Homomorphism {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    generator_images: Vec<usize>,
    map: Vec<u32>,
    surjective: bool,
}

impl Homomorphism {
    /// Extends `images` (aligned with `source.generators()`) to a homomorphism.
    pub fn new(
        source: &Arc<FiniteGroup>,
        target: &Arc<FiniteGroup>,
        images: &[Permutation],
    ) -> Result<Self> {
        let idx = images
            .iter()
            .map(|p| {
                target.index_of(p).ok_or_else(|| {
                    Error::Domain(format!("{p} is not an element of {}", target.name()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Homomorphism::from_indices(source, target, idx)
    }

    pub fn from_indices(
        source: &Arc<FiniteGroup>,
        target: &Arc<FiniteGroup>,
        images: Vec<usize>,
    ) -> Result<Self> {
        if images.len() != source.generators().len() {
            return domain(format!(
                "{} generator images given for {} generators",
                images.len(),
                source.generators().len()
            ));
        }
        if images.iter().any(|&y| y >= target.order()) {
            return domain("generator image outside the target group");
        }
        let mut map = vec![0u32; source.order()];
        for &(child, parent, gi) in source.spanning_tree() {
            map[child as usize] = if gi == u32::MAX {
                target.identity() as u32
            } else {
                target.mul(map[parent as usize] as usize, images[gi as usize]) as u32
            };
        }

        // f(xs) = f(x)f(s) on every Cayley edge proves the map multiplicative.
        let gens = source.generator_indices();
        for x in 0..source.order() {
            for (gi, &s) in gens.iter().enumerate() {
                let lhs = map[source.mul(x, s)] as usize;
                let rhs = target.mul(map[x] as usize, images[gi]);
                if lhs != rhs {
                    return Err(not_hom(source, target, x, s));
                }
            }
        }
        if source.order() <= FULL_CHECK_BOUND {
            for a in 0..source.order() {
                for b in 0..source.order() {
                    let lhs = map[source.mul(a, b)] as usize;
                    if lhs != target.mul(map[a] as usize, map[b] as usize) {
                        return Err(not_hom(source, target, a, b));
                    }
                }
            }
        }
        let image = BitSet::from_indices(target.order(), map.iter().map(|&y| y as usize));
        Ok(Homomorphism {
            source: source.clone(),
            target: target.clone(),
            generator_images: images,
            surjective: image.count() == target.order(),
            map,
        })
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn generator_images(&self) -> &[usize] {
        &self.generator_images
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x] as usize
    }

    pub fn image(&self, h: &Subgroup) -> Result<Subgroup> {
        if !Arc::ptr_eq(h.group(), &self.source) {
            return domain("subgroup is not in the source group");
        }
        let members =
            BitSet::from_indices(self.target.order(), h.elements().map(|x| self.apply(x)));
        Ok(Subgroup::from_closed_set(&self.target, &members))
    }

    pub fn preimage(&self, k: &Subgroup) -> Result<Subgroup> {
        if !Arc::ptr_eq(k.group(), &self.target) {
            return domain("subgroup is not in the target group");
        }
        let members = BitSet::from_indices(
            self.source.order(),
            (0..self.source.order()).filter(|&x| k.contains(self.apply(x))),
        );
        Ok(Subgroup::from_closed_set(&self.source, &members))
    }

    pub fn kernel(&self) -> Subgroup {
        self.preimage(&Subgroup::trivial(&self.target))
            .expect("trivial subgroup lives in the target")
    }
}

fn not_hom(source: &FiniteGroup, target: &FiniteGroup, a: usize, b: usize) -> Error {
    Error::Construction(format!(
        "generator map {} -> {} is not a homomorphism: f({}·{}) ≠ f({})f({})",
        source.name(),
        target.name(),
        source.element(a),
        source.element(b),
        source.element(a),
        source.element(b)
    ))
}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Homomorphism")
            .field("source", &self.source.name())
            .field("target", &self.target.name())
            .field("surjective", &self.surjective)
            .finish()
    }
}
