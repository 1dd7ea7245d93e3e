//! Quotients and characteristic subgroups of a finite group.

use std::sync::Arc;

use crate::arith::{is_prime, p_part, prime_divisors, prime_power_base};
use crate::error::{domain, Error, Result};
use crate::group::{FiniteGroup, Limits};
use crate::hom::Homomorphism;
use crate::perm::Permutation;
use crate::subgroup::Subgroup;
use crate::subgroups::SubgroupLatticeView;

/// `G/N` acting on the right cosets of `N`, with the canonical projection.
pub fn quotient(n: &Subgroup) -> Result<(Arc<FiniteGroup>, Homomorphism)> {
    let g = n.group();
    if !n.is_normal() {
        return Err(Error::Precondition(format!(
            "subgroup of order {} is not normal in {}",
            n.order(),
            g.name()
        )));
    }
    let mut coset = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    let members: Vec<usize> = n.elements().collect();
    for x in 0..g.order() {
        if coset[x] == usize::MAX {
            for &h in &members {
                coset[g.mul(h, x)] = reps.len();
            }
            reps.push(x);
        }
    }
    let degree = reps.len();
    let images = g
        .generator_indices()
        .iter()
        .map(|&s| Permutation::from_images(reps.iter().map(|&r| coset[g.mul(r, s)]).collect()))
        .collect::<Result<Vec<_>>>()?;
    let limits = Limits {
        max_order: g.order(),
        ..Limits::default()
    };
    let q = FiniteGroup::generate(
        format!("{}/N{}", g.name(), n.order()),
        degree,
        images.clone(),
        &limits,
    )?;
    let proj = Homomorphism::new(g, &q, &images)?;
    debug_assert!(proj.is_surjective());
    Ok((q, proj))
}

/// Set of primes dividing `|G|`, ascending.
pub fn pi(g: &FiniteGroup) -> Vec<usize> {
    prime_divisors(g.order())
}

/// `Some(p)` for a non-trivial `p`-group.
pub fn p_group_prime(g: &FiniteGroup) -> Option<usize> {
    prime_power_base(g.order())
}

pub fn is_p_element(g: &FiniteGroup, x: usize, p: usize) -> bool {
    p_part(g.element_order(x), p) == g.element_order(x)
}

/// A Sylow `p`-subgroup, grown one normalizing `p`-element at a time.
pub fn sylow(g: &Arc<FiniteGroup>, p: usize) -> Result<Subgroup> {
    if !is_prime(p) || !g.order().is_multiple_of(p) {
        return domain(format!(
            "{p} is not a prime divisor of |{}| = {}",
            g.name(),
            g.order()
        ));
    }
    let target = p_part(g.order(), p);
    let mut sub = Subgroup::trivial(g);
    while sub.order() < target {
        // p divides |N(P):P| while P is not Sylow, so a p-element of
        // N(P) \ P exists and P⟨x⟩ is a larger p-group.
        let norm = sub.normalizer();
        let x = norm
            .elements()
            .find(|&x| !sub.contains(x) && is_p_element(g, x, p))
            .expect("Sylow's theorem");
        sub = sub.extend(&[x]);
    }
    Ok(sub)
}

pub fn commutator_subgroup(g: &Arc<FiniteGroup>) -> Subgroup {
    let gens = g.generator_indices();
    let seeds: Vec<usize> = gens
        .iter()
        .flat_map(|&a| gens.iter().map(move |&b| (a, b)))
        .map(|(a, b)| g.commutator(a, b))
        .collect();
    Subgroup::closure(g, &seeds)
        .expect("commutators lie in the group")
        .normal_closure()
}

pub fn is_perfect(g: &Arc<FiniteGroup>) -> bool {
    commutator_subgroup(g).is_whole()
}

/// A finite group is nilpotent iff every Sylow subgroup is normal.
pub fn is_nilpotent(g: &Arc<FiniteGroup>) -> bool {
    pi(g)
        .into_iter()
        .all(|p| sylow(g, p).expect("p divides |G|").is_normal())
}

pub fn center(g: &Arc<FiniteGroup>) -> Subgroup {
    let gens = g.generator_indices();
    let members = (0..g.order())
        .filter(|&z| gens.iter().all(|&s| g.mul(z, s) == g.mul(s, z)))
        .collect::<Vec<_>>();
    Subgroup::closure(g, &members).expect("central elements lie in the group")
}

/// `gcd(|H|, |G:H|) = 1`.
pub fn is_hall(h: &Subgroup) -> bool {
    crate::arith::gcd(h.order(), h.index()) == 1
}

/// Intersection of the maximal subgroups, read off an enumerated lattice.
pub fn frattini_of(view: &SubgroupLatticeView) -> Subgroup {
    let l = view.lattice();
    let node = l.coatoms().iter().fold(l.top(), |acc, &m| l.meet(acc, m));
    view.subgroup(node).clone()
}

pub fn frattini(g: &Arc<FiniteGroup>, limits: &Limits) -> Result<Subgroup> {
    Ok(frattini_of(&crate::subgroups::enumerate_subgroups(
        g, limits,
    )?))
}
