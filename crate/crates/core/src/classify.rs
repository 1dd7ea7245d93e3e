//! Structure tests matching the lattice-theoretic conditions: cyclic groups,
//! P- and P*-groups, Iwasawa triples, Hamiltonian groups, coprime direct
//! decompositions, and the structural form of a modular element.

use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use crate::arith::{gcd, p_part, pow_mod, prime_divisors};
use crate::bitset::BitSet;
use crate::error::{domain, Result};
use crate::group::{FiniteGroup, Limits};
use crate::structure::{p_group_prime, quotient, sylow};
use crate::subgroup::Subgroup;
use crate::subgroups::{enumerate_subgroups, SubgroupLatticeView};

pub fn is_cyclic(g: &FiniteGroup) -> bool {
    (0..g.order()).any(|x| g.element_order(x) == g.order())
}

fn is_elementary_abelian(h: &Subgroup) -> bool {
    let Some(p) = crate::arith::prime_power_base(h.order()) else {
        return false;
    };
    h.is_abelian()
        && h.elements()
            .all(|x| x == 0 || h.group().element_order(x) == p)
}

/// Whether conjugation by `t` maps every cyclic subgroup of `a` to itself.
pub fn induces_power_automorphism(a: &Subgroup, t: usize) -> bool {
    let g = a.group();
    a.elements().all(|x| {
        let y = g.conj(x, t);
        (0..g.element_order(x)).any(|e| g.pow(x, e) == y)
    })
}

/// The `r` with `t⁻¹ x t = x^r` for all `x ∈ A`, if a single exponent works.
fn power_exponent(a: &Subgroup, t: usize) -> Option<usize> {
    let g = a.group();
    let exp = a.elements().map(|x| g.element_order(x)).max().unwrap_or(1);
    (1..=exp.max(1))
        .filter(|&r| gcd(r, exp) == 1)
        .find(|&r| a.elements().all(|x| g.conj(x, t) == g.pow(x, r)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PGroupKind {
    ElementaryAbelian,
    Semidirect,
}

#[derive(Debug, Clone)]
pub struct PGroupCertificate {
    pub kind: PGroupKind,
    pub p: usize,
    /// Order of the complement for the semidirect kind.
    pub q: Option<usize>,
    pub a: Subgroup,
    pub t: Option<usize>,
}

/// `G` is elementary abelian of order `p^n` with `n ≥ 2`, or `A ⋊ ⟨t⟩` with
/// `A` elementary abelian of order `p^{n-1}`, `|t| = q ≠ p` prime, and `t`
/// inducing a non-trivial power automorphism on `A`.
pub fn is_p_group_structure(g: &Arc<FiniteGroup>) -> Option<PGroupCertificate> {
    let whole = Subgroup::whole(g);
    if let Some(p) = p_group_prime(g) {
        if g.order() >= p * p && is_elementary_abelian(&whole) {
            return Some(PGroupCertificate {
                kind: PGroupKind::ElementaryAbelian,
                p,
                q: None,
                a: whole,
                t: None,
            });
        }
        return None;
    }
    let primes = prime_divisors(g.order());
    if primes.len() != 2 || g.is_abelian() {
        return None;
    }
    for (p, q) in [(primes[0], primes[1]), (primes[1], primes[0])] {
        if g.order() != p_part(g.order(), p) * q {
            continue;
        }
        let a = sylow(g, p).expect("p divides |G|");
        if !a.is_normal() || !is_elementary_abelian(&a) {
            continue;
        }
        let t = (0..g.order()).find(|&x| g.element_order(x) == q)?;
        if induces_power_automorphism(&a, t) {
            return Some(PGroupCertificate {
                kind: PGroupKind::Semidirect,
                p,
                q: Some(q),
                a,
                t: Some(t),
            });
        }
    }
    None
}

#[derive(Debug, Clone)]
pub struct PStarCertificate {
    pub p: usize,
    pub q: usize,
    /// Elementary abelian normal Sylow `p`-subgroup.
    pub a: Subgroup,
    /// Generator of a cyclic Sylow `q`-subgroup.
    pub t: usize,
    /// `t⁻¹ x t = x^exponent` on `A`.
    pub exponent: usize,
    /// Order of the automorphism induced by `t`, a prime.
    pub automorphism_order: usize,
}

/// `G = A ⋊ ⟨t⟩` with `A` elementary abelian, `⟨t⟩` a cyclic `q`-group
/// (`q ≠ p`), and `t` inducing a power automorphism of prime order on `A`.
pub fn is_pstar_group(g: &Arc<FiniteGroup>) -> Option<PStarCertificate> {
    let primes = prime_divisors(g.order());
    if primes.len() != 2 || g.is_abelian() {
        return None;
    }
    for (p, q) in [(primes[0], primes[1]), (primes[1], primes[0])] {
        let a = sylow(g, p).expect("p divides |G|");
        if !a.is_normal() || !is_elementary_abelian(&a) {
            continue;
        }
        let q_part = p_part(g.order(), q);
        let Some(t) = (0..g.order()).find(|&x| g.element_order(x) == q_part) else {
            continue;
        };
        let Some(r) = power_exponent(&a, t) else {
            continue;
        };
        let automorphism_order = crate::arith::multiplicative_order(r, p).unwrap_or(1);
        if automorphism_order == q {
            return Some(PStarCertificate {
                p,
                q,
                a,
                t,
                exponent: r,
                automorphism_order,
            });
        }
    }
    None
}

/// `(A, b, s)` with `A` abelian normal, `G = A⟨b⟩` and `b⁻¹ab = a^{1+p^s}`
/// for all `a ∈ A`, where `s ≥ 1`, and `s ≥ 2` when `p = 2`.
#[derive(Debug, Clone)]
pub struct IwasawaTriple {
    pub p: usize,
    pub a: Subgroup,
    pub b: usize,
    pub s: u32,
}

fn require_p_group(g: &FiniteGroup) -> Result<Option<usize>> {
    if g.order() == 1 {
        return Ok(None);
    }
    match p_group_prime(g) {
        Some(p) => Ok(Some(p)),
        None => domain(format!(
            "{} (order {}) is not a p-group",
            g.name(),
            g.order()
        )),
    }
}

fn min_iwasawa_s(p: usize) -> u32 {
    if p == 2 {
        2
    } else {
        1
    }
}

fn is_iwasawa_triple(a: &Subgroup, b: usize, p: usize, s: u32) -> bool {
    let g = a.group();
    let exp = g.exponent().max(1);
    let e = (1 + pow_mod(p, s as usize, exp)) % exp;
    a.elements().all(|x| g.conj(x, b) == g.pow(x, e))
}

/// First triple in (node, `b`, `s`) order over the enumerated subgroups of
/// a `p`-group.
pub fn find_iwasawa_triple_in(view: &SubgroupLatticeView) -> Result<Option<IwasawaTriple>> {
    let g = view.group();
    let Some(p) = require_p_group(g)? else {
        return Ok(None);
    };
    let smin = min_iwasawa_s(p);
    let smax = (1..).find(|&s| p.pow(s) >= g.exponent()).unwrap().max(smin);
    for (node, a) in view.subgroups().iter().enumerate() {
        let info = view.info(node);
        if !info.abelian || !info.normal {
            continue;
        }
        let needed = g.order() / a.order();
        for b in 0..g.order() {
            if g.element_order(b) < needed || a.extend(&[b]).order() != g.order() {
                continue;
            }
            if let Some(s) = (smin..=smax).find(|&s| is_iwasawa_triple(a, b, p, s)) {
                return Ok(Some(IwasawaTriple {
                    p,
                    a: a.clone(),
                    b,
                    s,
                }));
            }
        }
    }
    Ok(None)
}

pub fn find_iwasawa_triple(g: &Arc<FiniteGroup>, limits: &Limits) -> Result<Option<IwasawaTriple>> {
    let Some(p) = require_p_group(g)? else {
        return Ok(None);
    };
    if g.is_abelian() {
        let smin = min_iwasawa_s(p);
        let s = (smin..).find(|&s| p.pow(s) >= g.exponent()).unwrap();
        return Ok(Some(IwasawaTriple {
            p,
            a: Subgroup::whole(g),
            b: g.identity(),
            s,
        }));
    }
    find_iwasawa_triple_in(&enumerate_subgroups(g, limits)?)
}

/// Non-abelian with every subgroup normal; checking cyclic subgroups
/// suffices.
pub fn is_hamiltonian(g: &Arc<FiniteGroup>) -> bool {
    !g.is_abelian() && (0..g.order()).all(|x| Subgroup::trivial(g).extend(&[x]).is_normal())
}

#[derive(Debug, Clone)]
pub enum ModularPGroup {
    Abelian,
    Hamiltonian,
    Iwasawa(IwasawaTriple),
}

impl ModularPGroup {
    pub fn label(&self) -> &'static str {
        match self {
            ModularPGroup::Abelian => "abelian",
            ModularPGroup::Hamiltonian => "hamiltonian",
            ModularPGroup::Iwasawa(_) => "iwasawa",
        }
    }
}

/// Reason a `p`-group has a modular subgroup lattice, if it does.
pub fn modular_p_group_structure(
    g: &Arc<FiniteGroup>,
    limits: &Limits,
) -> Result<Option<ModularPGroup>> {
    require_p_group(g)?;
    if g.is_abelian() {
        return Ok(Some(ModularPGroup::Abelian));
    }
    if is_hamiltonian(g) {
        return Ok(Some(ModularPGroup::Hamiltonian));
    }
    Ok(find_iwasawa_triple(g, limits)?.map(ModularPGroup::Iwasawa))
}

pub fn is_modular_p_group_structural(g: &Arc<FiniteGroup>, limits: &Limits) -> Result<bool> {
    Ok(modular_p_group_structure(g, limits)?.is_some())
}

/// Subgroup generated by the elements whose order involves only `primes`.
fn sigma_subgroup(g: &Arc<FiniteGroup>, primes: &[usize]) -> Subgroup {
    let seeds: Vec<usize> = (0..g.order())
        .filter(|&x| {
            prime_divisors(g.element_order(x))
                .iter()
                .all(|p| primes.contains(p))
        })
        .collect();
    Subgroup::closure(g, &seeds).expect("seeds lie in the group")
}

/// Finest decomposition of `G` into normal Hall subgroups of pairwise
/// coprime orders, ordered by smallest prime. A coprime-indecomposable
/// group gives a single block, the trivial group none.
pub fn coprime_blocks(g: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let primes = prime_divisors(g.order());
    let k = primes.len();
    let split = |mask: usize| {
        let (inside, outside): (Vec<usize>, Vec<usize>) = (0..k).partition(|&i| mask >> i & 1 == 1);
        let sigma: Vec<usize> = inside.iter().map(|&i| primes[i]).collect();
        let rest: Vec<usize> = outside.iter().map(|&i| primes[i]).collect();
        let order = |ps: &[usize]| ps.iter().map(|&p| p_part(g.order(), p)).product::<usize>();
        sigma_subgroup(g, &sigma).order() == order(&sigma)
            && sigma_subgroup(g, &rest).order() == order(&rest)
    };
    let splittable: Vec<usize> = (1..1usize << k).filter(|&m| split(m)).collect();
    // Splittable sets form a Boolean algebra; its atoms are the blocks.
    splittable
        .iter()
        .copied()
        .filter(|&m| !splittable.iter().any(|&n| n != m && n & m == n))
        .map(|m| {
            let sigma: Vec<usize> = (0..k)
                .filter(|&i| m >> i & 1 == 1)
                .map(|i| primes[i])
                .collect();
            sigma_subgroup(g, &sigma)
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct CoprimeDecomposition {
    pub factors: Vec<Subgroup>,
}

impl CoprimeDecomposition {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

/// The finest coprime direct decomposition with at least two factors, or
/// `None` when `G` is coprime-indecomposable.
pub fn coprime_direct_decomposition(g: &Arc<FiniteGroup>) -> Option<CoprimeDecomposition> {
    let factors = coprime_blocks(g);
    (factors.len() >= 2).then_some(CoprimeDecomposition { factors })
}

#[derive(Debug, Clone)]
pub enum ModularBlockKind {
    PStar(PStarCertificate),
    PGroup(ModularPGroup),
}

impl ModularBlockKind {
    pub fn label(&self) -> &'static str {
        match self {
            ModularBlockKind::PStar(_) => "p*-group",
            ModularBlockKind::PGroup(m) => m.label(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ModularBlock {
    pub factor: Subgroup,
    /// `None` when the block is neither a P*-group nor a modular p-group.
    pub kind: Option<ModularBlockKind>,
}

/// Coprime blocks of `G`, each classified as a P*-group or a modular
/// `p`-group.
#[derive(Debug, Clone)]
pub struct ModularStructure {
    pub blocks: Vec<ModularBlock>,
}

impl ModularStructure {
    pub fn holds(&self) -> bool {
        self.blocks.iter().all(|b| b.kind.is_some())
    }
}

/// Decides whether `G` is a direct product of P*-groups and modular
/// `p`-groups of coprime orders. Any such product refines to the finest
/// coprime decomposition, so only that one needs checking.
pub fn modular_structure(g: &Arc<FiniteGroup>, limits: &Limits) -> Result<ModularStructure> {
    let mut blocks = Vec::new();
    for (i, factor) in coprime_blocks(g).into_iter().enumerate() {
        let h = factor.to_group(format!("{}#{i}", g.name()));
        let kind = if p_group_prime(&h).is_some() {
            modular_p_group_structure(&h, limits)?.map(ModularBlockKind::PGroup)
        } else {
            is_pstar_group(&h).map(ModularBlockKind::PStar)
        };
        blocks.push(ModularBlock { factor, kind });
    }
    Ok(ModularStructure { blocks })
}

/// One non-abelian P-group factor `S_i/M_G` with its Sylow `Q_i/M_G`.
#[derive(Debug, Clone, Serialize)]
pub struct PFactor {
    pub primes: Vec<usize>,
    pub order: usize,
    pub sylow_order: usize,
}

/// Orders describing `G/M_G = ∏ S_i/M_G × T/M_G` and
/// `M/M_G = ∏ Q_i/M_G × (M∩T)/M_G`.
#[derive(Debug, Clone, Serialize)]
pub struct ModularElementCertificate {
    pub core_order: usize,
    pub factors: Vec<PFactor>,
    pub t_order: usize,
    pub m_cap_t_order: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct StructureCheck {
    pub holds: bool,
    pub certificate: Option<ModularElementCertificate>,
    pub reason: Option<String>,
}

/// Structural form of a modular element.
///
/// Over `Ḡ = G/M_G` the factors `S_i` and `T` are unions of coprime
/// blocks. A non-abelian P-group is a single block, and a non-normal
/// Sylow subgroup of one is not permutable, so a block belongs to the
/// `S_i` exactly when it is a non-abelian P-group meeting `M̄` in a
/// non-normal Sylow subgroup. The remaining blocks form `T`, and
/// `M̄ ∩ T̄` must permute with every cyclic subgroup of `Ḡ`.
pub fn modular_element_structure_check(m: &Subgroup) -> Result<StructureCheck> {
    let g = m.group();
    let core = m.normal_core();
    if m.is_normal() {
        return Ok(StructureCheck {
            holds: true,
            certificate: Some(ModularElementCertificate {
                core_order: core.order(),
                factors: Vec::new(),
                t_order: 1,
                m_cap_t_order: 1,
            }),
            reason: None,
        });
    }
    let (q, proj) = quotient(&core)?;
    let mbar = proj.image(m)?;

    let mut factors = Vec::new();
    let mut t_blocks = Vec::new();
    let mut q_product = 1;
    for block in coprime_blocks(&q) {
        let part = mbar.intersection(&block)?;
        let h = block.to_group("block");
        let p_group = !h.is_abelian() && is_p_group_structure(&h).is_some();
        let is_sylow = prime_divisors(block.order())
            .iter()
            .any(|&p| part.order() > 1 && part.order() == p_part(block.order(), p));
        if p_group && is_sylow && !part.is_normal() {
            q_product *= part.order();
            factors.push(PFactor {
                primes: prime_divisors(block.order()),
                order: block.order(),
                sylow_order: part.order(),
            });
        } else {
            t_blocks.push(block);
        }
    }
    let t = t_blocks.iter().fold(Subgroup::trivial(&q), |acc, b| {
        acc.join(b).expect("same group")
    });
    let u = mbar.intersection(&t)?;
    let certificate = ModularElementCertificate {
        core_order: core.order(),
        factors,
        t_order: t.order(),
        m_cap_t_order: u.order(),
    };
    if q_product * u.order() != mbar.order() {
        return Ok(StructureCheck {
            holds: false,
            certificate: None,
            reason: Some("M/M_G does not split along the block decomposition".into()),
        });
    }
    let mut seen = HashSet::<BitSet>::new();
    for x in 0..q.order() {
        let cyc = Subgroup::trivial(&q).extend(&[x]);
        if !seen.insert(cyc.members().clone()) {
            continue;
        }
        if !u.permutes(&cyc)? {
            return Ok(StructureCheck {
                holds: false,
                certificate: None,
                reason: Some(format!(
                    "(M∩T)/M_G of order {} does not permute with ⟨{}⟩ in G/M_G",
                    u.order(),
                    q.element(x)
                )),
            });
        }
    }
    debug_assert!(Arc::ptr_eq(proj.source(), g));
    Ok(StructureCheck {
        holds: true,
        certificate: Some(certificate),
        reason: None,
    })
}

/// A normal node `N` for which `M ∨ N` is not modular in `[N, G]`, that is,
/// `MN/N` is not a modular element of `L(G/N)`.
pub fn quotient_modularity_violation(view: &SubgroupLatticeView, m: usize) -> Option<usize> {
    let l = view.lattice();
    view.normal_nodes().into_iter().find(|&n| {
        l.modular_element_violation_in(n, l.top(), l.join(m, n))
            .is_some()
    })
}
