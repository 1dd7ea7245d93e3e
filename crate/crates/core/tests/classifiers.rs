mod common;

use std::sync::Arc;

use common::*;
use proflat_core::classify::*;
use proflat_core::construct::*;
use proflat_core::structure::{is_hall, is_nilpotent, is_perfect, quotient, sylow};
use proflat_core::{enumerate_subgroups, FiniteGroup, Subgroup};

fn p_groups() -> Vec<Arc<FiniteGroup>> {
    let l = lim();
    let c2 = cyclic(2, &l).unwrap();
    vec![
        cyclic(2, &l).unwrap(),
        cyclic(27, &l).unwrap(),
        elementary_abelian(2, 2, &l).unwrap(),
        elementary_abelian(2, 5, &l).unwrap(),
        elementary_abelian(3, 3, &l).unwrap(),
        direct_product(&cyclic(4, &l).unwrap(), &cyclic(8, &l).unwrap(), &l).unwrap(),
        dihedral(8, &l).unwrap(),
        dihedral(16, &l).unwrap(),
        dihedral(32, &l).unwrap(),
        quaternion8(&l).unwrap(),
        direct_product(&quaternion8(&l).unwrap(), &c2, &l).unwrap(),
        direct_product(
            &quaternion8(&l).unwrap(),
            &elementary_abelian(2, 2, &l).unwrap(),
            &l,
        )
        .unwrap(),
        direct_product(&dihedral(8, &l).unwrap(), &c2, &l).unwrap(),
        modular_p_group(2, 4, &l).unwrap(),
        modular_p_group(2, 5, &l).unwrap(),
        modular_p_group(2, 6, &l).unwrap(),
        modular_p_group(3, 3, &l).unwrap(),
        modular_p_group(5, 3, &l).unwrap(),
        semidirect_cyclic(8, &[8], 5, &l).unwrap(),
        semidirect_cyclic(4, &[4], 3, &l).unwrap(),
        semidirect_cyclic(2, &[8], 3, &l).unwrap(),
        semidirect_cyclic(2, &[4, 2], 3, &l).unwrap(),
        semidirect_cyclic(4, &[8], 5, &l).unwrap(),
        semidirect_cyclic(3, &[9, 3], 4, &l).unwrap(),
        semidirect_cyclic(9, &[9], 4, &l).unwrap(),
    ]
}

/// Groups up to order 100, with every kind of coprime block.
fn medium_corpus() -> Vec<Arc<FiniteGroup>> {
    let l = lim();
    let mut out = small_corpus();
    let prod = |a: Arc<FiniteGroup>, b: Arc<FiniteGroup>| direct_product(&a, &b, &l).unwrap();
    out.extend([
        alternating(5, &l).unwrap(),
        prod(symmetric(3, &l).unwrap(), cyclic(5, &l).unwrap()),
        prod(quaternion8(&l).unwrap(), cyclic(3, &l).unwrap()),
        prod(symmetric(3, &l).unwrap(), cyclic(3, &l).unwrap()),
        prod(symmetric(3, &l).unwrap(), symmetric(3, &l).unwrap()),
        prod(alternating(4, &l).unwrap(), cyclic(5, &l).unwrap()),
        prod(nonabelian_pq(7, 3, &l).unwrap(), cyclic(2, &l).unwrap()),
        prod(
            nonabelian_pq(5, 2, &l).unwrap(),
            nonabelian_pq(3, 2, &l).unwrap(),
        ),
        nonabelian_pq(13, 3, &l).unwrap(),
        nonabelian_pq(11, 5, &l).unwrap(),
        semidirect_cyclic(8, &[3], 2, &l).unwrap(),
        semidirect_cyclic(4, &[3, 3], 2, &l).unwrap(),
        semidirect_cyclic(2, &[3, 3], 2, &l).unwrap(),
        semidirect_cyclic(4, &[5], 2, &l).unwrap(),
        semidirect_cyclic(3, &[7], 2, &l).unwrap(),
        semidirect_cyclic(2, &[9], 8, &l).unwrap(),
        modular_p_group(2, 5, &l).unwrap(),
        modular_p_group(3, 3, &l).unwrap(),
        dihedral(32, &l).unwrap(),
        elementary_abelian(2, 5, &l).unwrap(),
    ]);
    out
}

#[test]
fn structural_modularity_of_p_groups() {
    let mut seen = (0, 0);
    for g in p_groups() {
        assert!(g.order() <= 128);
        let view = enumerate_subgroups(&g, &lim()).unwrap();
        let structural = is_modular_p_group_structural(&g, &lim()).unwrap();
        assert_eq!(view.lattice().is_modular(), structural, "{}", g.name());
        if structural {
            seen.0 += 1;
        } else {
            seen.1 += 1;
        }
        if let Some(t) = find_iwasawa_triple(&g, &lim()).unwrap() {
            assert!(t.a.is_normal() && t.a.is_abelian());
            assert_eq!(t.a.extend(&[t.b]).order(), g.order());
            assert!(t.s >= if t.p == 2 { 2 } else { 1 });
            let e = 1 + t.p.pow(t.s);
            for x in t.a.elements() {
                assert_eq!(g.conj(x, t.b), g.pow(x, e), "{}", g.name());
            }
        }
    }
    assert!(seen.0 >= 10 && seen.1 >= 4, "{seen:?}");
}

#[test]
fn iwasawa_examples() {
    let l = lim();
    let m16 = semidirect_cyclic(2, &[8], 5, &l).unwrap();
    let t = find_iwasawa_triple(&m16, &l).unwrap().unwrap();
    assert_eq!((t.p, t.s), (2, 2));
    let q8 = quaternion8(&l).unwrap();
    assert!(is_hamiltonian(&q8));
    assert!(is_modular_p_group_structural(&q8, &l).unwrap());
    assert!(!is_modular_p_group_structural(&dihedral(8, &l).unwrap(), &l).unwrap());
    assert!(find_iwasawa_triple(&symmetric(3, &l).unwrap(), &l).is_err());
    assert!(!is_hamiltonian(&cyclic(8, &l).unwrap()));
}

#[test]
fn p_group_lattices_match_elementary_abelian_ones() {
    let mut found = 0;
    for g in medium_corpus() {
        let Some(c) = is_p_group_structure(&g) else {
            continue;
        };
        found += 1;
        let view = enumerate_subgroups(&g, &lim()).unwrap();
        assert!(view.lattice().is_modular(), "{}", g.name());
        // |G| = p^n or p^{n-1}q, and L(G) looks like L(C_p^n)
        let n = proflat_core::arith::factorize(g.order())
            .iter()
            .map(|&(_, e)| e as usize)
            .sum::<usize>();
        assert_eq!(view.lattice().height(), n, "{}", g.name());
        let model = elementary_abelian(c.p, n, &lim()).unwrap();
        let model = enumerate_subgroups(&model, &lim()).unwrap();
        if model.len() <= 64 {
            assert!(
                view.lattice().is_isomorphic(model.lattice(), 64).unwrap(),
                "{}",
                g.name()
            );
        } else {
            assert_eq!(view.len(), model.len(), "{}", g.name());
        }
        assert!(c.a.is_normal());
        if c.kind == PGroupKind::Semidirect {
            let t = c.t.unwrap();
            assert_eq!(Some(g.element_order(t)), c.q);
            assert!(induces_power_automorphism(&c.a, t));
        }
    }
    assert!(found >= 6, "{found}");
}

#[test]
fn pstar_certificates_check_out() {
    let l = lim();
    let c4c3 = semidirect_cyclic(4, &[3], 2, &l).unwrap();
    let c = is_pstar_group(&c4c3).unwrap();
    assert_eq!((c.p, c.q, c.a.order(), c.automorphism_order), (3, 2, 3, 2));
    assert_eq!(c4c3.element_order(c.t), 4);
    assert!(is_pstar_group(&alternating(4, &l).unwrap()).is_none());
    for g in medium_corpus() {
        if let Some(c) = is_pstar_group(&g) {
            assert!(c.a.is_normal() && c.a.is_abelian(), "{}", g.name());
            assert_eq!(c.a.extend(&[c.t]).order(), g.order());
            for x in c.a.elements() {
                assert_eq!(g.conj(x, c.t), g.pow(x, c.exponent));
            }
            assert!(proflat_core::arith::is_prime(c.automorphism_order));
        }
    }
}

#[test]
fn coprime_decomposition_matches_lattice_decomposition() {
    for g in medium_corpus() {
        let view = enumerate_subgroups(&g, &lim()).unwrap();
        let lattice_split = view.lattice().direct_decompose();
        let group_split = coprime_direct_decomposition(&g);
        assert_eq!(
            lattice_split.is_some(),
            group_split.is_some(),
            "{}",
            g.name()
        );
        let (Some(ld), Some(gd)) = (lattice_split, group_split) else {
            continue;
        };
        assert_eq!(ld.len(), gd.len(), "{}", g.name());
        let factors = gd.factors;
        for (i, f) in factors.iter().enumerate() {
            assert!(f.is_normal());
            for h in &factors[i + 1..] {
                assert!(f.intersection(h).unwrap().is_trivial());
                assert_eq!(proflat_core::arith::gcd(f.order(), h.order()), 1);
            }
        }
        assert_eq!(
            factors.iter().map(|f| f.order()).product::<usize>(),
            g.order()
        );
        // each lattice factor is L(factor) for the matching group factor
        let lattices = ld.factor_lattices(view.lattice()).unwrap();
        for f in &factors {
            let lf = enumerate_subgroups(&f.to_group("f"), &lim()).unwrap();
            let hit = lattices
                .iter()
                .any(|x| x.is_isomorphic(lf.lattice(), 400).unwrap());
            assert!(hit, "{}: factor of order {}", g.name(), f.order());
        }
    }
}

#[test]
fn coprime_examples() {
    let l = lim();
    let orders = |g: Arc<FiniteGroup>| {
        coprime_direct_decomposition(&g).map(|d| d.factors.iter().map(|f| f.order()).collect())
    };
    assert_eq!(orders(cyclic(6, &l).unwrap()), Some(vec![2, 3]));
    assert_eq!(orders(symmetric(3, &l).unwrap()), None);
    let s3c5 = direct_product(&symmetric(3, &l).unwrap(), &cyclic(5, &l).unwrap(), &l).unwrap();
    assert_eq!(orders(s3c5), Some(vec![6, 5]));
}

#[test]
fn modular_lattice_iff_modular_structure() {
    for g in medium_corpus() {
        let view = enumerate_subgroups(&g, &lim()).unwrap();
        let s = modular_structure(&g, &lim()).unwrap();
        assert_eq!(view.lattice().is_modular(), s.holds(), "{}", g.name());
    }
}

#[test]
fn modular_element_characterizations_agree() {
    let mut nonnormal_modular = 0;
    for g in medium_corpus() {
        let view = enumerate_subgroups(&g, &lim()).unwrap();
        let l = view.lattice();
        for (k, m) in view.subgroups().iter().enumerate() {
            let definition = modular_element_oracle(l, k);
            assert_eq!(l.is_modular_element(k), definition);
            let check = modular_element_structure_check(m).unwrap();
            assert_eq!(check.holds, definition, "{} node {k}", g.name());
            assert_eq!(check.certificate.is_some(), check.holds);
            assert_eq!(
                quotient_modularity_violation(&view, k).is_none(),
                definition,
                "{} node {k}",
                g.name()
            );
            if definition && !m.is_normal() {
                nonnormal_modular += 1;
            }
        }
    }
    assert!(nonnormal_modular > 50, "{nonnormal_modular}");
}

#[test]
fn modular_element_examples() {
    let l = lim();
    let s3 = symmetric(3, &l).unwrap();
    let m = Subgroup::closure_of(&s3, &[perm(3, "(1 2)")]).unwrap();
    let c = modular_element_structure_check(&m).unwrap();
    assert!(c.holds);
    let cert = c.certificate.unwrap();
    assert_eq!(cert.core_order, 1);
    assert_eq!(cert.factors.len(), 1);
    assert_eq!((cert.factors[0].order, cert.factors[0].sylow_order), (6, 2));
    assert_eq!((cert.t_order, cert.m_cap_t_order), (1, 1));

    let s4 = symmetric(4, &l).unwrap();
    let m = Subgroup::closure_of(&s4, &[perm(4, "(1 2)")]).unwrap();
    let c = modular_element_structure_check(&m).unwrap();
    assert!(!c.holds && c.certificate.is_none() && c.reason.is_some());

    for g in [s4, alternating(4, &l).unwrap()] {
        let view = enumerate_subgroups(&g, &l).unwrap();
        for k in view.normal_nodes() {
            let c = modular_element_structure_check(view.subgroup(k)).unwrap();
            assert!(c.holds);
            assert!(c.certificate.unwrap().factors.is_empty());
        }
    }
    let trivial = Subgroup::trivial(&s3);
    assert!(modular_element_structure_check(&trivial).unwrap().holds);
}

#[test]
fn perfect_groups_have_only_normal_modular_elements() {
    let a5 = alternating(5, &lim()).unwrap();
    assert!(is_perfect(&a5));
    let view = enumerate_subgroups(&a5, &lim()).unwrap();
    assert_eq!(view.len(), 59);
    let modular: Vec<usize> = (0..view.len())
        .filter(|&k| modular_element_oracle(view.lattice(), k))
        .collect();
    assert_eq!(modular, vec![0, 58]);
    assert_eq!(view.normal_nodes(), vec![0, 58]);
}

#[test]
fn modular_elements_are_nilpotent_over_their_core() {
    for g in medium_corpus() {
        let view = enumerate_subgroups(&g, &lim()).unwrap();
        let flags = view.lattice().modular_elements();
        for (k, m) in view.subgroups().iter().enumerate() {
            if !flags[k] {
                continue;
            }
            let core = m.normal_core();
            let (q, proj) = quotient(&core).unwrap();
            let image = proj.image(m).unwrap().to_group("M/M_G");
            assert!(is_nilpotent(&image), "{} node {k}", g.name());
            assert_eq!(q.order() * core.order(), g.order());
            if is_perfect(&g) {
                assert!(m.is_normal());
            }
        }
    }
}

#[test]
fn sylows_of_nilpotent_modular_hall_subgroups_are_modular() {
    let mut checked = 0;
    for g in medium_corpus() {
        let view = enumerate_subgroups(&g, &lim()).unwrap();
        let flags = view.lattice().modular_elements();
        for (k, m) in view.subgroups().iter().enumerate() {
            if !flags[k] || !is_hall(m) || m.is_trivial() {
                continue;
            }
            let h = m.to_group("M");
            if !is_nilpotent(&h) {
                continue;
            }
            for p in proflat_core::structure::pi(&h) {
                let s = sylow(&g, p).unwrap();
                // the Sylow subgroup of M lies in some Sylow of G; take it as
                // M's own p-part
                let own: Vec<usize> = m
                    .elements()
                    .filter(|&x| {
                        proflat_core::arith::prime_power_base(g.element_order(x)) == Some(p)
                    })
                    .collect();
                let sp = Subgroup::closure(&g, &own).unwrap();
                assert!(sp.order() <= s.order());
                let node = view.node_of(&sp).unwrap();
                assert!(flags[node], "{} node {k} p={p}", g.name());
                checked += 1;
            }
        }
    }
    assert!(checked > 100, "{checked}");
}

#[test]
fn hall_statement_needs_nilpotent_m() {
    let a4 = alternating(4, &lim()).unwrap();
    let view = enumerate_subgroups(&a4, &lim()).unwrap();
    let top = view.len() - 1;
    assert!(view.lattice().is_modular_element(top));
    assert!(is_hall(view.subgroup(top)));
    let s3 = view.node_of(&sylow(&a4, 3).unwrap()).unwrap();
    assert!(!view.lattice().is_modular_element(s3));
}

#[test]
fn sylows_of_nilpotent_permutable_subgroups_are_permutable() {
    let mut checked = 0;
    for g in medium_corpus() {
        let view = enumerate_subgroups(&g, &lim()).unwrap();
        for m in view.subgroups() {
            let permutable = view.subgroups().iter().all(|k| m.permutes(k).unwrap());
            if !permutable || m.is_normal() || !is_nilpotent(&m.to_group("M")) {
                continue;
            }
            for p in proflat_core::structure::pi(&m.to_group("M")) {
                let own: Vec<usize> = m
                    .elements()
                    .filter(|&x| {
                        proflat_core::arith::prime_power_base(g.element_order(x)) == Some(p)
                    })
                    .collect();
                let sp = Subgroup::closure(&g, &own).unwrap();
                for k in view.subgroups() {
                    assert!(sp.permutes(k).unwrap(), "{}", g.name());
                }
                checked += 1;
            }
        }
    }
    assert!(checked >= 5, "{checked}");
}
