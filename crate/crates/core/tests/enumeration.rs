mod common;

use std::collections::BTreeSet;

use common::*;
use proflat_core::construct::*;
use proflat_core::{enumerate_subgroups, Subgroup};

#[test]
fn enumeration_matches_subset_closure_oracle() {
    for g in small_corpus() {
        let view = enumerate_subgroups(&g, &lim()).unwrap();
        let cayley = Cayley::new(&g);
        assert_eq!(cayley.order(), g.order(), "{}", g.name());
        let ours: BTreeSet<u32> = view
            .subgroups()
            .iter()
            .map(|h| cayley.mask_of(&members_of(h)))
            .collect();
        assert_eq!(ours.len(), view.len(), "{}: duplicate subgroups", g.name());
        assert_eq!(ours, cayley.all_subgroups(), "{}", g.name());
    }
}

#[test]
fn fixed_subgroup_counts() {
    let l = lim();
    let cases = [
        (symmetric(3, &l).unwrap(), 6),
        (elementary_abelian(2, 2, &l).unwrap(), 5),
        (dihedral(8, &l).unwrap(), 10),
        (quaternion8(&l).unwrap(), 6),
        (alternating(4, &l).unwrap(), 10),
        (alternating(5, &l).unwrap(), 59),
        (cyclic(6, &l).unwrap(), 4),
        (symmetric(4, &l).unwrap(), 30),
        (elementary_abelian(2, 5, &l).unwrap(), 374),
        (elementary_abelian(3, 4, &l).unwrap(), 212),
    ];
    for (g, n) in cases {
        assert_eq!(
            enumerate_subgroups(&g, &l).unwrap().len(),
            n,
            "{}",
            g.name()
        );
    }
}

#[test]
fn lattice_order_is_inclusion_and_join_is_closure() {
    for g in small_corpus() {
        let view = enumerate_subgroups(&g, &lim()).unwrap();
        let lat = view.lattice();
        let sets: Vec<BTreeSet<_>> = view.subgroups().iter().map(members_of).collect();
        assert!(view.subgroup(lat.bottom()).is_trivial());
        assert!(view.subgroup(lat.top()).is_whole());
        for a in 0..view.len() {
            for b in 0..view.len() {
                assert_eq!(lat.leq(a, b), sets[a].is_subset(&sets[b]));
                let union: Vec<_> = sets[a].union(&sets[b]).cloned().collect();
                assert_eq!(sets[lat.join(a, b)], closure_oracle(g.degree(), &union));
                let inter: BTreeSet<_> = sets[a].intersection(&sets[b]).cloned().collect();
                assert_eq!(sets[lat.meet(a, b)], inter);
            }
        }
    }
}

#[test]
fn canonical_order_is_by_order_then_bitset() {
    for g in small_corpus() {
        let view = enumerate_subgroups(&g, &lim()).unwrap();
        for w in view.subgroups().windows(2) {
            let key = |h: &Subgroup| (h.order(), h.members().clone());
            assert!(key(&w[0]) < key(&w[1]), "{}", g.name());
        }
    }
}

#[test]
fn annotations_match_subgroups() {
    for g in small_corpus() {
        let view = enumerate_subgroups(&g, &lim()).unwrap();
        for (k, h) in view.subgroups().iter().enumerate() {
            let info = view.info(k);
            let set = members_of(h);
            assert_eq!(info.order, set.len());
            let normal = (0..g.order()).all(|x| {
                let p = g.element(x);
                set.iter()
                    .all(|y| set.contains(&p.inverse().then(y).then(p)))
            });
            assert_eq!(info.normal, normal);
            let abelian = set
                .iter()
                .all(|a| set.iter().all(|b| a.then(b) == b.then(a)));
            assert_eq!(info.abelian, abelian);
            let cyclic = set
                .iter()
                .any(|a| closure_oracle(g.degree(), std::slice::from_ref(a)).len() == set.len());
            assert_eq!(info.cyclic, cyclic);
            assert!(view.open_subgroup_test_finite(k));
        }
    }
}

#[test]
fn normal_subgroups_are_modular_elements() {
    for g in small_corpus() {
        let view = enumerate_subgroups(&g, &lim()).unwrap();
        let modular = view.lattice().modular_elements();
        for k in view.normal_nodes() {
            assert!(modular[k], "{}: normal node {k} not modular", g.name());
        }
        let count = modular.iter().filter(|&&m| m).count();
        assert!(view.normal_nodes().len() <= count);
    }
}

#[test]
fn exchange_with_annotations_round_trips() {
    let g = symmetric(3, &lim()).unwrap();
    let view = enumerate_subgroups(&g, &lim()).unwrap();
    let text = view.to_exchange_with_annotations();
    let lines: Vec<&str> = text.lines().filter(|l| l.starts_with("# ")).collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(
        lines[1],
        "# {\"node\":1,\"order\":2,\"normal\":false,\"cyclic\":true,\"abelian\":true}"
    );
    let back = proflat_core::Lattice::parse_exchange(&text).unwrap();
    assert!(back.is_isomorphic(view.lattice(), 64).unwrap());
}
