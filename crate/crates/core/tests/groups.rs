mod common;

use std::collections::BTreeSet;

use common::*;
use proflat_core::construct::*;
use proflat_core::structure::{
    commutator_subgroup, frattini, frattini_of, is_nilpotent, is_perfect, pi, quotient, sylow,
};
use proflat_core::{enumerate_subgroups, Error, Limits, Permutation, Subgroup};
use proptest::prelude::*;

#[test]
fn closure_examples() {
    let s3 = symmetric(3, &lim()).unwrap();
    let h = Subgroup::closure_of(&s3, &[perm(3, "(1 2)")]).unwrap();
    assert_eq!(members_of(&h), closure_oracle(3, &[perm(3, "(1 2)")]));
    assert_eq!(h.order(), 2);
    assert!(Subgroup::closure(&s3, &[]).unwrap().is_trivial());

    let c6 = cyclic(6, &lim()).unwrap();
    let g = (0..6).find(|&x| c6.element_order(x) == 6).unwrap();
    assert!(Subgroup::closure(&c6, &[g]).unwrap().is_whole());

    assert!(matches!(
        Subgroup::closure_of(&s3, &[perm(4, "(1 4)")]),
        Err(Error::Domain(_))
    ));
    assert!(matches!(
        Subgroup::closure(&s3, &[6]),
        Err(Error::Domain(_))
    ));
}

#[test]
fn core_and_normal_closure() {
    let s3 = symmetric(3, &lim()).unwrap();
    let h = Subgroup::closure_of(&s3, &[perm(3, "(1 2)")]).unwrap();
    // intersection of the three conjugates, by hand
    let conjugates: Vec<BTreeSet<Permutation>> = s3
        .elements()
        .iter()
        .map(|g| {
            members_of(&h)
                .iter()
                .map(|x| g.inverse().then(x).then(g))
                .collect()
        })
        .collect();
    let core = conjugates
        .iter()
        .skip(1)
        .fold(conjugates[0].clone(), |acc, c| {
            acc.intersection(c).cloned().collect()
        });
    assert_eq!(members_of(&h.normal_core()), core);
    assert!(h.normal_core().is_trivial());
    assert!(h.normal_closure().is_whole());

    let s4 = symmetric(4, &lim()).unwrap();
    let a4 = Subgroup::closure_of(&s4, &[perm(4, "(1 2 3)"), perm(4, "(2 3 4)")]).unwrap();
    assert_eq!(a4.order(), 12);
    assert_eq!(a4.normal_core(), a4);
    assert_eq!(a4.normal_closure(), a4);
}

#[test]
fn quotient_examples() {
    let l = lim();
    let c4 = cyclic(4, &l).unwrap();
    let c2 = Subgroup::closure(&c4, &[c4.pow(c4.generator_indices()[0], 2)]).unwrap();
    assert_eq!(quotient(&c2).unwrap().0.order(), 2);

    let s3 = symmetric(3, &l).unwrap();
    let a3 = Subgroup::closure_of(&s3, &[perm(3, "(1 2 3)")]).unwrap();
    let (q, proj) = quotient(&a3).unwrap();
    assert_eq!(q.order(), 2);
    // coset oracle: x and y map together iff x y^-1 lies in A3
    for x in 0..6 {
        for y in 0..6 {
            let same = a3.contains(s3.mul(x, s3.inv(y)));
            assert_eq!(proj.apply(x) == proj.apply(y), same);
        }
    }

    let q8 = quaternion8(&l).unwrap();
    let z = proflat_core::structure::center(&q8);
    let (v, _) = quotient(&z).unwrap();
    assert_eq!((v.order(), v.exponent()), (4, 2));

    let h = Subgroup::closure_of(&s3, &[perm(3, "(1 2)")]).unwrap();
    assert!(matches!(quotient(&h), Err(Error::Precondition(_))));
}

#[test]
fn every_quotient_has_complementary_order() {
    for g in small_corpus() {
        let view = enumerate_subgroups(&g, &lim()).unwrap();
        for k in view.normal_nodes() {
            let n = view.subgroup(k);
            let (q, proj) = quotient(n).unwrap();
            assert_eq!(g.order(), n.order() * q.order(), "{}", g.name());
            assert!(proj.is_surjective());
            assert_eq!(&proj.kernel(), n);
            for x in 0..g.order() {
                for y in 0..g.order() {
                    assert_eq!(proj.apply(g.mul(x, y)), q.mul(proj.apply(x), proj.apply(y)));
                }
            }
        }
    }
}

#[test]
fn sylow_frattini_and_friends() {
    let l = lim();
    assert_eq!(frattini(&cyclic(4, &l).unwrap(), &l).unwrap().order(), 2);
    assert!(frattini(&symmetric(3, &l).unwrap(), &l)
        .unwrap()
        .is_trivial());
    assert_eq!(frattini(&dihedral(16, &l).unwrap(), &l).unwrap().order(), 4);

    let s3c5 = direct_product(&symmetric(3, &l).unwrap(), &cyclic(5, &l).unwrap(), &l).unwrap();
    assert_eq!(pi(&s3c5), vec![2, 3, 5]);
    assert!(matches!(sylow(&s3c5, 7), Err(Error::Domain(_))));
    assert!(matches!(sylow(&s3c5, 4), Err(Error::Domain(_))));

    let a5 = alternating(5, &l).unwrap();
    assert!(is_perfect(&a5));
    assert_eq!(sylow(&a5, 2).unwrap().order(), 4);
    assert_eq!(commutator_subgroup(&symmetric(3, &l).unwrap()).order(), 3);
    assert!(!is_nilpotent(&a5));
    assert!(is_nilpotent(&quaternion8(&l).unwrap()));
}

#[test]
fn frattini_is_normal_and_under_every_maximal_subgroup() {
    for g in small_corpus() {
        let view = enumerate_subgroups(&g, &lim()).unwrap();
        let phi = frattini_of(&view);
        assert!(phi.is_normal(), "{}", g.name());
        for &m in view.lattice().coatoms() {
            assert!(phi.is_subgroup_of(view.subgroup(m)));
        }
        assert!(is_nilpotent(&phi.to_group("phi")));
    }
}

#[test]
fn sylow_subgroups_have_full_p_part() {
    for g in small_corpus() {
        for p in pi(&g) {
            let s = sylow(&g, p).unwrap();
            assert_eq!(proflat_core::arith::prime_power_base(s.order()), Some(p));
            assert_ne!((g.order() / s.order()) % p, 0, "{} p={p}", g.name());
        }
    }
}

#[test]
fn permutes_matches_product_set() {
    let l = lim();
    let s3 = symmetric(3, &l).unwrap();
    let a = Subgroup::closure_of(&s3, &[perm(3, "(1 2)")]).unwrap();
    let b = Subgroup::closure_of(&s3, &[perm(3, "(1 3)")]).unwrap();
    assert!(!a.permutes(&b).unwrap());

    let q8 = quaternion8(&l).unwrap();
    let view = enumerate_subgroups(&q8, &l).unwrap();
    for h in view.subgroups() {
        for k in view.subgroups() {
            assert!(h.permutes(k).unwrap());
        }
    }

    let c2 = cyclic(2, &l).unwrap();
    assert!(matches!(
        a.permutes(&Subgroup::whole(&c2)),
        Err(Error::Domain(_))
    ));

    for g in small_corpus() {
        let view = enumerate_subgroups(&g, &l).unwrap();
        for h in view.subgroups() {
            for k in view.subgroups() {
                let hk: BTreeSet<Permutation> = members_of(h)
                    .iter()
                    .flat_map(|x| members_of(k).into_iter().map(move |y| x.then(&y)))
                    .collect();
                let kh: BTreeSet<Permutation> = members_of(k)
                    .iter()
                    .flat_map(|x| members_of(h).into_iter().map(move |y| x.then(&y)))
                    .collect();
                let meet = members_of(h).intersection(&members_of(k)).count();
                let closed = hk
                    .iter()
                    .all(|x| hk.iter().all(|y| hk.contains(&x.then(y))));
                let expected = hk.len() == h.order() * k.order() / meet && closed;
                assert_eq!(h.permutes(k).unwrap(), expected);
                assert_eq!(expected, hk == kh);
                if h.is_normal() {
                    assert!(h.permutes(k).unwrap());
                }
            }
        }
    }
}

#[test]
fn constructor_cross_checks() {
    let l = lim();
    let s3_like = semidirect_cyclic(2, &[3], 2, &l).unwrap();
    assert_eq!(s3_like.order(), 6);
    assert!(!s3_like.is_abelian());
    let a = enumerate_subgroups(&s3_like, &l).unwrap();
    let b = enumerate_subgroups(&symmetric(3, &l).unwrap(), &l).unwrap();
    assert!(a.lattice().is_isomorphic(b.lattice(), 64).unwrap());

    let m16 = semidirect_cyclic(2, &[8], 5, &l).unwrap();
    assert_eq!(m16.order(), 16);
    assert!(!m16.is_abelian());
    assert_eq!(enumerate_subgroups(&m16, &l).unwrap().len(), 11);

    let c2c3 = direct_product(&cyclic(2, &l).unwrap(), &cyclic(3, &l).unwrap(), &l).unwrap();
    assert_eq!(c2c3.order(), 6);
    assert!((0..6).any(|x| c2c3.element_order(x) == 6));

    assert_eq!(
        enumerate_subgroups(&dihedral(8, &l).unwrap(), &l)
            .unwrap()
            .len(),
        10
    );
    assert_eq!(
        enumerate_subgroups(&quaternion8(&l).unwrap(), &l)
            .unwrap()
            .len(),
        6
    );

    assert!(matches!(
        semidirect_cyclic(2, &[3], 3, &l),
        Err(Error::Construction(_))
    ));
    assert!(matches!(
        semidirect_cyclic(2, &[7], 2, &l),
        Err(Error::Construction(_))
    ));
    assert!(matches!(symmetric(6, &l), Err(Error::Domain(_))));
}

#[test]
fn order_bound_is_configurable() {
    let tight = Limits {
        max_order: 23,
        ..Limits::default()
    };
    assert!(matches!(
        symmetric(4, &tight),
        Err(Error::Resource {
            bound: 23,
            actual: 24,
            ..
        })
    ));
    assert!(symmetric(
        4,
        &Limits {
            max_order: 24,
            ..tight
        }
    )
    .is_ok());
}

fn seed_strategy() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (0usize..6, prop::collection::vec(0usize..2000, 0..4))
}

proptest! {
    #[test]
    fn closure_obeys_lagrange((which, picks) in seed_strategy()) {
        let l = lim();
        let g = match which {
            0 => symmetric(4, &l).unwrap(),
            1 => alternating(5, &l).unwrap(),
            2 => dihedral(24, &l).unwrap(),
            3 => modular_p_group(2, 5, &l).unwrap(),
            4 => elementary_abelian(3, 3, &l).unwrap(),
            _ => nonabelian_pq(13, 3, &l).unwrap(),
        };
        let seed: Vec<usize> = picks.iter().map(|&i| i % g.order()).collect();
        let h = Subgroup::closure(&g, &seed).unwrap();
        prop_assert_eq!(g.order() % h.order(), 0);
        let perms: Vec<Permutation> = seed.iter().map(|&x| g.element(x).clone()).collect();
        prop_assert_eq!(members_of(&h), closure_oracle(g.degree(), &perms));
    }
}
