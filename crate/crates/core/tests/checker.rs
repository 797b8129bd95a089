mod common;

use common::*;
use indres::chartab::*;
use indres::checker::*;
use indres::decomp::{verify_witness, DecompositionInstance};
use indres::permgrp::PermGroup;
use indres::psub::{is_p_solvable, normal_subgroups, sylow_subgroup};
use indres::{Error, Limits};
use num_bigint::BigInt;
use num_traits::Zero;

fn table(g: &PermGroup) -> CharacterTable {
    character_table(g, &Limits::default()).unwrap()
}

fn primes(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| n.is_multiple_of(p) && (2..p).all(|d| p % d != 0)).collect()
}

/// C_7 ⋊ C_3 on the residues mod 7.
fn frobenius21() -> PermGroup {
    grp(7, &["(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)"])
}

/// Exhaustive search over the bound box.
fn box_feasible(inst: &DecompositionInstance) -> bool {
    fn go(inst: &DecompositionInstance, c: usize, rest: &mut Vec<u64>) -> bool {
        if rest.iter().all(|&x| x == 0) {
            return true;
        }
        if c == inst.columns.len() {
            return false;
        }
        let col = &inst.columns[c];
        let mut k = 0;
        loop {
            if go(inst, c + 1, rest) {
                return true;
            }
            if col.iter().all(|&a| a == 0) || col.iter().zip(rest.iter()).any(|(a, r)| a > r) {
                break;
            }
            for (r, a) in rest.iter_mut().zip(col) {
                *r -= a;
            }
            k += 1;
        }
        for (r, a) in rest.iter_mut().zip(col) {
            *r += k * a;
        }
        false
    }
    let mut t = inst.target.clone();
    go(inst, 0, &mut t)
}

#[test]
fn s4_prime_2() {
    let t = table(&symmetric(4));
    let vs = check_group(&t, 2, Mode::Both, &Limits::default()).unwrap();
    assert_eq!(vs.len(), 5);
    for v in &vs {
        assert!(v.meets_mode(), "{v:?}");
        assert!(v.linear_witness.is_some());
    }
    let deg2 = t.degrees().iter().position(|&d| d == 2).unwrap();
    let v = &vs[deg2];
    assert_eq!(v.status(), VerdictStatus::Strong);
    assert_eq!(v.target_index, 2);
    let cs = v.column_set.as_ref().unwrap();
    let w = v.strong.as_ref().unwrap().witness.as_ref().unwrap();
    let used: Vec<usize> = (0..w.len()).filter(|&c| !w[c].is_zero()).collect();
    assert_eq!(used.len(), 1);
    assert_eq!(w[used[0]], BigInt::from(1));
    // the column is induced from the trivial character of the double-transposition Klein group
    let klein = grp(4, &["(1,2)(3,4)", "(1,3)(2,4)"]);
    assert!(cs.provenance[used[0]]
        .iter()
        .any(|&(s, l)| l == 0 && cs.subgroups[s].subgroup.same_group(&klein)));
    let inst = v.instance.as_ref().unwrap();
    let mut indicator = vec![BigInt::zero(); inst.columns.len()];
    indicator[used[0]] = BigInt::from(1);
    assert!(verify_witness(inst, &indicator, true).unwrap());
}

#[test]
fn strong_verdicts_match_box_enumeration() {
    let lim = Limits::default();
    for g in [symmetric(4), alternating(5), dihedral(8), frobenius21(), symmetric(5)] {
        let t = table(&g);
        for p in primes(g.order()) {
            for v in check_group(&t, p, Mode::Both, &lim).unwrap() {
                let inst = v.instance.as_ref().unwrap();
                assert_eq!(v.strong.as_ref().unwrap().is_feasible(), box_feasible(inst));
            }
        }
    }
}

#[test]
fn a5_all_primes_strong() {
    let t = table(&alternating(5));
    for p in [2, 3, 5] {
        let vs = check_group(&t, p, Mode::Both, &Limits::default()).unwrap();
        assert_eq!(vs.len(), 5);
        assert!(vs.iter().all(|v| v.meets_mode()), "p = {p}");
    }
}

#[test]
fn defect_zero_uses_the_regular_column() {
    let lim = Limits::default();
    for (g, p) in [(alternating(5), 2), (alternating(5), 5), (symmetric(4), 3), (alternating(5), 3)] {
        let t = table(&g);
        let gp = p_part(g.order(), p);
        for (i, &d) in t.degrees().iter().enumerate() {
            if p_part(d, p) != gp {
                continue;
            }
            let v = check_character(&t, p, i, Mode::Strong, &lim).unwrap();
            assert_eq!(v.target_index, gp);
            assert_eq!(v.column_count, 1);
            assert_eq!(v.strong.unwrap().witness.unwrap(), vec![BigInt::from(d / gp)]);
        }
    }
}

#[test]
fn p_prime_degree_is_trivial() {
    let t = table(&alternating(5));
    let lim = Limits::default();
    let local = LocalCheck::sylow(&t, 2, &lim).unwrap();
    for (i, &d) in t.degrees().iter().enumerate() {
        if d % 2 == 1 {
            let v = local.check(i, Mode::Both).unwrap();
            assert_eq!(v.status(), VerdictStatus::Trivial);
            let mult: Vec<BigInt> = local.restriction(i).unwrap().into_iter().map(BigInt::from).collect();
            assert_eq!(v.strong.unwrap().witness.unwrap(), mult);
        }
    }
}

#[test]
fn coprime_prime_gives_no_verdicts() {
    let t = table(&symmetric(4));
    assert!(check_group(&t, 5, Mode::Both, &Limits::default()).unwrap().is_empty());
}

#[test]
fn weak_mode_only_runs_the_lattice_solver() {
    let t = table(&symmetric(4));
    for v in check_group(&t, 2, Mode::Weak, &Limits::default()).unwrap() {
        assert!(v.strong.is_none() && v.weak.is_some());
        assert!(v.meets_mode());
    }
}

#[test]
fn arbitrary_p_subgroups() {
    let lim = Limits::default();
    let s4 = symmetric(4);
    let t = table(&s4);
    let p = sylow_subgroup(&s4, 2, &lim).unwrap();
    for i in 0..t.degrees().len() {
        let a = check_character(&t, 2, i, Mode::Both, &lim).unwrap();
        let b = check_p_subgroup(&t, 2, &p, i, Mode::Both, &lim).unwrap();
        assert_eq!(a.status(), b.status());
        assert_eq!(a.instance, b.instance);
        assert_eq!(a.strong, b.strong);
    }
    let c4 = grp(4, &["(1,2,3,4)"]);
    let deg2 = t.degrees().iter().position(|&d| d == 2).unwrap();
    let v = check_p_subgroup(&t, 2, &c4, deg2, Mode::Both, &lim).unwrap();
    assert_eq!(v.target_index, 1);
    assert_eq!(v.status(), VerdictStatus::Trivial);
    // χ(1)_2 = 1 < |S_4 : C_2|_2 = 4
    let c2 = grp(4, &["(1,2)"]);
    assert!(matches!(
        check_p_subgroup(&t, 2, &c2, 0, Mode::Both, &lim),
        Err(Error::PreconditionViolated(_))
    ));
    // Klein four inside D_8 with the degree-2 character: |Q| = 4, Q = V
    let v4 = grp(4, &["(1,2)(3,4)", "(1,3)(2,4)"]);
    let v = check_p_subgroup(&t, 2, &v4, deg2, Mode::Both, &lim).unwrap();
    assert_eq!(v.status(), VerdictStatus::Trivial);
    // all degrees against C_2 = <(1,2)(3,4)> for the 3-dimensional characters
    let c2n = grp(4, &["(1,2)(3,4)"]);
    for (i, &d) in t.degrees().iter().enumerate() {
        if d == 3 {
            assert!(matches!(
                check_p_subgroup(&t, 2, &c2n, i, Mode::Both, &lim),
                Err(Error::PreconditionViolated(_))
            ));
        }
    }
}

#[test]
fn brauer_nesbitt() {
    let lim = Limits::default();
    let t = table(&alternating(5));
    let r = brauer_nesbitt_check(&t, 5);
    assert_eq!(r.len(), 1);
    assert_eq!(t.degrees()[r[0].0], 5);
    assert!(r[0].1);
    assert!(brauer_nesbitt_check(&t, 7).is_empty());
    for g in [symmetric(4), symmetric(5), frobenius21(), alternating(6)] {
        let t = character_table(&g, &lim).unwrap();
        for p in primes(g.order()) {
            assert!(brauer_nesbitt_check(&t, p).iter().all(|r| r.1));
        }
    }
}

#[test]
fn wilde_vanishing() {
    let lim = Limits::default();
    for g in [symmetric(3), symmetric(4), alternating(4), dihedral(8), quaternion8(), frobenius21()] {
        let t = table(&g);
        for p in primes(g.order()) {
            assert!(is_p_solvable(&g, p, &lim).unwrap());
            assert!(wilde_vanishing_check(&t, p).is_empty());
        }
    }
    // A_5, p = 2: the degree-4 character vanishes on involutions
    let t = table(&alternating(5));
    let inv = t.classes().element_orders.iter().position(|&o| o == 2).unwrap();
    let deg4 = t.degrees().iter().position(|&d| d == 4).unwrap();
    assert!(t.irreducibles()[deg4].value(inv).is_zero());
    assert!(wilde_vanishing_check(&t, 2).is_empty());
}

#[test]
fn cyclic_sylow() {
    let lim = Limits::default();
    let t = table(&frobenius21());
    for p in [3, 7] {
        let r = cyclic_sylow_check(&t, p, &lim).unwrap();
        assert_eq!(r.len(), 5);
        assert!(r.iter().all(|x| x.passed()));
    }
    let deg3: Vec<_> = cyclic_sylow_check(&t, 3, &lim)
        .unwrap()
        .into_iter()
        .filter(|x| t.degrees()[x.character] == 3)
        .collect();
    assert_eq!(deg3.len(), 2);
    assert!(deg3.iter().all(|x| x.subgroup_order == 1));
    let t = table(&alternating(4));
    let r = cyclic_sylow_check(&t, 3, &lim).unwrap();
    let deg3 = r.iter().find(|x| t.degrees()[x.character] == 3).unwrap();
    assert_eq!(deg3.subgroup_order, 1);
    assert!(r.iter().all(|x| x.passed()));
    let t = table(&alternating(5));
    for p in [3, 5] {
        assert!(cyclic_sylow_check(&t, p, &lim).unwrap().iter().all(|x| x.passed()));
    }
    let t = table(&symmetric(4));
    assert!(matches!(cyclic_sylow_check(&t, 2, &lim), Err(Error::PreconditionViolated(_))));
}

#[test]
fn minimal_counterexample_filters() {
    let lim = Limits::default();
    let t = table(&symmetric(4));
    let r = mincounter_filter(&t, 2, 4, &lim).unwrap();
    assert!(r.equals_o_upper_pprime);
    assert_eq!(r.directly_indecomposable, Some(true));
    assert_eq!(r.abelian_normals_cyclic_central, Some(false));
    assert!(!r.candidate());
    assert_eq!(r.central_index, 24);

    let t = table(&alternating(5));
    for chi in 0..5 {
        let r = mincounter_filter(&t, 2, chi, &lim).unwrap();
        assert!(r.equals_o_upper_pprime);
        assert_eq!(r.directly_indecomposable, Some(true));
        assert_eq!(r.abelian_normals_cyclic_central, Some(true));
        assert!(r.o_pprime_in_center_and_derived);
        assert_eq!(r.chi_faithful, chi != 0);
    }

    let v4 = grp(4, &["(1,2)(3,4)", "(1,3)(2,4)"]);
    let t = table(&v4);
    for chi in 0..4 {
        assert_eq!(mincounter_filter(&t, 2, chi, &lim).unwrap().directly_indecomposable, Some(false));
    }
    // S_3 at p = 3: O^{3'}(S_3) = A_3
    let t = table(&symmetric(3));
    assert!(!mincounter_filter(&t, 3, 0, &lim).unwrap().equals_o_upper_pprime);
    // too many classes for the normal subgroup scan
    let tight = Limits { normal_class_cap: 2, ..lim };
    let t = table(&symmetric(4));
    let r = mincounter_filter(&t, 2, 4, &tight).unwrap();
    assert_eq!(r.directly_indecomposable, None);
    assert_eq!(r.abelian_normals_cyclic_central, None);
}

#[test]
fn quotients_inherit_strong_verdicts() {
    let lim = Limits::default();
    let s4 = symmetric(4);
    let t = table(&s4);
    let normals = normal_subgroups(&s4, &lim).unwrap();
    for n in &normals {
        for p in [2, 3] {
            let r = quotient_metamorphic_check(&t, n, p, &lim).unwrap();
            assert_eq!(r.quotient_order, 24 / n.order());
            let over_n = t
                .irreducibles()
                .iter()
                .filter(|chi| {
                    t.classes()
                        .representatives
                        .iter()
                        .enumerate()
                        .all(|(c, rep)| !n.contains(rep) || chi.value(c) == chi.degree())
                })
                .count();
            assert_eq!(r.pairs.len(), over_n);
            assert!(r.holds());
        }
    }
    // N = 1 gives every character once
    let r = quotient_metamorphic_check(&t, &PermGroup::trivial(4), 2, &lim).unwrap();
    let inflations: Vec<usize> = r.pairs.iter().map(|p| p.inflation).collect();
    let mut sorted = inflations.clone();
    sorted.sort();
    assert_eq!(sorted, vec![0, 1, 2, 3, 4]);
    // N = G leaves the trivial group
    let r = quotient_metamorphic_check(&t, &s4, 2, &lim).unwrap();
    assert_eq!(r.quotient_order, 1);
    assert!(r.holds());
    assert!(quotient_metamorphic_check(&t, &grp(4, &["(1,2)"]), 2, &lim).is_err());
}

#[test]
fn solvable_groups_have_strong_and_linear_witnesses() {
    let lim = Limits::default();
    let groups = [
        symmetric(3),
        symmetric(4),
        alternating(4),
        dihedral(8),
        quaternion8(),
        frobenius21(),
        direct_product(&symmetric(3), &cyclic(4)),
        grp(5, &["(1,2,3,4,5)", "(2,3,5,4)"]),
    ];
    for g in groups {
        let t = table(&g);
        for p in primes(g.order()) {
            for v in check_group(&t, p, Mode::Both, &lim).unwrap() {
                assert!(v.meets_mode(), "order {} p {p}: {v:?}", g.order());
                let lw = v.linear_witness.as_ref().expect("linear witness");
                let cs = v.column_set.as_ref().unwrap();
                assert_eq!(cs.linear_origin(lw.column), Some((lw.subgroup, lw.character)));
                for s in &cs.subgroups {
                    assert_eq!(s.subgroup.order() * v.target_index, v.ambient_order);
                }
            }
        }
    }
}
