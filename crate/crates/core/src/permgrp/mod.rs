//! Permutation groups: stabilizer chains, element enumeration, conjugacy
//! classes, normal closures and coset actions.

mod action;
mod chain;
mod classes;
mod definition;
mod group;
mod perm;

pub use action::{coset_action, CosetAction};
pub use chain::StabChain;
pub use classes::ClassData;
pub use definition::GroupDefinition;
pub use group::{ElementData, PermGroup};
pub use perm::Permutation;

use crate::error::Result;
use crate::limits::Limits;

/// Builds a group from generators, rejecting degrees above the cap.
pub fn group_from_generators(
    degree: usize,
    gens: Vec<Permutation>,
    limits: &Limits,
) -> Result<PermGroup> {
    if degree > limits.degree_cap {
        return Err(crate::Error::cap(
            "permutation degree",
            degree as u64,
            limits.degree_cap as u64,
        ));
    }
    PermGroup::from_generators(degree, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_generators(
            n,
            gens.iter().map(|s| Permutation::parse_cycles(n, s).unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn orders_of_small_groups() {
        assert_eq!(grp(3, &["(1,2,3)", "(1,2)"]).order(), 6);
        assert_eq!(grp(4, &["(1,2,3,4)", "(1,3)"]).order(), 8);
        assert_eq!(grp(5, &[]).order(), 1);
    }

    #[test]
    fn degree_cap_enforced() {
        let limits = Limits { degree_cap: 4, ..Limits::default() };
        let r = group_from_generators(5, vec![], &limits);
        assert!(matches!(r, Err(crate::Error::CapExceeded { .. })));
    }

    #[test]
    fn element_enumeration_and_cap() {
        let s3 = grp(3, &["(1,2,3)", "(1,2)"]);
        assert_eq!(s3.elements(100_000).unwrap().len(), 6);
        let a5 = grp(5, &["(1,2,3,4,5)", "(1,2,3)"]);
        match a5.elements(10) {
            Err(crate::Error::CapExceeded { value, cap, .. }) => {
                assert_eq!((value, cap), (60, 10));
            }
            other => panic!("unexpected {other:?}"),
        }
        let d8 = grp(4, &["(1,2,3,4)", "(1,3)"]);
        let el = d8.elements(100_000).unwrap();
        assert_eq!(el.len(), 8);
        assert_eq!(el.iter().filter(|g| g.order() == 4).count(), 2);
        // canonical order: identity first, orders nondecreasing
        assert!(el[0].is_identity());
        assert!(el.windows(2).all(|w| w[0].canonical_cmp(&w[1]).is_lt()));
    }

    #[test]
    fn classes_of_s3_q8_trivial() {
        let s3 = grp(3, &["(1,2,3)", "(1,2)"]);
        let cd = s3.class_data(1000).unwrap();
        assert_eq!(cd.sizes, vec![1, 3, 2]);
        let q8 = grp(
            8,
            &["(1,2,4,7)(3,6,8,5)", "(1,3,4,8)(2,5,7,6)"],
        );
        assert_eq!(q8.order(), 8);
        let mut sizes = q8.class_data(1000).unwrap().sizes.clone();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        let t = grp(4, &[]);
        assert_eq!(t.class_data(10).unwrap().sizes, vec![1]);
    }

    #[test]
    fn centralizers() {
        let s3 = grp(3, &["(1,2,3)", "(1,2)"]);
        let c = Permutation::parse_cycles(3, "(1,2,3)").unwrap();
        assert_eq!(s3.centralizer_order(&c, 100).unwrap(), 3);
        assert_eq!(s3.centralizer_order(&s3.identity(), 100).unwrap(), 6);
        let d8 = grp(4, &["(1,2,3,4)", "(1,3)"]);
        let r2 = Permutation::parse_cycles(4, "(1,3)(2,4)").unwrap();
        assert_eq!(d8.centralizer_order(&r2, 100).unwrap(), 8);
        let out = Permutation::parse_cycles(3, "(1,2)").unwrap();
        let c3 = grp(3, &["(1,2,3)"]);
        assert_eq!(c3.centralizer_order(&out, 100), Err(crate::Error::NotAMember));
    }

    #[test]
    fn coset_actions() {
        let lim = Limits::default();
        let s4 = grp(4, &["(1,2,3,4)", "(1,2)"]);
        let s3 = grp(4, &["(1,2,3)", "(1,2)"]);
        let a = coset_action(&s4, &s3, &lim).unwrap();
        assert_eq!(a.image.degree(), 4);
        assert_eq!(a.image.order(), 24);
        assert!(a.kernel.is_trivial());
        let d8 = grp(4, &["(1,2,3,4)", "(1,3)"]);
        let b = coset_action(&s4, &d8, &lim).unwrap();
        assert_eq!(b.image.degree(), 3);
        assert_eq!(b.image.order(), 6);
        assert_eq!(b.kernel.order(), 4);
        for s in ["(1,2)(3,4)", "(1,3)(2,4)", "(1,4)(2,3)"] {
            assert!(b.kernel.contains(&Permutation::parse_cycles(4, s).unwrap()));
        }
        let c = coset_action(&s4, &s4, &lim).unwrap();
        assert_eq!(c.image.order(), 1);
        assert_eq!(c.kernel.order(), 24);
        let c3 = grp(4, &["(1,2,3)"]);
        let not_sub = grp(4, &["(1,2,3,4)"]);
        assert!(matches!(coset_action(&c3, &not_sub, &lim), Err(crate::Error::NotASubgroup(_))));
    }

    #[test]
    fn normal_closures() {
        let s4 = grp(4, &["(1,2,3,4)", "(1,2)"]);
        let n = s4
            .normal_closure(&[Permutation::parse_cycles(4, "(1,2,3)").unwrap()])
            .unwrap();
        assert_eq!(n.order(), 12);
        assert_eq!(s4.normal_closure(&[]).unwrap().order(), 1);
        let c6 = grp(6, &["(1,2,3,4,5,6)"]);
        let x = Permutation::parse_cycles(6, "(1,3,5)(2,4,6)").unwrap();
        assert_eq!(c6.normal_closure(&[x]).unwrap().order(), 3);
        let bad = Permutation::parse_cycles(4, "(1,2)").unwrap();
        let a4 = grp(4, &["(1,2,3)", "(2,3,4)"]);
        assert_eq!(a4.normal_closure(&[bad]).unwrap_err(), crate::Error::NotAMember);
    }

    #[test]
    fn power_maps_match_elements() {
        let s4 = grp(4, &["(1,2,3,4)", "(1,2)"]);
        let cd = s4.class_data(1000).unwrap();
        for m in [1i64, 2, 3, 5] {
            let pm = cd.power_map(m);
            for (i, g) in cd.elements.elements.iter().enumerate() {
                assert_eq!(cd.class_of(&g.pow(m)).unwrap(), pm[cd.element_class[i]]);
            }
        }
        assert_eq!(cd.power_map(1), (0..cd.len()).collect::<Vec<_>>());
    }
}
