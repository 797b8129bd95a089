#![allow(dead_code)]

use indres::permgrp::{PermGroup, Permutation};

pub fn grp(n: usize, gens: &[&str]) -> PermGroup {
    PermGroup::from_generators(
        n,
        gens.iter()
            .map(|s| Permutation::parse_cycles(n, s).unwrap())
            .collect(),
    )
    .unwrap()
}

pub fn symmetric(n: usize) -> PermGroup {
    if n < 2 {
        return PermGroup::trivial(n.max(1));
    }
    let cycle = format!("({})", (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(","));
    grp(n, &[&cycle, "(1,2)"])
}

pub fn alternating(n: usize) -> PermGroup {
    let gens: Vec<String> = (3..=n).map(|i| format!("(1,2,{i})")).collect();
    let refs: Vec<&str> = gens.iter().map(|s| s.as_str()).collect();
    grp(n, &refs)
}

pub fn cyclic(n: usize) -> PermGroup {
    let cycle = format!("({})", (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(","));
    grp(n, &[&cycle])
}

/// Dihedral group of order `2m` on the `m`-gon.
pub fn dihedral(m: usize) -> PermGroup {
    let rot: Vec<usize> = (0..m).map(|i| (i + 1) % m).collect();
    let refl: Vec<usize> = (0..m).map(|i| (m - i) % m).collect();
    PermGroup::from_generators(
        m,
        vec![
            Permutation::from_images(rot).unwrap(),
            Permutation::from_images(refl).unwrap(),
        ],
    )
    .unwrap()
}

/// Quaternion group in its regular representation.
pub fn quaternion8() -> PermGroup {
    grp(8, &["(1,2,4,7)(3,6,8,5)", "(1,3,4,8)(2,5,7,6)"])
}

/// Direct product acting on disjoint points.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let n = a.degree() + b.degree();
    let mut gens = Vec::new();
    for g in a.generators() {
        let mut im: Vec<usize> = (0..n).collect();
        for i in 0..a.degree() {
            im[i] = g.apply(i);
        }
        gens.push(Permutation::from_images(im).unwrap());
    }
    for g in b.generators() {
        let mut im: Vec<usize> = (0..n).collect();
        for i in 0..b.degree() {
            im[a.degree() + i] = a.degree() + g.apply(i);
        }
        gens.push(Permutation::from_images(im).unwrap());
    }
    PermGroup::from_generators(n, gens).unwrap()
}
