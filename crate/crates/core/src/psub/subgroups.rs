use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::permgrp::{PermGroup, Permutation};

/// A subgroup of a p-group, up to conjugacy in the parent.
#[derive(Debug, Clone)]
pub struct SubgroupRecord {
    pub subgroup: PermGroup,
    pub index_in_parent: u64,
    /// Number of conjugates in the parent.
    pub conjugacy_class_size: u64,
}

/// The prime of a nontrivial p-group.
pub fn p_group_prime(g: &PermGroup) -> Option<u64> {
    let n = g.order();
    if n == 1 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d)).unwrap();
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    (m == 1).then_some(p)
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// Sylow p-subgroup, grown inside successive normalizers.
pub fn sylow_subgroup(g: &PermGroup, p: u64, limits: &Limits) -> Result<PermGroup> {
    let target = crate::chartab::p_part(g.order(), p);
    if target == 1 {
        return Ok(PermGroup::trivial(g.degree()));
    }
    let elems = g.element_data(limits.element_cap)?;
    let p_part_of = |x: &Permutation| {
        let o = x.order();
        let po = crate::chartab::p_part(o, p);
        x.pow((o / po) as i64)
    };
    let start = elems
        .elements
        .iter()
        .find(|x| x.order() % p == 0)
        .map(p_part_of)
        .expect("Cauchy: an element of order divisible by p exists");
    let mut sylow = g.subgroup(vec![start])?;
    while sylow.order() < target {
        let gens = sylow.generators().to_vec();
        let y = elems
            .elements
            .iter()
            .filter(|x| gens.iter().all(|s| sylow.contains(&s.conjugate_by(x))))
            .map(p_part_of)
            .find(|y| !sylow.contains(y))
            .ok_or_else(|| Error::Inconsistent("normalizer has no new p-element".into()))?;
        let mut gens = gens;
        gens.push(y);
        sylow = g.subgroup(gens)?;
    }
    if sylow.order() != target {
        return Err(Error::Inconsistent("Sylow subgroup has the wrong order".into()));
    }
    Ok(sylow)
}

/// Frattini subgroup of a p-group: normal closure of generator commutators and p-th powers.
pub fn frattini_subgroup(h: &PermGroup, p: u64) -> Result<PermGroup> {
    let g = h.generators();
    let mut seeds = Vec::new();
    for (i, a) in g.iter().enumerate() {
        seeds.push(a.pow(p as i64));
        for b in &g[i + 1..] {
            seeds.push(a.commutator(b));
        }
    }
    seeds.retain(|x| !x.is_identity());
    h.normal_closure(&seeds)
}

/// Maximal subgroups of a p-group, as preimages of the hyperplanes of `H/Φ(H)`.
pub fn maximal_subgroups(h: &PermGroup, p: u64) -> Result<Vec<PermGroup>> {
    if h.order() == 1 {
        return Ok(Vec::new());
    }
    let phi = frattini_subgroup(h, p)?;
    // basis of H/Φ(H) chosen greedily from the generators
    let mut basis: Vec<Permutation> = Vec::new();
    let mut span = phi.clone();
    for g in h.generators() {
        if !span.contains(g) {
            basis.push(g.clone());
            let mut gens = phi.generators().to_vec();
            gens.extend(basis.iter().cloned());
            span = h.subgroup(gens)?;
        }
    }
    let r = basis.len();
    if span.order() != h.order() || phi.order() * p.pow(r as u32) != h.order() {
        return Err(Error::Inconsistent("Frattini quotient has unexpected rank".into()));
    }
    let mut out = Vec::new();
    // functionals with leading nonzero coordinate equal to 1
    for lead in 0..r {
        let tails = (p as usize).pow((r - lead - 1) as u32);
        for t in 0..tails {
            let mut f = vec![0u64; r];
            f[lead] = 1;
            let mut rest = t;
            for c in f.iter_mut().skip(lead + 1) {
                *c = (rest % p as usize) as u64;
                rest /= p as usize;
            }
            // kernel spanned by b_i (i < lead) and b_j - f_j b_lead (j > lead)
            let mut gens = phi.generators().to_vec();
            for (i, b) in basis.iter().enumerate() {
                if i < lead {
                    gens.push(b.clone());
                } else if i > lead {
                    let k = (p - f[i]) % p;
                    gens.push(b.mul(&basis[lead].pow(k as i64)));
                }
            }
            gens.retain(|x| !x.is_identity());
            let m = h.subgroup(gens)?;
            if m.order() * p != h.order() {
                return Err(Error::Inconsistent("hyperplane preimage has wrong index".into()));
            }
            out.push(m);
        }
    }
    Ok(out)
}

/// Conjugation action of a group on its subgroups, via element bitsets.
struct ConjugationAction {
    parent: PermGroup,
    index: std::collections::HashMap<Permutation, usize>,
    /// `conj[s][i]`: index of `elements[i]` conjugated by generator `s`.
    conj: Vec<Vec<usize>>,
    words: usize,
}

impl ConjugationAction {
    fn new(parent: &PermGroup, limits: &Limits) -> Result<Self> {
        let ed = parent.element_data(limits.element_cap)?;
        let conj = parent
            .generators()
            .iter()
            .map(|s| ed.elements.iter().map(|x| ed.index[&x.conjugate_by(s)]).collect())
            .collect();
        Ok(ConjugationAction {
            parent: parent.clone(),
            index: ed.index.clone(),
            conj,
            words: ed.len().div_ceil(64),
        })
    }

    fn bitset(&self, h: &PermGroup, limits: &Limits) -> Result<Vec<u64>> {
        let mut bits = vec![0u64; self.words];
        for x in h.elements(limits.element_cap)? {
            let i = self.index[&x];
            bits[i / 64] |= 1 << (i % 64);
        }
        Ok(bits)
    }

    fn apply(&self, s: usize, bits: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.words];
        for (w, &word) in bits.iter().enumerate() {
            let mut word = word;
            while word != 0 {
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                let j = self.conj[s][w * 64 + b];
                out[j / 64] |= 1 << (j % 64);
            }
        }
        out
    }

    /// Conjugacy orbit of a subgroup as element bitsets.
    fn orbit(&self, bits: Vec<u64>) -> HashSet<Vec<u64>> {
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut queue = vec![bits.clone()];
        seen.insert(bits);
        while let Some(b) = queue.pop() {
            for s in 0..self.conj.len() {
                let c = self.apply(s, &b);
                if seen.insert(c.clone()) {
                    queue.push(c);
                }
            }
        }
        seen
    }
}

/// Subgroups of a p-group of the given index, one per conjugacy class,
/// obtained by descending through maximal subgroups layer by layer.
pub fn subgroups_of_index(p_group: &PermGroup, index: u64, limits: &Limits) -> Result<Vec<SubgroupRecord>> {
    let n = p_group.order();
    let p = match p_group_prime(p_group) {
        Some(p) => p,
        None if n == 1 => {
            if index != 1 {
                return Err(Error::PreconditionViolated(format!("index {index} does not divide 1")));
            }
            return Ok(vec![SubgroupRecord {
                subgroup: p_group.clone(),
                index_in_parent: 1,
                conjugacy_class_size: 1,
            }]);
        }
        None => {
            let p = (2..=n).find(|d| n.is_multiple_of(*d)).unwrap();
            return Err(Error::NotAPGroup(p));
        }
    };
    if !is_power_of(index, p) || !n.is_multiple_of(index) {
        return Err(Error::PreconditionViolated(format!(
            "index {index} is not a power of {p} dividing {n}"
        )));
    }
    let action = ConjugationAction::new(p_group, limits)?;
    let mut layer: Vec<(PermGroup, u64)> = vec![(p_group.clone(), 1)];
    let mut current = 1;
    while current < index {
        // keyed by the smallest bitset in the conjugacy orbit
        let mut next: BTreeMap<Vec<u64>, (PermGroup, u64)> = BTreeMap::new();
        let mut covered: HashSet<Vec<u64>> = HashSet::new();
        for (h, _) in &layer {
            for m in maximal_subgroups(h, p)? {
                let bits = action.bitset(&m, limits)?;
                if covered.contains(&bits) {
                    continue;
                }
                let orbit = action.orbit(bits);
                let key = orbit.iter().min().cloned().unwrap();
                let size = orbit.len() as u64;
                covered.extend(orbit);
                next.insert(key, (m, size));
            }
        }
        layer = next.into_values().collect();
        current *= p;
    }
    debug_assert!(layer.iter().all(|(h, _)| h.is_subgroup_of(&action.parent)));
    Ok(layer
        .into_iter()
        .map(|(subgroup, size)| SubgroupRecord {
            subgroup,
            index_in_parent: index,
            conjugacy_class_size: size,
        })
        .collect())
}
