use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::chain::StabChain;
use super::classes::ClassData;
use super::perm::Permutation;
use crate::error::{Error, Result};

/// Enumerated element set in canonical order with a reverse index.
#[derive(Debug)]
pub struct ElementData {
    pub elements: Vec<Permutation>,
    pub index: HashMap<Permutation, usize>,
}

impl ElementData {
    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// A permutation group with its stabilizer chain. Subgroups share the
/// parent's degree.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    order: BigUint,
    elements: OnceLock<Arc<ElementData>>,
    classes: OnceLock<Arc<ClassData>>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let out = PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            chain: self.chain.clone(),
            order: self.order.clone(),
            elements: OnceLock::new(),
            classes: OnceLock::new(),
        };
        if let Some(e) = self.elements.get() {
            let _ = out.elements.set(e.clone());
        }
        if let Some(c) = self.classes.get() {
            let _ = out.classes.set(c.clone());
        }
        out
    }
}

impl PermGroup {
    /// Builds a group from generators of a common degree.
    pub fn from_generators(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::MalformedPermutation(format!(
                    "generator {g} has degree {} but group degree is {degree}",
                    g.degree()
                )));
            }
        }
        let chain = StabChain::new(degree, &gens);
        let order = chain.order();
        let group = PermGroup {
            degree,
            generators: gens,
            chain,
            order,
            elements: OnceLock::new(),
            classes: OnceLock::new(),
        };
        debug_assert!(group.generators.iter().all(|g| group.chain.contains(g)));
        Ok(group)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_generators(degree, Vec::new()).expect("empty generating set")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn order_big(&self) -> &BigUint {
        &self.order
    }

    /// Group order; saturates at `u64::MAX` for groups beyond any cap.
    pub fn order(&self) -> u64 {
        self.order.to_u64().unwrap_or(u64::MAX)
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| g[i].mul(&g[j]) == g[j].mul(&g[i])))
    }

    /// Same element set.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order == other.order && self.is_subgroup_of(other)
    }

    /// Subgroup generated by `gens` (checked to lie in `self`).
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<PermGroup> {
        for g in &gens {
            if !self.contains(g) {
                return Err(Error::NotAMember);
            }
        }
        PermGroup::from_generators(self.degree, gens)
    }

    fn check_cap(&self, cap: u64) -> Result<()> {
        if self.order > BigUint::from(cap) {
            return Err(Error::cap("group order", self.order.to_u128().unwrap_or(u128::MAX), cap));
        }
        Ok(())
    }

    /// Enumerated elements in canonical order (element order, then images).
    pub fn element_data(&self, cap: u64) -> Result<Arc<ElementData>> {
        if let Some(e) = self.elements.get() {
            return Ok(e.clone());
        }
        self.check_cap(cap)?;
        let mut keyed: Vec<(u64, Permutation)> = self
            .chain
            .enumerate()
            .into_iter()
            .map(|g| (g.order(), g))
            .collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.images().cmp(b.1.images())));
        let elements: Vec<Permutation> = keyed.into_iter().map(|(_, g)| g).collect();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i))
            .collect();
        let data = Arc::new(ElementData { elements, index });
        Ok(self.elements.get_or_init(|| data).clone())
    }

    /// The element list, failing with `CapExceeded` if `|G| > cap`.
    pub fn elements(&self, cap: u64) -> Result<Vec<Permutation>> {
        Ok(self.element_data(cap)?.elements.clone())
    }

    /// Conjugacy classes, computed by explicit conjugation orbits.
    pub fn class_data(&self, cap: u64) -> Result<Arc<ClassData>> {
        if let Some(c) = self.classes.get() {
            return Ok(c.clone());
        }
        let elems = self.element_data(cap)?;
        let data = Arc::new(ClassData::compute(self, elems));
        Ok(self.classes.get_or_init(|| data).clone())
    }

    /// `|C_G(g)| = |G| / |g^G|`.
    pub fn centralizer_order(&self, g: &Permutation, cap: u64) -> Result<u64> {
        if !self.contains(g) {
            return Err(Error::NotAMember);
        }
        let cd = self.class_data(cap)?;
        let c = cd.class_of(g).ok_or(Error::NotAMember)?;
        Ok(self.order() / cd.sizes[c])
    }

    /// Smallest normal subgroup of `self` containing `gens`.
    pub fn normal_closure(&self, gens: &[Permutation]) -> Result<PermGroup> {
        for g in gens {
            if !self.contains(g) {
                return Err(Error::NotAMember);
            }
        }
        let mut current: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut group = PermGroup::from_generators(self.degree, current.clone())?;
        let mut queue: Vec<Permutation> = current.clone();
        while let Some(n) = queue.pop() {
            for s in &self.generators {
                let c = n.conjugate_by(s);
                if !group.contains(&c) {
                    current.push(c.clone());
                    queue.push(c);
                    group = PermGroup::from_generators(self.degree, current.clone())?;
                }
            }
        }
        Ok(group)
    }

    /// Elements commuting with every generator.
    pub fn center(&self, cap: u64) -> Result<PermGroup> {
        let cd = self.class_data(cap)?;
        let gens: Vec<Permutation> = (0..cd.len())
            .filter(|&c| cd.sizes[c] == 1)
            .map(|c| cd.representatives[c].clone())
            .filter(|g| !g.is_identity())
            .collect();
        PermGroup::from_generators(self.degree, gens)
    }

    /// Normal closure of commutators of generator pairs.
    pub fn derived_subgroup(&self) -> Result<PermGroup> {
        let g = &self.generators;
        let mut comms = Vec::new();
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                let c = g[i].commutator(&g[j]);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    /// Exponent: lcm of element orders.
    pub fn exponent(&self, cap: u64) -> Result<u64> {
        let cd = self.class_data(cap)?;
        Ok(cd
            .element_orders
            .iter()
            .fold(1u64, |a, &o| num_integer::lcm(a, o)))
    }

    /// Content hash of the canonical class structure; stable across runs.
    pub fn structure_tag(&self, cap: u64) -> Result<u64> {
        let cd = self.class_data(cap)?;
        let mut h = Fnv::default();
        self.degree.hash(&mut h);
        self.order().hash(&mut h);
        for (r, s) in cd.representatives.iter().zip(&cd.sizes) {
            r.images().hash(&mut h);
            s.hash(&mut h);
        }
        Ok(h.finish())
    }
}

/// FNV-1a, used for content tags that must not depend on the std hasher's seed.
#[derive(Clone, Copy)]
pub(crate) struct Fnv(u64);

impl Default for Fnv {
    fn default() -> Self {
        Fnv(0xcbf29ce484222325)
    }
}

impl Hasher for Fnv {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 ^= b as u64;
            self.0 = self.0.wrapping_mul(0x100000001b3);
        }
    }
}
