use std::sync::Arc;

use super::group::{ElementData, PermGroup};
use super::perm::Permutation;
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Action of `G` on the right cosets of a subgroup `H`.
///
/// Cosets are numbered by their canonically smallest element.
#[derive(Debug, Clone)]
pub struct CosetAction {
    pub image: PermGroup,
    pub kernel: PermGroup,
    /// Coset number of every element of `G`, parallel to the element list.
    coset_of: Vec<usize>,
    /// Canonically smallest element of each coset.
    coset_reps: Vec<Permutation>,
    elements: Arc<ElementData>,
}

impl CosetAction {
    /// Image of an element of `G` as a permutation of the cosets.
    pub fn image_of(&self, g: &Permutation) -> Result<Permutation> {
        let images = self
            .coset_reps
            .iter()
            .map(|x| {
                self.elements
                    .index_of(&x.mul(g))
                    .map(|i| self.coset_of[i])
                    .ok_or(Error::NotAMember)
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_images(images)
    }

    pub fn index(&self) -> usize {
        self.coset_reps.len()
    }
}

/// Permutation action of `g` on the cosets of `h`; the image is isomorphic to
/// `G / core_G(H)`.
pub fn coset_action(g: &PermGroup, h: &PermGroup, limits: &Limits) -> Result<CosetAction> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotASubgroup(
            "coset action needs H to be a subgroup of G".into(),
        ));
    }
    let index = g.order() / h.order();
    if index as usize > limits.degree_cap {
        return Err(Error::cap("coset action degree", index, limits.degree_cap as u64));
    }
    let elems = g.element_data(limits.element_cap)?;
    let h_elems = h.element_data(limits.element_cap)?;
    let mut coset_of = vec![usize::MAX; elems.len()];
    let mut coset_reps = Vec::with_capacity(index as usize);
    for (i, x) in elems.elements.iter().enumerate() {
        if coset_of[i] != usize::MAX {
            continue;
        }
        let c = coset_reps.len();
        for y in &h_elems.elements {
            coset_of[elems.index[&y.mul(x)]] = c;
        }
        coset_reps.push(x.clone());
    }
    let mut action = CosetAction {
        image: PermGroup::trivial(index as usize),
        kernel: PermGroup::trivial(g.degree()),
        coset_of,
        coset_reps,
        elements: elems,
    };
    let gens = g
        .generators()
        .iter()
        .map(|s| action.image_of(s))
        .collect::<Result<Vec<_>>>()?;
    let image = PermGroup::from_generators(index as usize, gens)?;
    // the kernel lies inside H, so it suffices to scan H
    let kernel_gens: Vec<Permutation> = h_elems
        .elements
        .iter()
        .filter(|y| !y.is_identity())
        .filter(|y| {
            action
                .coset_reps
                .iter()
                .all(|x| action.coset_of[action.elements.index[&x.mul(y)]] == action.coset_of[action.elements.index[x]])
        })
        .cloned()
        .collect();
    let kernel = PermGroup::from_generators(g.degree(), kernel_gens)?;
    if image.order_big() * kernel.order_big() != *g.order_big() {
        return Err(Error::Inconsistent("coset action orders disagree".into()));
    }
    action.image = image;
    action.kernel = kernel;
    Ok(action)
}
