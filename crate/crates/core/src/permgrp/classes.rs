use std::sync::Arc;

use super::group::{ElementData, PermGroup};
use super::perm::Permutation;

/// Conjugacy classes of an enumerated group.
///
/// Classes are numbered by their representative, the canonically smallest
/// member, so class 0 is always the identity.
#[derive(Debug)]
pub struct ClassData {
    pub representatives: Vec<Permutation>,
    pub sizes: Vec<u64>,
    pub element_orders: Vec<u64>,
    /// Class index of every element, parallel to `elements.elements`.
    pub element_class: Vec<usize>,
    /// Class of the inverse of each representative.
    pub inverse_class: Vec<usize>,
    pub group_order: u64,
    pub elements: Arc<ElementData>,
}

impl ClassData {
    pub(crate) fn compute(group: &PermGroup, elements: Arc<ElementData>) -> Self {
        let n = elements.len();
        let mut element_class = vec![usize::MAX; n];
        let mut representatives = Vec::new();
        let mut sizes = Vec::new();
        let mut element_orders = Vec::new();
        let gens = group.generators();
        for start in 0..n {
            if element_class[start] != usize::MAX {
                continue;
            }
            let c = representatives.len();
            element_class[start] = c;
            let mut orbit = vec![start];
            let mut i = 0;
            while i < orbit.len() {
                let x = &elements.elements[orbit[i]];
                for s in gens {
                    let y = x.conjugate_by(s);
                    let yi = elements.index[&y];
                    if element_class[yi] == usize::MAX {
                        element_class[yi] = c;
                        orbit.push(yi);
                    }
                }
                i += 1;
            }
            let rep = elements.elements[start].clone();
            element_orders.push(rep.order());
            representatives.push(rep);
            sizes.push(orbit.len() as u64);
        }
        let inverse_class = representatives
            .iter()
            .map(|r| element_class[elements.index[&r.inverse()]])
            .collect();
        ClassData {
            representatives,
            sizes,
            element_orders,
            element_class,
            inverse_class,
            group_order: n as u64,
            elements,
        }
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn class_of(&self, g: &Permutation) -> Option<usize> {
        self.elements.index_of(g).map(|i| self.element_class[i])
    }

    pub fn centralizer_order(&self, class: usize) -> u64 {
        self.group_order / self.sizes[class]
    }

    /// Class of `rep^m` for every class.
    pub fn power_map(&self, m: i64) -> Vec<usize> {
        self.representatives
            .iter()
            .map(|r| self.class_of(&r.pow(m)).expect("power stays in group"))
            .collect()
    }

    /// Indices of elements in each class.
    pub fn class_members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.len()];
        for (i, &c) in self.element_class.iter().enumerate() {
            out[c].push(i);
        }
        out
    }

    /// Exponent of the group.
    pub fn exponent(&self) -> u64 {
        self.element_orders
            .iter()
            .fold(1, |a, &o| num_integer::lcm(a, o))
    }
}
