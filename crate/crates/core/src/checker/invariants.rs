use num_bigint::BigInt;
use num_rational::BigRational;

use crate::chartab::{character_table, class_fusion, induce, p_part, restrict, CharacterTable};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::psub::sylow_subgroup;

fn is_p_power(mut n: u64, p: u64) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// For each character of p-defect zero, whether it vanishes on every class
/// of order divisible by `p`. Empty when `p ∤ |G|`.
pub fn brauer_nesbitt_check(table: &CharacterTable, p: u64) -> Vec<(usize, bool)> {
    let gp = p_part(table.order(), p);
    if gp == 1 {
        return Vec::new();
    }
    let orders = &table.classes().element_orders;
    table
        .irreducibles()
        .iter()
        .enumerate()
        .filter(|(i, _)| p_part(table.degrees()[*i], p) == gp)
        .map(|(i, chi)| {
            let ok = (0..orders.len()).filter(|&c| orders[c].is_multiple_of(p)).all(|c| chi.value(c).is_zero());
            (i, ok)
        })
        .collect()
}

/// A p-element class and a character with `χ(1)_p > |G:⟨g⟩|_p` but `χ(g) ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WildeViolation {
    pub class: usize,
    pub character: usize,
}

/// Checks `χ(g) = 0` for every nontrivial p-element `g` (one per class) and
/// every `χ` with `χ(1)_p > |G:⟨g⟩|_p`.
pub fn wilde_vanishing_check(table: &CharacterTable, p: u64) -> Vec<WildeViolation> {
    let gp = p_part(table.order(), p);
    let orders = &table.classes().element_orders;
    let mut out = Vec::new();
    for (c, &o) in orders.iter().enumerate() {
        if o == 1 || !is_p_power(o, p) {
            continue;
        }
        let bound = gp / o;
        for (i, chi) in table.irreducibles().iter().enumerate() {
            if p_part(table.degrees()[i], p) > bound && !chi.value(c).is_zero() {
                out.push(WildeViolation { class: c, character: i });
            }
        }
    }
    out
}

/// Cyclic Sylow check for one character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicSylowResult {
    pub character: usize,
    /// Order of the subgroup `Q` of index `χ(1)_p` in `P`.
    pub subgroup_order: u64,
    /// `χ` vanishes on `P ∖ Q`.
    pub vanishes_outside: bool,
    /// `χ_P = (1/|P:Q|)(χ_Q)^P`.
    pub induction_identity: bool,
}

impl CyclicSylowResult {
    pub fn passed(&self) -> bool {
        self.vanishes_outside && self.induction_identity
    }
}

/// For cyclic Sylow `P` and every `χ`, with `Q` the subgroup of index
/// `χ(1)_p`: checks that `χ` vanishes on `P ∖ Q` and `χ_P = (1/|P:Q|)(χ_Q)^P`.
pub fn cyclic_sylow_check(table: &CharacterTable, p: u64, limits: &Limits) -> Result<Vec<CyclicSylowResult>> {
    let sylow = sylow_subgroup(table.group(), p, limits)?;
    let n = sylow.order();
    let elems = sylow.elements(limits.element_cap)?;
    let Some(x) = elems.iter().find(|e| e.order() == n).cloned() else {
        return Err(Error::PreconditionViolated("Sylow subgroup is not cyclic".into()));
    };
    let pt = character_table(&sylow, limits)?;
    let to_g = class_fusion(&pt, table)?;
    let mut out = Vec::new();
    for (i, chi) in table.irreducibles().iter().enumerate() {
        let d = p_part(table.degrees()[i], p).min(n);
        let q_order = n / d;
        let q = sylow.subgroup(vec![x.pow(d as i64)])?;
        let vanishes_outside = elems.iter().filter(|e| !q.contains(e)).all(|e| {
            let c = table.class_of(e).expect("Sylow elements lie in G");
            chi.value(c).is_zero()
        });
        let chi_p = restrict(chi, table, &pt, &to_g)?;
        let qt = character_table(&q, limits)?;
        let q_to_p = class_fusion(&qt, &pt)?;
        let chi_q = restrict(&chi_p, &pt, &qt, &q_to_p)?;
        let induced = induce(&chi_q, &qt, &pt, &q_to_p)?;
        let scaled = induced.scale(&BigRational::new(BigInt::from(1), BigInt::from(d)));
        out.push(CyclicSylowResult {
            character: i,
            subgroup_order: q_order,
            vanishes_outside,
            induction_identity: scaled == chi_p,
        });
    }
    Ok(out)
}
