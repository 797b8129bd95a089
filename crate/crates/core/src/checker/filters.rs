use super::check::check_group;
use super::verdict::{CheckVerdict, Mode};
use crate::chartab::{character_table, CharacterTable, Cyclotomic};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::permgrp::{coset_action, PermGroup};
use crate::psub::{class_mask, normal_subgroups, o_lower, o_upper_pprime, PKind};

/// Conditions every minimal counterexample satisfies. `None` marks a
/// condition that was not evaluated because a cap was hit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterReport {
    /// (a) `G = O^{p'}(G)`.
    pub equals_o_upper_pprime: bool,
    /// (b) `G` is not the direct product of two proper normal subgroups.
    pub directly_indecomposable: Option<bool>,
    /// (d) `χ` has trivial kernel.
    pub chi_faithful: bool,
    /// (e) every abelian normal subgroup is cyclic and central.
    pub abelian_normals_cyclic_central: Option<bool>,
    /// (f) `O_{p'}(G) ≤ Z(G) ∩ G'`.
    pub o_pprime_in_center_and_derived: bool,
    pub central_index: u64,
    pub order: u64,
}

impl FilterReport {
    /// True iff no evaluated condition rules `G` out as a minimal counterexample.
    pub fn candidate(&self) -> bool {
        self.equals_o_upper_pprime
            && self.directly_indecomposable != Some(false)
            && self.chi_faithful
            && self.abelian_normals_cyclic_central != Some(false)
            && self.o_pprime_in_center_and_derived
    }
}

fn is_cyclic(h: &PermGroup, limits: &Limits) -> Result<bool> {
    Ok(h.is_abelian() && h.exponent(limits.element_cap)? == h.order())
}

/// Evaluates the minimal-counterexample conditions (a), (b), (d), (e), (f)
/// for `(G, p, χ)` from scratch. Primitivity of `χ` is not evaluated.
pub fn mincounter_filter(table: &CharacterTable, p: u64, chi: usize, limits: &Limits) -> Result<FilterReport> {
    let g = table.group();
    let n = g.order();
    let center = g.center(limits.element_cap)?;
    let derived = g.derived_subgroup()?;

    let equals_o_upper_pprime = o_upper_pprime(g, p, limits)?.order() == n;

    let values = table.irreducibles()[chi].values();
    let chi_faithful = (1..values.len()).all(|c| values[c] != values[0]);

    let opp = o_lower(g, p, PKind::PPrime, limits)?;
    let o_pprime_in_center_and_derived = opp.is_subgroup_of(&center) && opp.is_subgroup_of(&derived);

    let (directly_indecomposable, abelian_normals_cyclic_central) = match normal_subgroups(g, limits) {
        Ok(normals) => {
            let masks = normals
                .iter()
                .map(|m| class_mask(g, m, limits))
                .collect::<Result<Vec<_>>>()?;
            let proper: Vec<usize> = (0..normals.len())
                .filter(|&i| normals[i].order() > 1 && normals[i].order() < n)
                .collect();
            let mut decomposable = false;
            for (x, &i) in proper.iter().enumerate() {
                for &j in &proper[x..] {
                    let meet_trivial = (1..masks[i].len()).all(|c| !(masks[i][c] && masks[j][c]));
                    if meet_trivial && normals[i].order() * normals[j].order() == n {
                        decomposable = true;
                    }
                }
            }
            let mut cyclic_central = true;
            for m in normals.iter().filter(|m| m.is_abelian()) {
                if !is_cyclic(m, limits)? || !m.is_subgroup_of(&center) {
                    cyclic_central = false;
                }
            }
            (Some(!decomposable), Some(cyclic_central))
        }
        Err(Error::ClassCountExceeded { .. }) => (None, None),
        Err(e) => return Err(e),
    };

    Ok(FilterReport {
        equals_o_upper_pprime,
        directly_indecomposable,
        chi_faithful,
        abelian_normals_cyclic_central,
        o_pprime_in_center_and_derived,
        central_index: n / center.order(),
        order: n,
    })
}

/// Verdict pair for one character of `G/N` and its inflation to `G`.
#[derive(Debug, Clone)]
pub struct QuotientPair {
    pub quotient_character: usize,
    pub inflation: usize,
    pub group_verdict: Option<CheckVerdict>,
    pub quotient_verdict: Option<CheckVerdict>,
}

impl QuotientPair {
    /// Strong form for the inflation implies strong form for the quotient
    /// character.
    pub fn transfers(&self) -> bool {
        let strong = |v: &Option<CheckVerdict>| v.as_ref().is_none_or(|v| v.strong.as_ref().is_some_and(|s| s.is_feasible()));
        !strong(&self.group_verdict) || strong(&self.quotient_verdict)
    }
}

#[derive(Debug, Clone)]
pub struct QuotientReport {
    pub quotient_order: u64,
    pub pairs: Vec<QuotientPair>,
}

impl QuotientReport {
    pub fn holds(&self) -> bool {
        self.pairs.iter().all(|p| p.transfers())
    }
}

/// Checks `G` and `G/N` (as the coset action on `N`) and pairs every character
/// of the quotient with its inflation. `None` verdicts stand for `p ∤ |G/N|`,
/// where the quotient question is vacuous.
pub fn quotient_metamorphic_check(
    table: &CharacterTable,
    n: &PermGroup,
    p: u64,
    limits: &Limits,
) -> Result<QuotientReport> {
    let g = table.group();
    if !n.is_subgroup_of(g) || g.normal_closure(n.generators())?.order() != n.order() {
        return Err(Error::NotASubgroup("N must be a normal subgroup of G".into()));
    }
    let action = coset_action(g, n, limits)?;
    let qt = character_table(&action.image, limits)?;
    // class of G -> class of G/N
    let map = table
        .classes()
        .representatives
        .iter()
        .map(|r| qt.class_of(&action.image_of(r)?).ok_or(Error::NotAMember))
        .collect::<Result<Vec<_>>>()?;
    let group_verdicts = check_group(table, p, Mode::Both, limits)?;
    let quotient_verdicts = check_group(&qt, p, Mode::Both, limits)?;
    let mut pairs = Vec::new();
    for (i, psi) in qt.irreducibles().iter().enumerate() {
        let values: Vec<Cyclotomic> = map.iter().map(|&c| psi.value(c).clone()).collect();
        let inflated = table.class_function(values)?;
        let inflation = table
            .position(&inflated)
            .ok_or_else(|| Error::Inconsistent("inflated character is not irreducible".into()))?;
        pairs.push(QuotientPair {
            quotient_character: i,
            inflation,
            group_verdict: group_verdicts.get(inflation).cloned(),
            quotient_verdict: quotient_verdicts.get(i).cloned(),
        });
    }
    Ok(QuotientReport {
        quotient_order: qt.order(),
        pairs,
    })
}
