use super::local::LocalCheck;
use super::verdict::{CheckVerdict, Mode};
use crate::chartab::CharacterTable;
use crate::error::Result;
use crate::limits::Limits;
use crate::permgrp::PermGroup;

/// Verdict for one character against a Sylow p-subgroup.
pub fn check_character(table: &CharacterTable, p: u64, chi: usize, mode: Mode, limits: &Limits) -> Result<CheckVerdict> {
    LocalCheck::sylow(table, p, limits)?.check(chi, mode)
}

/// Verdicts for every irreducible in table order; empty when `p` does not
/// divide `|G|`.
pub fn check_group(table: &CharacterTable, p: u64, mode: Mode, limits: &Limits) -> Result<Vec<CheckVerdict>> {
    if !table.order().is_multiple_of(p) {
        return Ok(Vec::new());
    }
    let local = LocalCheck::sylow(table, p, limits)?;
    (0..table.irreducibles().len()).map(|chi| local.check(chi, mode)).collect()
}

/// Verdict against an arbitrary p-subgroup `h`, with admissible subgroups
/// `Q ≤ h` of order `|G|_p / χ(1)_p`.
pub fn check_p_subgroup(
    table: &CharacterTable,
    p: u64,
    h: &PermGroup,
    chi: usize,
    mode: Mode,
    limits: &Limits,
) -> Result<CheckVerdict> {
    let local = LocalCheck::for_subgroup(table, p, h, limits)?;
    local.target_index(chi)?;
    local.check(chi, mode)
}
