//! Per-character decisions of the induced-decomposition question, the
//! classical vanishing checks, and minimal-counterexample filters.

mod check;
mod filters;
mod invariants;
mod local;
mod verdict;

pub use check::{check_character, check_group, check_p_subgroup};
pub use filters::{mincounter_filter, quotient_metamorphic_check, FilterReport, QuotientPair, QuotientReport};
pub use invariants::{
    brauer_nesbitt_check, cyclic_sylow_check, wilde_vanishing_check, CyclicSylowResult, WildeViolation,
};
pub use local::LocalCheck;
pub use verdict::{CheckVerdict, ColumnSet, LinearWitness, Mode, VerdictStatus};
