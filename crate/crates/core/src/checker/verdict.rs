use std::sync::Arc;
use std::time::Duration;

use num_bigint::BigInt;

use crate::decomp::{DecompositionInstance, SolveVerdict};
use crate::psub::SubgroupRecord;

/// Which forms of the decomposition question to decide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Integral combinations only.
    Weak,
    /// Nonnegative integral combinations only.
    Strong,
    Both,
}

impl Mode {
    pub fn weak(self) -> bool {
        matches!(self, Mode::Weak | Mode::Both)
    }

    pub fn strong(self) -> bool {
        matches!(self, Mode::Strong | Mode::Both)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Weak => "weak",
            Mode::Strong => "strong",
            Mode::Both => "both",
        }
    }
}

/// Summary outcome of one verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VerdictStatus {
    /// Admissible index 1: the restriction is its own decomposition.
    Trivial,
    /// Nonnegative decomposition found.
    Strong,
    /// Integral decomposition found; the strong form was not requested.
    Weak,
    /// Integral but no nonnegative decomposition.
    WeakOnly,
    /// No decomposition of a requested form.
    Fails,
    /// A resource cap stopped the computation.
    Capped,
}

impl VerdictStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictStatus::Trivial => "trivial",
            VerdictStatus::Strong => "strong",
            VerdictStatus::Weak => "weak",
            VerdictStatus::WeakOnly => "weak-only",
            VerdictStatus::Fails => "fails",
            VerdictStatus::Capped => "capped",
        }
    }
}

/// Admissible subgroups of one index and the deduplicated induced columns.
#[derive(Debug, Clone)]
pub struct ColumnSet {
    /// Index `|H:Q|` of every subgroup in the set.
    pub index: u64,
    /// One subgroup per conjugacy class in the ambient p-group.
    pub subgroups: Vec<SubgroupRecord>,
    /// Multiplicities of the ambient irreducibles in each induced column.
    pub columns: Vec<Vec<u64>>,
    /// `(subgroup, character)` origins of each column.
    pub provenance: Vec<Vec<(usize, usize)>>,
    /// Degrees of the characters `λ` behind each column, parallel to `provenance`.
    pub lambda_degrees: Vec<Vec<u64>>,
}

impl ColumnSet {
    /// First origin of column `c` induced from a linear character.
    pub fn linear_origin(&self, c: usize) -> Option<(usize, usize)> {
        self.provenance[c]
            .iter()
            .zip(&self.lambda_degrees[c])
            .find(|(_, &d)| d == 1)
            .map(|(&o, _)| o)
    }
}

/// A column `λ^H` with `λ` linear that occurs with positive coefficient in a
/// nonnegative decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearWitness {
    pub column: usize,
    /// Subgroup class index within the column set.
    pub subgroup: usize,
    /// Index of `λ` in the table of that subgroup.
    pub character: usize,
    pub coefficient: BigInt,
}

/// Outcome of the decomposition question for one irreducible character.
#[derive(Debug, Clone)]
pub struct CheckVerdict {
    /// Structure tag of `G`.
    pub group: u64,
    pub prime: u64,
    pub character: usize,
    pub degree: u64,
    pub degree_p_part: u64,
    /// `|H:Q|` for the admissible subgroups `Q` of the ambient p-group `H`.
    pub target_index: u64,
    pub ambient_order: u64,
    pub mode: Mode,
    pub subgroup_classes: usize,
    pub column_count: usize,
    pub weak: Option<SolveVerdict>,
    pub strong: Option<SolveVerdict>,
    pub linear_witness: Option<LinearWitness>,
    /// Set when a resource cap ended the computation.
    pub capped: Option<String>,
    pub instance: Option<DecompositionInstance>,
    pub column_set: Option<Arc<ColumnSet>>,
    pub elapsed: Duration,
}

impl CheckVerdict {
    pub fn status(&self) -> VerdictStatus {
        if self.capped.is_some() {
            return VerdictStatus::Capped;
        }
        if self.target_index == 1 {
            return VerdictStatus::Trivial;
        }
        let weak = self.weak.as_ref().map(|v| v.is_feasible());
        let strong = self.strong.as_ref().map(|v| v.is_feasible());
        match (weak, strong) {
            (_, Some(true)) => VerdictStatus::Strong,
            (Some(false), _) => VerdictStatus::Fails,
            (Some(true), Some(false)) => VerdictStatus::WeakOnly,
            (Some(true), None) => VerdictStatus::Weak,
            (None, Some(false)) => VerdictStatus::Fails,
            (None, None) => VerdictStatus::Capped,
        }
    }

    /// True iff every requested form was decided feasible.
    pub fn meets_mode(&self) -> bool {
        match self.status() {
            VerdictStatus::Trivial | VerdictStatus::Strong => true,
            VerdictStatus::Weak => !self.mode.strong(),
            _ => false,
        }
    }
}
