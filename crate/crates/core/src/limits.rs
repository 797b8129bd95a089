/// Resource caps shared by every engine. All of them are configurable; the
/// defaults target groups of order up to a few times 10^4.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of group elements that may be enumerated.
    pub element_cap: u64,
    /// Maximum permutation degree, including coset-action images.
    pub degree_cap: usize,
    /// Maximum number of conjugacy classes for a character table.
    pub class_cap: usize,
    /// Maximum class count for the class-union normal subgroup scan.
    pub normal_class_cap: usize,
    /// Node budget of the nonnegative solver.
    pub node_budget: u64,
    /// Upper bound when searching for the modular prime of the table engine.
    pub prime_bound: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            element_cap: 200_000,
            degree_cap: 256,
            class_cap: 128,
            normal_class_cap: 24,
            node_budget: 10_000_000,
            prime_bound: 1 << 31,
        }
    }
}
