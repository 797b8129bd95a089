//! p-local structure: Sylow subgroups, subgroups of a p-group by index up to
//! conjugacy, normal subgroups, `O_p`, `O_{p'}`, `O^{p'}` and p-solvability.

mod normal;
mod subgroups;

pub use normal::{
    central_index, chief_series, class_mask, is_p_solvable, is_solvable, normal_subgroups,
    o_lower, o_upper_pprime, PKind,
};
pub use subgroups::{
    frattini_subgroup, maximal_subgroups, p_group_prime, subgroups_of_index, sylow_subgroup,
    SubgroupRecord,
};
