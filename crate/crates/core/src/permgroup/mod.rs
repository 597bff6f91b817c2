//! Permutations and explicitly tabulated finite groups.
//!
//! Groups here are small (order at most a few hundred) and stored as full
//! multiplication tables, so structural questions (subgroups, conjugacy,
//! coset actions) are answered by exhaustion.

mod group;
mod perm;

pub use group::{
    find_isomorphism, orbit_of_zero, permutation_closure, CosetAction, FiniteGroup, Subgroup,
    SubgroupClass, SubgroupLattice, MAX_GROUP_ORDER, MAX_LATTICE_ORDER,
};
pub use perm::Permutation;

#[cfg(test)]
mod tests;
