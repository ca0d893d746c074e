//! Subspaces of `F_q^n`: canonical enumeration, intersections, and the
//! counting oracles for the subspace lattice.

mod counting;
mod field;
mod subspace;

pub use counting::{
    count_fixed_intersection, count_fixed_intersection_bruteforce, mobius_delta_check, mobius_interval,
    spanning_count_bruteforce, spanning_count_formula, spanning_count_naive, spanning_count_table,
    spanning_set_total_formula,
    MobiusCheck,
};
pub use field::{Elem, FieldSpec};
pub use subspace::{enumerate_subspaces, intersection_dim, GrassmannIndexer, Subspace, SubspaceIter};
