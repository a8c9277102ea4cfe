//! GL_2(F_3) as the double cover 2^+S_4, the order-96 group S_3 x| (Z/2)^4,
//! F_2-cohomology checks and Frobenius data for octahedral weight 1 forms.

mod character;
mod cohomology;
mod f2;
mod group;
mod verify;
mod weight1;

pub use cohomology::{
    default_section, extension_cocycle, extension_group, h2_basis, h2_dimension, has_plus_profile,
    is_coboundary, s4plus_cocycle, Cocycle2,
};
pub use character::{character_table, frobenius_table, frobenius_table_for, to_qs2, CharacterTable, FrobeniusClass, FrobeniusTable, TraceValue};
pub use verify::{group_checks, group_checks_for, GroupCheck};
pub use weight1::{frobenius_trace, weight1_coefficients, RamifiedRule, Resolver, Weight1Series};
pub use group::{
    bits4, build_gl2f3, build_s4, build_semidirect, completions, cycle_type, five_subgroup_check,
    klein_subgroups_f2_4, mat_det, mat_mul, p1_action, perm_cycle_type, perm_mul, s3_subgroup_check,
    s3_subgroup_check_with, FiniteGroup, Gl2F3, Mat3, Perm4, SemiElem, Semidirect,
};

/// Pi_1^* + Pi_2^* + Pi_3^* of s_4^+ on the order-96 group.
pub fn pullback_sum(g: &Semidirect, c: &Cocycle2) -> Cocycle2 {
    let [p1, p2, p3] = &g.projections;
    c.pullback(p1).add(&c.pullback(p2)).add(&c.pullback(p3))
}
