use std::collections::BTreeSet;

use serde::Serialize;

use super::cohomology::{h2_dimension, is_coboundary, s4plus_cocycle};
use super::group::{five_subgroup_check, perm_cycle_type, s3_subgroup_check_with, Gl2F3, Semidirect};
use super::{build_gl2f3, build_semidirect, pullback_sum};

#[derive(Clone, Debug, Serialize)]
pub struct GroupCheck {
    pub name: &'static str,
    pub passed: bool,
    pub expected: String,
    pub observed: String,
}

fn check(name: &'static str, expected: impl ToString, observed: impl ToString) -> GroupCheck {
    let (expected, observed) = (expected.to_string(), observed.to_string());
    GroupCheck { name, passed: expected == observed, expected, observed }
}

/// Lift orders of transpositions and double transpositions, as the set of
/// orders seen over all lifts of each type.
fn lift_orders(gl: &Gl2F3) -> String {
    let mut t = BTreeSet::new();
    let mut dt = BTreeSet::new();
    for s in 0..gl.s4.order() {
        let dest = match perm_cycle_type(&gl.perms[s]).as_slice() {
            [1, 1, 2] => &mut t,
            [2, 2] => &mut dt,
            _ => continue,
        };
        for g in gl.lifts(s) {
            dest.insert(gl.group.element_order(g));
        }
    }
    format!("{t:?}/{dt:?}")
}

/// Every structural and cohomological statement about GL_2(F_3), S_4 and the
/// order-96 group, evaluated on the given groups.
pub fn group_checks_for(gl: &Gl2F3, g: &Semidirect) -> Vec<GroupCheck> {
    let mut out = Vec::new();
    let gl_ok = gl.group.verify() && gl.group.order() == 48 && gl.group.is_homomorphism(&gl.s4, &gl.projection);
    out.push(check("gl2f3_table", true, gl_ok));
    out.push(check("order96_table", true, g.group.verify() && g.group.order() == 96));
    if !gl_ok {
        // the remaining checks assume a valid multiplication table
        return out;
    }
    out.push(check("normal_order4_subgroups", 3, g.normal_subgroups_of_order(4).len()));
    out.push(check("orbit_sizes", "[1, 3, 3, 3, 6]", format!("{:?}", g.orbit_sizes())));
    out.push(check("five_subgroups", true, five_subgroup_check()));
    out.push(check("s3_in_gl2f3", true, s3_subgroup_check_with(gl, &[[1, 0, 0, 1], [0, 1, 1, 0], [1, 2, 0, 2]])));
    out.push(check("lift_orders", "{2}/{4}", lift_orders(gl)));
    out.push(check("no_section", false, gl.has_section()));
    let c = s4plus_cocycle();
    let s4_cob = is_coboundary(&gl.s4, &c).map(|b| b.to_string()).unwrap_or_else(|e| e.to_string());
    out.push(check("s4plus_not_coboundary", false, s4_cob));
    let sum_cob = is_coboundary(&g.group, &pullback_sum(g, &c)).map(|b| b.to_string()).unwrap_or_else(|e| e.to_string());
    out.push(check("pullback_sum_coboundary", true, sum_cob));
    out.push(check("h2_s4", 2, h2_dimension(&gl.s4)));
    out
}

pub fn group_checks() -> Vec<GroupCheck> {
    group_checks_for(&build_gl2f3(), &build_semidirect())
}
