//! Ghost automorphisms acting on r-th roots over rational graphs, orbit
//! counts, and the numerical consequences for moduli of r-spin curves.

mod classes;
mod cond;
mod elliptic;

pub use classes::{
    enumerate_root_classes, ghost_act, ghost_group_order, involution, nodal_fixture,
    orbit_count, OrbitReport, RootClass,
};
pub use cond::{aj_aut_ratio, cond_check, l_stable_graphs, verify_cond, CondReport, CondWitness};
pub use elliptic::{elliptic_torsion_orbits, is_prime, nr_report, riemann_hurwitz_chi, NrReport};
