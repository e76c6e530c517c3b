//! Lattices attached to the K3 surfaces: the Kummer surface with its
//! dihedral symmetry, the lattices `M_G`, and the rank comparison table.

pub mod kummer;
pub mod mg;
pub mod pairs;

pub use kummer::{
    ambient_report, build_actions, build_kummer_ambient, eigenlattice_e8_check, omega_d4, omega_report, AmbientReport,
    E8Report, KummerAmbient, LatticeAction, OmegaD4, OmegaReport,
};
pub use mg::{build_mg, mg_report, Mg, MgName, MgReport};
pub use pairs::{canonical_name, group_rank, is_subgroup, pair_property, pair_report, PairReport, GROUPS};
