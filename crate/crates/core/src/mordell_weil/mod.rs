//! Sections, the height pairing, torsion component solving and Néron–Severi
//! lattices of elliptic fibrations.

mod curve;
mod height;
mod ns;
mod points;
mod section;
mod solver;

pub use curve::{rescale, short_polys, specialize_point, Curve, Point, ShortMap};
pub use height::{contribution, ComponentHit, HeightData, SectionHits};
pub use ns::{assemble_ns, picard_rank, trivial_lattice, NsLattice, TrivialLattice};
pub use section::{
    default_torsion_bound, format_section, intersection, intersection_with_zero, parse_section_on,
    torsion_order, Section,
};
pub use points::{random_points, search_points};
pub use solver::solve_components;
